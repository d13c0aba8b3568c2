//! Oracles shared by the integration tests. Nothing here calls into the
//! library's series or lattice code.

#![allow(dead_code)]

use arcfilt::{AdeFamily, AdeType, DualGraph};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Closed forms of the rational double points as `prod (1 - t^a)^e`.
pub fn table_factors(ty: AdeType) -> Vec<(u32, i64)> {
    let k = ty.k();
    match (ty.family(), k) {
        (AdeFamily::A, _) => vec![(2, 1), (1, -3)],
        (AdeFamily::D, _) => vec![(k - 1, 1), (1, -2), (k - 2, -1)],
        (AdeFamily::E, 6) => vec![(4, 1), (1, -1), (2, -2)],
        (AdeFamily::E, 7) => vec![(6, 1), (1, -1), (2, -1), (4, -1)],
        (AdeFamily::E, 8) => vec![(6, 1), (2, -2), (3, -1)],
        _ => unreachable!("E_k only for k = 6, 7, 8"),
    }
}

/// `prod (1 - t^a)^e` to `order`, by repeated multiplication and division
/// with `1 - t^a`.
pub fn expand_product(factors: &[(u32, i64)], order: usize) -> Vec<i64> {
    let mut s = vec![0i64; order + 1];
    s[0] = 1;
    for &(a, e) in factors {
        let a = a as usize;
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                for i in (a..=order).rev() {
                    s[i] -= s[i - a];
                }
            } else {
                for i in a..=order {
                    s[i] += s[i - a];
                }
            }
        }
    }
    s
}

pub fn to_i64(coeffs: &[BigInt]) -> Vec<i64> {
    coeffs
        .iter()
        .map(|c| c.to_i64().expect("fits in i64"))
        .collect()
}

pub fn ade_types(max_k: u32) -> Vec<AdeType> {
    AdeType::all_up_to(max_k)
}

/// `(E_i . y)` for each vertex, straight from the intersection matrix.
pub fn degrees(g: &DualGraph, y: &[i64]) -> Vec<i64> {
    let m = g.intersection_matrix();
    (0..y.len())
        .map(|i| (0..y.len()).map(|j| m.get(i, j) * y[j]).sum())
        .collect()
}

pub fn anti_nef(g: &DualGraph, y: &[i64]) -> bool {
    degrees(g, y).iter().all(|&d| d <= 0)
}

/// All anti-nef cycles `w` with `0 <= w <= upper`, by depth-first search
/// that checks vertex `i` once it and all its neighbours are assigned.
pub fn anti_nef_cycles_below(g: &DualGraph, upper: &[i64]) -> Vec<Vec<i64>> {
    let n = upper.len();
    let m = g.intersection_matrix();
    // vertex i can be checked after assigning index last[i]
    let last: Vec<usize> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j == i || m.get(i, j) != 0)
                .max()
                .unwrap()
        })
        .collect();
    let mut out = Vec::new();
    let mut w = vec![0i64; n];
    fn rec(
        pos: usize,
        w: &mut Vec<i64>,
        upper: &[i64],
        last: &[usize],
        g: &DualGraph,
        out: &mut Vec<Vec<i64>>,
    ) {
        let n = w.len();
        if pos == n {
            out.push(w.clone());
            return;
        }
        let m = g.intersection_matrix();
        for x in 0..=upper[pos] {
            w[pos] = x;
            let ok = (0..n)
                .filter(|&i| last[i] == pos)
                .all(|i| (0..n).map(|j| m.get(i, j) * w[j]).sum::<i64>() <= 0);
            if ok {
                rec(pos + 1, w, upper, last, g, out);
            }
        }
        w[pos] = 0;
    }
    rec(0, &mut w, upper, &last, g, &mut out);
    out
}

/// The unique minimal element of `{w in candidates : w >= v}`, or `None`
/// when there is no such set or no unique minimum.
pub fn minimal_above(candidates: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    let above: Vec<&Vec<i64>> = candidates
        .iter()
        .filter(|w| w.iter().zip(v).all(|(a, b)| a >= b))
        .collect();
    if above.is_empty() {
        return None;
    }
    let meet: Vec<i64> = (0..v.len())
        .map(|i| above.iter().map(|w| w[i]).min().unwrap())
        .collect();
    above.iter().any(|w| **w == meet).then_some(meet)
}

/// Every vector in `[0..=max]^n`.
pub fn all_vectors(n: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=max).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}
