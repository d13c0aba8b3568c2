//! Randomized invariants of the lattice and series layers.

mod common;

use arcfilt::lattice::{anti_nef_closure, anti_nef_closure_by, is_anti_nef, pair, RationalLattice};
use arcfilt::series::{expand_rational, reduce_to_min};
use arcfilt::{
    arc_series, build_ade, AdeType, Cycle, DualGraph, MultiSeries, RationalForm, Vertex,
};
use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn ade_graph() -> impl Strategy<Value = (AdeType, DualGraph)> {
    proptest::sample::select(ade_types(8)).prop_map(|t| (t, build_ade(t)))
}

/// A chain of rational curves with self-intersections in `-5..=-2`; these
/// are the resolution graphs of cyclic quotient singularities.
fn chain_graph() -> impl Strategy<Value = DualGraph> {
    proptest::collection::vec(-5i64..=-2, 1..6).prop_map(|selfs| {
        let vertices = selfs
            .iter()
            .enumerate()
            .map(|(i, &s)| Vertex::rational(format!("c{i}"), s))
            .collect();
        let edges = (1..selfs.len()).map(|i| (i - 1, i)).collect();
        DualGraph::new(vertices, edges).unwrap()
    })
}

fn graph_and_cycles(max: i64) -> impl Strategy<Value = (DualGraph, Vec<i64>, Vec<i64>)> {
    prop_oneof![ade_graph().prop_map(|(_, g)| g), chain_graph()].prop_flat_map(move |g| {
        let n = g.vertex_count();
        (
            Just(g),
            proptest::collection::vec(0..=max, n),
            proptest::collection::vec(0..=max, n),
        )
    })
}

fn cycle(v: &[i64]) -> Cycle {
    Cycle::new(v.to_vec()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pairing_symmetric_and_bilinear((g, x, y) in graph_and_cycles(5)) {
        let (x, y) = (cycle(&x), cycle(&y));
        prop_assert_eq!(pair(&x, &y, &g).unwrap(), pair(&y, &x, &g).unwrap());
        let expected: i64 = degrees(&g, x.coefficients()).iter().zip(y.coefficients()).map(|(a, b)| a * b).sum();
        prop_assert_eq!(pair(&x, &y, &g).unwrap(), expected);
        prop_assert_eq!(
            pair(&x.add(&y), &y, &g).unwrap(),
            pair(&x, &y, &g).unwrap() + pair(&y, &y, &g).unwrap()
        );
        if x.coefficients().iter().any(|&c| c != 0) {
            prop_assert!(pair(&x, &x, &g).unwrap() < 0);
        }
    }

    #[test]
    fn closure_is_a_closure_operator((g, x, y) in graph_and_cycles(4)) {
        let (x, y) = (cycle(&x), cycle(&y));
        let cx = anti_nef_closure(&x, &g).unwrap();
        prop_assert!(x.dominated_by(&cx));
        prop_assert!(is_anti_nef(&cx, &g));
        prop_assert!(anti_nef(&g, cx.coefficients()));
        prop_assert_eq!(anti_nef_closure(&cx, &g).unwrap(), cx.clone());
        let cxy = anti_nef_closure(&x.add(&y), &g).unwrap();
        prop_assert!(cx.dominated_by(&cxy));
    }

    #[test]
    fn closure_order_independent((g, x, _) in graph_and_cycles(3), seed in any::<u64>()) {
        let x = cycle(&x);
        let reference = anti_nef_closure(&x, &g).unwrap();
        let mut state = seed | 1;
        let got = anti_nef_closure_by(&x, &g, |viol| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            viol[(state % viol.len() as u64) as usize]
        })
        .unwrap();
        prop_assert_eq!(got, reference);
    }

    #[test]
    fn closure_matches_search_on_chains(g in chain_graph(), seed in proptest::collection::vec(0i64..=2, 5)) {
        let n = g.vertex_count();
        let v: Vec<i64> = seed[..n].to_vec();
        // (2, ..., 2) is anti-nef on a chain of curves with self <= -2, so the
        // minimum above v lies in that box
        let upper = vec![2; n];
        prop_assert!(anti_nef(&g, &upper));
        let expected = minimal_above(&anti_nef_cycles_below(&g, &upper), &v).unwrap();
        let got = anti_nef_closure(&cycle(&v), &g).unwrap();
        prop_assert_eq!(got.coefficients(), expected.as_slice());
    }

    #[test]
    fn codimension_monotone_and_normalized((g, x, y) in graph_and_cycles(3)) {
        let lattice = RationalLattice::new(&g).unwrap();
        let h = |c: &Cycle| lattice.codimension(c).unwrap().0;
        let (x, y) = (cycle(&x), cycle(&y));
        prop_assert!(h(&x) <= h(&x.add(&y)));
        prop_assert_eq!(h(&Cycle::zero(g.vertex_count())), 0);
        prop_assert_eq!(h(&Cycle::diagonal(g.vertex_count(), 1)), 1);
        // h only sees the closure
        prop_assert_eq!(h(&x), h(&anti_nef_closure(&x, &g).unwrap()));
    }

    #[test]
    fn arc_series_starts_with_one((g, _, _) in graph_and_cycles(0)) {
        let s = arc_series(&g, 6).unwrap();
        prop_assert_eq!(s.coeff(0), &BigInt::from(1));
        prop_assert!(s.coefficients().iter().all(|c| *c >= BigInt::from(0)));
    }

    #[test]
    fn reduction_is_linear(
        a in proptest::collection::vec((proptest::collection::vec(0u32..6, 3), -4i64..5), 0..10),
        b in proptest::collection::vec((proptest::collection::vec(0u32..6, 3), -4i64..5), 0..10),
    ) {
        let mk = |t: &[(Vec<u32>, i64)]| {
            MultiSeries::from_terms(3, 5, t.iter().map(|(e, c)| (e.clone(), BigInt::from(*c)))).unwrap()
        };
        let (p, q) = (mk(&a), mk(&b));
        prop_assert_eq!(reduce_to_min(&p.add(&q).unwrap()), reduce_to_min(&p).add(&reduce_to_min(&q)));
        // each monomial lands on its smallest exponent
        let mut expected = vec![0i64; 6];
        for (e, c) in a.iter() {
            expected[*e.iter().min().unwrap() as usize] += c;
        }
        prop_assert_eq!(to_i64(reduce_to_min(&p).coefficients()), expected);
    }

    #[test]
    fn product_expansion_round_trip(factors in proptest::collection::vec((1u32..8, -3i64..4), 0..4)) {
        let f = RationalForm::from_product(&factors).unwrap();
        let s = expand_rational(&f, 30).unwrap();
        prop_assert_eq!(to_i64(s.coefficients()), expand_product(&factors, 30));
    }
}
