//! Exceptional cycles: intersection pairing, Laufer's anti-nef closure, the
//! fundamental cycle, Artin's rationality criterion and the codimension
//! function `h(v) = dim O/J(v)` of a rational surface singularity.
//!
//! For a rational singularity the valuation ideal `J(v)` only depends on the
//! anti-nef closure `y` of `v`, and `h(v) = -(y.y + K.y) / 2`.

use std::fmt;

use thiserror::Error;

use crate::graph::DualGraph;

/// Laufer iterations abort once the coefficient sum passes this bound.
pub const CLOSURE_COEFFICIENT_LIMIT: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("cycle has {got} coefficients, graph has {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cycle coefficient {0} is negative")]
    NegativeCoefficient(i64),
    #[error("graph is not a rational singularity (arithmetic genus of Z is {0}); codimension formula does not apply")]
    NotRational(i64),
    #[error(
        "internal error: anti-nef closure exceeded coefficient sum {CLOSURE_COEFFICIENT_LIMIT}"
    )]
    ClosureDiverged,
}

/// Effective cycle `sum v_i E_i` on a fixed dual graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle(Vec<i64>);

impl Cycle {
    pub fn new(coefficients: Vec<i64>) -> Result<Self, LatticeError> {
        if let Some(&c) = coefficients.iter().find(|&&c| c < 0) {
            return Err(LatticeError::NegativeCoefficient(c));
        }
        Ok(Self(coefficients))
    }

    pub fn zero(len: usize) -> Self {
        Self(vec![0; len])
    }

    /// `c * (1, ..., 1)`.
    pub fn diagonal(len: usize, c: u32) -> Self {
        Self(vec![i64::from(c); len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = vec![0; len];
        v[i] = 1;
        Self(v)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Coefficient-wise `self <= other`.
    pub fn dominated_by(&self, other: &Cycle) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Cycle) -> Cycle {
        Cycle(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `dim O/J(v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CodimValue(pub u64);

fn check_len(g: &DualGraph, len: usize) -> Result<(), LatticeError> {
    if len != g.vertex_count() {
        return Err(LatticeError::DimensionMismatch {
            expected: g.vertex_count(),
            got: len,
        });
    }
    Ok(())
}

fn pair_raw(g: &DualGraph, y: &[i64], z: &[i64]) -> i64 {
    let m = g.intersection_matrix();
    (0..y.len())
        .map(|i| y[i] * m.row(i).iter().zip(z).map(|(a, b)| a * b).sum::<i64>())
        .sum()
}

/// Intersection pairing `y^T M z`.
pub fn pair(y: &Cycle, z: &Cycle, g: &DualGraph) -> Result<i64, LatticeError> {
    check_len(g, y.len())?;
    check_len(g, z.len())?;
    Ok(pair_raw(g, &y.0, &z.0))
}

/// `K . y` from the adjunction degrees.
pub fn canonical_pairing(y: &Cycle, g: &DualGraph) -> Result<i64, LatticeError> {
    check_len(g, y.len())?;
    Ok(g.canonical_degree()
        .iter()
        .zip(&y.0)
        .map(|(k, c)| k * c)
        .sum())
}

/// Smallest cycle `>= y` that meets every component non-positively.
///
/// Laufer's loop, resolving the lowest-index violation first. A vertex with
/// `y.E_i = p > 0` receives `ceil(p / -E_i^2)` increments in one step; each
/// of those unit increments is forced, so the result is the same as for
/// one-at-a-time updates.
pub fn anti_nef_closure(y: &Cycle, g: &DualGraph) -> Result<Cycle, LatticeError> {
    check_len(g, y.len())?;
    let m = g.intersection_matrix();
    let n = y.len();
    let mut coeffs = y.0.clone();
    let mut products: Vec<i64> = (0..n)
        .map(|i| m.row(i).iter().zip(&coeffs).map(|(a, b)| a * b).sum())
        .collect();
    let mut total: i64 = coeffs.iter().sum();
    while let Some(i) = products.iter().position(|&p| p > 0) {
        let step = -m.get(i, i);
        let d = (products[i] + step - 1) / step;
        coeffs[i] += d;
        total += d;
        if total > CLOSURE_COEFFICIENT_LIMIT {
            return Err(LatticeError::ClosureDiverged);
        }
        for (j, p) in products.iter_mut().enumerate() {
            *p += d * m.get(j, i);
        }
    }
    Ok(Cycle(coeffs))
}

/// Laufer's loop with unit increments, where `choose` picks the vertex to
/// raise from the current list of violating vertices (ascending order).
pub fn anti_nef_closure_by<F>(
    y: &Cycle,
    g: &DualGraph,
    mut choose: F,
) -> Result<Cycle, LatticeError>
where
    F: FnMut(&[usize]) -> usize,
{
    check_len(g, y.len())?;
    let m = g.intersection_matrix();
    let n = y.len();
    let mut coeffs = y.0.clone();
    let mut total: i64 = coeffs.iter().sum();
    loop {
        let violating: Vec<usize> = (0..n)
            .filter(|&i| {
                m.row(i)
                    .iter()
                    .zip(&coeffs)
                    .map(|(a, b)| a * b)
                    .sum::<i64>()
                    > 0
            })
            .collect();
        if violating.is_empty() {
            return Ok(Cycle(coeffs));
        }
        let i = choose(&violating);
        debug_assert!(violating.contains(&i));
        coeffs[i] += 1;
        total += 1;
        if total > CLOSURE_COEFFICIENT_LIMIT {
            return Err(LatticeError::ClosureDiverged);
        }
    }
}

pub fn is_anti_nef(y: &Cycle, g: &DualGraph) -> bool {
    let m = g.intersection_matrix();
    y.len() == g.vertex_count()
        && (0..y.len()).all(|i| m.row(i).iter().zip(&y.0).map(|(a, b)| a * b).sum::<i64>() <= 0)
}

/// Minimal nonzero anti-nef cycle: the closure of `(1, ..., 1)`.
pub fn fundamental_cycle(g: &DualGraph) -> Cycle {
    anti_nef_closure(&Cycle::diagonal(g.vertex_count(), 1), g)
        .expect("closure terminates on a negative definite lattice")
}

/// `p_a(Z) = 1 + (Z.Z + K.Z) / 2` for the fundamental cycle `Z`.
pub fn arithmetic_genus(g: &DualGraph) -> i64 {
    let z = fundamental_cycle(g);
    let zz = pair_raw(g, &z.0, &z.0);
    let kz: i64 = g
        .canonical_degree()
        .iter()
        .zip(&z.0)
        .map(|(k, c)| k * c)
        .sum();
    1 + (zz + kz) / 2
}

/// Artin's criterion: rational iff `p_a(Z) = 0`.
pub fn is_rational(g: &DualGraph) -> bool {
    arithmetic_genus(g) == 0
}

/// A dual graph certified rational, with the data needed to evaluate `h`
/// repeatedly.
#[derive(Debug, Clone)]
pub struct RationalLattice<'g> {
    graph: &'g DualGraph,
    canonical: Vec<i64>,
}

impl<'g> RationalLattice<'g> {
    pub fn new(graph: &'g DualGraph) -> Result<Self, LatticeError> {
        let genus = arithmetic_genus(graph);
        if genus != 0 {
            return Err(LatticeError::NotRational(genus));
        }
        Ok(Self {
            graph,
            canonical: graph.canonical_degree(),
        })
    }

    pub fn graph(&self) -> &'g DualGraph {
        self.graph
    }

    /// `h(v) = -(y.y + K.y) / 2` with `y` the anti-nef closure of `v`.
    pub fn codimension(&self, v: &Cycle) -> Result<CodimValue, LatticeError> {
        let y = anti_nef_closure(v, self.graph)?;
        let yy = pair_raw(self.graph, &y.0, &y.0);
        let ky: i64 = self.canonical.iter().zip(&y.0).map(|(k, c)| k * c).sum();
        let twice = -(yy + ky);
        debug_assert!(twice >= 0 && twice % 2 == 0);
        Ok(CodimValue((twice / 2) as u64))
    }
}

/// `dim O/J(v)` for a rational singularity; refuses non-rational graphs.
pub fn codimension(v: &Cycle, g: &DualGraph) -> Result<CodimValue, LatticeError> {
    check_len(g, v.len())?;
    RationalLattice::new(g)?.codimension(v)
}
