//! Poincare series of the arc filtration computed from a resolution graph,
//! the multi-variable Poincare series of the divisorial valuations, and the
//! checks relating them to each other and to closed forms.
//!
//! The arc order of a function is the minimum of its divisorial orders, so
//! `F_i = J(i, ..., i)` and the `i`-th coefficient of the arc series is
//! `h((i+1)1) - h(i1)`. The multi-variable series is
//! `P(t) = L(t) prod(t_i - 1) / (t_1...t_r - 1)` with
//! `L(t) = sum_v (h(v + 1) - h(v)) t^v`.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{build_ade, AdeFamily, AdeType, DualGraph, GraphError};
use crate::lattice::{Cycle, LatticeError, RationalLattice};
use crate::series::{
    degree_and_pole, expand_rational, quasihomogeneous_series, rat_equal, reduce_to_min,
    MultiSeries, RationalForm, SeriesError, UniSeries,
};

/// Default increment between successive boxes when waiting for the
/// reduction to stabilize.
pub const DEFAULT_STABILIZATION_STEP: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("inconclusive: reduction coefficients up to order {order} did not stabilize below box {ceiling}")]
    Unstabilized { order: usize, ceiling: u32 },
}

/// Guards on the size of the box enumerated by [`multi_poincare`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResourceLimits {
    pub max_vertices: usize,
    pub max_grid_points: u64,
}

impl Default for ResourceLimits {
    fn default() -> Self {
        Self {
            max_vertices: 4,
            max_grid_points: 8_000_000,
        }
    }
}

impl ResourceLimits {
    /// Lifts the vertex cap; the grid-point cap still applies.
    pub fn allow_large_graphs(self) -> Self {
        Self {
            max_vertices: usize::MAX,
            ..self
        }
    }
}

/// Arc series of a graph, with the closed form it is expected to match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcSeriesResult {
    pub series: UniSeries,
    pub closed_form: Option<RationalForm>,
    pub graph_label: String,
}

impl ArcSeriesResult {
    pub fn for_ade(ty: AdeType, order: usize) -> Result<Self, EngineError> {
        Ok(Self {
            series: arc_series(&build_ade(ty), order)?,
            closed_form: Some(ade_closed_form(ty)),
            graph_label: ty.to_string(),
        })
    }

    /// `None` without a closed form; otherwise whether its expansion agrees
    /// with the computed coefficients.
    pub fn matches_closed_form(&self) -> Option<bool> {
        let f = self.closed_form.as_ref()?;
        Some(
            expand_rational(f, self.series.order())
                .map(|e| e == self.series)
                .unwrap_or(false),
        )
    }
}

/// Coefficients `c_i = h((i+1)1) - h(i1)` for `i = 0..=order`.
pub fn arc_series(g: &DualGraph, order: usize) -> Result<UniSeries, EngineError> {
    let lattice = RationalLattice::new(g)?;
    let n = g.vertex_count();
    let h = (0..=order as u32 + 1)
        .into_par_iter()
        .map(|i| lattice.codimension(&Cycle::diagonal(n, i)).map(|c| c.0))
        .collect::<Result<Vec<u64>, _>>()?;
    Ok(UniSeries::new(
        h.windows(2)
            .map(|w| BigInt::from(w[1]) - BigInt::from(w[0]))
            .collect(),
    ))
}

/// The tabulated arc series of a rational double point.
pub fn ade_closed_form(ty: AdeType) -> RationalForm {
    let k = ty.k();
    let factors: Vec<(u32, i64)> = match (ty.family(), k) {
        (AdeFamily::A, _) => vec![(2, 1), (1, -3)],
        (AdeFamily::D, _) => vec![(k - 1, 1), (1, -2), (k - 2, -1)],
        (AdeFamily::E, 6) => vec![(4, 1), (1, -1), (2, -2)],
        (AdeFamily::E, 7) => vec![(6, 1), (1, -1), (2, -1), (4, -1)],
        (AdeFamily::E, 8) => vec![(6, 1), (2, -2), (3, -1)],
        (AdeFamily::E, _) => unreachable!("AdeType only admits E6, E7, E8"),
    };
    RationalForm::from_product(&factors).expect("positive bases")
}

/// `(1 - t^2) / (1 - t)^(n+2)`: the arc series of the double suspension
/// `f(z_1..z_n) + x^2 + y^2` of any `f` in the square of the maximal ideal.
pub fn suspension_series(n: u32) -> Result<RationalForm, EngineError> {
    if n < 1 {
        return Err(EngineError::InvalidParameter(
            "suspension needs at least one variable".into(),
        ));
    }
    Ok(RationalForm::from_product(&[
        (2, 1),
        (1, -(i64::from(n) + 2)),
    ])?)
}

/// Degree -1 with a double pole at `t = 1`, the shape shared by every
/// rational double point.
pub fn has_rdp_degree_and_pole(f: &RationalForm) -> bool {
    degree_and_pole(f) == (-1, 2)
}

struct Grid {
    side: usize,
    dims: usize,
}

impl Grid {
    fn len(&self) -> usize {
        self.side.pow(self.dims as u32)
    }

    fn stride(&self, axis: usize) -> usize {
        self.side.pow((self.dims - 1 - axis) as u32)
    }

    fn decode(&self, mut index: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.dims];
        for slot in v.iter_mut().rev() {
            *slot = (index % self.side) as u32;
            index /= self.side;
        }
        v
    }

    fn diagonal_stride(&self) -> usize {
        (0..self.dims).map(|a| self.stride(a)).sum()
    }
}

/// Multi-variable Poincare series on the box `[0..bound]^r`, exact inside
/// the box.
///
/// `L(v) = h(v + 1) - h(v)` is summed over all `v` in `Z^r` with
/// `h(v) = h(max(v, 0))`; only `v >= -1` contributes after multiplying by
/// `prod(t_i - 1)`, and the product vanishes outside `v >= 0`. The factor
/// `1 / (t_1...t_r - 1)` is applied as `-sum_k (t_1...t_r)^k`, i.e.
/// `P(v) = P(v - 1) - Q(v)`.
pub fn multi_poincare(
    g: &DualGraph,
    bound: u32,
    limits: &ResourceLimits,
) -> Result<MultiSeries, EngineError> {
    let lattice = RationalLattice::new(g)?;
    if bound < 1 {
        return Err(EngineError::InvalidParameter(
            "box bound must be at least 1".into(),
        ));
    }
    let r = g.vertex_count();
    if r > limits.max_vertices {
        return Err(EngineError::ResourceLimit(format!(
            "{r} vertices exceed the multi-variable limit of {}; pass an explicit override",
            limits.max_vertices
        )));
    }
    let points = u64::from(bound + 2).checked_pow(r as u32);
    if points.is_none_or(|p| p > limits.max_grid_points) {
        return Err(EngineError::ResourceLimit(format!(
            "box {bound} in {r} variables exceeds {} grid points",
            limits.max_grid_points
        )));
    }

    let h_grid = Grid {
        side: bound as usize + 2,
        dims: r,
    };
    let h: Vec<i64> = (0..h_grid.len())
        .into_par_iter()
        .map(|idx| {
            let v: Vec<i64> = h_grid.decode(idx).into_iter().map(i64::from).collect();
            let cycle = Cycle::new(v).expect("grid points are non-negative");
            lattice.codimension(&cycle).map(|c| c.0 as i64)
        })
        .collect::<Result<_, _>>()?;

    // L over [-1..bound]^r, stored at index coordinate + 1 in a grid of the
    // same shape as the h-grid. Below the origin J(v) = J(max(v, 0)).
    let grid = &h_grid;
    let clamp = |idx: usize| -> usize {
        grid.decode(idx).iter().fold(0usize, |acc, &x| {
            acc * grid.side + x.saturating_sub(1) as usize
        })
    };
    let mut coeffs: Vec<BigInt> = (0..grid.len())
        .map(|idx| BigInt::from(h[idx] - h[clamp(idx)]))
        .collect();

    // multiply by (t_i - 1) for each variable; only points with every
    // coordinate >= 0 (index >= 1) are needed afterwards
    for axis in 0..r {
        let stride = grid.stride(axis);
        for idx in (0..grid.len()).rev() {
            let below = if !(idx / stride).is_multiple_of(grid.side) {
                coeffs[idx - stride].clone()
            } else {
                BigInt::zero()
            };
            coeffs[idx] = below - &coeffs[idx];
        }
    }

    // divide by (t_1...t_r - 1); Q vanishes outside the non-negative orthant
    let diag = grid.diagonal_stride();
    let inside =
        |idx: usize, min: usize| (0..r).all(|axis| (idx / grid.stride(axis)) % grid.side >= min);
    for idx in 0..grid.len() {
        if !inside(idx, 1) {
            continue;
        }
        let prev = if inside(idx, 2) {
            coeffs[idx - diag].clone()
        } else {
            BigInt::zero()
        };
        coeffs[idx] = prev - &coeffs[idx];
    }

    let terms = coeffs
        .into_iter()
        .enumerate()
        .filter(|(idx, c)| inside(*idx, 1) && !c.is_zero())
        .map(|(idx, c)| (grid.decode(idx).into_iter().map(|x| x - 1).collect(), c));
    Ok(MultiSeries::from_terms(r, bound, terms)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilizationOptions {
    /// First box tried; raised to the order if smaller.
    pub start_box: Option<u32>,
    pub step: u32,
    /// Largest box tried; defaults to `max(4 * order, start + step)`.
    pub ceiling: Option<u32>,
    pub limits: ResourceLimits,
}

impl Default for StabilizationOptions {
    fn default() -> Self {
        Self {
            start_box: None,
            step: DEFAULT_STABILIZATION_STEP,
            ceiling: None,
            limits: ResourceLimits::default(),
        }
    }
}

/// Outcome of comparing the reduced multi-variable series with the arc
/// series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub matches: bool,
    /// The box at which the reduced coefficients were seen unchanged from
    /// the previous box.
    pub stabilized_box: u32,
    pub reduced: UniSeries,
    pub arc: UniSeries,
}

/// Reduces the multi-variable series on growing boxes until its first
/// `order + 1` coefficients repeat, then compares them with the arc series.
pub fn check_reduction_identity(
    g: &DualGraph,
    order: usize,
    options: &StabilizationOptions,
) -> Result<ReductionCertificate, EngineError> {
    if options.step == 0 {
        return Err(EngineError::InvalidParameter(
            "stabilization step must be positive".into(),
        ));
    }
    let order_box = u32::try_from(order)
        .map_err(|_| EngineError::InvalidParameter("order too large".into()))?
        .max(1);
    let start = options.start_box.unwrap_or(order_box).max(order_box);
    let ceiling = options
        .ceiling
        .unwrap_or_else(|| (4 * order_box).max(start + options.step));

    let arc = arc_series(g, order)?;
    let mut previous: Option<UniSeries> = None;
    let mut bound = start;
    while bound <= ceiling {
        let reduced = reduce_to_min(&multi_poincare(g, bound, &options.limits)?).truncate(order);
        if previous.as_ref() == Some(&reduced) {
            return Ok(ReductionCertificate {
                matches: reduced == arc,
                stabilized_box: bound,
                reduced,
                arc,
            });
        }
        previous = Some(reduced);
        bound += options.step;
    }
    Err(EngineError::Unstabilized { order, ceiling })
}

/// One line of the rational double point / quasihomogeneous comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceEntry {
    pub label: String,
    pub holds: bool,
}

/// Largest `k` used when a correspondence ranges over a whole family.
pub const CORRESPONDENCE_MAX_K: u32 = 10;

/// Each arc series of a rational double point equals the graded Poincare
/// series of another one:
/// `A_k -> A_1`, `D_k -> A_(k-2)`, `E6 -> A_3`, `E7 -> A_5`, `E8 -> D_4`.
pub fn quasihomogeneous_correspondence() -> Vec<CorrespondenceEntry> {
    let same = |ty: AdeType, weights: &[u32], degree: u32| {
        let qh = quasihomogeneous_series(weights, degree).expect("positive weights");
        rat_equal(&ade_closed_form(ty), &qh)
    };
    let ty = |f, k| AdeType::new(f, k).expect("valid type");
    vec![
        CorrespondenceEntry {
            label: "A_k -> A_1".into(),
            holds: (1..=CORRESPONDENCE_MAX_K).all(|k| same(ty(AdeFamily::A, k), &[1, 1, 1], 2)),
        },
        CorrespondenceEntry {
            label: "D_k -> A_(k-2)".into(),
            holds: (4..=CORRESPONDENCE_MAX_K)
                .all(|k| same(ty(AdeFamily::D, k), &[1, k - 2, 1], k - 1)),
        },
        CorrespondenceEntry {
            label: "E6 -> A_3".into(),
            holds: same(ty(AdeFamily::E, 6), &[2, 2, 1], 4),
        },
        CorrespondenceEntry {
            label: "E7 -> A_5".into(),
            holds: same(ty(AdeFamily::E, 7), &[2, 4, 1], 6),
        },
        CorrespondenceEntry {
            label: "E8 -> D_4".into(),
            holds: same(ty(AdeFamily::E, 8), &[2, 2, 3], 6),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_dual_graph;
    use crate::series::product_form;

    fn ade(s: &str) -> AdeType {
        s.parse().unwrap()
    }

    #[test]
    fn arc_series_examples() {
        assert_eq!(
            arc_series(&build_ade(ade("A1")), 4).unwrap(),
            UniSeries::from_i64(&[1, 3, 5, 7, 9])
        );
        assert_eq!(
            arc_series(&build_ade(ade("D4")), 4).unwrap(),
            UniSeries::from_i64(&[1, 2, 4, 5, 7])
        );
        assert_eq!(
            arc_series(&build_ade(ade("E8")), 1).unwrap(),
            UniSeries::from_i64(&[1, 0])
        );
        let elliptic = parse_dual_graph("vertex a self=-2 genus=1").unwrap();
        assert!(matches!(
            arc_series(&elliptic, 3),
            Err(EngineError::Lattice(LatticeError::NotRational(1)))
        ));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(ade_closed_form(ade("A7")).to_string(), "(1-t^2)/((1-t)^3)");
        assert_eq!(
            ade_closed_form(ade("D4")).to_string(),
            "(1-t^3)/((1-t)^2(1-t^2))"
        );
        assert_eq!(
            ade_closed_form(ade("D5")).to_string(),
            "(1-t^4)/((1-t)^2(1-t^3))"
        );
        assert_eq!(
            ade_closed_form(ade("E6")).to_string(),
            "(1-t^4)/((1-t)(1-t^2)^2)"
        );
        assert_eq!(
            ade_closed_form(ade("E7")).to_string(),
            "(1-t^6)/((1-t)(1-t^2)(1-t^4))"
        );
        assert_eq!(
            ade_closed_form(ade("E8")).to_string(),
            "(1-t^6)/((1-t^2)^2(1-t^3))"
        );
    }

    #[test]
    fn arc_series_match_table() {
        for ty in AdeType::all_up_to(10) {
            let result = ArcSeriesResult::for_ade(ty, 40).unwrap();
            assert_eq!(result.matches_closed_form(), Some(true), "{ty}");
            assert!(result
                .series
                .coefficients()
                .iter()
                .all(|c| c >= &BigInt::zero()));
        }
    }

    #[test]
    fn table_forms_are_products_with_rdp_shape() {
        for ty in AdeType::all_up_to(10) {
            let f = ade_closed_form(ty);
            assert!(has_rdp_degree_and_pole(&f), "{ty}");
            let p = product_form(&f).unwrap_or_else(|| panic!("{ty} is a product"));
            assert!(rat_equal(&p, &f));
        }
    }

    #[test]
    fn suspension() {
        let s1 = suspension_series(1).unwrap();
        for k in 1..=12 {
            assert!(rat_equal(
                &s1,
                &ade_closed_form(AdeType::new(AdeFamily::A, k).unwrap())
            ));
        }
        assert_eq!(
            suspension_series(2).unwrap().to_string(),
            "(1-t^2)/((1-t)^4)"
        );
        assert_eq!(degree_and_pole(&suspension_series(3).unwrap()), (-3, 4));
        assert!(!has_rdp_degree_and_pole(&suspension_series(3).unwrap()));
        assert!(has_rdp_degree_and_pole(&ade_closed_form(ade("E6"))));
        assert!(!has_rdp_degree_and_pole(
            &RationalForm::from_product(&[(1, -1)]).unwrap()
        ));
        assert!(suspension_series(0).is_err());
    }

    #[test]
    fn correspondence() {
        let entries = quasihomogeneous_correspondence();
        assert_eq!(entries.len(), 5);
        assert!(entries.iter().all(|e| e.holds), "{entries:?}");
        let d5 = quasihomogeneous_series(&[1, 3, 1], 4).unwrap();
        assert!(rat_equal(&ade_closed_form(ade("D5")), &d5));
    }

    #[test]
    fn one_variable_multi_series_is_the_arc_series() {
        let a1 = build_ade(ade("A1"));
        let p = multi_poincare(&a1, 4, &ResourceLimits::default()).unwrap();
        let coeffs: Vec<BigInt> = (0..=4).map(|i| p.coeff(&[i])).collect();
        assert_eq!(UniSeries::new(coeffs), arc_series(&a1, 4).unwrap());
    }

    #[test]
    fn multi_series_constant_term() {
        for s in ["A2", "A3", "D4"] {
            let p = multi_poincare(&build_ade(ade(s)), 3, &ResourceLimits::default()).unwrap();
            let zero = vec![0u32; p.vars()];
            assert_eq!(p.coeff(&zero), BigInt::from(1), "{s}");
        }
    }

    #[test]
    fn resource_limits() {
        let e6 = build_ade(ade("E6"));
        assert!(matches!(
            multi_poincare(&e6, 2, &ResourceLimits::default()),
            Err(EngineError::ResourceLimit(_))
        ));
        assert!(multi_poincare(&e6, 2, &ResourceLimits::default().allow_large_graphs()).is_ok());
        let a2 = build_ade(ade("A2"));
        assert!(matches!(
            multi_poincare(&a2, 0, &ResourceLimits::default()),
            Err(EngineError::InvalidParameter(_))
        ));
    }

    /// Euler characteristic of `P(J(v)/J(v+1)) minus the subspaces
    /// J(v+e_i)/J(v+1)`, by inclusion-exclusion over subsets of the vertices:
    /// `P(v) = -sum_I (-1)^|I| h(v + e_I)`.
    fn multi_poincare_by_inclusion_exclusion(g: &DualGraph, bound: u32) -> MultiSeries {
        let lattice = RationalLattice::new(g).unwrap();
        let r = g.vertex_count();
        let h = |v: &[u32]| {
            let c = Cycle::new(v.iter().map(|&x| i64::from(x)).collect()).unwrap();
            lattice.codimension(&c).unwrap().0 as i64
        };
        let grid = Grid {
            side: bound as usize + 1,
            dims: r,
        };
        MultiSeries::from_terms(
            r,
            bound,
            (0..grid.len()).map(|idx| {
                let v = grid.decode(idx);
                let mut total = 0i64;
                for mask in 0u32..(1 << r) {
                    let w: Vec<u32> = v
                        .iter()
                        .enumerate()
                        .map(|(i, x)| x + (mask >> i & 1))
                        .collect();
                    let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
                    total -= sign * h(&w);
                }
                (v, BigInt::from(total))
            }),
        )
        .unwrap()
    }

    #[test]
    fn recurrences_match_inclusion_exclusion() {
        for (s, bound) in [("A1", 6), ("A2", 5), ("A3", 4), ("D4", 3)] {
            let g = build_ade(ade(s));
            assert_eq!(
                multi_poincare(&g, bound, &ResourceLimits::default()).unwrap(),
                multi_poincare_by_inclusion_exclusion(&g, bound),
                "{s}"
            );
        }
    }

    #[test]
    fn reduction_identity_small_cases() {
        for (s, order) in [("A1", 8), ("A2", 8), ("A3", 6), ("D4", 6)] {
            let cert = check_reduction_identity(
                &build_ade(ade(s)),
                order,
                &StabilizationOptions::default(),
            )
            .unwrap();
            assert!(cert.matches, "{s}: {cert:?}");
            assert_eq!(cert.reduced, cert.arc);
        }
    }

    #[test]
    fn reduction_identity_on_non_ade_graph() {
        // (-3)-(-2) chain: rational but not a double point
        let g = parse_dual_graph("vertex a self=-3\nvertex b self=-2\nedge a b").unwrap();
        let cert = check_reduction_identity(&g, 8, &StabilizationOptions::default()).unwrap();
        assert!(cert.matches, "{cert:?}");
    }

    #[test]
    fn unstabilized_is_inconclusive() {
        let options = StabilizationOptions {
            ceiling: Some(6),
            ..StabilizationOptions::default()
        };
        assert!(matches!(
            check_reduction_identity(&build_ade(ade("A2")), 6, &options),
            Err(EngineError::Unstabilized {
                order: 6,
                ceiling: 6
            })
        ));
    }
}
