//! Poincare series of the arc filtration on germs of complex analytic
//! varieties.
//!
//! * [`graph`]: resolution dual graphs and the ADE diagrams.
//! * [`lattice`]: Laufer closure, fundamental cycle, rationality, `dim O/J(v)`.
//! * [`series`]: exact truncated series and rational forms in `t`.
//! * [`engine`]: arc series, multi-variable series and the checks tying them together.
//! * [`semigroup`]: monomial curves via numerical semigroups.
//! * [`verify`] and [`cli`]: verification suites and the `arcfilt` binary.

pub mod cli;
pub mod engine;
pub mod graph;
pub mod lattice;
pub mod semigroup;
pub mod series;
pub mod verify;

pub use engine::{
    ade_closed_form, arc_series, check_reduction_identity, multi_poincare,
    quasihomogeneous_correspondence, suspension_series, ArcSeriesResult, EngineError,
    ReductionCertificate, ResourceLimits, StabilizationOptions,
};
pub use graph::{
    build_ade, parse_dual_graph, AdeFamily, AdeType, DualGraph, GraphError, IntersectionMatrix,
    Vertex,
};
pub use lattice::{CodimValue, Cycle, LatticeError};
pub use semigroup::{curve_arc_series, NumericalSemigroup, SemigroupError};
pub use series::{MultiSeries, RationalForm, SeriesError, UniSeries};
