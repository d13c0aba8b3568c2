//! Exact series arithmetic: truncated one- and multi-variable power series,
//! rational functions in `t`, the min-reduction of a multivariate series,
//! and detection of products of `(1 - t^a)` factors.
//!
//! Every coefficient is an arbitrary-precision integer.

mod multi;
mod poly;
mod product;
mod rational;
mod uni;

use num_bigint::BigInt;
use thiserror::Error;

pub use multi::{reduce_to_min, MultiSeries};
pub use poly::Poly;
pub use product::{cyclotomic_product_form, product_form, ProductCertificate};
pub use rational::{
    degree_and_pole, expand_rational, quasihomogeneous_series, rat_equal, RationalForm,
};
pub use uni::UniSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("denominator has zero constant term")]
    ZeroConstantTerm,
    #[error("denominator constant term {0} is not a unit; expansion is not integral")]
    NonUnitConstantTerm(BigInt),
    #[error("series must start with 1, found {0}")]
    LeadingCoefficientNotOne(BigInt),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
