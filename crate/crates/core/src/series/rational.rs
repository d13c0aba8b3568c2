use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Poly, SeriesError, UniSeries};

/// Exact rational function `numerator / denominator` in `t`.
///
/// Forms built from factors `(1 - t^a)^e` keep that factorization for
/// display; forms built from polynomials render the polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalForm {
    numerator: Poly,
    denominator: Poly,
    factors: Option<Vec<(u32, i64)>>,
}

impl RationalForm {
    pub fn new(numerator: Poly, denominator: Poly) -> Result<Self, SeriesError> {
        if denominator.coeff(0).is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        Ok(Self {
            numerator,
            denominator,
            factors: None,
        })
    }

    /// `prod (1 - t^a)^e`. Equal bases are merged, zero exponents dropped,
    /// and factors are kept in ascending order of `a`.
    pub fn from_product(factors: &[(u32, i64)]) -> Result<Self, SeriesError> {
        let mut merged: BTreeMap<u32, i64> = BTreeMap::new();
        for &(a, e) in factors {
            if a == 0 {
                return Err(SeriesError::InvalidParameter(
                    "factor 1 - t^0 vanishes identically".into(),
                ));
            }
            *merged.entry(a).or_default() += e;
        }
        merged.retain(|_, e| *e != 0);
        let mut numerator = Poly::one();
        let mut denominator = Poly::one();
        for (&a, &e) in &merged {
            let f = Poly::one_minus_power(a).pow(e.unsigned_abs() as u32);
            if e > 0 {
                numerator = numerator.mul(&f);
            } else {
                denominator = denominator.mul(&f);
            }
        }
        Ok(Self {
            numerator,
            denominator,
            factors: Some(merged.into_iter().collect()),
        })
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denominator(&self) -> &Poly {
        &self.denominator
    }

    /// The `(a, e)` pairs of a product form.
    pub fn factors(&self) -> Option<&[(u32, i64)]> {
        self.factors.as_deref()
    }

    /// Cancels the polynomial gcd and the common content; the denominator's
    /// constant term is made positive. The factored display is dropped.
    pub fn reduced(&self) -> RationalForm {
        let g = self.numerator.gcd(&self.denominator);
        let mut num = self.numerator.exact_div(&g).expect("gcd divides numerator");
        let mut den = self
            .denominator
            .exact_div(&g)
            .expect("gcd divides denominator");
        let c = num.content().gcd(&den.content());
        if !c.is_zero() && !c.is_one() {
            num = num.exact_div(&Poly::new(vec![c.clone()])).unwrap();
            den = den.exact_div(&Poly::new(vec![c])).unwrap();
        }
        if den.coeff(0).is_negative() {
            let m = -BigInt::one();
            num = num.scale(&m);
            den = den.scale(&m);
        }
        RationalForm {
            numerator: num,
            denominator: den,
            factors: None,
        }
    }
}

fn render_factor(a: u32, e: u64) -> String {
    let base = if a == 1 {
        "(1-t)".to_string()
    } else {
        format!("(1-t^{a})")
    };
    if e == 1 {
        base
    } else {
        format!("{base}^{e}")
    }
}

/// Grammar: `(1-t^2)/((1-t)^3)`, `(1-t+t^3)/(1-t)`, `1/(1-t)`. A
/// denominator that is a single unpowered factor is not wrapped again.
impl fmt::Display for RationalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den, den_atomic) = match &self.factors {
            Some(factors) => {
                let num: Vec<String> = factors
                    .iter()
                    .filter(|(_, e)| *e > 0)
                    .map(|&(a, e)| render_factor(a, e.unsigned_abs()))
                    .collect();
                let den: Vec<(u32, u64)> = factors
                    .iter()
                    .filter(|(_, e)| *e < 0)
                    .map(|&(a, e)| (a, e.unsigned_abs()))
                    .collect();
                let atomic = den.len() == 1 && den[0].1 == 1;
                let den: String = den.into_iter().map(|(a, e)| render_factor(a, e)).collect();
                let num = if num.is_empty() {
                    "1".to_string()
                } else {
                    num.concat()
                };
                (num, den, atomic)
            }
            None => {
                let num = if self.numerator.term_count() > 1 {
                    format!("({})", self.numerator)
                } else {
                    self.numerator.to_string()
                };
                let den = if self.denominator == Poly::one() {
                    String::new()
                } else if self.denominator.term_count() > 1 {
                    format!("({})", self.denominator)
                } else {
                    self.denominator.to_string()
                };
                (num, den, true)
            }
        };
        if den.is_empty() {
            write!(f, "{num}")
        } else if den_atomic {
            write!(f, "{num}/{den}")
        } else {
            write!(f, "{num}/({den})")
        }
    }
}

/// Taylor coefficients `c_0..c_order` by long division. The denominator's
/// constant term must be `±1`.
pub fn expand_rational(f: &RationalForm, order: usize) -> Result<UniSeries, SeriesError> {
    let den = f.denominator.coefficients();
    let d0 = den.first().cloned().unwrap_or_default();
    if d0.is_zero() {
        return Err(SeriesError::ZeroConstantTerm);
    }
    if !d0.abs().is_one() {
        return Err(SeriesError::NonUnitConstantTerm(d0));
    }
    let mut out: Vec<BigInt> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut acc = f.numerator.coeff(n);
        for (k, dk) in den.iter().enumerate().skip(1).take(n) {
            acc -= dk * &out[n - k];
        }
        out.push(acc / &d0);
    }
    Ok(UniSeries::new(out))
}

/// Equality as rational functions, by cross-multiplication.
pub fn rat_equal(f: &RationalForm, g: &RationalForm) -> bool {
    f.numerator.mul(&g.denominator) == g.numerator.mul(&f.denominator)
}

/// Degree `deg N - deg D` of the cancelled form, and the pole order at
/// `t = 1` (zero when `t = 1` is not a pole).
pub fn degree_and_pole(f: &RationalForm) -> (i64, u32) {
    let r = f.reduced();
    let deg = |p: &Poly| p.degree().map_or(0, |d| d as i64);
    let degree = deg(&r.numerator) - deg(&r.denominator);
    let pole = r
        .denominator
        .root_multiplicity_at_one()
        .saturating_sub(r.numerator.root_multiplicity_at_one());
    (degree, pole)
}

/// Hilbert-Poincare series `(1 - t^d) / prod (1 - t^w_i)` of a weighted
/// homogeneous hypersurface of degree `d`.
pub fn quasihomogeneous_series(weights: &[u32], degree: u32) -> Result<RationalForm, SeriesError> {
    if weights.is_empty() || weights.contains(&0) || degree == 0 {
        return Err(SeriesError::InvalidParameter(
            "weights and degree must be positive and weights nonempty".into(),
        ));
    }
    let mut factors = vec![(degree, 1)];
    factors.extend(weights.iter().map(|&w| (w, -1)));
    RationalForm::from_product(&factors)
}
