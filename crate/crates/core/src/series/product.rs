use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{expand_rational, rat_equal, RationalForm, SeriesError, UniSeries};

/// Exponents `e_a` with `s = prod_{a <= order} (1 - t^a)^(e_a) mod t^(order+1)`.
///
/// This certifies the product shape only up to `order`; see
/// [`product_form`] for a statement about the whole rational function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductCertificate {
    pub order: usize,
    /// Nonzero `(a, e_a)` pairs, ascending in `a`.
    pub exponents: Vec<(u32, BigInt)>,
}

/// Multiplies `residual` in place by `(1 - t^a)^m`, truncated.
fn multiply_binomial(residual: &mut [BigInt], a: usize, m: &BigInt) {
    let n = residual.len() - 1;
    let terms = n / a;
    // b_k = (-1)^k C(m, k)
    let mut b = Vec::with_capacity(terms + 1);
    let mut binom = BigInt::one();
    b.push(binom.clone());
    for k in 1..=terms {
        binom = binom * (m - BigInt::from(k - 1)) / BigInt::from(k);
        if binom.is_zero() {
            break;
        }
        b.push(if k % 2 == 0 {
            binom.clone()
        } else {
            -binom.clone()
        });
    }
    for i in (0..=n).rev() {
        let mut acc = BigInt::zero();
        for (k, bk) in b.iter().enumerate() {
            if k * a > i {
                break;
            }
            acc += bk * &residual[i - k * a];
        }
        residual[i] = acc;
    }
}

/// Peels `(1 - t^a)^(e_a)` off `s` for `a = 1, 2, ...`: the degree-`a`
/// coefficient of the residual is `-e_a`.
pub fn cyclotomic_product_form(s: &UniSeries) -> Result<ProductCertificate, SeriesError> {
    if !s.coeff(0).is_one() {
        return Err(SeriesError::LeadingCoefficientNotOne(s.coeff(0).clone()));
    }
    let order = s.order();
    let mut residual = s.coefficients().to_vec();
    let mut exponents = Vec::new();
    for a in 1..=order {
        let e = -residual[a].clone();
        if e.is_zero() {
            continue;
        }
        multiply_binomial(&mut residual, a, &-e.clone());
        debug_assert!(residual[a].is_zero());
        exponents.push((a as u32, e));
    }
    Ok(ProductCertificate { order, exponents })
}

/// Expresses `f` exactly as `prod (1 - t^a)^e`, or `None` if it is not of
/// that shape.
///
/// If `f = prod Phi_d^(m_d)` then every `a` with `e_a != 0` divides some `d`
/// with `phi(d) <= D` (`D` the larger degree of the cancelled form), hence
/// `a <= 2 D^2`, and `|e_a| <= sum |m_d|` is at most the sum of the degrees.
/// Peeling to that order and checking the reconstruction with
/// [`rat_equal`] therefore decides the question.
pub fn product_form(f: &RationalForm) -> Option<RationalForm> {
    let reduced = f.reduced();
    let num_deg = reduced.numerator().degree()?;
    let den_deg = reduced.denominator().degree().unwrap_or(0);
    if !reduced.denominator().coeff(0).is_one() || !reduced.numerator().coeff(0).abs().is_one() {
        return None;
    }
    let max_deg = num_deg.max(den_deg);
    let order = (2 * max_deg * max_deg).max(1);
    let exponent_bound = BigInt::from(num_deg + den_deg);

    let s = expand_rational(&reduced, order).ok()?;
    let cert = cyclotomic_product_form(&s).ok()?;
    let mut factors = Vec::with_capacity(cert.exponents.len());
    for (a, e) in &cert.exponents {
        if e.abs() > exponent_bound {
            return None;
        }
        factors.push((*a, e.to_i64()?));
    }
    let candidate = RationalForm::from_product(&factors).ok()?;
    rat_equal(&candidate, f).then_some(candidate)
}
