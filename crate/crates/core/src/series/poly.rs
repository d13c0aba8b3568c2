use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer polynomial in `t`, lowest degree first, without trailing
/// zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn one() -> Self {
        Self(vec![BigInt::one()])
    }

    /// `1 - t^a`.
    pub fn one_minus_power(a: u32) -> Self {
        let mut c = vec![BigInt::zero(); a as usize + 1];
        c[0] += 1;
        c[a as usize] -= 1;
        Self::new(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.0.last()
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Poly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.0.iter().sum()
    }

    /// Gcd of the coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        Poly::new(self.0.iter().map(|x| x / &c).collect())
    }

    /// Quotient and remainder when `divisor` has leading coefficient `±1`,
    /// or more generally when every step divides exactly. `None` if some
    /// step leaves a fraction.
    pub fn div_rem_exact(&self, divisor: &Poly) -> Option<(Poly, Poly)> {
        let d = divisor.degree()?;
        let lead = divisor.leading()?;
        let mut rem = self.0.clone();
        if rem.len() <= d {
            return Some((Poly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + d];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in divisor.0.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        Some((Poly::new(quot), Poly::new(rem)))
    }

    /// Exact quotient; `None` unless `divisor` divides `self` in `Z[t]`.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem_exact(divisor)?;
        r.is_zero().then_some(q)
    }

    fn pseudo_rem(&self, divisor: &Poly) -> Poly {
        let d = divisor.degree().expect("nonzero divisor");
        let lead = divisor.leading().unwrap();
        let mut rem = self.clone();
        while let Some(deg) = rem.degree() {
            if deg < d {
                break;
            }
            let top = rem.leading().unwrap().clone();
            let shift = deg - d;
            let mut next: Vec<BigInt> = rem.0.iter().map(|c| c * lead).collect();
            for (j, c) in divisor.0.iter().enumerate() {
                next[shift + j] -= &top * c;
            }
            rem = Poly::new(next);
        }
        rem
    }

    /// Primitive gcd in `Z[t]` (positive leading coefficient).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    /// Multiplicity of `t = 1` as a root.
    pub fn root_multiplicity_at_one(&self) -> u32 {
        if self.is_zero() {
            return 0;
        }
        let mut p = self.clone();
        let mut m = 0;
        let t_minus_one = Poly::from_i64(&[-1, 1]);
        while p.eval_at_one().is_zero() {
            p = p
                .exact_div(&t_minus_one)
                .expect("root at one divides exactly");
            m += 1;
        }
        m
    }

    pub fn term_count(&self) -> usize {
        self.0.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let show_mag = i == 0 || !magnitude.is_one();
            if show_mag {
                write!(f, "{magnitude}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}
