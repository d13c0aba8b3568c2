use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{SeriesError, UniSeries};

/// Power series in `r` variables truncated to the box `[0..bound]^r`,
/// stored sparsely.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiSeries {
    vars: usize,
    bound: u32,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiSeries {
    pub fn zero(vars: usize, bound: u32) -> Self {
        Self {
            vars,
            bound,
            terms: BTreeMap::new(),
        }
    }

    /// Collects terms, summing repeated exponents and dropping those outside
    /// the box.
    pub fn from_terms<I>(vars: usize, bound: u32, terms: I) -> Result<Self, SeriesError>
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut s = Self::zero(vars, bound);
        for (exps, c) in terms {
            if exps.len() != vars {
                return Err(SeriesError::VariableCountMismatch {
                    left: vars,
                    right: exps.len(),
                });
            }
            s.add_term(exps, c);
        }
        Ok(s)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        debug_assert_eq!(exps.len(), self.vars);
        if c.is_zero() || exps.iter().any(|&e| e > self.bound) {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn check_vars(&self, other: &MultiSeries) -> Result<(), SeriesError> {
        if self.vars != other.vars {
            return Err(SeriesError::VariableCountMismatch {
                left: self.vars,
                right: other.vars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiSeries) -> Result<MultiSeries, SeriesError> {
        self.check_vars(other)?;
        let bound = self.bound.min(other.bound);
        let terms = self
            .terms()
            .chain(other.terms())
            .map(|(k, v)| (k.to_vec(), v.clone()));
        MultiSeries::from_terms(self.vars, bound, terms)
    }

    /// Product truncated to the smaller box.
    pub fn mul(&self, other: &MultiSeries) -> Result<MultiSeries, SeriesError> {
        self.check_vars(other)?;
        let bound = self.bound.min(other.bound);
        let mut out = MultiSeries::zero(self.vars, bound);
        for (a, ca) in self.terms() {
            if a.iter().any(|&e| e > bound) {
                continue;
            }
            for (b, cb) in other.terms() {
                let exps: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if exps.iter().all(|&e| e <= bound) {
                    *out.terms.entry(exps).or_default() += ca * cb;
                }
            }
        }
        out.terms.retain(|_, v| !v.is_zero());
        Ok(out)
    }
}

/// Replaces every monomial `t^v` by `t^(min v)`. The result has order equal
/// to the box bound; it is exact only up to an order at which no monomial
/// with that minimum lies outside the box.
pub fn reduce_to_min(p: &MultiSeries) -> UniSeries {
    let mut coeffs = vec![BigInt::zero(); p.bound as usize + 1];
    for (exps, c) in p.terms() {
        let m = exps.iter().copied().min().unwrap_or(0);
        coeffs[m as usize] += c;
    }
    UniSeries::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(vars: usize, bound: u32, terms: &[(&[u32], i64)]) -> MultiSeries {
        MultiSeries::from_terms(
            vars,
            bound,
            terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))),
        )
        .unwrap()
    }

    #[test]
    fn reduction_examples() {
        let p = series(2, 4, &[(&[0, 0], 1), (&[1, 2], 1), (&[2, 1], 1)]);
        assert_eq!(reduce_to_min(&p), UniSeries::from_i64(&[1, 2, 0, 0, 0]));

        let c = series(0, 2, &[(&[], 5)]);
        assert_eq!(reduce_to_min(&c), UniSeries::from_i64(&[5, 0, 0]));

        let t3 = series(1, 5, &[(&[3], 1)]);
        assert_eq!(reduce_to_min(&t3), UniSeries::from_i64(&[0, 0, 0, 1, 0, 0]));
    }

    #[test]
    fn sparse_products() {
        // (1 + t1)(1 - t2) in a box of side 1
        let a = series(2, 1, &[(&[0, 0], 1), (&[1, 0], 1)]);
        let b = series(2, 1, &[(&[0, 0], 1), (&[0, 1], -1)]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(
            ab,
            series(
                2,
                1,
                &[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], -1), (&[1, 1], -1)]
            )
        );
        // terms leaving the box are dropped
        let big = series(2, 1, &[(&[1, 1], 1)]);
        assert_eq!(big.mul(&big).unwrap().term_count(), 0);
    }

    #[test]
    fn cancellation_and_mismatch() {
        let a = series(2, 3, &[(&[1, 1], 2), (&[0, 2], 1)]);
        let b = series(2, 3, &[(&[1, 1], -2)]);
        let s = a.add(&b).unwrap();
        assert_eq!(s, series(2, 3, &[(&[0, 2], 1)]));
        assert_eq!(s.coeff(&[1, 1]), BigInt::zero());
        assert!(matches!(
            a.add(&series(3, 3, &[])),
            Err(SeriesError::VariableCountMismatch { left: 2, right: 3 })
        ));
        assert!(a.mul(&series(1, 3, &[])).is_err());
        let out_of_box = series(2, 2, &[(&[3, 0], 7)]);
        assert_eq!(out_of_box.term_count(), 0);
    }
}
