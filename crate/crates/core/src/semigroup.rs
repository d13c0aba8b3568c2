//! Monomial curves `x -> (x^g1, ..., x^gn)` and their value semigroups.
//!
//! On a monomial curve the orders of functions along the normalization arc
//! form the numerical semigroup generated by the exponents, and that arc
//! attains the minimum over all arcs. Hence `dim F_i/F_(i+1)` is 1 for
//! members of the semigroup and 0 for gaps, and the arc series is
//! `sum_{s in semigroup} t^s`.

use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

use crate::series::{expand_rational, Poly, RationalForm, UniSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("generator list is empty")]
    Empty,
    #[error("generators must be positive integers, found \"{0}\"")]
    InvalidGenerator(String),
    #[error("generators have gcd {0}; the value set is not cofinite")]
    NotCoprime(u32),
}

/// Cofinite additive submonoid of the non-negative integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u32>,
    membership: Vec<bool>,
    conductor: u32,
    gaps: Vec<u32>,
}

impl NumericalSemigroup {
    pub fn from_generators(generators: &[u32]) -> Result<Self, SemigroupError> {
        if generators.is_empty() {
            return Err(SemigroupError::Empty);
        }
        if generators.contains(&0) {
            return Err(SemigroupError::InvalidGenerator("0".into()));
        }
        let g = generators.iter().fold(0u32, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(SemigroupError::NotCoprime(g));
        }
        let smallest = *generators.iter().min().unwrap() as usize;

        // Once `smallest` consecutive integers are members, so is everything
        // beyond them.
        let mut member = Vec::new();
        let mut run = 0usize;
        let mut n = 0usize;
        let conductor = loop {
            let is_member = n == 0
                || generators
                    .iter()
                    .any(|&g| g as usize <= n && member[n - g as usize]);
            member.push(is_member);
            run = if is_member { run + 1 } else { 0 };
            if run == smallest {
                break n + 1 - smallest;
            }
            n += 1;
        };
        member.truncate(conductor);
        let gaps = (0..conductor)
            .filter(|&i| !member[i])
            .map(|i| i as u32)
            .collect();
        Ok(Self {
            generators: generators.to_vec(),
            membership: member,
            conductor: conductor as u32,
            gaps,
        })
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// Smallest `c` with `[c, oo)` inside the semigroup.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Largest gap, if any.
    pub fn frobenius_number(&self) -> Option<u32> {
        self.gaps.last().copied()
    }

    pub fn gaps(&self) -> &[u32] {
        &self.gaps
    }

    pub fn contains(&self, n: u32) -> bool {
        n >= self.conductor || self.membership[n as usize]
    }
}

/// Parses `"3,4,5"`.
pub fn parse_generators(text: &str) -> Result<Vec<u32>, SemigroupError> {
    let gens = text
        .split(',')
        .map(str::trim)
        .map(|s| match s.parse::<u32>() {
            Ok(g) if g > 0 => Ok(g),
            _ => Err(SemigroupError::InvalidGenerator(s.to_string())),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if gens.is_empty() {
        return Err(SemigroupError::Empty);
    }
    Ok(gens)
}

/// Arc series of the monomial curve with the given exponents, to `order`,
/// and its exact rational form `N(t) / (1 - t)` with `deg N` equal to the
/// conductor.
pub fn curve_arc_series(
    generators: &[u32],
    order: usize,
) -> Result<(UniSeries, RationalForm), SemigroupError> {
    let sg = NumericalSemigroup::from_generators(generators)?;
    let series = UniSeries::new(
        (0..=order as u32)
            .map(|i| BigInt::from(u8::from(sg.contains(i))))
            .collect(),
    );
    let indicator = |i: i64| i64::from(i >= 0 && sg.contains(i as u32));
    let numerator: Vec<i64> = (0..=i64::from(sg.conductor()))
        .map(|k| indicator(k) - indicator(k - 1))
        .collect();
    let form = RationalForm::new(Poly::from_i64(&numerator), Poly::one_minus_power(1))
        .expect("denominator 1 - t");
    debug_assert_eq!(expand_rational(&form, order).ok().as_ref(), Some(&series));
    Ok((series, form))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{product_form, rat_equal};
    use proptest::prelude::*;

    /// Members below `limit` by summing generator multiples directly.
    fn enumerate_members(gens: &[u32], limit: u32) -> Vec<bool> {
        let mut member = vec![false; limit as usize];
        let mut frontier = vec![0u32];
        while let Some(x) = frontier.pop() {
            if x >= limit || member[x as usize] {
                continue;
            }
            member[x as usize] = true;
            frontier.extend(gens.iter().map(|g| x + g));
        }
        member
    }

    #[test]
    fn semigroup_examples() {
        let s = NumericalSemigroup::from_generators(&[3, 4, 5]).unwrap();
        assert_eq!(s.gaps(), &[1, 2]);
        assert_eq!(s.conductor(), 3);
        assert_eq!(s.frobenius_number(), Some(2));

        let n = NumericalSemigroup::from_generators(&[1]).unwrap();
        assert!(n.gaps().is_empty());
        assert_eq!(n.conductor(), 0);
        assert_eq!(n.frobenius_number(), None);

        assert_eq!(
            NumericalSemigroup::from_generators(&[2, 4]),
            Err(SemigroupError::NotCoprime(2))
        );
        assert_eq!(
            NumericalSemigroup::from_generators(&[]),
            Err(SemigroupError::Empty)
        );

        let s = NumericalSemigroup::from_generators(&[5, 7]).unwrap();
        // Sylvester: conductor (a-1)(b-1) for two coprime generators
        assert_eq!(s.conductor(), 24);
        assert_eq!(s.gaps().len(), 12);
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_generators("3,4,5").unwrap(), vec![3, 4, 5]);
        assert_eq!(parse_generators(" 2, 3 ").unwrap(), vec![2, 3]);
        assert!(parse_generators("3,,5").is_err());
        assert!(parse_generators("3,-4").is_err());
        assert!(parse_generators("0,1").is_err());
        assert!(parse_generators("").is_err());
    }

    #[test]
    fn curve_examples() {
        let (s, f) = curve_arc_series(&[3, 4, 5], 30).unwrap();
        assert_eq!(f.to_string(), "(1-t+t^3)/(1-t)");
        let members = enumerate_members(&[3, 4, 5], 31);
        let expected: Vec<i64> = members.iter().map(|&m| i64::from(m)).collect();
        assert_eq!(s, UniSeries::from_i64(&expected));
        assert_eq!(product_form(&f), None);

        let (s, f) = curve_arc_series(&[1], 3).unwrap();
        assert_eq!(f.to_string(), "1/(1-t)");
        assert_eq!(s, UniSeries::from_i64(&[1, 1, 1, 1]));

        let (_, f) = curve_arc_series(&[2, 3], 10).unwrap();
        assert_eq!(f.to_string(), "(1-t+t^2)/(1-t)");
        let cusp = RationalForm::from_product(&[(6, 1), (2, -1), (3, -1)]).unwrap();
        assert!(rat_equal(&f, &cusp));
        assert!(rat_equal(&product_form(&f).unwrap(), &cusp));

        assert_eq!(
            curve_arc_series(&[2, 4], 5),
            Err(SemigroupError::NotCoprime(2))
        );
    }

    #[test]
    fn plane_branches_are_products_space_curve_is_not() {
        for gens in [[2u32, 3], [2, 5], [3, 4], [3, 5], [4, 7]] {
            let (_, f) = curve_arc_series(&gens, 10).unwrap();
            assert!(product_form(&f).is_some(), "{gens:?}");
        }
        let (_, f) = curve_arc_series(&[3, 4, 5], 10).unwrap();
        assert!(product_form(&f).is_none());
    }

    proptest! {
        #[test]
        fn semigroup_invariants(gens in proptest::collection::vec(1u32..20, 1..4)) {
            let g = gens.iter().fold(0u32, |acc, &x| acc.gcd(&x));
            prop_assume!(g == 1);
            let sg = NumericalSemigroup::from_generators(&gens).unwrap();
            let c = sg.conductor();
            let members = enumerate_members(&gens, c + 30);
            for (i, &m) in members.iter().enumerate() {
                prop_assert_eq!(sg.contains(i as u32), m);
            }
            let below = (0..c).filter(|&i| sg.contains(i)).count() as u32;
            prop_assert_eq!(sg.gaps().len() as u32, c - below);
            prop_assert!(sg.gaps().iter().all(|&x| x < c));
            for &x in sg.gaps() {
                prop_assert!(!members[x as usize]);
            }

            let (series, form) = curve_arc_series(&gens, c as usize + 20).unwrap();
            prop_assert_eq!(form.numerator().degree().unwrap(), c as usize);
            prop_assert!(series.coefficients().iter().all(|x| *x == BigInt::from(0) || *x == BigInt::from(1)));
            prop_assert!(series.coefficients()[c as usize..].iter().all(|x| *x == BigInt::from(1)));
            prop_assert_eq!(expand_rational(&form, c as usize + 20).unwrap(), series);
        }
    }
}
