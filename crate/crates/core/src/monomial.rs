use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponent vector of a monomial `x^b`, with its total degree cached.
///
/// Exponent arithmetic is overflow-checked; overflowing an exponent panics.
/// The derived `Ord` is a storage order only; use [`crate::MonomialOrder`] for
/// term orders.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: SmallVec<[u32; 8]>,
}

impl Monomial {
    pub fn new(exps: impl IntoIterator<Item = u32>) -> Self {
        let exps: SmallVec<[u32; 8]> = exps.into_iter().collect();
        let degree = exps
            .iter()
            .try_fold(0u32, |acc, &e| acc.checked_add(e))
            .expect("total degree overflow");
        Monomial { degree, exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            degree: 0,
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    /// The monomial `x_index^power`.
    pub fn var(nvars: usize, index: usize, power: u32) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = power;
        m.degree = power;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.len(), other.len());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial {
            degree: self
                .degree
                .checked_add(other.degree)
                .expect("total degree overflow"),
            exps,
        }
    }

    /// Length-checked product.
    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial> {
        check_len(self, other)?;
        Ok(self.mul(other))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            degree: other.degree - self.degree,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| b - a)
                .collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)))
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Exponents at the given positions, as a monomial in fewer variables.
    pub fn select(&self, indices: &[usize]) -> Monomial {
        Monomial::new(indices.iter().map(|&i| self.exps[i]))
    }

    /// Prepends `extra` leading zero exponents.
    pub fn shift(&self, extra: usize) -> Monomial {
        let mut exps = SmallVec::from_elem(0, extra);
        exps.extend_from_slice(&self.exps);
        Monomial {
            degree: self.degree,
            exps,
        }
    }
}

pub(crate) fn check_len(a: &Monomial, b: &Monomial) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_is_cached_sum() {
        let a = Monomial::new([2, 0, 3]);
        let b = Monomial::new([1, 4, 0]);
        assert_eq!(a.degree(), 5);
        assert_eq!(a.mul(&b).degree(), 10);
        assert_eq!(a.lcm(&b), Monomial::new([2, 4, 3]));
        assert_eq!(a.lcm(&b).degree(), 9);
    }

    #[test]
    fn divisibility() {
        let a = Monomial::new([1, 0]);
        let b = Monomial::new([2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), Some(Monomial::new([1, 1])));
        assert!(a.is_coprime(&Monomial::new([0, 3])));
    }

    #[test]
    #[should_panic(expected = "exponent overflow")]
    fn overflow_is_fatal() {
        let a = Monomial::new([u32::MAX - 1, 0]);
        let _ = a.mul(&Monomial::new([5, 0]));
    }

    #[test]
    fn try_mul_checks_length() {
        let a = Monomial::new([1]);
        assert_eq!(
            a.try_mul(&Monomial::new([1, 2])),
            Err(Error::LengthMismatch { left: 1, right: 2 })
        );
    }
}
