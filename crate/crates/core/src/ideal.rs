use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, reduce};
use crate::poly::Polynomial;
use crate::ring::{same_ring, RingRef};

/// An ideal given by generators, with its reduced Gröbner basis (under the
/// ring's order) computed at most once and cached.
#[derive(Clone)]
pub struct Ideal {
    ring: RingRef,
    generators: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &RingRef, generators: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let mut gens = Vec::new();
        for g in generators {
            if !same_ring(ring, g.ring()) {
                return Err(Error::RingMismatch);
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: gens,
            gb: OnceLock::new(),
        })
    }

    pub fn zero(ring: &RingRef) -> Self {
        Ideal {
            ring: ring.clone(),
            generators: Vec::new(),
            gb: OnceLock::from(Vec::new()),
        }
    }

    pub fn unit(ring: &RingRef) -> Self {
        Self::from_reduced_basis(ring, vec![Polynomial::one(ring)])
    }

    /// Wraps a sequence already known to be the reduced Gröbner basis.
    pub(crate) fn from_reduced_basis(ring: &RingRef, basis: Vec<Polynomial>) -> Self {
        Ideal {
            ring: ring.clone(),
            generators: basis.clone(),
            gb: OnceLock::from(basis),
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// The reduced Gröbner basis: monic, inter-reduced, ascending by leading
    /// monomial.
    pub fn groebner_basis(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| groebner_basis(&self.generators))
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if !same_ring(&self.ring, f.ring()) {
            return Err(Error::RingMismatch);
        }
        Ok(reduce(f, self.groebner_basis(), |_| {}).is_zero())
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.groebner_basis(), [one] if one.is_one())
    }

    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool> {
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals by comparing reduced Gröbner bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.groebner_basis() == other.groebner_basis())
    }

    /// The same ideal in a ring with the same variables and field, usually
    /// under a different order. The cache is not carried over.
    pub fn with_ring(&self, ring: &RingRef) -> Result<Ideal> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.with_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal")
            .field("ring", &self.ring.to_string())
            .field("generators", &self.generators)
            .finish()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "({})", gens.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::MonomialOrder;
    use crate::poly::tests::xy;
    use crate::problem::parse_polynomial;

    fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| parse_polynomial(r, g).unwrap())).unwrap()
    }

    #[test]
    fn membership() {
        let r = xy(MonomialOrder::GrevLex);
        let i = ideal(&r, &["x + y"]);
        assert!(i.contains(&parse_polynomial(&r, "x + y").unwrap()).unwrap());
        assert!(!i.contains(&parse_polynomial(&r, "x").unwrap()).unwrap());
        assert!(i.contains(&Polynomial::zero(&r)).unwrap());
    }

    #[test]
    fn unit_ideal() {
        let r = xy(MonomialOrder::GrevLex);
        assert!(ideal(&r, &["x", "x + 1"]).is_unit());
        assert!(!ideal(&r, &["x"]).is_unit());
        assert!(!Ideal::zero(&r).is_unit());
        assert!(Ideal::unit(&r).is_unit());
    }

    #[test]
    fn equality() {
        let r = xy(MonomialOrder::GrevLex);
        assert!(ideal(&r, &["x - y", "x + y"])
            .equals(&ideal(&r, &["x", "y"]))
            .unwrap());
        assert!(!ideal(&r, &["x"]).equals(&ideal(&r, &["x^2"])).unwrap());
        let i = ideal(&r, &["x^2 + y", "x*y"]);
        assert!(i.equals(&i).unwrap());
        let l = xy(MonomialOrder::Lex);
        assert_eq!(i.equals(&ideal(&l, &["x"])), Err(Error::RingMismatch));
    }

    #[test]
    fn zero_generators_filtered() {
        let r = xy(MonomialOrder::GrevLex);
        let i = Ideal::new(&r, [Polynomial::zero(&r)]).unwrap();
        assert!(i.is_zero());
        assert!(i.groebner_basis().is_empty());
    }
}
