//! Sparse polynomials with terms kept sorted descending under the ring order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::monomial::Monomial;
use crate::ring::{same_ring, RingRef};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Scalar,
    pub monomial: Monomial,
}

/// An element of a [`crate::Ring`].
///
/// Canonical form: no zero coefficients, pairwise distinct monomials, terms
/// strictly descending under the ring's order. Equal polynomials therefore
/// have identical term lists.
#[derive(Clone)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: Scalar) -> Self {
        Self::term(ring, c, Monomial::one(ring.nvars()))
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn variable(ring: &RingRef, index: usize) -> Result<Self> {
        if index >= ring.nvars() {
            return Err(Error::InvalidVariable {
                index,
                count: ring.nvars(),
            });
        }
        Ok(Self::monomial(ring, Monomial::var(ring.nvars(), index, 1)))
    }

    pub fn monomial(ring: &RingRef, m: Monomial) -> Self {
        Self::term(ring, ring.field().one(), m)
    }

    fn term(ring: &RingRef, coeff: Scalar, monomial: Monomial) -> Self {
        debug_assert_eq!(monomial.len(), ring.nvars());
        let terms = if coeff.is_zero() {
            Vec::new()
        } else {
            vec![Term { coeff, monomial }]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates and
    /// dropping zeros.
    pub fn from_terms(
        ring: &RingRef,
        terms: impl IntoIterator<Item = (Scalar, Monomial)>,
    ) -> Result<Self> {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (c, m) in terms {
            if m.len() != ring.nvars() {
                return Err(Error::LengthMismatch {
                    left: m.len(),
                    right: ring.nvars(),
                });
            }
            if c.field() != ring.field() {
                return Err(Error::RingMismatch);
            }
            match acc.get_mut(&m) {
                Some(existing) => *existing = &*existing + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Ok(Self::from_map(ring, acc))
    }

    pub(crate) fn from_sorted_terms(ring: &RingRef, terms: Vec<Term>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].monomial, &w[1].monomial) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    fn from_map(ring: &RingRef, acc: HashMap<Monomial, Scalar>) -> Self {
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(monomial, coeff)| Term { coeff, monomial })
            .collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.monomial, &a.monomial));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].monomial.is_one() && self.terms[0].coeff.is_one()
    }

    /// Nonzero constant (a unit of the ring).
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].monomial.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Result<(&Scalar, &Monomial)> {
        self.terms
            .first()
            .map(|t| (&t.coeff, &t.monomial))
            .ok_or(Error::ZeroPolynomial)
    }

    pub(crate) fn lm(&self) -> &Monomial {
        &self.terms[0].monomial
    }

    pub(crate) fn lc(&self) -> &Scalar {
        &self.terms[0].coeff
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.monomial.degree()).max()
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.add_scaled(other, None, None))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let minus_one = -self.ring.field().one();
        Ok(self.add_scaled(other, Some(&minus_one), None))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-self.ring.field().one())
    }

    pub fn pow(&self, mut exp: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    pub(crate) fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if other.len() == 1 {
            let t = &other.terms[0];
            return self.mul_term(&t.coeff, &t.monomial);
        }
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                let m = a.monomial.mul(&b.monomial);
                let c = &a.coeff * &b.coeff;
                match acc.get_mut(&m) {
                    Some(existing) => *existing = &*existing + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(&self.ring, acc)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    monomial: t.monomial.clone(),
                })
                .collect(),
        }
    }

    /// `c * m * self`; the ordering of terms is preserved by multiplicativity.
    pub fn mul_term(&self, c: &Scalar, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    monomial: t.monomial.mul(m),
                })
                .collect(),
        }
    }

    /// `self + c * m * other` (each factor optional) via a sorted merge.
    pub(crate) fn add_scaled(
        &self,
        other: &Polynomial,
        c: Option<&Scalar>,
        m: Option<&Monomial>,
    ) -> Polynomial {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.len() + other.len());
        let mut lhs = self.terms.iter().peekable();
        let scaled = other.terms.iter().map(|t| Term {
            coeff: c.map_or_else(|| t.coeff.clone(), |c| &t.coeff * c),
            monomial: m.map_or_else(|| t.monomial.clone(), |m| t.monomial.mul(m)),
        });
        for t in scaled {
            while let Some(l) = lhs.peek() {
                match order.cmp(&l.monomial, &t.monomial) {
                    Ordering::Greater => out.push(lhs.next().unwrap().clone()),
                    _ => break,
                }
            }
            match lhs.peek() {
                Some(l) if l.monomial == t.monomial => {
                    let sum = &l.coeff + &t.coeff;
                    lhs.next();
                    if !sum.is_zero() {
                        out.push(Term {
                            coeff: sum,
                            monomial: t.monomial,
                        });
                    }
                }
                _ => out.push(t),
            }
        }
        out.extend(lhs.cloned());
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    /// Scales so the leading coefficient is one. The zero polynomial stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            Some(t) if !t.coeff.is_one() => {
                self.scale(&t.coeff.inv().expect("nonzero leading coefficient"))
            }
            _ => self.clone(),
        }
    }

    /// The same polynomial in another ring with the same variable count and
    /// field (typically the same variables under another order).
    pub fn with_ring(&self, ring: &RingRef) -> Result<Polynomial> {
        if ring.nvars() != self.ring.nvars() || ring.field() != self.ring.field() {
            return Err(Error::RingMismatch);
        }
        self.map_monomials(ring, Monomial::clone)
    }

    /// Rewrites every monomial with `f` and reinterprets the result in `ring`.
    pub fn map_monomials(
        &self,
        ring: &RingRef,
        f: impl Fn(&Monomial) -> Monomial,
    ) -> Result<Polynomial> {
        Polynomial::from_terms(
            ring,
            self.terms.iter().map(|t| (t.coeff.clone(), f(&t.monomial))),
        )
    }

    /// True when no term involves any variable at `indices`.
    pub fn avoids(&self, indices: impl Fn(usize) -> bool) -> bool {
        self.terms.iter().all(|t| {
            t.monomial
                .exponents()
                .iter()
                .enumerate()
                .all(|(i, &e)| e == 0 || !indices(i))
        })
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

pub(crate) fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let factors: Vec<String> = m
        .exponents()
        .iter()
        .zip(names)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, name)| {
            if e == 1 {
                name.clone()
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let negative = t.coeff.is_negative();
            let magnitude = if negative { -&t.coeff } else { t.coeff.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if t.monomial.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                f.write_str(&format_monomial(&t.monomial, self.ring.names()))?;
            } else {
                write!(
                    f,
                    "{magnitude}*{}",
                    format_monomial(&t.monomial, self.ring.names())
                )?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::order::MonomialOrder;
    use crate::ring::Ring;
    use proptest::prelude::*;

    pub(crate) fn xy(order: MonomialOrder) -> RingRef {
        Ring::new(["x", "y"], FieldSpec::Rationals, order).unwrap()
    }

    fn var(r: &RingRef, i: usize) -> Polynomial {
        Polynomial::variable(r, i).unwrap()
    }

    #[test]
    fn addition_cancels() {
        let r = xy(MonomialOrder::GrevLex);
        let (x, y) = (var(&r, 0), var(&r, 1));
        let s = x.add(&y).unwrap().add(&x.sub(&y).unwrap()).unwrap();
        assert_eq!(s.to_string(), "2*x");
        assert_eq!(x.add(&Polynomial::zero(&r)).unwrap(), x);
    }

    #[test]
    fn characteristic_two() {
        let r = Ring::new(
            ["x", "y"],
            FieldSpec::prime(2).unwrap(),
            MonomialOrder::GrevLex,
        )
        .unwrap();
        let f = var(&r, 0).add(&var(&r, 1)).unwrap();
        assert!(f.add(&f).unwrap().is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let r = xy(MonomialOrder::GrevLex);
        let (x, y) = (var(&r, 0), var(&r, 1));
        let p = x.add(&y).unwrap().mul(&x.sub(&y).unwrap()).unwrap();
        assert_eq!(p.to_string(), "x^2 - y^2");
        assert_eq!(p.mul(&Polynomial::one(&r)).unwrap(), p);
        assert!(p.mul(&Polynomial::zero(&r)).unwrap().is_zero());
    }

    #[test]
    fn leading_terms() {
        let g = xy(MonomialOrder::GrevLex);
        let f = var(&g, 0).add(&var(&g, 1).pow(2)).unwrap();
        assert_eq!(f.leading_term().unwrap().1, &Monomial::new([0, 2]));
        let l = xy(MonomialOrder::Lex);
        let f = f.with_ring(&l).unwrap();
        assert_eq!(f.leading_term().unwrap().1, &Monomial::new([1, 0]));
        let q = FieldSpec::Rationals;
        let h = Polynomial::from_terms(
            &l,
            [
                (q.from_i64(3), Monomial::new([2, 1])),
                (q.from_i64(5), Monomial::new([1, 2])),
            ],
        )
        .unwrap();
        let (c, m) = h.leading_term().unwrap();
        assert_eq!(
            (c.to_string(), m.clone()),
            ("3".to_string(), Monomial::new([2, 1]))
        );
        assert_eq!(
            Polynomial::zero(&l).leading_term(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn ring_mismatch() {
        let a = xy(MonomialOrder::GrevLex);
        let b = xy(MonomialOrder::Lex);
        assert_eq!(var(&a, 0).add(&var(&b, 0)), Err(Error::RingMismatch));
        assert_eq!(var(&a, 0).mul(&var(&b, 0)), Err(Error::RingMismatch));
    }

    #[test]
    fn display_forms() {
        let q = xy(MonomialOrder::GrevLex);
        let f = Polynomial::from_terms(
            &q,
            [
                (FieldSpec::Rationals.from_i64(-1), Monomial::new([1, 1])),
                (
                    FieldSpec::Rationals
                        .from_ratio(&1.into(), &2.into())
                        .unwrap(),
                    Monomial::new([0, 1]),
                ),
                (FieldSpec::Rationals.from_i64(-3), Monomial::new([0, 0])),
            ],
        )
        .unwrap();
        assert_eq!(f.to_string(), "-x*y + 1/2*y - 3");
        let p = Ring::new(["x"], FieldSpec::prime(7).unwrap(), MonomialOrder::GrevLex).unwrap();
        let g = var(&p, 0).sub(&Polynomial::one(&p)).unwrap();
        assert_eq!(g.to_string(), "x + 6");
    }

    pub(crate) fn arb_poly(
        ring: RingRef,
        max_terms: usize,
        max_exp: u32,
    ) -> impl Strategy<Value = Polynomial> {
        let n = ring.nvars();
        proptest::collection::vec(
            (-5i64..=5, proptest::collection::vec(0..=max_exp, n)),
            0..=max_terms,
        )
        .prop_map(move |terms| {
            let f = ring.field();
            Polynomial::from_terms(
                &ring,
                terms
                    .into_iter()
                    .map(|(c, e)| (f.from_i64(c), Monomial::new(e))),
            )
            .unwrap()
        })
    }

    fn canonical(p: &Polynomial) -> bool {
        let o = p.ring().order();
        p.terms().iter().all(|t| !t.coeff.is_zero())
            && p.terms()
                .windows(2)
                .all(|w| o.cmp(&w[0].monomial, &w[1].monomial) == Ordering::Greater)
    }

    fn rings() -> impl Strategy<Value = RingRef> {
        prop_oneof![
            Just(
                Ring::new(
                    ["x", "y", "z"],
                    FieldSpec::Rationals,
                    MonomialOrder::GrevLex
                )
                .unwrap()
            ),
            Just(Ring::new(["x", "y", "z"], FieldSpec::Rationals, MonomialOrder::Lex).unwrap()),
            Just(
                Ring::new(
                    ["x", "y", "z"],
                    FieldSpec::prime(7).unwrap(),
                    MonomialOrder::GrevLex
                )
                .unwrap()
            ),
        ]
    }

    fn triples() -> impl Strategy<Value = (Polynomial, Polynomial, Polynomial)> {
        rings().prop_flat_map(|r| {
            (
                arb_poly(r.clone(), 4, 3),
                arb_poly(r.clone(), 4, 3),
                arb_poly(r, 4, 3),
            )
        })
    }

    proptest! {
        #[test]
        fn outputs_are_canonical((f, g, _h) in triples()) {
            prop_assert!(canonical(&f.add(&g).unwrap()));
            prop_assert!(canonical(&f.mul(&g).unwrap()));
            prop_assert!(canonical(&f.sub(&g).unwrap()));
        }

        #[test]
        fn ring_axioms((f, g, h) in triples()) {
            prop_assert_eq!(f.add(&g).unwrap().add(&h).unwrap(), f.add(&g.add(&h).unwrap()).unwrap());
            prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
            prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
            prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
            prop_assert_eq!(
                f.mul(&g.add(&h).unwrap()).unwrap(),
                f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
            );
            prop_assert!(f.add(&f.neg()).unwrap().is_zero());
        }

        #[test]
        fn leading_term_multiplicative((f, g, _h) in triples()) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let fg = f.mul(&g).unwrap();
            let (cf, mf) = f.leading_term().unwrap();
            let (cg, mg) = g.leading_term().unwrap();
            let (c, m) = fg.leading_term().unwrap();
            prop_assert_eq!(c, &(cf * cg));
            prop_assert_eq!(m, &mf.mul(mg));
            prop_assert_eq!(fg.total_degree(), Some(f.total_degree().unwrap() + g.total_degree().unwrap()));
        }
    }
}
