//! Buchberger's algorithm with the Gebauer–Möller pair criteria, multivariate
//! division and reduced Gröbner bases.

use std::borrow::Borrow;
use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::{Polynomial, Term};
use crate::ring::same_ring;

/// One reduction step of the division algorithm: the leading term `term` of the
/// running polynomial was cancelled by `multiplier * basis[reducer]`.
#[derive(Debug, Clone, Copy)]
pub struct DivisionStep<'a> {
    pub term: &'a Monomial,
    pub reducer: usize,
    pub multiplier: &'a Monomial,
}

fn check_basis(f: &Polynomial, basis: &[Polynomial]) -> Result<()> {
    if basis.iter().any(|g| !same_ring(f.ring(), g.ring())) {
        return Err(Error::RingMismatch);
    }
    if basis.iter().any(Polynomial::is_zero) {
        return Err(Error::ZeroPolynomial);
    }
    Ok(())
}

/// Fully reduced remainder of `f` on division by `basis`.
///
/// The greatest reducible term is always cancelled first, using the first
/// basis element (in the given order) whose leading monomial divides it.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Result<Polynomial> {
    check_basis(f, basis)?;
    Ok(reduce(f, basis, |_| {}))
}

/// [`normal_form`] reporting every division step to `observe`.
pub fn normal_form_traced(
    f: &Polynomial,
    basis: &[Polynomial],
    observe: impl FnMut(DivisionStep<'_>),
) -> Result<Polynomial> {
    check_basis(f, basis)?;
    Ok(reduce(f, basis, observe))
}

pub(crate) fn reduce<P: Borrow<Polynomial>>(
    f: &Polynomial,
    basis: &[P],
    mut observe: impl FnMut(DivisionStep<'_>),
) -> Polynomial {
    let order = f.ring().order();
    let masks: Vec<u64> = basis
        .iter()
        .map(|g| support_mask(g.borrow().lm()))
        .collect();
    let mut remainder: Vec<Term> = Vec::new();
    let mut coeffs: HashMap<Monomial, Scalar> = HashMap::with_capacity(f.len());
    let mut heap: BinaryHeap<Ranked<'_>> = BinaryHeap::with_capacity(f.len());
    for t in f.terms() {
        coeffs.insert(t.monomial.clone(), t.coeff.clone());
        heap.push(Ranked(t.monomial.clone(), order));
    }
    while let Some(Ranked(lead, _)) = heap.pop() {
        let Some(coeff) = coeffs.remove(&lead) else {
            continue;
        };
        let lead_mask = support_mask(&lead);
        let Some((idx, g)) = basis
            .iter()
            .map(Borrow::borrow)
            .enumerate()
            .find(|&(i, g)| masks[i] & !lead_mask == 0 && g.lm().divides(&lead))
        else {
            remainder.push(Term {
                coeff,
                monomial: lead,
            });
            continue;
        };
        let q = g.lm().quotient_of(&lead).expect("divisor");
        observe(DivisionStep {
            term: &lead,
            reducer: idx,
            multiplier: &q,
        });
        let c = -(coeff.div(g.lc()).expect("nonzero leading coefficient"));
        for t in &g.terms()[1..] {
            let mono = t.monomial.mul(&q);
            let add = &t.coeff * &c;
            match coeffs.entry(mono) {
                Entry::Occupied(mut e) => {
                    let sum = e.get() + &add;
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
                Entry::Vacant(e) => {
                    heap.push(Ranked(e.key().clone(), order));
                    e.insert(add);
                }
            }
        }
    }
    Polynomial::from_sorted_terms(f.ring(), remainder)
}

// Bit i set when variable i (mod 64) occurs; a divisor's mask is a subset of
// its multiple's.
fn support_mask(m: &Monomial) -> u64 {
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0, |acc, (i, _)| acc | 1 << (i % 64))
}

// A monomial ranked by the ring's term order.
struct Ranked<'a>(Monomial, &'a MonomialOrder);

impl PartialEq for Ranked<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for Ranked<'_> {}

impl PartialOrd for Ranked<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ranked<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.1.cmp(&self.0, &other.0)
    }
}

/// The S-polynomial `(L/lt(f))·f − (L/lt(g))·g` with `L` the lcm of the
/// leading monomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if !same_ring(f.ring(), g.ring()) {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(spoly(f, g))
}

fn spoly(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let lcm = f.lm().lcm(g.lm());
    let mf = f.lm().quotient_of(&lcm).expect("lcm");
    let mg = g.lm().quotient_of(&lcm).expect("lcm");
    let cf = f.lc().inv().expect("nonzero");
    let cg = -(g.lc().inv().expect("nonzero"));
    f.mul_term(&cf, &mf).add_scaled(g, Some(&cg), Some(&mg))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Builder {
    basis: Vec<Polynomial>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Builder {
    fn active_basis(&self) -> Vec<&Polynomial> {
        self.basis
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(g, _)| g)
            .collect()
    }

    // Gebauer–Möller update for a new, already reduced, monic element h.
    fn insert(&mut self, h: Polynomial, sugar_h: u32) {
        let k = self.basis.len();
        let lm_h = h.lm().clone();

        let mut fresh: Vec<(Pair, bool)> = (0..k)
            .filter(|&i| self.active[i])
            .map(|i| {
                let lm_i = self.basis[i].lm();
                let lcm = lm_i.lcm(&lm_h);
                let sugar = (self.sugar[i] + lcm.degree() - lm_i.degree())
                    .max(sugar_h + lcm.degree() - lm_h.degree());
                let pair = Pair {
                    i,
                    j: k,
                    lcm,
                    sugar,
                };
                (pair, lm_i.is_coprime(&lm_h))
            })
            .collect();

        // Drop (i,h) when some (j,h) has an lcm properly dividing its lcm.
        let snapshot: Vec<Monomial> = fresh.iter().map(|(p, _)| p.lcm.clone()).collect();
        fresh.retain(|(p, _)| !snapshot.iter().any(|l| l != &p.lcm && l.divides(&p.lcm)));

        // Among equal lcms keep one pair, or none if any of them is coprime.
        let mut kept: Vec<(Pair, bool)> = Vec::new();
        for (pair, coprime) in fresh {
            match kept.iter_mut().find(|(q, _)| q.lcm == pair.lcm) {
                Some(existing) => existing.1 |= coprime,
                None => kept.push((pair, coprime)),
            }
        }

        let basis = &self.basis;
        self.pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && basis[p.i].lm().lcm(&lm_h) != p.lcm
                && basis[p.j].lm().lcm(&lm_h) != p.lcm)
        });
        self.pairs
            .extend(kept.into_iter().filter(|(_, c)| !c).map(|(p, _)| p));

        for i in 0..k {
            if self.active[i] && lm_h.divides(self.basis[i].lm()) {
                self.active[i] = false;
            }
        }
        self.basis.push(h);
        self.sugar.push(sugar_h);
        self.active.push(true);
    }

    // Sugar strategy: smallest sugar degree, then smallest lcm, then indices.
    fn pop_pair(&mut self) -> Option<Pair> {
        let order = self.basis.first()?.ring().order().clone();
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (p, q) = (&self.pairs[a], &self.pairs[b]);
            p.sugar
                .cmp(&q.sugar)
                .then_with(|| order.cmp(&p.lcm, &q.lcm))
                .then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn absorb(&mut self, f: &Polynomial, sugar: u32) -> bool {
        let h = reduce(f, &self.active_basis(), |_| {});
        if h.is_zero() {
            return false;
        }
        let unit = h.is_unit();
        let sugar = sugar.max(h.total_degree().unwrap_or(0));
        self.insert(h.monic(), sugar);
        unit
    }
}

/// A Gröbner basis of the ideal generated by `generators` under their ring's
/// order. The result is not necessarily reduced; see [`reduced_basis`].
pub fn buchberger(generators: &[Polynomial]) -> Vec<Polynomial> {
    let Some(first) = generators.first() else {
        return Vec::new();
    };
    let ring = first.ring().clone();
    let mut b = Builder {
        basis: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in generators {
        if b.absorb(g, g.total_degree().unwrap_or(0)) {
            return vec![Polynomial::one(&ring)];
        }
    }
    while let Some(pair) = b.pop_pair() {
        let s = spoly(&b.basis[pair.i], &b.basis[pair.j]);
        if b.absorb(&s, pair.sugar) {
            return vec![Polynomial::one(&ring)];
        }
    }
    b.active_basis().into_iter().cloned().collect()
}

/// The unique reduced Gröbner basis generated by a Gröbner basis `gb`: monic,
/// inter-reduced, sorted ascending by leading monomial.
///
/// Elements are reduced against each other until nothing changes, so a
/// generating set whose autoreduction is already a Gröbner basis (such as
/// `{x, x + y}`) is accepted as well.
pub fn reduced_basis(gb: &[Polynomial]) -> Vec<Polynomial> {
    let Some(first) = gb.iter().find(|g| !g.is_zero()) else {
        return Vec::new();
    };
    let order = first.ring().order().clone();
    let mut basis: Vec<Polynomial> = gb
        .iter()
        .filter(|g| !g.is_zero())
        .map(Polynomial::monic)
        .collect();
    basis.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < basis.len() {
            let g = basis.remove(i);
            let r = reduce(&g, &basis, |_| {});
            if r.is_zero() {
                changed = true;
                continue;
            }
            let r = r.monic();
            changed |= r != g;
            basis.insert(i, r);
            i += 1;
        }
        if !changed {
            break;
        }
    }
    basis.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    basis
}

/// Reduced Gröbner basis of the ideal generated by `generators`.
///
/// Over QQ the basis is assembled from images modulo word-size primes and
/// checked exactly before it is returned.
pub fn groebner_basis(generators: &[Polynomial]) -> Vec<Polynomial> {
    let nonzero: Vec<Polynomial> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .cloned()
        .collect();
    match nonzero.first().map(|g| g.ring().field()) {
        None => Vec::new(),
        Some(FieldSpec::Rationals) => crate::modular::rational_groebner_basis(&nonzero),
        Some(FieldSpec::Prime(_)) => reduced_basis(&buchberger(&nonzero)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::tests::{arb_poly, xy};
    use crate::ring::{Ring, RingRef};
    use proptest::prelude::*;

    fn p(r: &RingRef, s: &str) -> Polynomial {
        crate::problem::parse_polynomial(r, s).unwrap()
    }

    fn show(v: &[Polynomial]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn normal_form_examples() {
        let r = xy(MonomialOrder::GrevLex);
        assert!(normal_form(&p(&r, "x^2"), &[p(&r, "x")]).unwrap().is_zero());
        assert_eq!(
            normal_form(&p(&r, "x^2 + y"), &[p(&r, "x")]).unwrap(),
            p(&r, "y")
        );
        assert_eq!(
            normal_form(&p(&r, "x*y"), &[p(&r, "x + y")]).unwrap(),
            p(&r, "-y^2")
        );
    }

    #[test]
    fn normal_form_rejects_foreign_ring() {
        let r = xy(MonomialOrder::GrevLex);
        let l = xy(MonomialOrder::Lex);
        assert_eq!(
            normal_form(&p(&r, "x"), &[p(&l, "x")]),
            Err(Error::RingMismatch)
        );
    }

    #[test]
    fn s_polynomial_examples() {
        let r = xy(MonomialOrder::GrevLex);
        assert!(s_polynomial(&p(&r, "x"), &p(&r, "y")).unwrap().is_zero());
        assert_eq!(
            s_polynomial(&p(&r, "x^2"), &p(&r, "x^2 + y")).unwrap(),
            p(&r, "-y")
        );
        assert_eq!(
            s_polynomial(&p(&r, "x^2 + y^2"), &p(&r, "x*y")).unwrap(),
            p(&r, "y^3")
        );
        assert_eq!(
            s_polynomial(&p(&r, "x"), &Polynomial::zero(&r)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn buchberger_examples() {
        let r = xy(MonomialOrder::GrevLex);
        assert_eq!(show(&groebner_basis(&[p(&r, "x"), p(&r, "y")])), ["y", "x"]);
        assert_eq!(
            show(&groebner_basis(&[p(&r, "x - y"), p(&r, "x + y")])),
            ["y", "x"]
        );
        let l = xy(MonomialOrder::Lex);
        let gb = buchberger(&[p(&l, "x^2 + y^2 - 1"), p(&l, "x - y")]);
        let red = reduced_basis(&gb);
        assert_eq!(show(&red), ["y^2 - 1/2", "x - y"]);
        for q in ["x - y", "2*y^2 - 1", "x^2 + y^2 - 1"] {
            assert!(normal_form(&p(&l, q), &red).unwrap().is_zero());
        }
        assert!(buchberger(&[]).is_empty());
    }

    #[test]
    fn reduced_basis_examples() {
        let r = xy(MonomialOrder::GrevLex);
        assert_eq!(
            show(&reduced_basis(&[p(&r, "x"), p(&r, "x + y")])),
            ["y", "x"]
        );
        assert_eq!(show(&reduced_basis(&[p(&r, "2*x")])), ["x"]);
        assert!(reduced_basis(&[]).is_empty());
    }

    #[test]
    fn unit_detected() {
        let r = xy(MonomialOrder::GrevLex);
        assert_eq!(show(&groebner_basis(&[p(&r, "x"), p(&r, "x + 1")])), ["1"]);
    }

    #[test]
    fn traced_steps_report_multipliers() {
        let r = xy(MonomialOrder::GrevLex);
        let mut steps = Vec::new();
        let nf = normal_form_traced(&p(&r, "x^2*y + x"), &[p(&r, "x*y - 1")], |s| {
            steps.push((s.term.clone(), s.reducer, s.multiplier.clone()))
        })
        .unwrap();
        assert_eq!(nf, p(&r, "2*x"));
        assert_eq!(
            steps,
            vec![(Monomial::new([2, 1]), 0, Monomial::new([1, 0]))]
        );
    }

    fn ring3() -> impl Strategy<Value = RingRef> {
        prop_oneof![
            Just(
                Ring::new(
                    ["x", "y", "z"],
                    FieldSpec::prime(32003).unwrap(),
                    MonomialOrder::GrevLex
                )
                .unwrap()
            ),
            Just(
                Ring::new(
                    ["x", "y", "z"],
                    FieldSpec::prime(32003).unwrap(),
                    MonomialOrder::Lex
                )
                .unwrap()
            ),
            Just(Ring::new(["x", "y"], FieldSpec::Rationals, MonomialOrder::GrevLex).unwrap()),
        ]
    }

    fn gens() -> impl Strategy<Value = Vec<Polynomial>> {
        ring3().prop_flat_map(|r| proptest::collection::vec(arb_poly(r, 3, 2), 1..=3))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn criterion_and_containment(g in gens()) {
            let gb = buchberger(&g);
            for i in 0..gb.len() {
                for j in i + 1..gb.len() {
                    let s = s_polynomial(&gb[i], &gb[j]).unwrap();
                    prop_assert!(normal_form(&s, &gb).unwrap().is_zero());
                }
            }
            for f in &g {
                prop_assert!(normal_form(f, &gb).unwrap().is_zero());
            }
            let red = reduced_basis(&gb);
            let from_inputs = groebner_basis(&g);
            for h in &red {
                // every output element lies in the ideal of the inputs
                prop_assert!(normal_form(h, &from_inputs).unwrap().is_zero());
            }
        }

        #[test]
        fn reduced_basis_is_shuffle_invariant(g in gens()) {
            let mut rev = g.clone();
            rev.reverse();
            rev.rotate_left(g.len() / 2);
            prop_assert_eq!(groebner_basis(&g), groebner_basis(&rev));
        }

        #[test]
        fn normal_form_idempotent(g in gens(), seed in 0usize..4) {
            let gb = groebner_basis(&g);
            let f = g[seed % g.len()].pow(2).add(&Polynomial::one(g[0].ring())).unwrap();
            let nf = normal_form(&f, &gb).unwrap();
            prop_assert_eq!(normal_form(&nf, &gb).unwrap(), nf);
        }
    }
}
