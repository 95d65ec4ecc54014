//! Reduced Gröbner bases over QQ assembled from their images modulo primes
//! below 2^31.
//!
//! Each image is computed with the prime-field engine. Images whose leading
//! monomials disagree with the majority are set aside, the rest are combined
//! by Chinese remaindering and rational reconstruction, and a candidate is
//! returned only after it is checked exactly over QQ: every input reduces to
//! zero and every S-pair not covered by the product or chain criterion
//! reduces to zero.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{FieldSpec, Scalar};
use crate::groebner::{buchberger, reduced_basis};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{Ring, RingRef};

const FIRST_PRIME: u32 = (1 << 31) - 1;
const MAX_PRIMES: usize = 400;

struct Image {
    prime: u32,
    basis: Vec<Polynomial>,
}

impl Image {
    fn leading(&self) -> Vec<&Monomial> {
        self.basis.iter().map(|g| g.lm()).collect()
    }
}

/// Reduced Gröbner basis of the ideal generated by `generators`, all nonzero
/// and over QQ.
pub(crate) fn rational_groebner_basis(generators: &[Polynomial]) -> Vec<Polynomial> {
    let ring = generators[0].ring().clone();
    let mut primes = Primes(FIRST_PRIME);
    let mut images: Vec<Image> = Vec::new();
    let mut last: Option<(Vec<Polynomial>, usize)> = None;
    while images.len() < MAX_PRIMES {
        let Some(prime) = primes.next_good(generators) else {
            break;
        };
        let ring_p = Ring::new(
            ring.names().to_vec(),
            FieldSpec::Prime(prime),
            ring.order().clone(),
        )
        .expect("same names and order");
        let gens_p: Vec<Polynomial> = generators.iter().map(|g| image(g, &ring_p)).collect();
        images.push(Image {
            prime,
            basis: reduced_basis(&buchberger(&gens_p)),
        });

        let group = majority(&images);
        let Some(candidate) = lift(&ring, &group) else {
            continue;
        };
        match &last {
            Some((previous, size))
                if *previous == candidate
                    && *size < group.len()
                    && verify(generators, &candidate) =>
            {
                return candidate;
            }
            _ => {}
        }
        last = Some((candidate, group.len()));
    }
    reduced_basis(&buchberger(generators))
}

struct Primes(u32);

impl Primes {
    // Next prime below the previous one that keeps every input coefficient
    // defined and every leading coefficient nonzero.
    fn next_good(&mut self, generators: &[Polynomial]) -> Option<u32> {
        while self.0 > 3 {
            let p = self.0;
            self.0 -= 1;
            if FieldSpec::prime(u64::from(p)).is_err() {
                continue;
            }
            let modulus = BigInt::from(p);
            let bad = generators.iter().any(|g| {
                let lead_vanishes = match g.lc() {
                    Scalar::Rational(r) => r.numer().is_multiple_of(&modulus),
                    Scalar::Modular { .. } => false,
                };
                lead_vanishes
                    || g.terms().iter().any(|t| match &t.coeff {
                        Scalar::Rational(r) => r.denom().is_multiple_of(&modulus),
                        Scalar::Modular { .. } => false,
                    })
            });
            if !bad {
                return Some(p);
            }
        }
        None
    }
}

fn image(f: &Polynomial, ring_p: &RingRef) -> Polynomial {
    let field = ring_p.field();
    let terms = f.terms().iter().map(|t| {
        let c = match &t.coeff {
            Scalar::Rational(r) => field.from_ratio(r.numer(), r.denom()).expect("good prime"),
            Scalar::Modular { .. } => unreachable!("rational input"),
        };
        (c, t.monomial.clone())
    });
    Polynomial::from_terms(ring_p, terms).expect("same shape")
}

// The images sharing the most common leading-monomial sequence, earliest
// sequence first on ties.
fn majority(images: &[Image]) -> Vec<&Image> {
    let mut groups: Vec<(Vec<&Monomial>, Vec<&Image>)> = Vec::new();
    for img in images {
        let key = img.leading();
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, members)) => members.push(img),
            None => groups.push((key, vec![img])),
        }
    }
    let best = groups.iter().map(|(_, m)| m.len()).max().unwrap_or(0);
    groups
        .into_iter()
        .find(|(_, m)| m.len() == best)
        .map(|(_, m)| m)
        .unwrap_or_default()
}

fn residue(s: &Scalar) -> u32 {
    match s {
        Scalar::Modular { value, .. } => *value,
        Scalar::Rational(_) => unreachable!("prime-field image"),
    }
}

fn lift(ring: &RingRef, group: &[&Image]) -> Option<Vec<Polynomial>> {
    let first = group.first()?;
    let order = ring.order();
    let mut out = Vec::with_capacity(first.basis.len());
    for index in 0..first.basis.len() {
        let mut coeffs: BTreeMap<Vec<u32>, (Monomial, Vec<u32>)> = BTreeMap::new();
        for (slot, img) in group.iter().enumerate() {
            for t in img.basis[index].terms() {
                let entry = coeffs
                    .entry(t.monomial.exponents().to_vec())
                    .or_insert_with(|| (t.monomial.clone(), vec![0; group.len()]));
                entry.1[slot] = residue(&t.coeff);
            }
        }
        let moduli: Vec<u32> = group.iter().map(|img| img.prime).collect();
        let mut terms = Vec::with_capacity(coeffs.len());
        for (monomial, residues) in coeffs.into_values() {
            let (r, m) = crt(&residues, &moduli);
            let q = reconstruct(&r, &m)?;
            terms.push((Scalar::Rational(q), monomial));
        }
        let mut p = Polynomial::from_terms(ring, terms).ok()?;
        if p.is_zero() {
            return None;
        }
        p = p.monic();
        out.push(p);
    }
    out.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    Some(out)
}

fn crt(residues: &[u32], moduli: &[u32]) -> (BigInt, BigInt) {
    let mut r = BigInt::zero();
    let mut m = BigInt::one();
    for (&ri, &pi) in residues.iter().zip(moduli) {
        let p = u64::from(pi);
        let m_mod = (&m % pi).to_u64().expect("small");
        let r_mod = (&r % pi).to_u64().expect("small");
        let inv = pow_mod(m_mod, p - 2, p);
        let k = ((u64::from(ri) + p - r_mod) % p) * inv % p;
        r += &m * k;
        m *= pi;
    }
    (r, m)
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// The fraction `a/b` with `|a|, b ≤ sqrt(m/2)` congruent to `r` modulo `m`.
fn reconstruct(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        (r0, r1) = (r1, r2);
        (s0, s1) = (s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

fn verify(generators: &[Polynomial], basis: &[Polynomial]) -> bool {
    let order = basis[0].ring().order();
    let basis: Vec<IntPoly> = basis.iter().map(IntPoly::from_rational).collect();
    generators
        .iter()
        .all(|f| IntPoly::from_rational(f).reduces_to_zero(&basis, order))
        && is_groebner(&basis, order)
}

fn is_groebner(basis: &[IntPoly], order: &MonomialOrder) -> bool {
    for j in 0..basis.len() {
        for i in 0..j {
            let (a, b) = (basis[i].lm(), basis[j].lm());
            if a.is_coprime(b) {
                continue;
            }
            let lcm = a.lcm(b);
            let covered = basis.iter().enumerate().any(|(k, g)| {
                k != i
                    && k != j
                    && g.lm().divides(&lcm)
                    && g.lm().lcm(a) != lcm
                    && g.lm().lcm(b) != lcm
            });
            if covered {
                continue;
            }
            let s = basis[i].s_polynomial(&basis[j], &lcm, order);
            if !s.reduces_to_zero(basis, order) {
                return false;
            }
        }
    }
    true
}

/// Integer polynomial with terms in descending order, used for exact
/// zero tests without fractions.
struct IntPoly(Vec<(Monomial, BigInt)>);

impl IntPoly {
    fn from_rational(f: &Polynomial) -> IntPoly {
        let denom = f
            .terms()
            .iter()
            .fold(BigInt::one(), |acc, t| match &t.coeff {
                Scalar::Rational(r) => acc.lcm(r.denom()),
                Scalar::Modular { .. } => unreachable!("rational input"),
            });
        let terms = f
            .terms()
            .iter()
            .map(|t| match &t.coeff {
                Scalar::Rational(r) => (t.monomial.clone(), r.numer() * (&denom / r.denom())),
                Scalar::Modular { .. } => unreachable!("rational input"),
            })
            .collect();
        IntPoly(terms)
    }

    fn lm(&self) -> &Monomial {
        &self.0[0].0
    }

    fn s_polynomial(&self, other: &IntPoly, lcm: &Monomial, order: &MonomialOrder) -> IntPoly {
        let (a, b) = (&self.0[0].1, &other.0[0].1);
        let g = a.gcd(b);
        let p = self.lm().quotient_of(lcm).expect("lcm");
        let q = other.lm().quotient_of(lcm).expect("lcm");
        IntPoly(combine(
            &self.0[1..],
            &(b / &g),
            &p,
            &other.0[1..],
            &(a / &g),
            &q,
            order,
        ))
    }

    // Top-reduces until the leading term is irreducible or nothing is left.
    fn reduces_to_zero(mut self, basis: &[IntPoly], order: &MonomialOrder) -> bool {
        let mut steps = 0u32;
        while let Some((lead, a)) = self.0.first() {
            let Some(g) = basis.iter().find(|g| g.lm().divides(lead)) else {
                return false;
            };
            let q = g.lm().quotient_of(lead).expect("divisor");
            let b = &g.0[0].1;
            let d = a.gcd(b);
            self.0 = combine(
                &self.0[1..],
                &(b / &d),
                &Monomial::one(q.len()),
                &g.0[1..],
                &(a / &d),
                &q,
                order,
            );
            steps += 1;
            if steps.is_multiple_of(8) {
                self.make_primitive();
            }
        }
        true
    }

    fn make_primitive(&mut self) {
        let content = self.0.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
        if !content.is_zero() && !content.is_one() {
            for (_, c) in &mut self.0 {
                *c /= &content;
            }
        }
    }
}

// x*m*f - y*n*g for descending term slices.
fn combine(
    f: &[(Monomial, BigInt)],
    x: &BigInt,
    m: &Monomial,
    g: &[(Monomial, BigInt)],
    y: &BigInt,
    n: &Monomial,
    order: &MonomialOrder,
) -> Vec<(Monomial, BigInt)> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut left = f.iter().map(|(mono, c)| (mono.mul(m), c * x)).peekable();
    let mut right = g.iter().map(|(mono, c)| (mono.mul(n), -(c * y))).peekable();
    loop {
        let next = match (left.peek(), right.peek()) {
            (None, None) => break,
            (Some(_), None) => left.next(),
            (None, Some(_)) => right.next(),
            (Some(l), Some(r)) => match order.cmp(&l.0, &r.0) {
                Ordering::Greater => left.next(),
                Ordering::Less => right.next(),
                Ordering::Equal => {
                    let (mono, c) = left.next().expect("peeked");
                    let (_, d) = right.next().expect("peeked");
                    let sum = c + d;
                    if sum.is_zero() {
                        continue;
                    }
                    Some((mono, sum))
                }
            },
        };
        out.extend(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use proptest::test_runner::RngSeed;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn reconstruction_inverts_reduction() {
        let m: BigInt = BigInt::from(2147483647u64) * BigInt::from(2147483629u64);
        for (a, b) in [(1, 2), (-3, 7), (0, 1), (123456, 789), (-1, 1)] {
            let x = q(a, b);
            let residues: Vec<u32> = [2147483647u32, 2147483629]
                .iter()
                .map(|&p| {
                    let s = FieldSpec::Prime(p)
                        .from_ratio(x.numer(), x.denom())
                        .unwrap();
                    residue(&s)
                })
                .collect();
            let (r, modulus) = crt(&residues, &[2147483647, 2147483629]);
            assert_eq!(modulus, m);
            assert_eq!(reconstruct(&r, &modulus), Some(x));
        }
    }

    #[test]
    fn reconstruction_fails_without_enough_primes() {
        let x = q(1, 1 << 30) * q(1, 1 << 30);
        let p = 2147483647u32;
        let s = FieldSpec::Prime(p)
            .from_ratio(x.numer(), x.denom())
            .unwrap();
        let (r, m) = crt(&[residue(&s)], &[p]);
        assert_ne!(reconstruct(&r, &m), Some(x));
    }

    fn small_rational_sets() -> impl Strategy<Value = Vec<Polynomial>> {
        let ring = Ring::new(
            ["x", "y", "z"],
            FieldSpec::Rationals,
            MonomialOrder::GrevLex,
        )
        .unwrap();
        proptest::collection::vec(crate::poly::tests::arb_poly(ring, 4, 3), 1..4)
            .prop_map(|v| v.into_iter().filter(|p| !p.is_zero()).collect::<Vec<_>>())
            .prop_filter("nonempty", |v| !v.is_empty())
    }

    proptest! {
        #![proptest_config(ProptestConfig {
        cases: 48,
        rng_seed: RngSeed::Fixed(7919),
        ..ProptestConfig::default()
    })]

        #[test]
        fn agrees_with_direct_computation(gens in small_rational_sets()) {
            let direct = reduced_basis(&buchberger(&gens));
            prop_assert_eq!(rational_groebner_basis(&gens), direct);
        }
    }
}
