//! Seeded random polynomials, ideals and grading matrices.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::agraded::monomials_of_degree_at_most;
use crate::ideal::Ideal;
use crate::ideal_ops::GradingMatrix;
use crate::poly::Polynomial;
use crate::ring::RingRef;

/// Shape of a random generator set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdealShape {
    pub min_generators: usize,
    pub max_generators: usize,
    pub max_terms: usize,
    pub max_degree: u32,
}

impl Default for IdealShape {
    fn default() -> Self {
        IdealShape {
            min_generators: 2,
            max_generators: 3,
            max_terms: 4,
            max_degree: 3,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonzero polynomial with at most `max_terms` terms, each monomial drawn
/// uniformly from those of degree ≤ `max_degree`, with small nonzero integer
/// coefficients.
pub fn random_polynomial<R: Rng>(
    rng: &mut R,
    ring: &RingRef,
    max_terms: usize,
    max_degree: u32,
) -> Polynomial {
    let field = ring.field();
    let monomials = monomials_of_degree_at_most(ring.nvars(), max_degree);
    loop {
        let count = rng.gen_range(1..=max_terms.max(1));
        let terms: Vec<_> = (0..count)
            .map(|_| {
                let mut c = 0;
                while c == 0 {
                    c = rng.gen_range(-9i64..=9);
                }
                (
                    field.from_i64(c),
                    monomials.choose(rng).expect("nonempty").clone(),
                )
            })
            .collect();
        let p = Polynomial::from_terms(ring, terms).expect("terms fit the ring");
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_ideal<R: Rng>(rng: &mut R, ring: &RingRef, shape: IdealShape) -> Ideal {
    let count =
        rng.gen_range(shape.min_generators..=shape.max_generators.max(shape.min_generators));
    let gens: Vec<Polynomial> = (0..count)
        .map(|_| random_polynomial(rng, ring, shape.max_terms, shape.max_degree))
        .collect();
    Ideal::new(ring, gens).expect("same ring")
}

/// A `rows x cols` matrix with entries in `lo..=hi`.
pub fn random_grading<R: Rng>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    lo: i64,
    hi: i64,
) -> GradingMatrix {
    let entries = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(lo..=hi)).collect())
        .collect();
    GradingMatrix::from_rows(entries, cols).expect("rectangular")
}

/// The generators in a shuffled order.
pub fn shuffled<R: Rng>(rng: &mut R, ideal: &Ideal) -> Ideal {
    let mut gens = ideal.generators().to_vec();
    gens.shuffle(rng);
    Ideal::new(ideal.ring(), gens).expect("same ring")
}
