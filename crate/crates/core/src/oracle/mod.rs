//! Brute-force certification at bounded degree.
//!
//! The vector space `I_{<=D}` of elements of `I` with total degree at most `D`
//! is spanned by the multiples `m·g` (deg ≤ D) of a reduced Gröbner basis
//! under a degree-compatible order. Splitting monomial coordinates by A-degree
//! and intersecting gives every A-homogeneous element of `I` up to degree `D`;
//! the largest A-graded subideal must reproduce exactly those pieces.

pub mod linalg;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::agraded::{a_degree, monomials_of_degree_at_most, ADegree};
use crate::error::Error;
use crate::ideal::Ideal;
use crate::ideal_ops::GradingMatrix;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{same_ring, RingRef};

pub use linalg::RowSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Algebra(#[from] Error),
    #[error("candidate generator {0} does not lie in the ideal")]
    CandidateNotContained(String),
}

/// Default truncation degree for `n` variables.
pub fn default_degree(nvars: usize) -> u32 {
    match nvars {
        0..=3 => 8,
        4 => 6,
        _ => 4,
    }
}

/// `I_{<=D}` as a row-reduced matrix over the monomials of degree ≤ D.
#[derive(Debug, Clone)]
pub struct TruncatedIdealSpace {
    ring: RingRef,
    degree: u32,
    monomials: Vec<Monomial>,
    space: RowSpace,
}

impl TruncatedIdealSpace {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.space.rank()
    }

    /// Column labels, descending in grevlex.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn space(&self) -> &RowSpace {
        &self.space
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// Coefficient vector of `f`; `None` if `f` has a term of degree > D.
    pub fn coordinates(&self, f: &Polynomial) -> Option<Vec<crate::Scalar>> {
        let index: HashMap<&Monomial, usize> = self
            .monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut v = vec![self.ring.field().zero(); self.monomials.len()];
        for t in f.terms() {
            v[*index.get(&t.monomial)?] = t.coeff.clone();
        }
        Some(v)
    }

    pub fn polynomial(&self, v: &[crate::Scalar]) -> Polynomial {
        let terms = v
            .iter()
            .zip(&self.monomials)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, m)| (c.clone(), m.clone()));
        Polynomial::from_terms(&self.ring, terms).expect("matching ring")
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.coordinates(f).is_some_and(|v| self.space.contains(&v))
    }
}

/// The exact space `I_{<=D}`. The ideal's ring order must be degree-compatible.
pub fn truncate(ideal: &Ideal, degree: u32) -> Result<TruncatedIdealSpace, OracleError> {
    let ring = ideal.ring();
    if !ring.order().is_degree_compatible(ring.nvars()) {
        return Err(Error::NotDegreeCompatible.into());
    }
    let monomials = monomials_of_degree_at_most(ring.nvars(), degree);
    let index: HashMap<&Monomial, usize> =
        monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let field = ring.field();
    let mut rows = Vec::new();
    for g in ideal.groebner_basis() {
        let gd = g.total_degree().expect("nonzero basis element");
        if gd > degree {
            continue;
        }
        for m in monomials_of_degree_at_most(ring.nvars(), degree - gd) {
            let mut row = vec![field.zero(); monomials.len()];
            for t in g.terms() {
                row[index[&t.monomial.mul(&m)]] = t.coeff.clone();
            }
            rows.push(row);
        }
    }
    let space = RowSpace::new(field, monomials.len(), rows);
    Ok(TruncatedIdealSpace {
        ring: ring.clone(),
        degree,
        monomials,
        space,
    })
}

/// Column indices of the truncation grouped by A-degree, sorted by A-degree.
fn classes(
    s: &TruncatedIdealSpace,
    grading: &GradingMatrix,
) -> Result<BTreeMap<ADegree, Vec<usize>>, Error> {
    grading.check_ring(&s.ring)?;
    let mut out: BTreeMap<ADegree, Vec<usize>> = BTreeMap::new();
    for (i, m) in s.monomials.iter().enumerate() {
        out.entry(a_degree(m, grading)?).or_default().push(i);
    }
    Ok(out)
}

/// For every A-degree realised by a monomial of degree ≤ D, the subspace of
/// `I_{<=D}` made of A-homogeneous elements of that degree.
pub fn homogeneous_part(
    s: &TruncatedIdealSpace,
    grading: &GradingMatrix,
) -> Result<BTreeMap<ADegree, RowSpace>, OracleError> {
    Ok(classes(s, grading)?
        .into_iter()
        .map(|(deg, cols)| {
            let piece = s.space.intersect_coordinates(&cols);
            (deg, piece)
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// In the ideal, A-homogeneous, missing from the candidate.
    MissingFromCandidate,
    /// In the candidate, A-homogeneous, outside the ideal.
    OutsideIdeal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub polynomial: Polynomial,
    pub degree: ADegree,
    pub kind: WitnessKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail(w) => {
                let what = match w.kind {
                    WitnessKind::MissingFromCandidate => "in ideal, not in candidate",
                    WitnessKind::OutsideIdeal => "in candidate, not in ideal",
                };
                write!(
                    f,
                    "fail\nwitness: {}\nA-degree: {}\nreason: {what}",
                    w.polynomial, w.degree
                )
            }
        }
    }
}

/// Checks that `candidate` has exactly the A-homogeneous elements of `I` up to
/// total degree `degree`. The candidate must already be contained in `I`.
pub fn verify_maximality(
    ideal: &Ideal,
    grading: &GradingMatrix,
    candidate: &Ideal,
    degree: u32,
) -> Result<Verdict, OracleError> {
    let ring = ideal.ring();
    grading.check_ring(ring)?;
    if !same_ring(ring, candidate.ring()) {
        return Err(Error::RingMismatch.into());
    }
    for g in candidate.generators() {
        if !ideal.contains(g)? {
            return Err(OracleError::CandidateNotContained(g.to_string()));
        }
    }

    let graded_ring = if ring.order().is_degree_compatible(ring.nvars()) {
        ring.clone()
    } else {
        ring.with_order(MonomialOrder::GrevLex)?
    };
    let big = truncate(&ideal.with_ring(&graded_ring)?, degree)?;
    let small = truncate(&candidate.with_ring(&graded_ring)?, degree)?;
    let big_parts = homogeneous_part(&big, grading)?;
    let small_parts = homogeneous_part(&small, grading)?;

    let mut witnesses: Vec<Witness> = Vec::new();
    for (deg, piece) in &big_parts {
        let other = &small_parts[deg];
        let mut push = |row: &[crate::Scalar], kind| {
            let p = big
                .polynomial(row)
                .monic()
                .with_ring(ring)
                .expect("same variables");
            witnesses.push(Witness {
                polynomial: p,
                degree: deg.clone(),
                kind,
            });
        };
        if let Some(row) = piece.rows().iter().find(|r| !other.contains(r)) {
            push(row, WitnessKind::MissingFromCandidate);
        }
        if let Some(row) = other.rows().iter().find(|r| !piece.contains(r)) {
            push(row, WitnessKind::OutsideIdeal);
        }
    }
    // Lowest total degree first, then the grevlex-largest leading monomial.
    let grevlex = MonomialOrder::GrevLex;
    let best = witnesses.into_iter().min_by(|a, b| {
        let (da, db) = (a.polynomial.total_degree(), b.polynomial.total_degree());
        let la = graded_lead(&a.polynomial, &graded_ring);
        let lb = graded_lead(&b.polynomial, &graded_ring);
        da.cmp(&db).then_with(|| grevlex.cmp(&lb, &la))
    });
    Ok(best.map_or(Verdict::Pass, Verdict::Fail))
}

fn graded_lead(p: &Polynomial, graded: &RingRef) -> Monomial {
    let q = p.with_ring(graded).expect("same variables");
    q.leading_term().expect("nonzero witness").1.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agraded::largest_monomial_subideal;
    use crate::poly::tests::xy;
    use crate::problem::parse_polynomial;

    fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| parse_polynomial(r, g).unwrap())).unwrap()
    }

    #[test]
    fn truncate_examples() {
        let r = xy(MonomialOrder::GrevLex);
        assert_eq!(truncate(&ideal(&r, &["x"]), 1).unwrap().dim(), 1);
        assert_eq!(truncate(&Ideal::zero(&r), 5).unwrap().dim(), 0);
        let s = truncate(&ideal(&r, &["x + y"]), 2).unwrap();
        assert_eq!(s.dim(), 3);
        for p in ["x + y", "x^2 + x*y", "x*y + y^2"] {
            assert!(s.contains(&parse_polynomial(&r, p).unwrap()));
        }
        assert!(!s.contains(&parse_polynomial(&r, "x").unwrap()));
        assert!(!s.contains(&parse_polynomial(&r, "x^3 + x^2*y").unwrap()));
    }

    #[test]
    fn truncate_requires_graded_order() {
        let r = xy(MonomialOrder::Lex);
        assert_eq!(
            truncate(&ideal(&r, &["x"]), 2).unwrap_err(),
            OracleError::Algebra(Error::NotDegreeCompatible)
        );
    }

    #[test]
    fn homogeneous_part_examples() {
        let r = xy(MonomialOrder::GrevLex);
        let s = truncate(&ideal(&r, &["x + y"]), 2).unwrap();
        let parts = homogeneous_part(&s, &GradingMatrix::identity(2)).unwrap();
        assert_eq!(parts.len(), 6);
        assert!(parts.values().all(|p| p.rank() == 0));

        let s = truncate(&ideal(&r, &["x + y"]), 1).unwrap();
        let total = GradingMatrix::from_rows(vec![vec![1, 1]], 2).unwrap();
        let parts = homogeneous_part(&s, &total).unwrap();
        let one = &parts[&ADegree(vec![1])];
        assert_eq!(one.rank(), 1);
        assert!(one.contains(
            &s.coordinates(&parse_polynomial(&r, "x + y").unwrap())
                .unwrap()
        ));

        let s = truncate(&Ideal::unit(&r), 0).unwrap();
        let parts = homogeneous_part(&s, &total).unwrap();
        assert_eq!(parts[&ADegree(vec![0])].rank(), 1);
    }

    #[test]
    fn verify_examples() {
        let r = xy(MonomialOrder::GrevLex);
        let id = GradingMatrix::identity(2);
        let i = ideal(&r, &["x^2 + y^2", "x*y"]);
        let good = ideal(&r, &["x*y", "x^3", "y^3"]);
        assert_eq!(verify_maximality(&i, &id, &good, 6).unwrap(), Verdict::Pass);

        let line = ideal(&r, &["x + y"]);
        assert_eq!(
            verify_maximality(&line, &id, &Ideal::zero(&r), 8).unwrap(),
            Verdict::Pass
        );

        let Verdict::Fail(w) = verify_maximality(&i, &id, &ideal(&r, &["x*y"]), 4).unwrap() else {
            panic!("expected a witness");
        };
        assert_eq!(w.polynomial.to_string(), "x^3");
        assert_eq!(w.kind, WitnessKind::MissingFromCandidate);
        assert!(i.contains(&w.polynomial).unwrap());
        assert!(!ideal(&r, &["x*y"]).contains(&w.polynomial).unwrap());
    }

    #[test]
    fn verify_rejects_uncontained_candidate() {
        let r = xy(MonomialOrder::GrevLex);
        let err = verify_maximality(
            &ideal(&r, &["x*y"]),
            &GradingMatrix::identity(2),
            &ideal(&r, &["x"]),
            4,
        )
        .unwrap_err();
        assert_eq!(err, OracleError::CandidateNotContained("x".into()));
    }

    #[test]
    fn verify_under_lex() {
        let r = xy(MonomialOrder::Lex);
        let i = ideal(&r, &["x^2 + y^2", "x*y"]);
        let out = largest_monomial_subideal(&i);
        assert_eq!(
            verify_maximality(&i, &GradingMatrix::identity(2), &out, 8).unwrap(),
            Verdict::Pass
        );
    }

    #[test]
    fn dimension_grows_with_degree() {
        let r = xy(MonomialOrder::GrevLex);
        let i = ideal(&r, &["x^2 - y", "x*y + 1"]);
        let dims: Vec<usize> = (0..6).map(|d| truncate(&i, d).unwrap().dim()).collect();
        assert!(dims.windows(2).all(|w| w[0] <= w[1]), "{dims:?}");
    }
}
