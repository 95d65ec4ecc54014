//! Ring extension, the grading substitution `x_i -> t^{a_i} x_i`, saturation
//! and elimination.
//!
//! Negative entries of the grading matrix would put negative powers of `t`
//! into the substituted generators. Instead of working in a Laurent ring, each
//! generator is multiplied by the smallest power of `t` that clears them. The
//! contraction of the Laurent ideal back to `k[x]` is then the saturation at
//! `t_1 ⋯ t_d` followed by elimination of the `t` block, both done in a single
//! Gröbner basis computation with a Rabinowitsch variable `u`.

use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::groebner_basis;
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring, RingRef};

/// A `d x n` integer matrix; column `i` is the degree of the variable `x_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradingMatrix {
    d: usize,
    n: usize,
    entries: Vec<i64>,
}

impl GradingMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>, n: usize) -> Result<Self> {
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::RaggedMatrix);
        }
        Ok(GradingMatrix {
            d: rows.len(),
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        GradingMatrix { d: n, n, entries }
    }

    /// The `0 x n` matrix, grading everything by the empty vector.
    pub fn empty(n: usize) -> Self {
        GradingMatrix {
            d: 0,
            n,
            entries: Vec::new(),
        }
    }

    /// The all-zero `d x n` matrix.
    pub fn zeros(d: usize, n: usize) -> Self {
        GradingMatrix {
            d,
            n,
            entries: vec![0; d * n],
        }
    }

    pub fn rows(&self) -> usize {
        self.d
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[i64] {
        &self.entries[row * self.n..(row + 1) * self.n]
    }

    pub fn column(&self, col: usize) -> Vec<i64> {
        (0..self.d).map(|r| self.entry(r, col)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub(crate) fn check_ring(&self, ring: &Ring) -> Result<()> {
        if self.n != ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: ring.nvars(),
                found: self.n,
            });
        }
        Ok(())
    }

    /// `A b` for an exponent vector `b` of length `n`.
    pub(crate) fn apply(&self, exps: &[u32]) -> Vec<i64> {
        (0..self.d)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(exps)
                    .map(|(&a, &b)| a.checked_mul(b as i64).expect("A-degree overflow"))
                    .try_fold(0i64, |acc, v| acc.checked_add(v))
                    .expect("A-degree overflow")
            })
            .collect()
    }
}

impl fmt::Display for GradingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.d)
            .map(|r| {
                let row: Vec<String> = self.row(r).iter().map(i64::to_string).collect();
                row.join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// `k[t_1..t_d, x_1..x_n]` with the t-block eliminated first and grevlex
/// inside each block.
#[derive(Debug, Clone)]
pub struct ExtendedRing {
    pub base: RingRef,
    pub t_names: Vec<String>,
    pub combined: RingRef,
}

impl ExtendedRing {
    pub fn new(base: &RingRef, d: usize) -> Self {
        let mut t_names: Vec<String> = Vec::with_capacity(d);
        for i in 0..d {
            let name = base.fresh_name(&format!("t{}", i + 1), &t_names);
            t_names.push(name);
        }
        let names: Vec<String> = t_names.iter().chain(base.names()).cloned().collect();
        let order = MonomialOrder::block(d, MonomialOrder::GrevLex, MonomialOrder::GrevLex);
        let combined = Ring::new(names, base.field(), order).expect("fresh names are valid");
        ExtendedRing {
            base: base.clone(),
            t_names,
            combined,
        }
    }

    pub fn t_count(&self) -> usize {
        self.t_names.len()
    }

    /// A polynomial of the base ring viewed in the combined ring.
    pub fn embed(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(&self.base, f.ring()) {
            return Err(Error::RingMismatch);
        }
        let d = self.t_count();
        f.map_monomials(&self.combined, |m| m.shift(d))
    }

    /// The monomial `t^c` of the combined ring.
    pub fn t_monomial(&self, c: &[u32]) -> Polynomial {
        let exps = c
            .iter()
            .copied()
            .chain(std::iter::repeat_n(0, self.base.nvars()));
        Polynomial::monomial(&self.combined, Monomial::new(exps))
    }
}

/// The generators of `I` viewed in `k[t_1..t_d, x]`.
pub fn extend_ring(ideal: &Ideal, d: usize) -> Result<(ExtendedRing, Ideal)> {
    let ext = ExtendedRing::new(ideal.ring(), d);
    let gens = ideal
        .generators()
        .iter()
        .map(|g| ext.embed(g))
        .collect::<Result<Vec<_>>>()?;
    let extended = Ideal::new(&ext.combined, gens)?;
    Ok((ext, extended))
}

/// Replaces each `x_i` by `t^{a_i} x_i` in every generator, then multiplies
/// each generator by the smallest `t^m` that makes all `t` exponents
/// nonnegative.
pub fn substitute_grading(ideal: &Ideal, grading: &GradingMatrix) -> Result<(ExtendedRing, Ideal)> {
    grading.check_ring(ideal.ring())?;
    let ext = ExtendedRing::new(ideal.ring(), grading.rows());
    let gens = ideal
        .generators()
        .iter()
        .map(|g| substitute_one(&ext, g, grading))
        .collect::<Result<Vec<_>>>()?;
    let substituted = Ideal::new(&ext.combined, gens)?;
    Ok((ext, substituted))
}

fn substitute_one(
    ext: &ExtendedRing,
    g: &Polynomial,
    grading: &GradingMatrix,
) -> Result<Polynomial> {
    let d = grading.rows();
    let degrees: Vec<Vec<i64>> = g
        .terms()
        .iter()
        .map(|t| grading.apply(t.monomial.exponents()))
        .collect();
    let clearing: Vec<i64> = (0..d)
        .map(|j| {
            let low = degrees.iter().map(|deg| deg[j]).min().unwrap_or(0);
            (-low).max(0)
        })
        .collect();
    let terms = g.terms().iter().zip(&degrees).map(|(t, deg)| {
        let t_exps = deg
            .iter()
            .zip(&clearing)
            .map(|(e, c)| u32::try_from(e + c).expect("t exponent fits in u32"));
        let exps = t_exps.chain(t.monomial.exponents().iter().copied());
        (t.coeff.clone(), Monomial::new(exps))
    });
    Polynomial::from_terms(&ext.combined, terms)
}

/// Statistics of one elimination run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EliminationStats {
    pub order: String,
    pub input_generators: usize,
    pub basis_size: usize,
    pub kept: usize,
}

/// `(I : f^∞)`, via `I + (1 - u f)` in `k[u, x]` and elimination of `u`.
pub fn saturate(ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
    saturate_with_stats(ideal, f).map(|(i, _)| i)
}

pub fn saturate_with_stats(ideal: &Ideal, f: &Polynomial) -> Result<(Ideal, EliminationStats)> {
    if !same_ring(ideal.ring(), f.ring()) {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_unit() || ideal.is_zero() {
        return Ok((ideal.clone(), EliminationStats::default()));
    }
    let ring = ideal.ring();
    let u = ring.fresh_name("u", &[]);
    let names: Vec<String> = std::iter::once(u)
        .chain(ring.names().iter().cloned())
        .collect();
    let order = MonomialOrder::block(1, MonomialOrder::GrevLex, ring.order().clone());
    let big = Ring::new(names, ring.field(), order)?;
    let lift = |p: &Polynomial| p.map_monomials(&big, |m| m.shift(1));
    let mut gens = ideal
        .generators()
        .iter()
        .map(lift)
        .collect::<Result<Vec<_>>>()?;
    gens.push(rabinowitsch(&big, &lift(f)?, 0));
    eliminate_leading_block(ring, &big, 1, &gens)
}

// 1 - u*f, where u is variable `u_index` of `ring`.
fn rabinowitsch(ring: &RingRef, f: &Polynomial, u_index: usize) -> Polynomial {
    let u = Polynomial::variable(ring, u_index).expect("u is a variable");
    Polynomial::one(ring)
        .sub(&u.mul_unchecked(f))
        .expect("same ring")
}

// Reduced GB of `gens` in `big` (first `k` variables form an eliminating
// block whose complement carries `small`'s order); keeps the block-free
// elements and reads them in `small`.
fn eliminate_leading_block(
    small: &RingRef,
    big: &RingRef,
    k: usize,
    gens: &[Polynomial],
) -> Result<(Ideal, EliminationStats)> {
    let gb = groebner_basis(gens);
    let keep: Vec<usize> = (k..big.nvars()).collect();
    let survivors = gb
        .iter()
        .filter(|g| g.avoids(|i| i < k))
        .map(|g| g.map_monomials(small, |m| m.select(&keep)))
        .collect::<Result<Vec<_>>>()?;
    let stats = EliminationStats {
        order: big.order().to_string(),
        input_generators: gens.len(),
        basis_size: gb.len(),
        kept: survivors.len(),
    };
    Ok((Ideal::from_reduced_basis(small, survivors), stats))
}

/// `I ∩ k[remaining variables]`, in the ring of the remaining variables under
/// the induced order.
pub fn eliminate(ideal: &Ideal, drop: &[usize]) -> Result<Ideal> {
    let ring = ideal.ring();
    let n = ring.nvars();
    if let Some(&index) = drop.iter().find(|&&i| i >= n) {
        return Err(Error::InvalidVariable { index, count: n });
    }
    let mut dropped: Vec<usize> = drop.to_vec();
    dropped.sort_unstable();
    dropped.dedup();
    let kept: Vec<usize> = (0..n).filter(|i| !dropped.contains(i)).collect();
    let small_names: Vec<String> = kept.iter().map(|&i| ring.names()[i].clone()).collect();
    let small = Ring::new(small_names, ring.field(), ring.order().restrict(&kept))?;
    if dropped.is_empty() {
        return ideal.with_ring(&small);
    }
    let perm: Vec<usize> = dropped.iter().chain(&kept).copied().collect();
    let big_names: Vec<String> = perm.iter().map(|&i| ring.names()[i].clone()).collect();
    let order = MonomialOrder::block(dropped.len(), MonomialOrder::GrevLex, small.order().clone());
    let big = Ring::new(big_names, ring.field(), order)?;
    let gens = ideal
        .generators()
        .iter()
        .map(|g| g.map_monomials(&big, |m| m.select(&perm)))
        .collect::<Result<Vec<_>>>()?;
    eliminate_leading_block(&small, &big, dropped.len(), &gens).map(|(i, _)| i)
}

/// Contracts an ideal of the combined ring `k[t, x]` to `k[x]` as if the `t`
/// variables were invertible: `(J : (t_1⋯t_d)^∞) ∩ k[x]`, returned as the
/// reduced basis under the base ring's order.
pub fn contract_torus(ext: &ExtendedRing, ideal: &Ideal) -> Result<(Ideal, EliminationStats)> {
    if !same_ring(&ext.combined, ideal.ring()) {
        return Err(Error::RingMismatch);
    }
    let base = &ext.base;
    let d = ext.t_count();
    if ideal.is_zero() {
        return Ok((Ideal::zero(base), EliminationStats::default()));
    }
    if d == 0 {
        return Ok((ideal.with_ring(base)?, EliminationStats::default()));
    }
    let u = base.fresh_name("u", &ext.t_names);
    let names: Vec<String> = std::iter::once(&u)
        .chain(&ext.t_names)
        .chain(base.names())
        .cloned()
        .collect();
    let order = MonomialOrder::block(d + 1, MonomialOrder::GrevLex, base.order().clone());
    let big = Ring::new(names, base.field(), order)?;
    let lift = |p: &Polynomial| p.map_monomials(&big, |m| m.shift(1));
    let mut gens = ideal
        .generators()
        .iter()
        .map(lift)
        .collect::<Result<Vec<_>>>()?;
    let t_product = Monomial::new(
        std::iter::once(0)
            .chain(std::iter::repeat_n(1, d))
            .chain(std::iter::repeat_n(0, base.nvars())),
    );
    gens.push(rabinowitsch(
        &big,
        &Polynomial::monomial(&big, t_product),
        0,
    ));
    eliminate_leading_block(base, &big, d + 1, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::tests::xy;
    use crate::problem::parse_polynomial;

    fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| parse_polynomial(r, g).unwrap())).unwrap()
    }

    fn shown(i: &Ideal) -> Vec<String> {
        i.groebner_basis().iter().map(ToString::to_string).collect()
    }

    fn gen_strings(i: &Ideal) -> Vec<String> {
        i.generators().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn substitution_examples() {
        let r = xy(MonomialOrder::GrevLex);
        let i = ideal(&r, &["x + y"]);
        let (_, s) = substitute_grading(&i, &GradingMatrix::identity(2)).unwrap();
        assert_eq!(gen_strings(&s), ["t1*x + t2*y"]);

        let a = GradingMatrix::from_rows(vec![vec![1, -1]], 2).unwrap();
        let (_, s) = substitute_grading(&i, &a).unwrap();
        assert_eq!(gen_strings(&s), ["t1^2*x + y"]);

        let a = GradingMatrix::from_rows(vec![vec![1, 2]], 2).unwrap();
        let (_, s) = substitute_grading(&ideal(&r, &["x^2 + y"]), &a).unwrap();
        assert_eq!(gen_strings(&s), ["t1^2*x^2 + t1^2*y"]);
    }

    #[test]
    fn substitution_dimension_mismatch() {
        let r = xy(MonomialOrder::GrevLex);
        assert_eq!(
            substitute_grading(&ideal(&r, &["x"]), &GradingMatrix::identity(3)).unwrap_err(),
            Error::DimensionMismatch {
                expected: 2,
                found: 3
            }
        );
    }

    #[test]
    fn t_names_are_fresh() {
        let r = Ring::new(["t1", "x"], FieldSpec::Rationals, MonomialOrder::GrevLex).unwrap();
        let ext = ExtendedRing::new(&r, 2);
        assert_eq!(ext.t_names, ["t1_", "t2"]);
        assert_eq!(ext.combined.names(), ["t1_", "t2", "t1", "x"]);
    }

    #[test]
    fn saturation_examples() {
        let r = xy(MonomialOrder::GrevLex);
        let x = parse_polynomial(&r, "x").unwrap();
        assert_eq!(shown(&saturate(&ideal(&r, &["x*y"]), &x).unwrap()), ["y"]);
        assert_eq!(shown(&saturate(&ideal(&r, &["x^2"]), &x).unwrap()), ["1"]);
        assert_eq!(
            shown(&saturate(&ideal(&r, &["x + y"]), &x).unwrap()),
            ["x + y"]
        );
        assert_eq!(
            saturate(&ideal(&r, &["x"]), &Polynomial::zero(&r)).unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn saturation_brute_force_oracle() {
        // x^k * m in (x + y) only when m is: the monomial oracle for (x+y) : x^inf.
        let r = xy(MonomialOrder::GrevLex);
        let i = ideal(&r, &["x + y"]);
        let sat = saturate(&i, &parse_polynomial(&r, "x").unwrap()).unwrap();
        for k in 0..=4u32 {
            for a in 0..=4u32 {
                for b in 0..=4 - a {
                    let m = Polynomial::monomial(&r, Monomial::new([a, b]));
                    let xk = Polynomial::monomial(&r, Monomial::new([k, 0]));
                    assert!(!i.contains(&xk.mul(&m).unwrap()).unwrap());
                    assert!(!sat.contains(&m).unwrap());
                }
            }
        }
    }

    #[test]
    fn elimination_examples() {
        let r = xy(MonomialOrder::GrevLex);
        let e = eliminate(&ideal(&r, &["y"]), &[1]).unwrap();
        assert!(e.is_zero());
        assert_eq!(e.ring().names(), ["x"]);

        let i = ideal(&r, &["x^2 + y", "x*y"]);
        let same = eliminate(&i, &[]).unwrap();
        assert_eq!(shown(&same), shown(&i));

        let e = eliminate(&ideal(&r, &["x - y", "y^2"]), &[1]).unwrap();
        assert_eq!(shown(&e), ["x^2"]);
        let small = e.ring().clone();
        for c in -3..=3 {
            let lin = parse_polynomial(&small, &format!("x + {c}")).unwrap();
            assert!(!e.contains(&lin).unwrap());
        }
        assert!(!e.contains(&parse_polynomial(&small, "x").unwrap()).unwrap());

        assert_eq!(
            eliminate(&i, &[2]).unwrap_err(),
            Error::InvalidVariable { index: 2, count: 2 }
        );
    }

    #[test]
    fn extension_examples() {
        let r = xy(MonomialOrder::GrevLex);
        let (ext, e) = extend_ring(&ideal(&r, &["x"]), 1).unwrap();
        assert_eq!(ext.combined.names(), ["t1", "x", "y"]);
        assert_eq!(gen_strings(&e), ["x"]);
        let (_, z) = extend_ring(&Ideal::zero(&r), 2).unwrap();
        assert!(z.is_zero());
        let (ext, e) = extend_ring(&ideal(&r, &["x + y"]), 2).unwrap();
        assert_eq!(ext.combined.names(), ["t1", "t2", "x", "y"]);
        assert_eq!(gen_strings(&e), ["x + y"]);
    }

    #[test]
    fn fused_contraction_matches_two_step() {
        let r = xy(MonomialOrder::GrevLex);
        for gens in [
            &["x^2 + y^2", "x*y"][..],
            &["x + y"],
            &["x^3 - y^2", "x*y - 1"],
        ] {
            let i = ideal(&r, gens);
            let (ext, s) = substitute_grading(&i, &GradingMatrix::identity(2)).unwrap();
            let (fused, _) = contract_torus(&ext, &s).unwrap();
            let t = ext.t_monomial(&[1, 1]);
            let sat = saturate(&s, &t).unwrap();
            let two_step = eliminate(&sat, &[0, 1]).unwrap();
            assert_eq!(shown(&two_step), shown(&fused));
        }
    }
}
