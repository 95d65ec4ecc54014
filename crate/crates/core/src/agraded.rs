//! Largest A-graded subideals, largest monomial subideals and the monomial
//! existence test.

use std::fmt;
use std::time::Duration;

use crate::error::Result;
use crate::ideal::Ideal;
use crate::ideal_ops::{contract_torus, saturate, substitute_grading, GradingMatrix};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;

/// The degree `A b` of a monomial `x^b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ADegree(pub Vec<i64>);

impl ADegree {
    pub fn add(&self, other: &ADegree) -> ADegree {
        ADegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for ADegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn a_degree(b: &Monomial, grading: &GradingMatrix) -> Result<ADegree> {
    if b.len() != grading.cols() {
        return Err(crate::Error::DimensionMismatch {
            expected: b.len(),
            found: grading.cols(),
        });
    }
    Ok(ADegree(grading.apply(b.exponents())))
}

/// All terms of `f` share one A-degree. Zero is homogeneous.
pub fn is_homogeneous(f: &Polynomial, grading: &GradingMatrix) -> Result<bool> {
    grading.check_ring(f.ring())?;
    let mut degrees = f
        .terms()
        .iter()
        .map(|t| grading.apply(t.monomial.exponents()));
    let Some(first) = degrees.next() else {
        return Ok(true);
    };
    Ok(degrees.all(|d| d == first))
}

/// Whether `I` is generated by A-homogeneous polynomials. Decided on the
/// reduced Gröbner basis, whose elements are homogeneous exactly when the
/// ideal is graded.
pub fn is_a_graded(ideal: &Ideal, grading: &GradingMatrix) -> Result<bool> {
    grading.check_ring(ideal.ring())?;
    for g in ideal.groebner_basis() {
        if !is_homogeneous(g, grading)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShortCircuit {
    ZeroIdeal,
    EmptyGrading,
    AlreadyGraded,
}

impl fmt::Display for ShortCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShortCircuit::ZeroIdeal => "zero-ideal",
            ShortCircuit::EmptyGrading => "empty-grading",
            ShortCircuit::AlreadyGraded => "already-graded",
        })
    }
}

/// Provenance of one pipeline run. Informational only.
#[derive(Debug, Clone, Default)]
pub struct ComputationReport {
    pub variables: usize,
    pub grading_rows: usize,
    pub input_generators: usize,
    pub input_basis_size: Option<usize>,
    pub ring_order: String,
    pub elimination_order: Option<String>,
    pub substituted_generators: Option<usize>,
    pub elimination_basis_size: Option<usize>,
    pub output_basis_size: usize,
    pub short_circuit: Option<ShortCircuit>,
    /// Wall-clock time per stage; `None` where no clock is available.
    pub stages: Vec<(&'static str, Option<Duration>)>,
}

impl fmt::Display for ComputationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn opt<T: fmt::Display>(v: &Option<T>) -> String {
            v.as_ref()
                .map_or_else(|| "-".to_string(), ToString::to_string)
        }
        writeln!(f, "variables: {}", self.variables)?;
        writeln!(f, "grading_rows: {}", self.grading_rows)?;
        writeln!(f, "input_generators: {}", self.input_generators)?;
        writeln!(f, "input_basis_size: {}", opt(&self.input_basis_size))?;
        writeln!(f, "ring_order: {}", self.ring_order)?;
        writeln!(f, "elimination_order: {}", opt(&self.elimination_order))?;
        writeln!(
            f,
            "substituted_generators: {}",
            opt(&self.substituted_generators)
        )?;
        writeln!(
            f,
            "elimination_basis_size: {}",
            opt(&self.elimination_basis_size)
        )?;
        writeln!(f, "output_basis_size: {}", self.output_basis_size)?;
        writeln!(f, "short_circuit: {}", opt(&self.short_circuit))?;
        for (stage, t) in &self.stages {
            match t {
                Some(t) => writeln!(f, "stage.{stage}: {:.3} ms", t.as_secs_f64() * 1e3)?,
                None => writeln!(f, "stage.{stage}: -")?,
            }
        }
        Ok(())
    }
}

// std::time::Instant panics on wasm32-unknown-unknown.
struct Stopwatch {
    #[cfg(not(target_arch = "wasm32"))]
    start: std::time::Instant,
}

impl Stopwatch {
    fn start() -> Self {
        Stopwatch {
            #[cfg(not(target_arch = "wasm32"))]
            start: std::time::Instant::now(),
        }
    }

    fn lap(&mut self) -> Option<Duration> {
        #[cfg(not(target_arch = "wasm32"))]
        {
            let now = std::time::Instant::now();
            let d = now - self.start;
            self.start = now;
            Some(d)
        }
        #[cfg(target_arch = "wasm32")]
        None
    }
}

/// The largest A-graded ideal contained in `I`, presented by its reduced
/// Gröbner basis under the ring's order.
pub fn largest_agraded_subideal(ideal: &Ideal, grading: &GradingMatrix) -> Result<Ideal> {
    largest_agraded_subideal_with_report(ideal, grading).map(|(i, _)| i)
}

pub fn largest_agraded_subideal_with_report(
    ideal: &Ideal,
    grading: &GradingMatrix,
) -> Result<(Ideal, ComputationReport)> {
    grading.check_ring(ideal.ring())?;
    let ring = ideal.ring();
    let mut report = ComputationReport {
        variables: ring.nvars(),
        grading_rows: grading.rows(),
        input_generators: ideal.generators().len(),
        ring_order: ring.order().to_string(),
        ..Default::default()
    };
    let mut clock = Stopwatch::start();

    let forced = if ideal.is_zero() {
        Some(ShortCircuit::ZeroIdeal)
    } else if grading.rows() == 0 {
        Some(ShortCircuit::EmptyGrading)
    } else {
        let graded = is_a_graded(ideal, grading)?;
        report.input_basis_size = Some(ideal.groebner_basis().len());
        report.stages.push(("input_basis", clock.lap()));
        graded.then_some(ShortCircuit::AlreadyGraded)
    };
    if let Some(reason) = forced {
        let out = Ideal::from_reduced_basis(ring, ideal.groebner_basis().to_vec());
        report.output_basis_size = out.generators().len();
        report.short_circuit = Some(reason);
        report.stages.push(("short_circuit", clock.lap()));
        return Ok((out, report));
    }

    let (ext, substituted) = substitute_grading(ideal, grading)?;
    report.substituted_generators = Some(substituted.generators().len());
    report.stages.push(("substitute", clock.lap()));

    let (out, stats) = contract_torus(&ext, &substituted)?;
    report.elimination_order = Some(stats.order);
    report.elimination_basis_size = Some(stats.basis_size);
    report.output_basis_size = out.generators().len();
    report.stages.push(("saturate_eliminate", clock.lap()));
    Ok((out, report))
}

/// The ideal generated by all monomials in `I`.
pub fn largest_monomial_subideal(ideal: &Ideal) -> Ideal {
    let n = ideal.ring().nvars();
    largest_agraded_subideal(ideal, &GradingMatrix::identity(n))
        .expect("identity grading fits the ring")
}

/// `I` contains a monomial iff `(I : (x_1 ⋯ x_n)^∞)` is the unit ideal.
pub fn contains_monomial(ideal: &Ideal) -> bool {
    let ring = ideal.ring();
    let product = Polynomial::monomial(ring, Monomial::new(std::iter::repeat_n(1, ring.nvars())));
    saturate(ideal, &product)
        .expect("same ring, nonzero")
        .is_unit()
}

/// Every monomial of total degree at most `degree`, descending in grevlex.
pub fn monomials_of_degree_at_most(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fn rec(pos: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos == current.len() {
            out.push(Monomial::new(current.iter().copied()));
            return;
        }
        for e in 0..=left {
            current[pos] = e;
            rec(pos + 1, left - e, current, out);
        }
        current[pos] = 0;
    }
    rec(0, degree, &mut current, &mut out);
    let order = MonomialOrder::GrevLex;
    out.sort_by(|a, b| order.cmp(b, a));
    out
}

/// The monomials of `I` with total degree at most `degree`, ascending in
/// grevlex.
pub fn monomials_up_to(ideal: &Ideal, degree: u32) -> Vec<Monomial> {
    let monomial_ideal = largest_monomial_subideal(ideal);
    let generators: Vec<&Monomial> = monomial_ideal
        .groebner_basis()
        .iter()
        .map(|g| g.leading_term().expect("nonzero").1)
        .collect();
    let mut out: Vec<Monomial> = monomials_of_degree_at_most(ideal.ring().nvars(), degree)
        .into_iter()
        .filter(|m| generators.iter().any(|g| g.divides(m)))
        .collect();
    out.reverse();
    out
}
