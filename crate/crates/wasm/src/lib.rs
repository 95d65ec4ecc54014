//! Browser bindings for the demo page in `www/`.
//!
//! Every exported function takes the text of a problem file and returns a
//! JSON string: either the result object or `{"error": "..."}`. The
//! `*_value` functions are the same operations without the JSON layer.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use monideal::problem::ProblemFile;
use monideal::{
    contains_monomial, largest_agraded_subideal_with_report, monomials_up_to, GradingMatrix, Ideal,
};

/// Which grading to use for [`largest_agraded`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradingMode {
    File,
    Identity,
    Zero,
}

impl GradingMode {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s {
            "file" => Ok(GradingMode::File),
            "identity" => Ok(GradingMode::Identity),
            "zero" => Ok(GradingMode::Zero),
            other => Err(format!("unknown grading mode `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubidealResult {
    pub variables: Vec<String>,
    pub grading: Vec<Vec<i64>>,
    pub basis: Vec<String>,
    pub report: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Staircase {
    pub variables: Vec<String>,
    pub degree: u32,
    /// Minimal monomial generators of the monomial subideal, as exponent vectors.
    pub generators: Vec<Vec<u32>>,
    /// Every monomial of `I` up to `degree`, ascending in grevlex.
    pub monomials: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialCheck {
    pub contains_monomial: bool,
}

fn load(text: &str) -> Result<ProblemFile, String> {
    ProblemFile::parse(text).map_err(|e| e.to_string())
}

fn rows(a: &GradingMatrix) -> Vec<Vec<i64>> {
    (0..a.rows()).map(|r| a.row(r).to_vec()).collect()
}

pub fn largest_agraded_value(problem: &str, mode: &str) -> Result<SubidealResult, String> {
    let file = load(problem)?;
    let n = file.ring.nvars();
    let grading = match GradingMode::parse(mode)? {
        GradingMode::Identity => GradingMatrix::identity(n),
        GradingMode::Zero => GradingMatrix::empty(n),
        GradingMode::File => file
            .grading
            .clone()
            .ok_or("the problem has no `grading` block")?,
    };
    let (out, report) =
        largest_agraded_subideal_with_report(&file.ideal(), &grading).map_err(|e| e.to_string())?;
    Ok(SubidealResult {
        variables: file.ring.names().to_vec(),
        grading: rows(&grading),
        basis: out
            .groebner_basis()
            .iter()
            .map(ToString::to_string)
            .collect(),
        report: report.to_string(),
    })
}

pub fn staircase_value(problem: &str, degree: u32) -> Result<Staircase, String> {
    if degree > 40 {
        return Err("degree must be at most 40".into());
    }
    let file = load(problem)?;
    let ideal: Ideal = file.ideal();
    let generators = monideal::largest_monomial_subideal(&ideal)
        .groebner_basis()
        .iter()
        .map(|g| g.terms()[0].monomial.exponents().to_vec())
        .collect();
    let monomials = monomials_up_to(&ideal, degree)
        .iter()
        .map(|m| m.exponents().to_vec())
        .collect();
    Ok(Staircase {
        variables: file.ring.names().to_vec(),
        degree,
        generators,
        monomials,
    })
}

pub fn has_monomial_value(problem: &str) -> Result<MonomialCheck, String> {
    let file = load(problem)?;
    Ok(MonomialCheck {
        contains_monomial: contains_monomial(&file.ideal()),
    })
}

fn to_json<T: Serialize>(result: Result<T, String>) -> String {
    let text = match result {
        Ok(v) => serde_json::to_string(&v),
        Err(e) => serde_json::to_string(&serde_json::json!({ "error": e })),
    };
    text.unwrap_or_else(|e| serde_json::json!({ "error": e.to_string() }).to_string())
}

/// Largest A-graded subideal. `mode` is `file`, `identity` or `zero`.
#[wasm_bindgen]
pub fn largest_agraded(problem: &str, mode: &str) -> String {
    to_json(largest_agraded_value(problem, mode))
}

/// Monomials of the ideal up to `degree`, for plotting.
#[wasm_bindgen]
pub fn staircase(problem: &str, degree: u32) -> String {
    to_json(staircase_value(problem, degree))
}

#[wasm_bindgen]
pub fn has_monomial(problem: &str) -> String {
    to_json(has_monomial_value(problem))
}
