//! Largest A-graded subideals of polynomial ideals.
//!
//! Given an ideal `I ⊆ k[x_1..x_n]` and an integer `d x n` matrix `A`, the
//! largest ideal inside `I` generated by A-homogeneous polynomials is obtained
//! by substituting `x_i -> t^{a_i} x_i` with invertible `t`, then intersecting
//! with `k[x]`. With `A` the identity this is the ideal of all monomials in `I`.
//!
//! ```
//! use monideal::{largest_monomial_subideal, problem::ProblemFile};
//!
//! let p = ProblemFile::parse("vars x y\npoly x^2 + y^2\npoly x*y").unwrap();
//! let m = largest_monomial_subideal(&p.ideal());
//! let gens: Vec<String> = m.groebner_basis().iter().map(|g| g.to_string()).collect();
//! assert_eq!(gens, ["x*y", "y^3", "x^3"]);
//! ```

pub mod agraded;
pub mod error;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod ideal_ops;
mod modular;
pub mod monomial;
pub mod oracle;
pub mod order;
pub mod poly;
pub mod problem;
pub mod ring;
pub mod sample;

pub use agraded::{
    a_degree, contains_monomial, is_a_graded, largest_agraded_subideal,
    largest_agraded_subideal_with_report, largest_monomial_subideal, monomials_up_to, ADegree,
    ComputationReport,
};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use ideal::Ideal;
pub use ideal_ops::GradingMatrix;
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use poly::Polynomial;
pub use ring::{Ring, RingRef};
