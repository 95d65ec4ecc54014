//! The `monideal` command line.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a witness, 2 on parse or
//! usage errors. Results go to the output stream, everything else to the
//! error stream.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use monideal::agraded::ComputationReport;
use monideal::ideal_ops::saturate_with_stats;
use monideal::oracle::{default_degree, verify_maximality, OracleError, Verdict};
use monideal::problem::{parse_problem, ProblemFile};
use monideal::{
    largest_agraded_subideal_with_report, GradingMatrix, Ideal, Monomial, MonomialOrder, Polynomial,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "monideal",
    version,
    about = "Largest A-graded and monomial subideals of polynomial ideals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Largest A-graded subideal for the file's grading (or --identity / --zero).
    Agraded {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        grading: GradingChoice,
    },
    /// Largest monomial subideal.
    Monomials {
        #[command(flatten)]
        common: Common,
    },
    /// Whether the ideal contains any monomial.
    HasMonomial {
        #[command(flatten)]
        common: Common,
    },
    /// Cross-check a result against the bounded-degree oracle.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        grading: GradingChoice,
        /// Truncation degree (default 8 for n ≤ 3, 6 for n = 4, 4 beyond).
        #[arg(long)]
        degree: Option<u32>,
        /// Problem file whose polynomials form the candidate; defaults to the
        /// computed largest A-graded subideal.
        #[arg(long)]
        candidate: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Problem file; standard input when absent or `-`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OrderArg::Grevlex)]
    pub order: OrderArg,
    /// Output file, or `-` for standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Print the computation report on the error stream.
    #[arg(long)]
    pub report: bool,
}

#[derive(Debug, Args)]
pub struct GradingChoice {
    /// Use the n x n identity matrix (monomial subideal).
    #[arg(long, conflicts_with = "zero")]
    pub identity: bool,
    /// Use the 0 x n matrix (every ideal is graded).
    #[arg(long)]
    pub zero: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Lex,
    Grevlex,
}

impl From<OrderArg> for MonomialOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Lex => MonomialOrder::Lex,
            OrderArg::Grevlex => MonomialOrder::GrevLex,
        }
    }
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read_source(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<(String, String), Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            let text =
                fs::read_to_string(p).map_err(|e| Failure(format!("{}: {e}", p.display())))?;
            Ok((p.display().to_string(), text))
        }
        _ => {
            let mut text = String::new();
            stdin.read_to_string(&mut text)?;
            Ok(("<stdin>".into(), text))
        }
    }
}

fn load(name: &str, text: &str, order: MonomialOrder) -> Result<ProblemFile, Failure> {
    parse_problem(text, order).map_err(|e| Failure(format!("{name}: {e}")))
}

fn pick_grading(
    choice: &GradingChoice,
    problem: &ProblemFile,
    fallback: Option<GradingMatrix>,
) -> Result<GradingMatrix, Failure> {
    let n = problem.ring.nvars();
    if choice.identity {
        Ok(GradingMatrix::identity(n))
    } else if choice.zero {
        Ok(GradingMatrix::empty(n))
    } else if let Some(a) = &problem.grading {
        Ok(a.clone())
    } else {
        fallback.ok_or_else(|| {
            Failure("no grading given: add a `grading` block or pass --identity or --zero".into())
        })
    }
}

fn basis_lines(ideal: &Ideal) -> String {
    let basis = ideal.groebner_basis();
    if basis.is_empty() {
        return "0\n".into();
    }
    basis.iter().map(|g| format!("{g}\n")).collect()
}

fn emit(common: &Common, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match &common.output {
        Some(p) if p.as_os_str() != "-" => {
            fs::write(p, text).map_err(|e| Failure(format!("{}: {e}", p.display())))?;
        }
        _ => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn report(common: &Common, r: &ComputationReport, stderr: &mut dyn Write) -> Result<(), Failure> {
    if common.report {
        write!(stderr, "{r}")?;
    }
    Ok(())
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, stdin, stdout, stderr) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn execute(
    command: Command,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    match command {
        Command::Agraded { common, grading } => {
            let (name, text) = read_source(common.input.as_ref(), stdin)?;
            let problem = load(&name, &text, common.order.into())?;
            let a = pick_grading(&grading, &problem, None)?;
            let (out, r) = largest_agraded_subideal_with_report(&problem.ideal(), &a)?;
            report(&common, &r, stderr)?;
            emit(&common, &basis_lines(&out), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Monomials { common } => {
            let (name, text) = read_source(common.input.as_ref(), stdin)?;
            let problem = load(&name, &text, common.order.into())?;
            let a = GradingMatrix::identity(problem.ring.nvars());
            let (out, r) = largest_agraded_subideal_with_report(&problem.ideal(), &a)?;
            report(&common, &r, stderr)?;
            emit(&common, &basis_lines(&out), stdout)?;
            Ok(EXIT_OK)
        }
        Command::HasMonomial { common } => {
            let (name, text) = read_source(common.input.as_ref(), stdin)?;
            let problem = load(&name, &text, common.order.into())?;
            let ideal = problem.ideal();
            let ring = &problem.ring;
            let product =
                Polynomial::monomial(ring, Monomial::new(std::iter::repeat_n(1, ring.nvars())));
            let (sat, stats) = saturate_with_stats(&ideal, &product)?;
            if common.report {
                writeln!(stderr, "variables: {}", ring.nvars())?;
                writeln!(stderr, "input_generators: {}", ideal.generators().len())?;
                writeln!(stderr, "saturation_order: {}", stats.order)?;
                writeln!(stderr, "saturation_basis_size: {}", stats.basis_size)?;
            }
            emit(&common, &format!("{}\n", sat.is_unit()), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            common,
            grading,
            degree,
            candidate,
        } => {
            let (name, text) = read_source(common.input.as_ref(), stdin)?;
            let order: MonomialOrder = common.order.into();
            let problem = load(&name, &text, order.clone())?;
            let n = problem.ring.nvars();
            let a = pick_grading(&grading, &problem, Some(GradingMatrix::identity(n)))?;
            let ideal = problem.ideal();
            let candidate = match candidate {
                Some(path) => {
                    let (cname, ctext) = read_source(Some(&path), stdin)?;
                    let c = load(&cname, &ctext, order)?;
                    if c.ring != problem.ring {
                        return Err(Failure(format!(
                            "{cname}: candidate must declare the same vars and field"
                        )));
                    }
                    c.ideal()
                }
                None => {
                    let (out, r) = largest_agraded_subideal_with_report(&ideal, &a)?;
                    report(&common, &r, stderr)?;
                    out
                }
            };
            let d = degree.unwrap_or_else(|| default_degree(n));
            let verdict = match verify_maximality(&ideal, &a, &candidate, d) {
                Ok(v) => v,
                Err(OracleError::CandidateNotContained(g)) => {
                    return Err(Failure(format!(
                        "precondition violated: candidate generator {g} is not in the ideal"
                    )))
                }
                Err(e) => return Err(e.into()),
            };
            emit(&common, &format!("{verdict}\n"), stdout)?;
            Ok(match verdict {
                Verdict::Pass => EXIT_OK,
                Verdict::Fail(_) => EXIT_VERIFY_FAIL,
            })
        }
    }
}
