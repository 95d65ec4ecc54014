//! The line-oriented problem format.
//!
//! ```text
//! # comment
//! vars x y z
//! field QQ            # or: field Fp 32003
//! poly x^2 + y^2 - 1
//! poly x*y
//! grading 1 3         # d rows of n integers follow
//! 1 1 1
//! ```
//!
//! Expressions use integers, declared variables, `+ - * ^` and parentheses.
//! Multiplication must be written with `*`, and `^` takes a nonnegative
//! integer literal. A coefficient may also be written as a fraction `a/b` of
//! integer literals, which is how rational coefficients are printed.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::field::FieldSpec;
use crate::ideal::Ideal;
use crate::ideal_ops::GradingMatrix;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{is_identifier, Ring, RingRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("malformed exponent: {0}")]
    MalformedExponent(String),
    #[error("modulus {0} is not a prime below 2^31")]
    NonPrimeModulus(String),
    #[error("grading matrix shape mismatch: {0}")]
    MatrixShape(String),
    #[error("unknown directive `{0}`")]
    UnknownDirective(String),
    #[error("`{0}` declared more than once")]
    Duplicate(String),
    #[error("invalid variable name `{0}`")]
    InvalidName(String),
    #[error("`poly` requires a preceding `vars` declaration")]
    MissingVars,
    #[error("unknown field `{0}`, expected `QQ` or `Fp <prime>`")]
    UnknownField(String),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: String, found: String },
    #[error("division by zero in coefficient")]
    DivisionByZero,
}

/// A parse failure at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// A parsed problem: the ring, the ideal's generators and an optional grading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemFile {
    pub ring: RingRef,
    pub polys: Vec<Polynomial>,
    pub grading: Option<GradingMatrix>,
}

impl ProblemFile {
    /// Parses under the default grevlex order.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse_problem(text, MonomialOrder::GrevLex)
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.polys.iter().cloned()).expect("polys share the ring")
    }
}

impl fmt::Display for ProblemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars {}", self.ring.names().join(" "))?;
        writeln!(f, "field {}", self.ring.field())?;
        for p in &self.polys {
            writeln!(f, "poly {p}")?;
        }
        if let Some(a) = &self.grading {
            writeln!(f, "grading {} {}", a.rows(), a.cols())?;
            for r in 0..a.rows() {
                let row: Vec<String> = a.row(r).iter().map(i64::to_string).collect();
                writeln!(f, "{}", row.join(" "))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
struct Word<'a> {
    text: &'a str,
    column: usize,
}

// Whitespace-separated words of a line with their 1-based columns.
fn words(line: &str) -> Vec<Word<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Word {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Word {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(code, _)| code)
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

struct PolyLine<'a> {
    line: usize,
    column: usize,
    expr: &'a str,
}

/// Parses a problem file; the ring gets the given term order.
pub fn parse_problem(text: &str, order: MonomialOrder) -> Result<ProblemFile, ParseError> {
    let mut vars: Option<(usize, Vec<Word<'_>>)> = None;
    let mut field: Option<FieldSpec> = None;
    let mut grading: Option<(usize, Word<'_>, Vec<Vec<i64>>, usize)> = None;
    let mut polys: Vec<PolyLine<'_>> = Vec::new();

    let lines: Vec<&str> = text.lines().map(strip_comment).collect();
    let mut idx = 0;
    while idx < lines.len() {
        let lineno = idx + 1;
        let raw = lines[idx];
        idx += 1;
        let ws = words(raw);
        let Some(head) = ws.first() else { continue };
        match head.text {
            "vars" => {
                if vars.is_some() {
                    return Err(err(
                        lineno,
                        head.column,
                        ParseErrorKind::Duplicate("vars".into()),
                    ));
                }
                for (i, w) in ws[1..].iter().enumerate() {
                    if !is_identifier(w.text) {
                        return Err(err(
                            lineno,
                            w.column,
                            ParseErrorKind::InvalidName(w.text.into()),
                        ));
                    }
                    if ws[1..1 + i].iter().any(|v| v.text == w.text) {
                        return Err(err(
                            lineno,
                            w.column,
                            ParseErrorKind::Duplicate(w.text.into()),
                        ));
                    }
                }
                vars = Some((lineno, ws[1..].to_vec()));
            }
            "field" => {
                if field.is_some() {
                    return Err(err(
                        lineno,
                        head.column,
                        ParseErrorKind::Duplicate("field".into()),
                    ));
                }
                field = Some(parse_field(lineno, head, &ws[1..])?);
            }
            "poly" => {
                let offset = raw.find("poly").expect("head") + 4;
                polys.push(PolyLine {
                    line: lineno,
                    column: raw[..offset].chars().count() + 1,
                    expr: &raw[offset..],
                });
            }
            "grading" => {
                if grading.is_some() {
                    return Err(err(
                        lineno,
                        head.column,
                        ParseErrorKind::Duplicate("grading".into()),
                    ));
                }
                let (d, n) = match &ws[1..] {
                    [d, n] => (parse_usize(lineno, d)?, (parse_usize(lineno, n)?, *n)),
                    _ => {
                        let col = ws
                            .get(1)
                            .map_or(head.column + head.text.len(), |w| w.column);
                        return Err(err(
                            lineno,
                            col,
                            ParseErrorKind::MatrixShape("expected `grading <rows> <cols>`".into()),
                        ));
                    }
                };
                let mut rows = Vec::with_capacity(d);
                while rows.len() < d {
                    if idx >= lines.len() {
                        return Err(err(
                            lineno,
                            head.column,
                            ParseErrorKind::MatrixShape(format!(
                                "expected {d} rows, found {}",
                                rows.len()
                            )),
                        ));
                    }
                    let row_no = idx + 1;
                    let row_words = words(lines[idx]);
                    idx += 1;
                    if row_words.is_empty() {
                        continue;
                    }
                    if row_words.len() != n.0 {
                        return Err(err(
                            row_no,
                            row_words[0].column,
                            ParseErrorKind::MatrixShape(format!(
                                "expected {} entries, found {}",
                                n.0,
                                row_words.len()
                            )),
                        ));
                    }
                    let row = row_words
                        .iter()
                        .map(|w| {
                            w.text.parse::<i64>().map_err(|_| {
                                err(
                                    row_no,
                                    w.column,
                                    ParseErrorKind::Unexpected {
                                        expected: "an integer matrix entry".into(),
                                        found: format!("`{}`", w.text),
                                    },
                                )
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    rows.push(row);
                }
                grading = Some((lineno, n.1, rows, n.0));
            }
            other => {
                return Err(err(
                    lineno,
                    head.column,
                    ParseErrorKind::UnknownDirective(other.into()),
                ));
            }
        }
    }

    let field = field.unwrap_or(FieldSpec::Rationals);
    let Some((vars_line, var_words)) = vars else {
        if let Some(p) = polys.first() {
            return Err(err(p.line, 1, ParseErrorKind::MissingVars));
        }
        return Err(err(1, 1, ParseErrorKind::MissingVars));
    };
    let names: Vec<&str> = var_words.iter().map(|w| w.text).collect();
    let ring = Ring::new(names, field, order.clone()).map_err(|e| {
        // Names are validated above; only the order can still be rejected.
        err(
            vars_line,
            1,
            ParseErrorKind::Unexpected {
                expected: format!("an order fitting the ring ({e})"),
                found: order.to_string(),
            },
        )
    })?;

    let grading = match grading {
        None => None,
        Some((line, n_word, rows, n)) => {
            if n != ring.nvars() {
                return Err(err(
                    line,
                    n_word.column,
                    ParseErrorKind::MatrixShape(format!(
                        "{n} columns but {} variables declared",
                        ring.nvars()
                    )),
                ));
            }
            Some(GradingMatrix::from_rows(rows, n).expect("rows checked"))
        }
    };

    let polys = polys
        .iter()
        .map(|p| ExprParser::new(&ring, p.expr, p.line, p.column).parse_all())
        .collect::<Result<Vec<_>, _>>()?;

    Ok(ProblemFile {
        ring,
        polys,
        grading,
    })
}

fn parse_usize(line: usize, w: &Word<'_>) -> Result<usize, ParseError> {
    w.text.parse().map_err(|_| {
        err(
            line,
            w.column,
            ParseErrorKind::MatrixShape(format!("`{}` is not a dimension", w.text)),
        )
    })
}

fn parse_field(line: usize, head: &Word<'_>, rest: &[Word<'_>]) -> Result<FieldSpec, ParseError> {
    match rest {
        [w] if w.text == "QQ" => Ok(FieldSpec::Rationals),
        [w, p] if w.text == "Fp" => p
            .text
            .parse::<u64>()
            .ok()
            .and_then(|v| FieldSpec::prime(v).ok())
            .ok_or_else(|| {
                err(
                    line,
                    p.column,
                    ParseErrorKind::NonPrimeModulus(p.text.into()),
                )
            }),
        [w] if w.text == "Fp" => Err(err(
            line,
            w.column + 2,
            ParseErrorKind::Unexpected {
                expected: "a prime modulus".into(),
                found: "end of line".into(),
            },
        )),
        [w, ..] => Err(err(
            line,
            w.column,
            ParseErrorKind::UnknownField(w.text.into()),
        )),
        [] => Err(err(
            line,
            head.column,
            ParseErrorKind::UnknownField(String::new()),
        )),
    }
}

/// Parses a single polynomial expression in `ring`.
pub fn parse_polynomial(ring: &RingRef, expr: &str) -> Result<Polynomial, ParseError> {
    ExprParser::new(ring, expr, 1, 1).parse_all()
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Other(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("`{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Slash => "`/`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Other(c) => format!("`{c}`"),
            Tok::End => "end of line".into(),
        }
    }
}

fn lex(expr: &str, column: usize) -> Vec<(Tok, usize)> {
    let chars: Vec<char> = expr.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = column + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), col));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => Tok::Other(other),
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Tok::End, column + chars.len()));
    out
}

struct ExprParser<'r> {
    ring: &'r RingRef,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'r> ExprParser<'r> {
    fn new(ring: &'r RingRef, expr: &str, line: usize, column: usize) -> Self {
        ExprParser {
            ring,
            toks: lex(expr, column),
            pos: 0,
            line,
        }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        err(
            self.line,
            self.column(),
            ParseErrorKind::Unexpected {
                expected: expected.into(),
                found: self.peek().describe(),
            },
        )
    }

    fn parse_all(mut self) -> PResult<Polynomial> {
        let p = self.expr()?;
        match self.peek() {
            Tok::End => Ok(p),
            Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                Err(self.unexpected("an operator (`*` is required for products)"))
            }
            _ => Err(self.unexpected("an operator or end of line")),
        }
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> PResult<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?).expect("one ring");
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?).expect("one ring");
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> PResult<Polynomial> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = acc.mul(&self.factor()?).expect("one ring");
        }
        Ok(acc)
    }

    // factor := ('-' | '+') factor | atom ('^' integer)?
    fn factor(&mut self) -> PResult<Polynomial> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                return Ok(self.factor()?.neg());
            }
            Tok::Plus => {
                self.bump();
                return self.factor();
            }
            _ => {}
        }
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let col = self.column();
        let (tok, _) = self.bump();
        let exp = match tok {
            Tok::Int(n) => u32::try_from(&n).map_err(|_| {
                err(
                    self.line,
                    col,
                    ParseErrorKind::MalformedExponent(format!("{n} is too large")),
                )
            })?,
            other => {
                return Err(err(
                    self.line,
                    col,
                    ParseErrorKind::MalformedExponent(format!(
                        "expected a nonnegative integer literal, found {}",
                        other.describe()
                    )),
                ))
            }
        };
        if matches!(self.peek(), Tok::Other('.') | Tok::Slash | Tok::Caret) {
            return Err(err(
                self.line,
                self.column(),
                ParseErrorKind::MalformedExponent(format!(
                    "unexpected {} after exponent",
                    self.peek().describe()
                )),
            ));
        }
        Ok(base.pow(exp))
    }

    // atom := integer ('/' integer)? | variable | '(' expr ')'
    fn atom(&mut self) -> PResult<Polynomial> {
        let col = self.column();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let field = self.ring.field();
                let c = if *self.peek() == Tok::Slash {
                    self.bump();
                    let den_col = self.column();
                    let Tok::Int(d) = self.bump().0 else {
                        self.pos -= 1;
                        return Err(self.unexpected("an integer denominator"));
                    };
                    field
                        .from_ratio(&n, &d)
                        .map_err(|_| err(self.line, den_col, ParseErrorKind::DivisionByZero))?
                } else {
                    field.from_bigint(&n)
                };
                Ok(Polynomial::constant(self.ring, c))
            }
            Tok::Ident(name) => {
                self.bump();
                let index = self.ring.index_of(&name).ok_or_else(|| {
                    err(
                        self.line,
                        col,
                        ParseErrorKind::UnknownVariable(name.clone()),
                    )
                })?;
                Ok(Polynomial::variable(self.ring, index).expect("declared"))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, variable or `(`")),
        }
    }
}
