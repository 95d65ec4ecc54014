use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::{check_len, Monomial};

/// A monomial order on exponent vectors of a fixed length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Lexicographic with `x_1 > x_2 > ... > x_n`.
    Lex,
    /// Graded reverse lexicographic with `x_1 > ... > x_n`.
    #[default]
    GrevLex,
    /// Nonnegative weight vector, ties broken by grevlex.
    Weighted(Vec<u32>),
    /// The first `split` coordinates compared under `first`, ties broken on
    /// the remaining coordinates under `second`. Eliminates the first block.
    Block {
        split: usize,
        first: Box<MonomialOrder>,
        second: Box<MonomialOrder>,
    },
}

impl MonomialOrder {
    pub fn weighted(weights: &[i64]) -> Result<Self> {
        weights
            .iter()
            .map(|&w| u32::try_from(w).map_err(|_| Error::NegativeWeight))
            .collect::<Result<Vec<_>>>()
            .map(MonomialOrder::Weighted)
    }

    pub fn block(split: usize, first: MonomialOrder, second: MonomialOrder) -> Self {
        MonomialOrder::Block {
            split,
            first: Box::new(first),
            second: Box::new(second),
        }
    }

    /// Whether the order is well defined on vectors of length `n`.
    pub fn fits(&self, n: usize) -> bool {
        match self {
            MonomialOrder::Lex | MonomialOrder::GrevLex => true,
            MonomialOrder::Weighted(w) => w.len() == n,
            MonomialOrder::Block {
                split,
                first,
                second,
            } => *split <= n && first.fits(*split) && second.fits(n - split),
        }
    }

    /// True when the order refines total degree on `n` variables.
    pub fn is_degree_compatible(&self, n: usize) -> bool {
        match self {
            MonomialOrder::GrevLex => true,
            MonomialOrder::Lex => n <= 1,
            MonomialOrder::Weighted(w) => w
                .first()
                .is_none_or(|&c| c > 0 && w.iter().all(|&x| x == c)),
            MonomialOrder::Block {
                split,
                first,
                second,
            } => {
                (*split == 0 && second.is_degree_compatible(n))
                    || (*split == n && first.is_degree_compatible(n))
            }
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        check_len(a, b)?;
        Ok(self.cmp(a, b))
    }

    /// Unchecked comparison; lengths must agree.
    pub(crate) fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| revlex_tail(a.exponents(), b.exponents())),
            _ => self.cmp_slices(a.exponents(), b.exponents()),
        }
    }

    fn cmp_slices(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => sum(a).cmp(&sum(b)).then_with(|| revlex_tail(a, b)),
            MonomialOrder::Weighted(w) => weight(w, a)
                .cmp(&weight(w, b))
                .then_with(|| sum(a).cmp(&sum(b)))
                .then_with(|| revlex_tail(a, b)),
            MonomialOrder::Block {
                split,
                first,
                second,
            } => {
                let (a1, a2) = a.split_at(*split);
                let (b1, b2) = b.split_at(*split);
                first
                    .cmp_slices(a1, b1)
                    .then_with(|| second.cmp_slices(a2, b2))
            }
        }
    }

    /// The induced order on the variables at positions `keep` (ascending).
    pub fn restrict(&self, keep: &[usize]) -> MonomialOrder {
        match self {
            MonomialOrder::Lex => MonomialOrder::Lex,
            MonomialOrder::GrevLex => MonomialOrder::GrevLex,
            MonomialOrder::Weighted(w) => {
                MonomialOrder::Weighted(keep.iter().map(|&i| w[i]).collect())
            }
            MonomialOrder::Block {
                split,
                first,
                second,
            } => {
                let left: Vec<usize> = keep.iter().copied().filter(|&i| i < *split).collect();
                let right: Vec<usize> = keep
                    .iter()
                    .filter(|&&i| i >= *split)
                    .map(|&i| i - split)
                    .collect();
                if left.is_empty() {
                    second.restrict(&right)
                } else if right.is_empty() {
                    first.restrict(&left)
                } else {
                    MonomialOrder::block(left.len(), first.restrict(&left), second.restrict(&right))
                }
            }
        }
    }
}

fn sum(a: &[u32]) -> u64 {
    a.iter().map(|&e| e as u64).sum()
}

fn weight(w: &[u32], a: &[u32]) -> u64 {
    w.iter().zip(a).map(|(&w, &e)| w as u64 * e as u64).sum()
}

// Degrees are equal; the larger exponent in the last differing slot loses.
fn revlex_tail(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => f.write_str("lex"),
            MonomialOrder::GrevLex => f.write_str("grevlex"),
            MonomialOrder::Weighted(w) => {
                let w: Vec<String> = w.iter().map(u32::to_string).collect();
                write!(f, "weighted({})", w.join(","))
            }
            MonomialOrder::Block {
                split,
                first,
                second,
            } => {
                write!(f, "block({split}: {first} | {second})")
            }
        }
    }
}
