//! Exact row reduction. Over the rationals rows are cleared to integers and
//! eliminated fraction-free (cross-multiplication, then division by the row
//! content); pivots are normalised to one at the end.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::{FieldSpec, Scalar};

/// A subspace of `k^ncols` held as a reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowSpace {
    field: FieldSpec,
    ncols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(field: FieldSpec, ncols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let (rows, pivots) = match field {
            FieldSpec::Rationals => rref_rational(ncols, rows),
            FieldSpec::Prime(_) => rref_generic(ncols, rows),
        };
        RowSpace {
            field,
            ncols,
            rows,
            pivots,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
        v.iter().all(Scalar::is_zero)
    }

    pub fn is_subspace_of(&self, other: &RowSpace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// The vectors of this space supported on the coordinates `cols`.
    ///
    /// Uses the parity checks of the echelon form: `v` lies in the space iff
    /// `v[f] = Σ_i rows[i][f] · v[pivot_i]` for every free column `f`. For `v`
    /// supported on `cols` this is a small linear system whose kernel is the
    /// intersection.
    pub fn intersect_coordinates(&self, cols: &[usize]) -> RowSpace {
        let position = |c: usize| cols.iter().position(|&x| x == c);
        let is_pivot: Vec<Option<usize>> = {
            let mut v = vec![None; self.ncols];
            for (i, &p) in self.pivots.iter().enumerate() {
                v[p] = Some(i);
            }
            v
        };
        let zero = self.field.zero();
        let mut checks: Vec<Vec<Scalar>> = Vec::new();
        for f in (0..self.ncols).filter(|&c| is_pivot[c].is_none()) {
            let mut check = vec![zero.clone(); cols.len()];
            if let Some(j) = position(f) {
                check[j] = self.field.one();
            }
            for (j, &c) in cols.iter().enumerate() {
                if let Some(i) = is_pivot[c] {
                    check[j] = &check[j] - &self.rows[i][f];
                }
            }
            if check.iter().any(|x| !x.is_zero()) {
                checks.push(check);
            }
        }
        let kernel = kernel_basis(self.field, cols.len(), checks);
        let embedded = kernel
            .into_iter()
            .map(|w| {
                let mut v = vec![zero.clone(); self.ncols];
                for (j, x) in w.into_iter().enumerate() {
                    v[cols[j]] = x;
                }
                v
            })
            .collect();
        RowSpace::new(self.field, self.ncols, embedded)
    }
}

fn kernel_basis(field: FieldSpec, ncols: usize, rows: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    let reduced = RowSpace::new(field, ncols, rows);
    let free = (0..ncols).filter(|c| !reduced.pivots.contains(c));
    free.map(|f| {
        let mut w = vec![field.zero(); ncols];
        w[f] = field.one();
        for (row, &p) in reduced.rows.iter().zip(&reduced.pivots) {
            w[p] = -&row[f];
        }
        w
    })
    .collect()
}

fn rref_generic(ncols: usize, mut rows: Vec<Vec<Scalar>>) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        let Some(found) = (top..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(top, found);
        let inv = rows[top][col].inv().expect("nonzero pivot");
        for x in rows[top].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[top].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == top || row[col].is_zero() {
                continue;
            }
            let c = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x = &*x - &(&c * p);
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    (rows, pivots)
}

fn primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

fn rref_rational(ncols: usize, rows: Vec<Vec<Scalar>>) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut ints: Vec<Vec<BigInt>> = rows
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| {
            let rats: Vec<BigRational> = r
                .into_iter()
                .map(|x| match x {
                    Scalar::Rational(q) => q,
                    Scalar::Modular { .. } => panic!("modular entry in a rational matrix"),
                })
                .collect();
            let l = rats.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
            let mut row: Vec<BigInt> = rats.iter().map(|q| q.numer() * (&l / q.denom())).collect();
            primitive(&mut row);
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == ints.len() {
            break;
        }
        let Some(found) = (top..ints.len()).find(|&i| !ints[i][col].is_zero()) else {
            continue;
        };
        ints.swap(top, found);
        let pivot_row = ints[top].clone();
        let p = &pivot_row[col];
        for (i, row) in ints.iter_mut().enumerate() {
            if i == top || row[col].is_zero() {
                continue;
            }
            let c = row[col].clone();
            for (x, q) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * p - &c * q;
            }
            primitive(row);
        }
        pivots.push(col);
        top += 1;
    }
    ints.truncate(top);
    let rows = ints
        .into_iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let lead = row[p].clone();
            let lead = if lead.is_negative() { -lead } else { lead };
            let sign = if row[p].is_negative() {
                -BigInt::one()
            } else {
                BigInt::one()
            };
            row.into_iter()
                .map(|x| Scalar::Rational(BigRational::new(x * &sign, lead.clone())))
                .collect()
        })
        .collect();
    (rows, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(v: &[i64]) -> Vec<Scalar> {
        v.iter()
            .map(|&x| FieldSpec::Rationals.from_i64(x))
            .collect()
    }

    #[test]
    fn rank_and_rref() {
        let s = RowSpace::new(
            FieldSpec::Rationals,
            3,
            vec![q(&[2, 4, 6]), q(&[1, 2, 3]), q(&[0, 3, 3])],
        );
        assert_eq!(s.rank(), 2);
        assert_eq!(s.pivots(), &[0, 1]);
        assert_eq!(s.rows()[0], q(&[1, 0, 1]));
        assert_eq!(s.rows()[1], q(&[0, 1, 1]));
        assert!(s.contains(&q(&[1, 1, 2])));
        assert!(!s.contains(&q(&[1, 1, 1])));
    }

    #[test]
    fn coordinate_intersection() {
        // span{x+y, x^2+xy, xy+y^2} over columns [x^2, xy, y^2, x, y, 1]
        let s = RowSpace::new(
            FieldSpec::Rationals,
            6,
            vec![
                q(&[0, 0, 0, 1, 1, 0]),
                q(&[1, 1, 0, 0, 0, 0]),
                q(&[0, 1, 1, 0, 0, 0]),
            ],
        );
        for c in 0..6 {
            assert_eq!(s.intersect_coordinates(&[c]).rank(), 0);
        }
        let deg1 = s.intersect_coordinates(&[3, 4]);
        assert_eq!(deg1.rank(), 1);
        assert!(deg1.contains(&q(&[0, 0, 0, 1, 1, 0])));
        assert_eq!(s.intersect_coordinates(&[0, 1, 2]).rank(), 2);
    }

    fn small_rows(field: FieldSpec) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, 5), 0..6).prop_map(
            move |rows| {
                rows.into_iter()
                    .map(|r| r.into_iter().map(|x| field.from_i64(x)).collect())
                    .collect()
            },
        )
    }

    fn fields() -> impl Strategy<Value = FieldSpec> {
        prop_oneof![
            Just(FieldSpec::Rationals),
            Just(FieldSpec::Prime(5)),
            Just(FieldSpec::Prime(32003))
        ]
    }

    proptest! {
        #[test]
        fn input_rows_are_contained((field, rows) in fields().prop_flat_map(|f| (Just(f), small_rows(f)))) {
            let s = RowSpace::new(field, 5, rows.clone());
            for r in &rows {
                prop_assert!(s.contains(r));
            }
            prop_assert!(s.rank() <= rows.len());
        }

        // Intersection by brute force over a tiny prime field.
        #[test]
        fn intersection_matches_enumeration(rows in small_rows(FieldSpec::Prime(3)), mask in 1u8..32) {
            let f = FieldSpec::Prime(3);
            let s = RowSpace::new(f, 5, rows);
            let cols: Vec<usize> = (0..5).filter(|i| mask & (1 << i) != 0).collect();
            let inter = s.intersect_coordinates(&cols);
            let mut count = 0;
            for code in 0..3usize.pow(cols.len() as u32) {
                let mut v = vec![f.zero(); 5];
                let mut c = code;
                for &col in &cols {
                    v[col] = f.from_i64((c % 3) as i64);
                    c /= 3;
                }
                let inside = s.contains(&v);
                prop_assert_eq!(inside, inter.contains(&v));
                count += inside as usize;
            }
            prop_assert_eq!(count, 3usize.pow(inter.rank() as u32));
        }
    }
}
