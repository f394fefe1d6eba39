use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{gcd_of_integers, lcm_of_denominators, Rational};
use super::vector::QVector;
use crate::error::{Error, Result};

/// A rectangular matrix of rationals stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<QVector>", into = "Vec<QVector>")]
pub struct QMatrix {
    rows: Vec<QVector>,
    ncols: usize,
}

/// Result of [`QMatrix::rank_and_solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solve {
    /// One solution of `A x = b`, or `None` when the system is inconsistent.
    pub solution: Option<QVector>,
    /// Basis of `ker A`; primitive integral, first nonzero entry positive.
    pub kernel: Vec<QVector>,
    pub rank: usize,
}

impl QMatrix {
    pub fn from_rows(rows: Vec<QVector>) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::Dimension {
                expected: ncols,
                got: bad.len(),
            });
        }
        Ok(QMatrix { rows, ncols })
    }

    /// Empty matrix with a fixed column count.
    pub fn empty(ncols: usize) -> Self {
        QMatrix {
            rows: Vec::new(),
            ncols,
        }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| QVector::from_ints(r)).collect())
    }

    pub fn identity(n: usize) -> Self {
        QMatrix {
            rows: (0..n).map(|i| QVector::unit(n, i)).collect(),
            ncols: n,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &QVector {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn is_integral(&self) -> bool {
        self.rows.iter().all(QVector::is_integral)
    }

    pub fn transpose(&self) -> QMatrix {
        let rows = (0..self.ncols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        QMatrix {
            rows,
            ncols: self.nrows(),
        }
    }

    pub fn mul_vec(&self, x: &QVector) -> Result<QVector> {
        if x.len() != self.ncols {
            return Err(Error::Dimension {
                expected: self.ncols,
                got: x.len(),
            });
        }
        Ok(self.rows.iter().map(|r| r.dot(x)).collect())
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, x: &QVector) -> Result<QVector> {
        self.transpose().mul_vec(x)
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.ncols != other.nrows() {
            return Err(Error::Dimension {
                expected: self.ncols,
                got: other.nrows(),
            });
        }
        let t = other.transpose();
        let rows = self
            .rows
            .iter()
            .map(|r| t.rows.iter().map(|c| r.dot(c)).collect())
            .collect();
        Ok(QMatrix {
            rows,
            ncols: other.ncols,
        })
    }

    pub fn determinant(&self) -> Result<Rational> {
        if self.nrows() != self.ncols {
            return Err(Error::Dimension {
                expected: self.nrows(),
                got: self.ncols,
            });
        }
        let mut a: Vec<Vec<Rational>> = self.rows.iter().map(|r| r.to_vec()).collect();
        let n = a.len();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det *= &pivot;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &pivot;
                for c in col..n {
                    let d = &f * &a[col][c];
                    a[r][c] -= d;
                }
            }
        }
        Ok(det)
    }

    pub fn rank(&self) -> usize {
        let aug = self.integer_rows(None);
        reduced_echelon(aug, self.ncols).1.len()
    }

    pub fn kernel(&self) -> Vec<QVector> {
        self.solve_impl(None).kernel
    }

    /// Solves `A x = b` exactly and returns a kernel basis of `A`.
    ///
    /// Rows are cleared of denominators and eliminated fraction-free: every
    /// row update is `p * row_i - a * row_p` followed by division by the row
    /// content, so no intermediate fractions are formed.
    pub fn rank_and_solve(&self, b: &QVector) -> Result<Solve> {
        if b.len() != self.nrows() {
            return Err(Error::Dimension {
                expected: self.nrows(),
                got: b.len(),
            });
        }
        Ok(self.solve_impl(Some(b)))
    }

    /// Indices of a maximal linearly independent subset of rows, greedily
    /// from the top.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut chosen: Vec<usize> = Vec::new();
        let mut basis: Vec<QVector> = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            let mut trial = basis.clone();
            trial.push(r.clone());
            let m = QMatrix {
                rows: trial,
                ncols: self.ncols,
            };
            if m.rank() == basis.len() + 1 {
                basis.push(r.clone());
                chosen.push(i);
            }
        }
        chosen
    }

    fn integer_rows(&self, b: Option<&QVector>) -> Vec<Vec<BigInt>> {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut entries: Vec<Rational> = r.to_vec();
                if let Some(b) = b {
                    entries.push(b[i].clone());
                }
                let l = Rational::from_integer(lcm_of_denominators(&entries));
                entries.iter().map(|x| (x * &l).to_integer()).collect()
            })
            .collect()
    }

    fn solve_impl(&self, b: Option<&QVector>) -> Solve {
        let n = self.ncols;
        let aug = self.integer_rows(b);
        let (rows, pivots) = reduced_echelon(aug, n);
        let rank = pivots.len();

        let consistent = b.is_none()
            || rows[rank..]
                .iter()
                .all(|r| r.last().is_none_or(Zero::is_zero));

        let solution = (b.is_some() && consistent).then(|| {
            let mut x = vec![Rational::zero(); n];
            for (r, &c) in pivots.iter().enumerate() {
                x[c] = Rational::new(rows[r][n].clone(), rows[r][c].clone());
            }
            QVector::new(x)
        });

        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let kernel = free
            .iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); n];
                x[f] = Rational::one();
                for (r, &c) in pivots.iter().enumerate() {
                    x[c] = -Rational::new(rows[r][f].clone(), rows[r][c].clone());
                }
                QVector::new(x)
                    .primitive()
                    .expect("kernel vector is nonzero")
                    .sign_normalized()
            })
            .collect();

        Solve {
            solution,
            kernel,
            rank,
        }
    }
}

/// Fraction-free reduced row echelon form over the integers, pivoting only in
/// the first `pivot_cols` columns. Returns the rows (pivot rows first) and the
/// pivot column of each pivot row.
fn reduced_echelon(mut rows: Vec<Vec<BigInt>>, pivot_cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..pivot_cols {
        if prow == rows.len() {
            break;
        }
        let best = (prow..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
        let Some(best) = best else { continue };
        rows.swap(prow, best);
        let pivot_row = rows[prow].clone();
        let p = &pivot_row[col];
        for (i, row) in rows.iter_mut().enumerate() {
            if i == prow || row[col].is_zero() {
                continue;
            }
            let a = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * p - &a * y;
            }
            let g = gcd_of_integers(row.iter());
            if !g.is_zero() && !g.is_one() {
                for x in row.iter_mut() {
                    *x = x.div_floor(&g);
                }
            }
        }
        pivots.push(col);
        prow += 1;
    }
    (rows, pivots)
}

impl TryFrom<Vec<QVector>> for QMatrix {
    type Error = Error;
    fn try_from(rows: Vec<QVector>) -> Result<Self> {
        QMatrix::from_rows(rows)
    }
}

impl From<QMatrix> for Vec<QVector> {
    fn from(m: QMatrix) -> Self {
        m.rows
    }
}
