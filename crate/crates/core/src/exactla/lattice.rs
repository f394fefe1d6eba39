//! Integer lattice algebra: Smith normal form, saturation of sublattices and
//! completion to a basis of `Z^n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::matrix::QMatrix;
use super::rational::Rational;
use super::vector::QVector;
use crate::error::{Error, Result};

type ZRow = Vec<BigInt>;

/// Integral, linearly independent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LatticeBasis {
    pub vectors: Vec<QVector>,
}

impl LatticeBasis {
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn standard(n: usize) -> Self {
        LatticeBasis {
            vectors: (0..n).map(|i| QVector::unit(n, i)).collect(),
        }
    }
}

/// `U * M * V = S` with `U`, `V` unimodular and `S` in Smith form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: QMatrix,
    pub s: QMatrix,
    pub v: QMatrix,
    /// Inverse of `v`; its rows form a basis of `Z^n` adapted to the row
    /// lattice of `M`.
    pub v_inv: QMatrix,
}

impl Smith {
    /// Nonzero diagonal entries of `S`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.nrows().min(self.s.ncols()))
            .map(|i| self.s.get(i, i).to_integer())
            .filter(|d| !d.is_zero())
            .collect()
    }
}

fn to_z(m: &QMatrix) -> Result<Vec<ZRow>> {
    m.rows()
        .iter()
        .map(|r| r.to_integers().ok_or(Error::Integrality))
        .collect()
}

fn z_identity(n: usize) -> Vec<ZRow> {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect()
}

fn from_z(rows: &[ZRow], ncols: usize) -> QMatrix {
    if rows.is_empty() {
        return QMatrix::empty(ncols);
    }
    QMatrix::from_rows(rows.iter().map(|r| QVector::from_integers(r)).collect())
        .expect("rectangular")
}

struct SnfState {
    a: Vec<ZRow>,
    u: Vec<ZRow>,
    v: Vec<ZRow>,
    v_inv: Vec<ZRow>,
}

impl SnfState {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.a.iter_mut().chain(self.v.iter_mut()) {
            r.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            let src = m[t].clone();
            for (x, y) in m[i].iter_mut().zip(&src) {
                *x -= q * y;
            }
        }
    }

    /// col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for r in m.iter_mut() {
                let d = q * &r[t];
                r[j] -= d;
            }
        }
        let src = self.v_inv[j].clone();
        for (x, y) in self.v_inv[t].iter_mut().zip(&src) {
            *x += q * y;
        }
    }

    fn negate_row(&mut self, t: usize) {
        for m in [&mut self.a, &mut self.u] {
            for x in m[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
}

/// Smith normal form of an integral matrix.
pub fn smith_normal_form(m: &QMatrix) -> Result<Smith> {
    let a = to_z(m)?;
    let (nr, nc) = (m.nrows(), m.ncols());
    let mut st = SnfState {
        a,
        u: z_identity(nr),
        v: z_identity(nc),
        v_inv: z_identity(nc),
    };

    for t in 0..nr.min(nc) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !st.a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| st.a[i][j].abs() < st.a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        st.swap_rows(t, bi);
        st.swap_cols(t, bj);

        loop {
            let p = st.a[t][t].clone();
            for i in t + 1..nr {
                if !st.a[i][t].is_zero() {
                    let q = st.a[i][t].div_floor(&p);
                    st.row_sub(i, t, &q);
                }
            }
            for j in t + 1..nc {
                if !st.a[t][j].is_zero() {
                    let q = st.a[t][j].div_floor(&p);
                    st.col_sub(j, t, &q);
                }
            }

            // Remainders left in the pivot row or column: move the smallest
            // one into the pivot position and repeat.
            let mut smaller: Option<(usize, usize)> = None;
            for i in t + 1..nr {
                if !st.a[i][t].is_zero()
                    && smaller.is_none_or(|(si, sj)| st.a[i][t].abs() < st.a[si][sj].abs())
                {
                    smaller = Some((i, t));
                }
            }
            for j in t + 1..nc {
                if !st.a[t][j].is_zero()
                    && smaller.is_none_or(|(si, sj)| st.a[t][j].abs() < st.a[si][sj].abs())
                {
                    smaller = Some((t, j));
                }
            }
            if let Some((si, sj)) = smaller {
                st.swap_rows(t, si);
                st.swap_cols(t, sj);
                continue;
            }

            // Divisibility of the trailing block by the pivot.
            let p = st.a[t][t].clone();
            let offender = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !st.a[i][j].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    st.row_sub(t, i, &minus_one);
                }
                None => break,
            }
        }
        if st.a[t][t].is_negative() {
            st.negate_row(t);
        }
    }

    Ok(Smith {
        u: from_z(&st.u, nr),
        s: from_z(&st.a, nc),
        v: from_z(&st.v, nc),
        v_inv: from_z(&st.v_inv, nc),
    })
}

/// Row-style Hermite normal form of a full-row-rank integral basis: echelon,
/// positive pivots, entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_rows(basis: &[QVector]) -> Result<Vec<QVector>> {
    let Some(first) = basis.first() else {
        return Ok(Vec::new());
    };
    let n = first.len();
    let mut rows: Vec<ZRow> = basis
        .iter()
        .map(|r| r.to_integers().ok_or(Error::Integrality))
        .collect::<Result<_>>()?;
    let mut prow = 0;
    for col in 0..n {
        if prow == rows.len() {
            break;
        }
        loop {
            let best = (prow..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(best) = best else { break };
            rows.swap(prow, best);
            let mut clean = true;
            for r in prow + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[prow][col]);
                let src = rows[prow].clone();
                for (x, y) in rows[r].iter_mut().zip(&src) {
                    *x -= &q * y;
                }
                if !rows[r][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if rows[prow][col].is_zero() {
            continue;
        }
        if rows[prow][col].is_negative() {
            for x in rows[prow].iter_mut() {
                *x = -&*x;
            }
        }
        let src = rows[prow].clone();
        for r in 0..prow {
            let q = rows[r][col].div_floor(&src[col]);
            for (x, y) in rows[r].iter_mut().zip(&src) {
                *x -= &q * y;
            }
        }
        prow += 1;
    }
    rows.truncate(prow);
    Ok(rows.iter().map(|r| QVector::from_integers(r)).collect())
}

/// A splitting `Z^n = sat(L) ⊕ C` of the integer lattice along the rational
/// span of a set of vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSplit {
    dim: usize,
    saturation: LatticeBasis,
    complement: LatticeBasis,
    /// Columns give coordinates with respect to the adapted basis.
    coords: QMatrix,
    rank: usize,
}

impl LatticeSplit {
    /// `generators` may be rational and dependent; only their span matters.
    pub fn new(generators: &[QVector], dim: usize) -> Result<Self> {
        let mut rows = Vec::new();
        for g in generators {
            if g.len() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    got: g.len(),
                });
            }
            if let Some(p) = g.primitive() {
                rows.push(p);
            }
        }
        if rows.is_empty() {
            return Ok(LatticeSplit {
                dim,
                saturation: LatticeBasis { vectors: vec![] },
                complement: LatticeBasis::standard(dim),
                coords: QMatrix::identity(dim),
                rank: 0,
            });
        }
        let m = QMatrix::from_rows(rows)?;
        let snf = smith_normal_form(&m)?;
        let rank = snf.invariant_factors().len();
        let adapted = snf.v_inv.rows();
        let saturation = hermite_rows(&adapted[..rank])?;
        Ok(LatticeSplit {
            dim,
            saturation: LatticeBasis {
                vectors: saturation,
            },
            complement: LatticeBasis {
                vectors: adapted[rank..].to_vec(),
            },
            coords: snf.v,
            rank,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn saturation(&self) -> &LatticeBasis {
        &self.saturation
    }

    pub fn complement(&self) -> &LatticeBasis {
        &self.complement
    }

    /// Coordinates of `x` along the complement vectors in the decomposition
    /// `x = s + Σ c_i w_i` with `s` in the span. Integral for integral `x`.
    pub fn quotient_coordinates(&self, x: &QVector) -> Vec<Rational> {
        let all = self.coords.vec_mul(x).expect("dimension checked by caller");
        all.into_inner().split_off(self.rank)
    }
}

/// The saturation `span(L) ∩ Z^n`.
pub fn saturate(lattice: &[QVector], dim: usize) -> Result<LatticeBasis> {
    Ok(LatticeSplit::new(lattice, dim)?.saturation)
}

/// Vectors completing a basis of `sat(L)` to a basis of `Z^n`.
pub fn complement_basis(lattice: &LatticeBasis, dim: usize) -> Result<LatticeBasis> {
    Ok(LatticeSplit::new(&lattice.vectors, dim)?.complement)
}
