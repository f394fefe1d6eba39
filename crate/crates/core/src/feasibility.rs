//! Exact feasibility of linear systems by Fourier–Motzkin elimination.
//!
//! Constraints have the form `⟨c, x⟩ + d REL 0` with `REL` one of `=`, `≥`,
//! `>`. Equalities are eliminated first by exact Gaussian elimination; the
//! remaining inequalities are projected one variable at a time, carrying
//! strictness through every combination. A witness point is rebuilt by back
//! substitution.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactla::rational::{gcd_of_integers, int, lcm_of_denominators};
use crate::exactla::{QMatrix, QVector, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Eq,
    Ge,
    Gt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: QVector,
    pub constant: Rational,
    pub rel: Relation,
}

impl Constraint {
    pub fn new(coeffs: QVector, constant: Rational, rel: Relation) -> Self {
        Constraint {
            coeffs,
            constant,
            rel,
        }
    }

    /// `⟨c, x⟩ = 0`, `⟨c, x⟩ ≥ 0` or `⟨c, x⟩ > 0`.
    pub fn homogeneous(coeffs: QVector, rel: Relation) -> Self {
        Constraint::new(coeffs, Rational::zero(), rel)
    }

    pub fn holds_at(&self, x: &QVector) -> bool {
        let v = self.coeffs.dot(x) + &self.constant;
        match self.rel {
            Relation::Eq => v.is_zero(),
            Relation::Ge => !v.is_negative(),
            Relation::Gt => v.is_positive(),
        }
    }
}

/// A conjunction of linear constraints over `nvars` unknowns.
#[derive(Clone, Debug, Default)]
pub struct System {
    nvars: usize,
    constraints: Vec<Constraint>,
}

impl System {
    pub fn new(nvars: usize) -> Self {
        System {
            nvars,
            constraints: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn push(&mut self, c: Constraint) {
        assert_eq!(c.coeffs.len(), self.nvars, "constraint arity");
        self.constraints.push(c);
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn holds_at(&self, x: &QVector) -> bool {
        self.constraints.iter().all(|c| c.holds_at(x))
    }

    pub fn is_feasible(&self) -> bool {
        self.find_point().is_some()
    }

    /// A point satisfying every constraint, or `None` if the system is
    /// infeasible.
    pub fn find_point(&self) -> Option<QVector> {
        let n = self.nvars;

        // x = base + param * y over the free variables y.
        let eqs: Vec<&Constraint> = self
            .constraints
            .iter()
            .filter(|c| c.rel == Relation::Eq)
            .collect();
        let (base, param) = if eqs.is_empty() {
            let id: Vec<QVector> = (0..n).map(|i| QVector::unit(n, i)).collect();
            (QVector::zeros(n), id)
        } else {
            let a = QMatrix::from_rows(eqs.iter().map(|c| c.coeffs.clone()).collect())
                .expect("equal arity");
            let b: QVector = eqs.iter().map(|c| -&c.constant).collect();
            let s = a.rank_and_solve(&b).expect("arity");
            let base = s.solution?;
            // Row i of `param` maps free coordinates to x_i.
            let k = s.kernel.len();
            let param = (0..n)
                .map(|i| (0..k).map(|j| s.kernel[j][i].clone()).collect())
                .collect();
            (base, param)
        };
        let k = param.first().map_or(0, |r: &QVector| r.len());

        let mut ineqs = Vec::new();
        for c in self.constraints.iter().filter(|c| c.rel != Relation::Eq) {
            let coeffs: QVector = (0..k)
                .map(|j| {
                    (0..n).fold(Rational::zero(), |acc, i| acc + &c.coeffs[i] * &param[i][j])
                })
                .collect();
            let constant = &c.constant + c.coeffs.dot(&base);
            ineqs.push(Row::new(coeffs.into_inner(), constant, c.rel == Relation::Gt));
        }

        let y = QVector::new(eliminate(ineqs, k)?);
        let x: QVector = (0..n)
            .map(|i| &base[i] + param[i].dot(&y))
            .collect();
        debug_assert!(self.holds_at(&x));
        Some(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Row {
    coeffs: Vec<Rational>,
    constant: Rational,
    strict: bool,
}

impl Row {
    fn new(coeffs: Vec<Rational>, constant: Rational, strict: bool) -> Self {
        Row {
            coeffs,
            constant,
            strict,
        }
    }

    fn value_at(&self, y: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(y)
            .fold(self.constant.clone(), |acc, (c, v)| acc + c * v)
    }

    fn trivially_true(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
            && if self.strict {
                self.constant.is_positive()
            } else {
                !self.constant.is_negative()
            }
    }
}

/// Deduplicates rows up to positive scaling, keeping the tightest constant.
fn normalize_rows(rows: Vec<Row>) -> Option<Vec<Row>> {
    let mut best: BTreeMap<Vec<BigInt>, (Rational, bool)> = BTreeMap::new();
    for r in rows {
        if r.coeffs.iter().all(Zero::is_zero) {
            if !r.trivially_true() {
                return None;
            }
            continue;
        }
        let l = Rational::from_integer(lcm_of_denominators(&r.coeffs));
        let ints: Vec<BigInt> = r.coeffs.iter().map(|c| (c * &l).to_integer()).collect();
        let g = gcd_of_integers(&ints);
        let key: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        let scale = &l / Rational::from_integer(g);
        let constant = &r.constant * &scale;
        best.entry(key)
            .and_modify(|(c, s)| {
                if constant < *c || (constant == *c && r.strict) {
                    *c = constant.clone();
                    *s = r.strict;
                }
            })
            .or_insert((constant, r.strict));
    }
    Some(
        best.into_iter()
            .map(|(k, (c, s))| Row::new(k.into_iter().map(Rational::from_integer).collect(), c, s))
            .collect(),
    )
}

/// Fourier–Motzkin over `k` variables; returns a feasible point.
fn eliminate(rows: Vec<Row>, k: usize) -> Option<Vec<Rational>> {
    let mut levels: Vec<(usize, Vec<Row>)> = Vec::new();
    let mut current = normalize_rows(rows)?;
    let mut remaining: Vec<usize> = (0..k).collect();

    while !remaining.is_empty() {
        // Eliminate the variable producing the fewest new rows.
        let (pos_idx, &var) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| {
                let p = current.iter().filter(|r| r.coeffs[v].is_positive()).count();
                let m = current.iter().filter(|r| r.coeffs[v].is_negative()).count();
                p * m
            })
            .expect("nonempty");
        remaining.remove(pos_idx);

        let mut next = Vec::new();
        let (mut lower, mut upper) = (Vec::new(), Vec::new());
        for r in &current {
            if r.coeffs[var].is_positive() {
                lower.push(r);
            } else if r.coeffs[var].is_negative() {
                upper.push(r);
            } else {
                next.push(r.clone());
            }
        }
        for lo in &lower {
            for up in &upper {
                let a = &lo.coeffs[var];
                let b = -&up.coeffs[var];
                let coeffs = lo
                    .coeffs
                    .iter()
                    .zip(&up.coeffs)
                    .map(|(x, y)| x * &b + y * a)
                    .collect();
                let constant = &lo.constant * &b + &up.constant * a;
                next.push(Row::new(coeffs, constant, lo.strict || up.strict));
            }
        }
        levels.push((var, current));
        current = normalize_rows(next)?;
    }
    // All variables gone: `normalize_rows` has already checked the constants.
    debug_assert!(current.is_empty());

    let mut y = vec![Rational::zero(); k];
    for (var, rows) in levels.iter().rev() {
        y[*var] = Rational::zero();
        let mut lo: Option<(Rational, bool)> = None;
        let mut hi: Option<(Rational, bool)> = None;
        for r in rows {
            let c = &r.coeffs[*var];
            if c.is_zero() {
                continue;
            }
            // c * y_var + rest REL 0
            let rest = r.value_at(&y);
            let bound = -rest / c;
            if c.is_positive() {
                if lo.as_ref().is_none_or(|(b, s)| bound > *b || (bound == *b && r.strict && !s)) {
                    lo = Some((bound, r.strict));
                }
            } else if hi.as_ref().is_none_or(|(b, s)| bound < *b || (bound == *b && r.strict && !s)) {
                hi = Some((bound, r.strict));
            }
        }
        y[*var] = match (lo, hi) {
            (None, None) => Rational::zero(),
            (Some((l, false)), _) => l,
            (Some((l, true)), None) => l + Rational::one(),
            (Some((l, true)), Some((h, _))) => (l + h) / int(2),
            (None, Some((h, false))) => h,
            (None, Some((h, true))) => h - Rational::one(),
        };
    }
    Some(y)
}
