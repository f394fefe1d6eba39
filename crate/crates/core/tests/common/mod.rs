//! Independent oracles and sampling helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use toric_horo::exactla::rational::{frac, int};
use toric_horo::exactla::{QVector, Rational};
use toric_horo::feasibility::{Constraint, Relation, System};

pub fn random_rational<R: Rng>(rng: &mut R, span: i64, max_den: i64) -> Rational {
    frac(rng.gen_range(-span..=span), rng.gen_range(1..=max_den))
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize, span: i64, max_den: i64) -> QVector {
    (0..n).map(|_| random_rational(rng, span, max_den)).collect()
}

pub fn random_nonzero<R: Rng>(rng: &mut R, n: usize, span: i64, max_den: i64) -> QVector {
    loop {
        let v = random_vector(rng, n, span, max_den);
        if !v.is_zero() {
            return v;
        }
    }
}

/// Whether `x` is a convex combination of `points`, by elimination over the
/// combination coefficients.
pub fn in_convex_hull(points: &[QVector], x: &QVector) -> bool {
    let m = points.len();
    let mut sys = System::new(m);
    for i in 0..m {
        sys.push(Constraint::homogeneous(QVector::unit(m, i), Relation::Ge));
    }
    sys.push(Constraint::new(
        QVector::new(vec![Rational::one(); m]),
        -Rational::one(),
        Relation::Eq,
    ));
    for k in 0..x.len() {
        let coeffs: QVector = points.iter().map(|p| p[k].clone()).collect();
        sys.push(Constraint::new(coeffs, -x[k].clone(), Relation::Eq));
    }
    sys.is_feasible()
}

/// Brackets `inf{λ > 0 : x ∈ λ conv(vertices)}` by bisection on membership,
/// until the bracket is narrower than `width`.
pub fn gauge_by_bisection(vertices: &[QVector], x: &QVector, width: &Rational) -> (Rational, Rational) {
    let member = |lambda: &Rational| {
        let scaled: Vec<QVector> = vertices.iter().map(|v| v.scale(lambda)).collect();
        in_convex_hull(&scaled, x)
    };
    let mut lo = Rational::zero();
    let mut hi = Rational::one();
    while !member(&hi) {
        lo = hi.clone();
        hi *= int(2);
    }
    while &hi - &lo >= *width {
        let mid = (&lo + &hi) / int(2);
        if mid.is_positive() && member(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

/// Whether `x` is a nonnegative combination of `generators`.
pub fn in_cone(generators: &[QVector], x: &QVector) -> bool {
    let m = generators.len();
    if m == 0 {
        return x.is_zero();
    }
    let mut sys = System::new(m);
    for i in 0..m {
        sys.push(Constraint::homogeneous(QVector::unit(m, i), Relation::Ge));
    }
    for k in 0..x.len() {
        let coeffs: QVector = generators.iter().map(|g| g[k].clone()).collect();
        sys.push(Constraint::new(coeffs, -x[k].clone(), Relation::Eq));
    }
    sys.is_feasible()
}

fn box_points(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-bound..=bound).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

fn to_ints(v: &QVector) -> Vec<i64> {
    v.iter()
        .map(|x| {
            assert!(x.is_integer(), "generator must be integral");
            x.to_integer().to_i64().expect("small")
        })
        .collect()
}

/// Lattice points reachable from the origin by adding generators while
/// staying inside `[-bound, bound]^n`.
fn reachable(n: usize, generators: &[Vec<i64>], bound: i64) -> BTreeSet<Vec<i64>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(vec![0; n]);
    queue.push_back(vec![0; n]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q: Vec<i64> = p.iter().zip(g).map(|(a, b)| a + b).collect();
            if q.iter().all(|c| c.abs() <= bound) && seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen
}

/// Outcome of the bounded semigroup check.
#[derive(Debug)]
pub struct SemigroupCheck {
    pub points_checked: usize,
    pub generates: bool,
    pub minimal: bool,
}

/// Checks that `basis` generates every lattice point of `cone(cone_gens)`
/// inside the box `[-B, B]^n`, `B = 2·max |generator coordinate|`, and that
/// no element of `basis` is reachable from the others.
pub fn semigroup_check(n: usize, cone_gens: &[QVector], basis: &[QVector]) -> SemigroupCheck {
    let max = cone_gens
        .iter()
        .chain(basis)
        .flat_map(to_ints)
        .map(i64::abs)
        .max()
        .unwrap_or(1)
        .max(1);
    let bound = 2 * max;
    let gens: Vec<Vec<i64>> = basis.iter().map(to_ints).collect();
    let reach = reachable(n, &gens, 2 * bound);
    let mut points_checked = 0;
    let mut generates = true;
    for z in box_points(n, bound) {
        let zq = QVector::from_integers(&z.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>());
        if in_cone(cone_gens, &zq) {
            points_checked += 1;
            if !reach.contains(&z) {
                generates = false;
            }
        } else if reach.contains(&z) {
            generates = false;
        }
    }
    let minimal = (0..gens.len()).all(|i| {
        let rest: Vec<Vec<i64>> = gens
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        !reachable(n, &rest, 2 * bound).contains(&gens[i])
    });
    SemigroupCheck {
        points_checked,
        generates,
        minimal,
    }
}
