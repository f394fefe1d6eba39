use std::collections::BTreeMap;

use num_traits::One;
use serde::Serialize;

use super::{fan_from_polytope, Fan};
use crate::error::{Error, Result};
use crate::exactla::{QVector, Rational};
use crate::feasibility::{Constraint, Relation, System};
use crate::polytope::{hull, Polytope};

#[derive(Clone, Debug, Serialize)]
pub struct PolytopalReport {
    /// Heights exist making the rays of each maximal cone coplanar.
    pub coplanarity_feasible: bool,
    /// Additionally every wall is a strictly convex crease.
    pub strictly_convex_feasible: bool,
    pub rays: Vec<QVector>,
    /// `λ_r` per ray, smallest equal to 1, when strictly convex heights exist.
    #[serde(serialize_with = "crate::json::serialize_opt_rationals")]
    pub heights: Option<Vec<Rational>>,
    #[serde(skip)]
    pub witness: Option<Polytope>,
    pub witness_fan_matches: Option<bool>,
}

/// Decides whether the rays can be pushed to heights `λ_r ≥ 1` so that
/// `conv{λ_r r}` has the given fan as its face fan.
///
/// Unknowns per maximal cone `σ` are a covector `a_σ`, and per ray `r` the
/// value `h_r = ⟨a_σ, r⟩ = 1/λ_r`. Strict inequalities are homogenized to
/// `≥ 1`.
pub fn is_polytopal(fan: &Fan) -> Result<PolytopalReport> {
    if !fan.is_complete()? {
        return Err(Error::Fan("fan is not complete".into()));
    }
    let n = fan.dim();
    let rays = fan.rays();
    let ray_index: BTreeMap<&QVector, usize> = rays.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let maximal = fan.maximal_cones();
    let nvars = maximal.len() * n + rays.len();
    let height = |r: usize| maximal.len() * n + r;
    let covector = |k: usize, r: &QVector| {
        let mut c = vec![Rational::default(); nvars];
        c[k * n..(k + 1) * n].clone_from_slice(r.as_slice());
        c
    };

    let mut sys = System::new(nvars);
    for (k, &m) in maximal.iter().enumerate() {
        for r in fan.cone(m).rays() {
            let mut c = covector(k, r);
            c[height(ray_index[r])] = -Rational::one();
            sys.push(Constraint::homogeneous(QVector::new(c), Relation::Eq));
        }
    }
    for r in 0..rays.len() {
        let mut c = vec![Rational::default(); nvars];
        c[height(r)] = Rational::one();
        sys.push(Constraint::new(QVector::new(c), -Rational::one(), Relation::Ge));
    }
    let coplanarity_feasible = sys.is_feasible();

    let mut strict = sys.clone();
    for (k, &a) in maximal.iter().enumerate() {
        for &b in &maximal {
            if a == b || !shares_wall(fan, a, b) {
                continue;
            }
            for r in fan.cone(b).rays() {
                if fan.cone(a).rays().contains(r) {
                    continue;
                }
                // h_r - ⟨a_σ, r⟩ ≥ 1
                let mut c: Vec<Rational> = covector(k, r).into_iter().map(|x| -x).collect();
                c[height(ray_index[r])] = Rational::one();
                strict.push(Constraint::new(QVector::new(c), -Rational::one(), Relation::Ge));
            }
        }
    }
    let point = if coplanarity_feasible { strict.find_point() } else { None };
    let strictly_convex_feasible = point.is_some();

    let (heights, witness, witness_fan_matches) = match point {
        Some(x) => {
            let h: Vec<Rational> = (0..rays.len()).map(|r| x[height(r)].clone()).collect();
            let hmax = h.iter().max().cloned().unwrap_or_else(Rational::one);
            let lambda: Vec<Rational> = h.iter().map(|hr| &hmax / hr).collect();
            let points: Vec<QVector> = rays.iter().zip(&lambda).map(|(r, l)| r.scale(l)).collect();
            let witness = hull(&points)?;
            let matches = fan_from_polytope(&witness)?.same_cones(fan);
            (Some(lambda), Some(witness), Some(matches))
        }
        None => (None, None, None),
    };
    Ok(PolytopalReport {
        coplanarity_feasible,
        strictly_convex_feasible,
        rays,
        heights,
        witness,
        witness_fan_matches,
    })
}

fn shares_wall(fan: &Fan, a: usize, b: usize) -> bool {
    let ca = fan.cone(a);
    let cb = fan.cone(b);
    let common: Vec<QVector> = ca.rays().iter().filter(|r| cb.rays().contains(r)).cloned().collect();
    fan.find_cone(&common)
        .is_some_and(|id| fan.cone(id).dim() + 1 == fan.dim())
}
