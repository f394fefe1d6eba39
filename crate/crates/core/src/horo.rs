//! Polyhedral asymmetric norms and the horofunctions of their metrics.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{orthogonal_residual, span_basis, QVector, Rational};
use crate::fan::{fan_from_polytope, Fan};
use crate::polytope::{FaceId, Polytope};
use crate::toric::PathSpec;

/// The norm with unit ball `P`, bundled with `P°` and the fan of `P`.
#[derive(Clone, Debug)]
pub struct PolyNorm {
    polytope: Polytope,
    polar: Polytope,
    fan: Fan,
}

impl PolyNorm {
    pub fn new(p: &Polytope) -> Result<PolyNorm> {
        Ok(PolyNorm {
            polytope: p.clone(),
            polar: p.polar()?,
            fan: fan_from_polytope(p)?,
        })
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn polar(&self) -> &Polytope {
        &self.polar
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn gauge(&self, x: &QVector) -> Rational {
        gauge_unchecked(&self.polytope, x)
    }

    pub fn dist(&self, x: &QVector, y: &QVector) -> Rational {
        self.gauge(&(y - x))
    }
}

fn gauge_unchecked(p: &Polytope, x: &QVector) -> Rational {
    p.facets()
        .iter()
        .map(|f| f.normal.dot(x) / &f.offset)
        .fold(Rational::zero(), |m, v| if v > m { v } else { m })
}

/// `inf{λ > 0 : x ∈ λP}`, read off the facets.
pub fn gauge(p: &Polytope, x: &QVector) -> Result<Rational> {
    if !p.origin_interior() {
        return Err(Error::Origin);
    }
    if x.len() != p.dim() {
        return Err(Error::Dimension {
            expected: p.dim(),
            got: x.len(),
        });
    }
    Ok(gauge_unchecked(p, x))
}

/// `d(x, y) = ‖y − x‖_P`.
pub fn dist(p: &Polytope, x: &QVector, y: &QVector) -> Result<Rational> {
    gauge(p, &(y - x))
}

/// `|x|_C = −min_{q ∈ C} ⟨q, x⟩` for `C` the hull of `vertices`.
pub fn pseudo_norm(vertices: &[QVector], x: &QVector) -> Result<Rational> {
    vertices
        .iter()
        .map(|q| -q.dot(x))
        .max()
        .ok_or(Error::Empty)
}

/// `y ↦ |p − y|_E − |p|_E` for a face `E` of `P°`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Horofunction {
    /// Face `F` of `P` with `E = F°`.
    pub face: FaceId,
    pub dual_face: FaceId,
    pub dual_vertices: Vec<QVector>,
    /// Representative of the base point orthogonal to `V(F)`.
    pub base_coset: QVector,
}

impl Horofunction {
    pub fn new(norm: &PolyNorm, face: FaceId, base: &QVector) -> Result<Horofunction> {
        let p = &norm.polytope;
        let dual_face = p.dual_face(&norm.polar, face)?;
        let dual_vertices = norm
            .polar
            .face(dual_face)
            .vertex_ids
            .iter()
            .map(|&v| norm.polar.vertices()[v].clone())
            .collect();
        let span: Vec<QVector> = p.face(face).vertex_ids.iter().map(|&v| p.vertices()[v].clone()).collect();
        let base_coset = orthogonal_residual(base, &span_basis(&span, p.dim()));
        Ok(Horofunction {
            face,
            dual_face,
            dual_vertices,
            base_coset,
        })
    }

    pub fn value(&self, y: &QVector) -> Rational {
        let at = |x: &QVector| pseudo_norm(&self.dual_vertices, x).expect("faces are nonempty");
        at(&(&self.base_coset - y)) - at(&self.base_coset)
    }

    /// Same as [`Self::value`] with an arbitrary base representative.
    pub fn value_with_base(&self, base: &QVector, y: &QVector) -> Rational {
        let at = |x: &QVector| pseudo_norm(&self.dual_vertices, x).expect("faces are nonempty");
        at(&(base - y)) - at(base)
    }
}

/// The horofunction that `t·u + c` converges to.
pub fn classify_limit_horo(norm: &PolyNorm, path: &PathSpec) -> Result<Horofunction> {
    let n = norm.polytope.dim();
    for v in [&path.u, &path.c] {
        if v.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: v.len(),
            });
        }
    }
    if path.u.is_zero() {
        return Err(Error::NotDivergent);
    }
    let cone = norm.fan.locate(&path.u)?;
    let face = norm.fan.source().expect("fan of a polytope")[cone];
    Horofunction::new(norm, face, &path.c)
}

/// `t = 1, 2, 4, …, 2^16`.
pub fn default_schedule() -> Vec<Rational> {
    (0..=16).map(|k| Rational::from_integer(BigInt::one() << k)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleConvergence {
    pub z: QVector,
    #[serde(with = "crate::json::opt_q")]
    pub t0: Option<Rational>,
    #[serde(with = "crate::exactla::rational::serde_q")]
    pub limit: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvergenceReport {
    pub horofunction: Horofunction,
    pub stabilized: bool,
    pub t0_per_sample: Vec<SampleConvergence>,
    /// `−d(0, z) ≤ Δ(z, t) ≤ d(z, 0)` held at every evaluation.
    pub lipschitz_ok: bool,
}

/// Compares `Δ(z, t) = d(z, x(t)) − d(0, x(t))` with the classified
/// horofunction along the schedule.
pub fn verify_convergence(
    norm: &PolyNorm,
    path: &PathSpec,
    samples: &[QVector],
    schedule: &[Rational],
) -> Result<ConvergenceReport> {
    let h = classify_limit_horo(norm, path)?;
    let origin = QVector::zeros(norm.polytope.dim());
    let mut lipschitz_ok = true;
    let mut per_sample = Vec::with_capacity(samples.len());
    for z in samples {
        let limit = h.value(z);
        let lower = -norm.dist(&origin, z);
        let upper = norm.dist(z, &origin);
        let mut t0 = None;
        for t in schedule.iter().rev() {
            let x = path.at(t);
            let delta = norm.dist(z, &x) - norm.dist(&origin, &x);
            if delta < lower || delta > upper {
                lipschitz_ok = false;
            }
            if delta != limit {
                break;
            }
            t0 = Some(t.clone());
        }
        per_sample.push(SampleConvergence {
            z: z.clone(),
            t0,
            limit,
        });
    }
    Ok(ConvergenceReport {
        horofunction: h,
        stabilized: per_sample.iter().all(|s| s.t0.is_some()),
        t0_per_sample: per_sample,
        lipschitz_ok,
    })
}

/// Whether `‖·‖_P` is symmetric, i.e. `P = −P`.
pub fn is_symmetric(p: &Polytope) -> bool {
    p.vertices().iter().all(|v| p.vertex_index(&-v).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exactla::rational::{frac, int};
    use crate::qv;

    fn norm(name: &str) -> PolyNorm {
        PolyNorm::new(&corpus::polytope(name).unwrap()).unwrap()
    }

    #[test]
    fn gauge_examples() {
        let sq = corpus::polytope("square").unwrap();
        assert_eq!(gauge(&sq, &qv![2, 1]).unwrap(), int(2));
        assert_eq!(gauge(&sq, &qv![0, 0]).unwrap(), int(0));
        let q = corpus::polytope("asymquad").unwrap();
        assert_eq!(gauge(&q, &qv![1, 0]).unwrap(), frac(1, 2));
        assert_eq!(gauge(&q, &qv![-1, 0]).unwrap(), int(1));
        assert!(!is_symmetric(&q));
    }

    #[test]
    fn dist_examples() {
        let sq = corpus::polytope("square").unwrap();
        assert_eq!(dist(&sq, &qv![0, 0], &qv![2, 1]).unwrap(), int(2));
        assert_eq!(dist(&sq, &qv![3, 1], &qv![3, 1]).unwrap(), int(0));
        let q = corpus::polytope("asymquad").unwrap();
        assert_eq!(dist(&q, &qv![0, 0], &qv![1, 0]).unwrap(), frac(1, 2));
        assert_eq!(dist(&q, &qv![1, 0], &qv![0, 0]).unwrap(), int(1));
    }

    #[test]
    fn gauge_needs_interior_origin() {
        let p = crate::polytope::hull(&[qv![0, 0], qv![1, 0], qv![0, 1]]).unwrap();
        assert_eq!(gauge(&p, &qv![1, 1]), Err(Error::Origin));
    }

    #[test]
    fn pseudo_norm_examples() {
        let cross = [qv![1, 0], qv![-1, 0], qv![0, 1], qv![0, -1]];
        assert_eq!(pseudo_norm(&cross, &qv![2, 1]).unwrap(), int(2));
        assert_eq!(pseudo_norm(&[qv![0, 0]], &qv![7, -3]).unwrap(), int(0));
        assert_eq!(pseudo_norm(&[qv![-1, 0], qv![0, -1]], &qv![3, 5]).unwrap(), int(5));
        assert_eq!(pseudo_norm(&[], &qv![1, 1]), Err(Error::Empty));
    }

    #[test]
    fn horofunction_examples() {
        let nm = norm("square");
        let h = classify_limit_horo(&nm, &PathSpec::real(qv![1, 1], qv![0, 0])).unwrap();
        let mut e = h.dual_vertices.clone();
        e.sort();
        assert_eq!(e, vec![qv![-1, 0], qv![0, -1]]);
        assert_eq!(h.value(&qv![1, 2]), int(-1));
        assert_eq!(h.value(&qv![0, 0]), int(0));
        let moved = qv![1, 1];
        for y in [qv![1, 2], qv![-3, 5], qv![7, 0]] {
            assert_eq!(h.value_with_base(&moved, &y), h.value(&y));
        }
    }

    #[test]
    fn classification_examples() {
        let nm = norm("square");
        let h = classify_limit_horo(&nm, &PathSpec::real(qv![3, 2], qv![4, -7])).unwrap();
        assert_eq!(h.dual_vertices, vec![qv![-1, 0]]);
        assert!(h.base_coset.is_zero());
        let h = classify_limit_horo(&nm, &PathSpec::real(qv![1, 1], qv![5, 0])).unwrap();
        assert_eq!(h.base_coset, QVector::new(vec![frac(5, 2), frac(-5, 2)]));
        assert_eq!(
            classify_limit_horo(&nm, &PathSpec::real(qv![0, 0], qv![5, 0])),
            Err(Error::NotDivergent)
        );
    }

    #[test]
    fn convergence_examples() {
        let nm = norm("square");
        let path = PathSpec::real(qv![1, 1], qv![0, 0]);
        let r = verify_convergence(&nm, &path, &[qv![1, 2], qv![0, 0]], &default_schedule()).unwrap();
        assert!(r.stabilized && r.lipschitz_ok);
        assert_eq!(r.t0_per_sample[0].limit, int(-1));
        assert_eq!(r.t0_per_sample[0].t0, Some(int(2)));
        assert_eq!(r.t0_per_sample[1].t0, Some(int(1)));

        let q = norm("asymquad");
        let samples = [qv![1, 2], qv![-3, 1], qv![2, -2], qv![0, 5]];
        let path = PathSpec::real(qv![1, 1], qv![1, 0]);
        let r = verify_convergence(&q, &path, &samples, &default_schedule()).unwrap();
        assert!(r.stabilized && r.lipschitz_ok);
        for s in &r.t0_per_sample {
            let t = int(1 << 16);
            let x = path.at(&t);
            assert_eq!(s.limit, q.dist(&s.z, &x) - q.dist(&qv![0, 0], &x));
        }
    }
}
