//! Affine charts, distinguished points, orbits and limits of affine paths in
//! the combinatorial model of a toric variety.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::rational::fract;
use crate::exactla::{orthogonal_residual, LatticeSplit, QVector};
use crate::fan::{graded_lex, hilbert_basis, Cone, ConeId, Fan};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineChart {
    #[serde(rename = "cone")]
    pub cone_id: ConeId,
    /// Semigroup generators of `σ^∨ ∩ Z^n`, lineality included as `±` pairs.
    pub generators: Vec<QVector>,
}

impl AffineChart {
    pub fn embedding_dim(&self) -> usize {
        self.generators.len()
    }
}

pub fn affine_chart(cone: &Cone) -> AffineChart {
    let mut dual = cone.dual();
    dual.id = cone.id;
    let mut generators = hilbert_basis(&dual).generators();
    generators.sort_by(graded_lex);
    AffineChart {
        cone_id: cone.id,
        generators,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinguishedPoint {
    #[serde(rename = "cone")]
    pub cone_id: ConeId,
    /// 1 where the generator vanishes on the cone, 0 where it is positive.
    pub coordinates: Vec<u8>,
}

pub fn distinguished_point(cone: &Cone, chart: &AffineChart) -> Result<DistinguishedPoint> {
    let mut coordinates = Vec::with_capacity(chart.generators.len());
    for (i, m) in chart.generators.iter().enumerate() {
        let values: Vec<_> = cone.rays().iter().map(|r| m.dot(r)).collect();
        if values.iter().any(Signed::is_negative)
            || cone.lineality().iter().any(|l| !m.dot(l).is_zero())
        {
            return Err(Error::Chart(i));
        }
        coordinates.push(u8::from(values.iter().all(Zero::is_zero)));
    }
    Ok(DistinguishedPoint {
        cone_id: cone.id,
        coordinates,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitRow {
    pub cone: ConeId,
    pub orbit_dim: usize,
    /// The open orbit, over the zero cone.
    pub dense: bool,
}

pub fn orbit_table(fan: &Fan) -> Vec<OrbitRow> {
    fan.orbit_table()
        .into_iter()
        .map(|(cone, orbit_dim)| OrbitRow {
            cone,
            orbit_dim,
            dense: fan.cone(cone).dim() == 0,
        })
        .collect()
}

/// The orbit of `a` lies in the closure of the orbit of `b`.
pub fn orbit_in_closure(fan: &Fan, a: ConeId, b: ConeId) -> bool {
    fan.is_face(b, a)
}

/// The affine path `t ↦ t·u + c`, with imaginary part `y0` mod `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSpec {
    pub u: QVector,
    pub c: QVector,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y0: Option<QVector>,
}

impl PathSpec {
    pub fn real(u: QVector, c: QVector) -> PathSpec {
        PathSpec { u, c, y0: None }
    }

    pub fn at(&self, t: &crate::exactla::Rational) -> QVector {
        &self.u.scale(t) + &self.c
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub fan: u64,
    pub cone: ConeId,
    /// Representative of `c + V(σ)` orthogonal to `V(σ)`.
    pub real_coset: QVector,
    /// Coordinates of `y0` mod `Z^n + V(σ)`, each in `[0, 1)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus_coset: Option<QVector>,
}

/// Translation by `real + i·imag`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shift {
    pub real: QVector,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub imag: Option<QVector>,
}

fn check_dim(fan: &Fan, v: &QVector) -> Result<()> {
    if v.len() != fan.dim() {
        return Err(Error::Dimension {
            expected: fan.dim(),
            got: v.len(),
        });
    }
    Ok(())
}

fn real_coset(cone: &Cone, x: &QVector) -> QVector {
    orthogonal_residual(x, &cone.span_basis().vectors)
}

fn torus_coset(cone: &Cone, y: &QVector) -> QVector {
    let split = LatticeSplit::new(&cone.span_basis().vectors, cone.ambient_dim()).expect("integral span");
    split.quotient_coordinates(y).iter().map(fract).collect()
}

fn divergent_cone(fan: &Fan, path: &PathSpec) -> Result<ConeId> {
    check_dim(fan, &path.u)?;
    check_dim(fan, &path.c)?;
    if path.u.is_zero() {
        return Err(Error::NotDivergent);
    }
    fan.locate(&path.u)
}

/// Limit of `t·u + c` in the nonnegative part.
pub fn classify_limit_real(fan: &Fan, path: &PathSpec) -> Result<BoundaryPoint> {
    let id = divergent_cone(fan, path)?;
    Ok(BoundaryPoint {
        fan: fan.fingerprint(),
        cone: id,
        real_coset: real_coset(fan.cone(id), &path.c),
        torus_coset: None,
    })
}

/// Limit of `t·u + c + i·y0`; a missing `y0` is taken as zero.
pub fn classify_limit_complex(fan: &Fan, path: &PathSpec) -> Result<BoundaryPoint> {
    let mut point = classify_limit_real(fan, path)?;
    let y0 = path.y0.clone().unwrap_or_else(|| QVector::zeros(fan.dim()));
    check_dim(fan, &y0)?;
    point.torus_coset = Some(torus_coset(fan.cone(point.cone), &y0));
    Ok(point)
}

pub fn boundary_point_eq(a: &BoundaryPoint, b: &BoundaryPoint) -> Result<bool> {
    if a.fan != b.fan {
        return Err(Error::FanMismatch);
    }
    Ok(a.cone == b.cone && a.real_coset == b.real_coset && a.torus_coset == b.torus_coset)
}

/// Action of a translation on a boundary point through the quotient maps.
pub fn shift_boundary_point(fan: &Fan, point: &BoundaryPoint, shift: &Shift) -> Result<BoundaryPoint> {
    if point.fan != fan.fingerprint() {
        return Err(Error::FanMismatch);
    }
    check_dim(fan, &shift.real)?;
    let cone = fan.cone(point.cone);
    let torus_coset = match (&point.torus_coset, &shift.imag) {
        (Some(t), Some(imag)) => {
            check_dim(fan, imag)?;
            let moved = torus_coset(cone, imag);
            Some(t.iter().zip(moved.iter()).map(|(a, b)| fract(&(a + b))).collect())
        }
        (t, _) => t.clone(),
    };
    Ok(BoundaryPoint {
        fan: point.fan,
        cone: point.cone,
        real_coset: real_coset(cone, &(&point.real_coset + &shift.real)),
        torus_coset,
    })
}

/// Classifying the shifted path agrees with shifting the classified limit.
pub fn translation_equivariance_check(fan: &Fan, path: &PathSpec, shift: &Shift) -> Result<bool> {
    let complex = path.y0.is_some() || shift.imag.is_some();
    let classify = |p: &PathSpec| {
        if complex {
            classify_limit_complex(fan, p)
        } else {
            classify_limit_real(fan, p)
        }
    };
    let before = classify(path)?;
    let y0 = match (&path.y0, &shift.imag) {
        (None, None) => None,
        (y, s) => {
            let zero = QVector::zeros(fan.dim());
            Some(y.as_ref().unwrap_or(&zero) + s.as_ref().unwrap_or(&zero))
        }
    };
    let moved_path = PathSpec {
        u: path.u.clone(),
        c: &path.c + &shift.real,
        y0,
    };
    let after = classify(&moved_path)?;
    boundary_point_eq(&after, &shift_boundary_point(fan, &before, shift)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exactla::rational::frac;
    use crate::fan::fan_from_polytope;
    use crate::qv;

    fn square_fan() -> Fan {
        fan_from_polytope(&corpus::polytope("square").unwrap()).unwrap()
    }

    fn cone(gens: &[QVector]) -> Cone {
        Cone::from_generators(2, gens).unwrap()
    }

    #[test]
    fn charts() {
        let zero = affine_chart(&Cone::zero(2));
        assert_eq!(zero.embedding_dim(), 4);
        assert_eq!(distinguished_point(&Cone::zero(2), &zero).unwrap().coordinates, vec![1; 4]);

        let quadrant = cone(&[qv![1, 0], qv![0, 1]]);
        let chart = affine_chart(&quadrant);
        assert_eq!(chart.generators, vec![qv![1, 0], qv![0, 1]]);
        assert_eq!(distinguished_point(&quadrant, &chart).unwrap().coordinates, vec![0, 0]);

        let skew = affine_chart(&cone(&[qv![1, 0], qv![1, 2]]));
        let mut got = skew.generators.clone();
        got.sort();
        assert_eq!(got, vec![qv![0, 1], qv![1, 0], qv![2, -1]]);

        let ray = cone(&[qv![1, 0]]);
        let chart = affine_chart(&ray);
        assert_eq!(chart.generators, vec![qv![1, 0], qv![0, 1], qv![0, -1]]);
        assert_eq!(distinguished_point(&ray, &chart).unwrap().coordinates, vec![0, 1, 1]);
    }

    #[test]
    fn foreign_chart_rejected() {
        let ray = cone(&[qv![1, 0]]);
        let chart = AffineChart {
            cone_id: 0,
            generators: vec![qv![-1, 0]],
        };
        assert_eq!(distinguished_point(&ray, &chart), Err(Error::Chart(0)));
    }

    #[test]
    fn orbit_counts() {
        let mut dims = orbit_table(&square_fan())
            .into_iter()
            .map(|r| r.orbit_dim)
            .collect::<Vec<_>>();
        dims.sort();
        assert_eq!(dims, vec![0, 0, 0, 0, 1, 1, 1, 1, 2]);
        let fulton = orbit_table(&corpus::fulton_fan());
        let count = |d| fulton.iter().filter(|r| r.orbit_dim == d).count();
        assert_eq!([count(3), count(2), count(1), count(0)], [1, 8, 12, 6]);
        assert!(fulton[0].dense);
    }

    #[test]
    fn real_limits() {
        let f = square_fan();
        let a = classify_limit_real(&f, &PathSpec::real(qv![1, 1], qv![5, 0])).unwrap();
        assert_eq!(f.cone(a.cone).rays(), &[qv![1, 1]]);
        assert_eq!(a.real_coset, QVector::new(vec![frac(5, 2), frac(-5, 2)]));
        let b = classify_limit_real(&f, &PathSpec::real(qv![1, 1], qv![4, -1])).unwrap();
        assert!(boundary_point_eq(&a, &b).unwrap());

        let s = classify_limit_real(&f, &PathSpec::real(qv![3, 2], qv![0, 0])).unwrap();
        assert_eq!(f.cone(s.cone).dim(), 2);
        assert_eq!(s.real_coset, qv![0, 0]);

        let other = classify_limit_real(&f, &PathSpec::real(qv![1, -1], qv![0, 0])).unwrap();
        assert!(!boundary_point_eq(&a, &other).unwrap());
        assert_eq!(
            classify_limit_real(&f, &PathSpec::real(qv![0, 0], qv![1, 0])),
            Err(Error::NotDivergent)
        );
    }

    #[test]
    fn complex_limits() {
        let f = square_fan();
        let path = PathSpec {
            u: qv![1, 1],
            c: qv![0, 0],
            y0: Some(QVector::new(vec![frac(1, 3), frac(1, 2)])),
        };
        let p = classify_limit_complex(&f, &path).unwrap();
        assert_eq!(p.torus_coset, Some(QVector::new(vec![frac(1, 6)])));

        let along = PathSpec {
            y0: Some(path.y0.as_ref().unwrap() + &QVector::new(vec![frac(7, 5), frac(7, 5)])),
            ..path.clone()
        };
        assert!(boundary_point_eq(&p, &classify_limit_complex(&f, &along).unwrap()).unwrap());
        let periodic = PathSpec {
            y0: Some(path.y0.as_ref().unwrap() + &qv![0, 1]),
            ..path.clone()
        };
        assert!(boundary_point_eq(&p, &classify_limit_complex(&f, &periodic).unwrap()).unwrap());

        let shift = Shift {
            real: qv![0, 0],
            imag: Some(qv![0, 1]),
        };
        assert!(translation_equivariance_check(&f, &path, &shift).unwrap());
    }

    #[test]
    fn equivariance_examples() {
        let f = square_fan();
        let path = PathSpec::real(qv![1, 1], qv![0, 0]);
        let shift = Shift {
            real: qv![5, 0],
            imag: None,
        };
        assert!(translation_equivariance_check(&f, &path, &shift).unwrap());
        let inside = Shift {
            real: qv![3, 3],
            imag: None,
        };
        let before = classify_limit_real(&f, &path).unwrap();
        assert_eq!(shift_boundary_point(&f, &before, &inside).unwrap(), before);
    }

    #[test]
    fn different_fans_do_not_compare() {
        let a = classify_limit_real(&square_fan(), &PathSpec::real(qv![1, 1], qv![0, 0])).unwrap();
        let cross = fan_from_polytope(&corpus::polytope("cross2").unwrap()).unwrap();
        let b = classify_limit_real(&cross, &PathSpec::real(qv![1, 1], qv![0, 0])).unwrap();
        assert_eq!(boundary_point_eq(&a, &b), Err(Error::FanMismatch));
    }

    #[test]
    fn one_parameter_limit_is_orbit_origin() {
        let f = square_fan();
        for c in f.cones().iter().filter(|c| c.dim() > 0) {
            let u = c.rays().iter().fold(QVector::zeros(2), |acc, r| &acc + r);
            let p = classify_limit_complex(&f, &PathSpec { u, c: qv![0, 0], y0: None }).unwrap();
            assert_eq!(p.cone, c.id);
            assert!(p.real_coset.is_zero());
            assert!(p.torus_coset.unwrap().is_zero());
        }
    }
}
