use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{Cone, ConeId};
use crate::closure::is_subset;
use crate::exactla::rational::fract;
use crate::exactla::{smith_normal_form, LatticeSplit, QMatrix, QVector, Rational};

/// Generators of the semigroup `C ∩ Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertBasis {
    pub cone_id: ConeId,
    /// Irreducible elements of the pointed part, in graded-lex order.
    pub elements: Vec<QVector>,
    /// `±` a lattice basis of the lineality space.
    pub lineality_generators: Vec<QVector>,
}

impl HilbertBasis {
    /// All semigroup generators: elements, then lineality pairs.
    pub fn generators(&self) -> Vec<QVector> {
        let mut g = self.elements.clone();
        g.extend(self.lineality_generators.iter().cloned());
        g
    }
}

fn l1(v: &QVector) -> Rational {
    v.iter().fold(Rational::zero(), |acc, x| acc + x.abs())
}

/// Order by total absolute value, then lexicographically from the largest.
pub fn graded_lex(a: &QVector, b: &QVector) -> Ordering {
    l1(a).cmp(&l1(b)).then_with(|| b.cmp(a))
}

pub fn hilbert_basis(cone: &Cone) -> HilbertBasis {
    let n = cone.ambient_dim();
    let lineality_generators = cone
        .lineality()
        .iter()
        .flat_map(|l| [l.clone(), -l])
        .collect();
    let mut elements = Vec::new();
    if !cone.rays().is_empty() {
        let split = LatticeSplit::new(cone.lineality(), n).expect("integral lineality");
        let complement = &split.complement().vectors;
        let m = complement.len();
        let projected: Vec<QVector> = cone
            .rays()
            .iter()
            .filter_map(|r| QVector::new(split.quotient_coordinates(r)).primitive())
            .collect();
        for x in pointed_hilbert(m, projected) {
            let lifted = complement
                .iter()
                .zip(x.iter())
                .fold(QVector::zeros(n), |acc, (w, c)| &acc + &w.scale(c));
            elements.push(lifted);
        }
        elements.sort_by(graded_lex);
    }
    HilbertBasis {
        cone_id: cone.id,
        elements,
        lineality_generators,
    }
}

/// Hilbert basis of the pointed cone over the given extreme rays.
fn pointed_hilbert(m: usize, rays: Vec<QVector>) -> Vec<QVector> {
    let cone = Cone::from_extreme_rays(m, rays);
    let faces = cone.face_ray_sets();
    let all: Vec<usize> = (0..cone.rays().len()).collect();
    let mut candidates: BTreeSet<QVector> = cone.rays().iter().cloned().collect();
    for simplex in triangulate(&cone, &all, &faces) {
        let gens: Vec<QVector> = simplex.iter().map(|&i| cone.rays()[i].clone()).collect();
        candidates.extend(parallelepiped_points(m, &gens));
    }
    let candidates: Vec<QVector> = candidates.into_iter().collect();
    candidates
        .iter()
        .filter(|x| {
            !candidates
                .iter()
                .any(|y| y != *x && cone.contains(&(*x - y)))
        })
        .cloned()
        .collect()
}

/// Pulling triangulation of a face into simplicial cones (ray index sets).
fn triangulate(cone: &Cone, face: &[usize], faces: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let rank = cone.rank_of(face);
    if face.len() == rank {
        return vec![face.to_vec()];
    }
    let apex = face[0];
    let mut out = Vec::new();
    for g in faces {
        if g.len() < face.len()
            && is_subset(g, face)
            && !g.contains(&apex)
            && cone.rank_of(g) + 1 == rank
        {
            for mut s in triangulate(cone, g, faces) {
                s.push(apex);
                s.sort_unstable();
                out.push(s);
            }
        }
    }
    out
}

/// Nonzero lattice points `Σ t_i g_i` with `0 ≤ t_i < 1` for linearly
/// independent integral `g_i`, one per class of the quotient of the span
/// lattice by the lattice the `g_i` generate.
fn parallelepiped_points(m: usize, gens: &[QVector]) -> Vec<QVector> {
    let d = gens.len();
    let split = LatticeSplit::new(gens, m).expect("integral rays");
    let basis = QMatrix::from_rows(split.saturation().vectors.clone()).expect("rows");
    let basis_t = basis.transpose();
    let coords: Vec<QVector> = gens
        .iter()
        .map(|g| {
            basis_t
                .rank_and_solve(g)
                .expect("dimension")
                .solution
                .expect("generator lies in its span")
        })
        .collect();
    let r = QMatrix::from_rows(coords).expect("rows");
    let r_t = r.transpose();
    let smith = smith_normal_form(&r).expect("integral coordinates");
    let diag: Vec<usize> = (0..d)
        .map(|i| {
            smith.s.get(i, i).to_integer().abs().to_usize().expect("small index")
        })
        .collect();

    let mut out = Vec::new();
    let mut z = vec![0usize; d];
    loop {
        let w = smith
            .v_inv
            .vec_mul(&QVector::from_integers(
                &z.iter().map(|&k| BigInt::from(k)).collect::<Vec<_>>(),
            ))
            .expect("dimension");
        let t = r_t
            .rank_and_solve(&w)
            .expect("dimension")
            .solution
            .expect("full rank");
        let t: QVector = t.iter().map(fract).collect();
        if !t.is_zero() {
            let in_basis = r.vec_mul(&t).expect("dimension");
            out.push(basis.vec_mul(&in_basis).expect("dimension"));
        }
        let Some(i) = (0..d).find(|&i| z[i] + 1 < diag[i]) else {
            break;
        };
        z[i] += 1;
        for k in z.iter_mut().take(i) {
            *k = 0;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qv;

    fn basis_of(gens: &[QVector], n: usize) -> HilbertBasis {
        hilbert_basis(&Cone::from_generators(n, gens).unwrap())
    }

    #[test]
    fn smooth_quadrant() {
        let h = basis_of(&[qv![1, 0], qv![0, 1]], 2);
        assert_eq!(h.elements, vec![qv![1, 0], qv![0, 1]]);
        assert!(h.lineality_generators.is_empty());
    }

    #[test]
    fn singular_cone_gains_interior_point() {
        let h = basis_of(&[qv![0, 1], qv![2, -1]], 2);
        let set: BTreeSet<_> = h.elements.into_iter().collect();
        let want: BTreeSet<_> = [qv![0, 1], qv![1, 0], qv![2, -1]].into_iter().collect();
        assert_eq!(set, want);
    }

    #[test]
    fn whole_plane() {
        let h = hilbert_basis(&Cone::zero(2).dual());
        assert!(h.elements.is_empty());
        let set: BTreeSet<_> = h.lineality_generators.into_iter().collect();
        let want: BTreeSet<_> = [qv![1, 0], qv![-1, 0], qv![0, 1], qv![0, -1]].into_iter().collect();
        assert_eq!(set, want);
    }

    #[test]
    fn half_plane_chart() {
        let ray = Cone::from_generators(2, &[qv![1, 0]]).unwrap();
        let h = hilbert_basis(&ray.dual());
        assert_eq!(h.generators(), vec![qv![1, 0], qv![0, 1], qv![0, -1]]);
    }

    #[test]
    fn parallelepiped_of_cone_with_index_three() {
        // det[(1,0),(1,3)] = 3
        let h = basis_of(&[qv![1, 0], qv![1, 3]], 2);
        assert_eq!(h.elements, vec![qv![1, 0], qv![1, 1], qv![1, 2], qv![1, 3]]);
    }

    #[test]
    fn non_simplicial_cone_in_three_dims() {
        let h = basis_of(&[qv![1, 0, 1], qv![0, 1, 1], qv![-1, 0, 1], qv![0, -1, 1]], 3);
        assert_eq!(h.elements.len(), 5);
        assert!(h.elements.contains(&qv![0, 0, 1]));
    }
}
