use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::{AffineSpan, Face, FaceLattice, Facet, Polytope};
use crate::closure::{for_each_combination, intersection_closure, is_subset};
use crate::error::{Error, Result};
use crate::exactla::{orthogonal_complement, span_basis, QMatrix, QVector, Rational};

fn affine_rank(points: &[&QVector], dim: usize) -> isize {
    let Some((first, rest)) = points.split_first() else {
        return -1;
    };
    let diffs: Vec<QVector> = rest.iter().map(|p| *p - *first).collect();
    span_basis(&diffs, dim).len() as isize
}

/// Normalizes `⟨a, x⟩ ≤ b` so that `a` is primitive integral.
fn normalized_facet(a: &QVector, b: &Rational) -> Facet {
    let normal = a.primitive().expect("facet normal is nonzero");
    let i = a.iter().position(|x| !x.is_zero()).expect("nonzero");
    let factor = &normal[i] / &a[i];
    Facet {
        normal,
        offset: b * factor,
    }
}

/// Convex hull of a finite point set in `Q^n`.
///
/// Facets are found by brute force over `n`-subsets of the input spanning a
/// hyperplane with every point on one side. Vertices are the input points at
/// which the tight facet normals have full rank.
pub fn hull(points: &[QVector]) -> Result<Polytope> {
    let Some(first) = points.first() else {
        return Err(Error::Empty);
    };
    let n = first.len();
    if let Some(bad) = points.iter().find(|p| p.len() != n) {
        return Err(Error::Dimension {
            expected: n,
            got: bad.len(),
        });
    }
    let pts: Vec<QVector> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let refs: Vec<&QVector> = pts.iter().collect();
    let rank = affine_rank(&refs, n);
    if rank < n as isize || n == 0 {
        return Err(Error::Degenerate {
            affine_dim: rank,
            ambient_dim: n,
        });
    }

    let mut facets: BTreeSet<Facet> = BTreeSet::new();
    for_each_combination(pts.len(), n, |combo| {
        let base = &pts[combo[0]];
        if facets
            .iter()
            .any(|f| combo.iter().all(|&i| f.slack(&pts[i]).is_zero()))
        {
            return;
        }
        let diffs: Vec<QVector> = combo[1..].iter().map(|&i| &pts[i] - base).collect();
        let normals = orthogonal_complement(&diffs, n);
        if normals.len() != 1 {
            return;
        }
        let a = &normals[0];
        let b = a.dot(base);
        let (mut above, mut below) = (false, false);
        for p in &pts {
            let s = a.dot(p) - &b;
            above |= s.is_positive();
            below |= s.is_negative();
            if above && below {
                return;
            }
        }
        let f = if above {
            normalized_facet(&-a, &-b)
        } else {
            normalized_facet(a, &b)
        };
        facets.insert(f);
    });
    let facets: Vec<Facet> = facets.into_iter().collect();

    let vertices: Vec<QVector> = pts
        .iter()
        .filter(|p| {
            let tight: Vec<QVector> = facets
                .iter()
                .filter(|f| f.slack(p).is_zero())
                .map(|f| f.normal.clone())
                .collect();
            !tight.is_empty() && QMatrix::from_rows(tight).expect("arity").rank() == n
        })
        .cloned()
        .collect();

    let lattice = build_lattice(&vertices, &facets, n);
    Ok(Polytope {
        ambient_dim: n,
        vertices,
        facets,
        lattice,
    })
}

fn build_lattice(vertices: &[QVector], facets: &[Facet], n: usize) -> FaceLattice {
    let facet_sets: Vec<Vec<usize>> = facets
        .iter()
        .map(|f| {
            (0..vertices.len())
                .filter(|&v| f.slack(&vertices[v]).is_zero())
                .collect()
        })
        .collect();
    let mut sets = intersection_closure(&facet_sets);
    sets.insert((0..vertices.len()).collect());
    sets.insert(Vec::new());

    let mut faces: Vec<Face> = sets
        .into_iter()
        .map(|vs| {
            let refs: Vec<&QVector> = vs.iter().map(|&i| &vertices[i]).collect();
            let dim = affine_rank(&refs, n);
            let point = refs.first().map(|p| (*p).clone());
            let directions = match refs.split_first() {
                Some((p0, rest)) => {
                    let diffs: Vec<QVector> = rest.iter().map(|p| *p - *p0).collect();
                    span_basis(&diffs, n)
                }
                None => Vec::new(),
            };
            let facet_ids = (0..facets.len())
                .filter(|&i| is_subset(&vs, &facet_sets[i]))
                .collect();
            Face {
                id: 0,
                dim,
                vertex_ids: vs,
                facet_ids,
                affine_span: AffineSpan { point, directions },
            }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.vertex_ids).cmp(&(b.dim, &b.vertex_ids)));
    for (i, f) in faces.iter_mut().enumerate() {
        f.id = i;
    }
    // The full polytope has no facets containing it.
    let top = faces.len() - 1;
    faces[top].facet_ids.clear();

    let mut incidence = Vec::new();
    for child in &faces {
        for parent in &faces {
            if parent.dim == child.dim + 1 && is_subset(&child.vertex_ids, &parent.vertex_ids) {
                incidence.push((child.id, parent.id));
            }
        }
    }
    FaceLattice { faces, incidence }
}
