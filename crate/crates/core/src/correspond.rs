//! Combinatorial certificate that the boundary of the horofunction
//! compactification of `‖·‖_P` matches the face complex of `P°`.

use std::collections::BTreeSet;

use num_traits::One;
use serde::Serialize;

use crate::error::Result;
use crate::exactla::{QVector, Rational};
use crate::horo::{classify_limit_horo, PolyNorm};
use crate::polytope::{FaceId, Polytope};
use crate::toric::{classify_limit_real, PathSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub id: usize,
    pub dim: usize,
    pub label: String,
}

/// Cells with the relation "`a` lies in the closure of `b`".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellComplex {
    pub cells: Vec<Cell>,
    /// Strict pairs `(a, b)`.
    pub closure: Vec<(usize, usize)>,
}

impl CellComplex {
    /// Cell counts indexed by dimension.
    pub fn graded_counts(&self) -> Vec<usize> {
        let top = self.cells.iter().map(|c| c.dim).max().map_or(0, |d| d + 1);
        let mut counts = vec![0; top];
        for c in &self.cells {
            counts[c.dim] += 1;
        }
        counts
    }

    fn index_of(&self, label: &str) -> Option<usize> {
        self.cells.iter().position(|c| c.label == label)
    }
}

fn proper_faces(p: &Polytope) -> Vec<FaceId> {
    p.proper_faces().map(|f| f.id).collect()
}

fn face_label(f: FaceId) -> String {
    format!("F{f}")
}

/// One cell `R^n / V(σ_F)` per proper face `F`; the cell of `F1` lies in the
/// closure of the cell of `F2` iff `F2 ⊂ F1`.
pub fn boundary_complex(p: &Polytope) -> Result<CellComplex> {
    p.polar()?;
    let n = p.dim() as isize;
    let faces = proper_faces(p);
    let cells = faces
        .iter()
        .enumerate()
        .map(|(id, &f)| Cell {
            id,
            dim: (n - 1 - p.face(f).dim) as usize,
            label: face_label(f),
        })
        .collect();
    let mut closure = Vec::new();
    for (a, &f1) in faces.iter().enumerate() {
        for (b, &f2) in faces.iter().enumerate() {
            if f1 != f2 && p.is_face_of(f2, f1) {
                closure.push((a, b));
            }
        }
    }
    Ok(CellComplex { cells, closure })
}

/// The proper faces of `P°` ordered by inclusion.
pub fn moment_image_complex(p: &Polytope) -> Result<CellComplex> {
    let polar = p.polar()?;
    let faces = proper_faces(&polar);
    let cells = faces
        .iter()
        .enumerate()
        .map(|(id, &e)| Cell {
            id,
            dim: polar.face(e).dim as usize,
            label: face_label(e),
        })
        .collect();
    let mut closure = Vec::new();
    for (a, &e1) in faces.iter().enumerate() {
        for (b, &e2) in faces.iter().enumerate() {
            if e1 != e2 && polar.is_face_of(e1, e2) {
                closure.push((a, b));
            }
        }
    }
    Ok(CellComplex { cells, closure })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceCheck {
    pub face: FaceId,
    pub dual_face: FaceId,
    pub face_dim: isize,
    pub dual_dim: isize,
    /// Cell dimension equals `dim F°`, `dim F + dim F° = n − 1`, and
    /// `⟨x, y⟩ = −1` on all vertex pairs.
    pub dims_ok: bool,
    /// A path towards the cone over `F` lands on `F°` and on `σ_F`.
    pub classifiers_agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub faces: Vec<FaceCheck>,
    pub bijection_ok: bool,
    pub dim_checks_ok: bool,
    pub incidence_check: bool,
    pub moment_image_match: bool,
    pub classifier_coherence: bool,
    pub boundary_cells: Vec<usize>,
    pub moment_cells: Vec<usize>,
}

impl CorrespondenceReport {
    pub fn passes(&self) -> bool {
        self.bijection_ok
            && self.dim_checks_ok
            && self.incidence_check
            && self.moment_image_match
            && self.classifier_coherence
    }

    pub fn cell_count(&self) -> usize {
        self.boundary_cells.iter().sum()
    }
}

pub fn verify_correspondence(p: &Polytope) -> Result<CorrespondenceReport> {
    let norm = PolyNorm::new(p)?;
    let polar = norm.polar();
    let fan = norm.fan();
    let n = p.dim();
    let boundary = boundary_complex(p)?;
    let moment = moment_image_complex(p)?;
    let faces = proper_faces(p);

    let duals: Vec<FaceId> = faces
        .iter()
        .map(|&f| p.dual_face(polar, f))
        .collect::<Result<_>>()?;
    let image: BTreeSet<FaceId> = duals.iter().copied().collect();
    let polar_faces: BTreeSet<FaceId> = proper_faces(polar).into_iter().collect();
    let bijection_ok = image.len() == duals.len() && image == polar_faces;

    let mut checks = Vec::with_capacity(faces.len());
    for (i, (&f, &e)) in faces.iter().zip(&duals).enumerate() {
        let face = p.face(f);
        let dual = polar.face(e);
        let pairing = face.vertex_ids.iter().all(|&x| {
            dual.vertex_ids
                .iter()
                .all(|&y| p.vertices()[x].dot(&polar.vertices()[y]) == -Rational::one())
        });
        let dims_ok = pairing
            && boundary.cells[i].dim as isize == dual.dim
            && face.dim + dual.dim == n as isize - 1;

        let cone = fan.cone_of_face(f).expect("every proper face has a cone");
        let rays = fan.cone(cone).rays();
        let count = Rational::from_integer(rays.len().into());
        let u = rays
            .iter()
            .fold(QVector::zeros(n), |acc, r| &acc + r)
            .scale(&count.recip());
        let path = PathSpec::real(u, QVector::zeros(n));
        let horo = classify_limit_horo(&norm, &path)?;
        let real = classify_limit_real(fan, &path)?;
        let classifiers_agree = horo.face == f && horo.dual_face == e && real.cone == cone;
        checks.push(FaceCheck {
            face: f,
            dual_face: e,
            face_dim: face.dim,
            dual_dim: dual.dim,
            dims_ok,
            classifiers_agree,
        });
    }

    // Transport the boundary closure relation along F ↦ F° and compare.
    let transported: BTreeSet<(usize, usize)> = boundary
        .closure
        .iter()
        .filter_map(|&(a, b)| {
            let ma = moment.index_of(&face_label(duals[a]))?;
            let mb = moment.index_of(&face_label(duals[b]))?;
            Some((ma, mb))
        })
        .collect();
    let moment_pairs: BTreeSet<(usize, usize)> = moment.closure.iter().copied().collect();
    let incidence_check = bijection_ok
        && transported.len() == boundary.closure.len()
        && transported == moment_pairs;

    let boundary_cells = boundary.graded_counts();
    let moment_cells = moment.graded_counts();
    Ok(CorrespondenceReport {
        bijection_ok,
        dim_checks_ok: checks.iter().all(|c| c.dims_ok),
        incidence_check,
        moment_image_match: boundary_cells == moment_cells && !boundary_cells.is_empty(),
        classifier_coherence: checks.iter().all(|c| c.classifiers_agree),
        faces: checks,
        boundary_cells,
        moment_cells,
    })
}
