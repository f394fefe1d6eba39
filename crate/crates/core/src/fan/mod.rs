//! Rational polyhedral cones and fans.

mod cone;
mod hilbert;
mod polytopal;

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet};
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::closure::is_subset;
use crate::error::{Error, Result};
use crate::exactla::QVector;
use crate::feasibility::{Constraint, Relation, System};
use crate::polytope::{FaceId, Polytope};

pub use cone::Cone;
pub use hilbert::{graded_lex, hilbert_basis, HilbertBasis};
pub use polytopal::{is_polytopal, PolytopalReport};

pub type ConeId = usize;

/// A finite set of cones in `R^n`, sorted by `(dim, rays)`.
#[derive(Clone, Debug)]
pub struct Fan {
    dim: usize,
    cones: Vec<Cone>,
    /// `(τ, σ)` with `τ` a proper face of `σ`.
    face_relation: Vec<(ConeId, ConeId)>,
    source: Option<Vec<FaceId>>,
    fingerprint: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FanViolation {
    NotStronglyConvex { cone: ConeId },
    MissingFace { cone: ConeId, rays: Vec<QVector> },
    BadIntersection { a: ConeId, b: ConeId, witness: Option<QVector> },
    Duplicate { a: ConeId, b: ConeId },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanReport {
    pub violations: Vec<FanViolation>,
}

impl FanReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Fan {
    /// The fan with exactly the given cones, each given by generators.
    pub fn new(dim: usize, generators: &[Vec<QVector>]) -> Result<Fan> {
        let cones = generators
            .iter()
            .map(|g| Cone::from_generators(dim, g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Fan::assemble(dim, cones, None))
    }

    /// The cones over `maximal` together with all their faces.
    pub fn from_maximal_cones(dim: usize, maximal: &[Vec<QVector>]) -> Result<Fan> {
        let mut all: Vec<Cone> = Vec::new();
        for g in maximal {
            let c = Cone::from_generators(dim, g)?;
            if !c.is_pointed() {
                return Err(Error::Fan("cone contains a line".into()));
            }
            for face in c.face_ray_sets() {
                let rays = face.iter().map(|&i| c.rays()[i].clone()).collect();
                all.push(Cone::from_extreme_rays(dim, rays));
            }
        }
        all.sort_by(|a, b| a.rays().cmp(b.rays()));
        all.dedup_by(|a, b| a.same_as(b));
        Ok(Fan::assemble(dim, all, None))
    }

    fn assemble(dim: usize, mut cones: Vec<Cone>, source: Option<Vec<FaceId>>) -> Fan {
        let mut order: Vec<usize> = (0..cones.len()).collect();
        order.sort_by(|&a, &b| {
            (cones[a].dim(), cones[a].rays(), cones[a].lineality()).cmp(&(
                cones[b].dim(),
                cones[b].rays(),
                cones[b].lineality(),
            ))
        });
        let source = source.map(|s| order.iter().map(|&i| s[i]).collect());
        let mut sorted: Vec<Cone> = order.iter().map(|&i| cones[i].clone()).collect();
        cones.clear();
        for (i, c) in sorted.iter_mut().enumerate() {
            c.id = i;
        }
        let mut face_relation = Vec::new();
        for (s, sigma) in sorted.iter().enumerate() {
            for (t, tau) in sorted.iter().enumerate() {
                if s != t && tau.dim() < sigma.dim() && tau.lineality() == sigma.lineality() {
                    if let Some(ids) = sigma.ray_ids_of(tau.rays()) {
                        if sigma.is_face_ray_set(&ids) {
                            face_relation.push((t, s));
                        }
                    }
                }
            }
        }
        face_relation.sort_unstable();
        let mut h = DefaultHasher::new();
        dim.hash(&mut h);
        for c in &sorted {
            c.rays().hash(&mut h);
            c.lineality().hash(&mut h);
        }
        Fan {
            dim,
            cones: sorted,
            face_relation,
            source,
            fingerprint: h.finish(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone(&self, id: ConeId) -> &Cone {
        &self.cones[id]
    }

    pub fn face_relation(&self) -> &[(ConeId, ConeId)] {
        &self.face_relation
    }

    pub fn is_face(&self, tau: ConeId, sigma: ConeId) -> bool {
        tau == sigma || self.face_relation.binary_search(&(tau, sigma)).is_ok()
    }

    /// For a fan built from a polytope: the face of the polytope under each cone.
    pub fn source(&self) -> Option<&[FaceId]> {
        self.source.as_deref()
    }

    /// The cone over a face of the source polytope.
    pub fn cone_of_face(&self, face: FaceId) -> Option<ConeId> {
        self.source.as_ref()?.iter().position(|&f| f == face)
    }

    /// Hash of the cone data; equal fans have equal fingerprints.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn zero_cone(&self) -> Option<ConeId> {
        self.cones.iter().position(|c| c.dim() == 0)
    }

    /// The one-dimensional cones' generators, in cone order.
    pub fn rays(&self) -> Vec<QVector> {
        self.cones
            .iter()
            .filter(|c| c.dim() == 1 && c.is_pointed())
            .map(|c| c.rays()[0].clone())
            .collect()
    }

    pub fn find_cone(&self, rays: &[QVector]) -> Option<ConeId> {
        let mut key: Vec<QVector> = rays.iter().filter_map(QVector::primitive).collect();
        key.sort();
        key.dedup();
        self.cones.iter().position(|c| c.is_pointed() && c.rays() == key.as_slice())
    }

    pub fn maximal_cones(&self) -> Vec<ConeId> {
        (0..self.cones.len())
            .filter(|&s| !self.face_relation.iter().any(|&(t, _)| t == s))
            .collect()
    }

    /// Same cones, regardless of ids or provenance.
    pub fn same_cones(&self, other: &Fan) -> bool {
        self.dim == other.dim
            && self.cones.len() == other.cones.len()
            && self.cones.iter().zip(&other.cones).all(|(a, b)| a.same_as(b))
    }

    /// Checks the fan axioms: every cone is pointed, faces of cones are
    /// cones, and two cones meet in a common face.
    pub fn validate(&self) -> FanReport {
        let mut violations = Vec::new();
        for c in &self.cones {
            if !c.is_pointed() {
                violations.push(FanViolation::NotStronglyConvex { cone: c.id });
            }
        }
        for (i, a) in self.cones.iter().enumerate() {
            for b in &self.cones[i + 1..] {
                if a.same_as(b) {
                    violations.push(FanViolation::Duplicate { a: a.id, b: b.id });
                }
            }
        }
        for c in self.cones.iter().filter(|c| c.is_pointed()) {
            for face in c.face_ray_sets() {
                let rays: Vec<QVector> = face.iter().map(|&i| c.rays()[i].clone()).collect();
                if self.find_cone(&rays).is_none() {
                    violations.push(FanViolation::MissingFace { cone: c.id, rays });
                }
            }
        }
        for (i, a) in self.cones.iter().enumerate() {
            for b in &self.cones[i + 1..] {
                if !a.is_pointed() || !b.is_pointed() || a.same_as(b) {
                    continue;
                }
                if let Some(witness) = bad_intersection(a, b) {
                    violations.push(FanViolation::BadIntersection {
                        a: a.id,
                        b: b.id,
                        witness,
                    });
                }
            }
        }
        FanReport { violations }
    }

    /// Wall pairing: all maximal cones are full-dimensional and each of
    /// their facets lies in exactly two of them.
    pub fn is_complete(&self) -> Result<bool> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(Error::Fan(format!("{} axiom violations", report.violations.len())));
        }
        let maximal = self.maximal_cones();
        if maximal.iter().any(|&m| self.cones[m].dim() != self.dim) {
            return Ok(false);
        }
        if self.dim == 0 {
            return Ok(true);
        }
        let mut walls: BTreeMap<Vec<QVector>, usize> = BTreeMap::new();
        for &m in &maximal {
            let c = &self.cones[m];
            for i in 0..c.facet_normals().len() {
                let wall: Vec<QVector> = c.facet_ray_set(i).iter().map(|&r| c.rays()[r].clone()).collect();
                *walls.entry(wall).or_default() += 1;
            }
        }
        Ok(!walls.is_empty() && walls.values().all(|&k| k == 2))
    }

    /// The cone containing `u` in its relative interior.
    pub fn locate(&self, u: &QVector) -> Result<ConeId> {
        if u.len() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                got: u.len(),
            });
        }
        let hits: Vec<ConeId> = self
            .cones
            .iter()
            .filter(|c| c.relint_contains(u))
            .map(|c| c.id)
            .collect();
        match hits.as_slice() {
            [] => Err(Error::NotInSupport),
            [one] => Ok(*one),
            _ => Err(Error::Fan("overlapping relative interiors".into())),
        }
    }

    /// `n - dim σ` for every cone.
    pub fn orbit_table(&self) -> Vec<(ConeId, usize)> {
        self.cones.iter().map(|c| (c.id, self.dim - c.dim())).collect()
    }
}

/// A point of `a ∩ b` outside the face spanned by their common rays, or
/// `Some(None)` when the common rays do not span a face of both.
fn bad_intersection(a: &Cone, b: &Cone) -> Option<Option<QVector>> {
    let common: BTreeSet<&QVector> = a.rays().iter().filter(|r| b.rays().contains(r)).collect();
    let common: Vec<QVector> = common.into_iter().cloned().collect();
    let ia = a.ray_ids_of(&common).expect("common rays");
    let ib = b.ray_ids_of(&common).expect("common rays");
    if !a.is_face_ray_set(&ia) || !b.is_face_ray_set(&ib) {
        return Some(None);
    }
    for (cone, ids) in [(a, &ia), (b, &ib)] {
        let n = cone.ambient_dim();
        let mut sys = System::new(n);
        for c in a.membership_constraints().into_iter().chain(b.membership_constraints()) {
            sys.push(c);
        }
        sys.push(Constraint::homogeneous(cone.face_functional(ids), Relation::Gt));
        if let Some(x) = sys.find_point() {
            return Some(Some(x));
        }
    }
    None
}

/// The fan of cones over the proper faces of a polytope with the origin in
/// its interior, with the zero cone over the empty face.
pub fn fan_from_polytope(p: &Polytope) -> Result<Fan> {
    if !p.origin_interior() {
        return Err(Error::Origin);
    }
    let n = p.dim();
    let mut cones = Vec::new();
    let mut source = Vec::new();
    for face in p.faces() {
        if face.id == p.lattice().top() {
            continue;
        }
        let rays = face.vertex_ids.iter().map(|&v| p.vertices()[v].clone()).collect();
        cones.push(Cone::from_extreme_rays(n, rays));
        source.push(face.id);
    }
    let fan = Fan::assemble(n, cones, Some(source));
    debug_assert!(fan
        .face_relation
        .iter()
        .all(|&(t, s)| is_subset(
            &p.face(fan.source.as_ref().unwrap()[t]).vertex_ids,
            &p.face(fan.source.as_ref().unwrap()[s]).vertex_ids
        )));
    Ok(fan)
}

#[cfg(test)]
mod tests;
