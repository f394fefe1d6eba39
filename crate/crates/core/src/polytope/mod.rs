//! Rational convex polytopes: convex hulls, face lattices, polar duality,
//! canonical normalization and volume.

mod hull;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::closure::is_subset;
use crate::error::{Error, Result};
use crate::exactla::rational::{gcd_of_integers, lcm_of_denominators};
use crate::exactla::{QMatrix, QVector, Rational};

pub use hull::hull;

pub type FaceId = usize;

/// The inequality `⟨normal, x⟩ ≤ offset`, with `normal` primitive integral.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Facet {
    pub normal: QVector,
    #[serde(with = "crate::exactla::rational::serde_q")]
    pub offset: Rational,
}

impl Facet {
    pub fn slack(&self, x: &QVector) -> Rational {
        &self.offset - self.normal.dot(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AffineSpan {
    pub point: Option<QVector>,
    pub directions: Vec<QVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Face {
    pub id: FaceId,
    /// `-1` for the empty face.
    pub dim: isize,
    pub vertex_ids: Vec<usize>,
    /// Facets containing this face.
    pub facet_ids: Vec<usize>,
    pub affine_span: AffineSpan,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FaceLattice {
    faces: Vec<Face>,
    /// Covering pairs `(child, parent)` with `dim parent = dim child + 1`.
    incidence: Vec<(FaceId, FaceId)>,
}

impl FaceLattice {
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn incidence(&self) -> &[(FaceId, FaceId)] {
        &self.incidence
    }

    pub fn bottom(&self) -> FaceId {
        0
    }

    pub fn top(&self) -> FaceId {
        self.faces.len() - 1
    }

    pub fn children(&self, id: FaceId) -> impl Iterator<Item = FaceId> + '_ {
        self.incidence
            .iter()
            .filter(move |&&(_, p)| p == id)
            .map(|&(c, _)| c)
    }

    /// Face counts indexed by `dim + 1`.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.faces[self.top()].dim;
        let mut f = vec![0; (top + 2) as usize];
        for face in &self.faces {
            f[(face.dim + 1) as usize] += 1;
        }
        f
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polytope {
    ambient_dim: usize,
    vertices: Vec<QVector>,
    facets: Vec<Facet>,
    lattice: FaceLattice,
}

/// Result of [`Polytope::normalize`].
#[derive(Clone, Debug)]
pub struct Normalization {
    pub scale: Rational,
    pub polytope: Polytope,
    /// A vertex of the scaled polytope with coprime coordinates, if any.
    pub primitive_vertex: Option<usize>,
}

impl Polytope {
    pub fn dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn lattice(&self) -> &FaceLattice {
        &self.lattice
    }

    pub fn faces(&self) -> &[Face] {
        &self.lattice.faces
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.lattice.faces[id]
    }

    /// Faces other than the empty face and the polytope itself.
    pub fn proper_faces(&self) -> impl Iterator<Item = &Face> + '_ {
        let top = self.lattice.top();
        self.lattice.faces.iter().filter(move |f| f.dim >= 0 && f.id != top)
    }

    pub fn is_proper(&self, id: FaceId) -> bool {
        id != self.lattice.bottom() && id != self.lattice.top() && id < self.lattice.faces.len()
    }

    pub fn find_face(&self, vertex_ids: &[usize]) -> Option<FaceId> {
        self.lattice
            .faces
            .iter()
            .find(|f| f.vertex_ids == vertex_ids)
            .map(|f| f.id)
    }

    pub fn vertex_index(&self, v: &QVector) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    /// Face id of facet `i`.
    pub fn facet_face(&self, i: usize) -> FaceId {
        self.lattice
            .faces
            .iter()
            .find(|f| f.dim == self.ambient_dim as isize - 1 && f.facet_ids == [i])
            .map(|f| f.id)
            .expect("every facet is a face")
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.facets.iter().all(|f| !f.slack(x).is_negative())
    }

    /// Strict form: `⟨a, 0⟩ < b` for every facet.
    pub fn origin_interior(&self) -> bool {
        self.facets.iter().all(|f| f.offset.is_positive())
    }

    pub fn is_face_of(&self, a: FaceId, b: FaceId) -> bool {
        is_subset(&self.face(a).vertex_ids, &self.face(b).vertex_ids)
    }

    /// The polar `{v : ⟨v, u⟩ ≥ -1 for all u ∈ P}`, whose vertices are
    /// `-a/b` over the facets `⟨a, x⟩ ≤ b`.
    pub fn polar(&self) -> Result<Polytope> {
        if !self.origin_interior() {
            return Err(Error::Origin);
        }
        let points: Vec<QVector> = self
            .facets
            .iter()
            .map(|f| (-&f.normal).scale(&f.offset.recip()))
            .collect();
        hull(&points)
    }

    /// The face of `polar` dual to `face`: it pairs with `face` at `-1` and
    /// the two dimensions add up to `n - 1`.
    pub fn dual_face(&self, polar: &Polytope, face: FaceId) -> Result<FaceId> {
        if !self.origin_interior() {
            return Err(Error::Origin);
        }
        if !self.is_proper(face) {
            return Err(Error::FaceRange(face));
        }
        let mut ids: Vec<usize> = self
            .face(face)
            .facet_ids
            .iter()
            .map(|&i| {
                let f = &self.facets[i];
                let y = (-&f.normal).scale(&f.offset.recip());
                polar.vertex_index(&y)
            })
            .collect::<Option<_>>()
            .ok_or(Error::FaceRange(face))?;
        ids.sort_unstable();
        polar.find_face(&ids).ok_or(Error::FaceRange(face))
    }

    /// `λ P` for `λ > 0`.
    pub fn scaled(&self, lambda: &Rational) -> Polytope {
        assert!(lambda.is_positive(), "scale must be positive");
        let faces = self
            .lattice
            .faces
            .iter()
            .map(|f| Face {
                affine_span: AffineSpan {
                    point: f.affine_span.point.as_ref().map(|p| p.scale(lambda)),
                    directions: f.affine_span.directions.iter().map(|d| d.scale(lambda)).collect(),
                },
                ..f.clone()
            })
            .collect();
        Polytope {
            ambient_dim: self.ambient_dim,
            vertices: self.vertices.iter().map(|v| v.scale(lambda)).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    normal: f.normal.clone(),
                    offset: &f.offset * lambda,
                })
                .collect(),
            lattice: FaceLattice {
                faces,
                incidence: self.lattice.incidence.clone(),
            },
        }
    }

    /// Smallest `λ > 0` making every vertex of `λ P` integral.
    ///
    /// Writing the coordinates as `w / D` with `D` the common denominator and
    /// `g` the gcd of all numerators, the admissible scales are the positive
    /// integer multiples of `D / g`. A primitive vertex exists only at the
    /// minimal scale, and only if some vertex of `(D/g) P` has coprime
    /// coordinates; `primitive_vertex` reports it.
    pub fn normalize(&self) -> Normalization {
        let coords = self.vertices.iter().flat_map(|v| v.iter());
        let denom = lcm_of_denominators(coords.clone());
        let d = Rational::from_integer(denom);
        let nums: Vec<BigInt> = coords.map(|x| (x * &d).to_integer()).collect();
        let g = gcd_of_integers(&nums);
        let scale = if g.is_zero() {
            Rational::one()
        } else {
            d / Rational::from_integer(g)
        };
        let polytope = self.scaled(&scale);
        let primitive_vertex = polytope.vertices.iter().position(QVector::is_primitive);
        Normalization {
            scale,
            polytope,
            primitive_vertex,
        }
    }

    /// Euclidean volume: the boundary is triangulated by pulling each facet
    /// from its lexicographically first vertex, and every boundary simplex is
    /// coned to the vertex centroid.
    pub fn volume(&self) -> Rational {
        let n = self.ambient_dim;
        let count = Rational::from_integer(BigInt::from(self.vertices.len()));
        let centroid = self
            .vertices
            .iter()
            .fold(QVector::zeros(n), |acc, v| &acc + v)
            .scale(&count.recip());
        let mut total = Rational::zero();
        for i in 0..self.facets.len() {
            for simplex in self.pulling_triangulation(self.facet_face(i)) {
                let rows: Vec<QVector> = simplex.iter().map(|&v| &self.vertices[v] - &centroid).collect();
                let det = QMatrix::from_rows(rows)
                    .expect("square")
                    .determinant()
                    .expect("square");
                total += det.abs();
            }
        }
        let factorial: BigInt = (1..=n).map(BigInt::from).product();
        total / Rational::from_integer(factorial)
    }

    /// Pulling triangulation of a face into simplices given as vertex ids.
    pub fn pulling_triangulation(&self, face: FaceId) -> Vec<Vec<usize>> {
        let f = self.face(face);
        if f.dim <= 0 {
            return vec![f.vertex_ids.clone()];
        }
        let apex = f.vertex_ids[0];
        let mut out = Vec::new();
        for child in self.lattice.children(face) {
            if self.face(child).vertex_ids.contains(&apex) {
                continue;
            }
            for mut s in self.pulling_triangulation(child) {
                s.push(apex);
                out.push(s);
            }
        }
        out
    }
}
