use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::closure::{for_each_combination, intersection_closure, intersect, is_subset};
use crate::error::{Error, Result};
use crate::exactla::{
    orthogonal_complement, orthogonal_residual, span_basis, LatticeBasis, LatticeSplit, QMatrix,
    QVector,
};
use crate::feasibility::{Constraint, Relation, System};

/// A rational polyhedral cone `cone(rays) + span(lineality)`.
///
/// Rays are primitive integral, orthogonal to the lineality space, extreme
/// modulo lineality and sorted. The H-representation is kept alongside:
/// `facets` are inward normals inside `span ∩ lineality^⊥` and `equations`
/// span the orthogonal complement of the linear span.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cone {
    pub id: usize,
    #[serde(skip)]
    ambient_dim: usize,
    rays: Vec<QVector>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    lineality: Vec<QVector>,
    dim: usize,
    #[serde(skip)]
    span: LatticeBasis,
    #[serde(skip)]
    facets: Vec<QVector>,
    #[serde(skip)]
    equations: Vec<QVector>,
}

impl Cone {
    pub fn zero(n: usize) -> Cone {
        Cone::assemble(n, Vec::new(), Vec::new())
    }

    /// Cone generated by arbitrary nonzero vectors. Detects the lineality
    /// space by exact feasibility and drops redundant generators.
    pub fn from_generators(n: usize, generators: &[QVector]) -> Result<Cone> {
        for g in generators {
            if g.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: g.len(),
                });
            }
        }
        let gens: Vec<QVector> = generators
            .iter()
            .filter_map(QVector::primitive)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();

        // g spans a line of the cone iff -g is a nonnegative combination.
        let in_lineality: Vec<QVector> = gens
            .iter()
            .filter(|g| {
                let m = gens.len();
                let mut sys = System::new(m);
                for i in 0..m {
                    sys.push(Constraint::homogeneous(QVector::unit(m, i), Relation::Ge));
                }
                for k in 0..n {
                    let coeffs: QVector = gens.iter().map(|h| h[k].clone()).collect();
                    sys.push(Constraint::new(coeffs, g[k].clone(), Relation::Eq));
                }
                sys.is_feasible()
            })
            .cloned()
            .collect();
        let lineality_basis = span_basis(&in_lineality, n);
        let lineality = if lineality_basis.is_empty() {
            Vec::new()
        } else {
            LatticeSplit::new(&lineality_basis, n)?.saturation().vectors.clone()
        };

        let projected: Vec<QVector> = gens
            .iter()
            .filter_map(|g| orthogonal_residual(g, &lineality_basis).primitive())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let draft = Cone::assemble(n, projected, lineality);
        let q_dim = draft.dim - draft.lineality.len();
        let extreme: Vec<QVector> = draft
            .rays
            .iter()
            .filter(|r| {
                let tight: Vec<QVector> = draft
                    .facets
                    .iter()
                    .filter(|f| f.dot(r).is_zero())
                    .cloned()
                    .collect();
                span_basis(&tight, n).len() + 1 == q_dim
            })
            .cloned()
            .collect();
        Ok(Cone::assemble(n, extreme, draft.lineality))
    }

    /// Pointed cone from rays already known to be extreme.
    pub(crate) fn from_extreme_rays(n: usize, rays: Vec<QVector>) -> Cone {
        let mut rays: Vec<QVector> = rays.iter().filter_map(QVector::primitive).collect();
        rays.sort();
        rays.dedup();
        Cone::assemble(n, rays, Vec::new())
    }

    /// Rays must be primitive, extreme modulo lineality and orthogonal to it.
    pub(crate) fn from_parts(n: usize, mut rays: Vec<QVector>, lineality: Vec<QVector>) -> Cone {
        rays.sort();
        rays.dedup();
        Cone::assemble(n, rays, lineality)
    }

    fn assemble(n: usize, rays: Vec<QVector>, lineality: Vec<QVector>) -> Cone {
        let mut gens = rays.clone();
        gens.extend(lineality.iter().cloned());
        let basis = span_basis(&gens, n);
        let span = LatticeSplit::new(&basis, n)
            .expect("integral generators")
            .saturation()
            .clone();
        let dim = basis.len();
        let equations = if dim == n {
            Vec::new()
        } else {
            orthogonal_complement(&basis, n)
        };

        // Facet normals live in span ∩ lineality^⊥.
        let mut constraints = lineality.clone();
        constraints.extend(equations.iter().cloned());
        let q_basis = orthogonal_complement(&constraints, n);
        let q_dim = q_basis.len();
        let mut facets = BTreeSet::new();
        if q_dim > 0 {
            let pairing: Vec<QVector> = rays
                .iter()
                .map(|r| q_basis.iter().map(|q| q.dot(r)).collect())
                .collect();
            for_each_combination(rays.len(), q_dim - 1, |combo| {
                let rows: Vec<QVector> = combo.iter().map(|&i| pairing[i].clone()).collect();
                let alpha = orthogonal_complement(&rows, q_dim);
                if alpha.len() != 1 {
                    return;
                }
                let normal = q_basis
                    .iter()
                    .zip(alpha[0].iter())
                    .fold(QVector::zeros(n), |acc, (q, a)| &acc + &q.scale(a));
                let values: Vec<_> = rays.iter().map(|r| normal.dot(r)).collect();
                let normal = if values.iter().all(|v| !v.is_negative()) {
                    normal
                } else if values.iter().all(|v| !v.is_positive()) {
                    -normal
                } else {
                    return;
                };
                facets.insert(normal.primitive().expect("nonzero normal"));
            });
        }

        Cone {
            id: 0,
            ambient_dim: n,
            rays,
            lineality,
            dim,
            span,
            facets: facets.into_iter().collect(),
            equations,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[QVector] {
        &self.rays
    }

    /// Lattice basis of the lineality space.
    pub fn lineality(&self) -> &[QVector] {
        &self.lineality
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Saturated lattice basis of the linear span `V(σ)`.
    pub fn span_basis(&self) -> &LatticeBasis {
        &self.span
    }

    pub fn facet_normals(&self) -> &[QVector] {
        &self.facets
    }

    pub fn equations(&self) -> &[QVector] {
        &self.equations
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.equations.iter().all(|e| e.dot(x).is_zero())
            && self.facets.iter().all(|f| !f.dot(x).is_negative())
    }

    pub fn relint_contains(&self, x: &QVector) -> bool {
        self.equations.iter().all(|e| e.dot(x).is_zero())
            && self.facets.iter().all(|f| f.dot(x).is_positive())
    }

    pub fn same_as(&self, other: &Cone) -> bool {
        self.rays == other.rays && self.lineality == other.lineality
    }

    /// Ray indices on which facet `i` vanishes.
    pub fn facet_ray_set(&self, i: usize) -> Vec<usize> {
        (0..self.rays.len())
            .filter(|&r| self.facets[i].dot(&self.rays[r]).is_zero())
            .collect()
    }

    /// Ray sets of all faces, from the minimal face to the cone itself.
    pub fn face_ray_sets(&self) -> Vec<Vec<usize>> {
        let facet_sets: Vec<Vec<usize>> = (0..self.facets.len()).map(|i| self.facet_ray_set(i)).collect();
        let mut sets = intersection_closure(&facet_sets);
        sets.insert((0..self.rays.len()).collect());
        sets.insert(self.closure_of(&[]));
        let mut v: Vec<Vec<usize>> = sets.into_iter().collect();
        v.sort_by_key(|s| s.len());
        v
    }

    /// Rays of the smallest face containing the given rays.
    pub fn closure_of(&self, ray_ids: &[usize]) -> Vec<usize> {
        let mut acc: Vec<usize> = (0..self.rays.len()).collect();
        for i in 0..self.facets.len() {
            let s = self.facet_ray_set(i);
            if is_subset(ray_ids, &s) {
                acc = intersect(&acc, &s);
            }
        }
        acc
    }

    pub fn is_face_ray_set(&self, ray_ids: &[usize]) -> bool {
        self.closure_of(ray_ids) == ray_ids
    }

    /// A functional, nonnegative on the cone, vanishing exactly on the
    /// smallest face containing the given rays.
    pub fn face_functional(&self, ray_ids: &[usize]) -> QVector {
        self.facets
            .iter()
            .enumerate()
            .filter(|(i, _)| is_subset(ray_ids, &self.facet_ray_set(*i)))
            .fold(QVector::zeros(self.ambient_dim), |acc, (_, f)| &acc + f)
    }

    /// Indices of `vectors` within this cone's ray list.
    pub fn ray_ids_of(&self, vectors: &[QVector]) -> Option<Vec<usize>> {
        let mut ids: Vec<usize> = vectors
            .iter()
            .map(|v| self.rays.binary_search(v).ok())
            .collect::<Option<_>>()?;
        ids.sort_unstable();
        Some(ids)
    }

    /// Constraints `x ∈ σ` over `n` variables.
    pub fn membership_constraints(&self) -> Vec<Constraint> {
        let mut out: Vec<Constraint> = self
            .equations
            .iter()
            .map(|e| Constraint::homogeneous(e.clone(), Relation::Eq))
            .collect();
        out.extend(
            self.facets
                .iter()
                .map(|f| Constraint::homogeneous(f.clone(), Relation::Ge)),
        );
        out
    }

    /// The dual cone `{v : ⟨v, u⟩ ≥ 0 for all u ∈ σ}`.
    pub fn dual(&self) -> Cone {
        let n = self.ambient_dim;
        let lineality = if self.equations.is_empty() {
            Vec::new()
        } else {
            LatticeSplit::new(&self.equations, n)
                .expect("integral")
                .saturation()
                .vectors
                .clone()
        };
        Cone::from_parts(n, self.facets.clone(), lineality)
    }

    pub fn rank_of(&self, ray_ids: &[usize]) -> usize {
        let rows: Vec<QVector> = ray_ids.iter().map(|&i| self.rays[i].clone()).collect();
        if rows.is_empty() {
            0
        } else {
            QMatrix::from_rows(rows).expect("arity").rank()
        }
    }
}
