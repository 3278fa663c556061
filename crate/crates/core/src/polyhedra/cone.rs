//! Rational polyhedral cones with both representations kept canonical.

use num::traits::{Signed, Zero};

use super::dd::cone_generators;
use super::linalg::{canonical_subspace, project_with, projector};
use crate::arith::rational::{dot, is_zero_vec, primitive, QVec};
use crate::error::{Error, Result};

/// A rational polyhedral cone `{x : f·x >= 0 (f ∈ facets), e·x = 0 (e ∈ equations)}`
/// `= cone(rays) + span(lineality)`.
///
/// Rays are primitive integer vectors orthogonal to the lineality space; facet
/// normals are primitive integer vectors orthogonal to the equations; both
/// lists are sorted, and subspace bases are in reduced echelon form, so two
/// cones are equal exactly when their fields are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    dim: usize,
    rays: Vec<QVec>,
    lineality: Vec<QVec>,
    facets: Vec<QVec>,
    equations: Vec<QVec>,
}

impl Cone {
    /// The cone generated by `rays` plus the linear span of `lineality`.
    pub fn from_generators(dim: usize, rays: &[QVec], lineality: &[QVec]) -> Result<Cone> {
        check_dims(dim, rays)?;
        check_dims(dim, lineality)?;
        let dual = cone_generators(rays, lineality, dim);
        let equations = canonical_subspace(&dual.lineality, dim);
        let eq_proj = projector(&equations);
        let mut facets: Vec<QVec> = dual
            .rays
            .iter()
            .map(|f| primitive(&project_with(&eq_proj, f)))
            .filter(|f| !is_zero_vec(f))
            .collect();
        facets.sort();
        facets.dedup();
        let mut lin_rows = facets.clone();
        lin_rows.extend(equations.iter().cloned());
        let lin_basis = if lin_rows.is_empty() {
            crate::arith::matrix::nullspace(&Vec::new(), dim)
        } else {
            crate::arith::matrix::nullspace(&lin_rows, dim)
        };
        let lineality_c = canonical_subspace(&lin_basis, dim);
        let lin_dim = lineality_c.len();
        let lin_proj = projector(&lineality_c);
        let mut projected: Vec<QVec> = rays
            .iter()
            .map(|r| primitive(&project_with(&lin_proj, r)))
            .filter(|p| !is_zero_vec(p))
            .collect();
        projected.sort();
        projected.dedup();
        let need = dim.saturating_sub(lin_dim + 1 + equations.len());
        let tight: Vec<Vec<usize>> = projected
            .iter()
            .map(|p| {
                (0..facets.len())
                    .filter(|&i| dot(&facets[i], p).is_zero())
                    .collect()
            })
            .collect();
        let mut out_rays: Vec<QVec> = Vec::new();
        for (i, p) in projected.iter().enumerate() {
            if tight[i].len() < need {
                continue;
            }
            let dominated = (0..projected.len())
                .any(|j| j != i && tight[i].iter().all(|f| tight[j].binary_search(f).is_ok()));
            if !dominated {
                out_rays.push(p.clone());
            }
        }
        Ok(Cone {
            dim,
            rays: out_rays,
            lineality: lineality_c,
            facets,
            equations,
        })
    }

    /// The cone `{x : a·x >= 0 (a ∈ ineqs), e·x = 0 (e ∈ eqs)}`.
    pub fn from_inequalities(dim: usize, ineqs: &[QVec], eqs: &[QVec]) -> Result<Cone> {
        check_dims(dim, ineqs)?;
        check_dims(dim, eqs)?;
        let g = cone_generators(ineqs, eqs, dim);
        Cone::from_generators(dim, &g.rays, &g.lineality)
    }

    /// The zero cone.
    pub fn zero(dim: usize) -> Cone {
        Cone::from_generators(dim, &[], &[]).expect("zero cone")
    }

    /// Ambient dimension.
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Extreme rays modulo the lineality space.
    pub fn rays(&self) -> &[QVec] {
        &self.rays
    }

    /// Basis of the maximal linear subspace.
    pub fn lineality(&self) -> &[QVec] {
        &self.lineality
    }

    /// Facet normals.
    pub fn facets(&self) -> &[QVec] {
        &self.facets
    }

    /// Basis of the linear equations cutting out the linear span.
    pub fn equations(&self) -> &[QVec] {
        &self.equations
    }

    /// True when the lineality space is trivial.
    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// True for the cone `{0}`.
    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.dim - self.equations.len()
    }

    /// The dual cone `{y : y·x >= 0 for all x}`.
    pub fn dual(&self) -> Cone {
        Cone {
            dim: self.dim,
            rays: self.facets.clone(),
            lineality: self.equations.clone(),
            facets: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    /// Membership test.
    pub fn contains(&self, x: &[num::BigRational]) -> bool {
        self.facets.iter().all(|f| !dot(f, x).is_negative())
            && self.equations.iter().all(|e| dot(e, x).is_zero())
    }

    /// Relative-interior membership test.
    pub fn relative_interior_contains(&self, x: &[num::BigRational]) -> bool {
        self.facets.iter().all(|f| dot(f, x).is_positive())
            && self.equations.iter().all(|e| dot(e, x).is_zero())
    }

    /// Intersection with another cone.
    pub fn intersection(&self, other: &Cone) -> Result<Cone> {
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Cone::from_inequalities(self.dim, &ineqs, &eqs)
    }

    /// The smallest face containing all the given vectors.
    pub fn face_containing(&self, points: &[QVec]) -> Result<Cone> {
        let tight: Vec<QVec> = self
            .facets
            .iter()
            .filter(|f| points.iter().all(|p| dot(f, p).is_zero()))
            .cloned()
            .collect();
        let mut eqs = self.equations.clone();
        eqs.extend(tight);
        Cone::from_inequalities(self.dim, &self.facets, &eqs)
    }

    /// True when `other` is a face of `self`.
    pub fn has_face(&self, other: &Cone) -> Result<bool> {
        let mut gens = other.rays.clone();
        for l in &other.lineality {
            gens.push(l.clone());
            gens.push(l.iter().map(|x| -x).collect());
        }
        if !gens.iter().all(|g| self.contains(g)) {
            return Ok(false);
        }
        Ok(&self.face_containing(&gens)? == other)
    }

    /// True when `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Cone) -> bool {
        self.rays.iter().all(|r| other.contains(r))
            && self.lineality.iter().all(|l| {
                let neg: QVec = l.iter().map(|x| -x).collect();
                other.contains(l) && other.contains(&neg)
            })
    }
}

fn check_dims(dim: usize, vs: &[QVec]) -> Result<()> {
    if let Some(v) = vs.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} in ambient dimension {dim}",
            v.len()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::q;

    fn v(x: &[i64]) -> QVec {
        x.iter().map(|&a| q(a)).collect()
    }

    #[test]
    fn dual_of_dual_is_identity() {
        let c = Cone::from_generators(2, &[v(&[1, 0]), v(&[1, 2])], &[]).unwrap();
        assert_eq!(c.dual().dual(), c);
        let d = Cone::from_inequalities(2, c.dual().rays(), &[]).unwrap();
        assert_eq!(d, c);
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let c = Cone::from_generators(2, &[v(&[1, 0]), v(&[1, 1]), v(&[0, 1])], &[]).unwrap();
        assert_eq!(c.rays(), &[v(&[0, 1]), v(&[1, 0])]);
        assert_eq!(c.facets().len(), 2);
    }

    #[test]
    fn half_plane_is_not_pointed() {
        let c = Cone::from_inequalities(2, &[v(&[1, -1])], &[]).unwrap();
        assert!(!c.is_pointed());
        assert_eq!(c.rays().len(), 1);
        assert_eq!(c.dual().dim(), 1);
    }

    #[test]
    fn faces_of_a_quadrant() {
        let c = Cone::from_generators(2, &[v(&[1, 0]), v(&[0, 1])], &[]).unwrap();
        let ray = Cone::from_generators(2, &[v(&[1, 0])], &[]).unwrap();
        assert!(c.has_face(&ray).unwrap());
        let diag = Cone::from_generators(2, &[v(&[1, 1])], &[]).unwrap();
        assert!(!c.has_face(&diag).unwrap());
    }
}
