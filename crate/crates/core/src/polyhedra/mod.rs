//! Exact rational convex geometry: polytopes and cones in both
//! representations, face lattices, duals, Minkowski sums and membership.

mod cone;
mod dd;
mod linalg;
mod polytope;

pub use cone::Cone;
pub use polytope::{segment, Face, HalfSpace, Polytope};

use crate::arith::rational::{QVec, Q};
use crate::error::Result;

/// Convex hull of a finite point set.
pub fn hull(points: &[QVec]) -> Result<Polytope> {
    Polytope::hull(points)
}

/// The bounded polytope cut out by inequalities and equations.
pub fn from_inequalities(
    ambient: usize,
    ineqs: &[HalfSpace],
    eqs: &[HalfSpace],
) -> Result<Polytope> {
    Polytope::from_inequalities(ambient, ineqs, eqs)
}

/// The dual cone.
pub fn cone_dual(c: &Cone) -> Cone {
    c.dual()
}

/// The face lattice of a polytope (nonempty faces).
pub fn faces(p: &Polytope) -> Vec<Face> {
    p.faces()
}

/// Minkowski sum.
pub fn minkowski(a: &Polytope, b: &Polytope) -> Result<Polytope> {
    a.minkowski(b)
}

/// Dilation by a positive rational.
pub fn scale(p: &Polytope, t: &Q) -> Result<Polytope> {
    p.scale(t)
}

/// Membership.
pub fn contains(p: &Polytope, x: &[Q]) -> bool {
    p.contains(x)
}

/// Relative-interior membership.
pub fn interior_contains(p: &Polytope, x: &[Q]) -> bool {
    p.interior_contains(x)
}
