//! Bounded rational polytopes with canonical vertex and facet descriptions.

use std::collections::BTreeSet;

use num::traits::{One, Signed, Zero};

use super::dd::cone_generators;
use crate::arith::matrix::{rank_of, rref, solve};
use crate::arith::rational::{dot, fmt_q, fmt_qvec, primitive, q, QVec, Q};
use crate::datum::Limits;
use crate::error::{Error, Result};

/// An affine inequality `normal·x + offset >= 0` (or equation `= 0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    /// Primitive integer normal vector.
    pub normal: QVec,
    /// Offset.
    pub offset: Q,
}

impl HalfSpace {
    /// `normal·x + offset >= 0`.
    pub fn new(normal: QVec, offset: Q) -> HalfSpace {
        HalfSpace { normal, offset }
    }

    /// Value `normal·x + offset`.
    pub fn eval(&self, x: &[Q]) -> Q {
        dot(&self.normal, x) + &self.offset
    }

    /// Human-readable form.
    pub fn describe(&self) -> String {
        format!(
            "{}·x + {} >= 0",
            fmt_qvec(&self.normal),
            fmt_q(&self.offset)
        )
    }
}

/// A face of a polytope, given by the indices of its vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    /// Affine dimension.
    pub dim: usize,
    /// Indices into [`Polytope::vertices`], sorted.
    pub vertices: Vec<usize>,
}

/// A bounded polytope `conv(vertices) = {x : facets >= 0, equations = 0}`.
///
/// Vertices and facets are sorted; facet normals are primitive integer vectors
/// orthogonal to the linear parts of the equations, so structural equality is
/// set equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polytope {
    ambient: usize,
    vertices: Vec<QVec>,
    facets: Vec<HalfSpace>,
    equations: Vec<HalfSpace>,
}

impl Polytope {
    /// The empty polytope in the given ambient dimension.
    pub fn empty(ambient: usize) -> Polytope {
        Polytope {
            ambient,
            vertices: Vec::new(),
            facets: Vec::new(),
            equations: Vec::new(),
        }
    }

    /// Convex hull of a finite point set (default limits).
    pub fn hull(points: &[QVec]) -> Result<Polytope> {
        Polytope::hull_with(points, &Limits::default())
    }

    /// Convex hull of a finite point set.
    pub fn hull_with(points: &[QVec], limits: &Limits) -> Result<Polytope> {
        let Some(first) = points.first() else {
            return Err(Error::EmptyInput("hull of no points".into()));
        };
        let d = first.len();
        if points.iter().any(|p| p.len() != d) {
            return Err(Error::DimensionMismatch(
                "points of different lengths".into(),
            ));
        }
        if d > limits.dim_cap {
            return Err(Error::DimensionCap {
                dim: d,
                cap: limits.dim_cap,
                what: "convex hull".into(),
            });
        }
        let mut pts: Vec<QVec> = points.to_vec();
        pts.sort();
        pts.dedup();
        let lifted: Vec<QVec> = pts
            .iter()
            .map(|p| {
                let mut v = vec![Q::one()];
                v.extend(p.iter().cloned());
                v
            })
            .collect();
        let dual = cone_generators(&lifted, &[], d + 1);
        let equations = canonical_equations(&dual.lineality, d);
        let eq_normals: Vec<QVec> = equations.iter().map(|e| e.normal.clone()).collect();
        let mut facets: Vec<HalfSpace> = Vec::new();
        for r in &dual.rays {
            let h = HalfSpace::new(r[1..].to_vec(), r[0].clone());
            let h = reduce_modulo(&h, &equations);
            if h.normal.iter().all(|x| x.is_zero()) {
                continue;
            }
            facets.push(normalize(h));
        }
        facets.sort();
        facets.dedup();
        let mut vertices = Vec::new();
        for p in &pts {
            let mut tight: Vec<QVec> = facets
                .iter()
                .filter(|f| f.eval(p).is_zero())
                .map(|f| f.normal.clone())
                .collect();
            tight.extend(eq_normals.iter().cloned());
            if rank_of(&tight) == d {
                vertices.push(p.clone());
            }
        }
        Ok(Polytope {
            ambient: d,
            vertices,
            facets,
            equations,
        })
    }

    /// The polytope `{x : h >= 0 (h ∈ ineqs), e = 0 (e ∈ eqs)}` (default limits).
    pub fn from_inequalities(
        ambient: usize,
        ineqs: &[HalfSpace],
        eqs: &[HalfSpace],
    ) -> Result<Polytope> {
        Polytope::from_inequalities_with(ambient, ineqs, eqs, &Limits::default())
    }

    /// The polytope `{x : h >= 0 (h ∈ ineqs), e = 0 (e ∈ eqs)}`; errors when unbounded.
    pub fn from_inequalities_with(
        ambient: usize,
        ineqs: &[HalfSpace],
        eqs: &[HalfSpace],
        limits: &Limits,
    ) -> Result<Polytope> {
        limits.check_vertex_dim(ambient, "vertex enumeration")?;
        let lift = |h: &HalfSpace| -> QVec {
            let mut v = vec![h.offset.clone()];
            v.extend(h.normal.iter().cloned());
            v
        };
        let mut rows: Vec<QVec> = ineqs.iter().map(lift).collect();
        let mut t = vec![Q::zero(); ambient + 1];
        t[0] = Q::one();
        rows.push(t);
        let erows: Vec<QVec> = eqs.iter().map(lift).collect();
        let g = cone_generators(&rows, &erows, ambient + 1);
        let bounded_dir = g.rays.iter().any(|r| r[0].is_zero()) || !g.lineality.is_empty();
        let verts: Vec<QVec> = g
            .rays
            .iter()
            .filter(|r| r[0].is_positive())
            .map(|r| r[1..].iter().map(|x| x / &r[0]).collect())
            .collect();
        if verts.is_empty() {
            return Ok(Polytope::empty(ambient));
        }
        if bounded_dir {
            return Err(Error::Unbounded(
                "inequality system has a recession direction".into(),
            ));
        }
        Polytope::hull_with(&verts, limits)
    }

    /// Ambient dimension.
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Sorted vertices.
    pub fn vertices(&self) -> &[QVec] {
        &self.vertices
    }

    /// Sorted facets.
    pub fn facets(&self) -> &[HalfSpace] {
        &self.facets
    }

    /// Affine-hull equations.
    pub fn equations(&self) -> &[HalfSpace] {
        &self.equations
    }

    /// True for the empty polytope.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Affine dimension (`-1` for the empty polytope).
    pub fn dim(&self) -> isize {
        if self.is_empty() {
            -1
        } else {
            self.ambient as isize - self.equations.len() as isize
        }
    }

    /// Membership test.
    pub fn contains(&self, x: &[Q]) -> bool {
        !self.is_empty()
            && self.facets.iter().all(|f| !f.eval(x).is_negative())
            && self.equations.iter().all(|e| e.eval(x).is_zero())
    }

    /// Relative-interior membership test (strict on every facet).
    pub fn interior_contains(&self, x: &[Q]) -> bool {
        !self.is_empty()
            && self.facets.iter().all(|f| f.eval(x).is_positive())
            && self.equations.iter().all(|e| e.eval(x).is_zero())
    }

    /// The dilation `t·P` for a positive rational `t`.
    pub fn scale(&self, t: &Q) -> Result<Polytope> {
        if !t.is_positive() {
            return Err(Error::InvalidLevel("scale factor must be positive".into()));
        }
        if self.is_empty() {
            return Ok(self.clone());
        }
        let pts: Vec<QVec> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * t).collect())
            .collect();
        Polytope::hull(&pts)
    }

    /// The translate `P + v`.
    pub fn translate(&self, v: &[Q]) -> Result<Polytope> {
        if self.is_empty() {
            return Ok(self.clone());
        }
        let pts: Vec<QVec> = self
            .vertices
            .iter()
            .map(|p| p.iter().zip(v).map(|(a, b)| a + b).collect())
            .collect();
        Polytope::hull(&pts)
    }

    /// Minkowski sum `P + Q`.
    pub fn minkowski(&self, other: &Polytope) -> Result<Polytope> {
        if self.is_empty() || other.is_empty() {
            return Ok(Polytope::empty(self.ambient));
        }
        let mut pts = Vec::new();
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        Polytope::hull(&pts)
    }

    /// Intersection with another polytope.
    pub fn intersection(&self, other: &Polytope, limits: &Limits) -> Result<Polytope> {
        if self.is_empty() || other.is_empty() {
            return Ok(Polytope::empty(self.ambient));
        }
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Polytope::from_inequalities_with(self.ambient, &ineqs, &eqs, limits)
    }

    /// Affine dimension of a subset of the vertices.
    pub fn affine_rank(points: &[QVec]) -> isize {
        match points.split_first() {
            None => -1,
            Some((p0, rest)) => {
                let diffs: Vec<QVec> = rest
                    .iter()
                    .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
                    .collect();
                rank_of(&diffs) as isize
            }
        }
    }

    /// All nonempty faces (including `P` itself), sorted by dimension and
    /// vertex indices. Faces of codimension at least two are intersections of
    /// facets.
    pub fn faces(&self) -> Vec<Face> {
        if self.is_empty() {
            return Vec::new();
        }
        let facet_sets: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|f| {
                (0..self.vertices.len())
                    .filter(|&i| f.eval(&self.vertices[i]).is_zero())
                    .collect()
            })
            .collect();
        let all: BTreeSet<usize> = (0..self.vertices.len()).collect();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        seen.insert(all.clone());
        let mut frontier = vec![all];
        while let Some(f) = frontier.pop() {
            for s in &facet_sets {
                let meet: BTreeSet<usize> = f.intersection(s).cloned().collect();
                if !meet.is_empty() && meet != f && seen.insert(meet.clone()) {
                    frontier.push(meet);
                }
            }
        }
        let mut faces: Vec<Face> = seen
            .into_iter()
            .map(|s| {
                let pts: Vec<QVec> = s.iter().map(|&i| self.vertices[i].clone()).collect();
                Face {
                    dim: Polytope::affine_rank(&pts) as usize,
                    vertices: s.into_iter().collect(),
                }
            })
            .collect();
        faces.sort();
        faces
    }

    /// Number of faces of each dimension `0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let d = self.dim();
        if d < 0 {
            return Vec::new();
        }
        let mut f = vec![0; d as usize + 1];
        for face in self.faces() {
            f[face.dim] += 1;
        }
        f
    }

    /// Vertex coordinates of a face.
    pub fn face_points(&self, face: &Face) -> Vec<QVec> {
        face.vertices
            .iter()
            .map(|&i| self.vertices[i].clone())
            .collect()
    }

    /// True when every vertex is integral.
    pub fn is_lattice_polytope(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| v.iter().all(|x| x.is_integer()))
    }
}

fn canonical_equations(lineality: &[QVec], d: usize) -> Vec<HalfSpace> {
    if lineality.is_empty() {
        return Vec::new();
    }
    let reordered: Vec<QVec> = lineality
        .iter()
        .map(|v| {
            let mut r = v[1..].to_vec();
            r.push(v[0].clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&reordered);
    r.into_iter()
        .take(pivots.len())
        .map(|row| {
            let p = primitive(&row);
            let lead_neg = p
                .iter()
                .find(|x| !x.is_zero())
                .is_some_and(|x| x.is_negative());
            let p: QVec = if lead_neg {
                p.iter().map(|x| -x).collect()
            } else {
                p
            };
            HalfSpace::new(p[..d].to_vec(), p[d].clone())
        })
        .collect()
}

fn reduce_modulo(h: &HalfSpace, equations: &[HalfSpace]) -> HalfSpace {
    if equations.is_empty() {
        return h.clone();
    }
    let m: Vec<QVec> = equations.iter().map(|e| e.normal.clone()).collect();
    let gram: Vec<QVec> = m
        .iter()
        .map(|a| m.iter().map(|b| dot(a, b)).collect())
        .collect();
    let rhs: QVec = m.iter().map(|a| dot(a, &h.normal)).collect();
    let lam = solve(&gram, &rhs).expect("independent equations");
    let mut normal = h.normal.clone();
    let mut offset = h.offset.clone();
    for (e, l) in equations.iter().zip(&lam) {
        for (n, x) in normal.iter_mut().zip(&e.normal) {
            *n -= x * l;
        }
        offset -= &e.offset * l;
    }
    HalfSpace::new(normal, offset)
}

fn normalize(h: HalfSpace) -> HalfSpace {
    let p = primitive(&h.normal);
    let idx = h
        .normal
        .iter()
        .position(|x| !x.is_zero())
        .expect("nonzero normal");
    let factor = &p[idx] / &h.normal[idx];
    HalfSpace::new(p, h.offset * factor)
}

/// The closed segment `[a, b]` in dimension one, a convenience for tests and examples.
pub fn segment(a: i64, b: i64) -> Polytope {
    Polytope::hull(&[vec![q(a)], vec![q(b)]]).expect("segment")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: &[i64]) -> QVec {
        x.iter().map(|&a| q(a)).collect()
    }

    fn hexagon() -> Polytope {
        Polytope::hull(&[
            p(&[2, 2]),
            p(&[-2, -2]),
            p(&[2, 0]),
            p(&[-2, 0]),
            p(&[0, 2]),
            p(&[0, -2]),
        ])
        .unwrap()
    }

    #[test]
    fn hexagon_facets() {
        let h = hexagon();
        assert_eq!(h.vertices().len(), 6);
        let facets: Vec<(QVec, Q)> = h
            .facets()
            .iter()
            .map(|f| (f.normal.clone(), f.offset.clone()))
            .collect();
        let expected = vec![
            (p(&[-1, 0]), q(2)),
            (p(&[-1, 1]), q(2)),
            (p(&[0, -1]), q(2)),
            (p(&[0, 1]), q(2)),
            (p(&[1, -1]), q(2)),
            (p(&[1, 0]), q(2)),
        ];
        assert_eq!(facets, expected);
        assert_eq!(h.f_vector(), vec![6, 6, 1]);
    }

    #[test]
    fn point_hull_has_no_positive_dimensional_faces() {
        let o = Polytope::hull(&[p(&[0, 0])]).unwrap();
        assert_eq!(o.dim(), 0);
        assert!(o.facets().is_empty());
        assert_eq!(o.faces().len(), 1);
    }

    #[test]
    fn minkowski_of_segments() {
        let s = segment(-1, 1);
        assert_eq!(s.minkowski(&s).unwrap(), segment(-2, 2));
    }

    #[test]
    fn round_trip_through_inequalities() {
        let h = hexagon();
        let back = Polytope::from_inequalities(2, h.facets(), h.equations()).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn lower_dimensional_hull() {
        let seg = Polytope::hull(&[p(&[0, 0, 0]), p(&[1, 1, 0]), p(&[2, 2, 0])]).unwrap();
        assert_eq!(seg.dim(), 1);
        assert_eq!(seg.vertices(), &[p(&[0, 0, 0]), p(&[2, 2, 0])]);
        assert_eq!(seg.facets().len(), 2);
        assert!(seg.contains(&p(&[1, 1, 0])));
        assert!(!seg.contains(&p(&[1, 1, 1])));
        assert!(seg.interior_contains(&p(&[1, 1, 0])));
    }

    #[test]
    fn unbounded_is_rejected() {
        let r = Polytope::from_inequalities(1, &[HalfSpace::new(p(&[1]), q(0))], &[]);
        assert!(matches!(r, Err(Error::Unbounded(_))));
    }

    #[test]
    fn empty_system_gives_empty_polytope() {
        let r = Polytope::from_inequalities(
            1,
            &[
                HalfSpace::new(p(&[1]), q(-1)),
                HalfSpace::new(p(&[-1]), q(0)),
            ],
            &[],
        )
        .unwrap();
        assert!(r.is_empty());
    }
}
