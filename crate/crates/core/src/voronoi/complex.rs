//! Periodic polyhedral complexes: the Voronoi decomposition `Vor_ℓ` by the
//! cells `Σ_ℓ(c)` and the Delaunay decomposition `Del_B` of `X`.
//!
//! A complex is stored as one representative per translation class of faces,
//! with face-of incidences carrying the translation that realizes them.

use std::collections::BTreeMap;

use serde::Serialize;

use super::cell::{coset_relevant_vectors, is_integral, voronoi_polytope};
use super::cvp::cvp_all_q;
use crate::arith::lattice::closest_all;
use crate::arith::matrix::{identity_i, IMat};
use crate::arith::rational::{q_to_i64, sub_i, to_q, IVec, QVec, Q};
use crate::arith::smith::SubLattice;
use crate::datum::{FcDatum, Level};
use crate::error::{Error, Result};
use crate::polyhedra::{HalfSpace, Polytope};

/// Which decomposition a complex describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComplexKind {
    /// `Vor_ℓ`, translated by `2ℓφ(X^∨)`.
    Voronoi {
        /// The level.
        level: Level,
    },
    /// `Del_B`, translated by `X`.
    Delaunay,
}

/// A representative maximal cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellRep {
    /// The cell label: the center `2ℓφ(c)` for Voronoi cells, the dual Voronoi
    /// vertex for Delaunay cells.
    pub label: QVec,
    /// The cell.
    pub polytope: Polytope,
}

/// One translation class of faces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FaceClass {
    /// Dimension.
    pub dim: usize,
    /// Canonical representative: sorted lattice vertices, translated so that
    /// the smallest vertex is reduced modulo the translation lattice.
    pub vertices: Vec<IVec>,
}

/// `faces[face] + offset` is a facet of `faces[coface]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Incidence {
    /// Index of the lower face class.
    pub face: usize,
    /// Index of the higher face class.
    pub coface: usize,
    /// A translation in the translation lattice.
    pub offset: IVec,
}

/// A periodic decomposition of `X_ℝ` modulo its translation lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceComplex {
    kind: ComplexKind,
    rank: usize,
    translation: IMat,
    lattice: SubLattice,
    quotient: IMat,
    quotient_factor: i64,
    cells: Vec<CellRep>,
    faces: Vec<FaceClass>,
    incidences: Vec<Incidence>,
}

/// Canonical key of a lattice vertex set modulo `lattice`, with the
/// translation `t` such that `key = vertices + t`.
pub fn canonical_key(vertices: &[IVec], lattice: &SubLattice) -> (Vec<IVec>, IVec) {
    let v0 = vertices.iter().min().expect("nonempty face");
    let t = sub_i(&lattice.reduce(v0), v0);
    let mut key: Vec<IVec> = vertices
        .iter()
        .map(|v| v.iter().zip(&t).map(|(a, b)| a + b).collect())
        .collect();
    key.sort();
    (key, t)
}

fn integer_points(points: &[QVec]) -> Result<Vec<IVec>> {
    points
        .iter()
        .map(|p| {
            p.iter()
                .map(|x| {
                    q_to_i64(x)
                        .ok_or_else(|| Error::Internal("face vertex is not a lattice point".into()))
                })
                .collect()
        })
        .collect()
}

impl FaceComplex {
    fn build(
        kind: ComplexKind,
        rank: usize,
        translation: IMat,
        quotient: IMat,
        cells: Vec<CellRep>,
    ) -> Result<FaceComplex> {
        let lattice = SubLattice::from_columns(&translation);
        let qlat = SubLattice::from_columns(&quotient);
        let quotient_factor = qlat.index() / lattice.index();
        let mut classes: BTreeMap<Vec<IVec>, usize> = BTreeMap::new();
        for cell in &cells {
            for f in cell.polytope.faces() {
                let pts = integer_points(&cell.polytope.face_points(&f))?;
                let (key, _) = canonical_key(&pts, &lattice);
                classes.entry(key).or_insert(f.dim);
            }
        }
        let mut faces: Vec<FaceClass> = classes
            .into_iter()
            .map(|(vertices, dim)| FaceClass { dim, vertices })
            .collect();
        faces.sort();
        let index: BTreeMap<Vec<IVec>, usize> = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.vertices.clone(), i))
            .collect();
        let mut incidences = Vec::new();
        for (j, f) in faces.iter().enumerate() {
            if f.dim == 0 {
                continue;
            }
            let p = Polytope::hull(&f.vertices.iter().map(|v| to_q(v)).collect::<Vec<_>>())?;
            for sub in p.faces().into_iter().filter(|s| s.dim + 1 == f.dim) {
                let pts = integer_points(&p.face_points(&sub))?;
                let (key, t) = canonical_key(&pts, &lattice);
                let i = *index.get(&key).ok_or_else(|| {
                    Error::Internal("facet of a face is missing from the complex".into())
                })?;
                incidences.push(Incidence {
                    face: i,
                    coface: j,
                    offset: t.iter().map(|x| -x).collect(),
                });
            }
        }
        incidences.sort();
        Ok(FaceComplex {
            kind,
            rank,
            translation,
            lattice,
            quotient,
            quotient_factor,
            cells,
            faces,
            incidences,
        })
    }

    /// Which decomposition this is.
    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    /// Dimension of the ambient space.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Generators (columns) of the translation lattice.
    pub fn translation_generators(&self) -> &IMat {
        &self.translation
    }

    /// The translation lattice.
    pub fn translation_lattice(&self) -> &SubLattice {
        &self.lattice
    }

    /// Generators (columns) of the lattice of the quotient view.
    pub fn quotient_generators(&self) -> &IMat {
        &self.quotient
    }

    /// Number of translation classes that make up one class modulo the
    /// quotient lattice.
    pub fn quotient_factor(&self) -> i64 {
        self.quotient_factor
    }

    /// Representative maximal cells, one per translation class.
    pub fn cells(&self) -> &[CellRep] {
        &self.cells
    }

    /// Face classes, sorted by dimension then vertices.
    pub fn faces(&self) -> &[FaceClass] {
        &self.faces
    }

    /// Facet incidences between face classes.
    pub fn incidences(&self) -> &[Incidence] {
        &self.incidences
    }

    /// Index of the class of a lattice vertex set, if it is a face.
    pub fn class_of(&self, vertices: &[IVec]) -> Option<usize> {
        let (key, _) = canonical_key(vertices, &self.lattice);
        self.faces.iter().position(|f| f.vertices == key)
    }

    /// Number of face classes of each dimension modulo the translation lattice.
    pub fn counts_mod_translation(&self) -> Vec<usize> {
        let mut c = vec![0; self.rank + 1];
        for f in &self.faces {
            c[f.dim] += 1;
        }
        c
    }

    /// Number of faces of each dimension modulo the quotient lattice.
    pub fn counts_mod_quotient(&self) -> Vec<u64> {
        self.counts_mod_translation()
            .iter()
            .map(|&c| c as u64 * self.quotient_factor as u64)
            .collect()
    }

    /// Alternating sum of the quotient counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.counts_mod_quotient()
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Translated cells `(cell index, translation)` containing the rational point `x`.
    pub fn locate(&self, datum: &FcDatum, x: &[Q]) -> Vec<(usize, IVec)> {
        match self.kind {
            ComplexKind::Voronoi { level } => cvp_all_q(datum, level, x)
                .into_iter()
                .map(|z| (0, datum.shift(level, &z)))
                .collect(),
            ComplexKind::Delaunay => {
                let mut out = Vec::new();
                for (i, cell) in self.cells.iter().enumerate() {
                    let verts = cell.polytope.vertices();
                    let g = self.rank;
                    let lo: Vec<i64> = (0..g)
                        .map(|j| {
                            let m = verts.iter().map(|v| v[j].clone()).max().expect("nonempty");
                            (&x[j] - m).ceil().to_integer().try_into().unwrap_or(0)
                        })
                        .collect();
                    let hi: Vec<i64> = (0..g)
                        .map(|j| {
                            let m = verts.iter().map(|v| v[j].clone()).min().expect("nonempty");
                            (&x[j] - m).floor().to_integer().try_into().unwrap_or(0)
                        })
                        .collect();
                    for t in box_points(&lo, &hi) {
                        let shifted: QVec = x
                            .iter()
                            .zip(&t)
                            .map(|(a, &b)| a - Q::from_integer(b.into()))
                            .collect();
                        if cell.polytope.contains(&shifted) {
                            out.push((i, t));
                        }
                    }
                }
                out.sort();
                out
            }
        }
    }
}

/// All integer points in the box `lo <= t <= hi`, in lexicographic order.
pub fn box_points(lo: &[i64], hi: &[i64]) -> Vec<IVec> {
    let mut out = vec![Vec::new()];
    for (a, b) in lo.iter().zip(hi) {
        let mut next = Vec::new();
        for p in &out {
            for c in *a..=*b {
                let mut v: IVec = p.clone();
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// `Vor_ℓ`: the cells `Σ_ℓ(c) = Σ_ℓ(0) + 2ℓφ(c)`, with translation lattice
/// `2ℓφ(X^∨)` and quotient view modulo `2ℓNY`.
pub fn vor_complex(datum: &FcDatum, level: Level) -> Result<FaceComplex> {
    let integ = is_integral(datum, level)?;
    if !integ.integral {
        return Err(Error::NotIntegral {
            level: level.to_string(),
            witness: integ.witness.map(|w| w.to_string()).unwrap_or_default(),
        });
    }
    let cell = voronoi_polytope(datum, level)?;
    let g = datum.rank();
    FaceComplex::build(
        ComplexKind::Voronoi { level },
        g,
        datum.translation_generators(level),
        datum.quotient_generators(level),
        vec![CellRep {
            label: vec![Q::from_integer(0.into()); g],
            polytope: cell,
        }],
    )
}

/// The Voronoi cell of `X` itself under `B`, whose vertices are the centers of
/// the maximal Delaunay cells.
pub fn lattice_voronoi_cell(datum: &FcDatum) -> Result<Polytope> {
    let g = datum.rank();
    datum
        .limits()
        .check_vertex_dim(g, "Delaunay decomposition")?;
    let rel = coset_relevant_vectors(datum.b());
    let ineqs: Vec<HalfSpace> = rel
        .iter()
        .map(|v| {
            let bv = crate::arith::matrix::mat_vec(datum.b(), &to_q(v));
            let normal: QVec = bv.iter().map(|x| -x * Q::from_integer(2.into())).collect();
            HalfSpace::new(normal, datum.b_pair(v, v))
        })
        .collect();
    Polytope::from_inequalities_with(g, &ineqs, &[], datum.limits())
}

/// `Del_B`: the Delaunay decomposition of `X_ℝ` by `X` under `B`, with one
/// maximal cell per class of Voronoi vertices of `X` modulo `X`.
pub fn delaunay_complex(datum: &FcDatum) -> Result<FaceComplex> {
    let g = datum.rank();
    let vor = lattice_voronoi_cell(datum)?;
    let ident = identity_i(g);
    let mut seen: BTreeMap<Vec<IVec>, QVec> = BTreeMap::new();
    for p in vor.vertices() {
        let (_, pts) = closest_all(datum.b(), p);
        let (key, t) = canonical_key(&pts, &SubLattice::from_columns(&ident));
        let label: QVec = p
            .iter()
            .zip(&t)
            .map(|(a, &b)| a + Q::from_integer(b.into()))
            .collect();
        seen.entry(key).or_insert(label);
    }
    let mut cells = Vec::new();
    for (key, label) in seen {
        let polytope = Polytope::hull(&key.iter().map(|v| to_q(v)).collect::<Vec<_>>())?;
        cells.push(CellRep { label, polytope });
    }
    FaceComplex::build(ComplexKind::Delaunay, g, ident.clone(), ident, cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::qr;
    use crate::fixtures::{hexagon, tate};

    #[test]
    fn hexagon_counts() {
        let c = vor_complex(&hexagon(), Level::new(1).unwrap()).unwrap();
        assert_eq!(c.counts_mod_translation(), vec![2, 3, 1]);
        assert_eq!(c.counts_mod_quotient(), vec![6, 9, 3]);
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn tate_counts() {
        let c = vor_complex(&tate(), Level::new(1).unwrap()).unwrap();
        assert_eq!(c.counts_mod_quotient(), vec![2, 2]);
    }

    #[test]
    fn a2_delaunay_has_two_triangles() {
        let c = delaunay_complex(&hexagon()).unwrap();
        assert_eq!(c.cells().len(), 2);
        for cell in c.cells() {
            assert_eq!(cell.polytope.vertices().len(), 3);
        }
        assert_eq!(c.counts_mod_translation(), vec![1, 3, 2]);
    }

    #[test]
    fn tate_delaunay_is_the_unit_segment() {
        let c = delaunay_complex(&tate()).unwrap();
        assert_eq!(c.cells().len(), 1);
        assert_eq!(c.cells()[0].polytope.vertices(), &[to_q(&[0]), to_q(&[1])]);
    }

    #[test]
    fn delaunay_cells_cover_points() {
        let d = hexagon();
        let c = delaunay_complex(&d).unwrap();
        for x in [[qr(1, 3), qr(1, 5)], [qr(-7, 2), qr(9, 4)]] {
            assert!(!c.locate(&d, &x).is_empty());
        }
    }
}
