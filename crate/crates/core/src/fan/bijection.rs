//! The correspondence between faces of `Vor_ℓ` and the cells of
//! `Cut(Fan_ℓ(ξ†))`, and the polytope `Σ*_ℓ` of centers of touching cells.

use std::collections::{BTreeMap, BTreeSet};

use num::traits::Signed;
use serde::Serialize;

use super::sfan::{build_fan, SFan};
use super::tau::{cell_intersection, cone_over, cut, tau_cone};
use crate::arith::rational::{fmt_ivec, q, sub_q, to_i, to_q, IVec, QVec, Q};
use crate::datum::{FcDatum, Level};
use crate::error::Result;
use crate::polyhedra::{Cone, Polytope};
use crate::report::{Check, Tally};
use crate::voronoi::{box_points, canonical_key, cvp_all_q, voronoi_polytope};

/// Result of checking the face correspondence on representatives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    /// The distinct pairs `(dim Cut(σ), dim Δ(σ))`.
    pub dim_pairs: Vec<(usize, usize)>,
    /// Number of cone classes examined.
    pub cones_checked: usize,
    /// Every clause.
    pub checks: Vec<Check>,
}

impl BijectionReport {
    /// True when every clause holds.
    pub fn passed(&self) -> bool {
        crate::report::all_passed(&self.checks)
    }
}

fn integral_vertices(p: &Polytope) -> Option<Vec<IVec>> {
    p.vertices().iter().map(|v| to_i(v)).collect()
}

/// Translations `t` of the fan with `p + t` possibly in a maximal cut, for `p`
/// in the box `[-r, r]^g`.
fn covering_shifts(fan: &SFan, cuts: &[Polytope], r: i64) -> Vec<IVec> {
    let g = fan.rank();
    let mut reach = r;
    for c in cuts {
        for v in c.vertices() {
            for x in v {
                let a: i64 = x
                    .abs()
                    .ceil()
                    .to_integer()
                    .try_into()
                    .unwrap_or(i64::MAX / 4);
                reach = reach.max(a + r);
            }
        }
    }
    let lat = fan.translation_lattice();
    box_points(&vec![-reach; g], &vec![reach; g])
        .into_iter()
        .filter(|t| {
            lat.as_ref()
                .map_or(t.iter().all(|&c| c == 0), |l| l.contains(t))
        })
        .collect()
}

/// Checks on representatives modulo translation that `Δ ↦ Cut(τ_{ℓ,Δ})` is
/// injective, that `Δ` is recovered as the intersection of the cells centred at
/// minus the vertices of its cut, that the dimensions are complementary, that
/// inclusions reverse on the faces of `Σ_ℓ(0)`, that the faces of a vertex cone
/// are the cones of the faces through the vertex, that the vertices of the cut
/// complex are exactly `X^∨` on a window, that the cell `Σ_ℓ(-v)` cuts to
/// `{v}`, that the maximal cuts cover a sample grid, that every cone is the
/// cone over its cut, and that differences inside a maximal cut lie in `2Σ*_ℓ`.
pub fn cut_bijection_report(datum: &FcDatum, level: Level) -> Result<BijectionReport> {
    let g = datum.rank();
    let fan = build_fan(datum, level)?;
    let beta = datum.beta_lattice();

    let mut t_int = Tally::new("cut vertices lie in X^∨");
    let mut t_inj = Tally::new("cut is injective modulo translation");
    let mut t_rec = Tally::new("face recovered from its cut");
    let mut t_dim = Tally::new("dim Cut + dim face = g");
    let mut t_cone = Tally::new("cone equals the cone over its cut");
    let mut keys: BTreeMap<Vec<IVec>, String> = BTreeMap::new();
    let mut dim_pairs = BTreeSet::new();
    for fc in fan.cones() {
        let p = cut(&fc.cone)?;
        let label = fc.label();
        let Some(verts) = integral_vertices(&p) else {
            t_int.record(false, || label.clone());
            continue;
        };
        t_int.record(true, String::new);
        let (key, _) = canonical_key(&verts, &beta);
        let dup = keys.insert(key, label.clone());
        t_inj.record(dup.is_none(), || {
            format!("{label} repeats {}", dup.clone().unwrap_or_default())
        });
        let centers: Vec<IVec> = verts
            .iter()
            .map(|v| v.iter().map(|c| -c).collect())
            .collect();
        let meet = cell_intersection(datum, level, &centers)?;
        let mut want: Vec<QVec> = fc.face.iter().map(|v| to_q(v)).collect();
        want.sort();
        t_rec.record(meet.vertices() == &want[..], || label.clone());
        let fdim = Polytope::affine_rank(&want);
        let cdim = p.dim();
        t_dim.record(fdim + cdim == g as isize, || {
            format!("{label}: {cdim} + {fdim}")
        });
        if fdim >= 0 && cdim >= 0 {
            dim_pairs.insert((cdim as usize, fdim as usize));
        }
        t_cone.record(cone_over(&p)? == fc.cone, || label.clone());
    }

    let cell = voronoi_polytope(datum, level)?;
    let mut faces: Vec<(Vec<IVec>, Cone)> = Vec::new();
    for f in cell.faces() {
        let pts: Vec<IVec> = cell
            .face_points(&f)
            .iter()
            .filter_map(|v| to_i(v))
            .collect();
        let tau = tau_cone(datum, level, &pts)?;
        faces.push((pts, tau));
    }
    let mut t_rev = Tally::new("inclusions reverse on faces of the central cell");
    for (fa, ca) in &faces {
        for (fb, cb) in &faces {
            let contains = fb.iter().all(|v| fa.contains(v));
            t_rev.record(ca.is_subset_of(cb) == contains, || {
                format!("{} against {}", fmt_face(fa), fmt_face(fb))
            });
        }
    }
    let mut t_face = Tally::new("faces of vertex cones are the face cones");
    for (fa, ca) in &faces {
        for a in fa {
            let va = &faces
                .iter()
                .find(|(f, _)| f.len() == 1 && &f[0] == a)
                .expect("vertex face")
                .1;
            t_face.record(va.has_face(ca)?, || {
                format!("{} at {}", fmt_face(fa), fmt_ivec(a))
            });
        }
    }

    let maximal_cuts: Vec<Polytope> = fan
        .maximal()
        .iter()
        .map(|m| cut(&m.cone))
        .collect::<Result<_>>()?;
    let mut classes = BTreeSet::new();
    for c in &maximal_cuts {
        for v in c.vertices() {
            if let Some(iv) = to_i(v) {
                classes.insert(beta.reduce(&iv));
            }
        }
    }
    let mut t_vert = Tally::new("cut vertices are all of X^∨ on a window");
    let mut t_cell = Tally::new("the cell centred at -v cuts to {v}");
    let window = box_points(&vec![-1; g], &vec![1; g]);
    for v in &window {
        t_vert.record(classes.contains(&beta.reduce(v)), || fmt_ivec(v));
        let neg: IVec = v.iter().map(|c| -c).collect();
        let s = datum.shift(level, &neg);
        let verts: Vec<IVec> = cell
            .vertices()
            .iter()
            .filter_map(|x| to_i(x))
            .map(|x| x.iter().zip(&s).map(|(a, b)| a + b).collect())
            .collect();
        let tau = tau_cone(datum, level, &verts)?;
        t_cell.record(cut(&tau)?.vertices() == [to_q(v)], || fmt_ivec(v));
    }

    let mut t_cov = Tally::new("maximal cuts cover a sample grid");
    let shifts = covering_shifts(&fan, &maximal_cuts, 1);
    for p in box_points(&vec![-2; g], &vec![2; g]) {
        let pt: QVec = p.iter().map(|&c| q(c) / q(2)).collect();
        let hit = maximal_cuts.iter().any(|c| {
            shifts.iter().any(|t| {
                let moved: QVec = pt.iter().zip(t).map(|(a, &b)| a + q(b)).collect();
                c.contains(&moved)
            })
        });
        t_cov.record(hit, || crate::arith::rational::fmt_qvec(&pt));
    }

    let star2 = sigma_star(datum, level)?.scale(&q(2))?;
    let mut t_star = Tally::new("differences in a maximal cut lie in 2Σ*");
    for c in &maximal_cuts {
        for a in c.vertices() {
            for b in c.vertices() {
                t_star.record(star2.contains(&sub_q(a, b)), || {
                    crate::arith::rational::fmt_qvec(&sub_q(a, b))
                });
            }
        }
    }

    Ok(BijectionReport {
        dim_pairs: dim_pairs.into_iter().collect(),
        cones_checked: fan.cones().len(),
        checks: vec![
            t_int.finish(),
            t_inj.finish(),
            t_rec.finish(),
            t_dim.finish(),
            t_cone.finish(),
            t_rev.finish(),
            t_face.finish(),
            t_vert.finish(),
            t_cell.finish(),
            t_cov.finish(),
            t_star.finish(),
        ],
    })
}

fn fmt_face(f: &[IVec]) -> String {
    let v: Vec<String> = f.iter().map(|x| fmt_ivec(x)).collect();
    v.join(" ")
}

/// `Σ*_ℓ = Conv{v ∈ X^∨ : Σ_ℓ(v) ∩ Σ_ℓ(0) ≠ ∅}`, from the centers of the cells
/// through the vertices of `Σ_ℓ(0)`.
pub fn sigma_star(datum: &FcDatum, level: Level) -> Result<Polytope> {
    let cell = voronoi_polytope(datum, level)?;
    let mut centers: BTreeSet<IVec> = BTreeSet::new();
    for v in cell.vertices() {
        centers.extend(cvp_all_q(datum, level, v));
    }
    let pts: Vec<QVec> = centers.iter().map(|c| to_q(c)).collect();
    Polytope::hull_with(&pts, datum.limits())
}

/// Whether `point ∈ n·Σ*_ℓ`.
pub fn separation_membership(datum: &FcDatum, level: Level, point: &[Q], n: u64) -> Result<bool> {
    let star = sigma_star(datum, level)?;
    Ok(star.scale(&Q::from_integer(n.into()))?.contains(point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{hexagon, tate};

    fn l1() -> Level {
        Level::new(1).unwrap()
    }

    #[test]
    fn tate_bijection() {
        let r = cut_bijection_report(&tate(), l1()).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
        assert_eq!(r.dim_pairs, vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn hexagon_bijection() {
        let r = cut_bijection_report(&hexagon(), l1()).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
        assert_eq!(r.dim_pairs, vec![(0, 2), (1, 1), (2, 0)]);
    }

    #[test]
    fn sigma_star_examples() {
        let s = sigma_star(&tate(), l1()).unwrap();
        assert_eq!(s.vertices(), &[to_q(&[-1]), to_q(&[1])]);
        let h = sigma_star(&hexagon(), l1()).unwrap();
        let mut want: Vec<QVec> = [[1, 0], [-1, 0], [0, 1], [0, -1], [1, -1], [-1, 1]]
            .iter()
            .map(|v| to_q(v))
            .collect();
        want.sort();
        assert_eq!(h.vertices(), &want[..]);
        assert!(h.interior_contains(&to_q(&[0, 0])));
        assert!(!separation_membership(&tate(), l1(), &to_q(&[7]), 6).unwrap());
        assert!(separation_membership(&tate(), l1(), &to_q(&[6]), 6).unwrap());
        assert!(separation_membership(&hexagon(), l1(), &to_q(&[0, 0]), 1).unwrap());
    }
}
