//! Periodic fans in `X̃^∨` stored as cones modulo `δ`-translations, the fan
//! `Fan_ℓ(ξ†)` built from `Vor_ℓ`, and the check that a fan lies over `S`.

use num::traits::{Signed, Zero};
use serde::Serialize;

use super::tau::{cut, delta_translate, meets_xdual_trivially, tau_cone};
use crate::arith::matrix::{transpose, IMat};
use crate::arith::rational::{add_i, fmt_ivec, q, IVec, QVec, Q};
use crate::arith::smith::{smith, SubLattice};
use crate::datum::{FcDatum, Level};
use crate::error::{Error, Result};
use crate::polyhedra::Cone;
use crate::report::{Check, Tally};
use crate::voronoi::{box_points, vor_complex};

/// A cone of a fan together with the Voronoi face it belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanCone {
    /// Vertices of the Voronoi face `Δ` with `σ = τ_{ℓ,Δ}`; empty for cones
    /// not attached to a face.
    pub face: Vec<IVec>,
    /// The cone in `X̃^∨`.
    pub cone: Cone,
}

impl FanCone {
    /// A short label for reports.
    pub fn label(&self) -> String {
        if self.face.is_empty() {
            let rays: Vec<String> = self
                .cone
                .rays()
                .iter()
                .map(|r| crate::arith::rational::fmt_qvec(r))
                .collect();
            format!("cone {}", rays.join(" "))
        } else {
            let v: Vec<String> = self.face.iter().map(|x| fmt_ivec(x)).collect();
            format!("face {}", v.join(" "))
        }
    }
}

/// A fan in `X̃^∨`, given by cone representatives modulo the `δ_v`-translations
/// for `v` in the lattice spanned by `translations`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SFan {
    rank: usize,
    translations: IMat,
    maximal: Vec<FanCone>,
    cones: Vec<FanCone>,
}

impl SFan {
    /// A periodic fan. `translations` holds generators as columns; `cones`
    /// lists every cone class and must contain the maximal ones.
    pub fn new(
        rank: usize,
        translations: IMat,
        maximal: Vec<FanCone>,
        cones: Vec<FanCone>,
    ) -> SFan {
        SFan {
            rank,
            translations,
            maximal,
            cones,
        }
    }

    /// A finite fan given by its maximal cones.
    pub fn from_cones(rank: usize, maximal: Vec<Cone>) -> SFan {
        let maximal: Vec<FanCone> = maximal
            .into_iter()
            .map(|cone| FanCone {
                face: Vec::new(),
                cone,
            })
            .collect();
        SFan::new(rank, Vec::new(), maximal.clone(), maximal)
    }

    /// The rank `g` of `X`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Generators (columns) of the translation lattice in `X^∨`; empty for a finite fan.
    pub fn translations(&self) -> &IMat {
        &self.translations
    }

    /// The translation lattice, if the fan is periodic.
    pub fn translation_lattice(&self) -> Option<SubLattice> {
        if self.translations.is_empty() {
            None
        } else {
            Some(SubLattice::from_columns(&self.translations))
        }
    }

    /// Representatives of the maximal cones.
    pub fn maximal(&self) -> &[FanCone] {
        &self.maximal
    }

    /// Representatives of all cone classes.
    pub fn cones(&self) -> &[FanCone] {
        &self.cones
    }

    /// The translate `δ_v` of the `i`-th maximal cone; `v` must be a translation.
    pub fn cone_at(&self, i: usize, v: &[i64]) -> Result<Cone> {
        let ok = match self.translation_lattice() {
            Some(l) => l.contains(v),
            None => v.iter().all(|&c| c == 0),
        };
        if !ok {
            return Err(Error::DimensionMismatch(format!(
                "{} is not a translation of the fan",
                fmt_ivec(v)
            )));
        }
        delta_translate(&self.maximal[i].cone, v)
    }
}

/// `Fan_ℓ(ξ†)`: the cones `τ_{ℓ,Δ}` for the faces of `Vor_ℓ`, one per class
/// modulo `2ℓNY`, with the maximal cones at the vertices. The translations are
/// `δ_{β(y)}`, matching `Δ ↦ Δ + 2ℓNy`.
pub fn build_fan(datum: &FcDatum, level: Level) -> Result<SFan> {
    let vc = vor_complex(datum, level)?;
    let cosets = datum.beta_lattice().coset_representatives();
    let mut maximal = Vec::new();
    let mut cones = Vec::new();
    for f in vc.faces() {
        let tau = tau_cone(datum, level, &f.vertices)?;
        for c in &cosets {
            let s = datum.shift(level, c);
            let face: Vec<IVec> = f.vertices.iter().map(|v| add_i(v, &s)).collect();
            let fc = FanCone {
                face,
                cone: delta_translate(&tau, c)?,
            };
            if f.dim == 0 {
                maximal.push(fc.clone());
            }
            cones.push(fc);
        }
    }
    Ok(SFan::new(
        datum.rank(),
        datum.beta_matrix().clone(),
        maximal,
        cones,
    ))
}

/// The clauses of a fan over `S` for one cone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeClauses {
    /// Which cone.
    pub label: String,
    /// `m₀ ∈ σ^∨`.
    pub m0_in_dual: bool,
    /// `σ ∩ X^∨ = (0)`.
    pub meets_xdual_trivially: bool,
    /// `Zm₀ + σ^∨ ∩ X̃ = X̃`.
    pub generates_with_m0: bool,
    /// The last two agree whenever the first holds.
    pub equivalence_holds: bool,
}

/// Result of checking a fan over `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FanCheck {
    /// Per-cone clauses, over every cone class.
    pub cones: Vec<ConeClauses>,
    /// Number of pairs of maximal cones whose intersection was tested.
    pub pairs_tested: usize,
    /// Summary of every clause.
    pub checks: Vec<Check>,
}

impl FanCheck {
    /// True when every clause holds.
    pub fn passed(&self) -> bool {
        crate::report::all_passed(&self.checks)
    }
}

/// For each `±e_i`, an integer `k` with `km₀ ± e_i ∈ σ^∨`, if one exists.
fn m0_shifts(cone: &Cone) -> Option<Vec<(i64, usize, i64)>> {
    let d = cone.ambient_dim();
    let mut out = Vec::new();
    for i in 1..d {
        for s in [1i64, -1] {
            let mut lo: Option<Q> = None;
            let mut hi: Option<Q> = None;
            let mut fixed: Option<Q> = None;
            for r in cone.rays() {
                let ri = &r[i] * q(s);
                if r[0].is_zero() {
                    if ri.is_negative() {
                        return None;
                    }
                } else {
                    let bound = -&ri / &r[0];
                    if r[0].is_positive() {
                        lo = Some(lo.map_or(bound.clone(), |x: Q| x.max(bound)));
                    } else {
                        hi = Some(hi.map_or(bound.clone(), |x: Q| x.min(bound)));
                    }
                }
            }
            for l in cone.lineality() {
                let li = &l[i] * q(s);
                if l[0].is_zero() {
                    if !li.is_zero() {
                        return None;
                    }
                } else {
                    let k = -&li / &l[0];
                    if fixed.as_ref().is_some_and(|f| f != &k) {
                        return None;
                    }
                    fixed = Some(k);
                }
            }
            let k = match fixed {
                Some(k) => {
                    if !k.is_integer() {
                        return None;
                    }
                    k
                }
                None => match (&lo, &hi) {
                    (Some(l), _) => l.ceil(),
                    (None, Some(h)) => h.floor(),
                    (None, None) => Q::zero(),
                },
            };
            if lo.as_ref().is_some_and(|l| &k < l) || hi.as_ref().is_some_and(|h| &k > h) {
                return None;
            }
            out.push((crate::arith::rational::q_to_i64(&k)?, i, s));
        }
    }
    Some(out)
}

/// `Zm₀ + σ^∨ ∩ X̃ = X̃`: every `±e_i` is reached from `σ^∨ ∩ X̃` by a multiple
/// of `m₀`, and the resulting elements together with `m₀` have trivial
/// Smith form.
pub fn generates_with_m0(cone: &Cone) -> bool {
    let d = cone.ambient_dim();
    let Some(shifts) = m0_shifts(cone) else {
        return false;
    };
    let mut cols: IMat = Vec::new();
    let mut m0 = vec![0i64; d];
    m0[0] = 1;
    cols.push(m0);
    for (k, i, s) in shifts {
        let mut v = vec![0i64; d];
        v[0] = k;
        v[i] = s;
        cols.push(v);
    }
    let sd = smith(&transpose(&cols));
    sd.invariant_factors.len() == d && sd.invariant_factors.iter().all(|&f| f == 1)
}

/// `m₀ ∈ σ^∨`, that is `σ ⊆ R≥0 f₀ + X^∨_R`.
pub fn m0_in_dual(cone: &Cone) -> bool {
    cone.lineality().iter().all(|l| l[0].is_zero())
        && cone.rays().iter().all(|r| !r[0].is_negative())
}

fn clauses(fc: &FanCone) -> Result<ConeClauses> {
    let m0 = m0_in_dual(&fc.cone);
    let triv = meets_xdual_trivially(&fc.cone)?;
    let gen = generates_with_m0(&fc.cone);
    Ok(ConeClauses {
        label: fc.label(),
        m0_in_dual: m0,
        meets_xdual_trivially: triv,
        generates_with_m0: gen,
        equivalence_holds: !m0 || triv == gen,
    })
}

type CutBox = Option<(QVec, QVec)>;

fn cut_box(cone: &Cone) -> CutBox {
    let p = cut(cone).ok()?;
    let vs = p.vertices();
    let first = vs.first()?;
    let mut lo = first.clone();
    let mut hi = first.clone();
    for v in vs {
        for j in 0..v.len() {
            if v[j] < lo[j] {
                lo[j] = v[j].clone();
            }
            if v[j] > hi[j] {
                hi[j] = v[j].clone();
            }
        }
    }
    Some((lo, hi))
}

fn boxes_meet(a: &CutBox, b: &CutBox, t: &[i64]) -> bool {
    match (a, b) {
        (Some((alo, ahi)), Some((blo, bhi))) => (0..alo.len()).all(|j| {
            let s = q(t[j]);
            !(&bhi[j] - &s < alo[j] || &blo[j] - &s > ahi[j])
        }),
        _ => true,
    }
}

fn window(fan: &SFan, boxes: &[CutBox]) -> Vec<IVec> {
    let g = fan.rank();
    let Some(lat) = fan.translation_lattice() else {
        return vec![vec![0; g]];
    };
    if boxes.iter().any(|b| b.is_none()) {
        return box_points(&vec![-1; g], &vec![1; g])
            .into_iter()
            .map(|y| crate::arith::matrix::imat_vec(&fan.translations, &y))
            .collect();
    }
    let mut lo = vec![i64::MAX; g];
    let mut hi = vec![i64::MIN; g];
    for (blo, bhi) in boxes.iter().flatten() {
        for j in 0..g {
            lo[j] = lo[j].min(
                blo[j]
                    .floor()
                    .to_integer()
                    .try_into()
                    .unwrap_or(i64::MIN / 4),
            );
            hi[j] = hi[j].max(
                bhi[j]
                    .ceil()
                    .to_integer()
                    .try_into()
                    .unwrap_or(i64::MAX / 4),
            );
        }
    }
    let span: Vec<i64> = (0..g).map(|j| hi[j] - lo[j]).collect();
    let neg: Vec<i64> = span.iter().map(|s| -s).collect();
    box_points(&neg, &span)
        .into_iter()
        .filter(|t| lat.contains(t))
        .collect()
}

/// Checks that every cone pairs nonnegatively with `m₀`, meets `X^∨` only in
/// `0`, and generates `X̃` with `m₀`; that the last two clauses agree under
/// the first; and that maximal cones meet in common faces on a window of
/// translations covering all neighbours.
pub fn check_fan_over_s(fan: &SFan) -> Result<FanCheck> {
    let mut per_cone = Vec::new();
    for fc in fan.cones() {
        per_cone.push(clauses(fc)?);
    }
    let mut t_m0 = Tally::new("m0 in the dual of every cone");
    let mut t_triv = Tally::new("cones meet X^∨ only in 0");
    let mut t_gen = Tally::new("Zm0 + dual semigroup is all of X~");
    let mut t_eq = Tally::new("meeting X^∨ trivially iff generating with m0");
    for c in &per_cone {
        t_m0.record(c.m0_in_dual, || c.label.clone());
        t_triv.record(c.meets_xdual_trivially, || c.label.clone());
        t_gen.record(c.generates_with_m0, || c.label.clone());
        t_eq.record(c.equivalence_holds, || c.label.clone());
    }
    let boxes: Vec<CutBox> = fan.maximal().iter().map(|m| cut_box(&m.cone)).collect();
    let shifts = window(fan, &boxes);
    let mut t_pair = Tally::new("maximal cones meet in common faces");
    let n = fan.maximal().len();
    for i in 0..n {
        for j in i..n {
            for t in &shifts {
                if i == j && t <= &vec![0; t.len()] {
                    continue;
                }
                if !boxes_meet(&boxes[i], &boxes[j], t) {
                    continue;
                }
                let a = &fan.maximal()[i].cone;
                let b = delta_translate(&fan.maximal()[j].cone, t)?;
                let inter = a.intersection(&b)?;
                let ok = a.has_face(&inter)? && b.has_face(&inter)?;
                t_pair.record(ok, || {
                    format!(
                        "{} and {} shifted by {}",
                        fan.maximal()[i].label(),
                        fan.maximal()[j].label(),
                        fmt_ivec(t)
                    )
                });
            }
        }
    }
    let pairs_tested = t_pair.cases();
    Ok(FanCheck {
        cones: per_cone,
        pairs_tested,
        checks: vec![
            t_m0.finish(),
            t_triv.finish(),
            t_gen.finish(),
            t_eq.finish(),
            t_pair.finish(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::tilde::tilde;
    use crate::fixtures::{hexagon, tate};

    #[test]
    fn tate_fan_has_two_maximal_cones() {
        let fan = build_fan(&tate(), Level::new(1).unwrap()).unwrap();
        assert_eq!(fan.maximal().len(), 2);
        assert!(fan.maximal().iter().all(|m| m.cone.dim() == 2));
        let check = check_fan_over_s(&fan).unwrap();
        assert!(check.passed(), "{:?}", check.checks);
        assert!(check.pairs_tested > 0);
    }

    #[test]
    fn hexagon_fan_has_six_maximal_cones() {
        let fan = build_fan(&hexagon(), Level::new(1).unwrap()).unwrap();
        assert_eq!(fan.maximal().len(), 6);
        assert!(fan.maximal().iter().all(|m| m.cone.dim() == 3));
        let check = check_fan_over_s(&fan).unwrap();
        assert!(check.passed(), "{:?}", check.checks);
    }

    #[test]
    fn cone_in_xdual_fails_the_second_clause() {
        let bad = Cone::from_generators(3, &[tilde(0, &[1, 0])], &[]).unwrap();
        let check = check_fan_over_s(&SFan::from_cones(2, vec![bad])).unwrap();
        assert!(!check.cones[0].meets_xdual_trivially);
        assert!(!check.cones[0].generates_with_m0);
        assert!(check.cones[0].equivalence_holds);
        assert!(!check.passed());
        let ray = Cone::from_generators(3, &[tilde(1, &[-2, 1])], &[]).unwrap();
        assert!(check_fan_over_s(&SFan::from_cones(2, vec![ray]))
            .unwrap()
            .passed());
    }

    #[test]
    fn translates_follow_the_expansion_rule() {
        let d = tate();
        let l = Level::new(1).unwrap();
        let fan = build_fan(&d, l).unwrap();
        let moved = fan.cone_at(0, &[2]).unwrap();
        let face: Vec<IVec> = fan.maximal()[0]
            .face
            .iter()
            .map(|v| add_i(v, &d.shift(l, &[2])))
            .collect();
        assert_eq!(moved, tau_cone(&d, l, &face).unwrap());
        assert!(fan.cone_at(0, &[1]).is_err());
    }
}
