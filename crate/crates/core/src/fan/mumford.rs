//! The fan `Fan(ξ)` of a principal datum: the cones `τ_α` cut out by
//! `(A(β) + B(α, β))x₀ + x(β) ≥ 0` for all `β ∈ X`.

use serde::Serialize;

use super::sfan::{FanCone, SFan};
use super::tau::cone_over;
use crate::arith::lattice::closest_all;
use crate::arith::matrix::{inverse, mat_vec};
use crate::arith::rational::{add_q, dot_iq, to_q, IVec, QVec, Q};
use crate::datum::FcDatum;
use crate::error::{Error, Result};
use crate::polyhedra::{HalfSpace, Polytope};
use crate::voronoi::coset_relevant_vectors;

/// Rank above which the Mumford fan is not attempted.
pub const MUMFORD_DIM_CAP: usize = 3;

/// The fan `Fan(ξ)` together with its cut data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MumfordFan {
    /// The fan, with the single maximal class `τ_0` and translations `β(X)`.
    pub fan: SFan,
    /// `Cut(τ_0) = {u : A(β) + u(β) ≥ 0 for all β}`.
    pub cut: Polytope,
    /// The `β` whose inequalities were needed.
    pub support: Vec<IVec>,
    /// Vertices of `Cut(τ_0)`, one per class modulo `β(X)`; these index the
    /// closed-fiber components.
    pub vertex_classes: Vec<QVec>,
}

/// Summary numbers of a Mumford fan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MumfordSummary {
    /// Maximal cut cells modulo `β(X)`.
    pub maximal_cells_mod_translation: usize,
    /// Vertices of the cut tiling modulo `β(X)`.
    pub components: usize,
    /// Vertices of `Cut(τ_0)`.
    pub cut_vertices: usize,
    /// Inequalities used.
    pub support_size: usize,
}

impl MumfordFan {
    /// Counts for reports.
    pub fn summary(&self) -> MumfordSummary {
        MumfordSummary {
            maximal_cells_mod_translation: self.fan.maximal().len(),
            components: self.vertex_classes.len(),
            cut_vertices: self.cut.vertices().len(),
            support_size: self.support.len(),
        }
    }
}

fn cut_polytope(datum: &FcDatum, support: &[IVec]) -> Result<Polytope> {
    let ineqs: Vec<HalfSpace> = support
        .iter()
        .map(|b| HalfSpace::new(to_q(b), datum.a_value(b)))
        .collect();
    Polytope::from_inequalities_with(datum.rank(), &ineqs, &[], datum.limits())
}

/// `Fan(ξ)` for a principal datum of rank at most three. The inequalities of
/// `τ_0` are found iteratively: starting from the relevant vectors of `X`, each
/// vertex `u` of the current cut is tested against all of `X` by minimizing
/// `A(β) + u(β)`, a closest-vector problem, and violated `β` are added.
pub fn mumford_fan(datum: &FcDatum) -> Result<MumfordFan> {
    if !datum.is_principal() {
        return Err(Error::NotPrincipal);
    }
    let g = datum.rank();
    if g > MUMFORD_DIM_CAP {
        return Err(Error::DimensionCap {
            dim: g,
            cap: MUMFORD_DIM_CAP,
            what: "the Mumford fan".into(),
        });
    }
    let binv = inverse(datum.b()).ok_or_else(|| Error::Internal("singular pairing".into()))?;
    let lambda: QVec = datum
        .a_linear()
        .cloned()
        .unwrap_or_else(|| vec![Q::from_integer(0.into()); g]);
    let mut support: Vec<IVec> = Vec::new();
    for v in coset_relevant_vectors(datum.b()) {
        let neg: IVec = v.iter().map(|c| -c).collect();
        support.push(v);
        support.push(neg);
    }
    support.sort();
    support.dedup();
    let cut = loop {
        let p = cut_polytope(datum, &support)?;
        let mut added = false;
        for u in p.vertices() {
            let c: QVec = mat_vec(&binv, &add_q(&lambda, u))
                .into_iter()
                .map(|x| -x)
                .collect();
            let (_, minimizers) = closest_all(datum.b(), &c);
            for b in minimizers {
                let val = datum.a_value(&b) + dot_iq(&b, u);
                if val < Q::from_integer(0.into()) && !support.contains(&b) {
                    support.push(b);
                    added = true;
                }
            }
        }
        if !added {
            break p;
        }
        support.sort();
        support.dedup();
    };
    let mut classes: Vec<QVec> = Vec::new();
    for v in cut.vertices() {
        let fresh = classes.iter().all(|w| {
            let d: QVec = v.iter().zip(w).map(|(a, b)| a - b).collect();
            !mat_vec(&binv, &d).iter().all(|x| x.is_integer())
        });
        if fresh {
            classes.push(v.clone());
        }
    }
    let tau0 = cone_over(&cut)?;
    let mut cones = Vec::new();
    for f in cut.faces() {
        let pts = cut.face_points(&f);
        cones.push(FanCone {
            face: Vec::new(),
            cone: cone_over(&Polytope::hull(&pts)?)?,
        });
    }
    let fan = SFan::new(
        g,
        datum.beta_matrix().clone(),
        vec![FanCone {
            face: Vec::new(),
            cone: tau0,
        }],
        cones,
    );
    Ok(MumfordFan {
        fan,
        cut,
        support,
        vertex_classes: classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::sfan::check_fan_over_s;
    use crate::fixtures::{rank_two, tate};
    use crate::voronoi::delaunay_complex;

    #[test]
    fn a2_has_two_components() {
        let d = rank_two(1, 1, 1);
        let d = FcDatum::principal(d.b().clone()).unwrap();
        let m = mumford_fan(&d).unwrap();
        assert_eq!(m.summary().maximal_cells_mod_translation, 1);
        assert_eq!(m.summary().components, 2);
        assert_eq!(m.cut.vertices().len(), 6);
        assert_eq!(delaunay_complex(&d).unwrap().cells().len(), 2);
        assert!(check_fan_over_s(&m.fan).unwrap().passed());
        assert!(m.fan.maximal()[0].cone.dual().contains(&to_q(&[1, 0, 0])));
    }

    #[test]
    fn tate_cut_is_a_segment() {
        let m = mumford_fan(&tate()).unwrap();
        assert_eq!(m.cut.vertices(), &[to_q(&[-1]), to_q(&[1])]);
        assert_eq!(m.summary().components, 1);
        assert!(check_fan_over_s(&m.fan).unwrap().passed());
    }

    #[test]
    fn non_principal_is_rejected() {
        let d = FcDatum::new(vec![vec![2]], vec![vec![Q::from_integer(1.into())]], None).unwrap();
        assert_eq!(mumford_fan(&d).unwrap_err(), Error::NotPrincipal);
    }
}
