//! Hilbert bases of saturated semigroups `C ∩ Z^d`.
//!
//! The cone is rewritten in a basis of the lattice `span(C) ∩ Z^d` and
//! triangulated by pulling rays. Every Hilbert basis element is a ray or a
//! lattice point of the half-open parallelepiped of some simplex, and these
//! candidates are enumerated from the Smith form of the simplex. They are
//! reduced in order of degree: a point is reducible exactly when subtracting
//! a smaller basis element stays in the cone.

use std::collections::BTreeSet;

use num::traits::ToPrimitive;
use serde::Serialize;

use crate::arith::matrix::{inverse, rank_of, transpose};
use crate::arith::rational::{to_i, to_q, IVec, QVec, Q};
use crate::arith::smith::{saturation_with_complement, smith, unimodular_inverse};
use crate::error::{Error, Result};
use crate::polyhedra::Cone;

/// Most lattice points scanned in one search.
pub const HILBERT_POINT_BUDGET: u64 = 2_000_000;

/// Generators of `C ∩ Z^d` for a cone that may contain lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemigroupGenerators {
    /// A basis of the lattice `lin(C) ∩ Z^d`; each is used with both signs.
    pub lineality: Vec<IVec>,
    /// Lifts of the Hilbert basis of the pointed quotient.
    pub hilbert: Vec<IVec>,
}

impl SemigroupGenerators {
    /// All generators, with the lineality basis taken with both signs.
    pub fn all(&self) -> Vec<IVec> {
        let mut out = self.hilbert.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(l.iter().map(|c| -c).collect());
        }
        out
    }
}

fn as_i64(v: &[Q]) -> Result<IVec> {
    to_i(v).ok_or_else(|| Error::Internal("expected an integer vector".into()))
}

fn check_cap(d: usize, cap: usize) -> Result<()> {
    if d > cap {
        return Err(Error::DimensionCap {
            dim: d,
            cap,
            what: "Hilbert basis".into(),
        });
    }
    Ok(())
}

/// The Hilbert basis of a pointed cone, under the default dimension cap.
pub fn hilbert_basis(cone: &Cone) -> Result<Vec<IVec>> {
    hilbert_basis_with(cone, crate::datum::Limits::default().hilbert_dim_cap)
}

/// The Hilbert basis of a pointed cone in dimension at most `cap`, sorted.
pub fn hilbert_basis_with(cone: &Cone, cap: usize) -> Result<Vec<IVec>> {
    check_cap(cone.ambient_dim(), cap)?;
    if !cone.is_pointed() {
        return Err(Error::NotPointed);
    }
    if cone.is_zero() {
        return Ok(Vec::new());
    }
    let d = cone.ambient_dim();
    let (sat, _) = saturation_with_complement(cone.rays(), d);
    let basis_cols = transpose(&sat.iter().map(|r| to_q(r)).collect::<Vec<QVec>>());
    let mut coords: Vec<IVec> = Vec::new();
    for r in cone.rays() {
        let c = crate::arith::matrix::solve_any(&basis_cols, r)
            .ok_or_else(|| Error::Internal("ray outside its own span".into()))?;
        coords.push(as_i64(&c)?);
    }
    let local = reduce_full(&coords)?;
    let mut out: Vec<IVec> = local
        .iter()
        .map(|c| {
            (0..d)
                .map(|j| c.iter().zip(&sat).map(|(a, row)| a * row[j]).sum())
                .collect()
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Hilbert basis of the full-dimensional pointed cone generated by integer
/// `rays` in `Z^k`.
fn reduce_full(rays: &[IVec]) -> Result<Vec<IVec>> {
    let k = rays[0].len();
    let cone = Cone::from_generators(k, &rays.iter().map(|r| to_q(r)).collect::<Vec<_>>(), &[])?;
    let facets: Vec<IVec> = cone
        .facets()
        .iter()
        .map(|f| as_i64(f))
        .collect::<Result<_>>()?;
    let rays: Vec<IVec> = cone
        .rays()
        .iter()
        .map(|r| as_i64(r))
        .collect::<Result<_>>()?;
    let dot = |a: &[i64], b: &[i64]| -> i64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let deg: IVec = (0..k).map(|j| facets.iter().map(|f| f[j]).sum()).collect();
    let mut candidates: BTreeSet<(i64, IVec)> =
        rays.iter().map(|r| (dot(&deg, r), r.clone())).collect();
    let mut scanned = 0u64;
    for simplex in triangulate(&rays, &facets, (0..rays.len()).collect(), k) {
        let cols: Vec<&IVec> = simplex.iter().map(|&i| &rays[i]).collect();
        for x in parallelepiped_points(&cols, &mut scanned)? {
            if x.iter().any(|&c| c != 0) {
                candidates.insert((dot(&deg, &x), x));
            }
        }
    }
    let inside = |x: &[i64]| facets.iter().all(|f| dot(f, x) >= 0);
    let mut basis: Vec<(i64, IVec)> = Vec::new();
    for (dg, x) in candidates {
        let reducible = basis.iter().any(|(hd, h)| {
            *hd < dg && {
                let diff: IVec = x.iter().zip(h).map(|(a, b)| a - b).collect();
                inside(&diff)
            }
        });
        if !reducible {
            basis.push((dg, x));
        }
    }
    Ok(basis.into_iter().map(|(_, x)| x).collect())
}

/// A pulling triangulation of the face spanned by the rays in `face`, of
/// dimension `dim`, into simplicial cones given by ray indices.
fn triangulate(rays: &[IVec], facets: &[IVec], face: Vec<usize>, dim: usize) -> Vec<Vec<usize>> {
    if face.len() == dim {
        return vec![face];
    }
    let apex = face[0];
    let mut subfaces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in facets {
        let sub: Vec<usize> = face
            .iter()
            .copied()
            .filter(|&i| rays[i].iter().zip(f).map(|(a, b)| a * b).sum::<i64>() == 0)
            .collect();
        if sub.len() < face.len()
            && !sub.contains(&apex)
            && rank_of(&sub.iter().map(|&i| to_q(&rays[i])).collect::<Vec<_>>()) + 1 == dim
        {
            subfaces.insert(sub);
        }
    }
    let mut out = Vec::new();
    for sub in subfaces {
        for mut s in triangulate(rays, facets, sub, dim - 1) {
            s.push(apex);
            out.push(s);
        }
    }
    out
}

/// Lattice points `Σλ_i v_i` with `0 ≤ λ_i < 1` for linearly independent integer columns `v_i`.
fn parallelepiped_points(cols: &[&IVec], scanned: &mut u64) -> Result<Vec<IVec>> {
    let k = cols.len();
    let v: Vec<IVec> = (0..k)
        .map(|j| cols.iter().map(|c| c[j]).collect())
        .collect();
    let sf = smith(&v);
    let volume = sf.product().unsigned_abs();
    *scanned += volume;
    if *scanned > HILBERT_POINT_BUDGET {
        return Err(Error::TooLarge(format!(
            "Hilbert basis search over {} lattice points exceeds the budget {HILBERT_POINT_BUDGET}",
            *scanned
        )));
    }
    let left_inv = unimodular_inverse(&sf.left);
    let vq: Vec<QVec> = v.iter().map(|r| to_q(r)).collect();
    let inv = inverse(&vq).ok_or_else(|| Error::Internal("dependent simplex rays".into()))?;
    let factors: IVec = (0..k).map(|i| sf.diagonal[i][i].abs()).collect();
    let mut out = Vec::with_capacity(volume as usize);
    let mut c = vec![0i64; k];
    loop {
        let x: IVec = (0..k)
            .map(|j| left_inv[j].iter().zip(&c).map(|(a, b)| a * b).sum())
            .collect();
        let xq = to_q(&x);
        let shift: IVec = (0..k)
            .map(|i| {
                let lam: Q = inv[i].iter().zip(&xq).map(|(a, b)| a * b).sum();
                lam.floor().to_integer().to_i64().unwrap_or(0)
            })
            .collect();
        out.push(
            (0..k)
                .map(|j| x[j] - (0..k).map(|i| v[j][i] * shift[i]).sum::<i64>())
                .collect(),
        );
        let mut i = 0;
        while i < k {
            c[i] += 1;
            if c[i] < factors[i] {
                break;
            }
            c[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    Ok(out)
}

/// Generators of `C ∩ Z^d` for any cone: a lattice basis of the lineality
/// space and the lifted Hilbert basis of the pointed quotient.
pub fn semigroup_generators(cone: &Cone, cap: usize) -> Result<SemigroupGenerators> {
    let d = cone.ambient_dim();
    check_cap(d, cap)?;
    if cone.is_pointed() {
        return Ok(SemigroupGenerators {
            lineality: Vec::new(),
            hilbert: hilbert_basis_with(cone, cap)?,
        });
    }
    let (lin, comp) = saturation_with_complement(cone.lineality(), d);
    let l = lin.len();
    let mut full: Vec<QVec> = lin.iter().map(|r| to_q(r)).collect();
    full.extend(comp.iter().map(|r| to_q(r)));
    let inv = inverse(&full).ok_or_else(|| Error::Internal("singular lattice basis".into()))?;
    let project = |x: &[Q]| -> QVec {
        (l..d)
            .map(|j| x.iter().zip(&inv).map(|(a, row)| a * &row[j]).sum())
            .collect()
    };
    let rays: Vec<QVec> = cone.rays().iter().map(|r| project(r)).collect();
    let quotient = Cone::from_generators(d - l, &rays, &[])?;
    let hb = hilbert_basis_with(&quotient, cap)?;
    let mut hilbert: Vec<IVec> = hb
        .iter()
        .map(|c| {
            (0..d)
                .map(|j| c.iter().zip(&comp).map(|(a, row)| a * row[j]).sum())
                .collect()
        })
        .collect();
    hilbert.sort();
    Ok(SemigroupGenerators {
        lineality: lin,
        hilbert,
    })
}

/// True when `x` is a nonnegative integer combination of `gens`, searched
/// with the degree functional `deg`; generators of nonpositive degree are ignored.
pub fn in_semigroup(gens: &[IVec], deg: &[i64], x: &[i64]) -> bool {
    fn rec(gens: &[IVec], deg: &[i64], x: &mut IVec, start: usize) -> bool {
        if x.iter().all(|&c| c == 0) {
            return true;
        }
        let dx: i64 = deg.iter().zip(x.iter()).map(|(a, b)| a * b).sum();
        if dx <= 0 {
            return false;
        }
        for i in start..gens.len() {
            for (a, b) in x.iter_mut().zip(&gens[i]) {
                *a -= b;
            }
            let ok = rec(gens, deg, x, i);
            for (a, b) in x.iter_mut().zip(&gens[i]) {
                *a += b;
            }
            if ok {
                return true;
            }
        }
        false
    }
    let usable: Vec<IVec> = gens
        .iter()
        .filter(|g| g.iter().zip(deg).map(|(a, b)| a * b).sum::<i64>() > 0)
        .cloned()
        .collect();
    let mut v = x.to_vec();
    rec(&usable, deg, &mut v, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::tilde;

    #[test]
    fn two_dimensional_example() {
        let c = Cone::from_generators(2, &[tilde(1, &[0]), tilde(1, &[2])], &[]).unwrap();
        assert_eq!(
            hilbert_basis(&c).unwrap(),
            vec![vec![1, 0], vec![1, 1], vec![1, 2]]
        );
    }

    #[test]
    fn unimodular_cone_gives_its_rays() {
        let c = Cone::from_generators(
            3,
            &[tilde(1, &[0, 0]), tilde(1, &[1, 0]), tilde(0, &[1, 1])],
            &[],
        )
        .unwrap();
        assert_eq!(
            hilbert_basis(&c).unwrap(),
            vec![vec![0, 1, 1], vec![1, 0, 0], vec![1, 1, 0]]
        );
    }

    #[test]
    fn lower_dimensional_cone_uses_its_own_lattice() {
        let c = Cone::from_generators(3, &[tilde(1, &[1, 1]), tilde(1, &[-1, -1])], &[]).unwrap();
        assert_eq!(
            hilbert_basis(&c).unwrap(),
            vec![vec![1, -1, -1], vec![1, 0, 0], vec![1, 1, 1]]
        );
    }

    #[test]
    fn half_plane_has_lineality_and_one_element() {
        let c = Cone::from_generators(2, &[tilde(1, &[0])], &[tilde(0, &[1])]).unwrap();
        assert_eq!(hilbert_basis(&c).unwrap_err(), Error::NotPointed);
        let s = semigroup_generators(&c, 7).unwrap();
        assert_eq!(s.lineality.len(), 1);
        assert_eq!(s.hilbert.len(), 1);
        assert_eq!(s.hilbert[0][0], 1);
        assert_eq!(s.all().len(), 3);
    }

    #[test]
    fn semigroup_membership() {
        let gens = vec![vec![1, 0], vec![1, 1], vec![1, 2]];
        assert!(in_semigroup(&gens, &[1, 0], &[3, 5]));
        assert!(!in_semigroup(&gens, &[1, 0], &[1, 3]));
    }
}
