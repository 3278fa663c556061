//! Vertex representatives of the Voronoi cell of a unimodular simply-laced
//! root lattice, read off from the fundamental alcove.
//!
//! When `B` is the Cartan matrix of a simply-laced root system and `N = 1`, the
//! unit cell `V` is the Voronoi cell of the root lattice and is the union of the
//! Weyl images of the fundamental alcove. Every vertex of `V` is then a Weyl
//! image of an alcove vertex `ω_i / m_i`, where `m_i` are the marks of the
//! highest root. The Weyl group acts on `X` by integer matrices, so coordinate
//! denominators are constant on orbits.

use num::traits::Zero;

use super::cell::unit_relevant;
use crate::arith::matrix::{inverse, rank_of};
use crate::arith::rational::{dot_iq, q, to_q, IVec, QVec, Q};
use crate::datum::FcDatum;
use crate::error::{Error, Result};

/// Data of an irreducible simply-laced root system given by its Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    /// Cartan matrix.
    pub cartan: Vec<IVec>,
    /// Coefficients of the highest root on the simple roots.
    pub marks: IVec,
    /// Fundamental weights in simple-root coordinates.
    pub fundamental_weights: Vec<QVec>,
}

/// Recognizes `B` as a simply-laced Cartan matrix of an irreducible root system.
pub fn root_system(datum: &FcDatum) -> Option<RootSystem> {
    let g = datum.rank();
    let b = datum.b();
    let mut cartan = vec![vec![0i64; g]; g];
    for i in 0..g {
        for j in 0..g {
            let x = &b[i][j];
            if !x.is_integer() {
                return None;
            }
            let v = crate::arith::rational::q_to_i64(x)?;
            let ok = if i == j { v == 2 } else { v == 0 || v == -1 };
            if !ok {
                return None;
            }
            cartan[i][j] = v;
        }
    }
    let mut theta = vec![0i64; g];
    theta[0] = 1;
    let pair = |t: &IVec, j: usize| -> i64 { (0..g).map(|i| t[i] * cartan[i][j]).sum() };
    while let Some(j) = (0..g).find(|&j| pair(&theta, j) < 0) {
        theta[j] += 1;
        if theta.iter().sum::<i64>() > 1000 {
            return None;
        }
    }
    if theta.contains(&0) {
        return None;
    }
    let inv = inverse(b)?;
    let fundamental_weights = (0..g)
        .map(|i| (0..g).map(|r| inv[r][i].clone()).collect())
        .collect();
    Some(RootSystem {
        cartan,
        marks: theta,
        fundamental_weights,
    })
}

/// Alcove vertices `ω_i / m_i` that are vertices of the unit cell, when the
/// datum is a principal unimodular simply-laced root lattice; `None` otherwise.
pub fn vertex_representatives(datum: &FcDatum) -> Result<Option<Vec<QVec>>> {
    if !datum.is_principal() || datum.n_index() != 1 {
        return Ok(None);
    }
    let Some(rs) = root_system(datum) else {
        return Ok(None);
    };
    let rel = unit_relevant(datum)?;
    let g = datum.rank();
    let mut out = Vec::new();
    for (w, &m) in rs.fundamental_weights.iter().zip(&rs.marks) {
        let p: QVec = w.iter().map(|x| x / q(m)).collect();
        let mut tight: Vec<QVec> = Vec::new();
        for u in &rel {
            let val: Q = dot_iq(u, &p) + q(datum.pair_phi(u, u)) / q(2);
            if val < Q::zero() {
                return Err(Error::Internal(
                    "alcove vertex outside the Voronoi cell".into(),
                ));
            }
            if val.is_zero() {
                tight.push(to_q(u));
            }
        }
        if rank_of(&tight) == g {
            out.push(p);
        }
    }
    out.sort();
    Ok(Some(out))
}
