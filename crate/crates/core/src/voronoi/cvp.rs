//! Closest-vector decomposition `x = γ + 2ℓφ(z)` with `γ ∈ Σ_ℓ`, and the
//! valuation `D_ℓ`.

use serde::Serialize;

use crate::arith::lattice::closest_all;
use crate::arith::rational::{dot_i, q, q_to_i64, sub_i, to_q, IVec, QVec, Q};
use crate::datum::{FcDatum, Level};
use crate::error::{Error, Result};

/// A decomposition `x = γ + 2ℓφ(z)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Decomposition {
    /// The remainder `γ ∈ Σ_ℓ`.
    pub gamma: IVec,
    /// The center `z ∈ X^∨`.
    pub z: IVec,
}

/// The point `B x / (2ℓN)` whose closest integer vectors under `G` are the
/// centers of the cells containing `x`.
fn cvp_center(datum: &FcDatum, level: Level, x: &[Q]) -> QVec {
    let denom = q(level.k() * datum.n_index());
    crate::arith::matrix::mat_vec(datum.b(), x)
        .into_iter()
        .map(|c| c / &denom)
        .collect()
}

/// All `z ∈ X^∨` with `x ∈ Σ_ℓ(z)`, sorted. These minimize `E_ℓ(z) - z(x)`.
pub fn cvp_all(datum: &FcDatum, level: Level, x: &[i64]) -> Vec<IVec> {
    cvp_all_q(datum, level, &to_q(x))
}

/// All `z ∈ X^∨` with the rational point `x ∈ Σ_ℓ(z)`, sorted.
pub fn cvp_all_q(datum: &FcDatum, level: Level, x: &[Q]) -> Vec<IVec> {
    let c = cvp_center(datum, level, x);
    closest_all(datum.gram_q(), &c).1
}

/// The decomposition of `x` with the lexicographically smallest remainder `γ`.
pub fn cvp_decompose(datum: &FcDatum, level: Level, x: &[i64]) -> Decomposition {
    cvp_all(datum, level, x)
        .into_iter()
        .map(|z| Decomposition {
            gamma: sub_i(x, &datum.shift(level, &z)),
            z,
        })
        .min_by(|a, b| a.gamma.cmp(&b.gamma))
        .expect("every point lies in some cell")
}

/// `D_ℓ(x) = C_ℓ(x) - C_ℓ(γ)`, a nonnegative integer vanishing exactly on `Σ_ℓ`.
pub fn d_value(datum: &FcDatum, level: Level, x: &[i64]) -> Result<i64> {
    let dec = cvp_decompose(datum, level, x);
    let v = datum.c_value(level, x) - datum.c_value(level, &dec.gamma);
    q_to_i64(&v).ok_or_else(|| {
        Error::NonIntegralValuation(format!(
            "D at {:?} equals {}",
            x,
            crate::arith::rational::fmt_q(&v)
        ))
    })
}

/// `E_ℓ(z) + z(γ)`, the valuation of `x = γ + 2ℓφ(z)` read from a decomposition.
pub fn decomposition_valuation(datum: &FcDatum, level: Level, dec: &Decomposition) -> Q {
    datum.e_level_q(level, &dec.z) + q(dot_i(&dec.z, &dec.gamma))
}
