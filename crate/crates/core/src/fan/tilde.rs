//! Vectors of `X̃ = Z m₀ ⊕ X` and `X̃^∨ = Z f₀ ⊕ X^∨`.
//!
//! Both are stored as rational vectors of length `g + 1` whose first entry is
//! the `m₀` (respectively `f₀`) coordinate, so the pairing
//! `⟨x₀m₀ + x, u₀f₀ + u⟩ = u₀x₀ + u(x)` is the standard dot product.

use serde::Serialize;

use crate::arith::rational::{fmt_q, q, QVec, Q};

/// An element `x₀m₀ + x` of `X̃` (or `u₀f₀ + u` of `X̃^∨`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TildeVector {
    /// The `m₀` or `f₀` coordinate.
    pub x0: Q,
    /// The `X` or `X^∨` part.
    pub x: QVec,
}

impl TildeVector {
    /// `x₀m₀ + x`.
    pub fn new(x0: Q, x: QVec) -> TildeVector {
        TildeVector { x0, x }
    }

    /// The vector `m₀` (or `f₀`) in rank `g`.
    pub fn m0(g: usize) -> TildeVector {
        TildeVector::new(q(1), vec![q(0); g])
    }

    /// Reads a flat vector `(x₀, x)`.
    pub fn from_flat(v: &[Q]) -> TildeVector {
        TildeVector::new(v[0].clone(), v[1..].to_vec())
    }

    /// The flat vector `(x₀, x)`.
    pub fn to_flat(&self) -> QVec {
        let mut v = vec![self.x0.clone()];
        v.extend(self.x.iter().cloned());
        v
    }

    /// The pairing `u₀x₀ + u(x)`.
    pub fn pair(&self, other: &TildeVector) -> Q {
        &self.x0 * &other.x0 + crate::arith::rational::dot(&self.x, &other.x)
    }
}

impl std::fmt::Display for TildeVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.x.iter().map(fmt_q).collect();
        write!(f, "({}; {})", fmt_q(&self.x0), parts.join(", "))
    }
}

impl Serialize for TildeVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let flat: Vec<String> = self.to_flat().iter().map(fmt_q).collect();
        flat.serialize(s)
    }
}

/// Flat vector `(x₀, x)` from integer parts.
pub fn tilde(x0: i64, x: &[i64]) -> QVec {
    let mut v = vec![q(x0)];
    v.extend(x.iter().map(|&c| q(c)));
    v
}

/// The image of `(x₀, x)` under the dual of the translation `δ_w`:
/// `(x₀, x) ↦ (x₀, x - x₀ w)`.
pub fn delta_shift_dual(v: &[Q], w: &[i64]) -> QVec {
    let mut out = v.to_vec();
    for (o, &c) in out[1..].iter_mut().zip(w) {
        *o -= &v[0] * q(c);
    }
    out
}

/// The image of `(x₀, x) ∈ X̃` under `δ_w`: `(x₀ + w(x), x)`.
pub fn delta_shift_weight(v: &[Q], w: &[i64]) -> QVec {
    let mut out = v.to_vec();
    out[0] += crate::arith::rational::dot_iq(w, &v[1..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_and_shifts_are_compatible() {
        let w = [2, -1];
        let a = tilde(3, &[1, 4]);
        let b = tilde(2, &[-1, 5]);
        let lhs =
            crate::arith::rational::dot(&delta_shift_dual(&a, &w), &delta_shift_weight(&b, &w));
        assert_eq!(lhs, crate::arith::rational::dot(&a, &b));
        let t = TildeVector::from_flat(&a);
        assert_eq!(t.to_flat(), a);
        assert_eq!(t.to_string(), "(3; 1, 4)");
    }
}
