//! Subspace helpers shared by cones and polytopes.

use num::traits::One;

use crate::arith::matrix::{inverse, mat_mul, mat_vec, rref, transpose, QMat};
use crate::arith::rational::{dot, primitive_line, QVec, Q};

/// Canonical basis of `span(vectors)`: the nonzero rows of the reduced row
/// echelon form, each scaled to a primitive integer vector with positive
/// leading entry.
pub(crate) fn canonical_subspace(vectors: &[QVec], dim: usize) -> Vec<QVec> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = rref(&vectors.to_vec());
    r.into_iter()
        .take(pivots.len())
        .map(|row| {
            debug_assert_eq!(row.len(), dim);
            primitive_line(&row)
        })
        .collect()
}

/// Orthogonal projection onto the complement of `span(basis)`, where `basis`
/// is linearly independent; `None` stands for the identity.
pub(crate) fn projector(basis: &[QVec]) -> Option<QMat> {
    if basis.is_empty() {
        return None;
    }
    let m: QMat = basis.to_vec();
    let gram: QMat = m
        .iter()
        .map(|a| m.iter().map(|b| dot(a, b)).collect())
        .collect();
    let inv = inverse(&gram).expect("independent basis");
    let d = basis[0].len();
    let coef = mat_mul(&transpose(&m), &inv);
    let corr = mat_mul(&coef, &m);
    Some(
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        if i == j {
                            Q::one() - &corr[i][j]
                        } else {
                            -corr[i][j].clone()
                        }
                    })
                    .collect()
            })
            .collect(),
    )
}

/// Applies a projector from [`projector`].
pub(crate) fn project_with(p: &Option<QMat>, v: &[Q]) -> QVec {
    match p {
        None => v.to_vec(),
        Some(m) => mat_vec(m, v),
    }
}
