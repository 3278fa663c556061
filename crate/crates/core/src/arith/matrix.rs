//! Dense exact matrices over the rationals and small integer matrices.
//!
//! Matrices are row-major `Vec<Vec<_>>`. Integer matrices that describe
//! lattice bases store one basis vector per column.

use num::traits::{One, Signed, Zero};

use super::rational::{q, QVec, Q};

/// Rational matrix, row-major.
pub type QMat = Vec<Vec<Q>>;
/// Integer matrix, row-major.
pub type IMat = Vec<Vec<i64>>;

/// Converts an integer matrix to a rational one.
pub fn imat_to_q(m: &IMat) -> QMat {
    m.iter()
        .map(|r| r.iter().map(|&x| q(x)).collect())
        .collect()
}

/// Transpose of a rectangular matrix.
pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    (0..cols)
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Identity matrix of size `n`.
pub fn identity_q(n: usize) -> QMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect()
}

/// Integer identity matrix of size `n`.
pub fn identity_i(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Rational matrix-vector product.
pub fn mat_vec(m: &QMat, v: &[Q]) -> QVec {
    m.iter().map(|r| super::rational::dot(r, v)).collect()
}

/// Integer matrix-vector product.
pub fn imat_vec(m: &IMat, v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Rational matrix product.
pub fn mat_mul(a: &QMat, b: &QMat) -> QMat {
    let bt = transpose(b);
    a.iter()
        .map(|r| bt.iter().map(|c| super::rational::dot(r, c)).collect())
        .collect()
}

/// Integer matrix product.
pub fn imat_mul(a: &IMat, b: &IMat) -> IMat {
    let bt = transpose(b);
    a.iter()
        .map(|r| {
            bt.iter()
                .map(|c| r.iter().zip(c).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect()
}

/// Reduced row echelon form together with the pivot columns.
pub fn rref(m: &QMat) -> (QMat, Vec<usize>) {
    let mut a: QMat = m.to_vec();
    let rows = a.len();
    if rows == 0 {
        return (a, Vec::new());
    }
    let cols = a[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let t = &a[r][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Rank of a rational matrix.
pub fn rank(m: &QMat) -> usize {
    rref(m).1.len()
}

/// Rank of a list of rational vectors of common length.
pub fn rank_of(vectors: &[QVec]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(&vectors.to_vec())
}

/// Basis of the right null space `{x : m x = 0}` with `cols` unknowns.
pub fn nullspace(m: &QMat, cols: usize) -> Vec<QVec> {
    if m.is_empty() {
        return (0..cols)
            .map(|i| {
                (0..cols)
                    .map(|j| if i == j { Q::one() } else { Q::zero() })
                    .collect()
            })
            .collect();
    }
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

/// Determinant of a square rational matrix.
pub fn det(m: &QMat) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &a[c][j] * &f;
                a[i][j] -= t;
            }
        }
    }
    d
}

/// Inverse of a square rational matrix, or `None` when singular.
pub fn inverse(m: &QMat) -> Option<QMat> {
    let n = m.len();
    let aug: QMat = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Unique solution of `m x = b` for square nonsingular `m`.
pub fn solve(m: &QMat, b: &[Q]) -> Option<QVec> {
    inverse(m).map(|inv| mat_vec(&inv, b))
}

/// Solves `m x = b` for a possibly rectangular `m`, returning one solution.
pub fn solve_any(m: &QMat, b: &[Q]) -> Option<QVec> {
    let rows = m.len();
    if rows == 0 {
        return None;
    }
    let cols = m[0].len();
    let aug: QMat = m
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut row = r.clone();
            row.push(x.clone());
            row
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[row][cols].clone();
    }
    Some(x)
}

/// Orthogonal complement (standard inner product) of the span of `vectors` in
/// dimension `n`.
pub fn orth_complement(vectors: &[QVec], n: usize) -> Vec<QVec> {
    nullspace(&vectors.to_vec(), n)
}

/// Leading principal minors of a square matrix.
pub fn leading_minors(m: &QMat) -> Vec<Q> {
    (1..=m.len())
        .map(|k| {
            let sub: QMat = m[..k].iter().map(|r| r[..k].to_vec()).collect();
            det(&sub)
        })
        .collect()
}

/// True when the symmetric matrix is positive definite.
pub fn is_positive_definite(m: &QMat) -> bool {
    leading_minors(m).iter().all(|x| x.is_positive())
}

/// Quadratic form `v^T m v`.
pub fn quad(m: &QMat, v: &[Q]) -> Q {
    super::rational::dot(v, &mat_vec(m, v))
}

/// Bilinear form `a^T m b`.
pub fn bilin(m: &QMat, a: &[Q], b: &[Q]) -> Q {
    super::rational::dot(a, &mat_vec(m, b))
}

/// Integer determinant via exact rational elimination.
pub fn idet(m: &IMat) -> i64 {
    let d = det(&imat_to_q(m));
    super::rational::q_to_i64(&d).expect("integer determinant")
}
