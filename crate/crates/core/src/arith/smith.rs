//! Smith and Hermite normal forms of integer matrices, and the lattice
//! utilities built on them (canonical coset representatives, saturation).

use serde::Serialize;

use super::matrix::{identity_i, imat_mul, imat_to_q, inverse, IMat};
use super::rational::{q_to_i64, QVec};

/// Result of a Smith normal form computation: `left * input * right = diag`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmithDecomposition {
    /// Unimodular `m x m` transform acting on rows.
    pub left: IMat,
    /// Unimodular `n x n` transform acting on columns.
    pub right: IMat,
    /// The diagonal matrix `left * input * right`.
    pub diagonal: IMat,
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, all positive.
    pub invariant_factors: Vec<i64>,
}

impl SmithDecomposition {
    /// Product of the invariant factors.
    pub fn product(&self) -> i64 {
        self.invariant_factors.iter().product()
    }
}

fn row_op(a: &mut [Vec<i128>], dst: usize, src: usize, k: i128) {
    if k == 0 {
        return;
    }
    let s = a[src].clone();
    for (x, y) in a[dst].iter_mut().zip(s) {
        *x -= k * y;
    }
}

fn col_op(a: &mut [Vec<i128>], dst: usize, src: usize, k: i128) {
    if k == 0 {
        return;
    }
    for r in a.iter_mut() {
        let y = r[src];
        r[dst] -= k * y;
    }
}

fn swap_cols(a: &mut [Vec<i128>], i: usize, j: usize) {
    for r in a.iter_mut() {
        r.swap(i, j);
    }
}

fn to_i128(m: &IMat) -> Vec<Vec<i128>> {
    m.iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect()
}

fn to_i64(m: &[Vec<i128>]) -> IMat {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|&x| i64::try_from(x).expect("Smith entry fits in i64"))
                .collect()
        })
        .collect()
}

/// Smith normal form with unimodular transforms.
pub fn smith(matrix: &IMat) -> SmithDecomposition {
    let m = matrix.len();
    let n = if m == 0 { 0 } else { matrix[0].len() };
    let mut a = to_i128(matrix);
    let mut l = to_i128(&identity_i(m));
    let mut r = to_i128(&identity_i(n));
    let mut t = 0;
    while t < m.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        l.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut r, t, pj);
        loop {
            let p = a[t][t];
            for i in t + 1..m {
                let k = a[i][t] / p;
                row_op(&mut a, i, t, k);
                row_op(&mut l, i, t, k);
            }
            for j in t + 1..n {
                let k = a[t][j] / p;
                col_op(&mut a, j, t, k);
                col_op(&mut r, j, t, k);
            }
            let row_rest = (t + 1..m).find(|&i| a[i][t] != 0);
            let col_rest = (t + 1..n).find(|&j| a[t][j] != 0);
            if let Some(i) = row_rest {
                a.swap(t, i);
                l.swap(t, i);
                continue;
            }
            if let Some(j) = col_rest {
                swap_cols(&mut a, t, j);
                swap_cols(&mut r, t, j);
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    row_op(&mut a, t, i, -1);
                    row_op(&mut l, t, i, -1);
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
            for x in l[t].iter_mut() {
                *x = -*x;
            }
        }
        t += 1;
    }
    let diagonal = to_i64(&a);
    let invariant_factors = (0..m.min(n))
        .map(|i| diagonal[i][i])
        .filter(|&d| d != 0)
        .collect();
    SmithDecomposition {
        left: to_i64(&l),
        right: to_i64(&r),
        diagonal,
        invariant_factors,
    }
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &IMat) -> IMat {
    let inv = inverse(&imat_to_q(m)).expect("unimodular matrix is invertible");
    inv.iter()
        .map(|r| {
            r.iter()
                .map(|x| q_to_i64(x).expect("unimodular inverse is integral"))
                .collect()
        })
        .collect()
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Lower-triangular Hermite normal form of the lattice spanned by the columns
/// of a full-row-rank `g x n` matrix. Returns the `g` nonzero columns as a
/// `g x g` matrix (row-major) with positive diagonal and `0 <= h[i][j] < h[i][i]`
/// for `j < i`.
pub fn hermite_lower(columns: &IMat) -> IMat {
    let g = columns.len();
    let n = columns[0].len();
    let mut a = to_i128(columns);
    for i in 0..g {
        for j in i + 1..n {
            if a[i][j] == 0 {
                continue;
            }
            let (x, y) = (a[i][i], a[i][j]);
            let (d, s, t) = ext_gcd(x, y);
            let (u, v) = (-y / d, x / d);
            for row in a.iter_mut() {
                let (ci, cj) = (row[i], row[j]);
                row[i] = s * ci + t * cj;
                row[j] = u * ci + v * cj;
            }
        }
        assert!(a[i][i] != 0, "hermite_lower needs full row rank");
        if a[i][i] < 0 {
            for row in a.iter_mut() {
                row[i] = -row[i];
            }
        }
        for j in 0..i {
            let k = a[i][j].div_euclid(a[i][i]);
            if k != 0 {
                for row in a.iter_mut() {
                    let c = row[i];
                    row[j] -= k * c;
                }
            }
        }
    }
    to_i64(&a.iter().map(|r| r[..g].to_vec()).collect::<Vec<_>>())
}

/// A full-rank sublattice of `Z^g` with canonical coset representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubLattice {
    hermite: IMat,
}

impl SubLattice {
    /// The lattice spanned by the columns of `columns` (must have full row rank).
    pub fn from_columns(columns: &IMat) -> Self {
        SubLattice {
            hermite: hermite_lower(columns),
        }
    }

    /// Hermite basis, one basis vector per column.
    pub fn hermite(&self) -> &IMat {
        &self.hermite
    }

    /// Index in `Z^g`.
    pub fn index(&self) -> i64 {
        (0..self.hermite.len())
            .map(|i| self.hermite[i][i])
            .product()
    }

    /// Canonical representative of `x` modulo the lattice: the unique
    /// `x - l` with `0 <= (x - l)_i < h_ii`.
    pub fn reduce(&self, x: &[i64]) -> Vec<i64> {
        let h = &self.hermite;
        let mut v = x.to_vec();
        for i in 0..h.len() {
            let k = v[i].div_euclid(h[i][i]);
            if k != 0 {
                for (r, vr) in v.iter_mut().enumerate() {
                    *vr -= k * h[r][i];
                }
            }
        }
        v
    }

    /// Membership test.
    pub fn contains(&self, x: &[i64]) -> bool {
        self.reduce(x).iter().all(|&c| c == 0)
    }

    /// All canonical coset representatives of `Z^g / L`, in lexicographic order.
    pub fn coset_representatives(&self) -> Vec<Vec<i64>> {
        let g = self.hermite.len();
        let mut out = vec![Vec::new()];
        for i in 0..g {
            let mut next = Vec::new();
            for prefix in &out {
                for c in 0..self.hermite[i][i] {
                    let mut p = prefix.clone();
                    p.push(c);
                    next.push(p);
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

/// A `Z`-basis of the saturated lattice `span(rows) ∩ Z^n` followed by a
/// completion to a basis of `Z^n`; returns `(saturation, complement)`.
pub fn saturation_with_complement(rows: &[QVec], n: usize) -> (IMat, IMat) {
    use super::rational::primitive;
    let ints: IMat = rows
        .iter()
        .map(|r| {
            primitive(r)
                .iter()
                .map(|x| q_to_i64(x).expect("small entries"))
                .collect()
        })
        .collect();
    if ints.is_empty() {
        return (Vec::new(), identity_i(n));
    }
    let sd = smith(&ints);
    let k = sd.invariant_factors.len();
    let rinv = unimodular_inverse(&sd.right);
    (rinv[..k].to_vec(), rinv[k..].to_vec())
}

/// Product helper used in tests of Smith transforms.
pub fn check_smith(input: &IMat, sd: &SmithDecomposition) -> bool {
    imat_mul(&imat_mul(&sd.left, input), &sd.right) == sd.diagonal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::matrix::idet;

    #[test]
    fn smith_examples() {
        for (m, f) in [
            (vec![vec![2, -1], vec![-1, 2]], vec![1, 3]),
            (vec![vec![1, 0], vec![0, 1]], vec![1, 1]),
            (vec![vec![2, 0], vec![0, 2]], vec![2, 2]),
            (
                vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]],
                vec![2, 6, 12],
            ),
        ] {
            let sd = smith(&m);
            assert_eq!(sd.invariant_factors, f);
            assert!(check_smith(&m, &sd));
            assert_eq!(idet(&sd.left).abs(), 1);
            assert_eq!(idet(&sd.right).abs(), 1);
        }
    }

    #[test]
    fn hermite_reduction_is_canonical() {
        let lat = SubLattice::from_columns(&vec![vec![4, 2], vec![2, 4]]);
        assert_eq!(lat.index(), 12);
        let a = lat.reduce(&[7, -3]);
        let b = lat.reduce(&[7 + 4 * 3 - 2, -3 + 2 * 3 - 4]);
        assert_eq!(a, b);
        assert_eq!(lat.coset_representatives().len(), 12);
        assert!(lat.contains(&[6, 6]));
        assert!(!lat.contains(&[1, 0]));
    }

    #[test]
    fn saturation_of_a_line() {
        use crate::arith::rational::q;
        let (sat, comp) = saturation_with_complement(&[vec![q(2), q(4)]], 2);
        assert_eq!(sat.len(), 1);
        assert_eq!(sat[0][0].abs(), 1);
        assert_eq!(sat[0][1].abs(), 2);
        let full = vec![sat[0].clone(), comp[0].clone()];
        assert_eq!(idet(&full).abs(), 1);
    }
}
