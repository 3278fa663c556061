//! Lattice reduction and enumeration under a positive-definite Gram matrix.
//!
//! Enumeration runs in `f64` with a safety margin and every candidate is then
//! re-checked in exact arithmetic, so results are exact.

use num::traits::{ToPrimitive, Zero};

use super::matrix::{mat_vec, quad, QMat};
use super::rational::{q, sub_q, to_q, IVec, Q};
use super::smith::unimodular_inverse;

/// LLL reduction (delta = 3/4) of the standard basis under the Gram matrix
/// `gram`. Returns the unimodular matrix `u` whose columns are the reduced
/// basis.
pub fn lll(gram: &QMat) -> Vec<Vec<i64>> {
    let n = gram.len();
    let gf: Vec<Vec<f64>> = gram
        .iter()
        .map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
        .collect();
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let col =
        |u: &Vec<Vec<i64>>, j: usize| -> Vec<f64> { (0..n).map(|i| u[i][j] as f64).collect() };
    let ip = |a: &[f64], b: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += a[i] * gf[i][j] * b[j];
            }
        }
        s
    };
    let gso = |u: &Vec<Vec<i64>>| -> (Vec<Vec<f64>>, Vec<f64>) {
        let cols: Vec<Vec<f64>> = (0..n).map(|j| col(u, j)).collect();
        let mut mu = vec![vec![0.0; n]; n];
        let mut bstar = vec![0.0; n];
        for i in 0..n {
            let mut v = ip(&cols[i], &cols[i]);
            for j in 0..i {
                let mut m = ip(&cols[i], &cols[j]);
                for k in 0..j {
                    m -= mu[j][k] * mu[i][k] * bstar[k];
                }
                mu[i][j] = m / bstar[j];
                v -= mu[i][j] * mu[i][j] * bstar[j];
            }
            bstar[i] = v;
        }
        (mu, bstar)
    };
    if n <= 1 {
        return u;
    }
    let mut k = 1;
    let mut guard = 0usize;
    while k < n && guard < 100_000 {
        guard += 1;
        for j in (0..k).rev() {
            let (mu, _) = gso(&u);
            let r = mu[k][j].round();
            if r != 0.0 {
                let r = r as i64;
                for row in u.iter_mut() {
                    row[k] -= r * row[j];
                }
            }
        }
        let (mu, bstar) = gso(&u);
        if bstar[k] < (0.75 - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1] {
            for row in u.iter_mut() {
                row.swap(k, k - 1);
            }
            k = if k > 1 { k - 1 } else { 1 };
        } else {
            k += 1;
        }
    }
    u
}

fn cholesky_q(g: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<f64>) {
    // Fincke-Pohst form: x^T G x = sum_i d_i (x_i + sum_{j>i} m_ij x_j)^2.
    let n = g.len();
    let mut a: Vec<Vec<f64>> = g.to_vec();
    let mut d = vec![0.0; n];
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        d[i] = a[i][i];
        for j in i + 1..n {
            m[i][j] = a[i][j] / d[i];
        }
        for k in i + 1..n {
            for l in i + 1..n {
                a[k][l] -= m[i][k] * m[i][l] * d[i];
            }
        }
    }
    (m, d)
}

fn enumerate_f64(gram: &[Vec<f64>], center: &[f64], radius: f64, visit: &mut dyn FnMut(&[i64])) {
    let n = gram.len();
    let (m, d) = cholesky_q(gram);
    let mut x = vec![0i64; n];
    fn rec(
        i: usize,
        rem: f64,
        x: &mut Vec<i64>,
        m: &[Vec<f64>],
        d: &[f64],
        c: &[f64],
        visit: &mut dyn FnMut(&[i64]),
    ) {
        let n = x.len();
        let mut shift = 0.0;
        for j in i + 1..n {
            shift += m[i][j] * (x[j] as f64 - c[j]);
        }
        let span = (rem.max(0.0) / d[i]).sqrt();
        let lo = (c[i] - shift - span - 1e-9).ceil() as i64;
        let hi = (c[i] - shift + span + 1e-9).floor() as i64;
        for v in lo..=hi {
            let t = v as f64 - c[i] + shift;
            let used = d[i] * t * t;
            if used > rem + 1e-7 * (1.0 + rem.abs()) {
                continue;
            }
            x[i] = v;
            if i == 0 {
                visit(x);
            } else {
                rec(i - 1, rem - used, x, m, d, c, visit);
            }
        }
    }
    if n == 0 {
        visit(&x);
        return;
    }
    let slack = radius + 1e-7 * (1.0 + radius.abs());
    rec(n - 1, slack, &mut x, &m, &d, center, visit);
}

/// Exact quadratic form `(z - c)^T G (z - c)`.
pub fn dist2(gram: &QMat, z: &[i64], center: &[Q]) -> Q {
    let diff = sub_q(&to_q(z), center);
    quad(gram, &diff)
}

/// `(z - c)^T G (z - c)` scaled to an integer, evaluated in `i128` with a
/// rational fallback on overflow.
struct ScaledQuad<'a> {
    gram: &'a QMat,
    center: &'a [Q],
    g: Vec<Vec<i128>>,
    c: Vec<i128>,
    cden: i128,
    scale: Q,
}

impl<'a> ScaledQuad<'a> {
    fn new(gram: &'a QMat, center: &'a [Q]) -> Option<Self> {
        let gden = super::rational::denom_lcm(&gram.iter().flatten().cloned().collect::<Vec<_>>());
        let cden = super::rational::denom_lcm(center);
        let gden_i = gden.to_i128()?;
        let cden_i = cden.to_i128()?;
        let g = gram
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| (x * Q::from_integer(gden.clone())).to_integer().to_i128())
                    .collect()
            })
            .collect::<Option<Vec<Vec<i128>>>>()?;
        let c = center
            .iter()
            .map(|x| (x * Q::from_integer(cden.clone())).to_integer().to_i128())
            .collect::<Option<Vec<i128>>>()?;
        let scale = Q::from_integer((gden_i * cden_i * cden_i).into());
        Some(ScaledQuad {
            gram,
            center,
            g,
            c,
            cden: cden_i,
            scale,
        })
    }

    fn value_i(&self, z: &[i64]) -> Option<i128> {
        let n = z.len();
        let diff: Vec<i128> = (0..n)
            .map(|i| {
                (z[i] as i128)
                    .checked_mul(self.cden)?
                    .checked_sub(self.c[i])
            })
            .collect::<Option<_>>()?;
        let mut s: i128 = 0;
        for i in 0..n {
            let mut row: i128 = 0;
            for j in 0..n {
                row = row.checked_add(self.g[i][j].checked_mul(diff[j])?)?;
            }
            s = s.checked_add(row.checked_mul(diff[i])?)?;
        }
        Some(s)
    }

    fn value(&self, z: &[i64]) -> Q {
        match self.value_i(z) {
            Some(v) => Q::from_integer(v.into()) / &self.scale,
            None => dist2(self.gram, z, self.center),
        }
    }
}

struct Reduced {
    u: Vec<Vec<i64>>,
    redf: Vec<Vec<f64>>,
    wcf: Vec<f64>,
}

fn reduce_problem(gram: &QMat, center: &[Q]) -> Reduced {
    let n = gram.len();
    let u = lll(gram);
    let uq: QMat = u
        .iter()
        .map(|r| r.iter().map(|&x| q(x)).collect())
        .collect();
    let ut: QMat = (0..n)
        .map(|i| (0..n).map(|j| uq[j][i].clone()).collect())
        .collect();
    let red = super::matrix::mat_mul(&super::matrix::mat_mul(&ut, gram), &uq);
    let uinv = unimodular_inverse(&u);
    let uinvq: QMat = uinv
        .iter()
        .map(|r| r.iter().map(|&x| q(x)).collect())
        .collect();
    let wc = mat_vec(&uinvq, center);
    let redf = red
        .iter()
        .map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
        .collect();
    let wcf = wc.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    Reduced { u, redf, wcf }
}

fn enumerate_exact(gram: &QMat, center: &[Q], red: &Reduced, radius: &Q) -> Vec<(Q, IVec)> {
    let n = gram.len();
    let exact = ScaledQuad::new(gram, center);
    let rf = radius.to_f64().unwrap_or(f64::INFINITY);
    let mut out = Vec::new();
    enumerate_f64(&red.redf, &red.wcf, rf, &mut |w| {
        let z: IVec = (0..n)
            .map(|i| (0..n).map(|j| red.u[i][j] * w[j]).sum())
            .collect();
        let d = match &exact {
            Some(e) => e.value(&z),
            None => dist2(gram, &z, center),
        };
        if &d <= radius {
            out.push((d, z));
        }
    });
    out
}

/// All integer vectors `z` with `(z - c)^T G (z - c) <= radius`, exactly.
/// The Gram matrix must be positive definite. Output is sorted.
pub fn ellipsoid_points(gram: &QMat, center: &[Q], radius: &Q) -> Vec<IVec> {
    if radius < &Q::zero() {
        return Vec::new();
    }
    let red = reduce_problem(gram, center);
    let mut out: Vec<IVec> = enumerate_exact(gram, center, &red, radius)
        .into_iter()
        .map(|(_, z)| z)
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Smallest `f64` distance found by enumeration with a shrinking radius.
fn closest_f64(red: &Reduced, start: f64) -> f64 {
    let n = red.redf.len();
    let (m, d) = cholesky_q(&red.redf);
    let c = &red.wcf;
    let mut best = start * (1.0 + 1e-9) + 1e-9;
    let mut x = vec![0i64; n];
    fn rec(
        i: usize,
        used_above: f64,
        x: &mut Vec<i64>,
        m: &[Vec<f64>],
        d: &[f64],
        c: &[f64],
        best: &mut f64,
    ) {
        let n = x.len();
        let mut shift = 0.0;
        for j in i + 1..n {
            shift += m[i][j] * (x[j] as f64 - c[j]);
        }
        let rem = *best - used_above;
        if rem < 0.0 {
            return;
        }
        let span = (rem / d[i]).sqrt();
        let lo = (c[i] - shift - span - 1e-9).ceil() as i64;
        let hi = (c[i] - shift + span + 1e-9).floor() as i64;
        for v in lo..=hi {
            let t = v as f64 - c[i] + shift;
            let used = used_above + d[i] * t * t;
            if used > *best {
                continue;
            }
            x[i] = v;
            if i == 0 {
                *best = used;
            } else {
                rec(i - 1, used, x, m, d, c, best);
            }
        }
    }
    if n > 0 {
        rec(n - 1, 0.0, &mut x, &m, &d, c, &mut best);
    }
    best
}

/// All integer vectors closest to `center` under the Gram matrix, with the
/// minimal squared distance.
pub fn closest_all(gram: &QMat, center: &[Q]) -> (Q, Vec<IVec>) {
    let n = gram.len();
    let red = reduce_problem(gram, center);
    let w: Vec<i64> = red.wcf.iter().map(|x| x.round() as i64).collect();
    let z0: IVec = (0..n)
        .map(|i| (0..n).map(|j| red.u[i][j] * w[j]).sum())
        .collect();
    let bound = dist2(gram, &z0, center);
    let approx = closest_f64(&red, bound.to_f64().unwrap_or(f64::INFINITY));
    let margin = 1e-7 * (1.0 + approx.abs());
    let trial = Q::from_float(approx + margin)
        .map(|r| r.min(bound.clone()))
        .unwrap_or(bound);
    let pts = enumerate_exact(gram, center, &red, &trial);
    let best = pts
        .iter()
        .map(|(d, _)| d.clone())
        .min()
        .expect("the enumeration radius covers the closest point");
    let mut mins: Vec<IVec> = pts
        .into_iter()
        .filter(|(d, _)| *d == best)
        .map(|(_, z)| z)
        .collect();
    mins.sort();
    mins.dedup();
    (best, mins)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::qr;

    fn g(rows: &[&[i64]]) -> QMat {
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect()
    }

    #[test]
    fn counts_short_vectors_of_a2() {
        let gram = g(&[&[2, -1], &[-1, 2]]);
        let pts = ellipsoid_points(&gram, &[q(0), q(0)], &q(2));
        assert_eq!(pts.len(), 7);
    }

    #[test]
    fn closest_points_on_a_tie() {
        let gram = g(&[&[1]]);
        let (d, pts) = closest_all(&gram, &[qr(1, 2)]);
        assert_eq!(d, qr(1, 4));
        assert_eq!(pts, vec![vec![0], vec![1]]);
    }

    #[test]
    fn lll_is_unimodular_on_a_skewed_form() {
        let gram = g(&[&[1, 10], &[10, 101]]);
        let u = lll(&gram);
        assert_eq!(crate::arith::matrix::idet(&u).abs(), 1);
        let pts = ellipsoid_points(&gram, &[q(0), q(0)], &q(1));
        assert_eq!(pts.len(), 5);
    }
}
