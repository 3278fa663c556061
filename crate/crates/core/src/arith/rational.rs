//! Exact rationals and small vector helpers.
//!
//! Rationals are `num::BigRational`, always reduced with a positive
//! denominator, so structural equality is numeric equality.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use num::Integer;

use crate::error::{Error, Result};

/// Exact rational number.
pub type Q = BigRational;
/// Rational vector.
pub type QVec = Vec<Q>;
/// Integer lattice vector in standard coordinates.
pub type IVec = Vec<i64>;

/// The rational `n`.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// The rational `n / d`. Panics when `d == 0`.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Converts an integer vector to a rational one.
pub fn to_q(v: &[i64]) -> QVec {
    v.iter().map(|&x| q(x)).collect()
}

/// Converts a rational vector with integral entries to an integer vector.
pub fn to_i(v: &[Q]) -> Option<IVec> {
    v.iter()
        .map(|x| {
            if x.is_integer() {
                x.to_integer().to_i64()
            } else {
                None
            }
        })
        .collect()
}

/// Converts a rational vector to `f64` (for enumeration bounds and drawing only).
pub fn to_f(v: &[Q]) -> Vec<f64> {
    v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
}

/// Converts an integral rational to `i64`.
pub fn q_to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// Formats a rational as `"p"` or `"p/q"`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Formats a rational vector as `(a, b, ...)`.
pub fn fmt_qvec(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_q).collect();
    format!("({})", parts.join(", "))
}

/// Formats an integer vector as `(a, b, ...)`.
pub fn fmt_ivec(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Parses `"p"`, `"p/q"` or `"-p/q"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::parse("rational", format!("cannot parse {s:?}"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Q::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::parse(
                    "rational",
                    format!("zero denominator in {s:?}"),
                ));
            }
            Ok(Q::new(n, d))
        }
    }
}

/// Dot product of two rational vectors.
pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Dot product of an integer vector with a rational one.
pub fn dot_iq(a: &[i64], b: &[Q]) -> Q {
    a.iter()
        .zip(b)
        .fold(Q::zero(), |acc, (x, y)| acc + y * q(*x))
}

/// Integer dot product.
pub fn dot_i(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `a + b` for integer vectors.
pub fn add_i(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `a - b` for integer vectors.
pub fn sub_i(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `k * a` for integer vectors.
pub fn scale_i(k: i64, a: &[i64]) -> IVec {
    a.iter().map(|x| k * x).collect()
}

/// `a + b` for rational vectors.
pub fn add_q(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `a - b` for rational vectors.
pub fn sub_q(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `t * a` for rational vectors.
pub fn scale_q(t: &Q, a: &[Q]) -> QVec {
    a.iter().map(|x| x * t).collect()
}

/// Least common multiple of the denominators of `v` (1 for the empty vector).
pub fn denom_lcm(v: &[Q]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales a nonzero rational vector to the unique primitive integer vector on
/// the same ray. The zero vector is returned unchanged.
pub fn primitive(v: &[Q]) -> QVec {
    let l = denom_lcm(v);
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Q::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|x| Q::from_integer(x / &g)).collect()
}

/// Like [`primitive`] but also makes the first nonzero entry positive, which
/// gives a canonical generator of the line through `v`.
pub fn primitive_line(v: &[Q]) -> QVec {
    let p = primitive(v);
    match p.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => p.iter().map(|x| -x).collect(),
        _ => p,
    }
}

/// True when every entry is zero.
pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Least common multiple of positive integers.
pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "3", "-7", "1/2", "-3/4"] {
            assert_eq!(fmt_q(&parse_q(s).unwrap()), s);
        }
        assert_eq!(fmt_q(&parse_q("6/4").unwrap()), "3/2");
        assert_eq!(fmt_q(&parse_q("2/-4").unwrap()), "-1/2");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![qr(1, 2), qr(-3, 4), q(0)];
        assert_eq!(primitive(&v), vec![q(2), q(-3), q(0)]);
        let w = vec![q(0), q(-4), q(6)];
        assert_eq!(primitive_line(&w), vec![q(0), q(2), q(-3)]);
    }
}
