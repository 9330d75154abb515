//! Exact rational scalars and dense vectors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;
pub type QVec = Vec<Rat>;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(v: &[i64]) -> QVec {
    v.iter().map(|&x| int(x)).collect()
}

pub fn zeros(n: usize) -> QVec {
    vec![Rat::zero(); n]
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Rat], b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rat], s: &Rat) -> QVec {
    a.iter().map(|x| x * s).collect()
}

pub fn add_assign(a: &mut [Rat], b: &[Rat]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

pub fn is_zero(a: &[Rat]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Converts to `i64` entries when every entry is an integer that fits.
pub fn to_ints(a: &[Rat]) -> Option<Vec<i64>> {
    a.iter().map(|x| if x.is_integer() { i64::try_from(x.to_integer()).ok() } else { None }).collect()
}

/// `p/q` (or `p` for integers).
pub fn format_rat(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Short display used in tables: `1-10` for small integer vectors (each entry one
/// digit, minus sign prefixed), `(1/2,1,0)` otherwise.
pub fn compact(a: &[Rat]) -> String {
    if let Some(ints) = to_ints(a) {
        if ints.iter().all(|x| x.abs() < 10) {
            return ints.iter().map(|x| x.to_string()).collect();
        }
    }
    let parts: Vec<String> = a.iter().map(format_rat).collect();
    format!("({})", parts.join(","))
}

/// Inverse of [`compact`].
pub fn parse_compact(s: &str) -> Result<QVec> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        return inner.split(',').map(parse_rat).collect();
    }
    let mut out = Vec::new();
    let mut neg = false;
    for ch in s.chars() {
        match ch {
            '-' => neg = true,
            '0'..='9' => {
                let d = i64::from(ch as u8 - b'0');
                out.push(int(if neg { -d } else { d }));
                neg = false;
            }
            _ => return Err(Error::Parse(format!("bad compact vector {s:?}"))),
        }
    }
    if neg {
        return Err(Error::Parse(format!("dangling sign in {s:?}")));
    }
    Ok(out)
}

pub fn is_nonnegative(a: &[Rat]) -> bool {
    a.iter().all(|x| !x.is_negative())
}

/// Lowest common multiple of the denominators.
pub fn common_denominator(a: &[Rat]) -> BigInt {
    a.iter().fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_round_trip() {
        for v in [qvec(&[1, -1, 0, 0]), vec![frac(1, 2), int(1)], qvec(&[12, 0])] {
            assert_eq!(parse_compact(&compact(&v)).unwrap(), v);
        }
        assert_eq!(compact(&qvec(&[1, -1, 0, 0])), "1-100");
        assert_eq!(compact(&[frac(1, 2), int(3)]), "(1/2,3)");
    }

    #[test]
    fn parse_rat_rejects_zero_denominator() {
        assert!(parse_rat("1/0").is_err());
        assert_eq!(parse_rat("-6/4").unwrap(), frac(-3, 2));
    }
}
