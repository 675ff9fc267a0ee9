//! Exact rational scalars.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn is_integral(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Floor of `q` as an `i64`; panics only for values far beyond the lattice
/// ranges used anywhere in the crate.
pub fn floor_i64(q: &Rational) -> i64 {
    q.floor()
        .to_integer()
        .to_i64()
        .expect("lattice coordinate exceeds i64")
}

pub fn sign(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

pub fn from_ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn dot_int(a: &[i64], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, _)| **x != 0)
        .fold(zero(), |acc, (x, y)| acc + y * BigInt::from(*x))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Always `"p/q"` form, `"p"` when the denominator is one.
pub fn format(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn lcm_of_denominators<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_agree() {
        for s in ["0", "3", "-7/2", "1/6"] {
            assert_eq!(format(&parse(s).unwrap()), s);
        }
        assert_eq!(parse("4/6").unwrap(), ratio(2, 3));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn floor_of_negative_fraction() {
        assert_eq!(floor_i64(&ratio(-1, 2)), -1);
        assert_eq!(floor_i64(&ratio(7, 2)), 3);
    }
}
