//! Exact rational scalars.
//!
//! `BigRational` already keeps itself in lowest terms with a positive
//! denominator, so the crate uses it directly rather than wrapping it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n/d` from machine integers. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `[-]digits` or `[-]digits/digits`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let malformed = || Error::MalformedRational(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let num = parse_signed(num).ok_or_else(malformed)?;
    let den = match den {
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            d.parse::<BigInt>().map_err(|_| malformed())?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(num, den))
}

fn parse_signed(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// `s^k` for any integer `k`.
pub fn pow_int(s: &Rational, k: i64) -> Result<Rational> {
    if k == 0 {
        return Ok(Rational::one());
    }
    if s.is_zero() {
        return if k < 0 {
            Err(Error::ZeroToNegativePower(k))
        } else {
            Ok(Rational::zero())
        };
    }
    let e = u32::try_from(k.unsigned_abs()).expect("exponent out of range");
    let p = Rational::new(s.numer().pow(e), s.denom().pow(e));
    Ok(if k < 0 { p.recip() } else { p })
}

/// `s^k` for `s != 0`. Panics when `s == 0` and `k < 0`; callers check the base first.
pub(crate) fn pow_nz(s: &Rational, k: i64) -> Rational {
    pow_int(s, k).expect("nonzero base")
}

/// `k(k-1)/2`, valid for negative `k` as well.
pub fn binom2(k: i64) -> i64 {
    k * (k - 1) / 2
}

/// True for `1` and `-1`, the only rational roots of unity.
pub fn is_unit_root(q: &Rational) -> bool {
    q.abs().is_one()
}

/// Exact `p/q` (or bare integer) rendering.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_reduces() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert_eq!(parse_rational("-10/4").unwrap(), rat(-5, 2));
        assert_eq!(parse_rational("0/5").unwrap(), int(0));
        assert_eq!(fmt_rational(&parse_rational("0/5").unwrap()), "0");
    }

    #[test]
    fn parse_rejects() {
        assert_eq!(parse_rational("7/0"), Err(Error::ZeroDenominator));
        for bad in ["", "-", "1/", "/2", "1.5", "1/-2", "+3", "a", "1/2/3", " 1"] {
            assert!(
                matches!(parse_rational(bad), Err(Error::MalformedRational(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn powers() {
        assert_eq!(pow_int(&rat(3, 2), 2).unwrap(), rat(9, 4));
        assert_eq!(pow_int(&rat(-7, 3), 0).unwrap(), int(1));
        assert_eq!(pow_int(&int(0), 0).unwrap(), int(1));
        assert_eq!(pow_int(&int(2), -3).unwrap(), rat(1, 8));
        assert_eq!(pow_int(&rat(-2, 3), -3).unwrap(), rat(-27, 8));
        assert_eq!(pow_int(&int(0), -1), Err(Error::ZeroToNegativePower(-1)));
        assert_eq!(pow_int(&int(0), 4).unwrap(), int(0));
    }

    #[test]
    fn binom2_values() {
        assert_eq!(binom2(0), 0);
        assert_eq!(binom2(1), 0);
        assert_eq!(binom2(2), 1);
        assert_eq!(binom2(5), 10);
        assert_eq!(binom2(-1), 1);
    }

    #[test]
    fn display_forms() {
        assert_eq!(fmt_rational(&rat(-3, 2)), "-3/2");
        assert_eq!(fmt_rational(&int(7)), "7");
    }
}
