//! High-precision complex scalars backed by `astro-float`.
//!
//! Every value carries the number of significant decimal digits it was
//! computed at. Binary operations run at the smaller of the two operands'
//! precisions, so a low-precision input can never be silently promoted.

use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_traits::{Signed, ToPrimitive};

use super::rational::Rational;
use crate::error::{Error, Result};

pub const MIN_DIGITS: u32 = 15;
pub const DEFAULT_DIGITS: u32 = 50;

const RM: RoundingMode = RoundingMode::ToEven;
const GUARD_BITS: usize = 64;

/// Working precision in bits for `digits` significant decimal digits.
pub fn bits_for(digits: u32) -> usize {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as usize + GUARD_BITS
}

fn consts() -> Consts {
    Consts::new().expect("astro-float constants cache")
}

pub(crate) fn bf_from_rational(q: &Rational, p: usize) -> BigFloat {
    let part = |n: &num_bigint::BigInt| match n.to_i64() {
        Some(v) => BigFloat::from_i64(v, p),
        None => BigFloat::parse(&n.to_string(), Radix::Dec, p, RM, &mut consts()),
    };
    let num = part(q.numer());
    if q.denom() == &num_bigint::BigInt::from(1) {
        num
    } else {
        num.div(&part(q.denom()), p, RM)
    }
}

fn finite(x: &BigFloat) -> bool {
    !(x.is_nan() || x.is_inf())
}

/// Complex number `re + i·im` with a declared decimal precision.
#[derive(Clone)]
pub struct ComplexApprox {
    re: BigFloat,
    im: BigFloat,
    digits: u32,
}

impl ComplexApprox {
    pub fn new(re: BigFloat, im: BigFloat, digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::Precision {
                min: MIN_DIGITS,
                got: digits,
            });
        }
        if !finite(&re) || !finite(&im) {
            return Err(Error::NonFinite);
        }
        Ok(Self { re, im, digits })
    }

    fn raw(re: BigFloat, im: BigFloat, digits: u32) -> Result<Self> {
        if !finite(&re) || !finite(&im) {
            return Err(Error::NonFinite);
        }
        Ok(Self { re, im, digits })
    }

    pub fn zero(digits: u32) -> Result<Self> {
        let p = bits_for(digits);
        Self::new(BigFloat::from_u8(0, p), BigFloat::from_u8(0, p), digits)
    }

    pub fn one(digits: u32) -> Result<Self> {
        let p = bits_for(digits);
        Self::new(BigFloat::from_u8(1, p), BigFloat::from_u8(0, p), digits)
    }

    pub fn from_rational(q: &Rational, digits: u32) -> Result<Self> {
        let p = bits_for(digits);
        Self::new(bf_from_rational(q, p), BigFloat::from_u8(0, p), digits)
    }

    pub fn from_rationals(re: &Rational, im: &Rational, digits: u32) -> Result<Self> {
        let p = bits_for(digits);
        Self::new(bf_from_rational(re, p), bf_from_rational(im, p), digits)
    }

    pub fn precision_digits(&self) -> u32 {
        self.digits
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    fn prec_with(&self, other: &Self) -> (u32, usize) {
        let d = self.digits.min(other.digits);
        (d, bits_for(d))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `Some(n)` when the value is exactly the integer `n`.
    pub fn as_integer(&self) -> Option<i64> {
        if !self.im.is_zero() || !self.re.is_int() {
            return None;
        }
        let s = self.re.format(Radix::Dec, RM, &mut consts()).ok()?;
        let d = DecimalParts::parse(&s)?;
        if d.digits.is_empty() {
            return Some(0);
        }
        let exp = usize::try_from(d.exp).ok()?;
        if exp > 18 {
            return None;
        }
        let mut digits = d.digits.clone();
        digits.resize(exp + 1, b'0');
        let text: String = digits[..=exp].iter().map(|&b| b as char).collect();
        let v: i64 = text.parse().ok()?;
        Some(if d.negative { -v } else { v })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (d, p) = self.prec_with(other);
        Self::raw(self.re.add(&other.re, p, RM), self.im.add(&other.im, p, RM), d)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let (d, p) = self.prec_with(other);
        Self::raw(self.re.sub(&other.re, p, RM), self.im.sub(&other.im, p, RM), d)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (d, p) = self.prec_with(other);
        if self.im.is_zero() && other.im.is_zero() {
            return Self::raw(self.re.mul(&other.re, p, RM), BigFloat::from_u8(0, p), d);
        }
        let re = self
            .re
            .mul(&other.re, p, RM)
            .sub(&self.im.mul(&other.im, p, RM), p, RM);
        let im = self
            .re
            .mul(&other.im, p, RM)
            .add(&self.im.mul(&other.re, p, RM), p, RM);
        Self::raw(re, im, d)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.recip()?)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::VanishingDenominator("division by zero".into()));
        }
        let p = bits_for(self.digits);
        if self.im.is_zero() {
            return Self::raw(self.re.reciprocal(p, RM), BigFloat::from_u8(0, p), self.digits);
        }
        let n = self.norm_sqr();
        Self::raw(self.re.div(&n, p, RM), self.im.neg().div(&n, p, RM), self.digits)
    }

    pub fn neg(&self) -> Self {
        Self {
            re: self.re.neg(),
            im: self.im.neg(),
            digits: self.digits,
        }
    }

    pub fn scale(&self, q: &Rational) -> Result<Self> {
        self.mul(&Self::from_rational(q, self.digits)?)
    }

    /// `self^k` by repeated squaring; negative `k` inverts first.
    pub fn powi(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(self.digits)?;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    fn norm_sqr(&self) -> BigFloat {
        let p = bits_for(self.digits);
        self.re
            .mul(&self.re, p, RM)
            .add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    /// `|self|` as a real float.
    pub fn magnitude(&self) -> BigFloat {
        let p = bits_for(self.digits);
        if self.im.is_zero() {
            return self.re.abs();
        }
        if self.re.is_zero() {
            return self.im.abs();
        }
        self.norm_sqr().sqrt(p, RM)
    }

    /// `|self|` as a real `ComplexApprox`.
    pub fn abs(&self) -> Self {
        let p = bits_for(self.digits);
        Self {
            re: self.magnitude(),
            im: BigFloat::from_u8(0, p),
            digits: self.digits,
        }
    }

    /// True when `|self| < bound`.
    pub fn magnitude_below(&self, bound: f64) -> bool {
        let p = bits_for(self.digits);
        let b = BigFloat::from_f64(bound, p);
        matches!(cmp_bf(&self.magnitude(), &b), Ordering::Less)
    }

    /// `base^exponent` on the principal branch, for a positive rational base.
    /// Integer exponents are evaluated exactly before rounding.
    pub fn rational_pow(base: &Rational, exponent: &ComplexApprox) -> Result<Self> {
        let digits = exponent.digits;
        if let Some(k) = exponent.as_integer() {
            return Self::from_rational(&super::rational::pow_int(base, k)?, digits);
        }
        if !base.is_positive() {
            return Err(Error::Domain(format!(
                "non-integer power of non-positive base {base}"
            )));
        }
        let p = bits_for(digits);
        let mut cc = consts();
        let ln = bf_from_rational(base, p).ln(p, RM, &mut cc);
        let wr = exponent.re.mul(&ln, p, RM);
        let wi = exponent.im.mul(&ln, p, RM);
        let scale = wr.exp(p, RM, &mut cc);
        if wi.is_zero() {
            return Self::raw(scale, BigFloat::from_u8(0, p), digits);
        }
        let re = scale.mul(&wi.cos(p, RM, &mut cc), p, RM);
        let im = scale.mul(&wi.sin(p, RM, &mut cc), p, RM);
        Self::raw(re, im, digits)
    }

    /// Decimal rendering with `sig` significant digits per part.
    pub fn to_decimal_string(&self, sig: usize) -> String {
        let re = format_real(&self.re, sig);
        if self.im.is_zero() {
            return re;
        }
        let im = format_real(&self.im.abs(), sig);
        let sign = if self.im.is_negative() { '-' } else { '+' };
        format!("{re} {sign} {im}i")
    }

    /// Lossy conversion, for diagnostics only.
    pub fn to_f64_lossy(&self) -> (f64, f64) {
        let f = |x: &BigFloat| {
            format_real(x, 20)
                .parse::<f64>()
                .unwrap_or(f64::NAN)
        };
        (f(&self.re), f(&self.im))
    }
}

impl fmt::Debug for ComplexApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexApprox({}; {} digits)", self.to_decimal_string(20), self.digits)
    }
}

impl fmt::Display for ComplexApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string(self.digits as usize))
    }
}

pub(crate) fn cmp_bf(a: &BigFloat, b: &BigFloat) -> Ordering {
    match a.cmp(b) {
        Some(c) if c < 0 => Ordering::Less,
        Some(0) => Ordering::Equal,
        _ => Ordering::Greater,
    }
}

/// Sign, significant digits and decimal exponent of a formatted float:
/// value = ±d₀.d₁d₂… × 10^exp.
struct DecimalParts {
    negative: bool,
    digits: Vec<u8>,
    exp: i64,
}

impl DecimalParts {
    fn parse(s: &str) -> Option<Self> {
        let (negative, body) = match s.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, s),
        };
        let (mant, exp) = match body.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.trim_start_matches('+').parse::<i64>().ok()?),
            None => (body, 0),
        };
        let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
        let mut digits: Vec<u8> = int_part.bytes().chain(frac_part.bytes()).collect();
        if !digits.iter().all(u8::is_ascii_digit) {
            return None;
        }
        // position of the decimal point relative to the first digit
        let mut exp = exp + int_part.len() as i64 - 1;
        while digits.first() == Some(&b'0') {
            digits.remove(0);
            exp -= 1;
        }
        while digits.last() == Some(&b'0') {
            digits.pop();
        }
        Some(Self {
            negative: negative && !digits.is_empty(),
            digits,
            exp,
        })
    }
}

/// Rounds to `sig` significant digits; positional notation for moderate
/// exponents, scientific otherwise.
fn format_real(x: &BigFloat, sig: usize) -> String {
    let sig = sig.max(1);
    let s = match x.format(Radix::Dec, RM, &mut consts()) {
        Ok(s) => s,
        Err(_) => return "NaN".into(),
    };
    let Some(mut d) = DecimalParts::parse(&s) else {
        return s;
    };
    if d.digits.is_empty() {
        d.digits = vec![b'0'];
        d.exp = 0;
    } else if d.digits.len() > sig {
        let round_up = d.digits[sig] >= b'5';
        d.digits.truncate(sig);
        if round_up {
            let mut i = sig;
            loop {
                if i == 0 {
                    d.digits.insert(0, b'1');
                    d.digits.truncate(sig);
                    d.exp += 1;
                    break;
                }
                i -= 1;
                if d.digits[i] == b'9' {
                    d.digits[i] = b'0';
                } else {
                    d.digits[i] += 1;
                    break;
                }
            }
        }
    }
    d.digits.resize(sig, b'0');
    let sign = if d.negative { "-" } else { "" };
    let ds: String = d.digits.iter().map(|&b| b as char).collect();
    if d.exp >= 0 && (d.exp as usize) < sig {
        let k = d.exp as usize + 1;
        let (a, b) = ds.split_at(k);
        if b.is_empty() {
            format!("{sign}{a}")
        } else {
            format!("{sign}{a}.{b}")
        }
    } else if d.exp < 0 && d.exp >= -5 {
        let zeros = "0".repeat((-d.exp - 1) as usize);
        format!("{sign}0.{zeros}{ds}")
    } else {
        let (a, b) = ds.split_at(1);
        let b = if b.is_empty() { String::new() } else { format!(".{b}") };
        format!("{sign}{a}{b}e{}", d.exp)
    }
}

/// Exact-to-numeric bridge used when comparing against rational oracles.
pub fn distance_to_rational(z: &ComplexApprox, q: &Rational) -> Result<ComplexApprox> {
    Ok(z.sub(&ComplexApprox::from_rational(q, z.precision_digits())?)?.abs())
}

impl PartialEq for ComplexApprox {
    fn eq(&self, other: &Self) -> bool {
        self.digits == other.digits
            && cmp_bf(&self.re, &other.re) == Ordering::Equal
            && cmp_bf(&self.im, &other.im) == Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn c(q: Rational) -> ComplexApprox {
        ComplexApprox::from_rational(&q, 50).unwrap()
    }

    #[test]
    fn precision_floor() {
        assert!(matches!(
            ComplexApprox::from_rational(&int(1), 10),
            Err(Error::Precision { .. })
        ));
    }

    #[test]
    fn arithmetic_basics() {
        let i = ComplexApprox::from_rationals(&int(0), &int(1), 50).unwrap();
        let m1 = i.mul(&i).unwrap();
        assert_eq!(m1.to_decimal_string(10), "-1.000000000");
        let half = c(rat(1, 2));
        assert_eq!(half.recip().unwrap().to_decimal_string(5), "2.0000");
        assert!(c(int(0)).recip().is_err());
        let z = ComplexApprox::from_rationals(&int(3), &int(4), 30).unwrap();
        assert_eq!(z.abs().to_decimal_string(6), "5.00000");
        let w = z.mul(&z.recip().unwrap()).unwrap();
        assert!(w.sub(&ComplexApprox::one(30).unwrap()).unwrap().magnitude_below(1e-28));
    }

    #[test]
    fn precision_propagates_as_min() {
        let a = ComplexApprox::from_rational(&int(1), 20).unwrap();
        let b = ComplexApprox::from_rational(&int(2), 60).unwrap();
        assert_eq!(a.add(&b).unwrap().precision_digits(), 20);
        assert_eq!(b.mul(&a).unwrap().precision_digits(), 20);
    }

    #[test]
    fn integer_detection() {
        assert_eq!(c(int(3)).as_integer(), Some(3));
        assert_eq!(c(int(-12)).as_integer(), Some(-12));
        assert_eq!(c(int(0)).as_integer(), Some(0));
        assert_eq!(c(int(1000)).as_integer(), Some(1000));
        assert_eq!(c(rat(1, 2)).as_integer(), None);
    }

    #[test]
    fn powers_and_rational_pow() {
        assert_eq!(c(int(2)).powi(10).unwrap().to_decimal_string(6), "1024.00");
        assert_eq!(c(int(2)).powi(-2).unwrap().to_decimal_string(3), "0.250");
        let r = ComplexApprox::rational_pow(&int(4), &c(rat(1, 2))).unwrap();
        assert!(distance_to_rational(&r, &int(2)).unwrap().magnitude_below(1e-45));
        let r = ComplexApprox::rational_pow(&int(2), &c(int(-3))).unwrap();
        assert_eq!(r, c(rat(1, 8)));
        assert!(ComplexApprox::rational_pow(&int(-2), &c(rat(1, 2))).is_err());
        // 2^(i·π/ln 2) = e^{iπ} = -1
        let pi_over_ln2 = {
            let p = bits_for(50);
            let mut cc = consts();
            let pi = cc.pi(p, RM);
            let ln2 = BigFloat::from_u8(2, p).ln(p, RM, &mut cc);
            pi.div(&ln2, p, RM)
        };
        let e = ComplexApprox::new(BigFloat::from_u8(0, bits_for(50)), pi_over_ln2, 50).unwrap();
        let r = ComplexApprox::rational_pow(&int(2), &e).unwrap();
        assert!(distance_to_rational(&r, &int(-1)).unwrap().magnitude_below(1e-45));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(c(int(2)).to_decimal_string(5), "2.0000");
        assert_eq!(c(int(0)).to_decimal_string(3), "0.00");
        assert_eq!(c(rat(-3, 2)).to_decimal_string(4), "-1.500");
        assert_eq!(c(rat(2, 3)).to_decimal_string(4), "0.6667");
        assert_eq!(c(rat(1, 3000)).to_decimal_string(3), "0.000333");
        assert_eq!(c(rat(1, 3_000_000)).to_decimal_string(3), "3.33e-7");
        assert_eq!(c(int(123456)).to_decimal_string(3), "1.23e5");
        assert_eq!(c(rat(99999, 100000)).to_decimal_string(3), "1.00");
        let z = ComplexApprox::from_rationals(&rat(1, 2), &int(-2), 20).unwrap();
        assert_eq!(z.to_decimal_string(3), "0.500 - 2.00i");
    }
}
