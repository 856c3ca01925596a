//! Sparse Laurent polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use super::complex::ComplexApprox;
use super::rational::{parse_rational, pow_int, pow_nz, Rational};
use crate::error::{Error, Result};

/// Finite sum `Σ c_e x^e` over integer exponents `e`.
///
/// Only nonzero coefficients are stored, so structural equality is equality
/// of functions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

fn add_exp(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("exponent overflow")
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c·x^e`.
    pub fn monomial(c: Rational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// Sums the given terms; repeated exponents accumulate.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.min_exponent().is_some_and(|e| e < 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (add_exp(*e, k), v.clone()))
                .collect(),
        }
    }

    /// The substitution `f(x) ↦ f(c·x)`.
    pub fn scale_arg(&self, c: &Rational) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroScale);
        }
        Ok(Self {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (*e, v * pow_nz(c, *e)))
                .collect(),
        })
    }

    /// Exact value at `x0`.
    pub fn eval(&self, x0: &Rational) -> Result<Rational> {
        if x0.is_zero() && self.has_negative_exponents() {
            return Err(Error::Pole("x = 0".into()));
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            acc += c * pow_int(x0, *e)?;
        }
        Ok(acc)
    }

    /// Horner evaluation at a complex point, separately on the polynomial
    /// part in `z` and the principal part in `1/z`.
    pub fn eval_complex(&self, z: &ComplexApprox) -> Result<ComplexApprox> {
        let digits = z.precision_digits();
        let mut total = ComplexApprox::zero(digits)?;
        if self.is_zero() {
            return Ok(total);
        }
        if let Some(top) = self.max_exponent().filter(|&e| e >= 0) {
            let mut acc = ComplexApprox::zero(digits)?;
            for e in (0..=top).rev() {
                acc = acc.mul(z)?;
                if let Some(c) = self.terms.get(&e) {
                    acc = acc.add(&ComplexApprox::from_rational(c, digits)?)?;
                }
            }
            total = acc;
        }
        if let Some(bottom) = self.min_exponent().filter(|&e| e < 0) {
            if z.is_zero() {
                return Err(Error::Pole("z = 0".into()));
            }
            let w = z.recip()?;
            let mut acc = ComplexApprox::zero(digits)?;
            for e in bottom..0 {
                if let Some(c) = self.terms.get(&e) {
                    acc = acc.add(&ComplexApprox::from_rational(c, digits)?)?;
                }
                acc = acc.mul(&w)?;
            }
            total = total.add(&acc)?;
        }
        Ok(total)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(add_exp(*ea, *eb), ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// `exp:coeff` terms, highest exponent first; the zero polynomial is `0:0`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0:0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}:{c}")?;
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::MalformedPoly("empty input".into()));
        }
        let mut terms = BTreeMap::new();
        for term in s.split(',') {
            let term = term.trim();
            let (e, c) = term
                .split_once(':')
                .ok_or_else(|| Error::MalformedPoly(format!("term `{term}` lacks `exp:coeff`")))?;
            let e: i64 = e
                .trim()
                .parse()
                .map_err(|_| Error::MalformedPoly(format!("bad exponent in `{term}`")))?;
            let c = parse_rational(c.trim())?;
            if terms.insert(e, c).is_some() {
                return Err(Error::DuplicateExponent(e));
            }
        }
        terms.retain(|_, c: &mut Rational| !c.is_zero());
        Ok(Self { terms })
    }
}
