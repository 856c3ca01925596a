//! The λ-binomial functions
//!
//! ```text
//! (x − a)_λ^n  = ∏_{k<n} (1 − a/(λ^k x))                    n ≥ 0
//! (x − a)_λ^-n = 1 / (λ^-n x − a)_λ^n
//! (x − a)_λ^α  = (x − a)_λ^∞ / (λ^α x − a)_λ^∞              α ∈ ℂ, |λ| > 1
//! ```
//!
//! and certificates for their derivative, integral and addition formulas.
//! Identities between Laurent polynomials are checked structurally. Identities
//! between rational functions of bounded degree are checked by exact
//! evaluation at more random points than the degree of the cleared
//! numerator, which forces the two sides to coincide.

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::algebra::rational::{binom2, int, pow_nz, rat};
use crate::algebra::{ComplexApprox, LaurentPoly, Rational};
use crate::error::{Error, Result};
use crate::ops::{d_lambda_n, i_lambda_n, OperatorContext};
use crate::qsymbols::{q_pochhammer_inf, TruncationConfig};

/// Base point `a` and ratio `λ` of a λ-binomial family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisSpec {
    a: Rational,
    lambda: Rational,
}

impl BasisSpec {
    pub fn new(a: Rational, lambda: Rational) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::InvalidParameter("λ must be nonzero".into()));
        }
        Ok(Self { a, lambda })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    fn ctx(&self) -> OperatorContext {
        OperatorContext::new(self.lambda.clone()).expect("λ ≠ 0")
    }

    fn lambda_pow(&self, e: i64) -> Rational {
        pow_nz(&self.lambda, e)
    }
}

/// `(x − a)_λ^n` for `n ≥ 0` as a Laurent polynomial in `x⁻¹`.
pub fn lb_expand(spec: &BasisSpec, n: u32) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for k in 0..i64::from(n) {
        let factor = LaurentPoly::from_terms([
            (0, Rational::one()),
            (-1, -(&spec.a * spec.lambda_pow(-k))),
        ]);
        acc = &acc * &factor;
    }
    acc
}

/// `(c·x − a)_λ^n`.
pub fn lb_expand_scaled(spec: &BasisSpec, n: u32, c: &Rational) -> Result<LaurentPoly> {
    lb_expand(spec, n).scale_arg(c)
}

/// Exact value of `(x − a)_λ^n` at `x0`, for any integer `n`.
pub fn lb_eval(spec: &BasisSpec, n: i64, x0: &Rational) -> Result<Rational> {
    if x0.is_zero() {
        return Err(Error::Pole("x = 0".into()));
    }
    if n >= 0 {
        let mut acc = Rational::one();
        for k in 0..n {
            acc *= Rational::one() - &spec.a / (spec.lambda_pow(k) * x0);
        }
        return Ok(acc);
    }
    // 1 / (λ^n x0 − a)_λ^{|n|}
    let m = -n;
    let shifted = spec.lambda_pow(n) * x0;
    let den = lb_eval(spec, m, &shifted)?;
    if den.is_zero() {
        return Err(Error::Pole(format!(
            "(x − a)_λ^{n} has a pole at x = {x0}"
        )));
    }
    Ok(den.recip())
}

/// `(x − a)_λ^n` at a complex point, for any integer `n`.
pub fn lb_eval_complex(spec: &BasisSpec, n: i64, x: &ComplexApprox) -> Result<ComplexApprox> {
    if x.is_zero() {
        return Err(Error::Pole("x = 0".into()));
    }
    let digits = x.precision_digits();
    let one = ComplexApprox::one(digits)?;
    if n >= 0 {
        let a_over_x = ComplexApprox::from_rational(&spec.a, digits)?.div(x)?;
        let mut acc = one.clone();
        for k in 0..n {
            acc = acc.mul(&one.sub(&a_over_x.scale(&spec.lambda_pow(-k))?)?)?;
        }
        return Ok(acc);
    }
    let den = lb_eval_complex(spec, -n, &x.scale(&spec.lambda_pow(n))?)?;
    if den.is_zero() {
        return Err(Error::Pole("vanishing λ-binomial denominator".into()));
    }
    den.recip()
}

/// `(x − a)_λ^α` for complex `α`, as a ratio of two truncated infinite
/// products in `λ⁻¹`. Needs `|λ| > 1`; non-integer `α` also needs `λ > 0`
/// (principal branch of `λ^α`).
pub fn lb_general(
    spec: &BasisSpec,
    alpha: &ComplexApprox,
    x: &ComplexApprox,
    cfg: &TruncationConfig,
) -> Result<ComplexApprox> {
    if spec.lambda.abs() <= Rational::one() {
        return Err(Error::Domain(format!(
            "general λ-binomial needs |λ| > 1, got {}",
            spec.lambda
        )));
    }
    if x.is_zero() {
        return Err(Error::Pole("x = 0".into()));
    }
    let digits = cfg
        .precision_digits
        .min(x.precision_digits())
        .min(alpha.precision_digits());
    let q = ComplexApprox::from_rational(&spec.lambda.recip(), digits)?;
    let a = ComplexApprox::from_rational(&spec.a, digits)?;
    let num = q_pochhammer_inf(&a.div(x)?, &q, cfg)?;
    let lam_alpha = ComplexApprox::rational_pow(&spec.lambda, alpha)?;
    let den = q_pochhammer_inf(&a.div(&lam_alpha.mul(x)?)?, &q, cfg)?;
    let floor = 10f64.powi(-(digits as i32));
    if den.magnitude_below(floor) {
        return Err(Error::VanishingDenominator(
            "(λ^α x − a)_λ^∞ vanishes numerically".into(),
        ));
    }
    num.div(&den)
}

/// One exact evaluation of both sides of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplePoint {
    pub x: Rational,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// Outcome of checking an identity: either both sides as Laurent
/// polynomials, or both sides evaluated at sample points, or both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub exact: Option<(LaurentPoly, LaurentPoly)>,
    pub points: Vec<SamplePoint>,
    pub required_points: usize,
}

impl Certificate {
    fn exact(lhs: LaurentPoly, rhs: LaurentPoly) -> Self {
        Self {
            exact: Some((lhs, rhs)),
            points: Vec::new(),
            required_points: 0,
        }
    }

    pub fn holds(&self) -> bool {
        let exact_ok = self.exact.as_ref().is_none_or(|(l, r)| l == r);
        let points_ok = self.points.len() >= self.required_points
            && self.points.iter().all(|p| p.lhs == p.rhs);
        exact_ok && points_ok
    }

    /// First disagreement, rendered for reports.
    pub fn counterexample(&self) -> Option<(String, String, String)> {
        if let Some((l, r)) = self.exact.as_ref().filter(|(l, r)| l != r) {
            return Some(("x".into(), l.to_string(), r.to_string()));
        }
        if let Some(p) = self.points.iter().find(|p| p.lhs != p.rhs) {
            return Some((p.x.to_string(), p.lhs.to_string(), p.rhs.to_string()));
        }
        if self.points.len() < self.required_points {
            return Some((
                "sampling".into(),
                format!("{} points", self.points.len()),
                format!("{} required", self.required_points),
            ));
        }
        None
    }
}

/// Points used for a pointwise certificate with exponent `n` and order `k`.
/// The cleared numerator has degree at most `|n| + k`.
fn sample_count(n: i64, k: u32) -> usize {
    n.unsigned_abs() as usize + 2 * k as usize + 2
}

fn random_sample_point<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let num = rng.gen_range(1..=99i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
    rat(num, rng.gen_range(1..=19))
}

/// Collects `count` distinct nonzero points where `sides` is defined,
/// redrawing on poles.
fn sample_points<R: Rng + ?Sized>(
    count: usize,
    rng: &mut R,
    sides: impl Fn(&Rational) -> Result<(Rational, Rational)>,
) -> Vec<SamplePoint> {
    let mut points: Vec<SamplePoint> = Vec::with_capacity(count);
    let mut attempts = 0;
    while points.len() < count && attempts < 200 * (count + 1) {
        attempts += 1;
        let x = random_sample_point(rng);
        if points.iter().any(|p| p.x == x) {
            continue;
        }
        if let Ok((lhs, rhs)) = sides(&x) {
            points.push(SamplePoint { x, lhs, rhs });
        }
    }
    points
}

fn pointwise<R: Rng + ?Sized>(
    count: usize,
    rng: &mut R,
    sides: impl Fn(&Rational) -> Result<(Rational, Rational)>,
) -> Certificate {
    Certificate {
        exact: None,
        points: sample_points(count, rng, sides),
        required_points: count,
    }
}

/// `λ^{C(k,2)} xᵏ (x−a)_λᵏ · D_λᵏ (x−a)_λⁿ = (x−a)_λ^{n+k}`.
pub fn lb_dk<R: Rng + ?Sized>(spec: &BasisSpec, n: i64, k: u32, rng: &mut R) -> Certificate {
    let ki = i64::from(k);
    let c = spec.lambda_pow(binom2(ki));
    if n >= 0 {
        let dk = d_lambda_n(&lb_expand(spec, n as u32), &spec.ctx(), k);
        let lhs = (&lb_expand(spec, k) * &dk).shift(ki).scale(&c);
        let rhs = lb_expand(spec, (n + ki) as u32);
        return Certificate::exact(lhs, rhs);
    }
    let count = sample_count(n, k);
    pointwise(count, rng, |x| {
        // D_λᵏ g(x) = g(λᵏx) / (λ^{C(k,2)} xᵏ)
        let dk = lb_eval(spec, n, &(spec.lambda_pow(ki) * x))? / (&c * pow_nz(x, ki));
        let lhs = &c * pow_nz(x, ki) * lb_eval(spec, ki, x)? * dk;
        Ok((lhs, lb_eval(spec, n + ki, x)?))
    })
}

/// `Î_λᵏ (x−a)_λⁿ = xᵏ (λ^{-k}x − a)_λᵏ (x−a)_λ^{n−k} / λ^{C(k+1,2)}`.
pub fn lb_ik<R: Rng + ?Sized>(spec: &BasisSpec, n: i64, k: u32, rng: &mut R) -> Certificate {
    let ki = i64::from(k);
    let c = spec.lambda_pow(-binom2(ki + 1));
    let mut cert = if n >= 0 && ki <= n {
        let lhs = i_lambda_n(&lb_expand(spec, n as u32), &spec.ctx(), k);
        let rhs = (&lb_expand_scaled(spec, k, &spec.lambda_pow(-ki)).expect("λ ≠ 0")
            * &lb_expand(spec, (n - ki) as u32))
            .shift(ki)
            .scale(&c);
        Certificate::exact(lhs, rhs)
    } else {
        let count = sample_count(n, k);
        pointwise(count, rng, |x| {
            // Î_λᵏ g(x) = xᵏ g(x/λᵏ) / λ^{C(k+1,2)}
            let lhs = &c * pow_nz(x, ki) * lb_eval(spec, n, &(x * spec.lambda_pow(-ki)))?;
            let rhs = &c
                * pow_nz(x, ki)
                * lb_eval(spec, ki, &(x * spec.lambda_pow(-ki)))?
                * lb_eval(spec, n - ki, x)?;
            Ok((lhs, rhs))
        })
    };
    if n >= 0 && cert.exact.is_none() {
        // the left side is still a Laurent polynomial; keep it for reporting
        let lhs = i_lambda_n(&lb_expand(spec, n as u32), &spec.ctx(), k);
        cert.exact = Some((lhs.clone(), lhs));
    }
    cert
}

/// `(x−a)_λ^{n+m} = (x−a)_λ^m (λ^m x − a)_λ^n`, exactly.
pub fn lb_addition(spec: &BasisSpec, m: u32, n: u32) -> Certificate {
    let lhs = lb_expand(spec, n + m);
    let shifted = lb_expand_scaled(spec, n, &spec.lambda_pow(i64::from(m))).expect("λ ≠ 0");
    Certificate::exact(lhs, &lb_expand(spec, m) * &shifted)
}

/// `|(x−a)_λ^α (λ^α x − a)_λ^β − (x−a)_λ^{α+β}|` for complex `α`, `β`.
pub fn lb_addition_general(
    spec: &BasisSpec,
    alpha: &ComplexApprox,
    beta: &ComplexApprox,
    x: &ComplexApprox,
    cfg: &TruncationConfig,
) -> Result<ComplexApprox> {
    let first = lb_general(spec, alpha, x, cfg)?;
    let shifted_x = ComplexApprox::rational_pow(&spec.lambda, alpha)?.mul(x)?;
    let second = lb_general(spec, beta, &shifted_x, cfg)?;
    let whole = lb_general(spec, &alpha.add(beta)?, x, cfg)?;
    Ok(first.mul(&second)?.sub(&whole)?.abs())
}

/// `λ^{C(k,2)} xᵏ (x−a)_λ^{n+k} · D_λᵏ [1/(x−a)_λⁿ] = (x−a)_λᵏ`.
pub fn lb_dk_reciprocal<R: Rng + ?Sized>(
    spec: &BasisSpec,
    n: u32,
    k: u32,
    rng: &mut R,
) -> Certificate {
    let (ni, ki) = (i64::from(n), i64::from(k));
    let c = spec.lambda_pow(binom2(ki));
    let count = (n + 2 * k + 2) as usize;
    pointwise(count, rng, |x| {
        let g_up = lb_eval(spec, ni, &(spec.lambda_pow(ki) * x))?;
        if g_up.is_zero() {
            return Err(Error::Pole(format!("1/(x−a)_λ^n at λ^k·{x}")));
        }
        let dk = g_up.recip() / (&c * pow_nz(x, ki));
        let lhs = &c * pow_nz(x, ki) * lb_eval(spec, ni + ki, x)? * dk;
        Ok((lhs, lb_eval(spec, ki, x)?))
    })
}

/// Largest residual of the two general-α derivative formulas
///
/// ```text
/// D_λᵏ (x−a)_λ^α       = (x−a)_λ^{α+k} / (λ^{C(k,2)} xᵏ (x−a)_λᵏ)
/// D_λᵏ 1/(x−a)_λ^α     = (x−a)_λᵏ / (λ^{C(k,2)} xᵏ (x−a)_λ^{α+k})
/// ```
///
/// with the left sides evaluated as `g(λᵏx)/(λ^{C(k,2)}xᵏ)`.
pub fn lb_general_dk(
    spec: &BasisSpec,
    alpha: &ComplexApprox,
    k: u32,
    x: &ComplexApprox,
    cfg: &TruncationConfig,
) -> Result<ComplexApprox> {
    let ki = i64::from(k);
    let digits = cfg.precision_digits.min(x.precision_digits());
    let scale = ComplexApprox::from_rational(&spec.lambda_pow(binom2(ki)), digits)?
        .mul(&x.powi(ki)?)?;
    let x_up = x.scale(&spec.lambda_pow(ki))?;
    let k_c = ComplexApprox::from_rational(&int(ki), digits)?;
    let g_up = lb_general(spec, alpha, &x_up, cfg)?;
    let g_shift = lb_general(spec, &alpha.add(&k_c)?, x, cfg)?;
    let finite_k = lb_eval_complex(spec, ki, x)?;

    let direct = g_up
        .div(&scale)?
        .sub(&g_shift.div(&scale.mul(&finite_k)?)?)?
        .abs();
    let reciprocal = g_up
        .recip()?
        .div(&scale)?
        .sub(&finite_k.div(&scale.mul(&g_shift)?)?)?
        .abs();
    Ok(if crate::algebra::complex::cmp_bf(direct.re(), reciprocal.re()).is_ge() {
        direct
    } else {
        reciprocal
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::complex::distance_to_rational;
    use crate::qsymbols::q_pochhammer;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn spec(a: Rational, l: Rational) -> BasisSpec {
        BasisSpec::new(a, l).unwrap()
    }

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn c(q: Rational) -> ComplexApprox {
        ComplexApprox::from_rational(&q, 50).unwrap()
    }

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn expand_examples() {
        let s = spec(int(1), int(2));
        assert_eq!(lb_expand(&s, 0), LaurentPoly::one());
        assert_eq!(lb_expand(&s, 2), lp("0:1,-1:-3/2,-2:1/2"));
        let s = spec(rat(-3, 4), rat(5, 2));
        assert_eq!(lb_expand(&s, 1), lp("0:1,-1:3/4"));
        assert!(BasisSpec::new(int(1), int(0)).is_err());
    }

    #[test]
    fn expand_shape() {
        let s = spec(rat(2, 3), rat(-4, 5));
        for n in 0..=8u32 {
            let p = lb_expand(&s, n);
            assert_eq!(p.len(), n as usize + 1);
            assert_eq!(p.coeff(0), int(1));
            assert_eq!(p.min_exponent(), Some(-i64::from(n)));
            let lead = pow_nz(&-s.a().clone(), i64::from(n)) * pow_nz(s.lambda(), -binom2(i64::from(n)));
            assert_eq!(p.coeff(-i64::from(n)), lead);
        }
    }

    #[test]
    fn eval_examples() {
        let s = spec(int(1), int(2));
        assert_eq!(lb_eval(&s, -1, &int(4)).unwrap(), int(2));
        assert_eq!(lb_eval(&s, 0, &rat(3, 7)).unwrap(), int(1));
        assert_eq!(lb_eval(&s, 2, &int(2)).unwrap(), rat(3, 8));
        assert!(lb_eval(&s, 1, &int(0)).is_err());
        // (λ⁻¹x − a) vanishes at x = 2
        assert!(matches!(lb_eval(&s, -1, &int(2)), Err(Error::Pole(_))));
        for n in 0..=6 {
            for x in [rat(1, 3), int(-5), rat(7, 2)] {
                assert_eq!(lb_eval(&s, n, &x).unwrap(), lb_expand(&s, n as u32).eval(&x).unwrap());
            }
        }
    }

    #[test]
    fn useful_identities() {
        for (a, l) in [(int(1), int(2)), (rat(-2, 3), rat(3, 5)), (int(5), rat(-7, 2))] {
            let s = spec(a.clone(), l.clone());
            for i in 0..=10i64 {
                let x0 = pow_nz(&l, -i) * &a;
                assert_eq!(lb_eval(&s, i, &x0).unwrap(), q_pochhammer(&l, &l, i as u32));
                assert_eq!(
                    lb_eval(&s, -i, &a).unwrap(),
                    q_pochhammer(&l, &l, i as u32).recip()
                );
                if i >= 1 {
                    assert_eq!(lb_eval(&s, i, &a).unwrap(), int(0));
                }
            }
        }
    }

    #[test]
    fn general_examples() {
        let cfg = TruncationConfig::default();
        let s = spec(int(1), int(2));
        let v = lb_general(&s, &c(int(0)), &c(rat(7, 3)), &cfg).unwrap();
        assert!(distance_to_rational(&v, &int(1)).unwrap().magnitude_below(1e-45));
        let v = lb_general(&s, &c(int(2)), &c(int(3)), &cfg).unwrap();
        assert!(distance_to_rational(&v, &rat(5, 9)).unwrap().magnitude_below(1e-29));
        let v = lb_general(&s, &c(int(-1)), &c(int(4)), &cfg).unwrap();
        assert!(distance_to_rational(&v, &int(2)).unwrap().magnitude_below(1e-29));
        assert!(lb_general(&spec(int(1), rat(1, 2)), &c(int(1)), &c(int(3)), &cfg).is_err());
        assert!(lb_general(&spec(int(1), int(-2)), &c(rat(1, 2)), &c(int(3)), &cfg).is_err());
        // integer α with λ < −1 is allowed
        let s = spec(int(1), int(-3));
        let v = lb_general(&s, &c(int(2)), &c(int(5)), &cfg).unwrap();
        assert!(distance_to_rational(&v, &lb_eval(&s, 2, &int(5)).unwrap())
            .unwrap()
            .magnitude_below(1e-29));
    }

    #[test]
    fn dk_certificates() {
        let mut r = rng();
        let s = spec(int(1), int(2));
        let cert = lb_dk(&s, 2, 0, &mut r);
        assert_eq!(cert.exact, Some((lb_expand(&s, 2), lb_expand(&s, 2))));
        assert!(lb_dk(&s, 1, 1, &mut r).holds());
        let cert = lb_dk(&s, -1, 1, &mut r);
        assert!(cert.holds());
        assert_eq!(cert.points.len(), 5);
    }

    #[test]
    fn ik_certificates() {
        let mut r = rng();
        let s = spec(int(1), int(2));
        let cert = lb_ik(&s, 0, 2, &mut r);
        assert!(cert.holds());
        assert_eq!(cert.exact.as_ref().unwrap().0, lp("2:1/8"));
        let cert = lb_ik(&s, 2, 1, &mut r);
        assert!(cert.points.is_empty());
        assert!(cert.holds());
        let cert = lb_ik(&s, 1, 3, &mut r);
        assert!(!cert.points.is_empty());
        assert!(cert.holds());
        assert!(lb_ik(&s, -3, 2, &mut r).holds());
    }

    #[test]
    fn addition_certificates() {
        let cfg = TruncationConfig::default();
        let s = spec(int(1), int(2));
        assert!(lb_addition(&s, 0, 4).holds());
        let cert = lb_addition(&s, 1, 1);
        assert_eq!(cert.exact.as_ref().unwrap().0, lp("0:1,-1:-3/2,-2:1/2"));
        assert!(cert.holds());
        let res = lb_addition_general(&s, &c(rat(1, 2)), &c(rat(3, 2)), &c(int(3)), &cfg).unwrap();
        assert!(res.magnitude_below(1e-29));
    }

    #[test]
    fn reciprocal_certificates() {
        let mut r = rng();
        assert!(lb_dk_reciprocal(&spec(int(1), int(2)), 0, 1, &mut r).holds());
        let cert = lb_dk_reciprocal(&spec(int(1), int(2)), 1, 1, &mut r);
        assert!(cert.holds());
        assert_eq!(cert.points.len(), 5);
        let cert = lb_dk_reciprocal(&spec(int(1), int(3)), 2, 2, &mut r);
        assert!(cert.holds());
        assert_eq!(cert.points.len(), 8);
    }

    #[test]
    fn wrong_identity_is_caught() {
        // a perturbed right side must fail at some sample point
        let s = spec(int(1), int(2));
        let mut r = rng();
        let cert = pointwise(4, &mut r, |x| {
            Ok((lb_eval(&s, -2, x)?, lb_eval(&s, -2, x)? + rat(1, 1000)))
        });
        assert!(!cert.holds());
        assert!(cert.counterexample().is_some());
    }

    #[test]
    fn general_dk_residuals() {
        let cfg = TruncationConfig::default();
        let s = spec(int(1), int(2));
        let r = lb_general_dk(&s, &c(rat(1, 2)), 0, &c(int(3)), &cfg).unwrap();
        assert!(r.is_zero());
        let r = lb_general_dk(&s, &c(rat(1, 2)), 1, &c(int(3)), &cfg).unwrap();
        assert!(r.magnitude_below(1e-29));
        for k in 0..=3 {
            let r = lb_general_dk(&s, &c(int(2)), k, &c(rat(7, 2)), &cfg).unwrap();
            assert!(r.magnitude_below(1e-29), "k={k}");
        }
    }
}
