//! The λ-derivative `D_λ f(x) = f(λx)/x` and the λ-integral
//! `Î_λ f(x) = (x/λ) f(x/λ)`, acting termwise on Laurent polynomials.
//!
//! On monomials these are `x^e ↦ λ^e x^{e-1}` and `x^e ↦ λ^{-(e+1)} x^{e+1}`,
//! so they are exact two-sided inverses of each other. Constants are not
//! annihilated: `D_λ γ = γ/x`.

use num_traits::{One, Signed, Zero};

use crate::algebra::rational::{binom2, pow_int, pow_nz};
use crate::algebra::{ComplexApprox, LaurentPoly, Rational};
use crate::error::{Error, Result};

/// The scaling parameter λ shared by both operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorContext {
    lambda: Rational,
}

impl OperatorContext {
    pub fn new(lambda: Rational) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::InvalidParameter("λ must be nonzero".into()));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }
}

/// `D_λ f`, termwise `c·x^e ↦ c·λ^e·x^{e-1}`.
pub fn d_lambda(f: &LaurentPoly, ctx: &OperatorContext) -> LaurentPoly {
    LaurentPoly::from_terms(
        f.terms()
            .map(|(e, c)| (e - 1, c * pow_nz(&ctx.lambda, e))),
    )
}

/// `Î_λ f`, termwise `c·x^e ↦ c·λ^{-(e+1)}·x^{e+1}`.
pub fn i_lambda(f: &LaurentPoly, ctx: &OperatorContext) -> LaurentPoly {
    LaurentPoly::from_terms(
        f.terms()
            .map(|(e, c)| (e + 1, c * pow_nz(&ctx.lambda, -(e + 1)))),
    )
}

/// `D_λⁿ f = f(λⁿx) / (λ^{C(n,2)} xⁿ)`.
pub fn d_lambda_n(f: &LaurentPoly, ctx: &OperatorContext, n: u32) -> LaurentPoly {
    let n = i64::from(n);
    f.scale_arg(&pow_nz(&ctx.lambda, n))
        .expect("λ ≠ 0")
        .shift(-n)
        .scale(&pow_nz(&ctx.lambda, -binom2(n)))
}

/// `Î_λⁿ f = xⁿ f(x/λⁿ) / λ^{C(n+1,2)}`.
pub fn i_lambda_n(f: &LaurentPoly, ctx: &OperatorContext, n: u32) -> LaurentPoly {
    let n = i64::from(n);
    f.scale_arg(&pow_nz(&ctx.lambda, -n))
        .expect("λ ≠ 0")
        .shift(n)
        .scale(&pow_nz(&ctx.lambda, -binom2(n + 1)))
}

/// `n` successive applications of [`d_lambda`].
pub fn d_lambda_iterated(f: &LaurentPoly, ctx: &OperatorContext, n: u32) -> LaurentPoly {
    (0..n).fold(f.clone(), |g, _| d_lambda(&g, ctx))
}

/// `n` successive applications of [`i_lambda`].
pub fn i_lambda_iterated(f: &LaurentPoly, ctx: &OperatorContext, n: u32) -> LaurentPoly {
    (0..n).fold(f.clone(), |g, _| i_lambda(&g, ctx))
}

/// Scale and exponent of a transformed power `x^α`: `(s, β)` means `s·x^β`.
#[derive(Clone, Debug)]
pub struct PowerTerm {
    pub scale: ComplexApprox,
    pub exponent: ComplexApprox,
}

fn power_scale(
    alpha: &ComplexApprox,
    ctx: &OperatorContext,
    k: u32,
    lambda_exp: impl Fn(&ComplexApprox) -> Result<ComplexApprox>,
) -> Result<ComplexApprox> {
    let digits = alpha.precision_digits();
    if k == 0 {
        return ComplexApprox::one(digits);
    }
    match alpha.as_integer() {
        Some(_) => {
            // integer α: λ^{integer} exactly, any sign of λ
            let e = lambda_exp(alpha)?
                .as_integer()
                .expect("integer exponent stays integral");
            ComplexApprox::from_rational(&pow_int(&ctx.lambda, e)?, digits)
        }
        None if ctx.lambda.is_positive() => {
            ComplexApprox::rational_pow(&ctx.lambda, &lambda_exp(alpha)?)
        }
        None => Err(Error::Domain(
            "non-integer power requires λ > 0 (principal branch)".into(),
        )),
    }
}

/// `D_λᵏ x^α = λ^{kα − C(k,2)} x^{α−k}`.
pub fn monomial_dk(alpha: &ComplexApprox, k: u32, ctx: &OperatorContext) -> Result<PowerTerm> {
    let digits = alpha.precision_digits();
    let kk = i64::from(k);
    let k_c = ComplexApprox::from_rational(&Rational::from_integer(kk.into()), digits)?;
    let shift = ComplexApprox::from_rational(&Rational::from_integer(binom2(kk).into()), digits)?;
    let scale = power_scale(alpha, ctx, k, |a| a.mul(&k_c)?.sub(&shift))?;
    Ok(PowerTerm {
        scale,
        exponent: alpha.sub(&k_c)?,
    })
}

/// `Î_λᵏ x^α = x^{α+k} / λ^{kα + C(k+1,2)}`.
pub fn monomial_ik(alpha: &ComplexApprox, k: u32, ctx: &OperatorContext) -> Result<PowerTerm> {
    let digits = alpha.precision_digits();
    let kk = i64::from(k);
    let k_c = ComplexApprox::from_rational(&Rational::from_integer(kk.into()), digits)?;
    let shift =
        ComplexApprox::from_rational(&Rational::from_integer(binom2(kk + 1).into()), digits)?;
    let scale = power_scale(alpha, ctx, k, |a| Ok(a.mul(&k_c)?.add(&shift)?.neg()))?;
    Ok(PowerTerm {
        scale,
        exponent: alpha.add(&k_c)?,
    })
}

/// `∫_α^β f d_λx = (β/λ) f(β/λ) − (α/λ) f(α/λ)`.
///
/// `f` must be defined at both `α/λ` and `β/λ`.
pub fn definite_integral(
    f: &LaurentPoly,
    ctx: &OperatorContext,
    alpha: &Rational,
    beta: &Rational,
) -> Result<Rational> {
    let at = |t: &Rational| -> Result<Rational> {
        let u = t / &ctx.lambda;
        let v = f
            .eval(&u)
            .map_err(|_| Error::Pole(format!("f is undefined at {u}")))?;
        Ok(u * v)
    };
    Ok(at(beta)? - at(alpha)?)
}

/// The variable-upper-limit integral `∫_α^x f d_λt` as a Laurent polynomial:
/// `Î_λ f − (α/λ) f(α/λ)`.
pub fn integral_from(
    f: &LaurentPoly,
    ctx: &OperatorContext,
    alpha: &Rational,
) -> Result<LaurentPoly> {
    let u = alpha / &ctx.lambda;
    let constant = &u * f.eval(&u)?;
    Ok(&i_lambda(f, ctx) - &LaurentPoly::constant(constant))
}

fn check_jackson_q(q: &Rational) -> Result<()> {
    if q.is_zero() || q.is_one() {
        return Err(Error::InvalidParameter(format!(
            "Jackson derivative needs q ∉ {{0, 1}}, got {q}"
        )));
    }
    Ok(())
}

/// Jackson's `D_q` as the combination `(D₁ − D_q)/(1 − q)` of λ-derivatives.
pub fn jackson_derivative(f: &LaurentPoly, q: &Rational) -> Result<LaurentPoly> {
    check_jackson_q(q)?;
    let d1 = d_lambda(f, &OperatorContext::new(Rational::one())?);
    let dq = d_lambda(f, &OperatorContext::new(q.clone())?);
    Ok((&d1 - &dq).scale(&(Rational::one() - q).recip()))
}

/// Jackson's `D_q f = (f(x) − f(qx)) / ((1 − q)x)` computed directly.
pub fn jackson_derivative_direct(f: &LaurentPoly, q: &Rational) -> Result<LaurentPoly> {
    check_jackson_q(q)?;
    Ok((f - &f.scale_arg(q)?)
        .shift(-1)
        .scale(&(Rational::one() - q).recip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn ctx(l: Rational) -> OperatorContext {
        OperatorContext::new(l).unwrap()
    }

    fn c(q: Rational) -> ComplexApprox {
        ComplexApprox::from_rational(&q, 50).unwrap()
    }

    #[test]
    fn context_rejects_zero() {
        assert!(OperatorContext::new(int(0)).is_err());
    }

    #[test]
    fn d_lambda_examples() {
        // f(2x)/x with f = x² + 3
        assert_eq!(d_lambda(&lp("2:1,0:3"), &ctx(int(2))), lp("1:4,-1:3"));
        assert_eq!(d_lambda(&LaurentPoly::zero(), &ctx(int(7))), LaurentPoly::zero());
        assert_eq!(d_lambda(&lp("0:5"), &ctx(rat(2, 3))), lp("-1:5"));
    }

    #[test]
    fn i_lambda_examples() {
        assert_eq!(i_lambda(&lp("0:1"), &ctx(int(2))), lp("1:1/2"));
        assert_eq!(i_lambda(&lp("1:1"), &ctx(int(2))), lp("2:1/4"));
        assert_eq!(i_lambda(&LaurentPoly::zero(), &ctx(int(2))), LaurentPoly::zero());
    }

    #[test]
    fn iterated_powers() {
        let l = ctx(int(2));
        assert_eq!(d_lambda_n(&lp("3:1"), &l, 2), lp("1:32"));
        assert_eq!(d_lambda_iterated(&lp("3:1"), &l, 2), lp("1:32"));
        let f = lp("4:-2,1:1/3,-2:5");
        assert_eq!(d_lambda_n(&f, &l, 0), f);
        assert_eq!(d_lambda_n(&f, &l, 1), d_lambda(&f, &l));
        assert_eq!(i_lambda_n(&lp("1:1"), &l, 2), lp("3:1/32"));
        assert_eq!(i_lambda_n(&f, &l, 0), f);
        assert_eq!(i_lambda_n(&lp("0:1"), &ctx(int(3)), 1), lp("1:1/3"));
        for n in 0..=8 {
            let l = ctx(rat(-3, 2));
            assert_eq!(d_lambda_n(&f, &l, n), d_lambda_iterated(&f, &l, n));
            assert_eq!(i_lambda_n(&f, &l, n), i_lambda_iterated(&f, &l, n));
        }
    }

    #[test]
    fn monomial_power_examples() {
        let t = monomial_dk(&c(int(3)), 2, &ctx(int(2))).unwrap();
        assert_eq!(t.scale, c(int(32)));
        assert_eq!(t.exponent, c(int(1)));
        let t = monomial_dk(&c(rat(7, 3)), 0, &ctx(int(5))).unwrap();
        assert_eq!(t.scale, c(int(1)));
        assert_eq!(t.exponent, c(rat(7, 3)));
        let t = monomial_dk(&c(rat(1, 2)), 1, &ctx(int(4))).unwrap();
        assert!(t.scale.sub(&c(int(2))).unwrap().magnitude_below(1e-45));
        assert_eq!(t.exponent, c(rat(-1, 2)));
        assert!(monomial_dk(&c(rat(1, 2)), 1, &ctx(int(-4))).is_err());
        // integer α with negative λ is fine
        let t = monomial_dk(&c(int(3)), 1, &ctx(int(-2))).unwrap();
        assert_eq!(t.scale, c(int(-8)));

        let t = monomial_ik(&c(int(1)), 2, &ctx(int(2))).unwrap();
        assert_eq!(t.scale, c(rat(1, 32)));
        assert_eq!(t.exponent, c(int(3)));
        let t = monomial_ik(&c(int(0)), 1, &ctx(int(3))).unwrap();
        assert_eq!(t.scale, c(rat(1, 3)));
        assert_eq!(t.exponent, c(int(1)));
        let t = monomial_ik(&c(rat(5, 2)), 0, &ctx(int(3))).unwrap();
        assert_eq!(t.scale, c(int(1)));
    }

    #[test]
    fn monomial_powers_match_exact_operators() {
        let l = ctx(rat(3, 2));
        for alpha in -4i64..=4 {
            let f = LaurentPoly::monomial(int(1), alpha);
            for k in 0..=5u32 {
                let t = monomial_dk(&c(int(alpha)), k, &l).unwrap();
                let exact = d_lambda_n(&f, &l, k);
                let (e, s) = exact.terms().next().map(|(e, s)| (e, s.clone())).unwrap();
                assert_eq!(t.exponent.as_integer(), Some(e));
                assert_eq!(t.scale, c(s));
                let t = monomial_ik(&c(int(alpha)), k, &l).unwrap();
                let exact = i_lambda_n(&f, &l, k);
                let (e, s) = exact.terms().next().map(|(e, s)| (e, s.clone())).unwrap();
                assert_eq!(t.exponent.as_integer(), Some(e));
                assert_eq!(t.scale, c(s));
            }
        }
    }

    #[test]
    fn definite_integral_examples() {
        let l = ctx(int(2));
        assert_eq!(
            definite_integral(&lp("1:1"), &l, &int(1), &int(2)).unwrap(),
            rat(3, 4)
        );
        let f = lp("3:2,-1:1");
        assert_eq!(
            definite_integral(&f, &l, &rat(5, 3), &rat(5, 3)).unwrap(),
            int(0)
        );
        assert!(matches!(
            definite_integral(&lp("-1:1"), &l, &int(0), &int(1)),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn jackson_examples() {
        assert_eq!(jackson_derivative(&lp("2:1"), &int(2)).unwrap(), lp("1:3"));
        assert_eq!(jackson_derivative(&lp("0:7"), &int(5)).unwrap(), LaurentPoly::zero());
        assert_eq!(jackson_derivative(&lp("1:1"), &rat(1, 2)).unwrap(), lp("0:1"));
        assert!(jackson_derivative(&lp("1:1"), &int(1)).is_err());
        assert!(jackson_derivative(&lp("1:1"), &int(0)).is_err());
        let f = lp("3:1,1:-2,-2:1/3");
        assert_eq!(
            jackson_derivative(&f, &rat(-2, 3)).unwrap(),
            jackson_derivative_direct(&f, &rat(-2, 3)).unwrap()
        );
    }
}
