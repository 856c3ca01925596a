//! λ-Taylor expansion of `f(x⁻¹)` in the basis `(x − a)_λ^k`, and the
//! connection formulas for common families.
//!
//! Every `connect_*` function returns coefficients obtained from the exact
//! expansion of its target, together with the closed-form coefficients so
//! the two can be compared.

use num_traits::{One, Zero};

use crate::algebra::rational::{binom2, pow_nz};
use crate::algebra::{LaurentPoly, Rational};
use crate::error::{Error, Result};
use crate::lambinom::{lb_eval, lb_expand, BasisSpec};
use crate::ops::{i_lambda_n, OperatorContext};
use crate::qsymbols::{
    gauss_expand, q_binomial, q_pochhammer, rogers_szego, stieltjes_wigert,
};

/// Coefficients `c_0..c_n` of `Σ c_k (x − a)_λ^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisExpansion {
    a: Rational,
    lambda: Rational,
    coeffs: Vec<Rational>,
}

fn check_basis(a: &Rational, lambda: &Rational) -> Result<()> {
    if a.is_zero() {
        return Err(Error::InvalidParameter("expansion point a must be nonzero".into()));
    }
    if lambda.is_zero() || lambda.is_one() || *lambda == -Rational::one() {
        return Err(Error::InvalidParameter(format!(
            "λ must avoid 0 and ±1, got {lambda}"
        )));
    }
    Ok(())
}

impl BasisExpansion {
    pub fn new(a: Rational, lambda: Rational, coeffs: Vec<Rational>) -> Result<Self> {
        check_basis(&a, &lambda)?;
        Ok(Self { a, lambda, coeffs })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn spec(&self) -> BasisSpec {
        BasisSpec::new(self.a.clone(), self.lambda.clone()).expect("λ ≠ 0")
    }
}

/// `Σ c_k (x − a)_λ^k` as a Laurent polynomial.
pub fn reconstruct(e: &BasisExpansion) -> LaurentPoly {
    let spec = e.spec();
    e.coeffs
        .iter()
        .enumerate()
        .fold(LaurentPoly::zero(), |acc, (k, c)| {
            acc + lb_expand(&spec, k as u32).scale(c)
        })
}

fn degree_in_reciprocal(f: &LaurentPoly) -> Result<u32> {
    if f.max_exponent().is_some_and(|e| e > 0) {
        return Err(Error::InvalidParameter(
            "f must have only non-positive exponents".into(),
        ));
    }
    let n = f.min_exponent().map_or(0, |e| -e);
    u32::try_from(n).map_err(|_| Error::InvalidParameter("degree too large".into()))
}

/// Coefficients by forward substitution in the triangular system
///
/// ```text
/// (Îⁱf)(a) = f(a)·aⁱ/λ^{C(i+1,2)} + aⁱ(λ;λ)_i/λ^{C(i+1,2)} · Σ_{k=1..i} c_k/(λ;λ)_{i−k}
/// ```
///
/// with `c_0 = f(a)`.
pub fn taylor_via_system(
    f: &LaurentPoly,
    a: &Rational,
    lambda: &Rational,
) -> Result<BasisExpansion> {
    check_basis(a, lambda)?;
    let n = degree_in_reciprocal(f)?;
    let ctx = OperatorContext::new(lambda.clone())?;
    let qq: Vec<Rational> = (0..=n).map(|j| q_pochhammer(lambda, lambda, j)).collect();
    let fa = f.eval(a)?;
    let mut coeffs = vec![fa.clone()];
    for i in 1..=n {
        let ii = i64::from(i);
        let integral = i_lambda_n(f, &ctx, i).eval(a)?;
        let qi = &qq[i as usize];
        let mut c = integral * pow_nz(lambda, binom2(ii + 1)) / (pow_nz(a, ii) * qi) - &fa / qi;
        for (k, ck) in coeffs.iter().enumerate().skip(1) {
            c -= ck / &qq[i as usize - k];
        }
        coeffs.push(c);
    }
    BasisExpansion::new(a.clone(), lambda.clone(), coeffs)
}

/// Coefficients from `d_k = (−1)^k λ^{C(k,2)} Σ_{i≥k} (f_i/aⁱ)[i k]_λ`,
/// where `f_i` is the coefficient of `x^{−i}`.
pub fn taylor_via_connection(
    f: &LaurentPoly,
    a: &Rational,
    lambda: &Rational,
) -> Result<BasisExpansion> {
    check_basis(a, lambda)?;
    let m = degree_in_reciprocal(f)?;
    let mut coeffs = Vec::with_capacity(m as usize + 1);
    for k in 0..=i64::from(m) {
        let mut sum = Rational::zero();
        for i in k..=i64::from(m) {
            let fi = f.coeff(-i);
            if !fi.is_zero() {
                sum += fi / pow_nz(a, i) * q_binomial(i as u32, k, lambda)?;
            }
        }
        coeffs.push(sign(k) * pow_nz(lambda, binom2(k)) * sum);
    }
    BasisExpansion::new(a.clone(), lambda.clone(), coeffs)
}

/// `c₁ = (λ(Î_λf)(a) − a f(a)) / (a(1 − λ))`.
pub fn c1_closed_form(f: &LaurentPoly, a: &Rational, lambda: &Rational) -> Result<Rational> {
    check_basis(a, lambda)?;
    let ctx = OperatorContext::new(lambda.clone())?;
    let integral = i_lambda_n(f, &ctx, 1).eval(a)?;
    Ok((lambda * integral - a * f.eval(a)?) / (a * (Rational::one() - lambda)))
}

fn sign(k: i64) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Exact coefficients of a target next to the closed-form ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionReport {
    pub name: &'static str,
    pub expansion: BasisExpansion,
    pub closed_form: Vec<Rational>,
    /// Two-point family only: the closed form without its `(−1)^k`.
    pub unsigned_form: Option<Vec<Rational>>,
}

impl ConnectionReport {
    fn build(
        name: &'static str,
        target: &LaurentPoly,
        a: &Rational,
        lambda: &Rational,
        closed_form: Vec<Rational>,
    ) -> Result<Self> {
        let expansion = taylor_via_connection(target, a, lambda)?;
        Ok(Self {
            name,
            expansion,
            closed_form,
            unsigned_form: None,
        })
    }

    pub fn truth(&self) -> &[Rational] {
        self.expansion.coeffs()
    }

    /// Per-index agreement of the closed form with the exact coefficients.
    pub fn agreement(&self) -> Vec<bool> {
        compare(self.truth(), &self.closed_form)
    }

    pub fn closed_form_agrees(&self) -> bool {
        self.agreement().iter().all(|&b| b)
    }

    pub fn unsigned_form_agrees(&self) -> Option<bool> {
        self.unsigned_form
            .as_ref()
            .map(|u| compare(self.truth(), u).iter().all(|&b| b))
    }
}

// the exact vector may be shorter when top coefficients vanish
fn compare(truth: &[Rational], other: &[Rational]) -> Vec<bool> {
    let len = truth.len().max(other.len());
    let zero = Rational::zero();
    (0..len)
        .map(|i| truth.get(i).unwrap_or(&zero) == other.get(i).unwrap_or(&zero))
        .collect()
}

/// `x⁻ⁿ = a⁻ⁿ Σ (−1)^k λ^{C(k,2)} [n k]_λ (x − a)_λ^k`.
pub fn connect_monomial(n: u32, a: &Rational, lambda: &Rational) -> Result<ConnectionReport> {
    check_basis(a, lambda)?;
    let ni = i64::from(n);
    let closed = (0..=ni)
        .map(|k| Ok(sign(k) * pow_nz(lambda, binom2(k)) * q_binomial(n, k, lambda)? / pow_nz(a, ni)))
        .collect::<Result<Vec<_>>>()?;
    let target = LaurentPoly::monomial(Rational::one(), -ni);
    ConnectionReport::build("monomial", &target, a, lambda, closed)
}

/// `(x − b)_λⁿ` in the basis at `a`. The closed form is
/// `[n k]_λ (−1)^k λ^{2C(k,2)} (λ^{1−n} b/a)^k (a − b)_λ^{n−k}`;
/// the exact coefficients agree with it once `(−1)^k` is dropped.
pub fn connect_two_point(
    n: u32,
    a: &Rational,
    b: &Rational,
    lambda: &Rational,
) -> Result<ConnectionReport> {
    check_basis(a, lambda)?;
    let ni = i64::from(n);
    let b_spec = BasisSpec::new(b.clone(), lambda.clone())?;
    let ratio = pow_nz(lambda, 1 - ni) * b / a;
    let unsigned = (0..=ni)
        .map(|k| {
            Ok(q_binomial(n, k, lambda)?
                * pow_nz(lambda, 2 * binom2(k))
                * pow_nz_or_one(&ratio, k)
                * lb_eval(&b_spec, ni - k, a)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let closed = unsigned
        .iter()
        .enumerate()
        .map(|(k, c)| sign(k as i64) * c)
        .collect();
    let target = lb_expand(&b_spec, n);
    let mut report = ConnectionReport::build("two-point", &target, a, lambda, closed)?;
    report.unsigned_form = Some(unsigned);
    Ok(report)
}

// r^k with 0^0 = 1 and 0^k = 0
fn pow_nz_or_one(r: &Rational, k: i64) -> Rational {
    if k == 0 {
        Rational::one()
    } else if r.is_zero() {
        Rational::zero()
    } else {
        pow_nz(r, k)
    }
}

/// `(x⁻¹;λ)_n = Σ [n k]_λ λ^{2C(k,2)} a^{−k} (λᵏa⁻¹;λ)_{n−k} (x − a)_λ^k`.
pub fn connect_pochhammer(n: u32, a: &Rational, lambda: &Rational) -> Result<ConnectionReport> {
    check_basis(a, lambda)?;
    let ni = i64::from(n);
    let a_inv = a.recip();
    let closed = (0..=ni)
        .map(|k| {
            Ok(q_binomial(n, k, lambda)?
                * pow_nz(lambda, 2 * binom2(k))
                * pow_nz(&a_inv, k)
                * q_pochhammer(&(pow_nz(lambda, k) * &a_inv), lambda, (ni - k) as u32))
        })
        .collect::<Result<Vec<_>>>()?;
    let target = gauss_expand(n, lambda)?.in_reciprocal();
    ConnectionReport::build("pochhammer", &target, a, lambda, closed)
}

/// `h_n(x⁻¹|λ) = Σ [n k]_λ (−1)^k λ^{C(k,2)} a^{−k} h_{n−k}(a⁻¹|λ) (x − a)_λ^k`.
pub fn connect_rogers_szego(n: u32, a: &Rational, lambda: &Rational) -> Result<ConnectionReport> {
    check_basis(a, lambda)?;
    let ni = i64::from(n);
    let a_inv = a.recip();
    let closed = (0..=ni)
        .map(|k| {
            Ok(q_binomial(n, k, lambda)?
                * sign(k)
                * pow_nz(lambda, binom2(k))
                * pow_nz(&a_inv, k)
                * rogers_szego((ni - k) as u32, lambda)?.eval(&a_inv))
        })
        .collect::<Result<Vec<_>>>()?;
    let target = rogers_szego(n, lambda)?.in_reciprocal();
    ConnectionReport::build("rogers-szego", &target, a, lambda, closed)
}

/// `S_n(x⁻¹|λ)` in the basis at `a`. The closed form
/// `[n k]_λ (−1)^k λ^{k(3k−1)/2} a^{−k} S_{n−k}(λ²a⁻¹|λ)` already disagrees
/// with the exact coefficients at `n = 1`.
pub fn connect_stieltjes_wigert(
    n: u32,
    a: &Rational,
    lambda: &Rational,
) -> Result<ConnectionReport> {
    check_basis(a, lambda)?;
    let ni = i64::from(n);
    let a_inv = a.recip();
    let arg = lambda * lambda * &a_inv;
    let closed = (0..=ni)
        .map(|k| {
            Ok(q_binomial(n, k, lambda)?
                * sign(k)
                * pow_nz(lambda, k * (3 * k - 1) / 2)
                * pow_nz(&a_inv, k)
                * stieltjes_wigert((ni - k) as u32, lambda)?.eval(&arg))
        })
        .collect::<Result<Vec<_>>>()?;
    let target = stieltjes_wigert(n, lambda)?.in_reciprocal();
    ConnectionReport::build("stieltjes-wigert", &target, a, lambda, closed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn v(xs: &[(i64, i64)]) -> Vec<Rational> {
        xs.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn reconstruct_examples() {
        let e = BasisExpansion::new(int(2), int(3), vec![rat(5, 7)]).unwrap();
        assert_eq!(reconstruct(&e), lp("0:5/7"));
        let e = BasisExpansion::new(int(2), int(3), v(&[(1, 2), (-1, 2)])).unwrap();
        assert_eq!(reconstruct(&e), lp("-1:1"));
        let e = BasisExpansion::new(int(1), int(2), v(&[(1, 1), (-3, 1), (2, 1)])).unwrap();
        assert_eq!(reconstruct(&e), lp("-2:1"));
    }

    #[test]
    fn rejects_bad_basis() {
        let f = lp("-1:1");
        assert!(taylor_via_system(&f, &int(0), &int(2)).is_err());
        for l in [int(0), int(1), int(-1)] {
            assert!(taylor_via_system(&f, &int(1), &l).is_err());
            assert!(taylor_via_connection(&f, &int(1), &l).is_err());
        }
        assert!(taylor_via_system(&lp("1:1"), &int(1), &int(2)).is_err());
    }

    #[test]
    fn system_examples() {
        let e = taylor_via_system(&lp("0:4/9"), &int(3), &int(5)).unwrap();
        assert_eq!(e.coeffs(), &[rat(4, 9)]);
        let e = taylor_via_system(&lp("-1:1"), &int(2), &int(3)).unwrap();
        assert_eq!(e.coeffs(), v(&[(1, 2), (-1, 2)]).as_slice());
        let e = taylor_via_system(&lp("-2:1"), &int(1), &int(2)).unwrap();
        assert_eq!(e.coeffs(), v(&[(1, 1), (-3, 1), (2, 1)]).as_slice());
    }

    #[test]
    fn connection_route_examples() {
        let e = taylor_via_connection(&lp("-2:1"), &int(1), &int(2)).unwrap();
        assert_eq!(e.coeffs(), v(&[(1, 1), (-3, 1), (2, 1)]).as_slice());
        let e = taylor_via_connection(&lp("0:-3"), &int(7), &rat(1, 2)).unwrap();
        assert_eq!(e.coeffs(), &[int(-3)]);
        let e = taylor_via_connection(&lp("-1:1"), &int(2), &int(3)).unwrap();
        assert_eq!(e.coeffs(), v(&[(1, 2), (-1, 2)]).as_slice());
    }

    #[test]
    fn routes_agree_and_roundtrip() {
        let f = lp("0:2,-1:-1/3,-3:5,-4:7/2");
        for (a, l) in [(int(1), int(2)), (rat(-3, 5), rat(2, 7)), (int(4), rat(-5, 3))] {
            let s = taylor_via_system(&f, &a, &l).unwrap();
            let c = taylor_via_connection(&f, &a, &l).unwrap();
            assert_eq!(s, c);
            assert_eq!(reconstruct(&s), f);
            assert_eq!(c1_closed_form(&f, &a, &l).unwrap(), s.coeffs()[1]);
        }
    }

    #[test]
    fn monomial_examples() {
        let r = connect_monomial(0, &int(3), &int(2)).unwrap();
        assert_eq!(r.truth(), &[int(1)]);
        let r = connect_monomial(1, &int(2), &rat(5, 3)).unwrap();
        assert_eq!(r.truth(), v(&[(1, 2), (-1, 2)]).as_slice());
        assert!(r.closed_form_agrees());
        let r = connect_monomial(2, &int(1), &int(2)).unwrap();
        assert_eq!(r.closed_form, v(&[(1, 1), (-3, 1), (2, 1)]));
        assert!(r.closed_form_agrees());
    }

    #[test]
    fn two_point_examples() {
        let r = connect_two_point(3, &int(2), &int(0), &int(3)).unwrap();
        assert_eq!(r.truth(), &[int(1)]);
        assert!(r.closed_form_agrees());
        let r = connect_two_point(1, &int(2), &int(1), &int(3)).unwrap();
        assert_eq!(r.truth(), v(&[(1, 2), (1, 2)]).as_slice());
        assert_eq!(r.closed_form, v(&[(1, 2), (-1, 2)]));
        assert!(!r.closed_form_agrees());
        assert_eq!(r.unsigned_form_agrees(), Some(true));
        let r = connect_two_point(3, &rat(2, 5), &rat(2, 5), &int(3)).unwrap();
        assert_eq!(r.truth(), &[int(0), int(0), int(0), int(1)]);
        assert_eq!(r.closed_form[3], int(-1));
        assert_eq!(r.unsigned_form_agrees(), Some(true));
    }

    #[test]
    fn pochhammer_examples() {
        let r = connect_pochhammer(0, &int(3), &int(2)).unwrap();
        assert_eq!(r.truth(), &[int(1)]);
        let a = rat(-4, 3);
        let r = connect_pochhammer(1, &a, &rat(2, 9)).unwrap();
        assert_eq!(r.closed_form, vec![int(1) - a.recip(), a.recip()]);
        assert!(r.closed_form_agrees());
        assert_eq!(reconstruct(&r.expansion), lp("0:1,-1:-1"));
        let r = connect_pochhammer(2, &int(1), &int(2)).unwrap();
        assert_eq!(reconstruct(&r.expansion), &lp("0:1,-1:-1") * &lp("0:1,-1:-2"));
        assert!(r.closed_form_agrees());
    }

    #[test]
    fn rogers_szego_examples() {
        let r = connect_rogers_szego(0, &int(3), &int(2)).unwrap();
        assert_eq!(r.truth(), &[int(1)]);
        let r = connect_rogers_szego(1, &int(2), &rat(7, 4)).unwrap();
        assert_eq!(r.closed_form, v(&[(3, 2), (-1, 2)]));
        assert!(r.closed_form_agrees());
        assert_eq!(reconstruct(&r.expansion), lp("0:1,-1:1"));
        let r = connect_rogers_szego(2, &int(1), &int(2)).unwrap();
        assert_eq!(reconstruct(&r.expansion), lp("0:1,-1:3,-2:1"));
        assert!(r.closed_form_agrees());
    }

    #[test]
    fn stieltjes_wigert_examples() {
        let r = connect_stieltjes_wigert(0, &int(3), &int(2)).unwrap();
        assert_eq!(r.truth(), &[int(1)]);
        let r = connect_stieltjes_wigert(1, &int(1), &rat(1, 2)).unwrap();
        assert_eq!(r.truth(), v(&[(3, 1), (-1, 1)]).as_slice());
        assert_eq!(r.closed_form[1], rat(-1, 2));
        assert!(!r.closed_form_agrees());
        let r = connect_stieltjes_wigert(1, &int(1), &rat(1, 3)).unwrap();
        assert_eq!(r.truth(), v(&[(2, 1), (-1, 2)]).as_slice());
    }
}
