//! q-shifted factorials, q-binomial coefficients, the q-exponentials, the
//! Gauss, Rogers–Szegő and Stieltjes–Wigert polynomials, and truncated
//! infinite products.

use num_traits::{One, Signed, Zero};

use crate::algebra::complex::{bits_for, cmp_bf, DEFAULT_DIGITS};
use crate::algebra::rational::{binom2, is_unit_root, pow_nz};
use crate::algebra::{ComplexApprox, LaurentPoly, Rational};
use crate::error::{Error, Result};

/// Dense polynomial `Σ coeffs[k]·z^k`, trimmed so the last coefficient is
/// nonzero (the zero polynomial has no coefficients).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QPolynomial {
    coeffs: Vec<Rational>,
}

impl QPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * z + c)
    }

    /// The Laurent polynomial `p(x⁻¹)`.
    pub fn in_reciprocal(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (-(k as i64), c.clone())),
        )
    }

    /// `p(z)` as a Laurent polynomial in `z`.
    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (k as i64, c.clone())),
        )
    }

    fn mul_linear(&self, root_coeff: &Rational) -> Self {
        // self · (1 − root_coeff·z)
        let mut out = vec![Rational::zero(); self.coeffs.len() + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k] += c;
            out[k + 1] -= c * root_coeff;
        }
        Self::new(out)
    }
}

/// Stopping rule and working precision for infinite sums and products.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncationConfig {
    pub precision_digits: u32,
    pub tol: f64,
    pub max_terms: usize,
}

impl Default for TruncationConfig {
    fn default() -> Self {
        Self {
            precision_digits: DEFAULT_DIGITS,
            tol: 1e-30,
            max_terms: 10_000,
        }
    }
}

impl TruncationConfig {
    pub fn new(precision_digits: u32, tol: f64, max_terms: usize) -> Result<Self> {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
        }
        if max_terms == 0 {
            return Err(Error::InvalidParameter("max_terms must be at least 1".into()));
        }
        if precision_digits < crate::algebra::complex::MIN_DIGITS {
            return Err(Error::Precision {
                min: crate::algebra::complex::MIN_DIGITS,
                got: precision_digits,
            });
        }
        Ok(Self {
            precision_digits,
            tol,
            max_terms,
        })
    }

    fn tol_float(&self) -> astro_float::BigFloat {
        astro_float::BigFloat::from_f64(self.tol, bits_for(self.precision_digits))
    }
}

/// `(a; q)_n = ∏_{k<n} (1 − q^k a)`.
pub fn q_pochhammer(a: &Rational, q: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    let mut qk_a = a.clone();
    for _ in 0..n {
        acc *= Rational::one() - &qk_a;
        qk_a *= q;
    }
    acc
}

/// `(a; q)_n` at complex arguments.
pub fn q_pochhammer_complex(a: &ComplexApprox, q: &ComplexApprox, n: u32) -> Result<ComplexApprox> {
    let digits = a.precision_digits().min(q.precision_digits());
    let one = ComplexApprox::one(digits)?;
    let mut acc = one.clone();
    let mut term = a.clone();
    for _ in 0..n {
        acc = acc.mul(&one.sub(&term)?)?;
        term = term.mul(q)?;
    }
    Ok(acc)
}

fn below(x: &ComplexApprox, bound: &astro_float::BigFloat) -> bool {
    cmp_bf(&x.magnitude(), bound).is_lt()
}

fn magnitude_lt_one(q: &ComplexApprox) -> bool {
    let one = astro_float::BigFloat::from_u8(1, bits_for(q.precision_digits()));
    cmp_bf(&q.magnitude(), &one).is_lt()
}

/// `(a; q)_∞`, truncated at the first `N` with `|a|·|q|^N / (1 − |q|) < tol`.
pub fn q_pochhammer_inf(
    a: &ComplexApprox,
    q: &ComplexApprox,
    cfg: &TruncationConfig,
) -> Result<ComplexApprox> {
    if !magnitude_lt_one(q) {
        return Err(Error::Domain("(a;q)_∞ needs |q| < 1".into()));
    }
    let digits = cfg
        .precision_digits
        .min(a.precision_digits())
        .min(q.precision_digits());
    let one = ComplexApprox::one(digits)?;
    let gap = one.sub(&q.abs())?;
    let tol = cfg.tol_float();
    let mut acc = one.clone();
    let mut term = a.clone();
    let mut n = 0usize;
    while !below(&term.abs().div(&gap)?, &tol) {
        if n >= cfg.max_terms {
            return Err(Error::TruncationOverflow(cfg.max_terms));
        }
        acc = acc.mul(&one.sub(&term)?)?;
        term = term.mul(q)?;
        n += 1;
    }
    Ok(acc)
}

fn check_q_admissible(q: &Rational, n: u32) -> Result<()> {
    // (q;q)_j vanishes iff q^i = 1 for some 1 ≤ i ≤ j; for rational q that
    // means q = 1 (j ≥ 1) or q = −1 (j ≥ 2).
    let bad = (q.is_one() && n >= 1) || (is_unit_root(q) && q.is_negative() && n >= 2);
    if bad {
        return Err(Error::VanishingDenominator(format!("(q;q)_j = 0 for q = {q}, j ≤ {n}")));
    }
    Ok(())
}

/// `[n k]_q = (q;q)_n / ((q;q)_k (q;q)_{n−k})`, zero outside `0 ≤ k ≤ n`.
pub fn q_binomial(n: u32, k: i64, q: &Rational) -> Result<Rational> {
    check_q_admissible(q, n)?;
    if k < 0 || k > i64::from(n) {
        return Ok(Rational::zero());
    }
    let k = k as u32;
    let qq = |m| q_pochhammer(q, q, m);
    Ok(qq(n) / (qq(k) * qq(n - k)))
}

/// Coefficients of `(x;q)_n` via the q-binomial theorem
/// `Σ [n k]_q q^{C(k,2)} (−1)^k x^k`.
pub fn gauss_expand(n: u32, q: &Rational) -> Result<QPolynomial> {
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    for k in 0..=i64::from(n) {
        let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
        coeffs.push(q_binomial(n, k, q)? * pow_q(q, binom2(k)) * sign);
    }
    Ok(QPolynomial::new(coeffs))
}

/// `(x;q)_n` by multiplying out its linear factors.
pub fn pochhammer_product_poly(n: u32, q: &Rational) -> QPolynomial {
    let mut p = QPolynomial::new(vec![Rational::one()]);
    let mut qk = Rational::one();
    for _ in 0..n {
        p = p.mul_linear(&qk);
        qk *= q;
    }
    p
}

// q^e for e ≥ 0, with 0^0 = 1
fn pow_q(q: &Rational, e: i64) -> Rational {
    debug_assert!(e >= 0);
    if e == 0 {
        Rational::one()
    } else if q.is_zero() {
        Rational::zero()
    } else {
        pow_nz(q, e)
    }
}

/// Rogers–Szegő polynomial `h_n(x|q) = Σ [n k]_q x^k`.
pub fn rogers_szego(n: u32, q: &Rational) -> Result<QPolynomial> {
    let coeffs = (0..=i64::from(n))
        .map(|k| q_binomial(n, k, q))
        .collect::<Result<Vec<_>>>()?;
    Ok(QPolynomial::new(coeffs))
}

/// Stieltjes–Wigert polynomial `S_n(x|q) = (q;q)_n⁻¹ Σ [n k]_q q^{k²} x^k`.
pub fn stieltjes_wigert(n: u32, q: &Rational) -> Result<QPolynomial> {
    check_q_admissible(q, n)?;
    let norm = q_pochhammer(q, q, n);
    if norm.is_zero() {
        return Err(Error::VanishingDenominator(format!("(q;q)_{n} = 0")));
    }
    let coeffs = (0..=i64::from(n))
        .map(|k| Ok(q_binomial(n, k, q)? * pow_q(q, k * k) / &norm))
        .collect::<Result<Vec<_>>>()?;
    Ok(QPolynomial::new(coeffs))
}

/// Sums terms `t_0, t_1, …` given `t_{n+1} = t_n · ratio(n)` until the tail
/// is provably below `tol`, both absolutely and relative to the sum: once
/// `|ratio(m)| ≤ r < 1` for all `m ≥ n`, the tail after `t_n` is at most
/// `|t_n|·r/(1 − r)`.
fn sum_ratio_series(
    first: ComplexApprox,
    cfg: &TruncationConfig,
    mut ratio: impl FnMut(usize) -> Result<(ComplexApprox, ComplexApprox)>,
) -> Result<ComplexApprox> {
    let tol = cfg.tol_float();
    let digits = first.precision_digits();
    let one = ComplexApprox::one(digits)?;
    let tol_c = ComplexApprox::new(
        tol.clone(),
        astro_float::BigFloat::from_u8(0, bits_for(digits)),
        digits,
    )?;
    let mut sum = first.clone();
    let mut term = first;
    for n in 0..cfg.max_terms {
        // (exact ratio, majorant bound for all later ratios)
        let (r, bound) = ratio(n)?;
        if magnitude_lt_one(&bound) {
            let tail = term.abs().mul(&bound)?.div(&one.sub(&bound)?)?;
            // tail < tol·(|sum| − tail) bounds the relative error by tol
            let scaled = tail.add(&tail.mul(&tol_c)?)?.div(&tol_c)?;
            if below(&tail, &tol) && below(&scaled, &sum.magnitude()) {
                return Ok(sum);
            }
        }
        term = term.mul(&r)?;
        sum = sum.add(&term)?;
    }
    Err(Error::TruncationOverflow(cfg.max_terms))
}

/// `e_q(z) = Σ zⁿ/(q;q)_n`, for `|q| < 1`, `|z| < 1`.
pub fn e_q(z: &ComplexApprox, q: &ComplexApprox, cfg: &TruncationConfig) -> Result<ComplexApprox> {
    if !magnitude_lt_one(q) || !magnitude_lt_one(z) {
        return Err(Error::Domain("e_q(z) needs |q| < 1 and |z| < 1".into()));
    }
    let digits = cfg.precision_digits.min(z.precision_digits()).min(q.precision_digits());
    let one = ComplexApprox::one(digits)?;
    let qa = q.abs();
    let za = z.abs();
    let mut q_pow = q.clone(); // q^{n+1}
    let mut qa_pow = qa.clone(); // |q|^{n+1}
    sum_ratio_series(one.clone(), cfg, |_| {
        // t_{n+1}/t_n = z/(1 − q^{n+1}); |1 − q^m| ≥ 1 − |q|^m ≥ 1 − |q|^{n+1}
        let r = z.div(&one.sub(&q_pow)?)?;
        let bound = za.div(&one.sub(&qa_pow)?)?;
        q_pow = q_pow.mul(q)?;
        qa_pow = qa_pow.mul(&qa)?;
        Ok((r, bound))
    })
}

/// `E_q(z) = Σ q^{C(n,2)} zⁿ/(q;q)_n`, for `|q| < 1`.
pub fn big_e_q(
    z: &ComplexApprox,
    q: &ComplexApprox,
    cfg: &TruncationConfig,
) -> Result<ComplexApprox> {
    if !magnitude_lt_one(q) {
        return Err(Error::Domain("E_q(z) needs |q| < 1".into()));
    }
    let digits = cfg.precision_digits.min(z.precision_digits()).min(q.precision_digits());
    let one = ComplexApprox::one(digits)?;
    let qa = q.abs();
    let za = z.abs();
    let mut q_n = one.clone(); // q^n
    let mut qa_n = one.clone(); // |q|^n
    sum_ratio_series(one.clone(), cfg, |_| {
        // t_{n+1}/t_n = q^n z/(1 − q^{n+1}), and the bound decreases in n
        let q_next = q_n.mul(q)?;
        let qa_next = qa_n.mul(&qa)?;
        let r = q_n.mul(z)?.div(&one.sub(&q_next)?)?;
        let bound = qa_n.mul(&za)?.div(&one.sub(&qa_next)?)?;
        q_n = q_next;
        qa_n = qa_next;
        Ok((r, bound))
    })
}

fn check_proportional(lambda: &Rational, x: &ComplexApprox) -> Result<()> {
    if lambda <= &Rational::one() {
        return Err(Error::Domain(format!("proportional-equation solutions need λ > 1, got {lambda}")));
    }
    if x.is_zero() {
        return Err(Error::Domain("x must be nonzero".into()));
    }
    Ok(())
}

fn product_a_over_x(
    a: &Rational,
    lambda: &Rational,
    x: &ComplexApprox,
    cfg: &TruncationConfig,
) -> Result<ComplexApprox> {
    let digits = cfg.precision_digits.min(x.precision_digits());
    let ax = ComplexApprox::from_rational(a, digits)?.div(x)?;
    let q = ComplexApprox::from_rational(&lambda.recip(), digits)?;
    q_pochhammer_inf(&ax, &q, cfg)
}

/// Solution of `x f(λx) = x f(x) + a f(λx)`, `f(∞) = 1`:
/// `f(x) = (a/x; λ⁻¹)_∞`.
pub fn solution_big_e(
    a: &Rational,
    lambda: &Rational,
    x: &ComplexApprox,
    cfg: &TruncationConfig,
) -> Result<ComplexApprox> {
    check_proportional(lambda, x)?;
    product_a_over_x(a, lambda, x, cfg)
}

/// Solution of `a f(x) = x f(x) − x f(λx)`, `f(∞) = 1`:
/// `f(x) = 1/(a/x; λ⁻¹)_∞`.
pub fn solution_small_e(
    a: &Rational,
    lambda: &Rational,
    x: &ComplexApprox,
    cfg: &TruncationConfig,
) -> Result<ComplexApprox> {
    check_proportional(lambda, x)?;
    let p = product_a_over_x(a, lambda, x, cfg)?;
    let floor = 10f64.powi(-(p.precision_digits() as i32));
    if p.magnitude_below(floor) {
        return Err(Error::VanishingDenominator("(a/x; 1/λ)_∞ vanishes numerically".into()));
    }
    p.recip()
}

/// `x f(λx) − x f(x) − a f(λx)` for [`solution_big_e`].
pub fn residual_big_e(
    a: &Rational,
    lambda: &Rational,
    x: &ComplexApprox,
    cfg: &TruncationConfig,
) -> Result<ComplexApprox> {
    let lx = x.scale(lambda)?;
    let f_x = solution_big_e(a, lambda, x, cfg)?;
    let f_lx = solution_big_e(a, lambda, &lx, cfg)?;
    let a_c = ComplexApprox::from_rational(a, x.precision_digits())?;
    Ok(x.mul(&f_lx)?.sub(&x.mul(&f_x)?)?.sub(&a_c.mul(&f_lx)?)?.abs())
}

/// `a f(x) − x f(x) + x f(λx)` for [`solution_small_e`].
pub fn residual_small_e(
    a: &Rational,
    lambda: &Rational,
    x: &ComplexApprox,
    cfg: &TruncationConfig,
) -> Result<ComplexApprox> {
    let lx = x.scale(lambda)?;
    let f_x = solution_small_e(a, lambda, x, cfg)?;
    let f_lx = solution_small_e(a, lambda, &lx, cfg)?;
    let a_c = ComplexApprox::from_rational(a, x.precision_digits())?;
    Ok(a_c.mul(&f_x)?.sub(&x.mul(&f_x)?)?.add(&x.mul(&f_lx)?)?.abs())
}

/// Relative residuals of the four closed forms for iterated λ-derivatives
/// and λ-integrals of `g(x) = (ax; λ)_∞` and `1/g(x)`, `|λ| < 1`.
///
/// The left sides use `D_λⁿ h(x) = h(λⁿx)/(λ^{C(n,2)}xⁿ)` and
/// `Î_λⁿ h(x) = xⁿ h(x/λⁿ)/λ^{C(n+1,2)}`; the right sides are the product
/// formulas in terms of `g(x)` and finite Pochhammer symbols.
#[derive(Clone, Debug)]
pub struct InfiniteProductResiduals {
    pub d_product: ComplexApprox,
    pub d_reciprocal: ComplexApprox,
    pub i_product: ComplexApprox,
    pub i_reciprocal: ComplexApprox,
}

impl InfiniteProductResiduals {
    pub fn all_below(&self, bound: f64) -> bool {
        [&self.d_product, &self.d_reciprocal, &self.i_product, &self.i_reciprocal]
            .iter()
            .all(|r| r.magnitude_below(bound))
    }
}

fn relative(lhs: &ComplexApprox, rhs: &ComplexApprox) -> Result<ComplexApprox> {
    let diff = lhs.sub(rhs)?.abs();
    if rhs.is_zero() {
        return Ok(diff);
    }
    diff.div(&rhs.abs())
}

pub fn infinite_product_residuals(
    a: &Rational,
    lambda: &Rational,
    x: &ComplexApprox,
    n: u32,
    cfg: &TruncationConfig,
) -> Result<InfiniteProductResiduals> {
    if lambda.is_zero() || lambda.abs() >= Rational::one() {
        return Err(Error::Domain(format!("needs 0 < |λ| < 1, got {lambda}")));
    }
    if x.is_zero() {
        return Err(Error::Domain("x must be nonzero".into()));
    }
    let digits = cfg.precision_digits.min(x.precision_digits());
    let lam = ComplexApprox::from_rational(lambda, digits)?;
    let a_c = ComplexApprox::from_rational(a, digits)?;
    let g = |t: &ComplexApprox| q_pochhammer_inf(&a_c.mul(t)?, &lam, cfg);
    let ni = i64::from(n);
    let ln = pow_nz(lambda, ni);
    let xn = x.powi(ni)?;

    let g_x = g(x)?;
    let ax_n = q_pochhammer_complex(&a_c.mul(x)?, &lam, n)?;
    // (λ⁻¹ax; λ⁻¹)_n
    let inv = ComplexApprox::from_rational(&lambda.recip(), digits)?;
    let ax_inv_n = q_pochhammer_complex(&a_c.mul(x)?.mul(&inv)?, &inv, n)?;

    let d_scale = ComplexApprox::from_rational(&pow_nz(lambda, binom2(ni)), digits)?.mul(&xn)?;
    let g_up = g(&x.scale(&ln)?)?;
    let d_product = relative(&g_up.div(&d_scale)?, &g_x.div(&d_scale.mul(&ax_n)?)?)?;
    let d_reciprocal = relative(
        &g_up.mul(&d_scale)?.recip()?,
        &ax_n.div(&d_scale.mul(&g_x)?)?,
    )?;

    let i_scale = xn.div(&ComplexApprox::from_rational(&pow_nz(lambda, binom2(ni + 1)), digits)?)?;
    let g_down = g(&x.scale(&ln.recip())?)?;
    let i_product = relative(&i_scale.mul(&g_down)?, &i_scale.mul(&ax_inv_n)?.mul(&g_x)?)?;
    let i_reciprocal = relative(
        &i_scale.div(&g_down)?,
        &i_scale.div(&ax_inv_n.mul(&g_x)?)?,
    )?;
    Ok(InfiniteProductResiduals {
        d_product,
        d_reciprocal,
        i_product,
        i_reciprocal,
    })
}
