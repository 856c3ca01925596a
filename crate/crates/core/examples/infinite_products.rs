//! q-Pochhammer products, the q-exponentials and the functional equations
//! their λ-analogues solve.

use lamcalc::algebra::rational::{int, rat};
use lamcalc::algebra::ComplexApprox;
use lamcalc::qsymbols::{
    big_e_q, e_q, infinite_product_residuals, q_binomial, q_pochhammer, q_pochhammer_inf,
    residual_big_e, residual_small_e, solution_big_e, TruncationConfig,
};

fn main() -> lamcalc::Result<()> {
    let cfg = TruncationConfig::default();
    let d = cfg.precision_digits;
    let q = rat(1, 2);
    println!("(1/3; 1/2)_4 = {}", q_pochhammer(&rat(1, 3), &q, 4));
    println!("[5 2]_(1/2)  = {}", q_binomial(5, 2, &q)?);

    let qc = ComplexApprox::from_rational(&q, d)?;
    let z = ComplexApprox::from_rational(&rat(1, 3), d)?;
    let inf = q_pochhammer_inf(&z, &qc, &cfg)?;
    println!("(1/3; 1/2)_∞ = {}", inf.to_decimal_string(40));
    let small = e_q(&z, &qc, &cfg)?;
    let big = big_e_q(&z.neg(), &qc, &cfg)?;
    println!("e_q(z)       = {}", small.to_decimal_string(40));
    println!("e_q·E_q(-z)  = {}", small.mul(&big)?.to_decimal_string(40));

    let (a, lambda) = (int(1), int(2));
    let x = ComplexApprox::from_rational(&int(3), d)?;
    println!("E solution   = {}", solution_big_e(&a, &lambda, &x, &cfg)?.to_decimal_string(30));
    println!("residual E   = {}", residual_big_e(&a, &lambda, &x, &cfg)?.to_decimal_string(5));
    println!("residual e   = {}", residual_small_e(&a, &lambda, &x, &cfg)?.to_decimal_string(5));

    let r = infinite_product_residuals(&a, &rat(1, 2), &x, 4, &cfg)?;
    println!("product forms below 1e-20: {}", r.all_below(1e-20));
    Ok(())
}
