//! `(x − a)_λ^α` for non-integer and complex exponents.

use lamcalc::algebra::rational::{int, rat};
use lamcalc::algebra::ComplexApprox;
use lamcalc::lambinom::{lb_addition_general, lb_eval, lb_general, lb_general_dk, BasisSpec};
use lamcalc::qsymbols::TruncationConfig;

fn main() -> lamcalc::Result<()> {
    let cfg = TruncationConfig::default();
    let d = cfg.precision_digits;
    let spec = BasisSpec::new(int(1), int(3))?;
    let x = ComplexApprox::from_rational(&rat(5, 2), d)?;

    // integer exponents reproduce the finite product
    let three = ComplexApprox::from_rational(&int(3), d)?;
    println!("α = 3 numeric: {}", lb_general(&spec, &three, &x, &cfg)?.to_decimal_string(30));
    println!("α = 3 exact:   {}", lb_eval(&spec, 3, &rat(5, 2))?);

    let half = ComplexApprox::from_rational(&rat(1, 2), d)?;
    let cplx = ComplexApprox::from_rationals(&rat(1, 2), &int(1), d)?;
    println!("α = 1/2:       {}", lb_general(&spec, &half, &x, &cfg)?.to_decimal_string(30));
    println!("α = 1/2 + i:   {}", lb_general(&spec, &cplx, &x, &cfg)?.to_decimal_string(30));

    let add = lb_addition_general(&spec, &half, &cplx, &x, &cfg)?;
    println!("addition residual: {}", add.to_decimal_string(5));
    let dk = lb_general_dk(&spec, &cplx, 2, &x, &cfg)?;
    println!("D² residual:       {}", dk.to_decimal_string(5));

    // |λ| ≤ 1 has no convergent product form
    let small = BasisSpec::new(int(1), rat(1, 2))?;
    if let Err(e) = lb_general(&small, &half, &x, &cfg) {
        println!("λ = 1/2: {e}");
    }
    Ok(())
}
