//! λ-derivative and λ-integral on Laurent polynomials.

use lamcalc::algebra::rational::{int, rat};
use lamcalc::algebra::LaurentPoly;
use lamcalc::ops::{
    d_lambda, d_lambda_iterated, d_lambda_n, definite_integral, i_lambda, i_lambda_n,
    jackson_derivative, OperatorContext,
};

fn main() -> lamcalc::Result<()> {
    let ctx = OperatorContext::new(int(2))?;
    let f: LaurentPoly = "2:1,0:3".parse()?;

    println!("f           = {f}");
    println!("D f         = {}", d_lambda(&f, &ctx));
    println!("I f         = {}", i_lambda(&f, &ctx));
    println!("D I f       = {}", d_lambda(&i_lambda(&f, &ctx), &ctx));

    // the closed form for Dⁿ agrees with n-fold application
    let d3 = d_lambda_n(&f, &ctx, 3);
    assert_eq!(d3, d_lambda_iterated(&f, &ctx, 3));
    println!("D³ f        = {d3}");
    println!("I³ f        = {}", i_lambda_n(&f, &ctx, 3));

    let area = definite_integral(&f, &ctx, &int(1), &int(4))?;
    println!("∫_1^4 f     = {area}");

    let q = rat(1, 3);
    println!("Jackson D_q = {}", jackson_derivative(&f, &q)?);
    Ok(())
}
