//! Expanding a polynomial in `1/x` around `a` in the λ-binomial basis.

use lamcalc::algebra::rational::int;
use lamcalc::algebra::LaurentPoly;
use lamcalc::taylor::{c1_closed_form, reconstruct, taylor_via_connection, taylor_via_system};

fn main() -> lamcalc::Result<()> {
    let f: LaurentPoly = "0:1,-1:-2,-2:5,-3:1/4".parse()?;
    let (a, lambda) = (int(3), int(2));

    let sys = taylor_via_system(&f, &a, &lambda)?;
    let con = taylor_via_connection(&f, &a, &lambda)?;
    let show: Vec<String> = sys.coeffs().iter().map(ToString::to_string).collect();
    println!("f            = {f}");
    println!("coefficients = [{}]", show.join(", "));
    println!("routes agree = {}", sys == con);
    println!("c1 formula   = {}", c1_closed_form(&f, &a, &lambda)?);
    println!("roundtrip    = {}", reconstruct(&sys) == f);

    // polynomials with positive powers have no such expansion
    let g: LaurentPoly = "1:1".parse()?;
    if let Err(e) = taylor_via_system(&g, &a, &lambda) {
        println!("x rejected: {e}");
    }
    Ok(())
}
