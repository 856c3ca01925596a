//! Classical families re-expanded in the λ-binomial basis, next to their
//! closed-form coefficients.

use lamcalc::algebra::rational::{int, rat};
use lamcalc::algebra::Rational;
use lamcalc::taylor::{
    connect_monomial, connect_pochhammer, connect_rogers_szego, connect_stieltjes_wigert,
    connect_two_point, ConnectionReport,
};

fn list(v: &[Rational]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn show(r: &ConnectionReport) {
    println!("{}", r.name);
    println!("  exact       [{}]", list(r.truth()));
    println!("  closed form [{}]", list(&r.closed_form));
    if let Some(u) = &r.unsigned_form {
        println!("  unsigned    [{}]", list(u));
    }
    println!("  agree       {:?}", r.agreement());
}

fn main() -> lamcalc::Result<()> {
    let l = int(3);
    show(&connect_monomial(3, &int(2), &l)?);
    show(&connect_two_point(2, &int(2), &int(1), &l)?);
    show(&connect_pochhammer(3, &int(2), &l)?);
    show(&connect_rogers_szego(3, &int(2), &l)?);
    show(&connect_stieltjes_wigert(1, &int(1), &rat(1, 2))?);
    Ok(())
}
