//! The λ-binomial basis `(x − a)_λⁿ`: expansion, evaluation and certificates.

use lamcalc::algebra::rational::{int, rat};
use lamcalc::lambinom::{lb_addition, lb_dk, lb_eval, lb_expand, lb_ik, BasisSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> lamcalc::Result<()> {
    let spec = BasisSpec::new(int(1), int(2))?;
    for n in 0..=3 {
        println!("(x - 1)_2^{n} = {}", lb_expand(&spec, n));
    }
    for n in [-2, -1, 2] {
        println!("value at x = 3, n = {n}: {}", lb_eval(&spec, n, &int(3))?);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let spec = BasisSpec::new(rat(2, 3), rat(-3, 2))?;
    let checks = [
        ("D² of n = 4", lb_dk(&spec, 4, 2, &mut rng)),
        ("D¹ of n = -1", lb_dk(&spec, -1, 1, &mut rng)),
        ("I² of n = 3", lb_ik(&spec, 3, 2, &mut rng)),
        ("addition m = 2, n = 3", lb_addition(&spec, 2, 3)),
    ];
    for (name, cert) in checks {
        let how = if cert.exact.is_some() { "exact" } else { "pointwise" };
        println!("{name}: holds = {} ({how}, {} points)", cert.holds(), cert.points.len());
    }
    Ok(())
}
