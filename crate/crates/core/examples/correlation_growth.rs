//! Stage-2 witness: growth of the distance between a marginal and its locally
//! rotated copy. Correlated states grow, products contract.
use std::f64::consts::{FRAC_PI_8, PI};

use correlation_probe::{make_cc, make_f, witness_growth, HalfWavePlate};

fn main() -> correlation_probe::Result<()> {
    let cc = make_cc(0.64)?;
    let f = make_f(0.65)?;
    println!("alpha      CC(0.64)   F(0.65)");
    for k in 0..=8 {
        let alpha = k as f64 * FRAC_PI_8 / 2.0;
        let v = HalfWavePlate::new(alpha).unitary();
        println!(
            "{alpha:.4}   {:+.6}  {:+.6}",
            witness_growth(&cc, &v, PI)?.value,
            witness_growth(&f, &v, PI)?.value
        );
    }
    Ok(())
}
