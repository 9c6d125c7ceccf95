//! Discord quantifier against the local witness, and the zero line where the
//! phase-pi witness goes blind.
use std::f64::consts::{FRAC_PI_4, PI};

use correlation_probe::witness::zero_line_lambda;
use correlation_probe::{discord_t, make_qc, witness_td};

fn main() -> correlation_probe::Result<()> {
    println!("lambda      T        Td(pi)   (theta = pi/4)");
    for k in 0..=10 {
        let lambda = k as f64 / 10.0;
        let rho = make_qc(lambda, FRAC_PI_4)?;
        println!(
            "{lambda:.1}     {:.6}  {:.6}",
            discord_t(&rho)?.value,
            witness_td(&rho, PI)?.value
        );
    }

    println!("\nzero line:");
    for theta in [0.9, 1.1, 1.3, 1.5] {
        let lambda = zero_line_lambda(theta);
        let rho = make_qc(lambda, theta)?;
        println!(
            "theta={theta:.2} lambda={lambda:.4}  T={:.4}  Td={:.1e}",
            discord_t(&rho)?.value,
            witness_td(&rho, PI)?.value
        );
    }
    Ok(())
}
