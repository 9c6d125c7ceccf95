//! The three prepared families and their marginals.
use std::f64::consts::FRAC_PI_4;

use correlation_probe::{partial_trace, FamilyParams, Subsystem};

fn main() -> correlation_probe::Result<()> {
    for params in [
        FamilyParams::qc(0.7, FRAC_PI_4),
        FamilyParams::cc(0.64),
        FamilyParams::f(0.65),
    ] {
        let rho = params.build()?;
        println!(
            "{} lambda={} theta={}",
            params.family,
            params.lambda,
            params.theta_or_zero()
        );
        println!("  rho_SE = {:?}", rho.matrix());
        println!("  rho_S  = {:?}", partial_trace(&rho, Subsystem::System)?.matrix());
        println!("  rho_E  = {:?}", partial_trace(&rho, Subsystem::Environment)?.matrix());
    }
    // as JSON, the form the CLI config accepts
    println!("{}", serde_json::to_string(&FamilyParams::qc(0.5, FRAC_PI_4))?);
    Ok(())
}
