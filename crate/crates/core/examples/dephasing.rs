//! Dephasing in the eigenbasis of the system marginal keeps both marginals
//! and removes discord.
use std::f64::consts::PI;

use correlation_probe::{dephase, discord_t, make_qc, partial_trace, system_eigenprojector, trace_distance, Subsystem};

fn main() -> correlation_probe::Result<()> {
    let rho = make_qc(0.6, PI / 5.0)?;
    let proj = system_eigenprojector(&rho)?;
    let d = dephase(&rho, &proj)?;
    println!("projector {:?}", proj.matrix());
    for keep in [Subsystem::System, Subsystem::Environment] {
        let drift = trace_distance(&partial_trace(&d, keep)?, &partial_trace(&rho, keep)?)?;
        println!("{keep:?} marginal moved by {drift:.1e}");
    }
    println!("T(rho)        = {:.6}", discord_t(&rho)?.value);
    println!("T(Phi_d(rho)) = {:.1e}", discord_t(&d)?.value);
    Ok(())
}
