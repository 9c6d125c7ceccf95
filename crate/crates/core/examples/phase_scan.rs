//! Local discord witness as a function of the interaction phase.
use std::f64::consts::{FRAC_PI_4, PI};

use correlation_probe::sweep::{phase_scan, write_phase_scan_csv};
use correlation_probe::FamilyParams;

fn main() -> correlation_probe::Result<()> {
    let phis: Vec<f64> = (0..=16).map(|k| k as f64 * PI / 8.0).collect();
    let mut out = std::io::stdout().lock();
    for params in [FamilyParams::qc(0.5, FRAC_PI_4), FamilyParams::qc(0.48, FRAC_PI_4)] {
        write_phase_scan_csv(&mut out, &params, &phase_scan(&params, &phis)?)?;
    }
    Ok(())
}
