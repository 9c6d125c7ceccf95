//! Simulated tomography of a two-qubit state: counts, linear inversion,
//! physical projection and bootstrap error bars.
use std::f64::consts::FRAC_PI_4;

use correlation_probe::tomography::{default_settings, reconstruct, simulate_counts};
use correlation_probe::{make_qc, trace_distance};

fn main() -> correlation_probe::Result<()> {
    let truth = make_qc(0.7, FRAC_PI_4)?;
    let settings = default_settings(2)?;
    for shots in [1_000, 10_000, 100_000] {
        let record = simulate_counts(&truth, &settings, shots, 17)?;
        let rec = reconstruct(&record)?;
        println!(
            "shots={shots:>6}  error={:.4}  mean bootstrap sd={:.4}",
            trace_distance(&rec.estimate, &truth)?,
            rec.mean_std_error()
        );
    }
    let record = simulate_counts(&truth, &settings, 1_000, 17)?;
    println!("{}", serde_json::to_string(&record)?);
    Ok(())
}
