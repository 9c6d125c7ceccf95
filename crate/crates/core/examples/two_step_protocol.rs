//! The full classifier on the three reference states, exactly and through
//! simulated tomography.
use std::f64::consts::FRAC_PI_4;

use correlation_probe::{classify, classify_simulated, FamilyParams, ProtocolConfig};

fn main() -> correlation_probe::Result<()> {
    let states = [
        FamilyParams::qc(0.7, FRAC_PI_4),
        FamilyParams::cc(0.64),
        FamilyParams::f(0.65),
    ];
    for params in states {
        let exact = classify(&params.build()?, &ProtocolConfig::exact())?;
        let sim = classify_simulated(&params, &ProtocolConfig::simulated(100_000, 1))?;
        let growth = |r: &correlation_probe::ClassificationResult| {
            r.growth_report.as_ref().map_or("-".to_string(), |g| {
                format!("{:+.4} ± {:.4}", g.report.value, g.uncertainty)
            })
        };
        println!("{} lambda={}", params.family, params.lambda);
        println!(
            "  exact:     {}  Td={:.4}  growth={}",
            exact.verdict,
            exact.td_report.report.value,
            growth(&exact)
        );
        println!(
            "  simulated: {}  Td={:.4} ± {:.4}  growth={}",
            sim.verdict,
            sim.td_report.report.value,
            sim.td_report.uncertainty,
            growth(&sim)
        );
    }
    Ok(())
}
