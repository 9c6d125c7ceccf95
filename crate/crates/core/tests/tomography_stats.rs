mod common;

use std::f64::consts::FRAC_PI_4;

use correlation_probe::tomography::{
    default_settings, estimate, reconstruct, reconstruct_exact, reconstruct_with, simulate_counts, BootstrapOptions,
    MeasurementSetting, TomographyRecord,
};
use correlation_probe::{make_cc, make_f, make_qc, trace_distance, DensityMatrix};

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs[xs.len() / 2]
}

#[test]
fn counts_follow_binomial_statistics() {
    let hv = MeasurementSetting::from_label("HV").unwrap();
    let rho = DensityMatrix::maximally_mixed(2);
    let n = 10_000u64;
    let samples: Vec<f64> = (0..4000)
        .map(|s| simulate_counts(&rho, std::slice::from_ref(&hv), n, s).unwrap().counts[0][0] as f64)
        .collect();
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (samples.len() - 1) as f64;
    let (want_mean, want_std) = (n as f64 / 2.0, (n as f64 / 4.0).sqrt());
    // standard error of the mean is 50/sqrt(4000) ~ 0.8; of the std ~ 0.56
    assert!((mean - want_mean).abs() < 4.0, "mean {mean}");
    assert!((var.sqrt() - want_std).abs() < 3.0, "std {}", var.sqrt());
}

#[test]
fn four_outcome_counts_match_probabilities() {
    let settings = default_settings(2).unwrap();
    let rho = make_qc(0.7, FRAC_PI_4).unwrap();
    let n = 200_000u64;
    let rec = simulate_counts(&rho, &settings, n, 3).unwrap();
    let probs = correlation_probe::tomography::exact_probabilities(&rho, &settings).unwrap();
    for (counts, p) in rec.counts.iter().zip(&probs) {
        assert_eq!(counts.iter().sum::<u64>(), n);
        for (&c, &p) in counts.iter().zip(p) {
            let sd = (n as f64 * p * (1.0 - p)).sqrt().max(1.0);
            assert!((c as f64 - n as f64 * p).abs() < 5.0 * sd);
        }
    }
}

#[test]
fn noiseless_inversion_is_exact() {
    for seed in 0..20 {
        let rho = common::random_state(seed);
        let back = reconstruct_exact(&rho, &default_settings(2).unwrap()).unwrap();
        assert!(back.approx_eq(&rho, 1e-10));
    }
}

#[test]
fn reconstruction_accuracy_at_1e5_shots() {
    let settings = default_settings(2).unwrap();
    let truth = make_cc(0.64).unwrap();
    let good = (0..100)
        .filter(|&s| {
            let est = estimate(&simulate_counts(&truth, &settings, 100_000, s).unwrap()).unwrap();
            trace_distance(&est, &truth).unwrap() < 0.02
        })
        .count();
    assert!(good >= 95, "{good}/100");
}

#[test]
fn estimator_is_consistent() {
    let settings = default_settings(2).unwrap();
    for truth in [
        make_qc(0.7, FRAC_PI_4).unwrap(),
        make_cc(0.64).unwrap(),
        make_f(0.65).unwrap(),
    ] {
        let errs = |shots: u64| -> Vec<f64> {
            (0..25)
                .map(|s| {
                    let est = estimate(&simulate_counts(&truth, &settings, shots, 1000 + s).unwrap()).unwrap();
                    trace_distance(&est, &truth).unwrap()
                })
                .collect()
        };
        let coarse = median(errs(10_000));
        let fine = median(errs(1_000_000));
        assert!(fine < 0.005, "median error {fine} at 1e6 shots");
        assert!(fine < coarse);
    }
}

#[test]
fn bootstrap_is_deterministic_and_scales() {
    let settings = default_settings(1).unwrap();
    let rho =
        DensityMatrix::new(correlation_probe::ComplexMatrix::from_real_rows(&[&[0.6, 0.2], &[0.2, 0.4]]).unwrap())
            .unwrap();
    let rec = simulate_counts(&rho, &settings, 10_000, 9).unwrap();
    let a = reconstruct(&rec).unwrap();
    let b = reconstruct(&rec).unwrap();
    assert_eq!(a.std_errors, b.std_errors);
    assert_eq!(a.bootstrap_samples, 200);
    let other = reconstruct_with(&rec, BootstrapOptions { samples: 200, seed: 1 }).unwrap();
    assert_ne!(a.std_errors, other.std_errors);

    let rec4 = simulate_counts(&rho, &settings, 40_000, 9).unwrap();
    let ratio = a.mean_std_error() / reconstruct(&rec4).unwrap().mean_std_error();
    assert!((1.7..2.3).contains(&ratio), "ratio {ratio}");
}

#[test]
fn record_json_round_trips_bit_exactly() {
    let rec = simulate_counts(&make_cc(0.64).unwrap(), &default_settings(2).unwrap(), 12_345, u64::MAX).unwrap();
    let json = serde_json::to_string(&rec).unwrap();
    let back: TomographyRecord = serde_json::from_str(&json).unwrap();
    assert_eq!(serde_json::to_string(&back).unwrap(), json);
    assert_eq!(back.counts, rec.counts);
    assert_eq!(back.seed, u64::MAX);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["settings"][0], "HV-HV");
    assert_eq!(v["shots"], 12_345);
}
