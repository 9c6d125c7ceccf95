mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};

use common::*;
use correlation_probe::{
    discord_t, herm_eig, make_cc, make_f, make_qc, partial_trace, trace_distance, witness_growth, witness_td,
    DensityMatrix, HalfWavePlate, Subsystem, UnitaryOp,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-10;

#[test]
fn families_match_direct_construction() {
    for &(l, t) in &[(0.0, 0.0), (0.3, 0.4), (0.5, FRAC_PI_4), (1.0, FRAC_PI_2), (0.7, 1.1)] {
        assert!((to_na(make_qc(l, t).unwrap().matrix()) - qc(l, t)).norm() < 1e-15);
        assert!((to_na(make_cc(l).unwrap().matrix()) - cc(l)).norm() < 1e-15);
        assert!((to_na(make_f(l).unwrap().matrix()) - factorized(l)).norm() < 1e-15);
    }
    // CC is the theta = pi/2 member of the discordant family
    assert!((qc(0.64, FRAC_PI_2) - cc(0.64)).norm() < 1e-15);
}

#[test]
fn golden_values_from_oracle() {
    assert!((discord(&qc(0.5, FRAC_PI_4)) - 2f64.sqrt() / 4.0).abs() < 1e-12);
    assert!((local_witness(&qc(0.5, FRAC_PI_4), PI) - 0.25).abs() < 1e-12);
    let g = growth(&cc(0.64), &hwp(FRAC_PI_8), PI);
    assert!((g - ((0.14f64 * 0.14 + 0.25).sqrt() - 0.14 * 2f64.sqrt())).abs() < 1e-12);
    let g = growth(&factorized(0.65), &hwp(FRAC_PI_8), PI);
    assert!((g - (1.0 - 2f64.sqrt()) * 0.15).abs() < 1e-12);
}

#[test]
fn witnesses_agree_on_family_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let l: f64 = rng.random();
        let t = rng.random_range(0.0..FRAC_PI_2);
        let phi = rng.random_range(0.0..2.0 * PI);
        let alpha = rng.random_range(0.0..PI);
        let r = make_qc(l, t).unwrap();
        let o = qc(l, t);
        assert!((discord_t(&r).unwrap().value - discord(&o)).abs() < TOL, "T at {l} {t}");
        assert!(
            (witness_td(&r, phi).unwrap().value - local_witness(&o, phi)).abs() < TOL,
            "Td at {l} {t} {phi}"
        );
        let v = HalfWavePlate::new(alpha).unitary();
        assert!((witness_growth(&r, &v, phi).unwrap().value - growth(&o, &hwp(alpha), phi)).abs() < TOL);
    }
}

#[test]
fn witnesses_agree_on_random_states() {
    for seed in 0..200 {
        let r = random_state(seed);
        let o = to_na(r.matrix());
        let mut rng = ChaCha8Rng::seed_from_u64(seed + 10_000);
        let phi = rng.random_range(0.0..2.0 * PI);
        let u2 = random_unitary(&mut rng, 2);
        assert!((discord_t(&r).unwrap().value - discord(&o)).abs() < 1e-9, "seed {seed}");
        assert!(
            (witness_td(&r, phi).unwrap().value - local_witness(&o, phi)).abs() < 1e-9,
            "seed {seed}"
        );
        let v = UnitaryOp::new(from_na(&u2)).unwrap();
        assert!(
            (witness_growth(&r, &v, phi).unwrap().value - growth(&o, &u2, phi)).abs() < 1e-9,
            "seed {seed}"
        );
    }
}

#[test]
fn marginals_and_distances_match() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for seed in 0..100 {
        let a = random_state(seed);
        let b = random_state(seed + 1000);
        let (na, nb) = (to_na(a.matrix()), to_na(b.matrix()));
        let s = partial_trace(&a, Subsystem::System).unwrap();
        let e = partial_trace(&a, Subsystem::Environment).unwrap();
        assert!((to_na(s.matrix()) - tr_e(&na)).norm() < 1e-14);
        assert!((to_na(e.matrix()) - tr_s(&na)).norm() < 1e-14);
        assert!((trace_distance(&a, &b).unwrap() - td(&na, &nb)).abs() < 1e-12);

        let h = ginibre(&mut rng, 4);
        let h = (&h + h.adjoint()) * num_complex::Complex64::new(0.5, 0.0);
        let ours = herm_eig(&from_na(&h)).unwrap();
        let mut theirs: Vec<f64> = nalgebra::SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
        theirs.sort_by(|x, y| y.partial_cmp(x).unwrap());
        for (x, y) in ours.eigenvalues.iter().zip(&theirs) {
            assert!((x - y).abs() < 1e-11);
        }
    }
}

#[test]
fn degenerate_marginal_uses_horizontal_basis() {
    let r = DensityMatrix::maximally_mixed(4).flatten_dims();
    let r = DensityMatrix::bipartite(r.into_matrix(), 2, 2).unwrap();
    assert!(discord_t(&r).unwrap().degenerate_basis);
    assert!(discord_t(&r).unwrap().value < 1e-15);
}
