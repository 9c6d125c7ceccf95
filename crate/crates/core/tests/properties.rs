mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use common::*;
use correlation_probe::linalg::trace_norm;
use correlation_probe::tomography::project_to_physical;
use correlation_probe::{
    dephase, discord_t, herm_eig, kron, make_f, make_qc, partial_trace, system_eigenprojector, trace_distance,
    witness_growth, witness_td, ComplexMatrix, DensityMatrix, HalfWavePlate, Subsystem, UnitaryOp,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn state() -> impl Strategy<Value = DensityMatrix> {
    any::<u64>().prop_map(random_state)
}

fn unitary(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    any::<u64>().prop_map(move |s| from_na(&random_unitary(&mut ChaCha8Rng::seed_from_u64(s), n)))
}

fn qubit(seed: u64) -> DensityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DensityMatrix::new(from_na(&random_density(&mut rng, 2, 2))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn trace_distance_is_a_metric(a in state(), b in state(), c in state()) {
        let ab = trace_distance(&a, &b).unwrap();
        let ba = trace_distance(&b, &a).unwrap();
        prop_assert!((ab - ba).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert!(trace_distance(&a, &a).unwrap() < 1e-12);
        let ac = trace_distance(&a, &c).unwrap();
        let cb = trace_distance(&c, &b).unwrap();
        prop_assert!(ab <= ac + cb + 1e-12);
    }

    #[test]
    fn trace_distance_is_unitarily_invariant(a in state(), b in state(), u in unitary(4)) {
        let before = trace_distance(&a, &b).unwrap();
        let after = trace_distance(&a.evolve(&u).unwrap(), &b.evolve(&u).unwrap()).unwrap();
        prop_assert!((before - after).abs() < 1e-10);
    }

    #[test]
    fn partial_trace_contracts(a in state(), b in state()) {
        let full = trace_distance(&a, &b).unwrap();
        for keep in [Subsystem::System, Subsystem::Environment] {
            let local = trace_distance(&partial_trace(&a, keep).unwrap(), &partial_trace(&b, keep).unwrap()).unwrap();
            prop_assert!(local <= full + 1e-12);
        }
    }

    #[test]
    fn product_round_trips_through_partial_trace(s in any::<u64>(), e in any::<u64>()) {
        let (rs, re) = (qubit(s), qubit(e ^ 0x5555));
        let joint = DensityMatrix::bipartite(kron(rs.matrix(), re.matrix()), 2, 2).unwrap();
        prop_assert!(partial_trace(&joint, Subsystem::System).unwrap().approx_eq(&rs, 1e-12));
        prop_assert!(partial_trace(&joint, Subsystem::Environment).unwrap().approx_eq(&re, 1e-12));
    }

    #[test]
    fn eigendecomposition_reconstructs(seed in any::<u64>(), n in 2usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = ginibre(&mut rng, n);
        let h = from_na(&((&g + g.adjoint()) * Complex64::new(0.5, 0.0)));
        let eig = herm_eig(&h).unwrap();
        prop_assert!(eig.reconstruct().approx_eq(&h, 1e-10 * h.frobenius_norm().max(1.0)));
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(eig.eigenvectors.unitarity_error() < 1e-10);
    }

    #[test]
    fn dephasing_keeps_marginals_and_is_idempotent(r in state()) {
        let proj = system_eigenprojector(&r).unwrap();
        let d = dephase(&r, &proj).unwrap();
        for keep in [Subsystem::System, Subsystem::Environment] {
            prop_assert!(partial_trace(&d, keep).unwrap().approx_eq(&partial_trace(&r, keep).unwrap(), 1e-12));
        }
        prop_assert!(dephase(&d, &proj).unwrap().approx_eq(&d, 1e-12));
        prop_assert!(discord_t(&d).unwrap().value < 1e-9);
    }

    #[test]
    fn local_witness_bounded_by_discord(l in 0.0..=1.0f64, t in 0.0..=FRAC_PI_2, phi in 0.0..2.0 * PI) {
        let r = make_qc(l, t).unwrap();
        prop_assert!(witness_td(&r, phi).unwrap().value <= discord_t(&r).unwrap().value + 1e-9);
    }

    #[test]
    fn local_witness_bounded_by_discord_generic(r in state(), phi in 0.0..2.0 * PI) {
        prop_assert!(witness_td(&r, phi).unwrap().value <= discord_t(&r).unwrap().value + 1e-9);
        prop_assert!(witness_td(&r, 0.0).unwrap().value < 1e-12);
    }

    #[test]
    fn products_never_grow(l in 0.0..=1.0f64, alpha in 0.0..PI, phi in 0.0..2.0 * PI, s in any::<u64>()) {
        let v = HalfWavePlate::new(alpha).unitary();
        prop_assert!(witness_growth(&make_f(l).unwrap(), &v, phi).unwrap().value <= 1e-9);
        // any product state, any local unitary
        let rs = qubit(s);
        let re = qubit(s.wrapping_add(1));
        let joint = DensityMatrix::bipartite(kron(rs.matrix(), re.matrix()), 2, 2).unwrap();
        let u = UnitaryOp::new(from_na(&random_unitary(&mut ChaCha8Rng::seed_from_u64(s), 2))).unwrap();
        prop_assert!(witness_growth(&joint, &u, phi).unwrap().value <= 1e-9);
    }

    #[test]
    fn physical_projection_is_idempotent(r in state(), seed in any::<u64>(), scale in 0.0..0.3f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = ginibre(&mut rng, 4);
        let noise = from_na(&((&g + g.adjoint()) * Complex64::new(0.5 * scale, 0.0)));
        let noisy = r.matrix().add(&noise).unwrap();
        let tr = noisy.trace().re;
        prop_assume!(tr.abs() > 0.1);
        let p = project_to_physical(&noisy.scale_real(1.0 / tr)).unwrap();
        let eig = herm_eig(p.matrix()).unwrap();
        prop_assert!(eig.eigenvalues.iter().all(|&x| x >= -1e-12));
        prop_assert!((p.matrix().trace().re - 1.0).abs() < 1e-12);
        let again = project_to_physical(p.matrix()).unwrap();
        prop_assert!(again.approx_eq(&p, 1e-12));
        // valid states are fixed points
        prop_assert!(project_to_physical(r.matrix()).unwrap().approx_eq(&r, 1e-12));
    }

    #[test]
    fn trace_norm_of_difference_matches_oracle(a in state(), b in state()) {
        let diff = a.matrix().sub(b.matrix()).unwrap();
        prop_assert!((trace_norm(&diff).unwrap() - common::trace_norm(&to_na(&diff))).abs() < 1e-11);
    }
}
