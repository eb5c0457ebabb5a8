//! Randomized invariants over the numerical kernels and the config
//! round-trip. Complements the pinned-value unit tests: these catch the
//! failures that only show up away from the hand-picked inputs.

use num_complex::Complex64 as C64;
use proptest::prelude::*;

use qudit_eet::config::{default_config, parse_config_str};
use qudit_eet::dynamics::{build_joint_generator, JointEvolution};
use qudit_eet::entanglement::{entropy_of_entanglement, schmidt_values};
use qudit_eet::excitation::prepare_initial_state;
use qudit_eet::linalg::{eig_hermitian, propagator, singular_values, ComplexMatrix};
use qudit_eet::model::{default_model, default_params, DimensionlessParams};
use qudit_eet::state::StateVector;

fn complex_entries(len: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), len)
}

fn hermitian_from(raw: &[(f64, f64)], n: usize) -> ComplexMatrix {
    let a = ComplexMatrix::from_fn(n, n, |i, j| {
        let (re, im) = raw[i * n + j];
        C64::new(re, im)
    });
    ComplexMatrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5)
}

proptest! {
    #[test]
    fn entropy_bounded_and_schmidt_normalized(raw in complex_entries(16)) {
        let norm2: f64 = raw.iter().map(|(re, im)| re * re + im * im).sum();
        prop_assume!(norm2 > 1e-6);
        let norm = norm2.sqrt();
        let amps: Vec<C64> = raw.iter().map(|&(re, im)| C64::new(re / norm, im / norm)).collect();
        let psi = StateVector::from_amplitudes(amps).unwrap();
        let s = schmidt_values(&psi, (4, 4)).unwrap();
        let total: f64 = s.values().iter().map(|v| v * v).sum();
        prop_assert!((total - 1.0).abs() < 1e-9, "schmidt weights sum to {total}");
        let e = entropy_of_entanglement(&s);
        prop_assert!((-1e-12..=2.0 + 1e-9).contains(&e), "entropy {e} out of bounds");
    }

    #[test]
    fn hermitian_eig_reconstructs(raw in complex_entries(25), n in 2usize..=5) {
        let h = hermitian_from(&raw[..n * n], n);
        let sys = eig_hermitian(&h).unwrap();
        prop_assert!(sys.reconstruct().max_abs_diff(&h) < 1e-10);
        for w in sys.eigenvalues.windows(2) {
            prop_assert!(w[0] <= w[1], "eigenvalues not ascending: {:?}", sys.eigenvalues);
        }
        let q = &sys.eigenvectors;
        let qdq = q.dagger().mul(q).unwrap();
        prop_assert!(qdq.max_abs_diff(&ComplexMatrix::identity(n)) < 1e-10);
    }

    #[test]
    fn propagator_is_unitary_and_composes(raw in complex_entries(16), tau in -3.0..3.0f64) {
        let h = hermitian_from(&raw, 4);
        let u = propagator(&h, tau).unwrap();
        let gram = u.dagger().mul(&u).unwrap();
        prop_assert!(gram.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-10);
        // U(τ)·U(−τ) = I
        let back = propagator(&h, -tau).unwrap();
        prop_assert!(u.mul(&back).unwrap().max_abs_diff(&ComplexMatrix::identity(4)) < 1e-10);
    }

    #[test]
    fn singular_values_match_gram_spectrum(raw in complex_entries(20), rows in 1usize..=4) {
        let cols = 5;
        let a = ComplexMatrix::from_fn(rows, cols, |i, j| {
            let (re, im) = raw[i * cols + j];
            C64::new(re, im)
        });
        let sv = singular_values(&a);
        prop_assert_eq!(sv.len(), rows.min(cols));
        // A†A spectrum (ascending) must carry sv² in its top entries
        let gram = a.dagger().mul(&a).unwrap();
        let mut eig = eig_hermitian(&gram).unwrap().eigenvalues;
        eig.reverse();
        for (v, lambda) in sv.iter().zip(&eig) {
            prop_assert!((v * v - lambda).abs() < 1e-9, "sv^2 {} vs gram {}", v * v, lambda);
        }
    }

    #[test]
    fn evolution_preserves_norm_at_random_phase(gamma in 0.0..3.0f64, gamma2 in 0.0..12.0f64) {
        let m = default_model();
        let p = DimensionlessParams { gamma, ..default_params() };
        let gen = build_joint_generator(&m, &p).unwrap();
        let evolution = JointEvolution::new(&gen, &p).unwrap();
        let psi_a = prepare_initial_state(&m, &p).unwrap();
        let ev = evolution.evolver(&psi_a).unwrap();
        let psi = ev.state_at(gamma2);
        prop_assert!((psi.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn config_round_trips_numeric_fields(
        gamma in 0.0..10.0f64,
        delta in -100.0..100.0f64,
        r in 1.0..1e6f64,
        ratio in -2.0..2.0f64,
    ) {
        let mut cfg = default_config();
        cfg.params.gamma = gamma;
        cfg.params.delta = delta;
        cfg.params.r = r;
        cfg.model.coupling_ratios[4] = ratio;
        let text = cfg.to_toml_string();
        let cfg2 = parse_config_str(&text).unwrap();
        prop_assert_eq!(cfg2.params.gamma.to_bits(), gamma.to_bits());
        prop_assert_eq!(cfg2.params.delta.to_bits(), delta.to_bits());
        prop_assert_eq!(cfg2.params.r.to_bits(), r.to_bits());
        prop_assert_eq!(cfg2.model.coupling_ratios[4].to_bits(), ratio.to_bits());
    }
}
