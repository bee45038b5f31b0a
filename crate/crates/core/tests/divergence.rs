mod common;

use common::{random_probs, rng};
use geothermo_core::divergence::{
    petz_renyi, relative_entropy, renyi_divergence, s_half, sandwiched_renyi, von_neumann_entropy,
};
use geothermo_core::models::harmonic_spectrum;
use geothermo_core::spectral::maximally_mixed;
use geothermo_core::thermo::s_half_vs_mixed;
use geothermo_core::{DensityOperator, Spectrum, ThermalEnsemble};
use proptest::prelude::*;

fn state(p: &[f64]) -> DensityOperator {
    DensityOperator::from_probabilities(p).unwrap()
}

#[test]
fn s_half_equals_renyi_half_on_commuting_pairs() {
    let mut rng = rng(1);
    for k in 0..1000 {
        let n = 2 + k % 20;
        let p = random_probs(&mut rng, n);
        let q = random_probs(&mut rng, n);
        let (rho, sigma) = (state(&p), state(&q));
        let a = s_half(&rho, &sigma).unwrap();
        let b = renyi_divergence(&rho, &sigma, 0.5).unwrap().value;
        let c = sandwiched_renyi(&rho, &sigma, 0.5).unwrap();
        assert!((a - b).abs() < 1e-10);
        assert!((b - c).abs() < 1e-12);
    }
}

#[test]
fn thermal_oscillator_s_half_matches_partition_functions() {
    let ens = ThermalEnsemble::new(harmonic_spectrum(1.0, 100).unwrap(), 0.7).unwrap();
    let direct = s_half(&ens.density(), &maximally_mixed(100).unwrap()).unwrap();
    let expected = (100f64).ln() + ens.ln_z() - 2.0 * ens.ln_z_prime();
    assert!((direct - expected).abs() < 1e-10);
    assert!((direct - s_half_vs_mixed(&ens)).abs() < 1e-10);
    assert!(direct <= (100f64).ln());
}

#[test]
fn thermal_relative_entropy_identity() {
    let e: Vec<f64> = (0..16).map(|k| (k as f64).powf(1.3) * 0.4).collect();
    for t in [0.05, 0.5, 3.0, 40.0] {
        let ens = ThermalEnsemble::new(Spectrum::nondegenerate(&e).unwrap(), t).unwrap();
        let direct = relative_entropy(&ens.density(), &maximally_mixed(16).unwrap()).unwrap();
        let closed = (16f64).ln() - ens.ln_z() - ens.internal_energy() / t;
        assert!((direct - closed).abs() < 1e-10, "T={t}");
        // same with the dense route
        let dense = DensityOperator::dense(ens.density().to_dense().unwrap());
        let via_dense = relative_entropy(&dense, &maximally_mixed(16).unwrap()).unwrap();
        assert!((via_dense - closed).abs() < 1e-10, "T={t}");
    }
}

#[test]
fn renyi_monotone_in_alpha() {
    let mut rng = rng(77);
    let grid: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
    for _ in 0..200 {
        let p = random_probs(&mut rng, 6);
        let rho = state(&p);
        let mixed = maximally_mixed(6).unwrap();
        let values: Vec<f64> = grid
            .iter()
            .map(|&a| petz_renyi(&rho, &mixed, a).unwrap())
            .collect();
        for w in values.windows(2) {
            assert!(w[1] >= w[0] - 1e-12, "{values:?}");
        }
    }
}

#[test]
fn s_half_of_thermal_states_never_exceeds_ln_n() {
    let mut rng = rng(4);
    for _ in 0..300 {
        let spectrum = common::random_spectrum(&mut rng, 40);
        let t = common::random_temperature(&mut rng, 0.01, 100.0);
        let ens = ThermalEnsemble::new(spectrum, t).unwrap();
        let n = ens.dim();
        let v = s_half(&ens.density(), &maximally_mixed(n).unwrap()).unwrap();
        assert!(v <= (n as f64).ln() + 1e-10);
    }
}

proptest! {
    #[test]
    fn relative_entropy_non_negative(
        raw_p in prop::collection::vec(0.001f64..1.0, 5),
        raw_q in prop::collection::vec(0.001f64..1.0, 5),
    ) {
        let norm = |v: &[f64]| { let t: f64 = v.iter().sum(); v.iter().map(|x| x / t).collect::<Vec<_>>() };
        let p = norm(&raw_p);
        let q = norm(&raw_q);
        let d = relative_entropy(&state(&p), &state(&q)).unwrap();
        prop_assert!(d >= -1e-12);
        let same = p.iter().zip(&q).all(|(a, b)| (a - b).abs() < 1e-8);
        if !same {
            prop_assert!(d > 0.0);
        }
        prop_assert!(relative_entropy(&state(&p), &state(&p)).unwrap().abs() < 1e-12);
    }

    #[test]
    fn von_neumann_within_bounds(raw in prop::collection::vec(0.0f64..1.0, 1..30)) {
        let t: f64 = raw.iter().sum();
        prop_assume!(t > 1e-6);
        let p: Vec<f64> = raw.iter().map(|x| x / t).collect();
        let s = von_neumann_entropy(&state(&p)).unwrap();
        prop_assert!(s >= -1e-12 && s <= (p.len() as f64).ln() + 1e-12);
    }
}
