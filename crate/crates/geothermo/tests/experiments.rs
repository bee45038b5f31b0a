use geothermo::config::{CouplingScaling, Range};
use geothermo::experiments::{run_fig1, run_fig2};
use geothermo::{Experiment, ExperimentConfig};
use geothermo_core::engine::otto_cycle_from_spectra;

fn fig2_at(g: f64, scaling: CouplingScaling) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::for_experiment(Experiment::Fig2);
    cfg.engine.coupling = Range::new(g, g, 1);
    cfg.engine.coupling_scaling = scaling;
    cfg
}

#[test]
fn decoupled_point_is_sum_of_spin_and_oscillator_engines() {
    let cfg = fig2_at(0.0, CouplingScaling::Scaled);
    let data = run_fig2(&cfg).unwrap();
    let e = &cfg.engine;
    let half_gap = (0.25 + e.epsilon_ratio * e.epsilon_ratio).sqrt() * e.omega;
    let osc: Vec<f64> = (0..e.n_boson).map(|n| n as f64 * e.omega).collect();
    let scale = |v: &[f64]| v.iter().map(|x| x * e.omega_ratio).collect::<Vec<_>>();
    for rec in &data.records {
        let spin = otto_cycle_from_spectra(
            &[-half_gap, half_gap],
            &scale(&[-half_gap, half_gap]),
            e.t_cold,
            rec.t2,
        )
        .unwrap();
        let boson = otto_cycle_from_spectra(&osc, &scale(&osc), e.t_cold, rec.t2).unwrap();
        assert!(
            (rec.w_net - (spin.w_net + boson.w_net)).abs() < 1e-12,
            "T2 {}",
            rec.t2
        );
    }
}

#[test]
fn coupling_scaling_modes_agree_without_coupling() {
    let a = run_fig2(&fig2_at(0.0, CouplingScaling::Scaled)).unwrap();
    let b = run_fig2(&fig2_at(0.0, CouplingScaling::Fixed)).unwrap();
    for (x, y) in a.records.iter().zip(&b.records) {
        assert!((x.w_net - y.w_net).abs() < 1e-13);
    }
    let c = run_fig2(&fig2_at(1.2, CouplingScaling::Fixed)).unwrap();
    assert_eq!(c.metadata.coupling_scaling, CouplingScaling::Fixed);
}

#[test]
fn engine_records_are_consistent() {
    let mut cfg = ExperimentConfig::for_experiment(Experiment::Fig2);
    cfg.engine.coupling = Range::new(0.0, 1.5, 16);
    let data = run_fig2(&cfg).unwrap();
    for r in &data.records {
        assert!(r.kappa <= r.zeta);
        assert!(r.w_net > 0.0);
        assert!(r.efficiency <= r.eta_c + 1e-12);
        assert!((r.zeta - r.eta_c / (1.0 - r.eta_c)).abs() < 1e-12);
    }
}

#[test]
fn free_energy_relation_holds_on_both_models() {
    for exp in [Experiment::Fig1a, Experiment::Fig1b] {
        let data = run_fig1(&ExperimentConfig::for_experiment(exp)).unwrap();
        for r in &data.rows {
            assert!(
                (r.exact - r.geometric).abs() <= 1e-9,
                "{exp} T_f {}",
                r.t_f_over_omega
            );
        }
        // −ΔΩ grows with T_f for T_f ≥ T_i
        assert!(data.rows.windows(2).all(|w| w[1].exact >= w[0].exact));
    }
}

#[test]
fn shipped_config_lists_the_defaults() {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/defaults.toml");
    let cfg = ExperimentConfig::from_file(&path).unwrap();
    assert_eq!(cfg, ExperimentConfig::default());
}
