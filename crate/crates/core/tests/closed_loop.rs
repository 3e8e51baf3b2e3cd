use axon_core::analysis::run_metrics;
use axon_core::model::derive_constants;
use axon_core::plant::{SimState, SolverConfig};
use axon_core::sim::{run_from, run_simulation, ControllerMode, RunConfig};
use axon_core::trigger::TriggerConfig;

fn short(mode: ControllerMode, t_final: f64) -> RunConfig {
    RunConfig {
        mode,
        solver: SolverConfig { t_final, output_stride: 10, ..SolverConfig::default() },
        ..RunConfig::default()
    }
}

#[test]
fn every_mode_approaches_the_target_length() {
    for mode in ControllerMode::ALL {
        let r = run_simulation(&short(mode, 40.0)).unwrap();
        assert!(r.completed(), "{mode:?}: {:?}", r.aborted);
        let p = r.rows.last().unwrap();
        let ls = RunConfig::default().physical.target_length;
        assert!((p.l - ls).abs() / ls < 0.05, "{mode:?}: l = {}", p.l);
        assert!(r.monitors.max_m < 0.0);
    }
}

#[test]
fn event_triggering_saves_updates() {
    let cetc = run_simulation(&short(ControllerMode::Cetc, 5.0)).unwrap();
    let petc = run_simulation(&short(ControllerMode::Petc, 5.0)).unwrap();
    for r in [&cetc, &petc] {
        assert!(r.events.len() > 1);
        assert!((r.events.len() as u64) < r.steps_completed / 10);
        let times: Vec<f64> = r.events.times().collect();
        assert!(times.windows(2).all(|w| w[1] > w[0]));
    }
    assert!(cetc.monitors.max_deviation_margin <= 1e-9);
    assert!(petc.monitors.max_gamma_p_nonfiring <= 0.0);
}

#[test]
fn held_input_only_changes_at_events() {
    let r = run_simulation(&short(ControllerMode::Petc, 2.0)).unwrap();
    for w in r.rows.windows(2) {
        if w[0].u_applied != w[1].u_applied {
            let between = r.events.times().any(|t| t > w[0].t && t <= w[1].t + 1e-12);
            assert!(between, "input changed in ({}, {}] without an event", w[0].t, w[1].t);
        }
    }
}

#[test]
fn forced_petc_at_solver_rate_is_continuous_control() {
    let mut forced = short(ControllerMode::Petc, 1.0);
    forced.trigger = TriggerConfig { h: forced.solver.dt, force_petc_fire: true, ..forced.trigger };
    let cont = short(ControllerMode::Continuous, 1.0);
    let s0 = SimState::initial(&cont.physical, cont.solver.n_nodes());
    let a = run_from(&cont, s0.clone()).unwrap();
    let b = run_from(&forced, s0).unwrap();
    assert_eq!(a.final_state.c_hat, b.final_state.c_hat);
    assert_eq!(a.final_state.l, b.final_state.l);
}

#[test]
fn steady_state_start_stays_put_under_feedback() {
    let cfg = short(ControllerMode::Cetc, 5.0);
    let dc = derive_constants(&cfg.physical).unwrap();
    let s0 = SimState::steady(&cfg.physical, &dc, cfg.solver.n_nodes());
    let r = run_from(&cfg, s0.clone()).unwrap();
    assert!(((r.final_state.l - s0.l) / s0.l).abs() < 1e-9);
    let m = run_metrics(&r, &cfg.physical);
    assert!(m.final_c_error < 1e-6, "{}", m.final_c_error);
}
