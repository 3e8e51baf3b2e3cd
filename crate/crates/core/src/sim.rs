//! Closed-loop runs: error coordinates, feedback, trigger, hold, plant step.

use alloc::vec;
use alloc::vec::Vec;

use crate::analysis::{self, LyapunovSetup};
use crate::error::{Error, Result};
use crate::kernels::{self, ControllerGains, GainArtifacts, KernelConvention, KernelGrid};
use crate::model::{self, DerivedConstants, PhysicalParams};
use crate::plant::{SimState, SolverConfig, Stepper};
use crate::quadrature::l2_norm_squared;
use crate::trigger::{self, EventLog, MDynamicsSource, MObservables, TriggerConfig, TriggerParams, TriggerState};

pub use crate::trigger::ControllerMode;

/// Everything a single run needs.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RunConfig {
    pub physical: PhysicalParams,
    pub gains: ControllerGains,
    pub convention: KernelConvention,
    pub trigger: TriggerConfig,
    pub solver: SolverConfig,
    pub mode: ControllerMode,
    /// Record the Lyapunov functional in each row.
    pub lyapunov: bool,
}

/// Parameter-derived objects shared by every step.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub derived: DerivedConstants,
    pub artifacts: GainArtifacts,
    pub trigger: TriggerParams,
}

impl RunConfig {
    /// Validates every section and builds the derived objects.
    pub fn prepare(&self) -> Result<Prepared> {
        let derived = model::derive_constants(&self.physical)?;
        self.solver.validate(&self.physical)?;
        let artifacts = GainArtifacts::new(&derived, &self.physical, self.gains, self.convention);
        let trigger = TriggerParams::new(self.trigger, &artifacts)?;
        Ok(Prepared { derived, artifacts, trigger })
    }
}

/// One recorded sample of the run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub t: f64,
    pub l: f64,
    pub c_c: f64,
    pub u_continuous: f64,
    pub u_applied: f64,
    pub d: f64,
    pub m: f64,
    pub gamma_p: Option<f64>,
    pub event: bool,
    /// `‖c − c_eq‖ / ‖c_eq‖` over the current domain.
    pub err_l2: f64,
    pub v: Option<f64>,
}

/// Per-step invariant monitors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monitors {
    /// max over steps of `d² + γm` after the trigger decision.
    pub max_deviation_margin: f64,
    /// max Γᵖ over PETC checks that did not fire; −∞ when there were none.
    pub max_gamma_p_nonfiring: f64,
    pub petc_checks: u64,
    pub max_m: f64,
    pub max_abs_l_dot: f64,
    /// `D/(16(D + 1))`.
    pub v_bar: f64,
}

impl Monitors {
    fn new(p: &PhysicalParams, m0: f64) -> Self {
        Self {
            max_deviation_margin: f64::NEG_INFINITY,
            max_gamma_p_nonfiring: f64::NEG_INFINITY,
            petc_checks: 0,
            max_m: m0,
            max_abs_l_dot: 0.0,
            v_bar: p.diffusivity / (16.0 * (p.diffusivity + 1.0)),
        }
    }

    /// True when |l̇| exceeded the speed bound assumed by the local result.
    pub fn speed_bound_exceeded(&self) -> bool {
        self.max_abs_l_dot > self.v_bar
    }
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub mode: ControllerMode,
    pub rows: Vec<Row>,
    pub events: EventLog,
    pub final_state: SimState,
    pub monitors: Monitors,
    /// Set when the run stopped early; rows up to the failure are kept.
    pub aborted: Option<Error>,
    pub steps_completed: u64,
    pub dt: f64,
    pub derived: DerivedConstants,
}

impl RunResult {
    pub fn completed(&self) -> bool {
        self.aborted.is_none()
    }
}

pub fn run_simulation(cfg: &RunConfig) -> Result<RunResult> {
    let initial = SimState::initial(&cfg.physical, cfg.solver.n_nodes());
    run_from(cfg, initial)
}

/// Runs from an arbitrary initial state. Configuration errors are returned as
/// `Err`; failures during the run are reported through [`RunResult::aborted`].
pub fn run_from(cfg: &RunConfig, initial: SimState) -> Result<RunResult> {
    let prep = cfg.prepare()?;
    let p = &cfg.physical;
    let dc = &prep.derived;
    let tp = &prep.trigger;
    let solver = &cfg.solver;
    let n = solver.n_nodes();
    if initial.c_hat.len() != n {
        return Err(Error::GridMismatch { expected: n, got: initial.c_hat.len() });
    }
    let dt = solver.dt;
    let n_steps = solver.n_steps();
    let lyapunov = if cfg.lyapunov { Some(LyapunovSetup::new(dc, &cfg.gains)?) } else { None };
    let needs_w = cfg.lyapunov || cfg.trigger.m_dynamics == MDynamicsSource::W;

    let mut state = initial;
    let mut trig = TriggerState::new(cfg.mode, tp, dt)?;
    let mut stepper = Stepper::new(n);
    let mut grid = KernelGrid::default();
    let mut u = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut c_eq = vec![0.0; n];
    let mut rows = Vec::with_capacity((n_steps / solver.output_stride as u64 + 2) as usize);
    let mut monitors = Monitors::new(p, trig.m);
    let mut aborted = None;
    let mut steps_completed = 0;

    for k in 0..=n_steps {
        let t = k as f64 * dt;
        state.t = t;
        let x = model::to_error_coords_into(&state.c_hat, state.c_c, state.l, dc, p, &mut u);
        if let Err(e) = grid.update(&prep.artifacts, state.l, n) {
            aborted = Some(e);
            break;
        }
        let dx = grid.dx;
        let u_fresh = match kernels::control_law_on_grid(&u, x, &grid, p.diffusivity) {
            Ok(v) if v.is_finite() => v,
            Ok(_) => {
                aborted = Some(Error::NonFiniteControl { t });
                break;
            }
            Err(e) => {
                aborted = Some(e);
                break;
            }
        };
        if needs_w {
            analysis::transform_on_grid(&u, x, &grid, &prep.artifacts, &mut w);
        }
        let obs = match cfg.trigger.m_dynamics {
            MDynamicsSource::U => MObservables { x, boundary: u[0], l2_squared: l2_norm_squared(&u, dx) },
            MDynamicsSource::W => MObservables { x, boundary: w[0], l2_squared: l2_norm_squared(&w, dx) },
        };
        let m_now = trig.m;
        let record = k % solver.output_stride as u64 == 0 || k == n_steps;
        let err_l2 = if record {
            for (ce, xj) in c_eq.iter_mut().zip(model::grid_positions(state.l, n)) {
                *ce = model::steady_state_profile(xj, dc, p);
            }
            libm::sqrt(l2_norm_squared(&u, dx) / l2_norm_squared(&c_eq, dx))
        } else {
            0.0
        };
        let v = lyapunov.as_ref().map(|s| analysis::evaluate_v(&w, dx, x, m_now, s));

        if k == n_steps {
            let held = trig.u_held.unwrap_or(u_fresh);
            rows.push(Row {
                t,
                l: state.l,
                c_c: state.c_c,
                u_continuous: u_fresh,
                u_applied: held,
                d: u_fresh - held,
                m: m_now,
                gamma_p: (cfg.mode == ControllerMode::Petc).then(|| trigger::petc_gamma(u_fresh - held, m_now, tp)),
                event: false,
                err_l2,
                v,
            });
            break;
        }

        let outcome = match trigger::advance_trigger(&mut trig, u_fresh, k, t, dt, &obs, tp) {
            Ok(o) => o,
            Err(e) => {
                aborted = Some(e);
                break;
            }
        };
        let margin = trig.d * trig.d + cfg.trigger.gamma * m_now;
        monitors.max_deviation_margin = monitors.max_deviation_margin.max(margin);
        if outcome.checked {
            monitors.petc_checks += 1;
            if !outcome.fired {
                if let Some(g) = outcome.gamma_p {
                    monitors.max_gamma_p_nonfiring = monitors.max_gamma_p_nonfiring.max(g);
                }
            }
        }
        monitors.max_m = monitors.max_m.max(trig.m);
        monitors.max_abs_l_dot = monitors.max_abs_l_dot.max(libm::fabs(model::length_rate(state.c_c, p)));

        let u_applied = trig.u_held.unwrap_or(u_fresh);
        if record {
            rows.push(Row {
                t,
                l: state.l,
                c_c: state.c_c,
                u_continuous: u_fresh,
                u_applied,
                d: trig.d,
                m: m_now,
                gamma_p: outcome.gamma_p,
                event: outcome.fired && cfg.mode != ControllerMode::Continuous,
                err_l2,
                v,
            });
        }
        let q_s = dc.q_s_star - u_applied;
        if let Err(e) = stepper.step(&mut state, q_s, solver, p, dc) {
            aborted = Some(e);
            break;
        }
        steps_completed = k + 1;
    }

    Ok(RunResult {
        mode: cfg.mode,
        rows,
        events: trig.log,
        final_state: state,
        monitors,
        aborted,
        steps_completed,
        dt,
        derived: *dc,
    })
}
