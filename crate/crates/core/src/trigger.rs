//! Sample-and-hold actuation: deviation `d`, dynamic variable `m`, CETC and PETC
//! triggers, dwell times and the event log.
//!
//! Sign convention: `m` starts negative and stays negative, CETC fires on
//! `d² > −γm` and PETC fires when `Γᵖ > 0` at a check instant `t = nh`.

use alloc::vec::Vec;

use libm::{exp, log};

use crate::error::{Error, Result};
use crate::kernels::GainArtifacts;
use crate::linalg::Vec2;
use crate::quadrature;

/// Which states feed the β₄, β₅ terms of the `m` dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MDynamicsSource {
    /// Plant error `u(0)`, `‖u‖`.
    #[default]
    U,
    /// Target-system state `w(0)`, `‖w‖` through the forward transformation.
    W,
}

/// How the boundary input is refreshed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ControllerMode {
    Continuous,
    Cetc,
    #[default]
    Petc,
}

impl ControllerMode {
    pub const ALL: [ControllerMode; 3] = [ControllerMode::Continuous, ControllerMode::Cetc, ControllerMode::Petc];

    pub fn name(self) -> &'static str {
        match self {
            ControllerMode::Continuous => "continuous",
            ControllerMode::Cetc => "cetc",
            ControllerMode::Petc => "petc",
        }
    }
}

/// Trigger design scalars as configured.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriggerConfig {
    pub gamma: f64,
    pub eta: f64,
    pub sigma: f64,
    pub rho: f64,
    pub betas: [f64; 5],
    pub m0: f64,
    /// PETC sampling period (s).
    pub h: f64,
    pub m_dynamics: MDynamicsSource,
    /// Treat every PETC check as firing. Used to recover continuous control.
    pub force_petc_fire: bool,
}

impl Default for TriggerConfig {
    fn default() -> Self {
        Self {
            gamma: 1.0,
            eta: 2.0,
            sigma: 0.8,
            rho: 1.5e-15,
            betas: [2.5e8, 8e9, 1e11, 4e11, 4.5e11],
            m0: -0.5,
            h: 5e-4,
            m_dynamics: MDynamicsSource::U,
            force_petc_fire: false,
        }
    }
}

impl TriggerConfig {
    /// Checks the design invariants. The `h ≤ τ` rule is checked separately
    /// since it needs the kernels.
    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0 && self.sigma < 1.0) {
            return Err(Error::invalid("trigger.sigma ∈ (0,1)"));
        }
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return Err(Error::invalid("trigger.gamma > 0"));
        }
        if !(self.eta > 0.0 && self.eta.is_finite()) {
            return Err(Error::invalid("trigger.eta > 0"));
        }
        if !(self.rho > 0.0 && self.rho.is_finite()) {
            return Err(Error::invalid("trigger.rho > 0"));
        }
        if !self.betas.iter().all(|b| *b >= 0.0 && b.is_finite()) {
            return Err(Error::invalid("trigger.beta_i ≥ 0"));
        }
        if !(self.m0 < 0.0 && self.m0.is_finite()) {
            return Err(Error::invalid("trigger.m0 < 0"));
        }
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(Error::invalid("trigger.h > 0"));
        }
        Ok(())
    }
}

/// Configured scalars plus the kernel-derived ρ₁ and q = 1 + η + ρ₁.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriggerParams {
    pub config: TriggerConfig,
    pub rho1: f64,
    pub q: f64,
}

impl TriggerParams {
    pub fn new(config: TriggerConfig, artifacts: &GainArtifacts) -> Result<Self> {
        Self::with_rho1(config, compute_rho1(artifacts)?)
    }

    pub fn with_rho1(config: TriggerConfig, rho1: f64) -> Result<Self> {
        config.validate()?;
        Ok(Self { config, rho1, q: 1.0 + config.eta + rho1 })
    }
}

/// ρ₁ = 7 (p(0)·B)².
pub fn compute_rho1(artifacts: &GainArtifacts) -> Result<f64> {
    let p0 = artifacts.eval_p(0.0)?;
    let b = artifacts.b();
    let pb = p0[0] * b[0] + p0[1] * b[1];
    Ok(7.0 * pb * pb)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DwellTimes {
    /// Quadrature of `∫₀¹ ds / (a₁s² + a₂s + a₃)`.
    pub tau_integral: f64,
    /// `(1/q) ln(1 + σq / ((1 − σ)(q + γρ)))`.
    pub tau_closed: f64,
}

impl DwellTimes {
    pub fn min(&self) -> f64 {
        self.tau_integral.min(self.tau_closed)
    }

    /// The smaller τ rounded down to a whole 0.1 ms.
    pub fn default_h(&self) -> f64 {
        libm::floor(self.min() * 1e4) / 1e4
    }
}

pub fn dwell_time(tp: &TriggerParams) -> Result<DwellTimes> {
    let TriggerConfig { gamma, eta, sigma, rho, .. } = tp.config;
    if !(sigma > 0.0 && sigma < 1.0) {
        return Err(Error::invalid("trigger.sigma ∈ (0,1)"));
    }
    let rho1 = tp.rho1;
    let a1 = rho * sigma * gamma;
    let a2 = 1.0 + 2.0 * rho1 + (1.0 - sigma) * rho + eta;
    let a3 = (1.0 + rho1 + gamma * (1.0 - sigma) * rho + eta) * (1.0 - sigma) / sigma;
    let tau_integral = quadrature::adaptive_simpson(|s| 1.0 / ((a1 * s + a2) * s + a3), 0.0, 1.0, 1e-13);
    let q = tp.q;
    let tau_closed = log(1.0 + sigma * q / ((1.0 - sigma) * (q + gamma * rho))) / q;
    Ok(DwellTimes { tau_integral, tau_closed })
}

/// States entering the `m` dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MObservables {
    pub x: Vec2,
    /// `u(0)` or `w(0)`.
    pub boundary: f64,
    /// `‖u‖²` or `‖w‖²` over `[0, l]`.
    pub l2_squared: f64,
}

/// ṁ = −ηm + ρd² − β₁|X|² − β₂|X|⁴ − β₃|X|⁶ − β₄ u(0)² − β₅‖u‖².
pub fn m_rhs(m: f64, d: f64, obs: &MObservables, cfg: &TriggerConfig) -> f64 {
    let x2 = obs.x[0] * obs.x[0] + obs.x[1] * obs.x[1];
    let [b1, b2, b3, b4, b5] = cfg.betas;
    -cfg.eta * m + cfg.rho * d * d
        - b1 * x2
        - b2 * x2 * x2
        - b3 * x2 * x2 * x2
        - b4 * obs.boundary * obs.boundary
        - b5 * obs.l2_squared
}

pub fn cetc_should_trigger(d: f64, m: f64, gamma: f64) -> bool {
    d * d > -gamma * m
}

/// Γᵖ = (q + γρ)e^{qh}d² − γρd² + qγm.
pub fn petc_gamma(d: f64, m: f64, tp: &TriggerParams) -> f64 {
    let TriggerConfig { gamma, rho, h, .. } = tp.config;
    let q = tp.q;
    let d2 = d * d;
    (q + gamma * rho) * exp(q * h) * d2 - gamma * rho * d2 + q * gamma * m
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub t: f64,
    pub u_held: f64,
    /// `d² + γm` for CETC, `Γᵖ` for PETC, evaluated just before the update.
    pub trigger_value: f64,
    /// PETC check number `n` with `t = nh`.
    pub check_index: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EventLog {
    pub events: Vec<Event>,
}

impl EventLog {
    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.events.iter().map(|e| e.t)
    }

    /// Gaps between consecutive events.
    pub fn gaps(&self) -> impl Iterator<Item = f64> + '_ {
        self.events.windows(2).map(|w| w[1].t - w[0].t)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TriggerState {
    pub mode: ControllerMode,
    /// Applied input; `None` until the first sample.
    pub u_held: Option<f64>,
    pub d: f64,
    pub m: f64,
    pub t_last_event: f64,
    /// PETC check period in solver steps.
    pub check_every: u64,
    pub log: EventLog,
}

impl TriggerState {
    /// `dt` is the solver step; PETC requires `h` to be a whole number of steps.
    pub fn new(mode: ControllerMode, tp: &TriggerParams, dt: f64) -> Result<Self> {
        let ratio = tp.config.h / dt;
        let check_every = libm::round(ratio);
        if mode == ControllerMode::Petc && (check_every < 1.0 || libm::fabs(ratio - check_every) > 1e-9 * ratio) {
            return Err(Error::invalid("trigger.h is a whole multiple of solver.dt"));
        }
        Ok(Self {
            mode,
            u_held: None,
            d: 0.0,
            m: tp.config.m0,
            t_last_event: 0.0,
            check_every: check_every.max(1.0) as u64,
            log: EventLog::default(),
        })
    }

    pub fn is_check_step(&self, step: u64) -> bool {
        self.mode == ControllerMode::Petc && step % self.check_every == 0
    }
}

/// What happened in one call to [`advance_trigger`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TriggerOutcome {
    pub fired: bool,
    /// Deviation before the decision.
    pub d_before: f64,
    /// Γᵖ at this step (PETC only), from the pre-decision deviation.
    pub gamma_p: Option<f64>,
    /// True when this step was a PETC check instant.
    pub checked: bool,
}

/// Decides whether to resample at step `step` (time `t = step·dt`), then
/// integrates `m` one explicit Euler step with the post-decision deviation.
pub fn advance_trigger(
    state: &mut TriggerState,
    u_fresh: f64,
    step: u64,
    t: f64,
    dt: f64,
    obs: &MObservables,
    tp: &TriggerParams,
) -> Result<TriggerOutcome> {
    if !u_fresh.is_finite() {
        return Err(Error::NonFiniteControl { t });
    }
    let gamma = tp.config.gamma;
    let mut out = TriggerOutcome::default();
    match state.u_held {
        None => {
            // initial sample at t = 0
            let check_index = (state.mode == ControllerMode::Petc).then_some(0);
            out.fired = true;
            out.checked = check_index.is_some();
            if state.mode == ControllerMode::Petc {
                out.gamma_p = Some(petc_gamma(0.0, state.m, tp));
            }
            state.u_held = Some(u_fresh);
            if state.mode != ControllerMode::Continuous {
                let trigger_value = match state.mode {
                    ControllerMode::Petc => petc_gamma(0.0, state.m, tp),
                    _ => gamma * state.m,
                };
                state.log.events.push(Event { t, u_held: u_fresh, trigger_value, check_index });
                state.t_last_event = t;
            }
        }
        Some(held) => {
            let d = u_fresh - held;
            out.d_before = d;
            let (fire, value, check_index) = match state.mode {
                ControllerMode::Continuous => (true, 0.0, None),
                ControllerMode::Cetc => (cetc_should_trigger(d, state.m, gamma), d * d + gamma * state.m, None),
                ControllerMode::Petc => {
                    let g = petc_gamma(d, state.m, tp);
                    out.gamma_p = Some(g);
                    if state.is_check_step(step) {
                        out.checked = true;
                        let fire = tp.config.force_petc_fire || g > 0.0;
                        (fire, g, Some(step / state.check_every))
                    } else {
                        (false, g, None)
                    }
                }
            };
            if fire {
                state.u_held = Some(u_fresh);
                out.fired = true;
                if state.mode != ControllerMode::Continuous {
                    state.log.events.push(Event { t, u_held: u_fresh, trigger_value: value, check_index });
                    state.t_last_event = t;
                }
            }
        }
    }
    state.d = u_fresh - state.u_held.unwrap_or(u_fresh);
    let dm = m_rhs(state.m, state.d, obs, &tp.config);
    state.m += dt * dm;
    Ok(out)
}
