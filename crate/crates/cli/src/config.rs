//! JSON experiment configuration with unit-suffixed field names.
//!
//! Every field has a default, so an empty object `{}` is the full nominal
//! scenario. Unknown fields are rejected with their path.

use std::path::Path;

use axon_core::kernels::{validate_gains, ControllerGains, KernelConvention};
use axon_core::model::{derive_constants, PhysicalParams};
use axon_core::plant::{Scheme, SolverConfig};
use axon_core::sim::{ControllerMode, RunConfig};
use axon_core::trigger::{dwell_time, DwellTimes, MDynamicsSource, TriggerConfig, TriggerParams};
use axon_core::GainArtifacts;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("schema violation at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

impl From<axon_core::Error> for ConfigError {
    fn from(e: axon_core::Error) -> Self {
        ConfigError::Invalid(e.to_string())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub physical: PhysicalSection,
    pub gains: GainsSection,
    pub trigger: TriggerSection,
    pub solver: SolverSection,
    pub experiment: ExperimentSection,
}

#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PhysicalSection {
    pub D_m2_per_s: f64,
    pub a_m_per_s: f64,
    pub g_per_s: f64,
    pub r_g_m4_per_mol_s: f64,
    pub r_g_tilde_per_s: f64,
    pub c_inf_mol_per_m3: f64,
    pub l_c_m: f64,
    pub l_s_m: f64,
    pub l_0_m: f64,
    pub c0_scale: f64,
    pub gamma_bio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConventionName {
    Derived,
    Verbatim,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GainsSection {
    pub k1: f64,
    pub k2: f64,
    pub epsilon: [f64; 2],
    pub kernel_convention: ConventionName,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MSource {
    U,
    W,
}

/// PETC period: seconds, or `"auto"` for the smaller dwell time rounded down to 0.1 ms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Period {
    Seconds(f64),
    Auto(AutoTag),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AutoTag {
    Auto,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TriggerSection {
    pub gamma: f64,
    pub eta: f64,
    pub sigma: f64,
    pub rho: f64,
    pub beta: [f64; 5],
    pub m0: f64,
    pub h_s: Period,
    pub m_dynamics: MSource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeName {
    Imex,
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverSection {
    pub n_grid: usize,
    pub dt_s: f64,
    pub t_final_s: f64,
    pub scheme: SchemeName,
    pub l_cap_m: f64,
    pub output_stride: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeName {
    Continuous,
    Cetc,
    Petc,
}

impl From<ModeName> for ControllerMode {
    fn from(m: ModeName) -> Self {
        match m {
            ModeName::Continuous => ControllerMode::Continuous,
            ModeName::Cetc => ControllerMode::Cetc,
            ModeName::Petc => ControllerMode::Petc,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentSection {
    pub modes: Vec<ModeName>,
    pub output_dir: String,
    /// Runs are always deterministic; the field is accepted for completeness.
    pub deterministic: bool,
}

impl Default for PhysicalSection {
    fn default() -> Self {
        let p = PhysicalParams::default();
        Self {
            D_m2_per_s: p.diffusivity,
            a_m_per_s: p.advection,
            g_per_s: p.degradation,
            r_g_m4_per_mol_s: p.growth_rate,
            r_g_tilde_per_s: p.reaction_rate,
            c_inf_mol_per_m3: p.c_inf,
            l_c_m: p.growth_ratio,
            l_s_m: p.target_length,
            l_0_m: p.initial_length,
            c0_scale: p.c0_scale,
            gamma_bio: p.gamma_bio,
        }
    }
}

impl Default for GainsSection {
    fn default() -> Self {
        let g = ControllerGains::default();
        Self { k1: g.k1, k2: g.k2, epsilon: g.epsilon, kernel_convention: ConventionName::Derived }
    }
}

impl Default for TriggerSection {
    fn default() -> Self {
        let t = TriggerConfig::default();
        Self {
            gamma: t.gamma,
            eta: t.eta,
            sigma: t.sigma,
            rho: t.rho,
            beta: t.betas,
            m0: t.m0,
            h_s: Period::Seconds(t.h),
            m_dynamics: MSource::U,
        }
    }
}

impl Default for SolverSection {
    fn default() -> Self {
        let s = SolverConfig::default();
        Self {
            n_grid: s.n_grid,
            dt_s: s.dt,
            t_final_s: s.t_final,
            scheme: SchemeName::Imex,
            l_cap_m: s.l_cap,
            output_stride: s.output_stride,
        }
    }
}

impl Default for ExperimentSection {
    fn default() -> Self {
        Self {
            modes: vec![ModeName::Continuous, ModeName::Cetc, ModeName::Petc],
            output_dir: "out".into(),
            deterministic: true,
        }
    }
}

/// A validated configuration with the PETC period resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolved {
    pub config: ExperimentConfig,
    pub run: RunConfig,
    pub dwell: DwellTimes,
    pub rho1: f64,
    pub q: f64,
}

impl Resolved {
    pub fn with_mode(&self, mode: ControllerMode) -> RunConfig {
        RunConfig { mode, ..self.run }
    }

    /// The resolved configuration as pretty JSON; its SHA-256 is the fingerprint.
    pub fn resolved_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.config).expect("config serializes");
        s.push('\n');
        s
    }

    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.resolved_json().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub fn parse_str(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let text = if text.trim().is_empty() { "{}" } else { text };
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de)
        .map_err(|e| ConfigError::Schema { path: e.path().to_string(), message: e.inner().to_string() })
}

pub fn load(path: &Path, force_h: bool) -> Result<Resolved, ConfigError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
    resolve(parse_str(&text)?, force_h)
}

pub fn physical(s: &PhysicalSection) -> PhysicalParams {
    PhysicalParams {
        diffusivity: s.D_m2_per_s,
        advection: s.a_m_per_s,
        degradation: s.g_per_s,
        growth_rate: s.r_g_m4_per_mol_s,
        reaction_rate: s.r_g_tilde_per_s,
        c_inf: s.c_inf_mol_per_m3,
        growth_ratio: s.l_c_m,
        target_length: s.l_s_m,
        initial_length: s.l_0_m,
        c0_scale: s.c0_scale,
        gamma_bio: s.gamma_bio,
    }
}

/// Validates every section, resolves `h_s` and enforces `h ≤ τ` unless `force_h`.
pub fn resolve(mut config: ExperimentConfig, force_h: bool) -> Result<Resolved, ConfigError> {
    let p = physical(&config.physical);
    p.validate()?;
    let dc = derive_constants(&p)?;
    let g = &config.gains;
    let gains = ControllerGains { k1: g.k1, k2: g.k2, epsilon: g.epsilon };
    if !gains.k1.is_finite() || !gains.k2.is_finite() || !gains.epsilon.iter().all(|e| e.is_finite()) {
        return Err(ConfigError::Invalid("gains.k1, gains.k2, gains.epsilon finite".into()));
    }
    let report = validate_gains(&gains, &dc);
    if !report.hurwitz {
        return Err(ConfigError::Invalid(format!(
            "gains: k1 > ã₁/β ({:e}), k2 > ã₃/β ({:e}) and A₁ + BKᵀ Hurwitz are required",
            report.k1_bound, report.k2_bound
        )));
    }
    let convention = match g.kernel_convention {
        ConventionName::Derived => KernelConvention::Derived,
        ConventionName::Verbatim => KernelConvention::Verbatim,
    };
    let artifacts = GainArtifacts::new(&dc, &p, gains, convention);

    let t = &config.trigger;
    let mut trigger = TriggerConfig {
        gamma: t.gamma,
        eta: t.eta,
        sigma: t.sigma,
        rho: t.rho,
        betas: t.beta,
        m0: t.m0,
        h: 1.0,
        m_dynamics: match t.m_dynamics {
            MSource::U => MDynamicsSource::U,
            MSource::W => MDynamicsSource::W,
        },
        force_petc_fire: false,
    };
    let tp = TriggerParams::new(trigger, &artifacts)?;
    let dwell = dwell_time(&tp)?;
    trigger.h = match t.h_s {
        Period::Seconds(h) => h,
        Period::Auto(_) => dwell.default_h(),
    };
    config.trigger.h_s = Period::Seconds(trigger.h);
    trigger.validate()?;
    if !force_h && trigger.h > dwell.min() {
        return Err(ConfigError::Invalid(format!(
            "trigger.h_s ≤ τ: 0 < h ≤ τ requires h ≤ {:e} s (min of integral and closed-form dwell times), got {:e} s; pass --force-h to override",
            dwell.min(),
            trigger.h
        )));
    }

    let s = &config.solver;
    let solver = SolverConfig {
        n_grid: s.n_grid,
        dt: s.dt_s,
        t_final: s.t_final_s,
        scheme: match s.scheme {
            SchemeName::Imex => Scheme::Imex,
            SchemeName::Explicit => Scheme::Explicit,
        },
        l_cap: s.l_cap_m,
        output_stride: s.output_stride,
    };
    solver.validate(&p)?;
    if !force_h && solver.dt > dwell.min() / 5.0 {
        return Err(ConfigError::Invalid(format!(
            "solver.dt_s ≤ τ/5 for bounded trigger latency: requires dt ≤ {:e} s",
            dwell.min() / 5.0
        )));
    }
    let ratio = trigger.h / solver.dt;
    if (ratio - ratio.round()).abs() > 1e-9 * ratio || ratio.round() < 1.0 {
        return Err(ConfigError::Invalid("trigger.h_s is a whole multiple of solver.dt_s".into()));
    }
    if config.experiment.modes.is_empty() {
        return Err(ConfigError::Invalid("experiment.modes is non-empty".into()));
    }

    let run =
        RunConfig { physical: p, gains, convention, trigger, solver, mode: ControllerMode::Petc, lyapunov: false };
    Ok(Resolved { config, run, dwell, rho1: tp.rho1, q: tp.q })
}

/// Sets the value at a dotted path such as `trigger.sigma` in a config, by
/// round-tripping through JSON so the same validation applies.
pub fn with_override(
    config: &ExperimentConfig,
    path: &str,
    value: serde_json::Value,
) -> Result<ExperimentConfig, ConfigError> {
    let mut tree = serde_json::to_value(config).expect("config serializes");
    let mut node = &mut tree;
    for key in path.split('.') {
        node = match node {
            serde_json::Value::Object(map) if map.contains_key(key) => map.get_mut(key).unwrap(),
            serde_json::Value::Array(items) => match key.parse::<usize>().ok().and_then(|i| items.get_mut(i)) {
                Some(item) => item,
                None => return Err(ConfigError::Schema { path: path.into(), message: "no such index".into() }),
            },
            _ => return Err(ConfigError::Schema { path: path.into(), message: "no such field".into() }),
        };
    }
    *node = value;
    parse_str(&tree.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_input_is_nominal_scenario() {
        let r = resolve(parse_str("").unwrap(), false).unwrap();
        assert_eq!(r.run.physical, PhysicalParams::default());
        assert_eq!(r.run.gains, ControllerGains::default());
        assert_eq!(r.run.trigger, TriggerConfig::default());
        assert_eq!(r.run.solver, SolverConfig::default());
        assert_eq!(parse_str("{}").unwrap(), ExperimentConfig::default());
    }

    #[test]
    fn sigma_out_of_range_names_rule() {
        let err = resolve(parse_str(r#"{"trigger": {"sigma": 1.2}}"#).unwrap(), false).unwrap_err();
        assert!(err.to_string().contains("trigger.sigma ∈ (0,1)"), "{err}");
    }

    #[test]
    fn unknown_field_reports_path() {
        let err = parse_str(r#"{"solver": {"dt": 1e-4}}"#).unwrap_err();
        match err {
            ConfigError::Schema { path, .. } => assert_eq!(path, "solver.dt"),
            e => panic!("{e}"),
        }
        let err = parse_str(r#"{"trigger": {"beta": [1, 2]}}"#).unwrap_err();
        assert!(matches!(err, ConfigError::Schema { ref path, .. } if path.starts_with("trigger.beta")));
    }

    #[test]
    fn period_above_dwell_time_needs_force() {
        let cfg = parse_str(r#"{"trigger": {"h_s": 0.5}, "solver": {"dt_s": 0.01}}"#).unwrap();
        let err = resolve(cfg.clone(), false).unwrap_err();
        assert!(err.to_string().contains("trigger.h_s ≤ τ"), "{err}");
        assert!(resolve(cfg, true).is_ok());
    }

    #[test]
    fn auto_period_rounds_down_to_tenth_of_millisecond() {
        let r = resolve(parse_str(r#"{"trigger": {"h_s": "auto"}}"#).unwrap(), false).unwrap();
        assert!((r.run.trigger.h - 0.2282).abs() < 1e-12);
        assert_eq!(r.config.trigger.h_s, Period::Seconds(r.run.trigger.h));
    }

    #[test]
    fn non_hurwitz_gains_rejected() {
        let err = resolve(parse_str(r#"{"gains": {"k2": 0}}"#).unwrap(), false).unwrap_err();
        assert!(err.to_string().contains("Hurwitz"));
    }

    #[test]
    fn fingerprint_is_stable_and_sensitive() {
        let a = resolve(ExperimentConfig::default(), false).unwrap();
        let b = resolve(parse_str(&a.resolved_json()).unwrap(), false).unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
        let c = resolve(parse_str(r#"{"trigger": {"eta": 3}}"#).unwrap(), false).unwrap();
        assert_ne!(a.fingerprint(), c.fingerprint());
    }

    #[test]
    fn override_by_path() {
        let base = ExperimentConfig::default();
        let c = with_override(&base, "trigger.sigma", serde_json::json!(0.5)).unwrap();
        assert_eq!(c.trigger.sigma, 0.5);
        let c = with_override(&base, "gains.epsilon.1", serde_json::json!(2.0)).unwrap();
        assert_eq!(c.gains.epsilon, [0.0, 2.0]);
        assert!(with_override(&base, "trigger.nope", serde_json::json!(1)).is_err());
    }
}
