//! Subcommand implementations. Each returns an error carrying its exit code.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use axon_core::sim::{run_simulation, ControllerMode, RunConfig, RunResult};

use crate::checks::kernel_report;
use crate::config::{resolve, with_override, ConfigError, ExperimentConfig, Resolved};
use crate::output::{self, cell, MetricsReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("run aborted: {0}")]
    Aborted(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Aborted(_) => 3,
            CliError::Verification(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

fn run(cfg: &RunConfig) -> Result<RunResult, CliError> {
    Ok(run_simulation(cfg).map_err(ConfigError::from)?)
}

pub fn simulate(
    resolved: &Resolved,
    mode: ControllerMode,
    out: &Path,
    lyapunov: bool,
) -> Result<MetricsReport, CliError> {
    let cfg = RunConfig { lyapunov, ..resolved.with_mode(mode) };
    let result = run(&cfg)?;
    let report = output::write_run(out, &result, resolved)?;
    match &result.aborted {
        Some(e) => Err(CliError::Aborted(e.to_string())),
        None => Ok(report),
    }
}

/// Runs the three modes concurrently on one configuration.
pub fn compare(resolved: &Resolved, out: &Path, lyapunov: bool) -> Result<Vec<MetricsReport>, CliError> {
    let results: Vec<Result<RunResult, CliError>> = std::thread::scope(|s| {
        let handles: Vec<_> = ControllerMode::ALL
            .iter()
            .map(|&mode| {
                let cfg = RunConfig { lyapunov, ..resolved.with_mode(mode) };
                s.spawn(move || run(&cfg))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("run thread panicked")).collect()
    });
    let results = results.into_iter().collect::<Result<Vec<_>, _>>()?;

    let mut reports = Vec::new();
    for r in &results {
        reports.push(output::write_run(&out.join(r.mode.name()), r, resolved)?);
    }
    output::write_resolved(out, resolved)?;

    let mut table = String::from(
        "mode,steps,event_count,event_fraction,min_gap_s,mean_gap_s,t_converge_l_s,t_converge_c_s,final_l_rel_error,final_c_rel_l2_error,completed\n",
    );
    for m in &reports {
        let _ = writeln!(
            table,
            "{},{},{},{},{},{},{},{},{},{},{}",
            m.mode,
            m.steps,
            m.event_count,
            m.event_fraction_of_steps,
            cell(m.min_gap_s),
            cell(m.mean_gap_s),
            cell(m.t_converge_l_s),
            cell(m.t_converge_c_s),
            m.final_l_rel_error,
            m.final_c_rel_l2_error,
            m.completed
        );
    }
    fs::write(out.join("comparison.csv"), table)?;

    // rows share the same stride, so they line up on t
    let mut inputs = String::from("t_s,U_continuous,U_cetc,U_petc\n");
    let n = results.iter().map(|r| r.rows.len()).min().unwrap_or(0);
    for i in 0..n {
        let _ = writeln!(
            inputs,
            "{},{},{},{}",
            results[0].rows[i].t,
            results[0].rows[i].u_applied,
            results[1].rows[i].u_applied,
            results[2].rows[i].u_applied
        );
    }
    fs::write(out.join("inputs.csv"), inputs)?;

    if let Some(bad) = reports.iter().find(|m| !m.completed) {
        return Err(CliError::Aborted(format!("{}: {}", bad.mode, bad.abort_reason.clone().unwrap_or_default())));
    }
    Ok(reports)
}

/// One run per value of the parameter at `path`, concurrently. Rows of the
/// summary follow the order of `values`.
pub fn sweep(
    base: &ExperimentConfig,
    path: &str,
    values: &[serde_json::Value],
    mode: ControllerMode,
    out: &Path,
    force_h: bool,
) -> Result<String, CliError> {
    let mut resolved = Vec::new();
    for v in values {
        resolved.push(resolve(with_override(base, path, v.clone())?, force_h)?);
    }
    let workers = std::thread::available_parallelism().map_or(4, |n| n.get());
    let mut results: Vec<Option<Result<RunResult, CliError>>> = Vec::new();
    results.resize_with(resolved.len(), || None);
    for (chunk_idx, chunk) in resolved.chunks(workers).enumerate() {
        let done: Vec<_> = std::thread::scope(|s| {
            let handles: Vec<_> = chunk
                .iter()
                .map(|r| {
                    let cfg = r.with_mode(mode);
                    s.spawn(move || run(&cfg))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("run thread panicked")).collect()
        });
        for (i, r) in done.into_iter().enumerate() {
            results[chunk_idx * workers + i] = Some(r);
        }
    }

    let mut summary = String::from(
        "value,mode,event_count,t_converge_l_s,t_converge_c_s,final_l_rel_error,final_c_rel_l2_error,completed,fingerprint\n",
    );
    let mut first_abort = None;
    for (i, (value, (res, r))) in values.iter().zip(resolved.iter().zip(results)).enumerate() {
        let r = r.expect("every sweep value ran")?;
        let dir = out.join(format!("run_{i:03}"));
        let m = output::write_run(&dir, &r, res)?;
        let _ = writeln!(
            summary,
            "{},{},{},{},{},{},{},{},{}",
            value,
            m.mode,
            m.event_count,
            cell(m.t_converge_l_s),
            cell(m.t_converge_c_s),
            m.final_l_rel_error,
            m.final_c_rel_l2_error,
            m.completed,
            m.config_fingerprint
        );
        if !m.completed && first_abort.is_none() {
            first_abort = Some(format!("value {value}: {}", m.abort_reason.unwrap_or_default()));
        }
    }
    fs::create_dir_all(out)?;
    fs::write(out.join("summary.csv"), &summary)?;
    match first_abort {
        Some(msg) => Err(CliError::Aborted(msg)),
        None => Ok(summary),
    }
}

pub fn dwell(resolved: &Resolved) -> String {
    let d = resolved.dwell;
    format!(
        "rho1 = {}\nq = {}\ntau_integral_s = {}\ntau_closed_s = {}\ntau_min_s = {}\nh_rule_s = {}\nh_s = {}\nh_within_dwell_time = {}\n",
        resolved.rho1,
        resolved.q,
        d.tau_integral,
        d.tau_closed,
        d.min(),
        d.default_h(),
        resolved.run.trigger.h,
        resolved.run.trigger.h <= d.min(),
    )
}

pub fn kernels(resolved: &Resolved, out: &Path, check: bool) -> Result<String, CliError> {
    let report = kernel_report(resolved).map_err(ConfigError::from)?;
    fs::create_dir_all(out)?;
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    fs::write(out.join("kernels.json"), &text)?;
    let summary = format!(
        "phi(0) rel error {:e}\nfinite-difference phi' rel error {:e}\nmat_exp vs series rel error {:e}\nhurwitz {}\npass {}\n",
        report.phi0_max_rel_error,
        report.fd_phi_prime_max_rel_error,
        report.mat_exp_max_rel_error,
        report.gains.hurwitz,
        report.pass
    );
    if check && !report.pass {
        return Err(CliError::Verification(summary));
    }
    Ok(summary)
}
