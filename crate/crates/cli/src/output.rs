//! Run directories: time series CSV, event JSON lines, metrics, resolved config.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use axon_core::analysis::{run_metrics, RunMetrics};
use axon_core::sim::{ControllerMode, RunResult};
use serde::Serialize;
use serde_json::json;

use crate::config::Resolved;

pub const CSV_HEADER: &str = "t_s,l_m,c_c_mol_m3,U_continuous,U_applied,d,m,gamma_p,event_flag,err_l2_u";

/// Time-series table. `V` is appended when the rows carry it.
pub fn timeseries_csv(result: &RunResult) -> String {
    let with_v = result.rows.first().is_some_and(|r| r.v.is_some());
    let mut out = String::with_capacity(result.rows.len() * 160);
    out.push_str(CSV_HEADER);
    out.push_str(if with_v { ",V\n" } else { "\n" });
    for r in &result.rows {
        let gamma_p = r.gamma_p.map(|g| g.to_string()).unwrap_or_default();
        let _ = write!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.t,
            r.l,
            r.c_c,
            r.u_continuous,
            r.u_applied,
            r.d,
            r.m,
            gamma_p,
            u8::from(r.event),
            r.err_l2
        );
        if with_v {
            let _ = write!(out, ",{}", r.v.unwrap_or(f64::NAN));
        }
        out.push('\n');
    }
    out
}

/// One JSON object per event.
pub fn events_jsonl(result: &RunResult) -> String {
    let mut out = String::new();
    for e in &result.events.events {
        let line = match result.mode {
            ControllerMode::Petc => json!({
                "t": e.t,
                "U_held": e.u_held,
                "gamma_p": e.trigger_value,
                "check_index": e.check_index,
            }),
            _ => json!({
                "t": e.t,
                "U_held": e.u_held,
                "d2_minus_gamma_m": e.trigger_value,
                "check_index": e.check_index,
            }),
        };
        out.push_str(&line.to_string());
        out.push('\n');
    }
    out
}

/// `null` in JSON means "not reached" or "undefined".
#[derive(Debug, Clone, Serialize)]
pub struct MetricsReport {
    pub mode: &'static str,
    pub config_fingerprint: String,
    pub completed: bool,
    pub abort_reason: Option<String>,
    pub steps: u64,
    pub t_converge_l_s: Option<f64>,
    pub t_converge_c_s: Option<f64>,
    pub event_count: usize,
    pub event_fraction_of_steps: f64,
    pub min_gap_s: Option<f64>,
    pub mean_gap_s: Option<f64>,
    pub final_l_rel_error: f64,
    pub final_c_rel_l2_error: f64,
    pub max_d2_plus_gamma_m: Option<f64>,
    pub max_gamma_p_nonfiring: Option<f64>,
    pub petc_checks: u64,
    pub max_m: f64,
    pub max_abs_l_dot_m_per_s: f64,
    pub v_bar_m_per_s: f64,
    pub speed_bound_exceeded: bool,
    pub tau_integral_s: f64,
    pub tau_closed_s: f64,
    pub h_s: f64,
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

pub fn metrics_report(result: &RunResult, resolved: &Resolved) -> (RunMetrics, MetricsReport) {
    let m = run_metrics(result, &resolved.run.physical);
    let mon = &result.monitors;
    let report = MetricsReport {
        mode: result.mode.name(),
        config_fingerprint: resolved.fingerprint(),
        completed: result.completed(),
        abort_reason: result.aborted.as_ref().map(|e| e.to_string()),
        steps: result.steps_completed,
        t_converge_l_s: m.t_converge_l,
        t_converge_c_s: m.t_converge_c,
        event_count: m.event_count,
        event_fraction_of_steps: m.event_count as f64 / result.steps_completed.max(1) as f64,
        min_gap_s: m.min_gap,
        mean_gap_s: m.mean_gap,
        final_l_rel_error: m.final_l_error,
        final_c_rel_l2_error: m.final_c_error,
        max_d2_plus_gamma_m: finite(mon.max_deviation_margin),
        max_gamma_p_nonfiring: finite(mon.max_gamma_p_nonfiring),
        petc_checks: mon.petc_checks,
        max_m: mon.max_m,
        max_abs_l_dot_m_per_s: mon.max_abs_l_dot,
        v_bar_m_per_s: mon.v_bar,
        speed_bound_exceeded: mon.speed_bound_exceeded(),
        tau_integral_s: resolved.dwell.tau_integral,
        tau_closed_s: resolved.dwell.tau_closed,
        h_s: resolved.run.trigger.h,
    };
    (m, report)
}

const PLOT_STUB: &str = r#"# Plots a timeseries.csv written by `axon simulate`. Needs pandas and matplotlib.
import sys

import matplotlib.pyplot as plt
import pandas as pd

df = pd.read_csv(sys.argv[1] if len(sys.argv) > 1 else "timeseries.csv")
fig, ax = plt.subplots(3, 1, sharex=True, figsize=(7, 8))
ax[0].plot(df.t_s, df.l_m * 1e6)
ax[0].set_ylabel("l [um]")
ax[1].plot(df.t_s, df.c_c_mol_m3)
ax[1].set_ylabel("c_c [mol/m3]")
ax[2].plot(df.t_s, df.U_continuous, label="U")
ax[2].step(df.t_s, df.U_applied, where="post", label="held")
ax[2].set_ylabel("input")
ax[2].set_xlabel("t [s]")
ax[2].legend()
fig.tight_layout()
fig.savefig("timeseries.png", dpi=150)
"#;

/// Writes all artifacts of one run into `dir`.
pub fn write_run(dir: &Path, result: &RunResult, resolved: &Resolved) -> io::Result<MetricsReport> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("timeseries.csv"), timeseries_csv(result))?;
    fs::write(dir.join("events.jsonl"), events_jsonl(result))?;
    let (_, report) = metrics_report(result, resolved);
    let mut metrics = serde_json::to_string_pretty(&report).expect("metrics serialize");
    metrics.push('\n');
    fs::write(dir.join("metrics.json"), metrics)?;
    write_resolved(dir, resolved)?;
    fs::write(dir.join("plot_timeseries.py"), PLOT_STUB)?;
    let marker = dir.join("ABORTED");
    match &result.aborted {
        Some(e) => fs::write(marker, format!("{e}\n"))?,
        None if marker.exists() => fs::remove_file(marker)?,
        None => {}
    }
    Ok(report)
}

pub fn write_resolved(dir: &Path, resolved: &Resolved) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("resolved_config.json"), resolved.resolved_json())?;
    fs::write(dir.join("config.sha256"), format!("{}\n", resolved.fingerprint()))
}

/// Renders an optional value for a CSV cell.
pub fn cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}
