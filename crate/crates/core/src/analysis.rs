//! Diagnostics: Lyapunov matrices, the forward backstepping transformation,
//! the functional V = V₁ − m and convergence metrics of finished runs.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::kernels::{self, ControllerGains, GainArtifacts, KernelGrid};
use crate::linalg::{self, Mat2, Vec2};
use crate::model::{DerivedConstants, PhysicalParams};
use crate::quadrature::l2_norm_squared;
use crate::sim::RunResult;

/// Symmetric `P` with `AᵀP + PA = −Q` for a Hurwitz 2×2 `A`.
pub fn solve_lyapunov_2x2(a: &Mat2, q: &Mat2) -> Result<Mat2> {
    let ev = linalg::eigenvalues_2x2(a);
    if !(ev[0].re < 0.0 && ev[1].re < 0.0) {
        return Err(Error::NotHurwitz);
    }
    let [[a11, a12], [a21, a22]] = *a;
    let m = [[2.0 * a11, 2.0 * a21, 0.0], [a12, a11 + a22, a21], [0.0, 2.0 * a12, 2.0 * a22]];
    let [p11, p12, p22] = linalg::solve_vec(&m, &[-q[0][0], -q[0][1], -q[1][1]])?;
    let p = [[p11, p12], [p12, p22]];
    let residual = linalg::add(&linalg::add(&linalg::matmul(&linalg::transpose(a), &p), &linalg::matmul(&p, a)), q);
    let scale = linalg::norm_fro(q).max(f64::MIN_POSITIVE);
    if !(linalg::norm_fro(&residual) <= 1e-10 * scale) {
        return Err(Error::Singular);
    }
    Ok(p)
}

/// `w(x) = u(x) − ∫ₓˡ k(x, y) u(y) dy − φ(x − l)ᵀX` on a uniform grid over `[0, l]`.
pub fn transform_to_target(u: &[f64], x: Vec2, l: f64, art: &GainArtifacts) -> Result<Vec<f64>> {
    let grid = KernelGrid::new(art, l, u.len())?;
    let mut w = alloc::vec![0.0; u.len()];
    transform_on_grid(u, x, &grid, art, &mut w);
    Ok(w)
}

/// As [`transform_to_target`] with precomputed kernel rows; writes into `w`.
pub fn transform_on_grid(u: &[f64], x: Vec2, grid: &KernelGrid, art: &GainArtifacts, w: &mut [f64]) {
    let n = u.len();
    let b = art.b();
    let inv_d = 1.0 / art.diffusivity();
    // k(x_i, x_j) depends on j − i only
    let k_at = |m: usize| {
        let phi = grid.phi_at_offset(m);
        -(phi[0] * b[0] + phi[1] * b[1]) * inv_d
    };
    let kernel: Vec<f64> = (0..n).map(k_at).collect();
    for i in 0..n {
        let mut tail = 0.0;
        if i + 1 < n {
            tail = 0.5 * (kernel[0] * u[i] + kernel[n - 1 - i] * u[n - 1]);
            for j in i + 1..n - 1 {
                tail += kernel[j - i] * u[j];
            }
            tail *= grid.dx;
        }
        let phi = grid.phi_at_offset(n - 1 - i);
        w[i] = u[i] - tail - (phi[0] * x[0] + phi[1] * x[1]);
    }
}

/// Matrices and weights of the Lyapunov functional.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovSetup {
    pub p1: Mat2,
    pub p2: Mat2,
    pub q1: Mat2,
    pub q2: Mat2,
    pub d1: f64,
    pub d2: f64,
}

impl LyapunovSetup {
    /// `P₁` from `A + BKᵀ` and `P₂` from `A₁ + BKᵀ`, both with `Q = I`, `d₁ = d₂ = 1`.
    pub fn new(dc: &DerivedConstants, gains: &ControllerGains) -> Result<Self> {
        let eye = linalg::identity();
        let p1 = solve_lyapunov_2x2(&kernels::closed_loop_matrix(&dc.a, dc, gains), &eye)?;
        let p2 = solve_lyapunov_2x2(&kernels::closed_loop_matrix(&dc.a1, dc, gains), &eye)?;
        Ok(Self { p1, p2, q1: eye, q2: eye, d1: 1.0, d2: 1.0 })
    }
}

/// V = (d₁/2)∫w² + Xᵀ(d₂P₁ + ½P₂)X − m, with `w` on a grid of spacing `dx`.
pub fn evaluate_v(w: &[f64], dx: f64, x: Vec2, m: f64, s: &LyapunovSetup) -> f64 {
    let weight = linalg::add(&linalg::scale(&s.p1, s.d2), &linalg::scale(&s.p2, 0.5));
    let px = linalg::mat_vec(&weight, &x);
    0.5 * s.d1 * l2_norm_squared(w, dx) + x[0] * px[0] + x[1] * px[1] - m
}

/// Summary of a finished run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunMetrics {
    /// First recorded time after which `|l − l_s| ≤ 5 % l_s` holds to the end.
    pub t_converge_l: Option<f64>,
    /// Same for the relative L² error of the profile.
    pub t_converge_c: Option<f64>,
    pub event_count: usize,
    pub min_gap: Option<f64>,
    pub mean_gap: Option<f64>,
    pub final_l_error: f64,
    pub final_c_error: f64,
}

pub const CONVERGENCE_BAND: f64 = 0.05;

/// First time from which `ok` holds on every later sample; `None` if the last sample fails.
pub fn settling_time<I: DoubleEndedIterator<Item = (f64, bool)>>(samples: I) -> Option<f64> {
    let mut since = None;
    for (t, ok) in samples.rev() {
        if !ok {
            break;
        }
        since = Some(t);
    }
    since
}

pub fn run_metrics(result: &RunResult, p: &PhysicalParams) -> RunMetrics {
    let ls = p.target_length;
    let band_l = |l: f64| libm::fabs(l - ls) <= CONVERGENCE_BAND * ls;
    let usable = result.completed();
    let t_converge_l = usable.then(|| settling_time(result.rows.iter().map(|r| (r.t, band_l(r.l))))).flatten();
    let t_converge_c =
        usable.then(|| settling_time(result.rows.iter().map(|r| (r.t, r.err_l2 <= CONVERGENCE_BAND)))).flatten();
    let gaps: Vec<f64> = result.events.gaps().collect();
    let min_gap = gaps.iter().copied().reduce(f64::min);
    let mean_gap = (!gaps.is_empty()).then(|| gaps.iter().sum::<f64>() / gaps.len() as f64);
    let last = result.rows.last();
    RunMetrics {
        t_converge_l,
        t_converge_c,
        event_count: result.events.len(),
        min_gap,
        mean_gap,
        final_l_error: last.map_or(f64::NAN, |r| libm::fabs(r.l - ls) / ls),
        final_c_error: last.map_or(f64::NAN, |r| r.err_l2),
    }
}
