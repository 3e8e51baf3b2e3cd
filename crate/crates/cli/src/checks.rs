//! Kernel verification report for `axon kernels`.

use axon_core::kernels::{build_n1, validate_gains, GainReport};
use axon_core::linalg::{self, Mat};
use axon_core::model::derive_constants;
use axon_core::{GainArtifacts, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Resolved;

pub const PHI0_TOL: f64 = 1e-12;
pub const FD_TOL: f64 = 1e-6;
pub const EXPM_TOL: f64 = 1e-10;

/// `e^M` by scaling to norm ≤ 1/2, a 40-term Taylor sum and repeated squaring.
pub fn expm_series<const N: usize>(m: &Mat<N>) -> Mat<N> {
    let norm = linalg::norm1(m);
    let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let a = linalg::scale(m, 0.5f64.powi(s));
    let mut term = linalg::identity::<N>();
    let mut sum = term;
    for k in 1..=40 {
        term = linalg::scale(&linalg::matmul(&term, &a), 1.0 / k as f64);
        sum = linalg::add(&sum, &term);
    }
    for _ in 0..s {
        sum = linalg::matmul(&sum, &sum);
    }
    sum
}

/// Largest relative Frobenius error of `mat_exp` over `count` random 4×4
/// matrices with 1-norm at most `max_norm`.
pub fn expm_random_check(count: usize, max_norm: f64, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let mut m = [[0.0; 4]; 4];
        for row in &mut m {
            for v in row.iter_mut() {
                *v = rng.gen_range(-1.0..1.0);
            }
        }
        let target = rng.gen_range(0.0..max_norm);
        let m = linalg::scale(&m, target / linalg::norm1(&m));
        let got = linalg::mat_exp(&m)?;
        let want = expm_series(&m);
        worst = worst.max(linalg::norm_fro(&linalg::sub(&got, &want)) / linalg::norm_fro(&want));
    }
    Ok(worst)
}

#[derive(Debug, Clone, Serialize)]
pub struct Sample {
    pub x_m: f64,
    pub p: [f64; 2],
    pub p_b: f64,
    pub phi_at_minus_x: [f64; 2],
    pub phi_prime_at_minus_x: [f64; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct HurwitzReport {
    pub hurwitz: bool,
    pub k1_condition: bool,
    pub k2_condition: bool,
    pub spectral: bool,
    pub k1_bound: f64,
    pub k2_bound: f64,
    pub eigenvalues: [[f64; 2]; 2],
    pub margin: f64,
}

impl From<GainReport> for HurwitzReport {
    fn from(r: GainReport) -> Self {
        Self {
            hurwitz: r.hurwitz,
            k1_condition: r.k1_condition,
            k2_condition: r.k2_condition,
            spectral: r.spectral,
            k1_bound: r.k1_bound,
            k2_bound: r.k2_bound,
            eigenvalues: r.eigenvalues.map(|e| [e.re, e.im]),
            margin: r.margin,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelReport {
    pub convention: String,
    pub n1: [[f64; 4]; 4],
    pub prefix: [f64; 4],
    pub samples: Vec<Sample>,
    pub phi0_max_rel_error: f64,
    pub fd_phi_prime_max_rel_error: f64,
    pub mat_exp_max_rel_error: f64,
    pub gains: HurwitzReport,
    pub rho1: f64,
    pub pass: bool,
}

pub fn kernel_report(resolved: &Resolved) -> Result<KernelReport> {
    let run = &resolved.run;
    let p = &run.physical;
    let dc = derive_constants(p)?;
    let art = GainArtifacts::new(&dc, p, run.gains, run.convention);
    let ls = p.target_length;

    let mut samples = Vec::new();
    for i in 0..=20 {
        let x = ls * i as f64 / 20.0;
        let pv = art.eval_p(x)?;
        samples.push(Sample {
            x_m: x,
            p: pv,
            p_b: pv[0] * dc.b[0] + pv[1] * dc.b[1],
            phi_at_minus_x: art.eval_phi(-x)?,
            phi_prime_at_minus_x: art.eval_phi_prime(-x)?,
        });
    }

    let phi0 = art.eval_phi(0.0)?;
    let mut phi0_err: f64 = 0.0;
    for (i, got) in phi0.iter().enumerate() {
        let want = dc.h[i] - run.gains.epsilon[i];
        phi0_err = phi0_err.max((got - want).abs() / want.abs().max(f64::MIN_POSITIVE));
    }

    let mut fd_err: f64 = 0.0;
    for i in 0..20 {
        let s = -ls * (i as f64 + 0.5) / 20.0;
        let step = 1e-10;
        let fp = art.eval_phi(s + step)?;
        let fm = art.eval_phi(s - step)?;
        let d = art.eval_phi_prime(s)?;
        for k in 0..2 {
            let fd = (fp[k] - fm[k]) / (2.0 * step);
            fd_err = fd_err.max((fd - d[k]).abs() / d[k].abs());
        }
    }

    let expm_err = expm_random_check(50, 10.0, 7)?;
    let gains: HurwitzReport = validate_gains(&run.gains, &dc).into();
    let pass = phi0_err <= PHI0_TOL && fd_err <= FD_TOL && expm_err <= EXPM_TOL && gains.hurwitz;
    Ok(KernelReport {
        convention: format!("{:?}", run.convention).to_lowercase(),
        n1: build_n1(&dc, p, run.convention),
        prefix: art.prefix,
        samples,
        phi0_max_rel_error: phi0_err,
        fd_phi_prime_max_rel_error: fd_err,
        mat_exp_max_rel_error: expm_err,
        gains,
        rho1: resolved.rho1,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_oracle_on_nilpotent() {
        let m = [[0.0, 3.0], [0.0, 0.0]];
        let e = expm_series(&m);
        assert_eq!(e, [[1.0, 3.0], [0.0, 1.0]]);
    }

    #[test]
    fn random_matrices_agree() {
        assert!(expm_random_check(50, 10.0, 7).unwrap() <= EXPM_TOL);
    }
}
