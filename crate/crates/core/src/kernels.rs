//! Backstepping gain kernels and the continuous-time feedback law.
//!
//! The kernels are closed-form through a 4×4 matrix exponential:
//!
//! ```text
//! φ(x)ᵀ   = [(H − ε)ᵀ, Kᵀ − (1/D)HᵀBHᵀ] · e^{N₁x} · [I; 0]
//! k(x, y) = −(1/D) φ(x − y)ᵀ B
//! p(x)    = φ′(−x)ᵀ + φ(−x)ᵀ
//! U       = −(1/D) ∫₀ˡ p(x) B u(x) dx + p(l) X
//! ```
//!
//! Writing `y(s) = prefix · e^{N₁s}`, the block structure of N₁ gives
//! `φ(s)ᵀ = y[0..2]` and `φ′(s)ᵀ = y[2..4]`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{self, Eigenvalue, Mat, Mat2, Vec2};
use crate::model::{DerivedConstants, PhysicalParams};
use crate::quadrature;

/// Sign of the BHᵀ term in the lower-right block of N₁.
///
/// `Derived` is `(1/D)(aI − BHᵀ)`, which is what the kernel equations obtained
/// from the transformation require; `Verbatim` is the opposite sign `(1/D)(BHᵀ + aI)`,
/// kept for comparison (it destabilizes the nominal loop). Both give the same φ(0),
/// φ′(0) and therefore p(0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KernelConvention {
    #[default]
    Derived,
    Verbatim,
}

/// Feedback gains K = [k₁, k₂]ᵀ and the target boundary offset ε.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControllerGains {
    pub k1: f64,
    pub k2: f64,
    pub epsilon: Vec2,
}

impl Default for ControllerGains {
    fn default() -> Self {
        Self { k1: -0.001, k2: 3e13, epsilon: [0.0, 0.0] }
    }
}

impl ControllerGains {
    pub fn k(&self) -> Vec2 {
        [self.k1, self.k2]
    }
}

/// N₁ = [0, (1/D)(gI + A + (a/D)BHᵀ); I, (1/D)(±BHᵀ + aI)].
pub fn build_n1(dc: &DerivedConstants, p: &PhysicalParams, convention: KernelConvention) -> Mat<4> {
    let d = p.diffusivity;
    let a = p.advection;
    let g = p.degradation;
    let bh = outer(dc.b, dc.h);
    let sign = match convention {
        KernelConvention::Derived => -1.0,
        KernelConvention::Verbatim => 1.0,
    };
    let mut n1 = [[0.0; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            let id = if i == j { 1.0 } else { 0.0 };
            n1[i][j + 2] = (g * id + dc.a[i][j] + a / d * bh[i][j]) / d;
            n1[i + 2][j] = id;
            n1[i + 2][j + 2] = (sign * bh[i][j] + a * id) / d;
        }
    }
    n1
}

fn outer(u: Vec2, v: Vec2) -> Mat2 {
    [[u[0] * v[0], u[0] * v[1]], [u[1] * v[0], u[1] * v[1]]]
}

fn dot(u: Vec2, v: Vec2) -> f64 {
    u[0] * v[0] + u[1] * v[1]
}

/// Immutable kernel data for one (parameters, gains) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct GainArtifacts {
    pub n1: Mat<4>,
    /// Row `[(H − ε)ᵀ, Kᵀ − (1/D)HᵀBHᵀ]`.
    pub prefix: [f64; 4],
    pub gains: ControllerGains,
    pub convention: KernelConvention,
    diffusivity: f64,
    b: Vec2,
}

impl GainArtifacts {
    pub fn new(
        dc: &DerivedConstants,
        p: &PhysicalParams,
        gains: ControllerGains,
        convention: KernelConvention,
    ) -> Self {
        let d = p.diffusivity;
        let htb = dot(dc.h, dc.b);
        let prefix = [
            dc.h[0] - gains.epsilon[0],
            dc.h[1] - gains.epsilon[1],
            gains.k1 - htb * dc.h[0] / d,
            gains.k2 - htb * dc.h[1] / d,
        ];
        Self { n1: build_n1(dc, p, convention), prefix, gains, convention, diffusivity: d, b: dc.b }
    }

    /// `prefix · e^{N₁s}`.
    pub fn row(&self, s: f64) -> Result<[f64; 4]> {
        let e = linalg::mat_exp(&linalg::scale(&self.n1, s))?;
        Ok(linalg::row_mul(&self.prefix, &e))
    }

    /// φ(s)ᵀ.
    pub fn eval_phi(&self, s: f64) -> Result<Vec2> {
        let y = self.row(s)?;
        Ok([y[0], y[1]])
    }

    /// φ′(s)ᵀ = prefix · N₁ · e^{N₁s} · [I; 0].
    pub fn eval_phi_prime(&self, s: f64) -> Result<Vec2> {
        let e = linalg::mat_exp(&linalg::scale(&self.n1, s))?;
        let y = linalg::row_mul(&linalg::row_mul(&self.prefix, &self.n1), &e);
        Ok([y[0], y[1]])
    }

    /// p(x) = φ′(−x)ᵀ + φ(−x)ᵀ.
    pub fn eval_p(&self, x: f64) -> Result<Vec2> {
        let phi = self.eval_phi(-x)?;
        let dphi = self.eval_phi_prime(-x)?;
        Ok([phi[0] + dphi[0], phi[1] + dphi[1]])
    }

    /// k(x, y) = −(1/D) φ(x − y)ᵀ B.
    pub fn eval_k(&self, x: f64, y: f64) -> Result<f64> {
        Ok(-dot(self.eval_phi(x - y)?, self.b) / self.diffusivity)
    }

    pub fn b(&self) -> Vec2 {
        self.b
    }

    pub fn diffusivity(&self) -> f64 {
        self.diffusivity
    }
}

/// Kernel samples on the uniform grid `x_j = j·l/(n−1)` of the current domain.
///
/// Rows are advanced with one exponential per grid: `y_{j+1} = y_j · e^{−N₁Δx}`,
/// which is exact at the nodes.
#[derive(Debug, Clone, Default)]
pub struct KernelGrid {
    /// `prefix · e^{−N₁x_j}` for each node.
    rows: Vec<[f64; 4]>,
    /// `p(x_j)·B`.
    pub p_b: Vec<f64>,
    pub dx: f64,
    pub l: f64,
}

impl KernelGrid {
    pub fn new(art: &GainArtifacts, l: f64, n_nodes: usize) -> Result<Self> {
        let mut g = Self::default();
        g.update(art, l, n_nodes)?;
        Ok(g)
    }

    pub fn update(&mut self, art: &GainArtifacts, l: f64, n_nodes: usize) -> Result<()> {
        if !(l > 0.0) {
            return Err(Error::invalid("domain length l > 0"));
        }
        if n_nodes < 2 {
            return Err(Error::invalid("kernel grid needs at least two nodes"));
        }
        let dx = l / (n_nodes - 1) as f64;
        let step = linalg::mat_exp(&linalg::scale(&art.n1, -dx))?;
        self.rows.clear();
        self.p_b.clear();
        let mut y = art.prefix;
        for j in 0..n_nodes {
            if j > 0 {
                y = linalg::row_mul(&y, &step);
            }
            self.rows.push(y);
            self.p_b.push((y[0] + y[2]) * art.b[0] + (y[1] + y[3]) * art.b[1]);
        }
        self.dx = dx;
        self.l = l;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// p(x_j).
    pub fn p(&self, j: usize) -> Vec2 {
        let y = self.rows[j];
        [y[0] + y[2], y[1] + y[3]]
    }

    /// p(l).
    pub fn p_tip(&self) -> Vec2 {
        self.p(self.rows.len() - 1)
    }

    /// φ(−x_m)ᵀ, i.e. φ at offset −m·Δx.
    pub fn phi_at_offset(&self, m: usize) -> Vec2 {
        let y = self.rows[m];
        [y[0], y[1]]
    }
}

/// Continuous feedback U from samples `u` on the grid of `kernels`.
pub fn control_law_on_grid(u: &[f64], x: Vec2, kernels: &KernelGrid, diffusivity: f64) -> Result<f64> {
    if u.len() != kernels.len() {
        return Err(Error::GridMismatch { expected: kernels.len(), got: u.len() });
    }
    let integral = quadrature::trapezoid_product(&kernels.p_b, u, kernels.dx);
    Ok(-integral / diffusivity + dot(kernels.p_tip(), x))
}

/// Continuous feedback U for a profile `u` sampled uniformly on `[0, l]`.
pub fn control_law(u: &[f64], x: Vec2, l: f64, art: &GainArtifacts) -> Result<f64> {
    if !(l > 0.0) {
        return Err(Error::invalid("domain length l > 0"));
    }
    let grid = KernelGrid::new(art, l, u.len())?;
    control_law_on_grid(u, x, &grid, art.diffusivity)
}

/// Outcome of the gain checks on A₁ + BKᵀ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainReport {
    /// k₁ > ã₁/β.
    pub k1_condition: bool,
    /// k₂ > ã₃/β.
    pub k2_condition: bool,
    /// Both eigenvalues of A₁ + BKᵀ in the open left half-plane.
    pub spectral: bool,
    pub eigenvalues: [Eigenvalue; 2],
    /// −max Re λ; positive when stable.
    pub margin: f64,
    pub k1_bound: f64,
    pub k2_bound: f64,
    /// True when every check passes.
    pub hurwitz: bool,
}

pub fn closed_loop_matrix(base: &Mat2, dc: &DerivedConstants, gains: &ControllerGains) -> Mat2 {
    let bk = outer(dc.b, gains.k());
    linalg::add(base, &bk)
}

pub fn validate_gains(gains: &ControllerGains, dc: &DerivedConstants) -> GainReport {
    let k1_bound = dc.a1_tilde / dc.beta;
    let k2_bound = dc.a3_tilde / dc.beta;
    let eigenvalues = linalg::eigenvalues_2x2(&closed_loop_matrix(&dc.a1, dc, gains));
    let max_re = eigenvalues[0].re.max(eigenvalues[1].re);
    let k1_condition = gains.k1 > k1_bound;
    let k2_condition = gains.k2 > k2_bound;
    let spectral = max_re < 0.0;
    GainReport {
        k1_condition,
        k2_condition,
        spectral,
        eigenvalues,
        margin: -max_re,
        k1_bound,
        k2_bound,
        hurwitz: k1_condition && k2_condition && spectral,
    }
}
