//! Physical parameters, closed-form derived constants, the steady state and the
//! reference-error coordinates.

use crate::error::{Error, Result};
use crate::linalg::{Mat2, Vec2};
use libm::{exp, fabs, sqrt};

/// Biological constants and targets, all in SI base units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Tubulin diffusivity (m²/s).
    pub diffusivity: f64,
    /// Advection velocity (m/s).
    pub advection: f64,
    /// Degradation rate (1/s).
    pub degradation: f64,
    /// Lumped growth rate r_g (m⁴/(mol·s)).
    pub growth_rate: f64,
    /// Microtubule reaction rate r̃_g (1/s).
    pub reaction_rate: f64,
    /// Equilibrium cone concentration c_∞ (mol/m³).
    pub c_inf: f64,
    /// Growth ratio l_c (m).
    pub growth_ratio: f64,
    /// Target length l_s (m).
    pub target_length: f64,
    /// Initial length l_0 (m).
    pub initial_length: f64,
    /// Initial profile as a multiple of c_∞.
    pub c0_scale: f64,
    /// Tabulated biological γ. Not used by any equation.
    pub gamma_bio: f64,
}

impl Default for PhysicalParams {
    /// The tabulated biological constants with l_s = 12 μm, l_0 = 1 μm and c_0 = 1.5 c_∞.
    fn default() -> Self {
        Self {
            diffusivity: 10e-12,
            advection: 1e-8,
            degradation: 5e-7,
            growth_rate: 1.783e-5,
            reaction_rate: 0.053,
            c_inf: 0.0119,
            growth_ratio: 4e-6,
            target_length: 12e-6,
            initial_length: 1e-6,
            c0_scale: 1.5,
            gamma_bio: 1e4,
        }
    }
}

impl PhysicalParams {
    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.diffusivity,
            self.advection,
            self.degradation,
            self.growth_rate,
            self.reaction_rate,
            self.c_inf,
            self.growth_ratio,
            self.target_length,
            self.initial_length,
            self.c0_scale,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite {
            return Err(Error::invalid("physical parameters must be finite"));
        }
        if self.diffusivity <= 0.0 {
            return Err(Error::invalid("physical.D > 0"));
        }
        if self.degradation <= 0.0 {
            return Err(Error::invalid("physical.g > 0"));
        }
        if self.growth_rate <= 0.0 {
            return Err(Error::invalid("physical.r_g > 0"));
        }
        if self.c_inf <= 0.0 {
            return Err(Error::invalid("physical.c_inf > 0"));
        }
        if self.growth_ratio <= 0.0 {
            return Err(Error::invalid("physical.l_c > 0"));
        }
        if !(self.initial_length > 0.0 && self.initial_length < self.target_length) {
            return Err(Error::invalid("0 < physical.l_0 < physical.l_s"));
        }
        Ok(())
    }
}

/// Quantities that follow in closed form from [`PhysicalParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedConstants {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub k_plus: f64,
    pub k_minus: f64,
    /// Linear growth-cone coefficient ã₁ (1/s).
    pub a1_tilde: f64,
    pub a2_tilde: f64,
    pub a3_tilde: f64,
    /// Coefficient ã of the growth-cone ODE as simulated, ã₁ + 2κc_∞.
    ///
    /// This is the value for which (c_eq, c_∞, l_s) is an equilibrium and whose
    /// error dynamics linearize to ã₁ with the remainder −κz₁².
    pub a_cone: f64,
    /// β = D/l_c (m/s).
    pub beta: f64,
    /// κ = r_g/l_c.
    pub kappa: f64,
    /// Nonlinear-system matrix A.
    pub a: Mat2,
    /// Linearized matrix A₁.
    pub a1: Mat2,
    /// Input vector B = [−β, 0]ᵀ.
    pub b: Vec2,
    /// Boundary coupling H = [1, −(a − g l_c)c_∞/D]ᵀ.
    pub h: Vec2,
    /// Steady soma input q_s*.
    pub q_s_star: f64,
}

pub fn derive_constants(p: &PhysicalParams) -> Result<DerivedConstants> {
    if !(p.diffusivity > 0.0) {
        return Err(Error::invalid("physical.D > 0"));
    }
    if !(p.degradation > 0.0) {
        return Err(Error::invalid("physical.g > 0"));
    }
    if !(p.growth_ratio > 0.0) {
        return Err(Error::invalid("physical.l_c > 0"));
    }
    let (d, a, g, lc, cinf) = (p.diffusivity, p.advection, p.degradation, p.growth_ratio, p.c_inf);
    let root = sqrt(a * a + 4.0 * d * g);
    let lambda_plus = (a + root) / (2.0 * d);
    let lambda_minus = (a - root) / (2.0 * d);
    let skew = (a - 2.0 * g * lc) / (2.0 * root);
    let k_plus = 0.5 + skew;
    let k_minus = 0.5 - skew;

    let a1_tilde = (a - p.growth_rate * cinf) / lc - g - p.reaction_rate;
    let beta = d / lc;
    let kappa = p.growth_rate / lc;
    let a2_tilde = cinf * (lambda_plus * lambda_plus * k_plus + lambda_minus * lambda_minus * k_minus);
    let a3_tilde = (a * a + d * g - a * g * lc) / (d * d);

    let mat_a = [[a1_tilde, -beta * a2_tilde], [p.growth_rate, 0.0]];
    let mat_a1 = [[a1_tilde, a3_tilde], [p.growth_rate, 0.0]];
    let b = [-beta, 0.0];
    let h = [1.0, -(a - g * lc) * cinf / d];

    let ls = p.target_length;
    let q_s_star = -cinf
        * (k_plus * (1.0 + lambda_plus) * exp(-lambda_plus * ls)
            + k_minus * (1.0 + lambda_minus) * exp(-lambda_minus * ls));

    Ok(DerivedConstants {
        lambda_plus,
        lambda_minus,
        k_plus,
        k_minus,
        a1_tilde,
        a2_tilde,
        a3_tilde,
        a_cone: a1_tilde + 2.0 * kappa * cinf,
        beta,
        kappa,
        a: mat_a,
        a1: mat_a1,
        b,
        h,
        q_s_star,
    })
}

/// Steady-state concentration c_eq(x).
pub fn steady_state_profile(x: f64, dc: &DerivedConstants, p: &PhysicalParams) -> f64 {
    let s = x - p.target_length;
    p.c_inf * (dc.k_plus * exp(dc.lambda_plus * s) + dc.k_minus * exp(dc.lambda_minus * s))
}

/// As [`steady_state_profile`], also reporting whether `x` lies outside `[0, l_s]`.
pub fn steady_state_profile_checked(x: f64, dc: &DerivedConstants, p: &PhysicalParams) -> (f64, bool) {
    let extrapolated = !(0.0..=p.target_length).contains(&x);
    (steady_state_profile(x, dc, p), extrapolated)
}

/// Spatial derivative c_eq′(x).
pub fn steady_state_slope(x: f64, dc: &DerivedConstants, p: &PhysicalParams) -> f64 {
    let s = x - p.target_length;
    p.c_inf
        * (dc.k_plus * dc.lambda_plus * exp(dc.lambda_plus * s)
            + dc.k_minus * dc.lambda_minus * exp(dc.lambda_minus * s))
}

pub fn steady_state_input(dc: &DerivedConstants) -> f64 {
    dc.q_s_star
}

/// Samples of a profile on a uniform grid over the physical interval `[0, l]`.
pub fn grid_positions(l: f64, n_nodes: usize) -> impl Iterator<Item = f64> {
    let dx = l / (n_nodes - 1) as f64;
    (0..n_nodes).map(move |j| j as f64 * dx)
}

/// Writes `u = c − c_eq` on the grid over `[0, l]` into `u` and returns `X`.
pub fn to_error_coords_into(
    c_profile: &[f64],
    c_c: f64,
    l: f64,
    dc: &DerivedConstants,
    p: &PhysicalParams,
    u: &mut [f64],
) -> Vec2 {
    debug_assert_eq!(c_profile.len(), u.len());
    for ((uj, cj), x) in u.iter_mut().zip(c_profile).zip(grid_positions(l, c_profile.len())) {
        *uj = cj - steady_state_profile(x, dc, p);
    }
    [c_c - p.c_inf, l - p.target_length]
}

/// Error coordinates `(u, X)` of a state sampled uniformly on `[0, l]`.
pub fn to_error_coords(
    c_profile: &[f64],
    c_c: f64,
    l: f64,
    dc: &DerivedConstants,
    p: &PhysicalParams,
) -> (alloc::vec::Vec<f64>, Vec2) {
    let mut u = alloc::vec![0.0; c_profile.len()];
    let x = to_error_coords_into(c_profile, c_c, l, dc, p, &mut u);
    (u, x)
}

/// Inverse of [`to_error_coords`]: returns `(c, c_c, l)`.
pub fn from_error_coords(
    u: &[f64],
    x: Vec2,
    dc: &DerivedConstants,
    p: &PhysicalParams,
) -> (alloc::vec::Vec<f64>, f64, f64) {
    let l = x[1] + p.target_length;
    let c = u.iter().zip(grid_positions(l, u.len())).map(|(uj, xj)| uj + steady_state_profile(xj, dc, p)).collect();
    (c, x[0] + p.c_inf, l)
}

/// Values of the ODE nonlinearity f(X) and the boundary map h(X).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlinearTerms {
    pub f: Vec2,
    pub h: f64,
}

const MAX_EXPONENT: f64 = 700.0;

fn guarded_exp(arg: f64) -> Result<f64> {
    if !(fabs(arg) <= MAX_EXPONENT) {
        return Err(Error::RunawayLength { exponent: arg });
    }
    Ok(exp(arg))
}

/// f(X) = [−κz₁² + βf₁(z₂), 0]ᵀ and h(X) = z₁ + h̃(z₂).
pub fn nonlinear_ode_terms(x: Vec2, dc: &DerivedConstants, p: &PhysicalParams) -> Result<NonlinearTerms> {
    let [z1, z2] = x;
    let ep = guarded_exp(dc.lambda_plus * z2)?;
    let em = guarded_exp(dc.lambda_minus * z2)?;
    let cinf = p.c_inf;
    let f1 = -cinf * (dc.k_plus * dc.lambda_plus * ep + dc.k_minus * dc.lambda_minus * em)
        + dc.a2_tilde * z2
        + cinf * (p.advection - p.degradation * p.growth_ratio) / p.diffusivity;
    let h_tilde = cinf * (1.0 - dc.k_plus * ep - dc.k_minus * em);
    Ok(NonlinearTerms { f: [-dc.kappa * z1 * z1 + dc.beta * f1, 0.0], h: z1 + h_tilde })
}

/// Right side of the growth-cone ODE, ã c_c − β c_x(l) − κ c_c² + c_∞ r̃_g.
pub fn cone_rate(c_c: f64, slope_at_tip: f64, dc: &DerivedConstants, p: &PhysicalParams) -> f64 {
    dc.a_cone * c_c - dc.beta * slope_at_tip - dc.kappa * c_c * c_c + p.c_inf * p.reaction_rate
}

/// Right side of the length ODE, r_g (c_c − c_∞).
pub fn length_rate(c_c: f64, p: &PhysicalParams) -> f64 {
    p.growth_rate * (c_c - p.c_inf)
}
