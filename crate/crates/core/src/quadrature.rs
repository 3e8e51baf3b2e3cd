//! Composite trapezoid on uniform grids and adaptive Simpson on intervals.

/// Composite trapezoid rule for samples `f` on a uniform grid with spacing `dx`.
pub fn trapezoid(f: &[f64], dx: f64) -> f64 {
    match f.len() {
        0 | 1 => 0.0,
        n => {
            let inner: f64 = f[1..n - 1].iter().sum();
            dx * (0.5 * (f[0] + f[n - 1]) + inner)
        }
    }
}

/// Trapezoid of the pointwise product `f·g`.
pub fn trapezoid_product(f: &[f64], g: &[f64], dx: f64) -> f64 {
    debug_assert_eq!(f.len(), g.len());
    let n = f.len();
    if n < 2 {
        return 0.0;
    }
    let mut acc = 0.5 * (f[0] * g[0] + f[n - 1] * g[n - 1]);
    for j in 1..n - 1 {
        acc += f[j] * g[j];
    }
    dx * acc
}

/// Squared L² norm `∫ f² dx` by the trapezoid rule.
pub fn l2_norm_squared(f: &[f64], dx: f64) -> f64 {
    trapezoid_product(f, f, dx)
}

/// Adaptive Simpson quadrature of `f` on `[a, b]` to relative tolerance `rel_tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let tol = rel_tol * libm::fabs(whole).max(f64::MIN_POSITIVE);
    simpson_step(&f, a, b, fa, fm, fb, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || libm::fabs(delta) <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_constant_is_exact() {
        let l: f64 = 3.5;
        let n = 17;
        let f = vec![1.0; n];
        let dx = l / (n - 1) as f64;
        assert!((trapezoid(&f, dx) - l).abs() < 1e-14);
        // ||1|| on [0, l] is sqrt(l)
        assert!((l2_norm_squared(&f, dx).sqrt() - l.sqrt()).abs() < 1e-14);
        assert_eq!(l2_norm_squared(&[0.0; 9], dx), 0.0);
    }

    #[test]
    fn trapezoid_is_second_order() {
        let err = |n: usize| {
            let dx = 1.0 / (n - 1) as f64;
            let f: Vec<f64> = (0..n).map(|j| (j as f64 * dx).exp()).collect();
            (trapezoid(&f, dx) - (1f64.exp() - 1.0)).abs()
        };
        let order = (err(33) / err(65)).log2();
        assert!(order > 1.95 && order < 2.05, "order {order}");
    }

    #[test]
    fn simpson_matches_log_antiderivative() {
        let v = adaptive_simpson(|s| 1.0 / (2.0 * s + 0.5), 0.0, 1.0, 1e-14);
        let exact = 0.5 * (2.5f64 / 0.5).ln();
        assert!((v - exact).abs() < 1e-13 * exact);
    }
}
