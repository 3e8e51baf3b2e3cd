//! Small dense linear algebra on fixed-size arrays.
//!
//! Matrices are row-major `[[f64; N]; N]`. Everything here is allocation-free.
//! [`mat_exp`] is a Padé scaling-and-squaring exponential (degrees 3–13 chosen
//! from the 1-norm with the standard backward-error thresholds).

use crate::error::{Error, Result};

pub type Mat<const N: usize> = [[f64; N]; N];
pub type Mat2 = Mat<2>;
pub type Vec2 = [f64; 2];

pub const fn identity<const N: usize>() -> Mat<N> {
    let mut m = [[0.0; N]; N];
    let mut i = 0;
    while i < N {
        m[i][i] = 1.0;
        i += 1;
    }
    m
}

pub fn matmul<const N: usize>(a: &Mat<N>, b: &Mat<N>) -> Mat<N> {
    let mut c = [[0.0; N]; N];
    for i in 0..N {
        for k in 0..N {
            let aik = a[i][k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..N {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

pub fn add<const N: usize>(a: &Mat<N>, b: &Mat<N>) -> Mat<N> {
    let mut c = *a;
    for i in 0..N {
        for j in 0..N {
            c[i][j] += b[i][j];
        }
    }
    c
}

pub fn sub<const N: usize>(a: &Mat<N>, b: &Mat<N>) -> Mat<N> {
    let mut c = *a;
    for i in 0..N {
        for j in 0..N {
            c[i][j] -= b[i][j];
        }
    }
    c
}

pub fn scale<const N: usize>(a: &Mat<N>, s: f64) -> Mat<N> {
    let mut c = *a;
    for row in c.iter_mut() {
        for v in row.iter_mut() {
            *v *= s;
        }
    }
    c
}

pub fn transpose<const N: usize>(a: &Mat<N>) -> Mat<N> {
    let mut t = [[0.0; N]; N];
    for i in 0..N {
        for j in 0..N {
            t[j][i] = a[i][j];
        }
    }
    t
}

/// Row vector times matrix.
pub fn row_mul<const N: usize>(v: &[f64; N], a: &Mat<N>) -> [f64; N] {
    let mut out = [0.0; N];
    for k in 0..N {
        let vk = v[k];
        for j in 0..N {
            out[j] += vk * a[k][j];
        }
    }
    out
}

pub fn mat_vec<const N: usize>(a: &Mat<N>, v: &[f64; N]) -> [f64; N] {
    let mut out = [0.0; N];
    for i in 0..N {
        out[i] = (0..N).map(|k| a[i][k] * v[k]).sum();
    }
    out
}

/// Induced 1-norm (max column sum).
pub fn norm1<const N: usize>(a: &Mat<N>) -> f64 {
    (0..N).map(|j| (0..N).map(|i| libm::fabs(a[i][j])).sum::<f64>()).fold(0.0, f64::max)
}

/// Frobenius norm.
pub fn norm_fro<const N: usize>(a: &Mat<N>) -> f64 {
    libm::sqrt(a.iter().flatten().map(|v| v * v).sum())
}

pub fn is_finite<const N: usize>(a: &Mat<N>) -> bool {
    a.iter().flatten().all(|v| v.is_finite())
}

/// Solves `A X = B` for `X` by LU with partial pivoting.
pub fn solve<const N: usize>(a: &Mat<N>, b: &Mat<N>) -> Result<Mat<N>> {
    let mut lu = *a;
    let mut x = *b;
    for col in 0..N {
        let pivot = (col..N).max_by(|&i, &j| libm::fabs(lu[i][col]).total_cmp(&libm::fabs(lu[j][col]))).unwrap_or(col);
        if lu[pivot][col] == 0.0 || !lu[pivot][col].is_finite() {
            return Err(Error::Singular);
        }
        lu.swap(col, pivot);
        x.swap(col, pivot);
        for row in col + 1..N {
            let f = lu[row][col] / lu[col][col];
            if f == 0.0 {
                continue;
            }
            for k in col..N {
                lu[row][k] -= f * lu[col][k];
            }
            for k in 0..N {
                x[row][k] -= f * x[col][k];
            }
        }
    }
    for col in (0..N).rev() {
        for k in 0..N {
            let mut acc = x[col][k];
            for j in col + 1..N {
                acc -= lu[col][j] * x[j][k];
            }
            x[col][k] = acc / lu[col][col];
        }
    }
    Ok(x)
}

/// Solves `A x = b` for a single right-hand side.
pub fn solve_vec<const N: usize>(a: &Mat<N>, b: &[f64; N]) -> Result<[f64; N]> {
    let mut rhs = [[0.0; N]; N];
    for i in 0..N {
        rhs[i][0] = b[i];
    }
    let x = solve(a, &rhs)?;
    let mut out = [0.0; N];
    for i in 0..N {
        out[i] = x[i][0];
    }
    Ok(out)
}

/// A complex eigenvalue `re + i·im`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalue {
    pub re: f64,
    pub im: f64,
}

/// Eigenvalues of a real 2×2 matrix from its characteristic polynomial.
pub fn eigenvalues_2x2(a: &Mat2) -> [Eigenvalue; 2] {
    let tr = a[0][0] + a[1][1];
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let half = 0.5 * tr;
    let disc = half * half - det;
    if disc >= 0.0 {
        let r = libm::sqrt(disc);
        // avoid cancellation in the smaller root
        let big = if half >= 0.0 { half + r } else { half - r };
        let small = if big != 0.0 { det / big } else { 0.0 };
        let (lo, hi) = if big < small { (big, small) } else { (small, big) };
        [Eigenvalue { re: lo, im: 0.0 }, Eigenvalue { re: hi, im: 0.0 }]
    } else {
        let r = libm::sqrt(-disc);
        [Eigenvalue { re: half, im: -r }, Eigenvalue { re: half, im: r }]
    }
}

const PADE3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const PADE9: [f64; 10] =
    [17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0, 2162160.0, 110880.0, 3960.0, 90.0, 1.0];
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

// 1-norm thresholds below which the [m/m] approximant has backward error ≤ 2^-53.
const THETA3: f64 = 1.495585217958292e-2;
const THETA5: f64 = 2.539398330063230e-1;
const THETA7: f64 = 9.504178996162932e-1;
const THETA9: f64 = 2.097847961257068e0;
const THETA13: f64 = 5.371920351148152e0;

/// Matrix exponential by scaling and squaring with a diagonal Padé approximant.
pub fn mat_exp<const N: usize>(m: &Mat<N>) -> Result<Mat<N>> {
    if !is_finite(m) {
        return Err(Error::NonFiniteMatrix);
    }
    let norm = norm1(m);
    let id = identity::<N>();
    if norm == 0.0 {
        return Ok(id);
    }
    let a2 = matmul(m, m);
    let low = |coef: &[f64]| -> Result<Mat<N>> {
        // odd part U = A·Σ c_{2k+1} A^{2k}, even part V = Σ c_{2k} A^{2k}
        let mut pow = id;
        let mut u = [[0.0; N]; N];
        let mut v = [[0.0; N]; N];
        let mut k = 0;
        while 2 * k < coef.len() {
            v = add(&v, &scale(&pow, coef[2 * k]));
            if 2 * k + 1 < coef.len() {
                u = add(&u, &scale(&pow, coef[2 * k + 1]));
            }
            pow = matmul(&pow, &a2);
            k += 1;
        }
        let u = matmul(m, &u);
        solve(&sub(&v, &u), &add(&v, &u))
    };
    if norm <= THETA3 {
        return low(&PADE3);
    }
    if norm <= THETA5 {
        return low(&PADE5);
    }
    if norm <= THETA7 {
        return low(&PADE7);
    }
    if norm <= THETA9 {
        return low(&PADE9);
    }
    let s = if norm > THETA13 { libm::ceil(libm::log2(norm / THETA13)).max(0.0) as i32 } else { 0 };
    let a = scale(m, libm::ldexp(1.0, -s));
    let a2 = matmul(&a, &a);
    let a4 = matmul(&a2, &a2);
    let a6 = matmul(&a4, &a2);
    let b = &PADE13;
    let lin = |c0: f64, c2: f64, c4: f64, c6: f64, with_id: bool| {
        let mut r = add(&add(&scale(&a6, c6), &scale(&a4, c4)), &scale(&a2, c2));
        if with_id {
            r = add(&r, &scale(&id, c0));
        }
        r
    };
    let u_inner = matmul(&a6, &lin(0.0, b[9], b[11], b[13], false));
    let u = matmul(&a, &add(&u_inner, &lin(b[1], b[3], b[5], b[7], true)));
    let v_inner = matmul(&a6, &lin(0.0, b[8], b[10], b[12], false));
    let v = add(&v_inner, &lin(b[0], b[2], b[4], b[6], true));
    let mut r = solve(&sub(&v, &u), &add(&v, &u))?;
    for _ in 0..s {
        r = matmul(&r, &r);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Scaled Taylor series: scale to norm ≤ 1/2, sum 40 terms, square back.
    fn series_exp<const N: usize>(m: &Mat<N>) -> Mat<N> {
        let norm = norm1(m);
        let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
        let a = scale(m, 2f64.powi(-s));
        let mut term = identity::<N>();
        let mut sum = identity::<N>();
        for k in 1..40 {
            term = scale(&matmul(&term, &a), 1.0 / k as f64);
            sum = add(&sum, &term);
        }
        for _ in 0..s {
            sum = matmul(&sum, &sum);
        }
        sum
    }

    fn rel_err<const N: usize>(a: &Mat<N>, b: &Mat<N>) -> f64 {
        norm_fro(&sub(a, b)) / norm_fro(b)
    }

    fn random_mat(rng: &mut ChaCha8Rng, max_norm: f64) -> Mat<4> {
        let mut m = [[0.0; 4]; 4];
        for row in m.iter_mut() {
            for v in row.iter_mut() {
                *v = rng.gen_range(-1.0..1.0);
            }
        }
        let target = rng.gen_range(0.01..max_norm);
        scale(&m, target / norm1(&m))
    }

    #[test]
    fn exp_of_zero_is_identity() {
        assert_eq!(mat_exp(&[[0.0; 4]; 4]).unwrap(), identity::<4>());
    }

    #[test]
    fn exp_of_diagonal() {
        let d = [0.3, -2.0, 7.5, -11.0];
        let mut m = [[0.0; 4]; 4];
        for i in 0..4 {
            m[i][i] = d[i];
        }
        let e = mat_exp(&m).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { d[i].exp() } else { 0.0 };
                assert!((e[i][j] - want).abs() <= 1e-13 * want.abs().max(1.0), "{i},{j}");
            }
        }
    }

    #[test]
    fn rejects_non_finite() {
        let mut m = identity::<3>();
        m[1][2] = f64::NAN;
        assert_eq!(mat_exp(&m), Err(Error::NonFiniteMatrix));
    }

    #[test]
    fn agrees_with_series_oracle_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let m = random_mat(&mut rng, 10.0);
            let err = rel_err(&mat_exp(&m).unwrap(), &series_exp(&m));
            assert!(err < 1e-10, "err {err:e}");
        }
    }

    #[test]
    fn semigroup_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let m = random_mat(&mut rng, 10.0);
            let s: f64 = rng.gen_range(0.0..1.0);
            let t: f64 = rng.gen_range(0.0..1.0);
            let lhs = mat_exp(&scale(&m, s + t)).unwrap();
            let rhs = matmul(&mat_exp(&scale(&m, s)).unwrap(), &mat_exp(&scale(&m, t)).unwrap());
            assert!(rel_err(&lhs, &rhs) < 1e-9);
        }
    }

    #[test]
    fn solve_recovers_known_solution() {
        let a = [[4.0, -2.0, 1.0], [3.0, 6.0, -4.0], [2.0, 1.0, 8.0]];
        let x = [1.5, -0.25, 2.0];
        let b = mat_vec(&a, &x);
        let got = solve_vec(&a, &b).unwrap();
        for i in 0..3 {
            assert!((got[i] - x[i]).abs() < 1e-14);
        }
        assert_eq!(solve(&[[1.0, 2.0], [2.0, 4.0]], &identity()), Err(Error::Singular));
    }

    #[test]
    fn eigenvalues_real_and_complex() {
        let e = eigenvalues_2x2(&[[-1.0, 0.0], [0.0, -2.0]]);
        assert_eq!((e[0].re, e[1].re), (-2.0, -1.0));
        let e = eigenvalues_2x2(&[[0.0, 1.0], [-4.0, 0.0]]);
        assert!(e[0].re.abs() < 1e-15 && (e[1].im - 2.0).abs() < 1e-15);
    }
}
