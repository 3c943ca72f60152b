//! Central finite differences with one level of Richardson extrapolation.
//!
//! Each stencil is evaluated at `h` and `h/2`; the leading `O(h²)` error is
//! cancelled by `(4·D(h/2) − D(h))/3`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default step for first derivatives (Jacobians, pullbacks).
pub const FIRST_DERIVATIVE_STEP: f64 = 1e-4;
/// Default step for second derivatives (Kähler potentials, curvature).
pub const SECOND_DERIVATIVE_STEP: f64 = 1e-3;

/// Evaluates the function at the base point shifted along the given axes.
type Probe<'a> = &'a mut dyn FnMut(&[(usize, f64)]) -> Result<f64>;

fn richardson<T>(coarse: T, fine: T) -> T
where
    T: std::ops::Mul<f64, Output = T> + std::ops::Sub<Output = T>,
{
    (fine * 4.0 - coarse) * (1.0 / 3.0)
}

pub(crate) fn check_step(step: f64) -> Result<()> {
    if step.is_finite() && step > 0.0 {
        Ok(())
    } else {
        Err(Error::usage(format!(
            "finite-difference step must be positive, got {step}"
        )))
    }
}

/// Jacobian columns `∂f/∂xₐ` of a map `R^m → C^n`.
pub fn jacobian<F>(f: &F, x: &[f64], step: f64) -> Result<Vec<Vec<Complex64>>>
where
    F: Fn(&[f64]) -> Result<Vec<Complex64>> + ?Sized,
{
    check_step(step)?;
    let mut point = x.to_vec();
    let mut central = |a: usize, h: f64| -> Result<Vec<Complex64>> {
        point[a] = x[a] + h;
        let plus = f(&point)?;
        point[a] = x[a] - h;
        let minus = f(&point)?;
        point[a] = x[a];
        if plus.len() != minus.len() {
            return Err(Error::usage("map changed output length between samples"));
        }
        Ok(plus
            .iter()
            .zip(&minus)
            .map(|(p, m)| (p - m) / (2.0 * h))
            .collect())
    };
    (0..x.len())
        .map(|a| {
            let coarse = central(a, step)?;
            let fine = central(a, 0.5 * step)?;
            Ok(coarse
                .into_iter()
                .zip(fine)
                .map(|(c, f)| richardson(c, f))
                .collect())
        })
        .collect()
}

/// Real Hessian of `f: R^n → R`.
pub fn real_hessian<F>(f: &F, x: &[f64], step: f64) -> Result<DMatrix<f64>>
where
    F: Fn(&[f64]) -> Result<f64> + ?Sized,
{
    check_step(step)?;
    let n = x.len();
    let f0 = finite(f(x)?)?;
    let mut point = x.to_vec();
    let mut eval = |shifts: &[(usize, f64)]| -> Result<f64> {
        for &(i, d) in shifts {
            point[i] += d;
        }
        let value = f(&point);
        point.copy_from_slice(x);
        finite(value?)
    };
    let mut out = DMatrix::zeros(n, n);
    for i in 0..n {
        let diag = |h: f64, eval: Probe<'_>| -> Result<f64> {
            Ok((eval(&[(i, h)])? - 2.0 * f0 + eval(&[(i, -h)])?) / (h * h))
        };
        let coarse = diag(step, &mut eval)?;
        let fine = diag(0.5 * step, &mut eval)?;
        out[(i, i)] = richardson(coarse, fine);
        for j in (i + 1)..n {
            let mixed = |h: f64, eval: Probe<'_>| -> Result<f64> {
                let pp = eval(&[(i, h), (j, h)])?;
                let pm = eval(&[(i, h), (j, -h)])?;
                let mp = eval(&[(i, -h), (j, h)])?;
                let mm = eval(&[(i, -h), (j, -h)])?;
                Ok((pp - pm - mp + mm) / (4.0 * h * h))
            };
            let coarse = mixed(step, &mut eval)?;
            let fine = mixed(0.5 * step, &mut eval)?;
            let v = richardson(coarse, fine);
            out[(i, j)] = v;
            out[(j, i)] = v;
        }
    }
    Ok(out)
}

fn finite(v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(
            "function evaluation during differentiation".into(),
        ))
    }
}

/// Splits complex coordinates into `(x₁, y₁, x₂, y₂, …)`.
pub fn to_real(zeta: &[Complex64]) -> Vec<f64> {
    zeta.iter().flat_map(|z| [z.re, z.im]).collect()
}

pub fn from_real(x: &[f64]) -> Vec<Complex64> {
    x.chunks_exact(2)
        .map(|c| Complex64::new(c[0], c[1]))
        .collect()
}

/// `∂ᵢ∂_j̄ f` of a real function of complex coordinates, from the real Hessian:
/// `¼[f_{xᵢxⱼ} + f_{yᵢyⱼ} + i(f_{xᵢyⱼ} − f_{yᵢxⱼ})]`.
pub fn complex_hessian<F>(f: &F, zeta: &[Complex64], step: f64) -> Result<DMatrix<Complex64>>
where
    F: Fn(&[Complex64]) -> Result<f64> + ?Sized,
{
    let real = real_hessian(&|x: &[f64]| f(&from_real(x)), &to_real(zeta), step)?;
    let k = zeta.len();
    Ok(DMatrix::from_fn(k, k, |i, j| {
        let (xi, yi, xj, yj) = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1);
        Complex64::new(
            0.25 * (real[(xi, xj)] + real[(yi, yj)]),
            0.25 * (real[(xi, yj)] - real[(yi, xj)]),
        )
    }))
}
