//! Metrics from Kähler potentials and scalar curvature of Hermitian metric
//! fields.

use num_complex::Complex64;

use super::diff::complex_hessian;
use super::MetricTensor;
use crate::error::{Error, Result};

/// `K = 4·scale·ln(1 + ζ̄ζ)`: the Fubini-Study potential, and for
/// `scale = n` the potential of the degree-`n` Veronese image.
pub fn fs_potential(scale: f64) -> impl Fn(&[Complex64]) -> f64 + Sync {
    move |zeta| 4.0 * scale * (1.0 + zeta.iter().map(|z| z.norm_sqr()).sum::<f64>()).ln()
}

/// `K = −4 ln(1 − ζ̄ζ)`, the potential of the positive metric on `CH^k`.
/// The printed form `4 ln(1 − ζ̄ζ)` has the opposite overall sign; the metric
/// is defined as minus its complex Hessian. NaN outside the ball.
pub fn hyperbolic_potential(scale: f64) -> impl Fn(&[Complex64]) -> f64 + Sync {
    move |zeta| -4.0 * scale * (1.0 - zeta.iter().map(|z| z.norm_sqr()).sum::<f64>()).ln()
}

/// `g_{ij̄} = ½ ∂ᵢ∂_j̄ K` by central differences in real and imaginary parts.
pub fn kahler_metric<K>(potential: &K, zeta: &[Complex64], step: f64) -> Result<MetricTensor>
where
    K: Fn(&[Complex64]) -> f64 + ?Sized,
{
    if zeta.is_empty() {
        return Err(Error::usage("chart point needs at least one coordinate"));
    }
    let hess = complex_hessian(&|z: &[Complex64]| Ok(potential(z)), zeta, step)?;
    MetricTensor::new(hess * Complex64::new(0.5, 0.0))
}

/// Scalar curvature `R = −2 g^{ij̄} ∂ᵢ∂_j̄ ln det g` of a Hermitian metric field.
///
/// For `ds² = λ|dζ|²` in one complex dimension this is `−(4/λ)∂∂̄ ln λ`, twice
/// the Gaussian curvature: the unit sphere has `R = 2` and `CP^k` with the
/// Fubini-Study metric has `R = k(k+1)`.
pub fn scalar_curvature<F>(metric_field: &F, zeta: &[Complex64], step: f64) -> Result<f64>
where
    F: Fn(&[Complex64]) -> Result<MetricTensor> + ?Sized,
{
    let g = metric_field(zeta)?;
    if g.dim() != zeta.len() {
        return Err(Error::DimensionMismatch {
            expected: zeta.len(),
            actual: g.dim(),
        });
    }
    let inverse = g.inverse()?;
    let log_det = |z: &[Complex64]| -> Result<f64> {
        let det = metric_field(z)?.determinant();
        if !(det > 0.0) {
            return Err(Error::Degenerate(format!(
                "metric determinant {det} is not positive"
            )));
        }
        Ok(det.ln())
    };
    let ricci = complex_hessian(&log_det, zeta, step)?;
    Ok(-2.0 * (inverse * ricci).trace().re)
}
