//! Fubini-Study and hyperbolic geometry of state spaces.
//!
//! All Hermitian metrics use the convention `ds² = 2·Re Σ g_{ij̄} dζ^i dζ̄^j`,
//! so `g_{ij̄} = ½ ∂ᵢ∂_j̄ K` for a Kähler potential `K`. Comparisons between
//! routes are made on [`MetricTensor::real_form`], the real quadratic form
//! on `(dx¹, dy¹, dx², dy², …)`, never on raw entries.

pub mod bergman;
pub mod diff;
pub mod identity;
pub mod kahler;
pub mod pullback;
pub mod quadrature;
pub mod verify;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::projective::{fidelity, StateVector};

pub use bergman::{bergman_basis, bergman_kernel, bergman_metric, KernelMode};
pub use identity::resolution_of_identity_residual;
pub use kahler::{fs_potential, hyperbolic_potential, kahler_metric, scalar_curvature};
pub use pullback::{pullback_hermitian, pullback_metric};
pub use verify::{
    verify_flatness, verify_indefinite_scaling, verify_scaling, verify_su11_metric,
    VerificationReport, VerifyOptions,
};

/// Relative tolerance for the Hermitian check in [`MetricTensor::new`].
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Hermitian `k×k` matrix `g_{ij̄}` with `ds² = 2·Re Σ g_{ij̄} dζ^i dζ̄^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricTensor {
    g: DMatrix<Complex64>,
}

impl MetricTensor {
    /// Wraps `g`, rejecting non-square, non-finite or non-Hermitian input.
    /// The stored matrix is symmetrised to remove rounding asymmetry.
    pub fn new(g: DMatrix<Complex64>) -> Result<Self> {
        if g.nrows() != g.ncols() || g.nrows() == 0 {
            return Err(Error::usage(format!(
                "metric must be square and non-empty, got {}x{}",
                g.nrows(),
                g.ncols()
            )));
        }
        if g.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("metric entries".into()));
        }
        let scale = g
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        let adjoint = g.adjoint();
        let skew = (&g - &adjoint).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if skew > HERMITIAN_TOL * scale {
            return Err(Error::Degenerate(format!(
                "metric is not Hermitian (skew {skew:e})"
            )));
        }
        Ok(MetricTensor {
            g: (&g + adjoint) * Complex64::new(0.5, 0.0),
        })
    }

    pub(crate) fn from_hermitian_unchecked(g: DMatrix<Complex64>) -> Self {
        MetricTensor { g }
    }

    pub fn dim(&self) -> usize {
        self.g.nrows()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.g[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.g
    }

    pub fn scaled(&self, factor: f64) -> MetricTensor {
        MetricTensor {
            g: &self.g * Complex64::new(factor, 0.0),
        }
    }

    /// `ds²` along the complex displacement `dζ`.
    pub fn line_element(&self, dzeta: &[Complex64]) -> Result<f64> {
        if dzeta.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: dzeta.len(),
            });
        }
        let mut sum = Complex64::new(0.0, 0.0);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                sum += self.g[(i, j)] * dzeta[i] * dzeta[j].conj();
            }
        }
        Ok(2.0 * sum.re)
    }

    /// Real symmetric `2k×2k` form on `(dx¹, dy¹, …)`. With `g = A + iB`,
    /// block `(i, j)` is `2·[[Aᵢⱼ, Bᵢⱼ], [−Bᵢⱼ, Aᵢⱼ]]`.
    pub fn real_form(&self) -> DMatrix<f64> {
        let k = self.dim();
        let mut out = DMatrix::zeros(2 * k, 2 * k);
        for i in 0..k {
            for j in 0..k {
                let z = self.g[(i, j)];
                out[(2 * i, 2 * j)] = 2.0 * z.re;
                out[(2 * i + 1, 2 * j + 1)] = 2.0 * z.re;
                out[(2 * i, 2 * j + 1)] = 2.0 * z.im;
                out[(2 * i + 1, 2 * j)] = -2.0 * z.im;
            }
        }
        out
    }

    /// `det g`, real for Hermitian `g`.
    pub fn determinant(&self) -> f64 {
        self.g.determinant().re
    }

    pub fn inverse(&self) -> Result<DMatrix<Complex64>> {
        self.g
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Degenerate("singular metric".into()))
    }
}

impl Serialize for MetricTensor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = |part: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..self.dim())
                .map(|i| (0..self.dim()).map(|j| part(&self.g[(i, j)])).collect())
                .collect()
        };
        let mut s = serializer.serialize_struct("MetricTensor", 4)?;
        s.serialize_field("dim", &self.dim())?;
        s.serialize_field("re", &rows(|z| z.re))?;
        s.serialize_field("im", &rows(|z| z.im))?;
        s.serialize_field("convention", "ds^2 = 2 Re sum g_ij dz^i conj(dz^j)")?;
        s.end()
    }
}

/// Fubini-Study distance `2·arccos √(|⟨v,w⟩|²/(⟨v,v⟩⟨w,w⟩))`, in `[0, π]`.
pub fn fs_distance(v: &StateVector, w: &StateVector) -> Result<f64> {
    if v.len() != w.len() {
        return Err(Error::DimensionMismatch {
            expected: v.len(),
            actual: w.len(),
        });
    }
    if v.is_zero() || w.is_zero() {
        return Err(Error::usage("Fubini-Study distance of a zero vector"));
    }
    Ok(2.0 * fidelity(v, w).sqrt().acos())
}

fn hermitian_chart_metric(zeta: &[Complex64], curvature_sign: f64) -> MetricTensor {
    let k = zeta.len();
    let r2: f64 = zeta.iter().map(|z| z.norm_sqr()).sum();
    let base = 1.0 + curvature_sign * r2;
    let g = DMatrix::from_fn(k, k, |i, j| {
        let delta = if i == j { base } else { 0.0 };
        (Complex64::new(delta, 0.0) - zeta[i].conj() * zeta[j] * curvature_sign)
            * (2.0 / (base * base))
    });
    MetricTensor::from_hermitian_unchecked(g)
}

/// Fubini-Study metric of `CP^k` on the standard chart,
/// `ds² = 4[(1+ζ̄ζ)dζ̄dζ − (ζ̄dζ)(ζdζ̄)]/(1+ζ̄ζ)²`.
pub fn fs_metric_chart(zeta: &[Complex64]) -> Result<MetricTensor> {
    if zeta.is_empty() {
        return Err(Error::usage("chart point needs at least one coordinate"));
    }
    Ok(hermitian_chart_metric(zeta, 1.0))
}

/// Metric of `CH^k` on the unit ball,
/// `ds² = 4[(1−ζ̄ζ)dζ̄dζ + (ζ̄dζ)(ζdζ̄)]/(1−ζ̄ζ)²`.
pub fn hyperbolic_metric_chart(zeta: &[Complex64]) -> Result<MetricTensor> {
    if zeta.is_empty() {
        return Err(Error::usage("chart point needs at least one coordinate"));
    }
    let r2: f64 = zeta.iter().map(|z| z.norm_sqr()).sum();
    if !(r2 < 1.0) {
        return Err(Error::Domain(format!(
            "hyperbolic chart requires Σ|ζ|² < 1, got {r2}"
        )));
    }
    Ok(hermitian_chart_metric(zeta, -1.0))
}
