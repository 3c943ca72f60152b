//! Bergman space of the unit disk: orthonormal basis, reproducing kernel and
//! the metric it induces.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::diff::real_hessian;
use super::quadrature::DiskRule;
use crate::error::{Error, Result};

/// `φₙ(ζ) = √(n/π) ζ^{n−1}`, orthonormal in `L²(D, dx dy)`.
pub fn bergman_basis(n: u32, zeta: Complex64) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::usage("Bergman basis index starts at 1"));
    }
    Ok(zeta.powu(n - 1) * (f64::from(n) / PI).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelMode {
    /// `1/(π(1−ζχ̄)²)`.
    ClosedForm,
    /// `Σₙ φₙ(ζ) conj(φₙ(χ))` over the first `terms` basis functions.
    Series(u32),
}

fn check_disk(z: Complex64, name: &str) -> Result<()> {
    if !(z.norm_sqr() < 1.0) {
        return Err(Error::Domain(format!(
            "{name} = {z} must lie in the open unit disk"
        )));
    }
    Ok(())
}

/// Bergman kernel `K_B(ζ, χ̄)`.
pub fn bergman_kernel(zeta: Complex64, chi: Complex64, mode: KernelMode) -> Result<Complex64> {
    check_disk(zeta, "zeta")?;
    check_disk(chi, "chi")?;
    Ok(match mode {
        KernelMode::ClosedForm => {
            let d = Complex64::new(1.0, 0.0) - zeta * chi.conj();
            (d * d * PI).inv()
        }
        KernelMode::Series(terms) => {
            let w = zeta * chi.conj();
            let mut power = Complex64::new(1.0, 0.0);
            let mut sum = Complex64::new(0.0, 0.0);
            for n in 1..=terms {
                sum += power * f64::from(n);
                power *= w;
            }
            sum / PI
        }
    })
}

/// Bound on `|closed form − series(terms)|`:
/// `(1/π) Σ_{n>terms} n|w|^{n−1}` with `w = ζχ̄`.
pub fn series_tail_bound(zeta: Complex64, chi: Complex64, terms: u32) -> f64 {
    let r = (zeta * chi.conj()).norm();
    let t = f64::from(terms);
    // Σ_{n>T} n rⁿ⁻¹ = r^T ((T+1) − T r)/(1−r)².
    r.powf(t) * ((t + 1.0) - t * r) / ((1.0 - r).powi(2) * PI)
}

/// `∂²/∂ζ̄∂ζ ln K_B(ζ, ζ̄)` by finite differences (a quarter of the Laplacian).
/// Analytically `2/(1−|ζ|²)²`, half of the `4/(1−|ζ|²)²` coefficient of the
/// hyperbolic line element.
pub fn bergman_metric(zeta: Complex64, step: f64) -> Result<f64> {
    check_disk(zeta, "zeta")?;
    let log_kernel = |x: &[f64]| -> Result<f64> {
        let z = Complex64::new(x[0], x[1]);
        check_disk(z, "zeta")?;
        Ok(bergman_kernel(z, z, KernelMode::ClosedForm)?.re.ln())
    };
    let hess = real_hessian(&log_kernel, &[zeta.re, zeta.im], step)?;
    Ok(0.25 * (hess[(0, 0)] + hess[(1, 1)]))
}

/// Gram matrix `⟨φₙ, φₘ⟩`, `1 <= n, m <= nmax`, by disk quadrature.
pub fn bergman_gram(nmax: u32, rule: &DiskRule) -> Result<DMatrix<Complex64>> {
    let size = nmax as usize;
    let mut gram = DMatrix::zeros(size, size);
    for n in 1..=nmax {
        for m in n..=nmax {
            let value = rule.integrate(|z| {
                let a = bergman_basis(n, z).expect("n >= 1");
                let b = bergman_basis(m, z).expect("m >= 1");
                a.conj() * b
            });
            gram[(n as usize - 1, m as usize - 1)] = value;
            gram[(m as usize - 1, n as usize - 1)] = value.conj();
        }
    }
    Ok(gram)
}

/// `∫∫_D K_B(ζ, χ̄) g(χ) dx dy`, which reproduces `g(ζ)` for holomorphic
/// square-integrable `g`.
pub fn bergman_reproduce<G>(g: G, zeta: Complex64, rule: &DiskRule) -> Result<Complex64>
where
    G: Fn(Complex64) -> Complex64,
{
    check_disk(zeta, "zeta")?;
    Ok(rule.integrate(|chi| {
        let d = Complex64::new(1.0, 0.0) - zeta * chi.conj();
        g(chi) / (d * d * PI)
    }))
}
