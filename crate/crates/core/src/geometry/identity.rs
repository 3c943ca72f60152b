//! Resolution of the identity by SU(2) coherent states.

use std::f64::consts::{PI, TAU};

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::quadrature::gauss_legendre;
use crate::coherent::su2_state;
use crate::error::{Error, Result};

/// Operator-norm residual of `((N+1)/4π) ∫ |θ,φ⟩⟨θ,φ| sinθ dθ dφ − 1`,
/// integrated with `quadrature_order` Gauss-Legendre nodes in `cos θ` and a
/// uniform rule in `φ` with `max(quadrature_order, 2N+2)` points.
///
/// The `θ` integrand of each matrix element is a polynomial of degree `N` in
/// `cos θ`, so any order `>= N/2 + 1` is exact up to rounding.
pub fn resolution_of_identity_residual(n: u32, quadrature_order: usize) -> Result<f64> {
    if n == 0 || quadrature_order == 0 {
        return Err(Error::usage(
            "resolution of identity needs N >= 1 and a positive order",
        ));
    }
    let dim = n as usize + 1;
    let (nodes, weights) = gauss_legendre(quadrature_order);
    let azimuths = quadrature_order.max(2 * dim);
    let dphi = TAU / azimuths as f64;
    let mut frame = DMatrix::<Complex64>::zeros(dim, dim);
    for (&x, &w) in nodes.iter().zip(&weights) {
        let theta = x.acos();
        for a in 0..azimuths {
            let state = su2_state(theta, a as f64 * dphi, n)?;
            let v = nalgebra::DVector::from_column_slice(state.amplitudes());
            frame += (&v * v.adjoint()) * Complex64::new(w * dphi, 0.0);
        }
    }
    let residual =
        frame * Complex64::new(f64::from(n + 1) / (4.0 * PI), 0.0) - DMatrix::identity(dim, dim);
    let eigen = residual.symmetric_eigenvalues();
    Ok(eigen.iter().map(|l| l.abs()).fold(0.0, f64::max))
}
