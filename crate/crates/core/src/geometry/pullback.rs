//! Metrics induced on parameter spaces by maps into projective (or
//! indefinite) state spaces.
//!
//! For a definite ambient product the projective metric is
//! `ds² = 4[⟨z,z⟩⟨dz,dz⟩ − |⟨z,dz⟩|²]/⟨z,z⟩²`. For an indefinite product the
//! same expression is evaluated with signed products and an overall minus
//! sign, which yields a positive metric on negative-norm rays of `CH^k` and on
//! Veronese images of them whatever the sign of their pseudo-norm.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::diff::{check_step, jacobian, to_real};
use super::MetricTensor;
use crate::error::{Error, Result};
use crate::projective::{signed_dot, InnerProductSpace, StateVector};

/// `|⟨z,z⟩|` below this (relative to `‖z‖²`) is treated as a null vector.
const NULL_NORM_TOL: f64 = 1e-12;

struct Ambient<'a> {
    signs: &'a [i8],
    sign: f64,
}

impl<'a> Ambient<'a> {
    fn new(space: &'a InnerProductSpace) -> Self {
        let sign = if space.is_definite() { 1.0 } else { -1.0 };
        Ambient {
            signs: space.signs(),
            sign,
        }
    }

    fn dot(&self, v: &[Complex64], w: &[Complex64]) -> Complex64 {
        signed_dot(v, w, self.signs)
    }

    fn norm(&self, z: &[Complex64]) -> Result<f64> {
        let norm = self.dot(z, z).re;
        let scale: f64 = z.iter().map(|a| a.norm_sqr()).sum();
        if !(norm.abs() > NULL_NORM_TOL * scale) {
            return Err(Error::Degenerate(format!(
                "image has (pseudo-)norm {norm:e}; projective metric undefined"
            )));
        }
        Ok(norm)
    }
}

fn check_image(space: &InnerProductSpace, z: &StateVector) -> Result<()> {
    if z.len() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            actual: z.len(),
        });
    }
    Ok(())
}

/// Real metric `G_{ab}` induced on `m` real parameters by `map`, using a
/// numerical Jacobian.
pub fn pullback_metric<F>(
    map: &F,
    params: &[f64],
    space: &InnerProductSpace,
    step: f64,
) -> Result<DMatrix<f64>>
where
    F: Fn(&[f64]) -> Result<StateVector> + ?Sized,
{
    check_step(step)?;
    let z = map(params)?;
    check_image(space, &z)?;
    let ambient = Ambient::new(space);
    let z = z.amplitudes();
    let norm = ambient.norm(z)?;
    let cols = jacobian(&|x: &[f64]| Ok(map(x)?.into_amplitudes()), params, step)?;
    let overlaps: Vec<Complex64> = cols.iter().map(|col| ambient.dot(z, col)).collect();
    let m = params.len();
    let mut out = DMatrix::zeros(m, m);
    for a in 0..m {
        for b in a..m {
            let term = ambient.dot(&cols[a], &cols[b]) * norm - overlaps[a].conj() * overlaps[b];
            let value = ambient.sign * 4.0 * term.re / (norm * norm);
            out[(a, b)] = value;
            out[(b, a)] = value;
        }
    }
    Ok(out)
}

/// Hermitian metric `g_{ij̄}` induced on chart coordinates by a holomorphic
/// map, from the holomorphic derivatives `∂ᵢz = ½(∂_{xᵢ} − i∂_{yᵢ})z`.
pub fn pullback_hermitian<F>(
    map: &F,
    zeta: &[Complex64],
    space: &InnerProductSpace,
    step: f64,
) -> Result<MetricTensor>
where
    F: Fn(&[Complex64]) -> Result<StateVector> + ?Sized,
{
    check_step(step)?;
    let z = map(zeta)?;
    check_image(space, &z)?;
    let ambient = Ambient::new(space);
    let z = z.amplitudes();
    let norm = ambient.norm(z)?;
    let real_map = |x: &[f64]| -> Result<Vec<Complex64>> {
        Ok(map(&super::diff::from_real(x))?.into_amplitudes())
    };
    let cols = jacobian(&real_map, &to_real(zeta), step)?;
    let half_i = Complex64::new(0.0, 0.5);
    let holo: Vec<Vec<Complex64>> = cols
        .chunks_exact(2)
        .map(|pair| {
            pair[0]
                .iter()
                .zip(&pair[1])
                .map(|(dx, dy)| dx * 0.5 - dy * half_i)
                .collect()
        })
        .collect();
    let overlaps: Vec<Complex64> = holo.iter().map(|d| ambient.dot(z, d)).collect();
    let k = zeta.len();
    let factor = ambient.sign * 2.0 / (norm * norm);
    let g = DMatrix::from_fn(k, k, |i, j| {
        (ambient.dot(&holo[j], &holo[i]) * norm - overlaps[i] * overlaps[j].conj()) * factor
    });
    MetricTensor::new(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::{indefinite_su11_signature, indefinite_su11_state, su2_state};
    use crate::geometry::{fs_metric_chart, hyperbolic_metric_chart};
    use crate::projective::lift_coords;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn sphere_in_angles() {
        let space = InnerProductSpace::definite(2).unwrap();
        let map = |x: &[f64]| {
            StateVector::new(vec![
                c((0.5 * x[0]).cos(), 0.0),
                Complex64::from_polar((0.5 * x[0]).sin(), x[1]),
            ])
        };
        let theta = 1.1;
        let g = pullback_metric(&map, &[theta, 0.3], &space, 1e-4).unwrap();
        assert!((g[(0, 0)] - 1.0).abs() < 1e-9);
        assert!((g[(1, 1)] - theta.sin().powi(2)).abs() < 1e-9);
        assert!(g[(0, 1)].abs() < 1e-9);
    }

    #[test]
    fn su2_family_is_scaled_sphere() {
        let space = InnerProductSpace::definite(5).unwrap();
        let map = |x: &[f64]| su2_state(x[0], x[1], 4);
        let g = pullback_metric(&map, &[0.8, 2.0], &space, 1e-4).unwrap();
        assert!((g[(0, 0)] - 4.0).abs() < 1e-6);
        assert!((g[(1, 1)] - 4.0 * 0.8f64.sin().powi(2)).abs() < 1e-6);
    }

    #[test]
    fn indefinite_family_is_scaled_hyperbolic_plane() {
        for n in [1u32, 2, 3] {
            let space = indefinite_su11_signature(n).unwrap();
            let map = move |x: &[f64]| indefinite_su11_state(x[0], x[1], n);
            let tau = 1.2;
            let g = pullback_metric(&map, &[tau, 0.7], &space, 1e-4).unwrap();
            let nf = f64::from(n);
            assert!((g[(0, 0)] - nf).abs() < 1e-7, "N={n}: {}", g[(0, 0)]);
            assert!((g[(1, 1)] - nf * tau.sinh().powi(2)).abs() < 1e-7);
        }
    }

    #[test]
    fn homogeneous_lift_of_ball_matches_chart_metric() {
        let space = InnerProductSpace::hyperbolic(2).unwrap();
        let lift = |z: &[Complex64]| StateVector::new(lift_coords(z, 0));
        let zeta = [c(0.2, -0.3), c(0.4, 0.1)];
        let g = pullback_hermitian(&lift, &zeta, &space, 1e-4).unwrap();
        let want = hyperbolic_metric_chart(&zeta).unwrap();
        assert!((g.real_form() - want.real_form()).amax() < 1e-8);

        let real_lift =
            |x: &[f64]| StateVector::new(lift_coords(&super::super::diff::from_real(x), 0));
        let real = pullback_metric(&real_lift, &to_real(&zeta), &space, 1e-4).unwrap();
        assert!((real - want.real_form()).amax() < 1e-8);
    }

    #[test]
    fn projective_lift_matches_fs_chart() {
        let space = InnerProductSpace::definite(3).unwrap();
        let lift = |z: &[Complex64]| StateVector::new(lift_coords(z, 0));
        let zeta = [c(0.5, 0.5), c(-1.0, 0.2)];
        let g = pullback_hermitian(&lift, &zeta, &space, 1e-4).unwrap();
        assert!((g.real_form() - fs_metric_chart(&zeta).unwrap().real_form()).amax() < 1e-8);
    }

    #[test]
    fn null_image_is_degenerate() {
        let space: InnerProductSpace = "-,+".parse().unwrap();
        let map = |x: &[f64]| StateVector::new(vec![c(1.0, 0.0), Complex64::from_polar(1.0, x[0])]);
        assert!(matches!(
            pullback_metric(&map, &[0.2], &space, 1e-4),
            Err(Error::Degenerate(_))
        ));
    }
}
