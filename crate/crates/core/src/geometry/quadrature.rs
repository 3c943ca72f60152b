//! Gauss-Legendre rules and tensor-product rules on the unit disk.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[−1, 1]`,
/// exact for polynomials of degree `< 2n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Tensor rule on the unit disk: Gauss-Legendre in the radius times the
/// uniform trapezoid rule in angle, integrating against `dx dy = r dr dθ`.
#[derive(Debug, Clone)]
pub struct DiskRule {
    radial_nodes: Vec<f64>,
    radial_weights: Vec<f64>,
    angles: usize,
}

impl DiskRule {
    pub fn new(radial_order: usize, angles: usize) -> Self {
        let (x, w) = gauss_legendre(radial_order);
        // Map [−1, 1] → [0, 1] and fold in the Jacobian r.
        let radial_nodes: Vec<f64> = x.iter().map(|t| 0.5 * (t + 1.0)).collect();
        let radial_weights = w
            .iter()
            .zip(&radial_nodes)
            .map(|(w, r)| 0.5 * w * r)
            .collect();
        DiskRule {
            radial_nodes,
            radial_weights,
            angles,
        }
    }

    pub fn integrate<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Complex64 {
        let dtheta = TAU / self.angles as f64;
        let mut total = Complex64::new(0.0, 0.0);
        for (&r, &w) in self.radial_nodes.iter().zip(&self.radial_weights) {
            let ring: Complex64 = (0..self.angles)
                .map(|a| f(Complex64::from_polar(r, a as f64 * dtheta)))
                .sum();
            total += ring * (w * dtheta);
        }
        total
    }
}
