//! Degree-`N` Veronese embeddings `CP^k ↪ CP^{C(N+k,k)−1}`.
//!
//! The image of `p = (p₀,…,p_k)` has one coordinate per multi-index
//! `idx = (n₀,…,n_k)` of degree `N`, equal to `√multinomial(N, idx) · Π pⱼ^{nⱼ}`,
//! listed in [`multi_index_basis`] order. With these weights the map is an
//! isometry of Hermitian forms up to the power `N`:
//! `⟨E(p),E(q)⟩ = ⟨p,q⟩^N`, which is what makes every induced metric a
//! rescaled copy of the base metric.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::projective::{
    binomial, inner_product, lift_coords, multi_index_basis, multinomial, InnerProductSpace,
    MultiIndex, StateVector,
};

/// Tolerance on the pseudo-sphere condition `⟨p,p⟩₋ = −1` accepted by
/// [`non_embeddability_witness`].
pub const PSEUDO_SPHERE_TOL: f64 = 1e-9;

/// `√multinomial(N, idx)` as a float. Exact integer arithmetic is used while it
/// fits in `u64`.
pub(crate) fn sqrt_multinomial(n: u32, idx: &MultiIndex) -> Result<f64> {
    match multinomial(n, idx) {
        Ok(m) => Ok((m as f64).sqrt()),
        Err(Error::Overflow(_)) => {
            let mut acc = 1.0f64;
            let mut placed = 0u32;
            for &k in idx.occupations() {
                placed += k;
                for i in 0..k {
                    acc *= f64::from(placed - i) / f64::from(i + 1);
                }
            }
            Ok(acc.sqrt())
        }
        Err(e) => Err(e),
    }
}

/// `Π pⱼ^{nⱼ}`.
pub(crate) fn monomial(p: &[Complex64], idx: &MultiIndex) -> Complex64 {
    p.iter()
        .zip(idx.occupations())
        .fold(Complex64::new(1.0, 0.0), |acc, (z, &n)| acc * z.powu(n))
}

/// A degree-`N` Veronese map on `C^{k+1}`, with its image labels precomputed.
#[derive(Debug, Clone)]
pub struct VeroneseMap {
    base_dim: usize,
    degree: u32,
    labels: Vec<MultiIndex>,
    weights: Vec<f64>,
}

impl VeroneseMap {
    pub fn new(base_dim: usize, degree: u32) -> Result<Self> {
        if base_dim < 2 {
            return Err(Error::usage(
                "Veronese map needs homogeneous coordinates of length >= 2",
            ));
        }
        if degree == 0 {
            return Err(Error::usage("Veronese degree must be >= 1"));
        }
        let labels = multi_index_basis(base_dim, degree)?;
        let weights = labels
            .iter()
            .map(|idx| sqrt_multinomial(degree, idx))
            .collect::<Result<Vec<_>>>()?;
        Ok(VeroneseMap {
            base_dim,
            degree,
            labels,
            weights,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn image_dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[MultiIndex] {
        &self.labels
    }

    /// Image of homogeneous coordinates `p`; zero `p` is rejected.
    pub fn embed(&self, p: &StateVector) -> Result<StateVector> {
        if p.len() != self.base_dim {
            return Err(Error::DimensionMismatch {
                expected: self.base_dim,
                actual: p.len(),
            });
        }
        if p.is_zero() {
            return Err(Error::usage("cannot embed the zero vector"));
        }
        Ok(self.embed_raw(p.amplitudes()))
    }

    pub(crate) fn embed_raw(&self, p: &[Complex64]) -> StateVector {
        let amps = self
            .labels
            .iter()
            .zip(&self.weights)
            .map(|(idx, &w)| monomial(p, idx) * w)
            .collect();
        StateVector::from_vec_unchecked(amps)
    }

    /// The map composed with the chart lift on patch `patch`, as a callable on
    /// inhomogeneous coordinates.
    pub fn chart_map(
        &self,
        patch: usize,
    ) -> impl Fn(&[Complex64]) -> Result<StateVector> + Sync + '_ {
        move |zeta: &[Complex64]| {
            if zeta.len() + 1 != self.base_dim {
                return Err(Error::DimensionMismatch {
                    expected: self.base_dim - 1,
                    actual: zeta.len(),
                });
            }
            Ok(self.embed_raw(&lift_coords(zeta, patch)))
        }
    }
}

/// `√multinomial(N, idx)·Π pⱼ^{nⱼ}` for every degree-`N` multi-index.
pub fn veronese_embed(p: &StateVector, degree: u32) -> Result<StateVector> {
    VeroneseMap::new(p.len(), degree)?.embed(p)
}

/// Projective dimension `C(N+k, k) − 1` of the image of `CP^k` under the
/// degree-`N` map.
pub fn target_dimension(k: u64, degree: u64) -> Result<u64> {
    if k == 0 || degree == 0 {
        return Err(Error::usage("target_dimension needs k >= 1 and N >= 1"));
    }
    let n_plus_k = degree
        .checked_add(k)
        .ok_or_else(|| Error::Overflow(format!("N+k for k={k}, N={degree}")))?;
    Ok(binomial(n_plus_k, k)? - 1)
}

/// Iterated quadratic embeddings `CP^{k0} ↪ CP^{d₁} ↪ CP^{d₂} ↪ …`; the result
/// has `depth + 1` entries starting with `k0`.
pub fn hierarchy_chain(k0: u64, depth: usize) -> Result<Vec<u64>> {
    if k0 == 0 || depth == 0 {
        return Err(Error::usage("hierarchy_chain needs k0 >= 1 and depth >= 1"));
    }
    let mut chain = Vec::with_capacity(depth + 1);
    chain.push(k0);
    for _ in 0..depth {
        let last = *chain.last().expect("non-empty");
        chain.push(target_dimension(last, 2)?);
    }
    Ok(chain)
}

/// Signature of the degree-`N` symmetric power of `base`: image axis `idx`
/// carries sign `Π signsⱼ^{nⱼ}`.
pub fn image_signature(base: &InnerProductSpace, degree: u32) -> Result<InnerProductSpace> {
    if degree == 0 {
        return Err(Error::usage("image_signature needs N >= 1"));
    }
    let signs = multi_index_basis(base.dim(), degree)?
        .iter()
        .map(|idx| {
            let negatives: u32 = idx
                .occupations()
                .iter()
                .zip(base.signs())
                .filter(|(_, &s)| s < 0)
                .map(|(&n, _)| n)
                .sum();
            if negatives.is_multiple_of(2) {
                1
            } else {
                -1
            }
        })
        .collect();
    InnerProductSpace::new(signs)
}

/// Outcome of squaring a `CH¹` point into would-be `CH²` coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EmbeddingWitness {
    /// Pseudo-norm a point of `CH²` on the pseudo-sphere would need.
    pub expected: f64,
    /// Pseudo-norm of `(s², √2st, t²)` under `(−,+,+)`.
    pub actual: f64,
}

impl EmbeddingWitness {
    pub fn contradicts(&self, tol: f64) -> bool {
        (self.actual - self.expected).abs() > tol
    }
}

/// For `p = (s,t)` with `−|s|²+|t|² = −1`, evaluates the `(−,+,+)` pseudo-norm
/// of the quadratic Veronese image. It equals `−1` only when `t = 0`, so the
/// quadratic map cannot carry `CH¹` into `CH²`.
pub fn non_embeddability_witness(p: &StateVector) -> Result<EmbeddingWitness> {
    if p.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: p.len(),
        });
    }
    let base = InnerProductSpace::hyperbolic(1)?;
    let pseudo = inner_product(p, p, &base)?.re;
    if (pseudo + 1.0).abs() > PSEUDO_SPHERE_TOL {
        return Err(Error::usage(format!(
            "point must lie on the pseudo-sphere <p,p>_- = -1, got {pseudo}"
        )));
    }
    let image = veronese_embed(p, 2)?;
    let target = InnerProductSpace::hyperbolic(2)?;
    let actual = inner_product(&image, &image, &target)?.re;
    Ok(EmbeddingWitness {
        expected: -1.0,
        actual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn endpoint_monomial() {
        let e = veronese_embed(&StateVector::from_real(&[1.0, 0.0]).unwrap(), 5).unwrap();
        let expected: Vec<Complex64> = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0]
            .iter()
            .map(|&x| c(x, 0.0))
            .collect();
        assert_eq!(e.amplitudes(), expected.as_slice());
    }

    #[test]
    fn conic_coordinates() {
        let (s, t) = (c(0.3, -0.7), c(1.1, 0.4));
        let e = veronese_embed(&StateVector::new(vec![s, t]).unwrap(), 2).unwrap();
        let expected = [s * s, s * t * SQRT_2, t * t];
        for (a, b) in e.amplitudes().iter().zip(expected) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn plane_quadric_coordinates_as_a_set() {
        let (s, t, u) = (c(0.2, 0.1), c(-0.5, 0.3), c(0.9, -0.2));
        let e = veronese_embed(&StateVector::new(vec![s, t, u]).unwrap(), 2).unwrap();
        let expected = [
            s * s,
            s * t * SQRT_2,
            t * t,
            t * u * SQRT_2,
            u * u,
            u * s * SQRT_2,
        ];
        assert_eq!(e.len(), 6);
        for want in expected {
            assert!(
                e.amplitudes().iter().any(|z| (z - want).norm() < 1e-15),
                "missing {want}"
            );
        }
    }

    #[test]
    fn zero_vector_rejected() {
        let zero = StateVector::from_real(&[0.0, 0.0]).unwrap();
        assert!(matches!(veronese_embed(&zero, 2), Err(Error::Usage(_))));
    }

    #[test]
    fn target_dimension_examples() {
        assert_eq!(target_dimension(1, 3).unwrap(), 3);
        assert_eq!(target_dimension(2, 3).unwrap(), 9);
        assert_eq!(target_dimension(4, 2).unwrap(), 14);
        for k in 1..20 {
            assert_eq!(target_dimension(k, 1).unwrap(), k);
        }
        assert!(matches!(
            target_dimension(1_000, 1_000),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn hierarchy_examples() {
        assert_eq!(hierarchy_chain(1, 4).unwrap(), vec![1, 2, 5, 20, 230]);
        assert_eq!(hierarchy_chain(3, 3).unwrap(), vec![3, 9, 54, 1539]);
        assert_eq!(hierarchy_chain(4, 2).unwrap(), vec![4, 14, 119]);
        assert_eq!(hierarchy_chain(4, 3).unwrap()[3], 7259);
        assert!(matches!(hierarchy_chain(1, 12), Err(Error::Overflow(_))));
    }

    #[test]
    fn image_signature_counts() {
        let base: InnerProductSpace = "-,+".parse().unwrap();
        let s3 = image_signature(&base, 3).unwrap();
        assert_eq!((s3.positive_count(), s3.negative_count()), (2, 2));
        let s2 = image_signature(&base, 2).unwrap();
        assert_eq!((s2.positive_count(), s2.negative_count()), (2, 1));
        let def = image_signature(&InnerProductSpace::definite(2).unwrap(), 4).unwrap();
        assert!(def.is_definite());
    }

    #[test]
    fn witness_examples() {
        let w = non_embeddability_witness(&StateVector::from_real(&[1.0, 0.0]).unwrap()).unwrap();
        assert_eq!((w.expected, w.actual), (-1.0, -1.0));
        assert!(!w.contradicts(1e-12));

        let w =
            non_embeddability_witness(&StateVector::from_real(&[SQRT_2, 1.0]).unwrap()).unwrap();
        assert!((w.actual - 1.0).abs() < 1e-14);

        let (ch, sh) = (0.5f64.cosh(), 0.5f64.sinh());
        let w = non_embeddability_witness(&StateVector::from_real(&[ch, sh]).unwrap()).unwrap();
        let (ss, tt) = (ch * ch, sh * sh);
        let oracle = -(ss * ss) + 2.0 * ss * tt + tt * tt;
        assert!((w.actual - oracle).abs() < 1e-13);
        assert!(w.actual > -1.0);

        assert!(matches!(
            non_embeddability_witness(&StateVector::from_real(&[1.0, 1.0]).unwrap()),
            Err(Error::Usage(_))
        ));
    }
}
