//! Generalised coherent states built as Veronese-type embeddings, and the
//! geometry they inherit from the ambient state space.
//!
//! The crate is organised bottom-up:
//!
//! - [`projective`]: state vectors, definite and indefinite Hermitian
//!   products, projective equivalence, and the occupation-number
//!   combinatorics shared by everything else.
//! - [`veronese`]: degree-`N` Veronese maps `CP^k -> CP^{C(N+k,k)-1}`, target
//!   dimensions, image signatures for indefinite bases.
//! - [`coherent`]: closed-form constructors for Glauber, SU(k+1), SU(1,1),
//!   SU(1,k) and indefinite SU(1,1) coherent states, Fock ladder operators,
//!   fixed-number sectors and the Bargmann function.
//! - [`geometry`]: Fubini-Study and hyperbolic metrics, Kähler potentials,
//!   numerical pullbacks, scalar curvature, the Bergman kernel and the
//!   verification reports that tie them together.
//!
//! Metric convention: a [`geometry::MetricTensor`] stores Hermitian entries
//! `g_{ij̄}` such that the real line element is
//! `ds² = 2·Re Σ g_{ij̄} dζ^i dζ̄^j`. Under this convention the Fubini-Study
//! metric of `CP^1` with potential `K = 4 ln(1+|ζ|²)` is the unit round
//! sphere, `ds² = dθ² + sin²θ dφ²`.

// `!(x < bound)` is used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coherent;
pub mod error;
pub mod geometry;
pub mod projective;
pub mod veronese;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use projective::{ChartPoint, InnerProductSpace, MultiIndex, StateVector};
