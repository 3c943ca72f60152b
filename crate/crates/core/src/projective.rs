//! Complex vectors, Hermitian products of arbitrary signature, projective
//! equivalence and occupation-number combinatorics.

use std::fmt;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Relative tolerance used by [`projectively_equal`] when callers have no
/// better estimate.
pub const DEFAULT_PROJECTIVE_TOL: f64 = 1e-9;

/// Homogeneous coordinates of a (projective) state, or a block of Fock
/// amplitudes. Length is fixed and every amplitude is finite.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::usage(
                "state vector must have at least one amplitude",
            ));
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("state vector amplitudes".into()));
        }
        Ok(StateVector { amps })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Unit vector along `axis`.
    pub fn basis(dim: usize, axis: usize) -> Result<Self> {
        if axis >= dim {
            return Err(Error::usage(format!(
                "axis {axis} out of range for dimension {dim}"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[axis] = Complex64::new(1.0, 0.0);
        Self::new(amps)
    }

    pub(crate) fn from_vec_unchecked(amps: Vec<Complex64>) -> Self {
        debug_assert!(!amps.is_empty());
        StateVector { amps }
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    /// Positive-definite squared norm `Σ|zⱼ|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.amps.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn scaled(&self, factor: Complex64) -> Result<Self> {
        Self::new(self.amps.iter().map(|z| z * factor).collect())
    }

    /// Positive-definite Hermitian product `Σ conj(vⱼ) wⱼ`.
    pub fn dot(&self, other: &StateVector) -> Result<Complex64> {
        check_len(self.len(), other.len())?;
        Ok(hermitian_dot(&self.amps, &other.amps))
    }
}

impl std::ops::Index<usize> for StateVector {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.amps[i]
    }
}

#[derive(Serialize, Deserialize)]
struct ReIm {
    re: Vec<f64>,
    im: Vec<f64>,
}

impl Serialize for StateVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ReIm {
            re: self.amps.iter().map(|z| z.re).collect(),
            im: self.amps.iter().map(|z| z.im).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StateVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = ReIm::deserialize(deserializer)?;
        if raw.re.len() != raw.im.len() {
            return Err(D::Error::custom("re and im arrays differ in length"));
        }
        let amps = raw
            .re
            .into_iter()
            .zip(raw.im)
            .map(|(re, im)| Complex64::new(re, im))
            .collect();
        StateVector::new(amps).map_err(D::Error::custom)
    }
}

pub(crate) fn hermitian_dot(v: &[Complex64], w: &[Complex64]) -> Complex64 {
    v.iter().zip(w).map(|(a, b)| a.conj() * b).sum()
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, actual })
    }
}

/// A Hermitian form `Σ signsⱼ conj(vⱼ) wⱼ` on `C^dim`. All-plus signs give the
/// ordinary inner product; one minus sign gives the `SU(1,k)` product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InnerProductSpace {
    signs: Vec<i8>,
}

impl InnerProductSpace {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::usage("inner product space must have dimension >= 1"));
        }
        if let Some(s) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::usage(format!(
                "signature entries must be ±1, got {s}"
            )));
        }
        Ok(InnerProductSpace { signs })
    }

    pub fn definite(dim: usize) -> Result<Self> {
        Self::new(vec![1; dim])
    }

    /// `(−,+,…,+)` on `C^{k+1}`: the product whose negative rays form `CH^k`.
    pub fn hyperbolic(k: usize) -> Result<Self> {
        let mut signs = vec![1; k + 1];
        signs[0] = -1;
        Self::new(signs)
    }

    pub fn dim(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn positive_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s > 0).count()
    }

    pub fn negative_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    pub fn is_definite(&self) -> bool {
        self.negative_count() == 0
    }
}

impl fmt::Display for InnerProductSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .signs
            .iter()
            .map(|&s| if s > 0 { "+" } else { "-" })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for InnerProductSpace {
    type Err = Error;

    /// Parses `"-,+,+"` or `"-++"`.
    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(Error::usage(format!("bad signature character '{other}'"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        Self::new(signs)
    }
}

/// Signed Hermitian product `Σ signsⱼ conj(vⱼ) wⱼ`.
pub fn inner_product(
    v: &StateVector,
    w: &StateVector,
    space: &InnerProductSpace,
) -> Result<Complex64> {
    check_len(space.dim(), v.len())?;
    check_len(space.dim(), w.len())?;
    Ok(signed_dot(&v.amps, &w.amps, &space.signs))
}

pub(crate) fn signed_dot(v: &[Complex64], w: &[Complex64], signs: &[i8]) -> Complex64 {
    v.iter()
        .zip(w)
        .zip(signs)
        .map(|((a, b), &s)| a.conj() * b * f64::from(s))
        .sum()
}

/// Occupation numbers `(n₁,…,n_M)` labelling a Fock / symmetric-tensor basis
/// element of degree `N = Σ nⱼ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(occupations: Vec<u32>) -> Self {
        MultiIndex(occupations)
    }

    pub fn occupations(&self) -> &[u32] {
        &self.0
    }

    pub fn modes(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Exact binomial coefficient; errors instead of overflowing `u64`.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = acc
            .checked_mul(u128::from(n - i))
            .ok_or_else(|| Error::Overflow(format!("C({n},{k})")))?
            / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return Err(Error::Overflow(format!("C({n},{k})")));
        }
    }
    Ok(acc as u64)
}

/// Number of degree-`n` multi-indices on `modes` modes, `C(n+modes-1, modes-1)`.
pub fn sector_size(modes: usize, n: u32) -> Result<u64> {
    if modes == 0 {
        return Ok(u64::from(n == 0));
    }
    binomial(u64::from(n) + modes as u64 - 1, modes as u64 - 1)
}

/// All multi-indices of length `modes` and degree `n`, lexicographically
/// descending: for two modes and degree two this is `(2,0),(1,1),(0,2)`.
pub fn multi_index_basis(modes: usize, n: u32) -> Result<Vec<MultiIndex>> {
    if modes == 0 {
        return Err(Error::usage("multi-index basis needs at least one mode"));
    }
    let size = sector_size(modes, n)?;
    let mut out = Vec::with_capacity(size as usize);
    let mut current = vec![0u32; modes];
    fill_basis(&mut current, 0, n, &mut out);
    Ok(out)
}

fn fill_basis(current: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(MultiIndex(current.to_vec()));
        return;
    }
    for v in (0..=remaining).rev() {
        current[pos] = v;
        fill_basis(current, pos + 1, remaining - v, out);
    }
}

/// Position of `idx` inside `multi_index_basis(idx.modes(), idx.degree())`.
pub fn multi_index_rank(idx: &MultiIndex) -> Result<usize> {
    let occ = idx.occupations();
    let modes = occ.len();
    if modes == 0 {
        return Err(Error::usage("empty multi-index"));
    }
    let mut remaining = idx.degree();
    let mut rank: u64 = 0;
    for (pos, &n) in occ.iter().enumerate().take(modes - 1) {
        let rest = modes - pos - 1;
        for v in (n + 1)..=remaining {
            rank += sector_size(rest, remaining - v)?;
        }
        remaining -= n;
    }
    Ok(rank as usize)
}

/// `N! / Π nⱼ!` for a multi-index of degree `N`.
pub fn multinomial(n: u32, idx: &MultiIndex) -> Result<u64> {
    if idx.degree() != n {
        return Err(Error::usage(format!(
            "multi-index {idx} has degree {}, expected {n}",
            idx.degree()
        )));
    }
    let mut acc: u64 = 1;
    let mut placed: u64 = 0;
    for &k in idx.occupations() {
        placed += u64::from(k);
        let c = binomial(placed, u64::from(k))?;
        acc = acc
            .checked_mul(c)
            .ok_or_else(|| Error::Overflow(format!("multinomial {n}; {idx}")))?;
    }
    Ok(acc)
}

/// Whether `v` and `w` span the same complex line, judged by the overlap
/// deficit `1 − |⟨v,w⟩|²/(⟨v,v⟩⟨w,w⟩) <= tol`.
pub fn projectively_equal(v: &StateVector, w: &StateVector, tol: f64) -> Result<bool> {
    Ok(overlap_deficit(v, w)? <= tol)
}

/// `1 − |⟨v,w⟩|²/(⟨v,v⟩⟨w,w⟩)`, i.e. `sin²` of half the Fubini-Study distance.
pub fn overlap_deficit(v: &StateVector, w: &StateVector) -> Result<f64> {
    check_len(v.len(), w.len())?;
    if v.is_zero() || w.is_zero() {
        return Err(Error::usage("projective comparison of a zero vector"));
    }
    Ok((1.0 - fidelity(v, w)).max(0.0))
}

/// `|⟨v,w⟩|²/(⟨v,v⟩⟨w,w⟩)` clamped to `[0, 1]`.
pub(crate) fn fidelity(v: &StateVector, w: &StateVector) -> f64 {
    let vw = hermitian_dot(&v.amps, &w.amps).norm_sqr();
    (vw / (v.norm_sqr() * w.norm_sqr())).clamp(0.0, 1.0)
}

/// Inhomogeneous coordinates `(ζ¹,…,ζ^k)` on the patch where homogeneous
/// coordinate `patch` is nonzero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartPoint {
    coords: Vec<Complex64>,
    patch: usize,
}

impl ChartPoint {
    pub fn new(coords: Vec<Complex64>, patch: usize) -> Result<Self> {
        if coords
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite("chart coordinates".into()));
        }
        if patch > coords.len() {
            return Err(Error::usage(format!(
                "patch {patch} out of range for {} coordinates",
                coords.len()
            )));
        }
        Ok(ChartPoint { coords, patch })
    }

    /// Point on the standard patch `z⁰ ≠ 0`.
    pub fn standard(coords: Vec<Complex64>) -> Result<Self> {
        Self::new(coords, 0)
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn patch(&self) -> usize {
        self.patch
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coords.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Homogeneous representative with a `1` in slot `patch`.
    pub fn lift(&self) -> StateVector {
        StateVector::from_vec_unchecked(lift_coords(&self.coords, self.patch))
    }
}

pub(crate) fn lift_coords(coords: &[Complex64], patch: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(coords.len() + 1);
    out.extend_from_slice(&coords[..patch]);
    out.push(Complex64::new(1.0, 0.0));
    out.extend_from_slice(&coords[patch..]);
    out
}

/// `zʲ / z^patch` for every `j ≠ patch`, preserving axis order.
pub fn to_inhomogeneous(v: &StateVector, patch: usize) -> Result<ChartPoint> {
    if patch >= v.len() {
        return Err(Error::usage(format!(
            "patch {patch} out of range for length {}",
            v.len()
        )));
    }
    let pivot = v[patch];
    if pivot.norm_sqr() == 0.0 {
        return Err(Error::OutsideChart { patch });
    }
    let coords = v
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != patch)
        .map(|(_, z)| z / pivot)
        .collect();
    ChartPoint::new(coords, patch)
}
