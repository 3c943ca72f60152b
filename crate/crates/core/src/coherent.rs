//! Closed-form constructors for coherent-state families, truncated Fock
//! states and the ladder operators acting on them.
//!
//! Every finite family is a Veronese image: SU(2) states are the rational
//! normal curve, SU(k+1) states the degree-`N` Veronese variety of `CP^k`,
//! and the indefinite SU(1,1) states the image of `CH¹` inside a space of
//! mixed signature. Glauber states are the sum over all degrees of the same
//! images weighted by `1/√N!`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::projective::{
    binomial, multi_index_basis, multi_index_rank, sector_size, InnerProductSpace, MultiIndex,
    StateVector,
};
use crate::veronese::{image_signature, monomial, sqrt_multinomial, veronese_embed};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Amplitudes on all occupation sectors `0..=cutoff` of an `M`-mode Fock
/// space. Sector `n` is stored in [`multi_index_basis`]`(M, n)` order.
///
/// Operations that would populate sectors above the cutoff drop those
/// amplitudes and add their squared magnitude to [`FockState::truncated_mass`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FockState {
    modes: usize,
    cutoff: u32,
    sectors: Vec<Vec<Complex64>>,
    truncated_mass: f64,
}

impl FockState {
    pub fn zero(modes: usize, cutoff: u32) -> Result<Self> {
        if modes == 0 {
            return Err(Error::usage("Fock state needs at least one mode"));
        }
        let sectors = (0..=cutoff)
            .map(|n| Ok(vec![ZERO; sector_size(modes, n)? as usize]))
            .collect::<Result<Vec<_>>>()?;
        Ok(FockState {
            modes,
            cutoff,
            sectors,
            truncated_mass: 0.0,
        })
    }

    pub fn vacuum(modes: usize, cutoff: u32) -> Result<Self> {
        let mut psi = Self::zero(modes, cutoff)?;
        psi.sectors[0][0] = Complex64::new(1.0, 0.0);
        Ok(psi)
    }

    /// The basis state `|n₁…n_M⟩`.
    pub fn basis(occupations: &MultiIndex, cutoff: u32) -> Result<Self> {
        let degree = occupations.degree();
        if degree > cutoff {
            return Err(Error::usage(format!(
                "basis state {occupations} exceeds cutoff {cutoff}"
            )));
        }
        let mut psi = Self::zero(occupations.modes(), cutoff)?;
        psi.sectors[degree as usize][multi_index_rank(occupations)?] = Complex64::new(1.0, 0.0);
        Ok(psi)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    /// Squared norm of amplitudes dropped past the cutoff by the operations
    /// that produced this state.
    pub fn truncated_mass(&self) -> f64 {
        self.truncated_mass
    }

    pub fn sector(&self, n: u32) -> Option<&[Complex64]> {
        self.sectors.get(n as usize).map(Vec::as_slice)
    }

    pub fn amplitude(&self, idx: &MultiIndex) -> Option<Complex64> {
        if idx.modes() != self.modes || idx.degree() > self.cutoff {
            return None;
        }
        let rank = multi_index_rank(idx).ok()?;
        Some(self.sectors[idx.degree() as usize][rank])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.sectors.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    pub fn len(&self) -> usize {
        self.sectors.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All amplitudes, sector by sector, as one vector.
    pub fn to_state_vector(&self) -> StateVector {
        StateVector::from_vec_unchecked(self.sectors.iter().flatten().copied().collect())
    }

    /// Labels matching [`FockState::to_state_vector`] order.
    pub fn labels(&self) -> Result<Vec<MultiIndex>> {
        let mut out = Vec::with_capacity(self.len());
        for n in 0..=self.cutoff {
            out.extend(multi_index_basis(self.modes, n)?);
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: Complex64) -> FockState {
        let mut out = self.clone();
        out.sectors.iter_mut().flatten().for_each(|z| *z *= factor);
        out
    }

    /// `self − other`, for states on the same truncated space.
    pub fn sub(&self, other: &FockState) -> Result<FockState> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (a, b) in out
            .sectors
            .iter_mut()
            .flatten()
            .zip(other.sectors.iter().flatten())
        {
            *a -= b;
        }
        out.truncated_mass = self.truncated_mass + other.truncated_mass;
        Ok(out)
    }

    fn check_same_space(&self, other: &FockState) -> Result<()> {
        if self.modes != other.modes || self.cutoff != other.cutoff {
            return Err(Error::usage(format!(
                "Fock spaces differ: ({} modes, cutoff {}) vs ({} modes, cutoff {})",
                self.modes, self.cutoff, other.modes, other.cutoff
            )));
        }
        Ok(())
    }
}

/// `aⁿ/√(n!)` for `n = 0..=cutoff`.
fn scaled_powers(a: Complex64, cutoff: u32) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(cutoff as usize + 1);
    let mut acc = Complex64::new(1.0, 0.0);
    out.push(acc);
    for n in 1..=cutoff {
        acc *= a / f64::from(n).sqrt();
        out.push(acc);
    }
    out
}

/// Cutoff `20 + ⌈5·max|aⱼ|²⌉` used when the caller does not choose one.
pub fn default_glauber_cutoff(a: &[Complex64]) -> u32 {
    let peak = a.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max);
    20 + (5.0 * peak).ceil() as u32
}

/// Normalised `M`-mode Glauber state
/// `e^{−½Σ|aⱼ|²} Σ Π aⱼ^{nⱼ}/√(nⱼ!) |n₁…n_M⟩`, truncated to total occupation
/// `<= cutoff`. The prefactor decays; a growing `e^{+½Σ|aⱼ|²}` is sometimes
/// written but cannot give unit norm.
pub fn glauber_state(a: &[Complex64], cutoff: u32) -> Result<FockState> {
    if a.is_empty() {
        return Err(Error::usage("Glauber state needs at least one mode"));
    }
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite("Glauber amplitudes".into()));
    }
    let prefactor = (-0.5 * a.iter().map(|z| z.norm_sqr()).sum::<f64>()).exp();
    let tables: Vec<Vec<Complex64>> = a.iter().map(|&z| scaled_powers(z, cutoff)).collect();
    let mut psi = FockState::zero(a.len(), cutoff)?;
    for n in 0..=cutoff {
        for (slot, idx) in psi.sectors[n as usize]
            .iter_mut()
            .zip(multi_index_basis(a.len(), n)?)
        {
            *slot = idx
                .occupations()
                .iter()
                .zip(&tables)
                .fold(Complex64::new(prefactor, 0.0), |acc, (&k, t)| {
                    acc * t[k as usize]
                });
        }
    }
    Ok(psi)
}

/// `(cos½θ)^{N−j}(sin½θ e^{iφ})^j √C(N,j)` for `j = 0..=N`.
pub fn su2_state(theta: f64, phi: f64, n: u32) -> Result<StateVector> {
    if n == 0 {
        return Err(Error::usage("SU(2) state needs N >= 1"));
    }
    let c = Complex64::new((0.5 * theta).cos(), 0.0);
    let s = Complex64::from_polar((0.5 * theta).sin(), phi);
    let amps = (0..=n)
        .map(|j| {
            let weight = (binomial(u64::from(n), u64::from(j))? as f64).sqrt();
            Ok(c.powu(n - j) * s.powu(j) * weight)
        })
        .collect::<Result<Vec<_>>>()?;
    StateVector::new(amps)
}

/// Homogeneous `CP²` point `(sin½θ cos½ϕ, sin½θ sin½ϕ e^{iξ}, cos½θ e^{iη})`.
pub fn su3_point(theta: f64, varphi: f64, xi: f64, eta: f64) -> [Complex64; 3] {
    let (sh, ch) = (0.5 * theta).sin_cos();
    let (sp, cp) = (0.5 * varphi).sin_cos();
    [
        Complex64::new(sh * cp, 0.0),
        Complex64::from_polar(sh * sp, xi),
        Complex64::from_polar(ch, eta),
    ]
}

/// Double-sum label `(k, l)` of an SU(3) basis element: `l` counts the first
/// coordinate, `k − l` the second and `N − k` the third.
pub fn su3_label(idx: &MultiIndex) -> Result<(u32, u32)> {
    match idx.occupations() {
        &[ns, nt, _] => Ok((ns + nt, ns)),
        _ => Err(Error::usage(format!(
            "SU(3) label needs a 3-mode index, got {idx}"
        ))),
    }
}

/// The `½(N²+3N+2)`-level SU(3) state, built from the `(k, l)` double sum and
/// stored in canonical multi-index order.
pub fn su3_state(theta: f64, varphi: f64, xi: f64, eta: f64, n: u32) -> Result<StateVector> {
    if n == 0 {
        return Err(Error::usage("SU(3) state needs N >= 1"));
    }
    let [s, t, u] = su3_point(theta, varphi, xi, eta);
    let mut amps = vec![ZERO; sector_size(3, n)? as usize];
    for k in 0..=n {
        for l in 0..=k {
            let idx = MultiIndex::new(vec![l, k - l, n - k]);
            let weight = sqrt_multinomial(n, &idx)?;
            amps[multi_index_rank(&idx)?] = s.powu(l) * t.powu(k - l) * u.powu(n - k) * weight;
        }
    }
    StateVector::new(amps)
}

/// `veronese_embed(p, N) / ⟨p,p⟩^{N/2}`.
pub fn suk_state(p: &StateVector, n: u32) -> Result<StateVector> {
    if p.is_zero() {
        return Err(Error::usage("SU(k+1) state of the zero vector"));
    }
    let norm = p.norm_sqr().powf(0.5 * f64::from(n));
    veronese_embed(p, n)?.scaled(Complex64::new(1.0 / norm, 0.0))
}

fn check_disc(xi_norm_sqr: f64, what: &str) -> Result<()> {
    if !(xi_norm_sqr < 1.0) {
        return Err(Error::domain(format!(
            "{what} requires Σ|ξ|² < 1, got {xi_norm_sqr}"
        )));
    }
    Ok(())
}

/// Series length keeping the `(1−r²)⁻²` tail negligible: 200 terms up to
/// `r = 0.7`, 400 up to `r = 0.9`, and `⌈40/(1−r²)⌉` beyond.
pub fn default_disc_cutoff(radius_sqr: f64) -> u32 {
    if radius_sqr <= 0.49 {
        200
    } else if radius_sqr <= 0.81 {
        400
    } else {
        400.max((40.0 / (1.0 - radius_sqr)).ceil() as u32)
    }
}

/// Components `√n ξ^{n−1}`, `n = 1..=cutoff`, of the SU(1,1) state in the
/// orthonormal disk basis `φₙ`.
pub fn su11_perelomov(xi: Complex64, cutoff: u32) -> Result<StateVector> {
    check_disc(xi.norm_sqr(), "SU(1,1) state")?;
    if cutoff == 0 {
        return Err(Error::usage("SU(1,1) series needs cutoff >= 1"));
    }
    let mut amps = Vec::with_capacity(cutoff as usize);
    let mut power = Complex64::new(1.0, 0.0);
    for n in 1..=cutoff {
        amps.push(power * f64::from(n).sqrt());
        power *= xi;
    }
    StateVector::new(amps)
}

/// Graded SU(1,k) state: the degree-`n` block is `√(n+1)·ξ^{⊗n}` written in
/// the orthonormal symmetric basis, for `n = 0..=degree_cutoff`.
pub fn su1k_state(xi: &[Complex64], degree_cutoff: u32) -> Result<FockState> {
    if xi.is_empty() {
        return Err(Error::usage("SU(1,k) state needs k >= 1"));
    }
    check_disc(xi.iter().map(|z| z.norm_sqr()).sum(), "SU(1,k) state")?;
    let mut psi = FockState::zero(xi.len(), degree_cutoff)?;
    for n in 0..=degree_cutoff {
        let lead = f64::from(n + 1).sqrt();
        for (slot, idx) in psi.sectors[n as usize]
            .iter_mut()
            .zip(multi_index_basis(xi.len(), n)?)
        {
            *slot = monomial(xi, &idx) * (lead * sqrt_multinomial(n, &idx)?);
        }
    }
    Ok(psi)
}

/// `√C(N,j) (cosh½τ)^j (sinh½τ e^{iφ})^{N−j}` for `j = 0..=N`.
///
/// Axis `j` carries sign `(−1)^j`; see [`indefinite_su11_signature`].
pub fn indefinite_su11_state(tau: f64, phi: f64, n: u32) -> Result<StateVector> {
    if n == 0 {
        return Err(Error::usage("indefinite SU(1,1) state needs N >= 1"));
    }
    let ch = Complex64::new((0.5 * tau).cosh(), 0.0);
    let sh = Complex64::from_polar((0.5 * tau).sinh(), phi);
    let amps = (0..=n)
        .map(|j| {
            let weight = (binomial(u64::from(n), u64::from(j))? as f64).sqrt();
            Ok(ch.powu(j) * sh.powu(n - j) * weight)
        })
        .collect::<Result<Vec<_>>>()?;
    StateVector::new(amps)
}

/// Ambient signature for [`indefinite_su11_state`]. The state is the degree-`N`
/// Veronese image of `(sinh½τ e^{iφ}, cosh½τ)` with base signature `(+,−)`,
/// so axis `j` has sign `(−1)^j`: `((N+1)/2, (N+1)/2)` for odd `N` and
/// `(1+N/2, N/2)` for even `N`.
pub fn indefinite_su11_signature(n: u32) -> Result<InnerProductSpace> {
    image_signature(&InnerProductSpace::new(vec![1, -1])?, n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Create,
    Annihilate,
}

/// Applies `A†_mode` or `A_mode` (zero-based `mode`) on the truncated space.
pub fn ladder_apply(kind: Ladder, mode: usize, psi: &FockState) -> Result<FockState> {
    if mode >= psi.modes {
        return Err(Error::usage(format!(
            "mode {mode} out of range for {} modes",
            psi.modes
        )));
    }
    let mut out = FockState::zero(psi.modes, psi.cutoff)?;
    out.truncated_mass = psi.truncated_mass;
    for n in 0..=psi.cutoff {
        let block = &psi.sectors[n as usize];
        for (amp, idx) in block.iter().zip(multi_index_basis(psi.modes, n)?) {
            if *amp == ZERO {
                continue;
            }
            let mut occ = idx.occupations().to_vec();
            match kind {
                Ladder::Create => {
                    let factor = f64::from(occ[mode] + 1).sqrt();
                    if n == psi.cutoff {
                        out.truncated_mass += (amp * factor).norm_sqr();
                        continue;
                    }
                    occ[mode] += 1;
                    let target = MultiIndex::new(occ);
                    out.sectors[n as usize + 1][multi_index_rank(&target)?] += amp * factor;
                }
                Ladder::Annihilate => {
                    if occ[mode] == 0 {
                        continue;
                    }
                    let factor = f64::from(occ[mode]).sqrt();
                    occ[mode] -= 1;
                    let target = MultiIndex::new(occ);
                    out.sectors[n as usize - 1][multi_index_rank(&target)?] += amp * factor;
                }
            }
        }
    }
    Ok(out)
}

/// The (unnormalised) fixed-total-occupation block of `psi`.
pub fn n_sector_projection(psi: &FockState, n: u32) -> Result<StateVector> {
    if n > psi.cutoff {
        return Err(Error::usage(format!(
            "sector {n} exceeds cutoff {}",
            psi.cutoff
        )));
    }
    Ok(StateVector::from_vec_unchecked(
        psi.sectors[n as usize].clone(),
    ))
}

/// Bargmann function `Ψ(η) = Σₙ (1/√n!) ξ̄_{a…b} η^a⋯η^b`.
///
/// A Fock amplitude `F_m` on occupation `m` corresponds to the symmetric
/// tensor component `F_m/√multinomial(n, m)`, and the full contraction counts
/// each component `multinomial(n, m)` times.
pub fn bargmann_eval(psi: &FockState, eta: &[Complex64]) -> Result<Complex64> {
    if eta.len() != psi.modes {
        return Err(Error::DimensionMismatch {
            expected: psi.modes,
            actual: eta.len(),
        });
    }
    let mut total = ZERO;
    let mut inv_sqrt_factorial = 1.0f64;
    for n in 0..=psi.cutoff {
        if n > 0 {
            inv_sqrt_factorial /= f64::from(n).sqrt();
        }
        let mut sector_sum = ZERO;
        for (amp, idx) in psi.sectors[n as usize]
            .iter()
            .zip(multi_index_basis(psi.modes, n)?)
        {
            if *amp == ZERO {
                continue;
            }
            sector_sum += amp.conj() * monomial(eta, &idx) * sqrt_multinomial(n, &idx)?;
        }
        total += sector_sum * inv_sqrt_factorial;
    }
    Ok(total)
}

/// Parameters of one coherent-state family. Build through the constructors,
/// which enforce each family's domain.
#[derive(Debug, Clone, PartialEq)]
pub enum CoherentParameters {
    Glauber {
        amplitudes: Vec<Complex64>,
    },
    Su2 {
        theta: f64,
        phi: f64,
        n: u32,
    },
    Su3 {
        theta: f64,
        varphi: f64,
        xi: f64,
        eta: f64,
        n: u32,
    },
    Suk {
        point: StateVector,
        n: u32,
    },
    Su11 {
        xi: Complex64,
    },
    Su1k {
        xi: Vec<Complex64>,
    },
    IndefiniteSu11 {
        tau: f64,
        phi: f64,
        n: u32,
    },
}

fn check_angle(name: &str, value: f64, upper: f64, closed: bool) -> Result<()> {
    let inside = value >= 0.0
        && if closed {
            value <= upper
        } else {
            value < upper
        };
    if inside {
        Ok(())
    } else {
        let bracket = if closed { "]" } else { ")" };
        Err(Error::domain(format!(
            "{name} = {value} outside [0, {upper}{bracket}"
        )))
    }
}

fn check_degree(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::usage("degree N must be >= 1"))
    } else {
        Ok(())
    }
}

impl CoherentParameters {
    pub fn glauber(amplitudes: Vec<Complex64>) -> Result<Self> {
        let p = CoherentParameters::Glauber { amplitudes };
        p.validate()?;
        Ok(p)
    }

    pub fn su2(theta: f64, phi: f64, n: u32) -> Result<Self> {
        let p = CoherentParameters::Su2 { theta, phi, n };
        p.validate()?;
        Ok(p)
    }

    pub fn su3(theta: f64, varphi: f64, xi: f64, eta: f64, n: u32) -> Result<Self> {
        let p = CoherentParameters::Su3 {
            theta,
            varphi,
            xi,
            eta,
            n,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn suk(point: StateVector, n: u32) -> Result<Self> {
        let p = CoherentParameters::Suk { point, n };
        p.validate()?;
        Ok(p)
    }

    pub fn su11(xi: Complex64) -> Result<Self> {
        let p = CoherentParameters::Su11 { xi };
        p.validate()?;
        Ok(p)
    }

    pub fn su1k(xi: Vec<Complex64>) -> Result<Self> {
        let p = CoherentParameters::Su1k { xi };
        p.validate()?;
        Ok(p)
    }

    pub fn indefinite_su11(tau: f64, phi: f64, n: u32) -> Result<Self> {
        let p = CoherentParameters::IndefiniteSu11 { tau, phi, n };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CoherentParameters::Glauber { amplitudes } => {
                if amplitudes.is_empty() {
                    return Err(Error::usage("Glauber state needs at least one mode"));
                }
                Ok(())
            }
            CoherentParameters::Su2 { theta, phi, n } => {
                check_degree(*n)?;
                check_angle("theta", *theta, PI, true)?;
                check_angle("phi", *phi, TAU, false)
            }
            CoherentParameters::Su3 {
                theta,
                varphi,
                xi,
                eta,
                n,
            } => {
                check_degree(*n)?;
                check_angle("theta", *theta, PI, true)?;
                check_angle("varphi", *varphi, PI, true)?;
                check_angle("xi", *xi, TAU, false)?;
                check_angle("eta", *eta, TAU, false)
            }
            CoherentParameters::Suk { point, n } => {
                check_degree(*n)?;
                if point.len() < 2 {
                    return Err(Error::usage("SU(k+1) point needs k >= 1"));
                }
                if point.is_zero() {
                    return Err(Error::usage("SU(k+1) point must be nonzero"));
                }
                Ok(())
            }
            CoherentParameters::Su11 { xi } => check_disc(xi.norm_sqr(), "SU(1,1) state"),
            CoherentParameters::Su1k { xi } => {
                if xi.is_empty() {
                    return Err(Error::usage("SU(1,k) state needs k >= 1"));
                }
                check_disc(xi.iter().map(|z| z.norm_sqr()).sum(), "SU(1,k) state")
            }
            CoherentParameters::IndefiniteSu11 { tau, phi, n } => {
                check_degree(*n)?;
                if !tau.is_finite() {
                    return Err(Error::NonFinite("tau".into()));
                }
                check_angle("phi", *phi, TAU, false)
            }
        }
    }

    /// Builds the state. `cutoff` applies to the infinite families (Glauber,
    /// SU(1,1), SU(1,k)); `None` selects the documented defaults.
    pub fn build(&self, cutoff: Option<u32>) -> Result<CoherentState> {
        self.validate()?;
        Ok(match self {
            CoherentParameters::Glauber { amplitudes } => {
                let cutoff = cutoff.unwrap_or_else(|| default_glauber_cutoff(amplitudes));
                CoherentState::Fock(glauber_state(amplitudes, cutoff)?)
            }
            CoherentParameters::Su2 { theta, phi, n } => CoherentState::Finite {
                state: su2_state(*theta, *phi, *n)?,
                labels: multi_index_basis(2, *n)?,
            },
            CoherentParameters::Su3 {
                theta,
                varphi,
                xi,
                eta,
                n,
            } => CoherentState::Finite {
                state: su3_state(*theta, *varphi, *xi, *eta, *n)?,
                labels: multi_index_basis(3, *n)?,
            },
            CoherentParameters::Suk { point, n } => CoherentState::Finite {
                state: suk_state(point, *n)?,
                labels: multi_index_basis(point.len(), *n)?,
            },
            CoherentParameters::Su11 { xi } => {
                let cutoff = cutoff.unwrap_or_else(|| default_disc_cutoff(xi.norm_sqr()));
                let state = su11_perelomov(*xi, cutoff)?;
                let labels = (0..cutoff).map(|n| MultiIndex::new(vec![n])).collect();
                CoherentState::Finite { state, labels }
            }
            CoherentParameters::Su1k { xi } => {
                let r2 = xi.iter().map(|z| z.norm_sqr()).sum();
                let cutoff = cutoff.unwrap_or_else(|| default_disc_cutoff(r2));
                CoherentState::Fock(su1k_state(xi, cutoff)?)
            }
            CoherentParameters::IndefiniteSu11 { tau, phi, n } => CoherentState::Finite {
                state: indefinite_su11_state(*tau, *phi, *n)?,
                labels: multi_index_basis(2, *n)?,
            },
        })
    }

    /// Ambient Hermitian form the family lives in.
    pub fn ambient_space(&self, dim: usize) -> Result<InnerProductSpace> {
        match self {
            CoherentParameters::IndefiniteSu11 { n, .. } => indefinite_su11_signature(*n),
            _ => InnerProductSpace::definite(dim),
        }
    }
}

/// A constructed coherent state together with its basis labels.
#[derive(Debug, Clone, PartialEq)]
pub enum CoherentState {
    Finite {
        state: StateVector,
        labels: Vec<MultiIndex>,
    },
    Fock(FockState),
}

impl CoherentState {
    pub fn to_state_vector(&self) -> StateVector {
        match self {
            CoherentState::Finite { state, .. } => state.clone(),
            CoherentState::Fock(psi) => psi.to_state_vector(),
        }
    }

    pub fn labels(&self) -> Result<Vec<MultiIndex>> {
        match self {
            CoherentState::Finite { labels, .. } => Ok(labels.clone()),
            CoherentState::Fock(psi) => psi.labels(),
        }
    }

    pub fn truncated_mass(&self) -> f64 {
        match self {
            CoherentState::Finite { .. } => 0.0,
            CoherentState::Fock(psi) => psi.truncated_mass(),
        }
    }
}
