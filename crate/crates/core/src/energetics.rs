//! Mean energy, Gaussian passive energies, ergotropies and the (relative)
//! ergotropic gap of two-mode states.
//!
//! Energies use the vacuum-zero convention `E = ¼ Σ ω_k (Tr σ_k − 2)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase_space::{
    ensure_physical, symplectic_eigenvalues, CovarianceMatrix, SymplecticSpectrum,
};

/// Global passive energies at or below this value count as a globally pure state.
pub const PURITY_TOL: f64 = 1e-9;

/// Oscillator frequencies of the two modes, with `ω_A ≤ ω_B`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModePair {
    omega_a: f64,
    omega_b: f64,
}

impl ModePair {
    /// Rejects non-positive frequencies and `ω_A > ω_B`: the energy formulas
    /// pair the larger symplectic eigenvalue with mode A, so the modes are
    /// never silently relabelled.
    pub fn new(omega_a: f64, omega_b: f64) -> Result<Self> {
        if !(omega_a > 0.0 && omega_b > 0.0 && omega_a.is_finite() && omega_b.is_finite()) {
            return Err(Error::InvalidModes(format!(
                "frequencies must be positive and finite, got ({omega_a}, {omega_b})"
            )));
        }
        if omega_a > omega_b {
            return Err(Error::InvalidModes(format!(
                "mode A must carry the lower frequency, got ω_A = {omega_a} > ω_B = {omega_b}"
            )));
        }
        Ok(Self { omega_a, omega_b })
    }

    pub fn equal(omega: f64) -> Result<Self> {
        Self::new(omega, omega)
    }

    /// `ω_A = ω`, `ω_B = α ω`.
    pub fn with_ratio(omega: f64, alpha: f64) -> Result<Self> {
        Self::new(omega, alpha * omega)
    }

    pub fn omega_a(&self) -> f64 {
        self.omega_a
    }

    pub fn omega_b(&self) -> f64 {
        self.omega_b
    }

    /// Frequency ratio `α = ω_B/ω_A ≥ 1`.
    pub fn alpha(&self) -> f64 {
        self.omega_b / self.omega_a
    }

    /// `2/(ω_A + ω_B)`, the scale of the pure-state map between gap and
    /// mutual information.
    pub fn gamma_coef(&self) -> f64 {
        2.0 / (self.omega_a + self.omega_b)
    }
}

/// Generative parametrization `σ = P(φ) B(θ) S(√z) V(k_A, k_B) S B(θ)ᵀ P(φ)ᵀ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochMessiahParams {
    /// Mean thermal factor `(k_A + k_B)/2`.
    pub k: f64,
    /// Thermal asymmetry `(k_A − k_B)/2`.
    pub gamma: f64,
    pub z_a: f64,
    pub z_b: f64,
    /// Beam-splitter angle in `[0, π/2]`.
    pub theta: f64,
    pub phi_a: f64,
    pub phi_b: f64,
}

impl BlochMessiahParams {
    pub fn new(
        k: f64,
        gamma: f64,
        z_a: f64,
        z_b: f64,
        theta: f64,
        phi_a: f64,
        phi_b: f64,
    ) -> Result<Self> {
        let p = Self {
            k,
            gamma,
            z_a,
            z_b,
            theta,
            phi_a,
            phi_b,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.k, self.gamma, self.z_a, self.z_b, self.theta, self.phi_a, self.phi_b,
        ]
        .iter()
        .all(|x| x.is_finite());
        if !finite {
            return Err(Error::InvalidParams("non-finite parameter".into()));
        }
        if self.k - self.gamma.abs() < 1.0 - 1e-12 {
            return Err(Error::InvalidParams(format!(
                "thermal factors k ± γ must be ≥ 1 (k = {}, γ = {})",
                self.k, self.gamma
            )));
        }
        if !(self.z_a > 0.0 && self.z_b > 0.0) {
            return Err(Error::InvalidParams(format!(
                "squeezing factors must be positive (z_A = {}, z_B = {})",
                self.z_a, self.z_b
            )));
        }
        if !(-1e-12..=std::f64::consts::FRAC_PI_2 + 1e-12).contains(&self.theta) {
            return Err(Error::InvalidParams(format!(
                "beam-splitter angle {} outside [0, π/2]",
                self.theta
            )));
        }
        Ok(())
    }

    /// `(k_A, k_B) = (k + γ, k − γ)`.
    pub fn thermal_factors(&self) -> (f64, f64) {
        (self.k + self.gamma, self.k - self.gamma)
    }
}

/// Relative ergotropic gap, or a flag when the global passive state is the
/// vacuum while the gap is positive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum RegValue {
    Value(f64),
    DegeneratePurity,
}

impl RegValue {
    pub fn value(&self) -> Option<f64> {
        match self {
            RegValue::Value(v) => Some(*v),
            RegValue::DegeneratePurity => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EnergyReport {
    pub mean_energy: f64,
    pub e_local_passive: f64,
    pub e_global_passive: f64,
    pub gap: f64,
    pub reg: RegValue,
    pub gaussian_ergotropy_global: f64,
    pub gaussian_ergotropy_local: f64,
    /// Set when `ω_A < ω_B` but mode B carries the larger local invariant.
    pub mode_order_flag: bool,
}

pub fn mean_energy(sigma: &CovarianceMatrix, modes: &ModePair) -> f64 {
    0.25 * (modes.omega_a * (sigma.trace_a() - 2.0) + modes.omega_b * (sigma.trace_b() - 2.0))
}

/// `√det σ_A`, `√det σ_B`.
pub fn local_invariants(sigma: &CovarianceMatrix) -> (f64, f64) {
    let inv = sigma.local_invariants();
    (inv.det_a.max(0.0).sqrt(), inv.det_b.max(0.0).sqrt())
}

fn passive_from(
    spectrum: &SymplecticSpectrum,
    a: f64,
    b: f64,
    modes: &ModePair,
) -> (f64, f64) {
    let e_local = 0.5 * modes.omega_a * (a - 1.0) + 0.5 * modes.omega_b * (b - 1.0);
    // larger symplectic eigenvalue on the lower frequency
    let e_global = 0.5 * modes.omega_a * (spectrum.nu_plus - 1.0)
        + 0.5 * modes.omega_b * (spectrum.nu_minus - 1.0);
    (e_local, e_global)
}

/// Local and global Gaussian passive energies `(E_lp, E_gp)`.
pub fn passive_energies(sigma: &CovarianceMatrix, modes: &ModePair) -> Result<(f64, f64)> {
    let spectrum = symplectic_eigenvalues(sigma)?;
    let (a, b) = local_invariants(sigma);
    Ok(passive_from(&spectrum, a, b, modes))
}

pub fn ergotropy_report(sigma: &CovarianceMatrix, modes: &ModePair) -> Result<EnergyReport> {
    let spectrum = ensure_physical(sigma)?;
    let (a, b) = local_invariants(sigma);
    let (e_local, e_global) = passive_from(&spectrum, a, b, modes);
    let mean = mean_energy(sigma, modes);
    let gap = e_local - e_global;
    let reg = if e_global > PURITY_TOL {
        RegValue::Value(gap / e_global)
    } else if gap > PURITY_TOL {
        RegValue::DegeneratePurity
    } else {
        RegValue::Value(0.0)
    };
    Ok(EnergyReport {
        mean_energy: mean,
        e_local_passive: e_local,
        e_global_passive: e_global,
        gap,
        reg,
        gaussian_ergotropy_global: mean - e_global,
        gaussian_ergotropy_local: mean - e_local,
        mode_order_flag: modes.omega_a < modes.omega_b && b > a + 1e-12,
    })
}

/// Closed-form relative ergotropic gap of a Bloch–Messiah state with
/// `ω_B = α ω_A`.
///
/// The global passive energy always places `max(k_A, k_B)` on mode A, so a
/// negative `γ` enters the normalization through `|γ|`.
pub fn reg_closed_form(params: &BlochMessiahParams, alpha: f64) -> Result<f64> {
    params.validate()?;
    if !(alpha >= 1.0 && alpha.is_finite()) {
        return Err(Error::InvalidParams(format!("frequency ratio α = {alpha} < 1")));
    }
    let BlochMessiahParams {
        k,
        gamma,
        z_a,
        z_b,
        theta,
        ..
    } = *params;
    let g = gamma.abs();
    let (s, c) = theta.sin_cos();
    let (c2, s2) = (c * c, s * s);
    let mixing = (k * k - gamma * gamma) * c2 * s2 * (z_a * z_a + z_b * z_b) / (z_a * z_b);
    let local_a = (k + gamma).powi(2) * c2 * c2 + (k - gamma).powi(2) * s2 * s2 + mixing;
    let local_b = (k - gamma).powi(2) * c2 * c2 + (k + gamma).powi(2) * s2 * s2 + mixing;
    let denom = (k - 1.0) * (1.0 + alpha) + g * (1.0 - alpha);
    if denom <= PURITY_TOL {
        return Err(Error::DegeneratePurity);
    }
    let numer = local_a.sqrt() + alpha * local_b.sqrt() - k * (1.0 + alpha) - g * (1.0 - alpha);
    Ok(numer / denom)
}

/// Ergotropic gap of the two-mode squeezed thermal state, `2kω sinh²r`.
pub fn tms_gap(k: f64, r: f64, omega: f64) -> f64 {
    2.0 * k * omega * r.sinh().powi(2)
}

/// Gap of a pure two-mode state with local invariant `a`: `(a − 1)(ω_A + ω_B)/2`.
pub fn pure_state_gap(a: f64, modes: &ModePair) -> f64 {
    0.5 * (a - 1.0) * (modes.omega_a + modes.omega_b)
}
