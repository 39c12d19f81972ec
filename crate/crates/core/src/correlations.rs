//! Entropic correlation quantities (in bits) and the functional-independence
//! check between the relative ergotropic gap and the mutual information.

use serde::Serialize;

use crate::energetics::local_invariants;
use crate::error::{Error, Result};
use crate::phase_space::{ensure_physical, CovarianceMatrix, PHYSICAL_TOL};

/// Below this distance from 1 the entropy function returns 0.
const H_CUTOFF: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CorrelationReport {
    /// Quantum mutual information `I(A:B)`.
    pub qmi: f64,
    /// `S(B|A) = S(AB) − S(A)`.
    pub conditional_entropy: f64,
    /// Effective mixing parameter `√((det σ_A + det σ_B)/(ν₊² + ν₋²))`; equal to
    /// the Bloch–Messiah τ when both thermal factors coincide.
    pub tau: f64,
}

fn h_unchecked(x: f64) -> f64 {
    if x - 1.0 < H_CUTOFF {
        return 0.0;
    }
    let p = 0.5 * (x + 1.0);
    let m = 0.5 * (x - 1.0);
    p * p.log2() - m * m.log2()
}

/// Von Neumann entropy of a single-mode Gaussian state with symplectic
/// eigenvalue `x`.
pub fn entropy_h(x: f64) -> Result<f64> {
    if !(x >= 1.0 - PHYSICAL_TOL) {
        return Err(Error::Domain(x));
    }
    Ok(h_unchecked(x))
}

/// `I = h(a) + h(b) − h(ν₊) − h(ν₋)`.
pub fn mutual_information(sigma: &CovarianceMatrix) -> Result<f64> {
    let spectrum = ensure_physical(sigma)?;
    let (a, b) = local_invariants(sigma);
    Ok(entropy_h(a)? + entropy_h(b)? - entropy_h(spectrum.nu_plus)? - entropy_h(spectrum.nu_minus)?)
}

pub fn correlation_report(sigma: &CovarianceMatrix) -> Result<CorrelationReport> {
    let spectrum = ensure_physical(sigma)?;
    let (a, b) = local_invariants(sigma);
    let (hp, hm) = (entropy_h(spectrum.nu_plus)?, entropy_h(spectrum.nu_minus)?);
    let (ha, hb) = (entropy_h(a)?, entropy_h(b)?);
    let nu_sq = spectrum.nu_plus.powi(2) + spectrum.nu_minus.powi(2);
    Ok(CorrelationReport {
        qmi: ha + hb - hp - hm,
        conditional_entropy: hp + hm - ha,
        tau: ((a * a + b * b) / nu_sq).sqrt(),
    })
}

/// Pure-state map from the ergotropic gap to the mutual information,
/// `f(x) = (γx + 2) log₂((γx + 2)/2) − γx log₂(γx/2)` with `γ = 2/(ω_A + ω_B)`.
pub fn monotone_map_f(x: f64, gamma_coef: f64) -> f64 {
    let y = gamma_coef * x;
    let head = (y + 2.0) * ((y + 2.0) / 2.0).log2();
    if y <= 0.0 {
        return head;
    }
    head - y * (y / 2.0).log2()
}

/// `S(B|A) = 2h(k) − h(kτ)` for equal thermal factors `k`; negative values
/// certify entanglement.
pub fn conditional_entropy_witness(k: f64, tau: f64) -> Result<f64> {
    if !(tau >= 1.0 - PHYSICAL_TOL) {
        return Err(Error::Domain(tau));
    }
    Ok(2.0 * entropy_h(k)? - entropy_h(k * tau)?)
}

/// `τ = √(cos⁴θ + sin⁴θ + cos²θ sin²θ (z_A² + z_B²)/(z_A z_B))`.
pub fn tau_of(theta: f64, z_a: f64, z_b: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let (c2, s2) = (c * c, s * s);
    (c2 * c2 + s2 * s2 + c2 * s2 * (z_a * z_a + z_b * z_b) / (z_a * z_b)).sqrt()
}

/// Relative gap at equal frequencies in terms of `(a, b, ν₊, ν₋)`.
pub fn reg_equal_frequency(a: f64, b: f64, nu_plus: f64, nu_minus: f64) -> f64 {
    (a + b - nu_plus - nu_minus) / (nu_plus + nu_minus - 2.0)
}

/// Mutual information in terms of `(a, b, ν₊, ν₋)`; all arguments must be ≥ 1.
pub fn qmi_from_invariants(a: f64, b: f64, nu_plus: f64, nu_minus: f64) -> f64 {
    h_unchecked(a) + h_unchecked(b) - h_unchecked(nu_plus) - h_unchecked(nu_minus)
}

fn dh(x: f64) -> f64 {
    0.5 * (((x + 1.0) / 2.0).log2() - ((x - 1.0) / 2.0).log2())
}

/// Analytic 2×4 Jacobian of `(REG, I)` with respect to `(a, b, ν₊, ν₋)`.
pub fn jacobian(a: f64, b: f64, nu_plus: f64, nu_minus: f64) -> [[f64; 4]; 2] {
    let d = nu_plus + nu_minus - 2.0;
    let dn = (2.0 - a - b) / (d * d);
    [
        [1.0 / d, 1.0 / d, dn, dn],
        [dh(a), dh(b), -dh(nu_plus), -dh(nu_minus)],
    ]
}

/// Largest absolute 2×2 minor of a 2×4 matrix.
pub fn max_minor(j: &[[f64; 4]; 2]) -> f64 {
    let mut best: f64 = 0.0;
    for p in 0..4 {
        for q in p + 1..4 {
            best = best.max((j[0][p] * j[1][q] - j[0][q] * j[1][p]).abs());
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IndependenceEvidence {
    pub jacobian: [[f64; 4]; 2],
    pub max_minor: f64,
    /// Worst relative disagreement between analytic and central-difference gradients.
    pub fd_max_rel_error: f64,
    pub rank_two: bool,
}

const FD_STEP: f64 = 1e-6;
const MINOR_TOL: f64 = 1e-9;

/// Pointwise evidence that REG and mutual information are functionally
/// independent at `(a, b, ν₊, ν₋)`.
pub fn jacobian_independence(
    a: f64,
    b: f64,
    nu_plus: f64,
    nu_minus: f64,
) -> Result<IndependenceEvidence> {
    for (name, v) in [("a", a), ("b", b), ("ν₊", nu_plus), ("ν₋", nu_minus)] {
        if !(v > 1.0) {
            return Err(Error::InvalidParams(format!("{name} = {v} must exceed 1")));
        }
    }
    if (a - b).abs() <= 1e-12 * a.max(b) {
        return Err(Error::DegenerateInput(format!(
            "a = b = {a}: the REG partials in a and b coincide with the mutual-information ones"
        )));
    }
    let x = [a, b, nu_plus, nu_minus];
    let jac = jacobian(a, b, nu_plus, nu_minus);
    let fns: [fn(f64, f64, f64, f64) -> f64; 2] = [reg_equal_frequency, qmi_from_invariants];
    let mut worst: f64 = 0.0;
    for (row, f) in fns.iter().enumerate() {
        for col in 0..4 {
            let mut hi = x;
            let mut lo = x;
            hi[col] += FD_STEP;
            lo[col] -= FD_STEP;
            let fd = (f(hi[0], hi[1], hi[2], hi[3]) - f(lo[0], lo[1], lo[2], lo[3])) / (2.0 * FD_STEP);
            let an = jac[row][col];
            worst = worst.max((an - fd).abs() / an.abs().max(f64::MIN_POSITIVE));
        }
    }
    let minor = max_minor(&jac);
    Ok(IndependenceEvidence {
        jacobian: jac,
        max_minor: minor,
        fd_max_rel_error: worst,
        rank_two: minor > MINOR_TOL,
    })
}
