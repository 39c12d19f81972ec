//! Entanglement witnesses: the PPT criterion, the relative-gap bounds and the
//! verdicts built on them, a second-moment Shchukin–Vogel inequality, and the
//! search for the largest Gaussian relative gap among photon-subtracted states
//! that the moment inequality does not flag.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::energetics::{ergotropy_report, ModePair, RegValue, PURITY_TOL};
use crate::error::{Error, Result};
use crate::phase_space::{ensure_physical, CovarianceMatrix};
use crate::states::{moments_from_cm, photon_subtracted_tms, StateRecord};

/// Margin applied to every strict inequality in the verdicts.
pub const VERDICT_TOL: f64 = 1e-12;
/// Below this `γ` the two bounds are treated as coincident.
pub const GAMMA_ZERO_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    SeparableCertified,
    EntangledCertified,
    Indeterminate,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::SeparableCertified => "separable",
            Verdict::EntangledCertified => "entangled",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

/// Which rule produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictSource {
    /// Relative gap compared against the separable/entangled bounds.
    RegBound,
    /// Globally pure input: entangled iff the gap is positive.
    PureStateGap,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WitnessVerdict {
    pub verdict: Verdict,
    pub source: VerdictSource,
    /// Relative gap; `+∞` for an entangled globally pure state.
    pub reg_value: f64,
    pub bound_sep: f64,
    pub bound_ent: f64,
    pub ppt_value: f64,
    pub k: f64,
    pub gamma: f64,
}

/// `det σ − det σ_A − det σ_B + 2 det σ_AB + 1`.
pub fn ppt_value(sigma: &CovarianceMatrix) -> f64 {
    let inv = sigma.local_invariants();
    inv.det - inv.det_a - inv.det_b + 2.0 * inv.det_c + 1.0
}

/// PPT test: separable iff the value is `≥ −1e-12`. Sufficient only for
/// Gaussian states.
pub fn ppt_separable(sigma: &CovarianceMatrix) -> (bool, f64) {
    let v = ppt_value(sigma);
    (v >= -VERDICT_TOL, v)
}

/// Largest relative gap of a separable state and smallest relative gap of an
/// entangled state with symplectic eigenvalues `k ± γ` and `ω_B = α ω_A`.
pub fn theorem2_bounds(k: f64, gamma: f64, alpha: f64) -> Result<(f64, f64)> {
    if !(k.is_finite() && gamma.is_finite() && k - gamma.abs() >= 1.0 - 1e-12) {
        return Err(Error::InvalidParams(format!(
            "bounds need k − |γ| ≥ 1 (k = {k}, γ = {gamma})"
        )));
    }
    if !(alpha >= 1.0 && alpha.is_finite()) {
        return Err(Error::InvalidParams(format!("frequency ratio α = {alpha} < 1")));
    }
    let g = gamma.abs();
    let denom = (k - 1.0) * (1.0 + alpha) + g * (1.0 - alpha);
    if denom <= VERDICT_TOL {
        return Err(Error::DegeneratePurity);
    }
    let offset = -(k * (1.0 + alpha) + g * (1.0 - alpha));
    let base = 1.0 + k.powi(4) + g.powi(4) + 2.0 * k * k + 2.0 * g * g - 2.0 * k * k * g * g;
    let cross = 8.0 * k * g;
    let half = 0.5 * (1.0 + alpha);
    let sep = (offset + half * (base + cross).sqrt()) / denom;
    let ent = (offset + half * (base - cross).max(0.0).sqrt()) / denom;
    Ok((sep, ent))
}

/// Entanglement verdict of a Gaussian state from its relative gap at the
/// given mode frequencies. `k` and `γ` come from the state's own spectrum.
pub fn classify(sigma: &CovarianceMatrix, modes: &ModePair) -> Result<WitnessVerdict> {
    let spectrum = ensure_physical(sigma)?;
    let k = spectrum.mean();
    let gamma = spectrum.asymmetry();
    let report = ergotropy_report(sigma, modes)?;
    let ppt = ppt_value(sigma);

    let bounds = match report.reg {
        RegValue::Value(_) if report.e_global_passive > PURITY_TOL => {
            match theorem2_bounds(k, gamma, modes.alpha()) {
                Ok(b) => Some(b),
                Err(Error::DegeneratePurity) => None,
                Err(e) => return Err(e),
            }
        }
        _ => None,
    };

    let Some((mut sep, mut ent)) = bounds else {
        let entangled = report.gap > PURITY_TOL;
        return Ok(WitnessVerdict {
            verdict: if entangled {
                Verdict::EntangledCertified
            } else {
                Verdict::SeparableCertified
            },
            source: VerdictSource::PureStateGap,
            reg_value: match report.reg {
                RegValue::Value(v) => v,
                RegValue::DegeneratePurity => f64::INFINITY,
            },
            bound_sep: 0.0,
            bound_ent: 0.0,
            ppt_value: ppt,
            k,
            gamma,
        });
    };
    if gamma <= GAMMA_ZERO_TOL {
        ent = sep;
    }
    ent = ent.min(sep);
    sep = sep.max(ent);

    let reg = report.reg.value().expect("bounds exist only for finite relative gaps");
    let verdict = if reg > sep + VERDICT_TOL {
        Verdict::EntangledCertified
    } else if reg <= ent + VERDICT_TOL {
        Verdict::SeparableCertified
    } else {
        Verdict::Indeterminate
    };
    Ok(WitnessVerdict {
        verdict,
        source: VerdictSource::RegBound,
        reg_value: reg,
        bound_sep: sep,
        bound_ent: ent,
        ppt_value: ppt,
        k,
        gamma,
    })
}

/// As [`classify`], refusing records not flagged Gaussian.
pub fn classify_record(record: &StateRecord, modes: &ModePair) -> Result<WitnessVerdict> {
    if !record.gaussian {
        return Err(Error::NonGaussian(record.family().to_string()));
    }
    classify(&record.sigma, modes)
}

/// Ladder-operator second moments of a zero-mean two-mode state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SecondMoments {
    /// `⟨a†a⟩`
    pub n_a: f64,
    /// `⟨b†b⟩`
    pub n_b: f64,
    /// `⟨ab⟩`
    pub ab: Complex64,
    /// `⟨a†b†⟩`
    pub a_dag_b_dag: Complex64,
}

/// `⟨a†a⟩⟨b†b⟩ − ⟨ab⟩⟨a†b†⟩`; a negative value certifies entanglement.
pub fn sv_witness(moments: &SecondMoments) -> (bool, f64) {
    let v = moments.n_a * moments.n_b - (moments.ab * moments.a_dag_b_dag).re;
    (v < -VERDICT_TOL, v)
}

/// Rectangular `(k, z)` grid; `z` may be log-spaced.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub k_min: f64,
    pub k_max: f64,
    pub k_count: usize,
    pub z_min: f64,
    pub z_max: f64,
    pub z_count: usize,
    pub z_log: bool,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self::with_resolution(200, 200)
    }
}

impl GridSpec {
    /// `k` on `(1, 4]` excluding the vacuum column, `z` log-spaced on `[0.05, 1]`.
    pub fn with_resolution(k_count: usize, z_count: usize) -> Self {
        let k_count = k_count.max(1);
        Self {
            k_min: 1.0 + 3.0 / k_count as f64,
            k_max: 4.0,
            k_count,
            z_min: 0.05,
            z_max: 1.0,
            z_count,
            z_log: true,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = self.k_count >= 1
            && self.z_count >= 1
            && self.k_min > 1.0
            && self.k_min <= self.k_max
            && self.k_max.is_finite()
            && self.z_min > 0.0
            && self.z_min <= self.z_max
            && self.z_max <= 1.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!("invalid grid {self:?}")))
        }
    }

    pub fn k_values(&self) -> Vec<f64> {
        linspace(self.k_min, self.k_max, self.k_count)
    }

    pub fn z_values(&self) -> Vec<f64> {
        if self.z_log {
            linspace(self.z_min.ln(), self.z_max.ln(), self.z_count)
                .into_iter()
                .map(f64::exp)
                .collect()
        } else {
            linspace(self.z_min, self.z_max, self.z_count)
        }
    }
}

/// `count` evenly spaced points on `[lo, hi]`; a single point sits at `lo`.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (count - 1) as f64;
            (0..count)
                .map(|i| if i == count - 1 { hi } else { lo + step * i as f64 })
                .collect()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThresholdResult {
    pub threshold: f64,
    pub k: f64,
    pub z: f64,
    /// Grid points where the moment inequality is not violated.
    pub region_size: usize,
    pub grid: GridSpec,
}

/// Largest Gaussian relative gap (equal frequencies) of photon-subtracted
/// TMS states over the grid points not flagged by [`sv_witness`]. Ties keep
/// the smallest `k`, then the smallest `z`.
pub fn reg_threshold_search(grid: &GridSpec) -> Result<ThresholdResult> {
    grid.validate()?;
    let modes = ModePair::equal(1.0)?;
    let zs = grid.z_values();
    let mut best: Option<(f64, f64, f64)> = None;
    let mut region_size = 0;
    for k in grid.k_values() {
        for &z in &zs {
            let record = match photon_subtracted_tms(k, z) {
                Ok(r) => r,
                Err(Error::SubtractionFromVacuum) => continue,
                Err(e) => return Err(e),
            };
            let (flagged, _) = sv_witness(&moments_from_cm(&record.sigma));
            if flagged {
                continue;
            }
            region_size += 1;
            let reg = match ergotropy_report(&record.sigma, &modes)?.reg {
                RegValue::Value(v) => v,
                RegValue::DegeneratePurity => f64::INFINITY,
            };
            if best.map_or(true, |(b, _, _)| reg > b) {
                best = Some((reg, k, z));
            }
        }
    }
    let (threshold, k, z) = best.ok_or(Error::EmptyRegion)?;
    log::debug!("threshold {threshold} at k = {k}, z = {z} over {region_size} points");
    Ok(ThresholdResult {
        threshold,
        k,
        z,
        region_size,
        grid: *grid,
    })
}
