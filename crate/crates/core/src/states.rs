//! Constructors for the two-mode state families: Bloch–Messiah composition,
//! two-mode squeezed thermal states, random ensembles, photon-subtracted TMS
//! states, symmetric Fock superpositions and Bell-state mixtures.
//!
//! Two squeezing conventions coexist. `tms(k, r)` takes the squeezing
//! parameter `r`; the photon-subtracted family takes `z = e^{−2r}`; the
//! Bloch–Messiah parameters `z_A`, `z_B` rescale quadratures by `√z`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::energetics::BlochMessiahParams;
use crate::error::{Error, Result};
use crate::phase_space::{apply_symplectic, CovarianceMatrix, SymplecticMatrix};
use crate::witnesses::SecondMoments;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    BlochMessiah,
    Tms,
    PhotonSubtractedTms,
    FockSuperposition,
    BellMixture,
    Raw,
}

impl Family {
    /// Whether the family consists of Gaussian states.
    pub fn is_gaussian(self) -> bool {
        matches!(self, Family::BlochMessiah | Family::Tms)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::BlochMessiah => "bloch_messiah",
            Family::Tms => "tms",
            Family::PhotonSubtractedTms => "photon_subtracted_tms",
            Family::FockSuperposition => "fock_superposition",
            Family::BellMixture => "bell_mixture",
            Family::Raw => "raw",
        };
        f.write_str(s)
    }
}

/// Family-specific generating parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum FamilyParams {
    BlochMessiah(BlochMessiahParams),
    Tms { k: f64, r: f64 },
    PhotonSubtractedTms { k: f64, z: f64 },
    FockSuperposition { n: u32, m: u32 },
    BellMixture { n: u32, lambda: f64 },
    Raw,
}

impl FamilyParams {
    pub fn family(&self) -> Family {
        match self {
            FamilyParams::BlochMessiah(_) => Family::BlochMessiah,
            FamilyParams::Tms { .. } => Family::Tms,
            FamilyParams::PhotonSubtractedTms { .. } => Family::PhotonSubtractedTms,
            FamilyParams::FockSuperposition { .. } => Family::FockSuperposition,
            FamilyParams::BellMixture { .. } => Family::BellMixture,
            FamilyParams::Raw => Family::Raw,
        }
    }

    /// Rebuilds the covariance matrix from the parameters; `None` for raw input.
    pub fn rebuild(&self) -> Option<Result<CovarianceMatrix>> {
        Some(match *self {
            FamilyParams::BlochMessiah(p) => compose_bloch_messiah(&p),
            FamilyParams::Tms { k, r } => tms(k, r),
            FamilyParams::PhotonSubtractedTms { k, z } => photon_subtracted_tms(k, z).map(|s| s.sigma),
            FamilyParams::FockSuperposition { n, m } => Ok(fock_superposition_cm(n, m).sigma),
            FamilyParams::BellMixture { n, lambda } => bell_mixture_cm(n, lambda).map(|s| s.sigma),
            FamilyParams::Raw => return None,
        })
    }
}

/// A covariance matrix together with its provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct StateRecord {
    pub sigma: CovarianceMatrix,
    pub params: FamilyParams,
    /// `true` only for Gaussian families or raw input declared Gaussian.
    pub gaussian: bool,
    pub seed: Option<u64>,
}

impl StateRecord {
    pub fn family(&self) -> Family {
        self.params.family()
    }

    fn exact(sigma: CovarianceMatrix, params: FamilyParams) -> Self {
        let gaussian = params.family().is_gaussian();
        Self {
            sigma,
            params,
            gaussian,
            seed: None,
        }
    }

    pub fn raw(sigma: CovarianceMatrix, gaussian: bool) -> Self {
        Self {
            sigma,
            params: FamilyParams::Raw,
            gaussian,
            seed: None,
        }
    }
}

pub fn compose_bloch_messiah(params: &BlochMessiahParams) -> Result<CovarianceMatrix> {
    params.validate()?;
    let (k_a, k_b) = params.thermal_factors();
    let transform = SymplecticMatrix::phase_rotation(params.phi_a, params.phi_b)
        * SymplecticMatrix::beam_splitter(params.theta)
        * SymplecticMatrix::local_squeezer(params.z_a.sqrt(), params.z_b.sqrt())?;
    Ok(apply_symplectic(&transform, &CovarianceMatrix::thermal(k_a, k_b)))
}

/// Two-mode squeezed thermal state: blocks `k cosh 2r·I`, `k sinh 2r·σ_z`.
pub fn tms(k: f64, r: f64) -> Result<CovarianceMatrix> {
    if !(k >= 1.0 - 1e-12) || !r.is_finite() {
        return Err(Error::InvalidParams(format!(
            "TMS needs k ≥ 1 and finite r (k = {k}, r = {r})"
        )));
    }
    let (ch, sh) = (k * (2.0 * r).cosh(), k * (2.0 * r).sinh());
    CovarianceMatrix::from_blocks(
        Matrix2::identity() * ch,
        Matrix2::identity() * ch,
        Matrix2::new(sh, 0.0, 0.0, -sh),
    )
}

pub fn tms_record(k: f64, r: f64) -> Result<StateRecord> {
    Ok(StateRecord::exact(tms(k, r)?, FamilyParams::Tms { k, r }))
}

/// TMS-like state with unequal thermal factors `k ± γ`: a balanced beam
/// splitter acting on modes squeezed by `z` and `1/z`. For `γ = 0` this is
/// `tms(k, r)` with `z = e^{−2r}`.
pub fn asymmetric_tms_params(k: f64, gamma: f64, z: f64) -> Result<BlochMessiahParams> {
    BlochMessiahParams::new(k, gamma, z, 1.0 / z, std::f64::consts::FRAC_PI_4, 0.0, 0.0)
}

/// Sampling ranges for random Bloch–Messiah states.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplerRanges {
    /// Squeezing factors are log-uniform on `[z_min, 1/z_min]`.
    pub z_min: f64,
}

impl Default for SamplerRanges {
    fn default() -> Self {
        Self { z_min: 0.05 }
    }
}

impl SamplerRanges {
    fn validate(&self) -> Result<()> {
        if !(self.z_min > 0.0 && self.z_min <= 1.0) {
            return Err(Error::InvalidParams(format!(
                "z_min = {} must lie in (0, 1]",
                self.z_min
            )));
        }
        Ok(())
    }
}

/// Seeded generator for draw `index`; every index has its own ChaCha stream.
pub fn draw_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Random Bloch–Messiah parameters with fixed `(k, γ)`.
pub fn random_params<R: Rng>(
    k: f64,
    gamma: f64,
    ranges: &SamplerRanges,
    rng: &mut R,
) -> Result<BlochMessiahParams> {
    ranges.validate()?;
    let log_max = -ranges.z_min.ln();
    let mut log_z = || {
        if log_max == 0.0 {
            0.0
        } else {
            rng.gen_range(-log_max..=log_max)
        }
    };
    let z_a = log_z().exp();
    let z_b = log_z().exp();
    let theta = rng.gen_range(0.0..=FRAC_PI_2);
    let phi_a = rng.gen_range(0.0..2.0 * PI);
    let phi_b = rng.gen_range(0.0..2.0 * PI);
    BlochMessiahParams::new(k, gamma, z_a, z_b, theta, phi_a, phi_b)
}

/// Draw `index` of the random ensemble with seed `seed`.
pub fn random_state_at(
    k: f64,
    gamma: f64,
    ranges: &SamplerRanges,
    seed: u64,
    index: u64,
) -> Result<StateRecord> {
    let params = random_params(k, gamma, ranges, &mut draw_rng(seed, index))?;
    let mut rec = StateRecord::exact(compose_bloch_messiah(&params)?, FamilyParams::BlochMessiah(params));
    rec.seed = Some(seed);
    Ok(rec)
}

pub fn random_state(k: f64, gamma: f64, ranges: &SamplerRanges, seed: u64) -> Result<StateRecord> {
    random_state_at(k, gamma, ranges, seed, 0)
}

/// Photon subtraction on mode A of a TMS state with thermal factor `k` and
/// squeezing `z = e^{−2r}`, from the closed-form standard-form entries.
pub fn photon_subtracted_tms(k: f64, z: f64) -> Result<StateRecord> {
    if !(k >= 1.0 - 1e-12 && z > 0.0 && z.is_finite()) {
        return Err(Error::InvalidParams(format!(
            "photon subtraction needs k ≥ 1, z > 0 (k = {k}, z = {z})"
        )));
    }
    let s = z + 1.0 / z;
    if k * s - 2.0 <= 1e-12 {
        return Err(Error::SubtractionFromVacuum);
    }
    let a = k * s - 1.0;
    let b = (k * (z * z + 1.0 / (z * z)) - s) / (s - 2.0 / k);
    let c = k * (1.0 / z - z);
    let sigma = CovarianceMatrix::from_blocks(
        Matrix2::identity() * a,
        Matrix2::identity() * b,
        Matrix2::new(c, 0.0, 0.0, -c),
    )?;
    Ok(StateRecord::exact(sigma, FamilyParams::PhotonSubtractedTms { k, z }))
}

/// Covariance update for a single photon subtracted from mode A:
/// `σ₀ + 2(σ₀ − I)P(σ₀ − I)/Tr[(σ₀ − I)P]` with `P` the projector onto mode A.
pub fn photon_subtract_mode_a(sigma0: &CovarianceMatrix) -> Result<CovarianceMatrix> {
    let excess = sigma0.matrix() - Matrix4::identity();
    let mut proj = Matrix4::zeros();
    proj[(0, 0)] = 1.0;
    proj[(1, 1)] = 1.0;
    let trace = (excess * proj).trace();
    if trace <= 1e-12 {
        return Err(Error::SubtractionFromVacuum);
    }
    CovarianceMatrix::new(sigma0.matrix() + excess * proj * excess * (2.0 / trace))
}

/// Covariance matrix of `(|n,m⟩ + |m,n⟩)/√2`: blocks `aI, aI, cI` with
/// `a = n + m + 1` and `c = m δ_{n+1,m} + n δ_{m+1,n}`.
pub fn fock_superposition_cm(n: u32, m: u32) -> StateRecord {
    let a = f64::from(n + m + 1);
    let c = if n + 1 == m {
        f64::from(m)
    } else if m + 1 == n {
        f64::from(n)
    } else {
        0.0
    };
    let sigma = CovarianceMatrix::from_blocks(
        Matrix2::identity() * a,
        Matrix2::identity() * a,
        Matrix2::identity() * c,
    )
    .expect("symmetric by construction");
    StateRecord::exact(sigma, FamilyParams::FockSuperposition { n, m })
}

/// Covariance matrix of `λ|φ⁺⟩⟨φ⁺| + (1−λ)|φ⁻⟩⟨φ⁻|` with
/// `|φ±⟩ = (|n,n⟩ ± |n+1,n+1⟩)/√2`.
pub fn bell_mixture_cm(n: u32, lambda: f64) -> Result<StateRecord> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidParams(format!("λ = {lambda} outside [0, 1]")));
    }
    let scale = f64::from(n + 1);
    let a = 2.0 * scale;
    let c = (2.0 * lambda - 1.0).abs() * scale;
    let sigma = CovarianceMatrix::from_blocks(
        Matrix2::identity() * a,
        Matrix2::identity() * a,
        Matrix2::new(c, 0.0, 0.0, -c),
    )?;
    Ok(StateRecord::exact(sigma, FamilyParams::BellMixture { n, lambda }))
}

/// Ladder-operator second moments of a zero-mean state.
pub fn moments_from_cm(sigma: &CovarianceMatrix) -> SecondMoments {
    let m = sigma.matrix();
    let ab = Complex64::new(m[(0, 2)] - m[(1, 3)], m[(0, 3)] + m[(1, 2)]) / 4.0;
    SecondMoments {
        n_a: (m[(0, 0)] + m[(1, 1)] - 2.0) / 4.0,
        n_b: (m[(2, 2)] + m[(3, 3)] - 2.0) / 4.0,
        ab,
        a_dag_b_dag: ab.conj(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energetics::{ergotropy_report, ModePair};
    use crate::phase_space::{check_physical, standard_form, symplectic_eigenvalues};
    use approx::assert_relative_eq;

    #[test]
    fn vacuum_composition() {
        let p = BlochMessiahParams::new(1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0).unwrap();
        let sigma = compose_bloch_messiah(&p).unwrap();
        assert!((sigma.matrix() - Matrix4::identity()).amax() < 1e-15);
    }

    #[test]
    fn unmixed_composition_is_product() {
        let p = BlochMessiahParams::new(2.2, 0.7, 0.2, 3.0, 0.0, 0.4, 2.0).unwrap();
        let sigma = compose_bloch_messiah(&p).unwrap();
        assert!(sigma.correlation_norm() < 1e-15);
        let rep = ergotropy_report(&sigma, &ModePair::new(1.0, 2.0).unwrap()).unwrap();
        assert!(rep.gap.abs() < 1e-12);
    }

    #[test]
    fn composition_spectrum() {
        let p = BlochMessiahParams::new(2.5, -0.5, 0.1, 7.0, 1.1, 0.3, 5.0).unwrap();
        let spec = symplectic_eigenvalues(&compose_bloch_messiah(&p).unwrap()).unwrap();
        assert_relative_eq!(spec.nu_plus, 3.0, epsilon = 1e-9);
        assert_relative_eq!(spec.nu_minus, 2.0, epsilon = 1e-9);
    }

    #[test]
    fn invalid_bloch_messiah() {
        let p = BlochMessiahParams {
            k: 1.0,
            gamma: 0.5,
            z_a: 1.0,
            z_b: 1.0,
            theta: 0.0,
            phi_a: 0.0,
            phi_b: 0.0,
        };
        assert!(matches!(compose_bloch_messiah(&p), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn tms_examples() {
        let sigma = tms(2.0, 0.0).unwrap();
        assert!((sigma.matrix() - Matrix4::identity() * 2.0).amax() < 1e-15);
        let pure = tms(1.0, 0.5).unwrap();
        assert_relative_eq!(pure.local_invariants().det, 1.0, epsilon = 1e-12);
        let spec = symplectic_eigenvalues(&pure).unwrap();
        assert_relative_eq!(spec.nu_plus, 1.0, epsilon = 1e-9);
        assert_relative_eq!(spec.nu_minus, 1.0, epsilon = 1e-9);
        let (k, r) = (1.7, 0.8);
        let sf = standard_form(&tms(k, r).unwrap()).unwrap();
        assert_relative_eq!(sf.a, k * (2.0 * r).cosh(), max_relative = 1e-12);
        assert_relative_eq!(sf.b, k * (2.0 * r).cosh(), max_relative = 1e-12);
        assert_relative_eq!(sf.c1, k * (2.0 * r).sinh(), max_relative = 1e-12);
        assert_relative_eq!(sf.c2, -k * (2.0 * r).sinh(), max_relative = 1e-12);
        assert!(tms(0.5, 0.1).is_err());
    }

    #[test]
    fn asymmetric_tms_reduces_to_tms() {
        let (k, r): (f64, f64) = (1.8, 0.45);
        let z = (-2.0 * r).exp();
        let a = compose_bloch_messiah(&asymmetric_tms_params(k, 0.0, z).unwrap()).unwrap();
        let b = tms(k, r).unwrap();
        assert!((a.matrix() - b.matrix()).amax() < 1e-12);
    }

    #[test]
    fn sampler_is_deterministic() {
        let ranges = SamplerRanges::default();
        let a = random_state(2.5, 0.5, &ranges, 11).unwrap();
        let b = random_state(2.5, 0.5, &ranges, 11).unwrap();
        assert_eq!(a, b);
        let c = random_state_at(2.5, 0.5, &ranges, 11, 1).unwrap();
        assert_ne!(a.sigma, c.sigma);
        assert!(a.gaussian);
        assert_eq!(a.seed, Some(11));
        assert!(random_state(1.2, 0.5, &ranges, 0).is_err());
    }

    #[test]
    fn sampler_respects_ranges() {
        let ranges = SamplerRanges { z_min: 0.2 };
        for i in 0..200 {
            let mut rng = draw_rng(3, i);
            let p = random_params(2.0, 0.3, &ranges, &mut rng).unwrap();
            for z in [p.z_a, p.z_b] {
                assert!((0.2 - 1e-12..=5.0 + 1e-9).contains(&z));
            }
            assert!((0.0..=FRAC_PI_2).contains(&p.theta));
            assert!((0.0..2.0 * PI).contains(&p.phi_a));
        }
    }

    #[test]
    fn photon_subtraction_examples() {
        assert_eq!(photon_subtracted_tms(1.0, 1.0), Err(Error::SubtractionFromVacuum));

        let rec = photon_subtracted_tms(2.0, 1.0).unwrap();
        let sf = standard_form(&rec.sigma).unwrap();
        assert_relative_eq!(sf.a, 3.0, epsilon = 1e-12);
        assert_relative_eq!(sf.b, 2.0, epsilon = 1e-12);
        assert_relative_eq!(sf.c1, 0.0, epsilon = 1e-12);
        assert!(!rec.gaussian);
        let rep = ergotropy_report(&rec.sigma, &ModePair::equal(1.0).unwrap()).unwrap();
        assert_relative_eq!(rep.reg.value().unwrap(), 0.0, epsilon = 1e-12);

        let rec = photon_subtracted_tms(1.0, 0.5).unwrap();
        let m = rec.sigma.matrix();
        assert_relative_eq!(m[(0, 0)], 1.5, epsilon = 1e-12);
        assert_relative_eq!(m[(2, 2)], 3.5, epsilon = 1e-12);
        assert_relative_eq!(m[(0, 2)], 1.5, epsilon = 1e-12);
        assert_relative_eq!(m[(1, 3)], -1.5, epsilon = 1e-12);
        let spec = symplectic_eigenvalues(&rec.sigma).unwrap();
        assert_relative_eq!(spec.nu_plus, 3.0, epsilon = 1e-12);
        assert_relative_eq!(spec.nu_minus, 1.0, epsilon = 1e-12);
        assert!(check_physical(&rec.sigma).is_physical);
    }

    #[test]
    fn projector_route_from_vacuum_fails() {
        assert_eq!(
            photon_subtract_mode_a(&CovarianceMatrix::identity()),
            Err(Error::SubtractionFromVacuum)
        );
    }

    #[test]
    fn fock_superposition_examples() {
        let rec = fock_superposition_cm(0, 0);
        assert_eq!(rec.sigma, CovarianceMatrix::identity());
        assert!(!rec.gaussian);

        let modes = ModePair::equal(1.0).unwrap();
        let rec = fock_superposition_cm(0, 1);
        let m = rec.sigma.matrix();
        assert_eq!((m[(0, 0)], m[(0, 2)], m[(1, 3)]), (2.0, 1.0, 1.0));
        let rep = ergotropy_report(&rec.sigma, &modes).unwrap();
        assert!(rep.gaussian_ergotropy_global.abs() < 1e-12);

        let rec = fock_superposition_cm(1, 3);
        let m = rec.sigma.matrix();
        assert_eq!((m[(0, 0)], m[(0, 2)]), (5.0, 0.0));
        let rep = ergotropy_report(&rec.sigma, &modes).unwrap();
        assert!(rep.gaussian_ergotropy_global.abs() < 1e-12);
    }

    #[test]
    fn bell_mixture_examples() {
        let half = bell_mixture_cm(2, 0.5).unwrap();
        assert_eq!(half.sigma.correlation_norm(), 0.0);

        let rec = bell_mixture_cm(0, 1.0).unwrap();
        let m = rec.sigma.matrix();
        assert_eq!((m[(0, 0)], m[(0, 2)], m[(1, 3)]), (2.0, 1.0, -1.0));
        let spec = symplectic_eigenvalues(&rec.sigma).unwrap();
        assert_relative_eq!(spec.nu_plus, 3f64.sqrt(), epsilon = 1e-12);
        assert_relative_eq!(spec.nu_minus, 3f64.sqrt(), epsilon = 1e-12);

        let (lo, hi) = (bell_mixture_cm(1, 0.2).unwrap(), bell_mixture_cm(1, 0.8).unwrap());
        assert!((lo.sigma.matrix() - hi.sigma.matrix()).amax() < 1e-15);
        assert!(bell_mixture_cm(0, 1.5).is_err());
    }

    #[test]
    fn bell_mixture_spectrum_formula() {
        for n in 0..4u32 {
            for i in 0..=10 {
                let lambda = i as f64 / 10.0;
                let spec = symplectic_eigenvalues(&bell_mixture_cm(n, lambda).unwrap().sigma).unwrap();
                let expect = f64::from(n + 1) * (4.0 - (2.0 * lambda - 1.0).powi(2)).sqrt();
                assert_relative_eq!(spec.nu_plus, expect, max_relative = 1e-9);
                assert_relative_eq!(spec.nu_minus, expect, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn moments_examples() {
        let m = moments_from_cm(&CovarianceMatrix::identity());
        assert_eq!((m.n_a, m.n_b, m.ab), (0.0, 0.0, Complex64::new(0.0, 0.0)));

        let k = 3.4;
        let m = moments_from_cm(&CovarianceMatrix::thermal(k, k));
        assert_relative_eq!(m.n_a, (k - 1.0) / 2.0);
        assert_relative_eq!(m.n_b, (k - 1.0) / 2.0);
        assert_eq!(m.ab, Complex64::new(0.0, 0.0));

        let sigma = crate::phase_space::StandardFormParams {
            a: 2.0,
            b: 3.0,
            c1: 1.2,
            c2: -1.2,
        }
        .to_matrix()
        .unwrap();
        let m = moments_from_cm(&sigma);
        assert_relative_eq!(m.ab.re, 0.6);
        assert_eq!(m.ab.im, 0.0);
        assert_eq!(m.a_dag_b_dag, m.ab.conj());
    }

    #[test]
    fn rebuild_round_trip() {
        let rec = photon_subtracted_tms(1.5, 0.4).unwrap();
        assert_eq!(rec.params.rebuild().unwrap().unwrap(), rec.sigma);
        assert!(FamilyParams::Raw.rebuild().is_none());
    }
}
