//! Brute-force passive energies for states with a small, known spectrum.
//!
//! Energies here carry the zero-point term: a mode of frequency `ω` has levels
//! `ω(n + ½)`. Gaps are differences of passive energies and do not depend on
//! this offset.

use crate::error::{Error, Result};

const SUM_TOL: f64 = 1e-12;

/// Spectra of a bipartite state: global eigenvalues (with labels) and the two
/// reduced spectra.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteSpectrumState {
    pub global_spectrum: Vec<(f64, String)>,
    pub reduced_spectrum_a: Vec<f64>,
    pub reduced_spectrum_b: Vec<f64>,
    pub mode_frequency: f64,
}

fn check_spectrum(p: &[f64]) -> Result<()> {
    if p.is_empty() || p.iter().any(|x| !(*x >= 0.0)) {
        return Err(Error::InvalidSpectrum(format!("{p:?}")));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > SUM_TOL {
        return Err(Error::InvalidSpectrum(format!("probabilities sum to {sum}")));
    }
    Ok(())
}

impl FiniteSpectrumState {
    pub fn new(
        global_spectrum: Vec<(f64, String)>,
        reduced_spectrum_a: Vec<f64>,
        reduced_spectrum_b: Vec<f64>,
        mode_frequency: f64,
    ) -> Result<Self> {
        let global: Vec<f64> = global_spectrum.iter().map(|(p, _)| *p).collect();
        check_spectrum(&global)?;
        check_spectrum(&reduced_spectrum_a)?;
        check_spectrum(&reduced_spectrum_b)?;
        if !(mode_frequency > 0.0 && mode_frequency.is_finite()) {
            return Err(Error::InvalidModes(format!("ω = {mode_frequency}")));
        }
        Ok(Self {
            global_spectrum,
            reduced_spectrum_a,
            reduced_spectrum_b,
            mode_frequency,
        })
    }

    /// `(|n,m⟩ + |m,n⟩)/√2`: pure globally; each mode is `{½, ½}` unless `n = m`.
    pub fn fock_superposition(n: u32, m: u32, omega: f64) -> Result<Self> {
        let label = format!("(|{n},{m}⟩+|{m},{n}⟩)/√2");
        let reduced = if n == m { vec![1.0] } else { vec![0.5, 0.5] };
        Self::new(vec![(1.0, label)], reduced.clone(), reduced, omega)
    }

    /// `λ|φ⁺⟩⟨φ⁺| + (1−λ)|φ⁻⟩⟨φ⁻|` with `|φ±⟩ = (|0,0⟩ ± |1,1⟩)/√2`; both
    /// reduced states are `{½, ½}`.
    pub fn bell_mixture(lambda: f64, omega: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidParams(format!("λ = {lambda} outside [0, 1]")));
        }
        Self::new(
            vec![(lambda, "φ+".into()), (1.0 - lambda, "φ-".into())],
            vec![0.5, 0.5],
            vec![0.5, 0.5],
            omega,
        )
    }

    pub fn global_passive_energy(&self) -> Result<f64> {
        let p: Vec<f64> = self.global_spectrum.iter().map(|(p, _)| *p).collect();
        passive_energy(&p, &two_mode_levels(self.mode_frequency, p.len()))
    }

    /// Sum of the per-mode passive energies of the reduced states.
    pub fn local_passive_energy(&self) -> Result<f64> {
        let w = self.mode_frequency;
        let ea = passive_energy(
            &self.reduced_spectrum_a,
            &single_mode_levels(w, self.reduced_spectrum_a.len()),
        )?;
        let eb = passive_energy(
            &self.reduced_spectrum_b,
            &single_mode_levels(w, self.reduced_spectrum_b.len()),
        )?;
        Ok(ea + eb)
    }

    pub fn standard_gap(&self) -> Result<f64> {
        Ok(self.local_passive_energy()? - self.global_passive_energy()?)
    }
}

/// Lowest `count` levels `ω(n + ½)` of a single mode.
pub fn single_mode_levels(omega: f64, count: usize) -> Vec<f64> {
    (0..count).map(|n| omega * (n as f64 + 0.5)).collect()
}

/// Lowest `count` levels of two modes of equal frequency, degeneracies
/// expanded: level `N` has energy `ω(N + 1)` and appears `N + 1` times.
pub fn two_mode_levels(omega: f64, count: usize) -> Vec<f64> {
    (0..)
        .flat_map(|n: usize| std::iter::repeat(omega * (n as f64 + 1.0)).take(n + 1))
        .take(count)
        .collect()
}

/// Energy of the passive state: probabilities sorted in descending order
/// placed on the ascending levels.
pub fn passive_energy(spectrum: &[f64], levels: &[f64]) -> Result<f64> {
    check_spectrum(spectrum)?;
    if spectrum.len() > levels.len() {
        return Err(Error::InsufficientLevels {
            needed: spectrum.len(),
            available: levels.len(),
        });
    }
    if levels.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidSpectrum("levels must be ascending".into()));
    }
    let mut p = spectrum.to_vec();
    // stable sort: ties keep input order
    p.sort_by(|x, y| y.total_cmp(x));
    Ok(p.iter().zip(levels).map(|(p, e)| p * e).sum())
}

/// Standard ergotropic gap of `(|n,m⟩ + |m,n⟩)/√2`, in units of `ω`.
pub fn std_gap_fock_superposition(n: u32, m: u32) -> f64 {
    FiniteSpectrumState::fock_superposition(n, m, 1.0)
        .and_then(|s| s.standard_gap())
        .expect("valid spectra by construction")
}

/// Standard ergotropic gap of the Bell mixture, `1 − min(λ, 1 − λ)` in units of `ω`.
pub fn std_gap_bell_mixture(lambda: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidParams(format!("λ = {lambda} outside [0, 1]")));
    }
    Ok(1.0 - lambda.min(1.0 - lambda))
}

/// Closed-form Gaussian relative gap of the Bell mixture,
/// `(2 − √D)/(√D − 1)` with `D = 4 − (2λ − 1)²`.
pub fn gaussian_reg_bell_mixture(lambda: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidParams(format!("λ = {lambda} outside [0, 1]")));
    }
    let d = (4.0 - (2.0 * lambda - 1.0).powi(2)).sqrt();
    Ok((2.0 - d) / (d - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn passive_energy_examples() {
        assert_eq!(passive_energy(&[1.0], &single_mode_levels(2.0, 1)).unwrap(), 1.0);
        for lambda in [0.0, 0.2, 0.5, 0.9] {
            let e = passive_energy(&[lambda, 1.0 - lambda], &two_mode_levels(1.0, 2)).unwrap();
            assert_relative_eq!(e, 1.0 + lambda.min(1.0 - lambda), epsilon = 1e-15);
        }
        let e = passive_energy(&[0.5, 0.5], &single_mode_levels(3.0, 2)).unwrap();
        assert_relative_eq!(e, 3.0);
    }

    #[test]
    fn passive_energy_errors() {
        assert_eq!(
            passive_energy(&[0.5, 0.5], &[1.0]),
            Err(Error::InsufficientLevels {
                needed: 2,
                available: 1
            })
        );
        assert!(passive_energy(&[0.5, 0.6], &[1.0, 2.0]).is_err());
        assert!(passive_energy(&[1.2, -0.2], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn levels() {
        assert_eq!(two_mode_levels(1.0, 6), vec![1.0, 2.0, 2.0, 3.0, 3.0, 3.0]);
        assert_eq!(single_mode_levels(2.0, 3), vec![1.0, 3.0, 5.0]);
    }

    #[test]
    fn fock_superposition_gaps() {
        assert_eq!(std_gap_fock_superposition(2, 2), 0.0);
        assert_eq!(std_gap_fock_superposition(0, 1), 1.0);
        assert_eq!(std_gap_fock_superposition(3, 7), 1.0);
    }

    #[test]
    fn bell_mixture_gaps() {
        assert_eq!(std_gap_bell_mixture(0.5).unwrap(), 0.5);
        assert_eq!(std_gap_bell_mixture(1.0).unwrap(), 1.0);
        assert_relative_eq!(std_gap_bell_mixture(0.3).unwrap(), 0.7, epsilon = 1e-15);
        for i in 0..=100 {
            let lambda = i as f64 / 100.0;
            let oracle = FiniteSpectrumState::bell_mixture(lambda, 1.0)
                .unwrap()
                .standard_gap()
                .unwrap();
            assert_relative_eq!(oracle, std_gap_bell_mixture(lambda).unwrap(), epsilon = 1e-15);
        }
    }

    #[test]
    fn gaussian_reg_closed_form() {
        assert!(gaussian_reg_bell_mixture(0.5).unwrap().abs() < 1e-15);
        let s3 = 3f64.sqrt();
        assert_relative_eq!(gaussian_reg_bell_mixture(1.0).unwrap(), (2.0 - s3) / (s3 - 1.0));
        assert_relative_eq!(
            gaussian_reg_bell_mixture(0.25).unwrap(),
            gaussian_reg_bell_mixture(0.75).unwrap()
        );
        assert!(gaussian_reg_bell_mixture(1.1).is_err());
    }
}
