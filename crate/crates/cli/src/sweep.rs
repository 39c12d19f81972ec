//! Row generators for the sweep subcommands. Rows come out in grid order
//! (outer loop first) so repeated runs are byte-identical.

use std::f64::consts::FRAC_PI_4;

use anyhow::{Context, Result};
use ergogap::energetics::{ergotropy_report, BlochMessiahParams, ModePair, RegValue};
use ergogap::fock_oracle::{
    gaussian_reg_bell_mixture, std_gap_bell_mixture, std_gap_fock_superposition,
    FiniteSpectrumState,
};
use ergogap::phase_space::symplectic_eigenvalues;
use ergogap::states::{
    bell_mixture_cm, compose_bloch_messiah, fock_superposition_cm, moments_from_cm,
    photon_subtracted_tms, random_state_at, SamplerRanges,
};
use ergogap::witnesses::{classify, sv_witness, Verdict};
use serde::Serialize;

fn reg_number(reg: RegValue) -> f64 {
    match reg {
        RegValue::Value(v) => v,
        RegValue::DegeneratePurity => f64::INFINITY,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Fig1Row {
    pub k: f64,
    pub z: f64,
    pub reg: f64,
    pub b_sep: f64,
    pub ppt_value: f64,
    pub verdict: Verdict,
}

/// Two thermal modes `k ± γ` squeezed by `z` and `1/z`, mixed on a balanced
/// beam splitter.
pub fn fig1_params(k: f64, gamma: f64, z: f64) -> ergogap::Result<BlochMessiahParams> {
    BlochMessiahParams::new(k, gamma, z, 1.0 / z, FRAC_PI_4, 0.0, 0.0)
}

pub fn fig1(ks: &[f64], zs: &[f64], gamma: f64, alpha: f64) -> Result<Vec<Fig1Row>> {
    let modes = ModePair::with_ratio(1.0, alpha)?;
    let mut rows = Vec::with_capacity(ks.len() * zs.len());
    for &k in ks {
        if k - gamma.abs() < 1.0 {
            log::debug!("skipping k = {k}: thermal factor k − |γ| below 1");
            continue;
        }
        for &z in zs {
            let verdict = fig1_params(k, gamma, z)
                .and_then(|p| compose_bloch_messiah(&p))
                .and_then(|sigma| classify(&sigma, &modes))
                .with_context(|| format!("fig1 point k = {k}, γ = {gamma}, z = {z}, α = {alpha}"))?;
            rows.push(Fig1Row {
                k,
                z,
                reg: verdict.reg_value,
                b_sep: verdict.bound_sep,
                ppt_value: verdict.ppt_value,
                verdict: verdict.verdict,
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, Serialize)]
pub struct Fig2Row {
    pub k: f64,
    pub z: f64,
    pub reg: f64,
    pub sv_value: f64,
    pub sv_entangled: bool,
}

pub fn fig2(ks: &[f64], zs: &[f64]) -> Result<Vec<Fig2Row>> {
    let modes = ModePair::equal(1.0)?;
    let mut rows = Vec::with_capacity(ks.len() * zs.len());
    for &k in ks {
        for &z in zs {
            let context = || format!("fig2 point k = {k}, z = {z}");
            let record = photon_subtracted_tms(k, z).with_context(context)?;
            let report = ergotropy_report(&record.sigma, &modes).with_context(context)?;
            let (sv_entangled, sv_value) = sv_witness(&moments_from_cm(&record.sigma));
            rows.push(Fig2Row {
                k,
                z,
                reg: reg_number(report.reg),
                sv_value,
                sv_entangled,
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, Serialize)]
pub struct ScatterRow {
    pub index: u64,
    pub k: f64,
    pub gamma: f64,
    pub z_a: f64,
    pub z_b: f64,
    pub theta: f64,
    pub phi_a: f64,
    pub phi_b: f64,
    pub nu_plus: f64,
    pub nu_minus: f64,
    pub reg: f64,
    pub b_sep: f64,
    pub b_ent: f64,
    pub ppt_value: f64,
    pub verdict: Verdict,
}

pub fn scatter(
    n: u64,
    k: f64,
    gamma: f64,
    alpha: f64,
    ranges: &SamplerRanges,
    seed: u64,
) -> Result<Vec<ScatterRow>> {
    let modes = ModePair::with_ratio(1.0, alpha)?;
    (0..n)
        .map(|index| {
            let context = || format!("scatter draw {index} (seed {seed}, k = {k}, γ = {gamma})");
            let record = random_state_at(k, gamma, ranges, seed, index).with_context(context)?;
            let ergogap::states::FamilyParams::BlochMessiah(p) = record.params else {
                unreachable!("the sampler only emits Bloch–Messiah states");
            };
            let spectrum = symplectic_eigenvalues(&record.sigma).with_context(context)?;
            let verdict = classify(&record.sigma, &modes).with_context(context)?;
            Ok(ScatterRow {
                index,
                k: p.k,
                gamma: p.gamma,
                z_a: p.z_a,
                z_b: p.z_b,
                theta: p.theta,
                phi_a: p.phi_a,
                phi_b: p.phi_b,
                nu_plus: spectrum.nu_plus,
                nu_minus: spectrum.nu_minus,
                reg: verdict.reg_value,
                b_sep: verdict.bound_sep,
                b_ent: verdict.bound_ent,
                ppt_value: verdict.ppt_value,
                verdict: verdict.verdict,
            })
        })
        .collect()
}

/// One Fock-family consistency check. Quantities are in units of `ω`;
/// columns that do not apply to a family are left empty.
#[derive(Debug, Clone, Serialize)]
pub struct OracleRow {
    pub family: &'static str,
    pub n: u32,
    pub m: Option<u32>,
    pub lambda: Option<f64>,
    pub std_gap_closed_form: f64,
    pub std_gap_oracle: f64,
    pub gaussian_ergotropy: f64,
    pub gaussian_reg_closed_form: Option<f64>,
    pub gaussian_reg_pipeline: f64,
}

pub fn oracle(max_n: u32, lambda_count: usize) -> Result<Vec<OracleRow>> {
    let modes = ModePair::equal(1.0)?;
    let mut rows = Vec::new();
    for n in 0..=max_n {
        for m in 0..=max_n {
            let rec = fock_superposition_cm(n, m);
            let report = ergotropy_report(&rec.sigma, &modes)
                .with_context(|| format!("fock superposition n = {n}, m = {m}"))?;
            let oracle = FiniteSpectrumState::fock_superposition(n, m, 1.0)?.standard_gap()?;
            rows.push(OracleRow {
                family: "fock_superposition",
                n,
                m: Some(m),
                lambda: None,
                std_gap_closed_form: if n == m { 0.0 } else { 1.0 },
                std_gap_oracle: oracle,
                gaussian_ergotropy: report.gaussian_ergotropy_global,
                gaussian_reg_closed_form: None,
                gaussian_reg_pipeline: reg_number(report.reg),
            });
            debug_assert_eq!(oracle, std_gap_fock_superposition(n, m));
        }
    }
    let lambdas = ergogap::witnesses::linspace(0.0, 1.0, lambda_count);
    for n in 0..=max_n {
        for &lambda in &lambdas {
            let context = || format!("bell mixture n = {n}, λ = {lambda}");
            let rec = bell_mixture_cm(n, lambda).with_context(context)?;
            let report = ergotropy_report(&rec.sigma, &modes).with_context(context)?;
            let oracle = FiniteSpectrumState::bell_mixture(lambda, 1.0)?.standard_gap()?;
            rows.push(OracleRow {
                family: "bell_mixture",
                n,
                m: None,
                lambda: Some(lambda),
                std_gap_closed_form: std_gap_bell_mixture(lambda)?,
                std_gap_oracle: oracle,
                gaussian_ergotropy: report.gaussian_ergotropy_global,
                gaussian_reg_closed_form: Some(gaussian_reg_bell_mixture(lambda)?),
                gaussian_reg_pipeline: reg_number(report.reg),
            });
        }
    }
    Ok(rows)
}
