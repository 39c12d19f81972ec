//! `ergogap` command-line front end.
//!
//! Exit codes: 0 on success, 1 for numerical or input errors, 2 for usage
//! errors.

mod args;
mod sweep;

use std::fs::{self, File};
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ergogap::correlations::correlation_report;
use ergogap::energetics::{ergotropy_report, BlochMessiahParams, ModePair};
use ergogap::io::{read_state, LoadedState};
use ergogap::phase_space::{standard_form, symplectic_eigenvalues};
use ergogap::states::{
    compose_bloch_messiah, moments_from_cm, photon_subtracted_tms, tms_record, FamilyParams,
    SamplerRanges, StateRecord,
};
use ergogap::witnesses::{classify, ppt_separable, reg_threshold_search, sv_witness, GridSpec};
use serde::Serialize;

use args::{parse_tuple, GridSize, RangeSpec};

#[derive(Parser)]
#[command(name = "ergogap", version, about = "Ergotropic-gap toolkit for two-mode bosonic states")]
struct Cli {
    /// Output file; defaults to stdout, or `<command>.<ext>` inside the output directory
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Directory for output files when `--out` is not given
    #[arg(long, global = true, env = "ERGOGAP_OUT_DIR")]
    out_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Energetic and entropic report for one state (JSON)
    Compute(StateArgs),
    /// Entanglement verdicts for one state (JSON)
    Classify(StateArgs),
    /// Relative gap, separable bound and PPT value over a (k, z) grid
    Fig1(Fig1Args),
    /// Relative gap and moment witness of photon-subtracted states over a (k, z) grid
    Fig2(Fig2Args),
    /// Random Bloch–Messiah ensemble at fixed k, γ
    Scatter(ScatterArgs),
    /// Largest relative gap of photon-subtracted states not flagged by the moment witness
    Threshold(ThresholdArgs),
    /// Fock superposition and Bell mixture consistency table
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "state")]
struct StateSource {
    /// JSON state file
    #[arg(long)]
    state_file: Option<PathBuf>,

    /// Two-mode squeezed thermal state `K,R`
    #[arg(long, value_parser = parse_tuple::<2>, value_name = "K,R")]
    tms: Option<[f64; 2]>,

    /// Bloch–Messiah state `K,GAMMA,Z_A,Z_B,THETA,PHI_A,PHI_B`
    #[arg(long, value_parser = parse_tuple::<7>, value_name = "K,GAMMA,Z_A,Z_B,THETA,PHI_A,PHI_B")]
    bloch_messiah: Option<[f64; 7]>,

    /// Photon-subtracted TMS state `K,Z` with `z = e^{-2r}`
    #[arg(long, value_parser = parse_tuple::<2>, value_name = "K,Z")]
    photon_subtracted: Option<[f64; 2]>,
}

#[derive(Args)]
struct StateArgs {
    #[command(flatten)]
    source: StateSource,

    /// Frequency of mode A (ignored with --state-file)
    #[arg(long, default_value_t = 1.0)]
    omega: f64,

    /// Frequency ratio ω_B/ω_A ≥ 1 (ignored with --state-file)
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
}

#[derive(Args)]
struct Fig1Args {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value = "1.01:3:150")]
    k_range: RangeSpec,
    #[arg(long, default_value = "0.05:1:150")]
    z_range: RangeSpec,
    /// Space z logarithmically
    #[arg(long)]
    z_log: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct Fig2Args {
    #[arg(long, default_value = "1.01:4:200")]
    k_range: RangeSpec,
    #[arg(long, default_value = "0.05:1:200")]
    z_range: RangeSpec,
    /// Space z linearly instead of logarithmically
    #[arg(long)]
    z_linear: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct ScatterArgs {
    #[arg(long, default_value_t = 500)]
    n: u64,
    #[arg(long, default_value_t = 2.5)]
    k: f64,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    gamma: f64,
    #[arg(long, default_value_t = 10.0)]
    alpha: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Squeezing factors are drawn log-uniformly from [z_min, 1/z_min]
    #[arg(long, default_value_t = SamplerRanges::default().z_min)]
    z_min: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long, default_value = "200x200")]
    grid: GridSize,
    #[arg(long, default_value_t = 4.0)]
    k_max: f64,
    #[arg(long, default_value_t = 0.05)]
    z_min: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct OracleArgs {
    /// Largest Fock index
    #[arg(long, default_value_t = 5)]
    max_n: u32,
    /// Number of λ values on [0, 1]
    #[arg(long, default_value_t = 101)]
    lambda_count: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

fn load_state(args: &StateArgs) -> Result<LoadedState> {
    let src = &args.source;
    if let Some(path) = &src.state_file {
        return read_state(path).with_context(|| format!("loading {}", path.display()));
    }
    let modes = ModePair::with_ratio(args.omega, args.alpha)?;
    let record = if let Some([k, r]) = src.tms {
        tms_record(k, r).with_context(|| format!("tms k = {k}, r = {r}"))?
    } else if let Some([k, gamma, z_a, z_b, theta, phi_a, phi_b]) = src.bloch_messiah {
        let params = BlochMessiahParams::new(k, gamma, z_a, z_b, theta, phi_a, phi_b)?;
        StateRecord {
            sigma: compose_bloch_messiah(&params)?,
            params: FamilyParams::BlochMessiah(params),
            gaussian: true,
            seed: None,
        }
    } else if let Some([k, z]) = src.photon_subtracted {
        photon_subtracted_tms(k, z).with_context(|| format!("photon subtraction k = {k}, z = {z}"))?
    } else {
        bail!("no state given");
    };
    Ok(LoadedState { record, modes })
}

#[derive(Serialize)]
struct ComputeOutput {
    family: String,
    gaussian: bool,
    omega_a: f64,
    omega_b: f64,
    spectrum: ergogap::SymplecticSpectrum,
    standard_form: ergogap::StandardFormParams,
    energy: ergogap::EnergyReport,
    correlations: ergogap::CorrelationReport,
}

fn compute(state: &LoadedState) -> Result<ComputeOutput> {
    let sigma = &state.record.sigma;
    Ok(ComputeOutput {
        family: state.record.family().to_string(),
        gaussian: state.record.gaussian,
        omega_a: state.modes.omega_a(),
        omega_b: state.modes.omega_b(),
        spectrum: symplectic_eigenvalues(sigma)?,
        standard_form: standard_form(sigma)?,
        energy: ergotropy_report(sigma, &state.modes)?,
        correlations: correlation_report(sigma)?,
    })
}

#[derive(Serialize)]
struct ClassifyOutput {
    family: String,
    gaussian: bool,
    /// Relative-gap verdict; only for Gaussian states.
    reg_verdict: Option<ergogap::WitnessVerdict>,
    ppt_value: f64,
    /// PPT verdict; sufficient for separability only for Gaussian states.
    ppt_separable: bool,
    sv_value: f64,
    sv_entangled: bool,
}

fn classify_state(state: &LoadedState) -> Result<ClassifyOutput> {
    let record = &state.record;
    let reg_verdict = if record.gaussian {
        Some(classify(&record.sigma, &state.modes)?)
    } else {
        log::info!("{} is not Gaussian; relative-gap bounds do not apply", record.family());
        None
    };
    let (ppt_sep, ppt_value) = ppt_separable(&record.sigma);
    let (sv_entangled, sv_value) = sv_witness(&moments_from_cm(&record.sigma));
    Ok(ClassifyOutput {
        family: record.family().to_string(),
        gaussian: record.gaussian,
        reg_verdict,
        ppt_value,
        ppt_separable: ppt_sep,
        sv_value,
        sv_entangled,
    })
}

struct Output {
    path: Option<PathBuf>,
}

impl Output {
    fn resolve(cli: &Cli, name: &str, ext: &str) -> Result<Self> {
        let path = match (&cli.out, &cli.out_dir) {
            (Some(p), _) => Some(p.clone()),
            (None, Some(dir)) => {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                Some(dir.join(format!("{name}.{ext}")))
            }
            (None, None) => None,
        };
        Ok(Self { path })
    }

    fn writer(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.path {
            Some(p) => Box::new(io::BufWriter::new(
                File::create(p).with_context(|| format!("creating {}", p.display()))?,
            )),
            None => Box::new(io::stdout().lock()),
        })
    }

    fn report(&self) {
        if let Some(p) = &self.path {
            log::info!("wrote {}", p.display());
        }
    }
}

fn write_json<T: Serialize>(out: &Output, value: &T) -> Result<()> {
    let mut w = out.writer()?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    out.report();
    Ok(())
}

fn write_rows<T: Serialize>(out: &Output, rows: &[T], format: Format) -> Result<()> {
    match format {
        Format::Json => write_json(out, &rows),
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(out.writer()?);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
            out.report();
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Compute(args) => {
            let state = load_state(args)?;
            write_json(&Output::resolve(cli, "compute", "json")?, &compute(&state)?)
        }
        Command::Classify(args) => {
            let state = load_state(args)?;
            write_json(&Output::resolve(cli, "classify", "json")?, &classify_state(&state)?)
        }
        Command::Fig1(a) => {
            let rows = sweep::fig1(&a.k_range.values(false), &a.z_range.values(a.z_log), a.gamma, a.alpha)?;
            write_rows(&Output::resolve(cli, "fig1", a.format.extension())?, &rows, a.format)
        }
        Command::Fig2(a) => {
            let rows = sweep::fig2(&a.k_range.values(false), &a.z_range.values(!a.z_linear))?;
            write_rows(&Output::resolve(cli, "fig2", a.format.extension())?, &rows, a.format)
        }
        Command::Scatter(a) => {
            let ranges = SamplerRanges { z_min: a.z_min };
            let rows = sweep::scatter(a.n, a.k, a.gamma, a.alpha, &ranges, a.seed)?;
            write_rows(&Output::resolve(cli, "scatter", a.format.extension())?, &rows, a.format)
        }
        Command::Threshold(a) => {
            let grid = GridSpec {
                k_min: 1.0 + (a.k_max - 1.0) / a.grid.k as f64,
                k_max: a.k_max,
                k_count: a.grid.k,
                z_min: a.z_min,
                z_max: 1.0,
                z_count: a.grid.z,
                z_log: true,
            };
            let result = reg_threshold_search(&grid).context("threshold search")?;
            let out = Output::resolve(cli, "threshold", a.format.extension())?;
            match a.format {
                Format::Json => write_json(&out, &result),
                Format::Csv => {
                    #[derive(Serialize)]
                    struct Row {
                        threshold: f64,
                        k: f64,
                        z: f64,
                        region_size: usize,
                    }
                    let row = Row {
                        threshold: result.threshold,
                        k: result.k,
                        z: result.z,
                        region_size: result.region_size,
                    };
                    write_rows(&out, &[row], Format::Csv)
                }
            }
        }
        Command::Oracle(a) => {
            let rows = sweep::oracle(a.max_n, a.lambda_count)?;
            write_rows(&Output::resolve(cli, "oracle", a.format.extension())?, &rows, a.format)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
