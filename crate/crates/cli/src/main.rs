//! Command-line front end for the sparse-recovery toolkit: preconditioning
//! reports, single-instance recovery, Monte Carlo experiment sweeps, and
//! the numerical lemma checks.
//!
//! Exit codes: 0 success, 1 validation error, 2 runtime/numerical error,
//! 3 check violation. Errors print a single machine-parsable line to
//! stderr. With fixed arguments and input files, outputs are byte
//! identical across runs and worker counts.

use clap::{Parser, Subcommand};
use pmols::experiments::{
    self, CoherenceSweepConfig, ImagingConfig, ImagingMethod, NoiseSweepConfig,
    RecoveryFreqConfig, SignalKind, SweepMethod,
};
use pmols::imaging::{self, ObjectImage};
use pmols::io::{self, fmt_sig9};
use pmols::matrix;
use pmols::recovery::{self, PreconditionMode, SolverParams};
use pmols::{checks, precondition, Error};
use std::path::{Path, PathBuf};

const EXIT_VALIDATION: i32 = 1;
const EXIT_RUNTIME: i32 = 2;
const EXIT_CHECK_VIOLATION: i32 = 3;

#[derive(Parser)]
#[command(
    name = "pmols",
    version,
    about = "Pseudo-inverse preconditioning and greedy sparse recovery toolkit",
    propagate_version = true
)]
struct Cli {
    /// Worker threads for Monte Carlo sweeps [default: all cores; env
    /// PMOLS_WORKERS]. Output bytes do not depend on this value.
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mutual-coherence report for a matrix read from CSV
    Coherence {
        /// Matrix CSV: plain comma-separated rows, no header
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Build a preconditioner and report its statistics
    Precondition {
        /// Matrix CSV: plain comma-separated rows, no header
        #[arg(long)]
        matrix: PathBuf,
        /// Preconditioner: pip | modified
        #[arg(long, default_value = "pip")]
        mode: String,
        /// Regularization for --mode modified
        #[arg(long, default_value_t = 0.0)]
        lambda: f64,
        /// Relative rank tolerance of the decomposition
        #[arg(long, default_value_t = 1e-12)]
        rank_tol: f64,
        /// Write the preconditioner matrix to this CSV path
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover one instance: reads the sampling matrix and raw samples
    /// from CSV, prints the estimated support and signal
    Recover {
        /// Sampling matrix CSV
        #[arg(long)]
        matrix: PathBuf,
        /// Raw samples CSV (one value per line)
        #[arg(long)]
        samples: PathBuf,
        /// Target sparsity
        #[arg(long = "K")]
        k: usize,
        /// Indices selected per iteration
        #[arg(long, default_value_t = 1)]
        s: usize,
        /// Preconditioning: pip | modified | none
        #[arg(long, default_value = "pip")]
        mode: String,
        /// Regularization for --mode modified
        #[arg(long, default_value_t = 0.0)]
        lambda: f64,
        /// Absolute residual tolerance [default: 1e-6 * ||y||]
        #[arg(long)]
        tol: Option<f64>,
        /// Iteration cap [default: floor(min(K, m/K))]
        #[arg(long)]
        max_iters: Option<usize>,
        /// Write the estimated signal to this CSV path
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo experiment sweeps emitting CSV
    Exp {
        #[command(subcommand)]
        experiment: Experiment,
    },
    /// Run numerical checks; exits 3 if any check reports violations
    Check {
        /// Check name (wielandt, cross-gram, projection, rip-consequences,
        /// singular-concentration, coherence-chain) or "all"
        name: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Write the report CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Experiment {
    /// Mean mutual coherence before/after preconditioning per sampling rate
    CoherenceSweep {
        /// Signal dimension
        #[arg(long, default_value_t = 256)]
        n: usize,
        /// Rates as start:stop:step (start inclusive, stop exclusive) or a
        /// comma-separated list
        #[arg(long, default_value = "0.05:1.0:0.05")]
        rates: String,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Output CSV path [default: stdout]
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact-recovery frequency per sparsity level and method
    RecoveryFreq {
        #[arg(long, default_value_t = 128)]
        m: usize,
        #[arg(long, default_value_t = 256)]
        n: usize,
        /// Sparsity grid as start:stop:step or a comma-separated list
        #[arg(long, default_value = "5:65:5")]
        ks: String,
        /// Nonzero distribution: gaussian | pam2 | twovalued
        #[arg(long, default_value = "gaussian")]
        kind: String,
        /// Comma-separated subset of omp,mols,pmols
        #[arg(long, default_value = "mols,pmols")]
        methods: String,
        /// Indices selected per iteration
        #[arg(long, default_value_t = 3)]
        s: usize,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Output CSV path [default: stdout]
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mean reconstruction MSE under detection noise per SNR
    NoiseSweep {
        #[arg(long, default_value_t = 128)]
        m: usize,
        #[arg(long, default_value_t = 256)]
        n: usize,
        /// Sparsity of the Gaussian test signals
        #[arg(long, default_value_t = 50)]
        k: usize,
        /// Indices selected per iteration
        #[arg(long, default_value_t = 2)]
        s: usize,
        /// SNR grid in dB, range or comma-separated list
        #[arg(long, default_value = "10,20,30,40")]
        snrs: String,
        /// Regularization grid for the modified preconditioner
        #[arg(long, default_value = "0.001,0.01,0.1,1")]
        lambdas: String,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Output CSV path [default: stdout]
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Synthetic imaging pipeline: lift, bucket-sample, reconstruct, PSNR
    Imaging {
        /// Number of bucket samples (patterns)
        #[arg(long, default_value_t = 400)]
        m: usize,
        /// Comma-separated built-in object names (digit3, digit7, twolobe)
        /// and/or PGM file paths
        #[arg(long, default_value = "digit3,digit7,twolobe")]
        objects: String,
        /// Comma-separated subset of gi,mols,pmols
        #[arg(long, default_value = "gi,mols,pmols")]
        methods: String,
        /// Indices selected per iteration
        #[arg(long, default_value_t = 3)]
        s: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Output CSV path [default: stdout]
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                return 0;
            }
            let first_line = err
                .to_string()
                .lines()
                .next()
                .unwrap_or("bad arguments")
                .to_string();
            eprintln!("pmols: validation: {first_line}");
            return EXIT_VALIDATION;
        }
    };

    let workers = cli.workers.or_else(|| {
        std::env::var("PMOLS_WORKERS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(workers) = workers {
        pmols::parallel::configure_workers(workers.max(1));
    }

    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            let (code, category) = classify(&err);
            eprintln!("pmols: {category}: {err}");
            code
        }
    }
}

/// Maps library errors to exit codes: inputs the caller could have fixed
/// are validation (1); numerical failures mid-computation are runtime (2).
fn classify(err: &Error) -> (i32, &'static str) {
    match err {
        Error::NonFiniteEntry { .. }
        | Error::EmptyMatrix { .. }
        | Error::ShapeMismatch { .. }
        | Error::DimensionMismatch { .. }
        | Error::NonSquare { .. }
        | Error::IndexOutOfRange { .. }
        | Error::Domain(_)
        | Error::OverlappingSets { .. }
        | Error::PgmParse { .. }
        | Error::Parse { .. }
        | Error::ZeroColumn { .. }
        | Error::Io(_) => (EXIT_VALIDATION, "validation"),
        Error::DecompositionFailure { .. }
        | Error::RankDeficient { .. }
        | Error::DegenerateInput(_)
        | Error::SingularGram
        | Error::Exhausted { .. }
        | Error::LiftTooSmall { .. }
        | Error::NegativeEntry { .. }
        | Error::DegenerateStatistics { .. }
        | Error::BudgetExceeded { .. }
        | Error::NotPositiveDefinite { .. } => (EXIT_RUNTIME, "runtime"),
    }
}

fn dispatch(command: Command) -> Result<i32, Error> {
    match command {
        Command::Coherence { matrix } => {
            let psi = io::read_matrix_csv(&matrix)?;
            let mu = matrix::mutual_coherence(&psi)?;
            println!("rows,cols,mutual_coherence");
            println!("{},{},{}", psi.rows(), psi.cols(), fmt_sig9(mu));
            Ok(0)
        }
        Command::Precondition {
            matrix: path,
            mode,
            lambda,
            rank_tol,
            out,
        } => {
            let psi = io::read_matrix_csv(&path)?;
            let pre = match mode.as_str() {
                "pip" => precondition::pip_preconditioner(&psi, rank_tol)?,
                "modified" => precondition::modified_pip(&psi, lambda)?,
                other => {
                    return Err(Error::Domain(format!(
                        "unknown mode {other:?}; expected pip or modified"
                    )))
                }
            };
            let phi = pre.matrix.matmul(&psi);
            let mu_psi = matrix::mutual_coherence(&psi)?;
            let mu_phi = matrix::mutual_coherence(&phi)?;
            let distance = matrix::frobenius_distance_to_identity(&phi)?;
            let parseval = precondition::parseval_check(&phi, 1e-8)?;
            println!(
                "mode,source_rank,nu_m,mu_psi,mu_ppsi,frobenius_distance_to_identity,parseval_projector,parseval_max_deviation"
            );
            println!(
                "{},{},{},{},{},{},{},{}",
                mode,
                pre.source_rank,
                pre.nu_m.map(fmt_sig9).unwrap_or_default(),
                fmt_sig9(mu_psi),
                fmt_sig9(mu_phi),
                fmt_sig9(distance),
                parseval.is_parseval_projector,
                fmt_sig9(parseval.max_deviation),
            );
            if let Some(out) = out {
                std::fs::write(&out, io::matrix_to_csv(&pre.matrix))?;
            }
            Ok(0)
        }
        Command::Recover {
            matrix: path,
            samples,
            k,
            s,
            mode,
            lambda,
            tol,
            max_iters,
            out,
        } => {
            let psi = io::read_matrix_csv(&path)?;
            let y0 = io::read_vector_csv(&samples)?;
            let mode = match mode.as_str() {
                "pip" => PreconditionMode::Pip,
                "modified" => PreconditionMode::ModifiedPip { lambda },
                "none" => PreconditionMode::None,
                other => {
                    return Err(Error::Domain(format!(
                        "unknown mode {other:?}; expected pip, modified, or none"
                    )))
                }
            };
            let mut params = SolverParams::new(k, s);
            if let Some(tol) = tol {
                params = params.with_tol(tol);
            }
            if let Some(cap) = max_iters {
                params = params.with_max_iters(cap);
            }
            let result = recovery::pmols(&psi, &y0, &params, mode)?;
            let support: Vec<String> = result.support.iter().map(|i| i.to_string()).collect();
            println!("T_hat: {}", support.join(" "));
            println!(
                "iterations: {} termination: {:?} final_residual: {}",
                result.iterations,
                result.termination,
                fmt_sig9(*result.residual_norms.last().unwrap()),
            );
            println!("x_hat:");
            print!("{}", io::vector_to_csv(&result.estimate));
            if let Some(out) = out {
                std::fs::write(&out, io::vector_to_csv(&result.estimate))?;
            }
            Ok(0)
        }
        Command::Exp { experiment } => run_experiment(experiment),
        Command::Check { name, seed, out } => {
            let reports = checks::run_named(&name, seed)?;
            let csv = checks::reports_to_csv(&reports, seed);
            emit(out.as_deref(), &csv)?;
            let violating = reports.iter().filter(|r| !r.passed()).count();
            if violating > 0 {
                eprintln!(
                    "pmols: check-violation: {violating} of {} checks reported violations",
                    reports.len()
                );
                return Ok(EXIT_CHECK_VIOLATION);
            }
            Ok(0)
        }
    }
}

fn run_experiment(experiment: Experiment) -> Result<i32, Error> {
    match experiment {
        Experiment::CoherenceSweep {
            n,
            rates,
            trials,
            seed,
            out,
        } => {
            let config = CoherenceSweepConfig {
                n,
                rates: parse_f64_grid(&rates)?,
                trials,
                seed,
            };
            let sweep = experiments::coherence_sweep(&config)?;
            for reason in &sweep.skipped {
                eprintln!("pmols: skipped: {reason}");
            }
            emit(out.as_deref(), &sweep.to_csv())?;
            Ok(0)
        }
        Experiment::RecoveryFreq {
            m,
            n,
            ks,
            kind,
            methods,
            s,
            trials,
            seed,
            out,
        } => {
            let kind = SignalKind::parse(&kind).ok_or_else(|| {
                Error::Domain(format!(
                    "unknown signal kind {kind:?}; expected gaussian, pam2, or twovalued"
                ))
            })?;
            let methods = parse_list(&methods, SweepMethod::parse, "method")?;
            let config = RecoveryFreqConfig {
                m,
                n,
                ks: parse_usize_grid(&ks)?,
                kind,
                methods,
                s,
                trials,
                seed,
            };
            let sweep = experiments::recovery_frequency(&config)?;
            for reason in &sweep.skipped {
                eprintln!("pmols: skipped: {reason}");
            }
            emit(out.as_deref(), &sweep.to_csv())?;
            Ok(0)
        }
        Experiment::NoiseSweep {
            m,
            n,
            k,
            s,
            snrs,
            lambdas,
            trials,
            seed,
            out,
        } => {
            let config = NoiseSweepConfig {
                m,
                n,
                k,
                s,
                snrs_db: parse_f64_grid(&snrs)?,
                lambdas: parse_f64_grid(&lambdas)?,
                trials,
                seed,
            };
            let sweep = experiments::noise_sweep(&config)?;
            emit(out.as_deref(), &sweep.to_csv())?;
            Ok(0)
        }
        Experiment::Imaging {
            m,
            objects,
            methods,
            s,
            seed,
            out,
        } => {
            let methods = parse_list(&methods, ImagingMethod::parse, "method")?;
            let mut loaded: Vec<(String, ObjectImage)> = Vec::new();
            for token in objects.split(',').filter(|t| !t.is_empty()) {
                if let Some(object) = imaging::synthetic_object(token) {
                    loaded.push((token.to_string(), object));
                } else {
                    let path = Path::new(token);
                    let object = imaging::load_pgm(path)?;
                    let name = path
                        .file_stem()
                        .map(|s| s.to_string_lossy().into_owned())
                        .unwrap_or_else(|| token.to_string());
                    loaded.push((name, object));
                }
            }
            let config = ImagingConfig {
                objects: loaded,
                m,
                methods,
                s,
                seed,
            };
            let result = experiments::imaging_experiment(&config)?;
            emit(out.as_deref(), &result.to_csv())?;
            Ok(0)
        }
    }
}

fn emit(out: Option<&Path>, csv: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}

/// Parses `start:stop:step` (start inclusive, stop exclusive) or a
/// comma-separated list.
fn parse_f64_grid(text: &str) -> Result<Vec<f64>, Error> {
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Domain(format!(
                "range must be start:stop:step, got {text:?}"
            )));
        }
        let start = parse_float(parts[0])?;
        let stop = parse_float(parts[1])?;
        let step = parse_float(parts[2])?;
        if !(step > 0.0) {
            return Err(Error::Domain(format!(
                "range step must be positive, got {step}"
            )));
        }
        let mut values = Vec::new();
        let mut i = 0u32;
        loop {
            let value = start + f64::from(i) * step;
            if value >= stop - 1e-12 {
                break;
            }
            values.push(value);
            i += 1;
        }
        Ok(values)
    } else {
        text.split(',')
            .filter(|t| !t.is_empty())
            .map(parse_float)
            .collect()
    }
}

fn parse_usize_grid(text: &str) -> Result<Vec<usize>, Error> {
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Domain(format!(
                "range must be start:stop:step, got {text:?}"
            )));
        }
        let start: usize = parse_int(parts[0])?;
        let stop: usize = parse_int(parts[1])?;
        let step: usize = parse_int(parts[2])?;
        if step == 0 {
            return Err(Error::Domain("range step must be positive".to_string()));
        }
        Ok((start..stop).step_by(step).collect())
    } else {
        text.split(',')
            .filter(|t| !t.is_empty())
            .map(parse_int)
            .collect()
    }
}

fn parse_float(text: &str) -> Result<f64, Error> {
    text.trim()
        .parse()
        .map_err(|_| Error::Domain(format!("not a real number: {:?}", text.trim())))
}

fn parse_int(text: &str) -> Result<usize, Error> {
    text.trim()
        .parse()
        .map_err(|_| Error::Domain(format!("not a nonnegative integer: {:?}", text.trim())))
}

fn parse_list<T>(
    text: &str,
    parse: impl Fn(&str) -> Option<T>,
    what: &str,
) -> Result<Vec<T>, Error> {
    text.split(',')
        .filter(|t| !t.is_empty())
        .map(|token| parse(token).ok_or_else(|| Error::Domain(format!("unknown {what} {token:?}"))))
        .collect()
}
