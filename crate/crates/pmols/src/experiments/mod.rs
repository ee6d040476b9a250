//! Seeded Monte Carlo experiment harness.
//!
//! Four sweeps: mutual-coherence vs sampling rate, exact-recovery frequency
//! vs sparsity, reconstruction MSE vs SNR under detection noise, and the
//! synthetic imaging pipeline. Each sweep emits CSV (UTF-8, header row,
//! floats with 9 significant digits) where every row carries a hash of the
//! generating configuration.
//!
//! Trials fan out through [`crate::parallel::map_trials`] and are reduced
//! in trial order, so output bytes are identical regardless of worker
//! count. Reruns with the same config and seed are byte-identical.

pub mod random;

pub use random::{add_noise, derive_seed, gen_gaussian_matrix, gen_sparse_signal, SignalKind};

use crate::error::{Error, Result};
use crate::imaging::{self, ObjectImage, Psnr};
use crate::io::{config_hash, fmt_sig9};
use crate::matrix;
use crate::parallel::map_trials;
use crate::precondition;
use crate::recovery::{self, PreconditionMode, SolverParams};
use std::time::Instant;

/// Relative l2 error at or below which a trial counts as exact recovery.
pub const EXACT_RECOVERY_REL_TOL: f64 = 1e-6;

/// Outcome of a single Monte Carlo trial.
#[derive(Debug, Clone)]
pub struct TrialRecord {
    pub seed: u64,
    pub method: String,
    pub k: usize,
    pub m: usize,
    pub success: bool,
    pub relative_error: f64,
    pub wall_time: f64,
}

/// Solvers the recovery-frequency sweep can compare.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMethod {
    Omp,
    Mols,
    Pmols,
}

impl SweepMethod {
    pub fn label(&self) -> &'static str {
        match self {
            SweepMethod::Omp => "omp",
            SweepMethod::Mols => "mols",
            SweepMethod::Pmols => "pmols",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "omp" => Some(SweepMethod::Omp),
            "mols" => Some(SweepMethod::Mols),
            "pmols" => Some(SweepMethod::Pmols),
            _ => None,
        }
    }
}

fn hash_hex(hash: u64) -> String {
    format!("{hash:016x}")
}

// ---------------------------------------------------------------------
// Coherence sweep
// ---------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct CoherenceSweepConfig {
    pub n: usize,
    /// Sampling rates `m/n`; each maps to `m = round(rate * n)`.
    pub rates: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
}

impl CoherenceSweepConfig {
    fn canonical(&self) -> String {
        format!(
            "coherence-sweep|n={}|rates={}|trials={}|seed={}",
            self.n,
            join_floats(&self.rates),
            self.trials,
            self.seed
        )
    }
}

#[derive(Debug, Clone)]
pub struct CoherenceRow {
    pub rate: f64,
    pub m: usize,
    pub mean_mu_psi: f64,
    pub mean_mu_ppsi: f64,
    pub trials: usize,
}

#[derive(Debug, Clone)]
pub struct CoherenceSweep {
    pub rows: Vec<CoherenceRow>,
    /// One human-readable reason per omitted grid point.
    pub skipped: Vec<String>,
    pub config_hash: u64,
}

impl CoherenceSweep {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("rate,mean_mu_psi,mean_mu_ppsi,trials,config_hash\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                fmt_sig9(row.rate),
                fmt_sig9(row.mean_mu_psi),
                fmt_sig9(row.mean_mu_ppsi),
                row.trials,
                hash_hex(self.config_hash)
            ));
        }
        out
    }
}

/// Mean mutual coherence of `psi` and of the preconditioned `P psi` per
/// sampling rate, averaged over seeded Gaussian draws.
pub fn coherence_sweep(config: &CoherenceSweepConfig) -> Result<CoherenceSweep> {
    if config.trials == 0 || config.rates.is_empty() {
        return Err(Error::Domain(
            "coherence sweep needs at least one trial and one rate".to_string(),
        ));
    }
    let hash = config_hash(&config.canonical());
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for &rate in &config.rates {
        let m = (rate * config.n as f64).round() as usize;
        if m == 0 {
            skipped.push(format!("rate {rate}: m rounds to zero"));
            continue;
        }
        if m >= config.n {
            skipped.push(format!(
                "rate {rate}: m = {m} >= n = {} but PIP preconditioning needs m < n",
                config.n
            ));
            continue;
        }
        let n = config.n;
        let seed = config.seed;
        let pairs: Vec<Result<(f64, f64)>> = map_trials(config.trials, |t| {
            let label = format!("coherence|n={n}|m={m}|trial={t}");
            let psi = gen_gaussian_matrix(m, n, derive_seed(seed, &label));
            let mu_psi = matrix::mutual_coherence(&psi)?;
            let pre = precondition::pip_preconditioner(&psi, matrix::DEFAULT_RANK_TOL)?;
            let phi = pre.matrix.matmul(&psi);
            let mu_phi = matrix::mutual_coherence(&phi)?;
            Ok((mu_psi, mu_phi))
        });
        let mut sum_psi = 0.0;
        let mut sum_phi = 0.0;
        for pair in pairs {
            let (a, b) = pair?;
            sum_psi += a;
            sum_phi += b;
        }
        rows.push(CoherenceRow {
            rate,
            m,
            mean_mu_psi: sum_psi / config.trials as f64,
            mean_mu_ppsi: sum_phi / config.trials as f64,
            trials: config.trials,
        });
    }
    Ok(CoherenceSweep {
        rows,
        skipped,
        config_hash: hash,
    })
}

// ---------------------------------------------------------------------
// Recovery frequency sweep
// ---------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct RecoveryFreqConfig {
    pub m: usize,
    pub n: usize,
    pub ks: Vec<usize>,
    pub kind: SignalKind,
    pub methods: Vec<SweepMethod>,
    pub s: usize,
    pub trials: usize,
    pub seed: u64,
}

impl RecoveryFreqConfig {
    fn canonical(&self) -> String {
        format!(
            "recovery-freq|m={}|n={}|ks={}|kind={}|methods={}|s={}|trials={}|seed={}",
            self.m,
            self.n,
            join_usize(&self.ks),
            self.kind.label(),
            self.methods
                .iter()
                .map(|m| m.label())
                .collect::<Vec<_>>()
                .join(";"),
            self.s,
            self.trials,
            self.seed
        )
    }
}

#[derive(Debug, Clone)]
pub struct FrequencyRow {
    pub k: usize,
    pub method: String,
    pub successes: usize,
    pub trials: usize,
    pub frequency: f64,
}

impl FrequencyRow {
    /// Binomial standard error of the observed frequency.
    pub fn standard_error(&self) -> f64 {
        let p = self.frequency;
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }
}

#[derive(Debug, Clone)]
pub struct RecoveryFrequency {
    pub rows: Vec<FrequencyRow>,
    pub records: Vec<TrialRecord>,
    pub skipped: Vec<String>,
    pub config_hash: u64,
}

impl RecoveryFrequency {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,method,frequency,config_hash\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                row.k,
                row.method,
                fmt_sig9(row.frequency),
                hash_hex(self.config_hash)
            ));
        }
        out
    }

    pub fn frequency_of(&self, k: usize, method: &str) -> Option<&FrequencyRow> {
        self.rows.iter().find(|r| r.k == k && r.method == method)
    }
}

/// Exact-recovery frequency per `(K, method)` over seeded trials. Each
/// trial draws one `(psi, x)` instance shared by all methods; a solver
/// failure counts as a non-success and never aborts the sweep.
pub fn recovery_frequency(config: &RecoveryFreqConfig) -> Result<RecoveryFrequency> {
    if config.trials == 0 || config.ks.is_empty() || config.methods.is_empty() {
        return Err(Error::Domain(
            "recovery-frequency sweep needs trials, sparsities, and methods".to_string(),
        ));
    }
    let hash = config_hash(&config.canonical());
    let mut rows = Vec::new();
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for &k in &config.ks {
        if k == 0 || k > config.n {
            skipped.push(format!("k = {k}: outside 1..=n"));
            continue;
        }
        if config.s > k {
            skipped.push(format!("k = {k}: selection count s = {} exceeds K", config.s));
            continue;
        }
        let iterations = k.div_ceil(config.s);
        if config.s * iterations > config.m {
            skipped.push(format!(
                "k = {k}: selecting {} columns exceeds the {} samples",
                config.s * iterations,
                config.m
            ));
            continue;
        }
        let trial_records: Vec<Vec<TrialRecord>> = map_trials(config.trials, |t| {
            run_frequency_trial(config, k, iterations, t)
        });
        let mut successes = vec![0usize; config.methods.len()];
        for per_trial in &trial_records {
            for (i, record) in per_trial.iter().enumerate() {
                if record.success {
                    successes[i] += 1;
                }
            }
        }
        for (i, method) in config.methods.iter().enumerate() {
            rows.push(FrequencyRow {
                k,
                method: method.label().to_string(),
                successes: successes[i],
                trials: config.trials,
                frequency: successes[i] as f64 / config.trials as f64,
            });
        }
        records.extend(trial_records.into_iter().flatten());
    }
    Ok(RecoveryFrequency {
        rows,
        records,
        skipped,
        config_hash: hash,
    })
}

fn run_frequency_trial(
    config: &RecoveryFreqConfig,
    k: usize,
    iterations: usize,
    trial: usize,
) -> Vec<TrialRecord> {
    let base = format!(
        "freq|kind={}|k={k}|trial={trial}",
        config.kind.label()
    );
    let psi_seed = derive_seed(config.seed, &format!("{base}|psi"));
    let x_seed = derive_seed(config.seed, &format!("{base}|x"));
    let psi = gen_gaussian_matrix(config.m, config.n, psi_seed);
    let x = gen_sparse_signal(config.n, k, config.kind, x_seed)
        .expect("grid point validated before trials");
    let y0 = psi.matvec(x.values());
    let params = SolverParams::new(k, config.s).with_max_iters(iterations);
    config
        .methods
        .iter()
        .map(|&method| {
            let start = Instant::now();
            let outcome = match method {
                SweepMethod::Omp => recovery::omp(&psi, &y0, k, None),
                SweepMethod::Mols => recovery::mols(&psi, &y0, &params),
                SweepMethod::Pmols => {
                    recovery::pmols(&psi, &y0, &params, PreconditionMode::Pip)
                }
            };
            let relative_error = match &outcome {
                Ok(result) => result.relative_error(x.values()),
                Err(_) => f64::INFINITY,
            };
            TrialRecord {
                seed: psi_seed,
                method: method.label().to_string(),
                k,
                m: config.m,
                success: relative_error <= EXACT_RECOVERY_REL_TOL,
                relative_error,
                wall_time: start.elapsed().as_secs_f64(),
            }
        })
        .collect()
}

// ---------------------------------------------------------------------
// Noise sweep
// ---------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct NoiseSweepConfig {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub snrs_db: Vec<f64>,
    /// Regularization grid for the modified preconditioner.
    pub lambdas: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
}

impl NoiseSweepConfig {
    fn canonical(&self) -> String {
        format!(
            "noise-sweep|m={}|n={}|k={}|s={}|snrs={}|lambdas={}|trials={}|seed={}",
            self.m,
            self.n,
            self.k,
            self.s,
            join_floats(&self.snrs_db),
            join_floats(&self.lambdas),
            self.trials,
            self.seed
        )
    }
}

#[derive(Debug, Clone)]
pub struct NoiseRow {
    pub snr_db: f64,
    pub method: String,
    pub mean_mse: f64,
    /// Standard error of the mean MSE (sample std / sqrt(trials)).
    pub se_mse: f64,
    pub trials: usize,
}

#[derive(Debug, Clone)]
pub struct NoiseSweep {
    pub rows: Vec<NoiseRow>,
    pub config_hash: u64,
}

impl NoiseSweep {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("snr_db,method,mean_mse,config_hash\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                fmt_sig9(row.snr_db),
                row.method,
                fmt_sig9(row.mean_mse),
                hash_hex(self.config_hash)
            ));
        }
        out
    }

    pub fn row(&self, snr_db: f64, method: &str) -> Option<&NoiseRow> {
        self.rows
            .iter()
            .find(|r| r.snr_db == snr_db && r.method == method)
    }
}

pub fn modified_method_label(lambda: f64) -> String {
    format!("modified_pmols[lambda={}]", fmt_sig9(lambda))
}

/// Mean reconstruction MSE `||x_hat - x||^2 / n` per SNR for PmOLS and the
/// modified-PIP variant across a lambda grid. Each trial draws one
/// `(psi, x, v)` instance shared by every method.
pub fn noise_sweep(config: &NoiseSweepConfig) -> Result<NoiseSweep> {
    if config.trials == 0 || config.snrs_db.is_empty() || config.lambdas.is_empty() {
        return Err(Error::Domain(
            "noise sweep needs trials, SNR points, and a lambda grid".to_string(),
        ));
    }
    let hash = config_hash(&config.canonical());
    let method_count = 1 + config.lambdas.len();
    let mut rows = Vec::new();
    for &snr_db in &config.snrs_db {
        let per_trial: Vec<Vec<f64>> =
            map_trials(config.trials, |t| run_noise_trial(config, snr_db, t));
        for method_idx in 0..method_count {
            let samples: Vec<f64> = per_trial.iter().map(|v| v[method_idx]).collect();
            let mean = samples.iter().sum::<f64>() / samples.len() as f64;
            let var = samples
                .iter()
                .map(|v| (v - mean) * (v - mean))
                .sum::<f64>()
                / (samples.len().max(2) - 1) as f64;
            let method = if method_idx == 0 {
                "pmols".to_string()
            } else {
                modified_method_label(config.lambdas[method_idx - 1])
            };
            rows.push(NoiseRow {
                snr_db,
                method,
                mean_mse: mean,
                se_mse: (var / samples.len() as f64).sqrt(),
                trials: config.trials,
            });
        }
    }
    Ok(NoiseSweep {
        rows,
        config_hash: hash,
    })
}

fn run_noise_trial(config: &NoiseSweepConfig, snr_db: f64, trial: usize) -> Vec<f64> {
    let base = format!("noise|k={}|snr={}|trial={trial}", config.k, fmt_sig9(snr_db));
    let psi = gen_gaussian_matrix(
        config.m,
        config.n,
        derive_seed(config.seed, &format!("{base}|psi")),
    );
    let x = gen_sparse_signal(
        config.n,
        config.k,
        SignalKind::Gaussian,
        derive_seed(config.seed, &format!("{base}|x")),
    )
    .expect("validated config");
    let clean = psi.matvec(x.values());
    let y0 = add_noise(
        &clean,
        snr_db,
        config.k,
        config.m,
        derive_seed(config.seed, &format!("{base}|v")),
    );
    let params = SolverParams::new(config.k, config.s)
        .with_max_iters(config.k.div_ceil(config.s));
    let mut mses = Vec::with_capacity(1 + config.lambdas.len());
    let modes = std::iter::once(PreconditionMode::Pip).chain(
        config
            .lambdas
            .iter()
            .map(|&lambda| PreconditionMode::ModifiedPip { lambda }),
    );
    for mode in modes {
        let mse = match recovery::pmols(&psi, &y0, &params, mode) {
            Ok(result) => {
                let diff: f64 = result
                    .estimate
                    .iter()
                    .zip(x.values())
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                diff / config.n as f64
            }
            // A failed solve scores as the zero estimate rather than
            // aborting the sweep.
            Err(_) => x.values().iter().map(|v| v * v).sum::<f64>() / config.n as f64,
        };
        mses.push(mse);
    }
    mses
}

// ---------------------------------------------------------------------
// Imaging experiment
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImagingMethod {
    Gi,
    Mols,
    Pmols,
}

impl ImagingMethod {
    pub fn label(&self) -> &'static str {
        match self {
            ImagingMethod::Gi => "gi",
            ImagingMethod::Mols => "mols",
            ImagingMethod::Pmols => "pmols",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "gi" => Some(ImagingMethod::Gi),
            "mols" => Some(ImagingMethod::Mols),
            "pmols" => Some(ImagingMethod::Pmols),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ImagingConfig {
    pub objects: Vec<(String, ObjectImage)>,
    /// Number of bucket samples (pattern count).
    pub m: usize,
    pub methods: Vec<ImagingMethod>,
    pub s: usize,
    pub seed: u64,
}

impl ImagingConfig {
    fn canonical(&self) -> String {
        format!(
            "imaging|objects={}|m={}|methods={}|s={}|seed={}",
            self.objects
                .iter()
                .map(|(name, _)| name.as_str())
                .collect::<Vec<_>>()
                .join(";"),
            self.m,
            self.methods
                .iter()
                .map(|m| m.label())
                .collect::<Vec<_>>()
                .join(";"),
            self.s,
            self.seed
        )
    }
}

#[derive(Debug, Clone)]
pub struct ImagingRow {
    pub object: String,
    pub m: usize,
    pub method: String,
    pub psnr: Psnr,
}

#[derive(Debug, Clone)]
pub struct ImagingExperiment {
    pub rows: Vec<ImagingRow>,
    pub config_hash: u64,
}

impl ImagingExperiment {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("object,m,method,psnr,config_hash\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                row.object,
                row.m,
                row.method,
                row.psnr,
                hash_hex(self.config_hash)
            ));
        }
        out
    }

    pub fn psnr_of(&self, object: &str, method: &str) -> Option<&Psnr> {
        self.rows
            .iter()
            .find(|r| r.object == object && r.method == method)
            .map(|r| &r.psnr)
    }
}

/// Full synthetic pipeline per object: draw Gaussian patterns, lift them
/// nonnegative, bucket-sample, reconstruct with each method, min-max
/// rescale to `[0, 255]`, and score PSNR against the ground truth.
pub fn imaging_experiment(config: &ImagingConfig) -> Result<ImagingExperiment> {
    if config.objects.is_empty() || config.methods.is_empty() {
        return Err(Error::Domain(
            "imaging experiment needs objects and methods".to_string(),
        ));
    }
    let hash = config_hash(&config.canonical());
    let mut rows = Vec::new();
    for (name, object) in &config.objects {
        let n = object.height() * object.width();
        let x = object.to_vector();
        let k = object.nonzero_count();
        let psi = gen_gaussian_matrix(
            config.m,
            n,
            derive_seed(config.seed, &format!("imaging|object={name}|m={}|psi", config.m)),
        );
        let lifted = imaging::lift_nonnegative(&psi, None)?;
        let y0 = imaging::bucket_sample(&lifted.psi0, &x)?;
        for &method in &config.methods {
            let estimate = if k == 0 {
                vec![0.0; n]
            } else {
                let s = config.s.clamp(1, k);
                let params = SolverParams::new(k, s).with_max_iters(k.div_ceil(s));
                match method {
                    ImagingMethod::Gi => imaging::gi_correlate(&lifted.psi0, &y0)?,
                    ImagingMethod::Mols => {
                        recovery::mols(&lifted.psi0, &y0, &params)?.estimate
                    }
                    ImagingMethod::Pmols => {
                        recovery::pmols(&lifted.psi0, &y0, &params, PreconditionMode::Pip)?
                            .estimate
                    }
                }
            };
            let rescaled = imaging::rescale_to_255(&estimate);
            let reconstructed = ObjectImage::new(object.height(), object.width(), rescaled)?;
            rows.push(ImagingRow {
                object: name.clone(),
                m: config.m,
                method: method.label().to_string(),
                psnr: imaging::psnr(&reconstructed, object)?,
            });
        }
    }
    Ok(ImagingExperiment {
        rows,
        config_hash: hash,
    })
}

fn join_floats(values: &[f64]) -> String {
    values
        .iter()
        .map(|&v| fmt_sig9(v))
        .collect::<Vec<_>>()
        .join(";")
}

fn join_usize(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coherence_sweep_skips_full_rate_and_orders_means() {
        let config = CoherenceSweepConfig {
            n: 32,
            rates: vec![0.25, 0.5, 1.0],
            trials: 10,
            seed: 7,
        };
        let sweep = coherence_sweep(&config).unwrap();
        assert_eq!(sweep.rows.len(), 2);
        assert_eq!(sweep.skipped.len(), 1);
        assert!(sweep.skipped[0].contains("m < n"));
        for row in &sweep.rows {
            assert!(
                row.mean_mu_ppsi < row.mean_mu_psi,
                "preconditioning should reduce coherence at rate {}",
                row.rate
            );
        }
    }

    #[test]
    fn coherence_sweep_is_byte_deterministic() {
        let config = CoherenceSweepConfig {
            n: 24,
            rates: vec![0.25, 0.5],
            trials: 5,
            seed: 3,
        };
        let a = coherence_sweep(&config).unwrap().to_csv();
        let b = coherence_sweep(&config).unwrap().to_csv();
        assert_eq!(a, b);
        assert!(a.starts_with("rate,mean_mu_psi,mean_mu_ppsi,trials,config_hash\n"));
    }

    #[test]
    fn recovery_frequency_easy_regime_is_perfect() {
        let config = RecoveryFreqConfig {
            m: 32,
            n: 64,
            ks: vec![1, 2],
            kind: SignalKind::Gaussian,
            methods: vec![SweepMethod::Mols, SweepMethod::Pmols, SweepMethod::Omp],
            s: 1,
            trials: 20,
            seed: 11,
        };
        let result = recovery_frequency(&config).unwrap();
        for row in &result.rows {
            assert_eq!(
                row.frequency, 1.0,
                "method {} at k = {} should always recover",
                row.method, row.k
            );
        }
        assert_eq!(result.records.len(), 2 * 20 * 3);
    }

    #[test]
    fn recovery_frequency_skips_infeasible_points() {
        let config = RecoveryFreqConfig {
            m: 8,
            n: 16,
            ks: vec![2, 12],
            kind: SignalKind::Pam2,
            methods: vec![SweepMethod::Mols],
            s: 3,
            trials: 4,
            seed: 1,
        };
        let result = recovery_frequency(&config).unwrap();
        // k = 2 < s and k = 12 needs 12 columns > m = 8.
        assert!(result.rows.is_empty());
        assert_eq!(result.skipped.len(), 2);
    }

    #[test]
    fn noise_sweep_mse_shrinks_with_snr() {
        let config = NoiseSweepConfig {
            m: 32,
            n: 64,
            k: 4,
            s: 2,
            snrs_db: vec![10.0, 300.0],
            lambdas: vec![1e-3],
            trials: 10,
            seed: 21,
        };
        let sweep = noise_sweep(&config).unwrap();
        let low = sweep.row(10.0, "pmols").unwrap().mean_mse;
        let high = sweep.row(300.0, "pmols").unwrap().mean_mse;
        assert!(high < low, "mse should fall with snr: {high} !< {low}");
        assert_eq!(sweep.rows.len(), 4);
    }

    #[test]
    fn imaging_experiment_zero_object_is_identical_everywhere() {
        let zero = ObjectImage::new(4, 4, vec![0.0; 16]).unwrap();
        let config = ImagingConfig {
            objects: vec![("zero".to_string(), zero)],
            m: 8,
            methods: vec![ImagingMethod::Gi, ImagingMethod::Mols, ImagingMethod::Pmols],
            s: 3,
            seed: 5,
        };
        let result = imaging_experiment(&config).unwrap();
        for row in &result.rows {
            assert_eq!(row.psnr, Psnr::Identical, "method {}", row.method);
        }
    }

    #[test]
    fn imaging_experiment_small_object_recovers() {
        // 6x6 object with 3 lit pixels, 24 samples: easy regime.
        let mut pixels = vec![0.0; 36];
        pixels[7] = 255.0;
        pixels[14] = 255.0;
        pixels[28] = 255.0;
        let object = ObjectImage::new(6, 6, pixels).unwrap();
        let config = ImagingConfig {
            objects: vec![("dots".to_string(), object)],
            m: 24,
            methods: vec![ImagingMethod::Pmols, ImagingMethod::Gi],
            s: 1,
            seed: 9,
        };
        let result = imaging_experiment(&config).unwrap();
        let pmols = result.psnr_of("dots", "pmols").unwrap();
        let gi = result.psnr_of("dots", "gi").unwrap();
        assert!(pmols.at_least(gi));
        match pmols {
            Psnr::Identical => {}
            Psnr::Decibels(db) => assert!(*db > 40.0, "pmols psnr {db}"),
        }
    }
}
