//! Numerical verifiers for the supporting definitions and lemmas on small
//! instances, with brute-force oracles.
//!
//! Every check accumulates a margin `RHS - LHS` per instance; a margin
//! below the negative tolerance is a violation. On the documented instance
//! families all checks must report zero violations — any violation is a
//! red-flag failure, not a statistic. Instances whose lemma preconditions
//! fail (e.g. an isometry constant of 1) are counted as skips.

use crate::error::{Error, Result};
use crate::experiments::random::{derive_seed, gen_gaussian_matrix};
use crate::io::{config_hash, fmt_sig9};
use crate::matrix::{self, dot, norm2, DenseMatrix, IndexSet};
use crate::parallel::map_trials;
use crate::precondition;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

/// Hard cap on `C(n, k)` for the brute-force isometry-constant search.
pub const COMBINATION_BUDGET: u128 = 100_000;

/// Aggregated outcome of one verifier over its instances.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub instances_tested: usize,
    pub violations: usize,
    /// Instances whose lemma preconditions failed; no margin recorded.
    pub skipped: usize,
    /// Minimum of `RHS - LHS` over all recorded margins; `+inf` when every
    /// instance was skipped.
    pub worst_margin: f64,
    pub tolerance: f64,
}

impl CheckReport {
    pub fn new(name: &str, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            instances_tested: 0,
            violations: 0,
            skipped: 0,
            worst_margin: f64::INFINITY,
            tolerance,
        }
    }

    pub fn record(&mut self, margin: f64) {
        self.instances_tested += 1;
        if margin < self.worst_margin {
            self.worst_margin = margin;
        }
        if margin < -self.tolerance {
            self.violations += 1;
        }
    }

    /// Records several margins as a single instance (one lemma application
    /// can assert multiple inequalities).
    pub fn record_instance(&mut self, margins: &[f64]) {
        self.instances_tested += 1;
        let mut violated = false;
        for &margin in margins {
            if margin < self.worst_margin {
                self.worst_margin = margin;
            }
            if margin < -self.tolerance {
                violated = true;
            }
        }
        if violated {
            self.violations += 1;
        }
    }

    pub fn skip(&mut self) {
        self.instances_tested += 1;
        self.skipped += 1;
    }

    pub fn merge(&mut self, other: &CheckReport) {
        self.instances_tested += other.instances_tested;
        self.violations += other.violations;
        self.skipped += other.skipped;
        if other.worst_margin < self.worst_margin {
            self.worst_margin = other.worst_margin;
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Serializes reports with the experiment CSV conventions.
pub fn reports_to_csv(reports: &[CheckReport], seed: u64) -> String {
    let hash = config_hash(&format!("checks|seed={seed}"));
    let mut out =
        String::from("name,instances_tested,violations,skipped,worst_margin,config_hash\n");
    for report in reports {
        let margin = if report.worst_margin.is_finite() {
            fmt_sig9(report.worst_margin)
        } else {
            "inf".to_string()
        };
        out.push_str(&format!(
            "{},{},{},{},{},{:016x}\n",
            report.name,
            report.instances_tested,
            report.violations,
            report.skipped,
            margin,
            hash
        ));
    }
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        result = result.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    result
}

fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    if k == 0 {
        f(&[]);
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn symmetric_eigen_range(gram: &DenseMatrix) -> (f64, f64) {
    let eigen = gram.to_nalgebra().symmetric_eigen();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &lambda in eigen.eigenvalues.iter() {
        lo = lo.min(lambda);
        hi = hi.max(lambda);
    }
    (lo, hi)
}

/// Smallest constant delta with
/// `(1 - delta) ||x||^2 <= ||phi_S x||^2 <= (1 + delta) ||x||^2` over all
/// size-`k` supports: the exact isometry constant by exhaustive search over
/// Gram eigenvalues.
pub fn brute_force_rip_constant(phi: &DenseMatrix, k: usize) -> Result<f64> {
    let n = phi.cols();
    if k == 0 || k > n {
        return Err(Error::Domain(format!(
            "isometry order must satisfy 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    let combinations = binomial(n, k);
    if combinations > COMBINATION_BUDGET {
        return Err(Error::BudgetExceeded {
            combinations,
            budget: COMBINATION_BUDGET,
        });
    }
    let gram = phi.transpose().matmul(phi);
    let mut delta = 0.0_f64;
    for_each_combination(n, k, |support| {
        let mut sub = DenseMatrix::zeros(k, k);
        for (a, &i) in support.iter().enumerate() {
            for (b, &j) in support.iter().enumerate() {
                sub.set(a, b, gram.get(i, j));
            }
        }
        let (lo, hi) = symmetric_eigen_range(&sub);
        delta = delta.max(hi - 1.0).max(1.0 - lo);
    });
    Ok(delta)
}

fn require_unit_columns(phi: &DenseMatrix) -> Result<()> {
    for (j, col) in phi.columns().iter().enumerate() {
        let norm = norm2(col);
        if (norm - 1.0).abs() > 1e-8 {
            return Err(Error::Domain(format!(
                "column {j} must have unit l2 norm, got {norm}"
            )));
        }
    }
    Ok(())
}

/// Normalizes every column to unit l2 norm.
pub fn normalize_columns(phi: &DenseMatrix) -> Result<DenseMatrix> {
    let mut out = phi.clone();
    for j in 0..phi.cols() {
        let norm = norm2(&phi.column(j));
        if norm == 0.0 {
            return Err(Error::ZeroColumn { col: j });
        }
        for r in 0..phi.rows() {
            out.set(r, j, phi.get(r, j) / norm);
        }
    }
    Ok(out)
}

fn solve_symmetric(a: &DenseMatrix, b: &[f64]) -> Option<Vec<f64>> {
    let n = a.rows();
    let mut aug: Vec<Vec<f64>> = (0..n)
        .map(|r| {
            let mut row = a.row_slice(r).to_vec();
            row.push(b[r]);
            row
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n).max_by(|&i, &j| {
            aug[i][col].abs().partial_cmp(&aug[j][col].abs()).unwrap()
        })?;
        if aug[pivot_row][col].abs() < 1e-14 {
            return None;
        }
        aug.swap(col, pivot_row);
        let pivot = aug[col][col];
        for row in col + 1..n {
            let factor = aug[row][col] / pivot;
            for c in col..=n {
                aug[row][c] -= factor * aug[col][c];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut sum = aug[i][n];
        for j in i + 1..n {
            sum -= aug[i][j] * x[j];
        }
        x[i] = sum / aug[i][i];
    }
    Some(x)
}

const CONSEQUENCE_TOL: f64 = 1e-10;

/// Verifies the four isometry-constant consequences on one
/// `(phi, S, u)` instance, with `delta_{|S|}` from the brute-force search
/// and the coherence bound `delta <= (|S| - 1) mu`. Instances with
/// `delta >= 1` are precondition-skips.
pub fn check_rip_consequences(
    phi: &DenseMatrix,
    set: &IndexSet,
    u: &[f64],
) -> Result<CheckReport> {
    require_unit_columns(phi)?;
    if set.is_empty() || u.len() != set.len() {
        return Err(Error::Domain(format!(
            "need a nonempty support and matching vector, got |S| = {}, |u| = {}",
            set.len(),
            u.len()
        )));
    }
    let mut report = CheckReport::new("rip-consequences", CONSEQUENCE_TOL);
    let delta = brute_force_rip_constant(phi, set.len())?;
    let mu = matrix::mutual_coherence(phi)?;
    if delta >= 1.0 - 1e-12 {
        report.skip();
        return Ok(report);
    }
    // Work with a unit-normalized u; every inequality is scale invariant.
    let scale = norm2(u);
    if scale == 0.0 {
        return Err(Error::Domain("u must be nonzero".to_string()));
    }
    let u: Vec<f64> = u.iter().map(|v| v / scale).collect();

    let sub = phi.select_columns(set);
    let gram = sub.transpose().matmul(&sub);
    let gu = gram.matvec(&u);
    let ginv_u = solve_symmetric(&gram, &u).ok_or_else(|| Error::RankDeficient {
        detail: "subset Gram matrix is singular".to_string(),
    })?;
    let quad = dot(&u, &ginv_u); // u^T G^-1 u = ||pinv(phi_S)^T u||^2

    let margins = [
        // delta_{|S|} <= (|S| - 1) mu
        (set.len() as f64 - 1.0) * mu - delta,
        // ||u|| / (1 + delta) <= ||G^-1 u|| <= ||u|| / (1 - delta)
        norm2(&ginv_u) - 1.0 / (1.0 + delta),
        1.0 / (1.0 - delta) - norm2(&ginv_u),
        // (1 - delta) ||u|| <= ||G u|| <= (1 + delta) ||u||
        norm2(&gu) - (1.0 - delta),
        (1.0 + delta) - norm2(&gu),
        // (1 - delta) ||pinv^T u||^2 <= ||u||^2 <= (1 + delta) ||pinv^T u||^2
        1.0 - (1.0 - delta) * quad,
        (1.0 + delta) * quad - 1.0,
    ];
    report.record_instance(&margins);
    Ok(report)
}

const WIELANDT_TOL: f64 = 1e-10;

/// Verifies the generalized Wielandt inequality
/// `|u^T A v|^2 <= factor(phi)^2 (u^T A u)(v^T A v)` for symmetric
/// positive-definite `A`, where `phi` is the normalized inner product of
/// `u` and `v`.
pub fn check_wielandt(a: &DenseMatrix, u: &[f64], v: &[f64]) -> Result<CheckReport> {
    if a.rows() != a.cols() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let asym = a.max_abs_diff(&a.transpose());
    if asym > 1e-10 * a.max_abs().max(1.0) {
        return Err(Error::NotPositiveDefinite {
            detail: format!("asymmetry {asym}"),
        });
    }
    let (lo, hi) = symmetric_eigen_range(a);
    if lo <= 1e-10 * hi.max(0.0) {
        return Err(Error::NotPositiveDefinite {
            detail: format!("eigenvalue range [{lo}, {hi}]"),
        });
    }
    let (nu, nv) = (norm2(u), norm2(v));
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::Domain("u and v must be nonzero".to_string()));
    }
    let u: Vec<f64> = u.iter().map(|x| x / nu).collect();
    let v: Vec<f64> = v.iter().map(|x| x / nv).collect();
    let phi = dot(&u, &v).abs();
    let factor = (hi - lo + (hi + lo) * phi) / (hi + lo + (hi - lo) * phi);
    let au = a.matvec(&u);
    let av = a.matvec(&v);
    let lhs = dot(&u, &av).powi(2);
    let rhs = factor * factor * dot(&u, &au) * dot(&v, &av);
    let mut report = CheckReport::new("wielandt", WIELANDT_TOL);
    // Normalize the margin by the eigenvalue scale so the tolerance is
    // meaningful for any well-scaled A.
    report.record((rhs - lhs) / (hi * hi).max(1.0));
    Ok(report)
}

const CROSS_GRAM_TOL: f64 = 1e-10;

/// Verifies `||phi_I1^T phi_I2||_2 <= sqrt(|I1| |I2|) mu(phi)` for disjoint
/// index sets on a column-normalized matrix.
pub fn check_cross_gram_bound(
    phi: &DenseMatrix,
    i1: &IndexSet,
    i2: &IndexSet,
) -> Result<CheckReport> {
    for &idx in i1.iter() {
        if i2.contains(idx) {
            return Err(Error::OverlappingSets { index: idx });
        }
    }
    if i1.is_empty() || i2.is_empty() {
        return Err(Error::Domain("index sets must be nonempty".to_string()));
    }
    let normalized = normalize_columns(phi)?;
    let mu = matrix::mutual_coherence(&normalized)?;
    let left = normalized.select_columns(i1);
    let right = normalized.select_columns(i2);
    let cross = left.transpose().matmul(&right);
    let spectral = matrix::svd(&cross, matrix::DEFAULT_RANK_TOL)?
        .singular_values
        .first()
        .copied()
        .unwrap_or(0.0);
    let rhs = ((i1.len() * i2.len()) as f64).sqrt() * mu;
    let mut report = CheckReport::new("cross-gram", CROSS_GRAM_TOL);
    report.record(rhs - spectral);
    Ok(report)
}

const PROJECTION_TOL: f64 = 1e-10;

/// Verifies the projection lower bound
/// `||Pc phi_i||_2 >= sqrt(1 - delta_{|S|+1}^2)` for unit-column `phi` and
/// `i` outside `S`, with the brute-force isometry constant. Instances with
/// `delta >= 1` are precondition-skips.
pub fn check_projection_bound(
    phi: &DenseMatrix,
    set: &IndexSet,
    i: usize,
) -> Result<CheckReport> {
    require_unit_columns(phi)?;
    if set.contains(i) {
        return Err(Error::Domain(format!("index {i} already lies in S")));
    }
    if i >= phi.cols() {
        return Err(Error::IndexOutOfRange {
            index: i,
            cols: phi.cols(),
        });
    }
    let delta = brute_force_rip_constant(phi, set.len() + 1)?;
    let mut report = CheckReport::new("projection", PROJECTION_TOL);
    if delta >= 1.0 - 1e-12 {
        report.skip();
        return Ok(report);
    }
    let projected = matrix::project_orthogonal_complement(phi, set, &phi.column(i))?;
    let margin = norm2(&projected) - (1.0 - delta * delta).sqrt();
    report.record(margin);
    Ok(report)
}

const CONCENTRATION_TOL: f64 = 1e-12;

/// Monte Carlo check of the singular-value tail bounds for `m x n`
/// Gaussian matrices with entries `N(0, 1/m)`: each tail frequency must
/// stay within `exp(-m eps^2 / 2)` plus three binomial standard errors.
pub fn check_singular_concentration(
    m: usize,
    n: usize,
    eps: f64,
    trials: usize,
    seed: u64,
) -> Result<CheckReport> {
    if m > n {
        return Err(Error::Domain(format!(
            "concentration bounds assume m <= n, got {m} > {n}"
        )));
    }
    if trials < 100 {
        return Err(Error::Domain(format!(
            "need at least 100 trials, got {trials}"
        )));
    }
    if !(eps >= 0.0) || !eps.is_finite() {
        return Err(Error::Domain(format!(
            "eps must be a nonnegative real, got {eps}"
        )));
    }
    let ratio = (n as f64 / m as f64).sqrt();
    let upper = ratio + 1.0 + eps;
    let lower = ratio - 1.0 - eps;
    let extremes: Vec<Result<(f64, f64)>> = map_trials(trials, |t| {
        let label = format!("checks|concentration|m={m}|n={n}|trial={t}");
        let psi = gen_gaussian_matrix(m, n, derive_seed(seed, &label));
        let decomposition = matrix::svd(&psi, matrix::DEFAULT_RANK_TOL)?;
        let s1 = decomposition.singular_values[0];
        let sm = *decomposition.singular_values.last().unwrap();
        Ok((s1, sm))
    });
    let mut upper_hits = 0usize;
    let mut lower_hits = 0usize;
    let mut ordering_ok = true;
    for extreme in extremes {
        let (s1, sm) = extreme?;
        if s1 >= upper {
            upper_hits += 1;
        }
        if sm <= lower {
            lower_hits += 1;
        }
        if s1 < sm {
            ordering_ok = false;
        }
    }
    let bound = (-(m as f64) * eps * eps / 2.0).exp().min(1.0);
    let se = (bound * (1.0 - bound) / trials as f64).sqrt();
    let limit = bound + 3.0 * se;
    let mut report = CheckReport::new("singular-concentration", CONCENTRATION_TOL);
    report.instances_tested = trials;
    let upper_margin = limit - upper_hits as f64 / trials as f64;
    let lower_margin = limit - lower_hits as f64 / trials as f64;
    let order_margin = if ordering_ok { 0.0 } else { -1.0 };
    for margin in [upper_margin, lower_margin, order_margin] {
        if margin < report.worst_margin {
            report.worst_margin = margin;
        }
        if margin < -report.tolerance {
            report.violations += 1;
        }
    }
    Ok(report)
}

const CHAIN_TOL: f64 = 1e-10;

/// Verifies the coherence chain for full-row-rank `psi` with `m < n`:
/// `mu(P psi) <= (nu + mu(psi)) / (1 + nu mu(psi)) <= nu + mu(psi)`, where
/// `nu` is the singular-value spread. Coherences skip zero columns (rank
/// deficiency would otherwise produce exactly-zero columns in `P psi`).
pub fn check_coherence_chain(psi: &DenseMatrix) -> Result<CheckReport> {
    let (m, n) = (psi.rows(), psi.cols());
    if m >= n {
        return Err(Error::Domain(format!(
            "chain requires m < n, got {m}x{n}"
        )));
    }
    let decomposition = matrix::svd(psi, matrix::DEFAULT_RANK_TOL)?;
    if decomposition.numerical_rank < m {
        return Err(Error::RankDeficient {
            detail: format!(
                "chain requires full row rank {m}, numerical rank is {}",
                decomposition.numerical_rank
            ),
        });
    }
    let s1 = decomposition.singular_values[0];
    let sm = decomposition.singular_values[m - 1];
    let nu = (s1 * s1 - sm * sm) / (s1 * s1 + sm * sm);
    let mu_psi = coherence_skip_zero(psi)?;
    let pre = precondition::pip_preconditioner(psi, matrix::DEFAULT_RANK_TOL)?;
    let phi = pre.matrix.matmul(psi);
    let mu_phi = coherence_skip_zero(&phi)?;
    let mid = (nu + mu_psi) / (1.0 + nu * mu_psi);
    let mut report = CheckReport::new("coherence-chain", CHAIN_TOL);
    report.record_instance(&[mid - mu_phi, (nu + mu_psi) - mid]);
    Ok(report)
}

/// Mutual coherence over the columns with norm above `1e-12`; needs at
/// least two such columns.
fn coherence_skip_zero(a: &DenseMatrix) -> Result<f64> {
    let cols = a.columns();
    let mut kept: Vec<(Vec<f64>, f64)> = Vec::new();
    for col in cols {
        let norm = norm2(&col);
        if norm > 1e-12 {
            kept.push((col, norm));
        }
    }
    if kept.len() < 2 {
        return Err(Error::Domain(
            "fewer than two nonzero columns for coherence".to_string(),
        ));
    }
    let mut best = 0.0_f64;
    for i in 0..kept.len() {
        for j in (i + 1)..kept.len() {
            let value = dot(&kept[i].0, &kept[j].0).abs() / (kept[i].1 * kept[j].1);
            best = best.max(value);
        }
    }
    Ok(best.clamp(0.0, 1.0))
}

// ---------------------------------------------------------------------
// Documented instance families
// ---------------------------------------------------------------------

pub const CHECK_NAMES: [&str; 6] = [
    "wielandt",
    "cross-gram",
    "projection",
    "rip-consequences",
    "singular-concentration",
    "coherence-chain",
];

/// Runs one named check family, or all of them for `"all"`.
pub fn run_named(name: &str, seed: u64) -> Result<Vec<CheckReport>> {
    match name {
        "all" => run_all(seed),
        "wielandt" => Ok(vec![wielandt_family(seed)?]),
        "cross-gram" => Ok(vec![cross_gram_family(seed)?]),
        "projection" => Ok(vec![projection_family(seed)?]),
        "rip-consequences" => Ok(vec![rip_consequences_family(seed)?]),
        "singular-concentration" => Ok(vec![concentration_family(seed)?]),
        "coherence-chain" => Ok(vec![coherence_chain_family(seed)?]),
        other => Err(Error::Domain(format!(
            "unknown check {other:?}; available: {} or all",
            CHECK_NAMES.join(", ")
        ))),
    }
}

/// Runs every check family on its documented instances.
pub fn run_all(seed: u64) -> Result<Vec<CheckReport>> {
    Ok(vec![
        wielandt_family(seed)?,
        cross_gram_family(seed)?,
        projection_family(seed)?,
        rip_consequences_family(seed)?,
        concentration_family(seed)?,
        coherence_chain_family(seed)?,
    ])
}

fn gaussian_vector(len: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    (0..len).map(|_| rng.sample(StandardNormal)).collect()
}

/// 5x5 positive-definite matrix, 1000 random pairs plus collinear
/// equality cases.
fn wielandt_family(seed: u64) -> Result<CheckReport> {
    let b = gen_gaussian_matrix(5, 5, derive_seed(seed, "checks|wielandt|base"));
    let mut a = b.transpose().matmul(&b);
    for i in 0..5 {
        a.set(i, i, a.get(i, i) + 0.1);
    }
    let mut report = CheckReport::new("wielandt", WIELANDT_TOL);
    for t in 0..1000 {
        let u = gaussian_vector(5, derive_seed(seed, &format!("checks|wielandt|u|{t}")));
        let v = gaussian_vector(5, derive_seed(seed, &format!("checks|wielandt|v|{t}")));
        report.merge(&check_wielandt(&a, &u, &v)?);
    }
    // Collinear vectors attain equality (margin ~ 0 and never negative
    // beyond rounding).
    for t in 0..10 {
        let u = gaussian_vector(5, derive_seed(seed, &format!("checks|wielandt|eq|{t}")));
        report.merge(&check_wielandt(&a, &u, &u)?);
    }
    // Identity matrix reduces the inequality to Cauchy-Schwarz.
    let eye = DenseMatrix::identity(4);
    let u = gaussian_vector(4, derive_seed(seed, "checks|wielandt|csu"));
    let v = gaussian_vector(4, derive_seed(seed, "checks|wielandt|csv"));
    report.merge(&check_wielandt(&eye, &u, &v)?);
    Ok(report)
}

/// Column-normalized 10x20 Gaussian matrix, 100 random disjoint pairs plus
/// the singleton case where the bound is tight.
fn cross_gram_family(seed: u64) -> Result<CheckReport> {
    let phi = gen_gaussian_matrix(10, 20, derive_seed(seed, "checks|cross|phi"));
    let mut report = CheckReport::new("cross-gram", CROSS_GRAM_TOL);
    let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(seed, "checks|cross|sets"));
    for _ in 0..100 {
        let size1 = rng.random_range(1..=4);
        let size2 = rng.random_range(1..=4);
        let picked = rand::seq::index::sample(&mut rng, 20, size1 + size2).into_vec();
        let i1 = IndexSet::new(picked[..size1].to_vec())?;
        let i2 = IndexSet::new(picked[size1..].to_vec())?;
        report.merge(&check_cross_gram_bound(&phi, &i1, &i2)?);
    }
    // Singletons: the spectral norm IS the normalized inner product, so the
    // margin is mu minus one particular coherence entry.
    let i1 = IndexSet::new(vec![0])?;
    let i2 = IndexSet::new(vec![1])?;
    report.merge(&check_cross_gram_bound(&phi, &i1, &i2)?);
    // Orthogonal columns: zero cross-Gram.
    let eye = DenseMatrix::identity(6);
    let i1 = IndexSet::new(vec![0, 2])?;
    let i2 = IndexSet::new(vec![1, 5])?;
    report.merge(&check_cross_gram_bound(&eye, &i1, &i2)?);
    Ok(report)
}

/// Exhaustive sweep on a column-normalized 8x12 Gaussian matrix: every
/// support with `|S| <= 3` and every admissible column. The isometry
/// constant is brute-forced once per support size.
fn projection_family(seed: u64) -> Result<CheckReport> {
    let phi = normalize_columns(&gen_gaussian_matrix(
        8,
        12,
        derive_seed(seed, "checks|projection|phi"),
    ))?;
    let n = phi.cols();
    let mut report = CheckReport::new("projection", PROJECTION_TOL);
    for size in 0..=3usize {
        let delta = brute_force_rip_constant(&phi, size + 1)?;
        if delta >= 1.0 - 1e-12 {
            // Count the whole size class as skipped.
            for_each_combination(n, size, |_| report.skip());
            continue;
        }
        let rhs = (1.0 - delta * delta).sqrt();
        let mut inner: Result<()> = Ok(());
        for_each_combination(n, size, |support| {
            if inner.is_err() {
                return;
            }
            let set = match IndexSet::new(support.to_vec()) {
                Ok(s) => s,
                Err(e) => {
                    inner = Err(e);
                    return;
                }
            };
            for i in 0..n {
                if set.contains(i) {
                    continue;
                }
                match matrix::project_orthogonal_complement(&phi, &set, &phi.column(i)) {
                    Ok(projected) => report.record(norm2(&projected) - rhs),
                    Err(e) => {
                        inner = Err(e);
                        return;
                    }
                }
            }
        });
        inner?;
    }
    // Identity: equality at every margin.
    let eye = DenseMatrix::identity(5);
    let set = IndexSet::new(vec![0, 3])?;
    report.merge(&check_projection_bound(&eye, &set, 1)?);
    Ok(report)
}

/// Two column-normalized 8x12 matrices with |S| = 3 and 50 random vectors
/// each, plus a duplicated-column instance that must be skipped.
fn rip_consequences_family(seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("rip-consequences", CONSEQUENCE_TOL);
    for matrix_index in 0..2 {
        let phi = normalize_columns(&gen_gaussian_matrix(
            8,
            12,
            derive_seed(seed, &format!("checks|rip|phi|{matrix_index}")),
        ))?;
        let mut rng =
            ChaCha12Rng::seed_from_u64(derive_seed(seed, &format!("checks|rip|sets|{matrix_index}")));
        for t in 0..50 {
            let set = IndexSet::new(rand::seq::index::sample(&mut rng, 12, 3).into_vec())?;
            let u = gaussian_vector(
                3,
                derive_seed(seed, &format!("checks|rip|u|{matrix_index}|{t}")),
            );
            report.merge(&check_rip_consequences(&phi, &set, &u)?);
        }
    }
    // Identity: delta = 0, mu = 0, every inequality at equality.
    let eye = DenseMatrix::identity(6);
    let set = IndexSet::new(vec![0, 2, 4])?;
    report.merge(&check_rip_consequences(&eye, &set, &[1.0, -2.0, 0.5])?);
    // Two identical columns force delta = 1: precondition-skip.
    let mut degenerate = DenseMatrix::zeros(4, 5);
    for j in 0..5 {
        degenerate.set(j.min(3), j, 1.0);
    }
    degenerate.set(0, 4, 1.0);
    degenerate.set(3, 4, 0.0);
    let set = IndexSet::new(vec![0, 4])?;
    let skipped = check_rip_consequences(&degenerate, &set, &[1.0, 1.0])?;
    assert_eq!(skipped.skipped, 1);
    report.merge(&skipped);
    Ok(report)
}

/// Tail-frequency checks at the documented sizes plus the vacuous
/// `eps = 0` case.
fn concentration_family(seed: u64) -> Result<CheckReport> {
    let mut report = check_singular_concentration(64, 256, 0.5, 1000, seed)?;
    report.merge(&check_singular_concentration(16, 32, 0.0, 100, seed)?);
    Ok(report)
}

/// 100 Gaussian 32x64 draws plus the hand-computed diagonal instance and
/// an orthonormal-rows instance where the spread vanishes.
fn coherence_chain_family(seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("coherence-chain", CHAIN_TOL);
    let reports: Vec<Result<CheckReport>> = map_trials(100, |t| {
        let label = format!("checks|chain|trial={t}");
        let psi = gen_gaussian_matrix(32, 64, derive_seed(seed, &label));
        check_coherence_chain(&psi)
    });
    for r in reports {
        report.merge(&r?);
    }
    let diagonal = DenseMatrix::from_rows(&[
        vec![2.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
    ])?;
    report.merge(&check_coherence_chain(&diagonal)?);
    let orthonormal = DenseMatrix::from_rows(&[
        vec![1.0, 0.0, 0.0, 0.0],
        vec![0.0, 0.6, 0.8, 0.0],
    ])?;
    report.merge(&check_coherence_chain(&orthonormal)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(10, 2), 45);
        assert_eq!(binomial(12, 3), 220);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(4, 5), 0);
    }

    #[test]
    fn combinations_enumerate_lexicographically() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| seen.push(c.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn rip_constant_of_identity_is_zero() {
        let eye = DenseMatrix::identity(6);
        for k in 1..=4 {
            assert!(brute_force_rip_constant(&eye, k).unwrap() < 1e-12);
        }
    }

    #[test]
    fn rip_constant_of_duplicate_columns_is_one() {
        let phi = DenseMatrix::from_rows(&[vec![1.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let delta = brute_force_rip_constant(&phi, 2).unwrap();
        assert!((delta - 1.0).abs() < 1e-12, "delta = {delta}");
    }

    #[test]
    fn rip_constant_is_nondecreasing_in_k() {
        let phi = normalize_columns(&gen_gaussian_matrix(6, 10, 77)).unwrap();
        let mut last = 0.0;
        for k in 1..=4 {
            let delta = brute_force_rip_constant(&phi, k).unwrap();
            assert!(delta >= last - 1e-14, "delta_{k} = {delta} < {last}");
            last = delta;
        }
    }

    #[test]
    fn rip_constant_budget_is_enforced() {
        let phi = gen_gaussian_matrix(4, 64, 1);
        assert!(matches!(
            brute_force_rip_constant(&phi, 6),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn rip_constant_agrees_with_random_sampling_oracle() {
        // Definition-based oracle: extremes of ||phi_S x||^2 over random
        // unit vectors, 10^4 per support, on a 6x10 matrix at k = 2.
        let phi = normalize_columns(&gen_gaussian_matrix(6, 10, 2024)).unwrap();
        let brute = brute_force_rip_constant(&phi, 2).unwrap();
        let mut oracle = 0.0_f64;
        let mut rng = ChaCha12Rng::seed_from_u64(99);
        for_each_combination(10, 2, |support| {
            let set = IndexSet::new(support.to_vec()).unwrap();
            let sub = phi.select_columns(&set);
            let mut hi = f64::NEG_INFINITY;
            let mut lo = f64::INFINITY;
            for _ in 0..10_000 {
                let mut x = [0.0f64; 2];
                loop {
                    x[0] = rng.sample(StandardNormal);
                    x[1] = rng.sample(StandardNormal);
                    if x[0] != 0.0 || x[1] != 0.0 {
                        break;
                    }
                }
                let norm = (x[0] * x[0] + x[1] * x[1]).sqrt();
                let unit = [x[0] / norm, x[1] / norm];
                let image = sub.matvec(&unit);
                let value = dot(&image, &image);
                hi = hi.max(value);
                lo = lo.min(value);
            }
            oracle = oracle.max(hi - 1.0).max(1.0 - lo);
        });
        assert!(
            (brute - oracle).abs() < 1e-6,
            "brute = {brute}, oracle = {oracle}"
        );
        // Sampling can only underestimate the true constant.
        assert!(oracle <= brute + 1e-12);
    }

    #[test]
    fn wielandt_equality_for_collinear_vectors() {
        let b = gen_gaussian_matrix(4, 4, 5);
        let mut a = b.transpose().matmul(&b);
        for i in 0..4 {
            a.set(i, i, a.get(i, i) + 0.5);
        }
        let u = [0.3, -0.7, 0.2, 0.9];
        let report = check_wielandt(&a, &u, &u).unwrap();
        assert_eq!(report.violations, 0);
        assert!(report.worst_margin.abs() < 1e-10);
    }

    #[test]
    fn wielandt_rejects_indefinite_matrix() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]).unwrap();
        assert!(matches!(
            check_wielandt(&a, &[1.0, 0.0], &[0.0, 1.0]),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn cross_gram_singleton_is_tight_at_the_argmax_pair() {
        // For the two columns attaining the coherence, the bound is exact.
        let phi = normalize_columns(&gen_gaussian_matrix(6, 8, 3)).unwrap();
        let mu = matrix::mutual_coherence(&phi).unwrap();
        let cols = phi.columns();
        let mut argmax = (0, 1);
        let mut best = 0.0;
        for i in 0..8 {
            for j in (i + 1)..8 {
                let v = dot(&cols[i], &cols[j]).abs();
                if v > best {
                    best = v;
                    argmax = (i, j);
                }
            }
        }
        let i1 = IndexSet::new(vec![argmax.0]).unwrap();
        let i2 = IndexSet::new(vec![argmax.1]).unwrap();
        let report = check_cross_gram_bound(&phi, &i1, &i2).unwrap();
        assert_eq!(report.violations, 0);
        assert!(report.worst_margin.abs() < 1e-10, "mu = {mu}");
    }

    #[test]
    fn cross_gram_rejects_overlap() {
        let phi = DenseMatrix::identity(4);
        let i1 = IndexSet::new(vec![0, 1]).unwrap();
        let i2 = IndexSet::new(vec![1, 2]).unwrap();
        assert!(matches!(
            check_cross_gram_bound(&phi, &i1, &i2),
            Err(Error::OverlappingSets { index: 1 })
        ));
    }

    #[test]
    fn projection_bound_identity_is_equality() {
        let eye = DenseMatrix::identity(4);
        let report = check_projection_bound(&eye, &IndexSet::empty(), 2).unwrap();
        assert_eq!(report.violations, 0);
        assert!(report.worst_margin.abs() < 1e-12);
    }

    #[test]
    fn families_report_zero_violations() {
        for report in run_all(7).unwrap() {
            assert_eq!(
                report.violations, 0,
                "{} violated with worst margin {}",
                report.name, report.worst_margin
            );
        }
    }

    #[test]
    fn run_named_rejects_unknown() {
        assert!(run_named("nope", 7).is_err());
        assert_eq!(run_named("wielandt", 7).unwrap().len(), 1);
    }

    #[test]
    fn reports_serialize_with_header_and_hash() {
        let reports = vec![CheckReport::new("demo", 1e-10)];
        let csv = reports_to_csv(&reports, 7);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "name,instances_tested,violations,skipped,worst_margin,config_hash"
        );
        assert!(lines.next().unwrap().starts_with("demo,0,0,0,inf,"));
    }
}
