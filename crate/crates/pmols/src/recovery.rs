//! Greedy sparse solvers and their success-condition calculators.
//!
//! The core loop selects `s` columns per iteration by projected-residual
//! correlation (multiple orthogonal least squares), solves least squares on
//! the accumulated support, and stops on a residual tolerance or an
//! iteration cap. The preconditioned variant builds a sensing system first
//! and runs the same loop on the effective matrix. OMP is the classic
//! baseline: one column per iteration, scored by raw correlation.
//!
//! Selection scores use the identity that maximizing
//! `|<phi_i, r>| / ||Pc phi_i||` over candidates (with `Pc` the projector
//! onto the orthogonal complement of the selected span) is equivalent to
//! minimizing the residual of the augmented support, which needs only the
//! running orthonormal basis instead of one projection per candidate.

use crate::error::{Error, Result};
use crate::matrix::{
    self, dot, norm2, DenseMatrix, IndexSet, QrBasis, DEFAULT_RANK_TOL, PROJECTION_DROP_TOL,
};
use crate::precondition::{self, BoundValue, SensingSystem};

/// A length-`n` vector with exactly `|support|` nonzero entries.
#[derive(Debug, Clone)]
pub struct SparseSignal {
    values: Vec<f64>,
    support: IndexSet,
}

impl SparseSignal {
    /// Builds a signal from dense values, deriving the support from the
    /// nonzero positions.
    pub fn from_dense(values: Vec<f64>) -> Result<Self> {
        for (i, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteEntry {
                    row: i,
                    col: 0,
                    value: *v,
                });
            }
        }
        let support = IndexSet::new(
            values
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0.0)
                .map(|(i, _)| i)
                .collect(),
        )?;
        Ok(Self { values, support })
    }

    /// Builds a signal of length `n` from a support and matching nonzero
    /// values.
    pub fn new(n: usize, support: IndexSet, nonzeros: &[f64]) -> Result<Self> {
        if support.len() != nonzeros.len() {
            return Err(Error::DimensionMismatch {
                context: "sparse signal support",
                expected: format!("{} values", support.len()),
                found: format!("{} values", nonzeros.len()),
            });
        }
        if let Some(&last) = support.as_slice().last() {
            if last >= n {
                return Err(Error::IndexOutOfRange { index: last, cols: n });
            }
        }
        let mut values = vec![0.0; n];
        for (&idx, &v) in support.iter().zip(nonzeros) {
            if v == 0.0 || !v.is_finite() {
                return Err(Error::Domain(format!(
                    "support value at index {idx} must be a nonzero finite real, got {v}"
                )));
            }
            values[idx] = v;
        }
        Ok(Self { values, support })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sparsity(&self) -> usize {
        self.support.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn support(&self) -> &IndexSet {
        &self.support
    }
}

/// Why a solver run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    ResidualTolerance,
    IterationCap,
    RankFailure,
}

/// Output of a greedy solver run.
#[derive(Debug, Clone)]
pub struct RecoveryResult {
    /// Estimated signal, zero off the estimated support.
    pub estimate: Vec<f64>,
    /// Estimated support of size `sparsity`.
    pub support: IndexSet,
    /// Residual norms: the initial `||y||` followed by one entry per
    /// completed iteration.
    pub residual_norms: Vec<f64>,
    pub iterations: usize,
    pub termination: Termination,
    /// Columns in the order the solver accepted them, before pruning.
    pub selection_order: Vec<usize>,
}

impl RecoveryResult {
    /// Relative l2 error against a reference signal.
    pub fn relative_error(&self, reference: &[f64]) -> f64 {
        let diff: Vec<f64> = self
            .estimate
            .iter()
            .zip(reference)
            .map(|(a, b)| a - b)
            .collect();
        let denom = norm2(reference);
        if denom == 0.0 {
            norm2(&self.estimate)
        } else {
            norm2(&diff) / denom
        }
    }
}

/// Solver inputs: target sparsity, per-iteration selection count, residual
/// tolerance, and an optional iteration-cap override.
///
/// Without an explicit `max_iters`, the loop guard is the literal
/// `floor(min(K, m/K))`, which also forces the input constraint
/// `s <= min(K, floor(m/K))`. With `max_iters` set (the experiment harness
/// uses `ceil(K/s)`), only `s <= K` is required and capacity is guarded at
/// run time.
#[derive(Debug, Clone, Copy)]
pub struct SolverParams {
    pub sparsity: usize,
    pub selection: usize,
    /// Absolute residual tolerance; `None` means `1e-6 * ||y||_2`.
    pub residual_tol: Option<f64>,
    pub max_iters: Option<usize>,
}

impl SolverParams {
    pub fn new(sparsity: usize, selection: usize) -> Self {
        Self {
            sparsity,
            selection,
            residual_tol: None,
            max_iters: None,
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.residual_tol = Some(tol);
        self
    }

    pub fn with_max_iters(mut self, cap: usize) -> Self {
        self.max_iters = Some(cap);
        self
    }

    fn validate(&self, rows: usize, cols: usize) -> Result<()> {
        let (k, s) = (self.sparsity, self.selection);
        if k == 0 || k > cols {
            return Err(Error::Domain(format!(
                "sparsity must satisfy 1 <= K <= n, got K = {k}, n = {cols}"
            )));
        }
        if s == 0 || s > k {
            return Err(Error::Domain(format!(
                "selection count must satisfy 1 <= s <= K, got s = {s}, K = {k}"
            )));
        }
        if self.max_iters.is_none() {
            let cap = rows / k; // floor(m/K)
            if s > k.min(cap) {
                return Err(Error::Domain(format!(
                    "selection count must satisfy s <= min(K, floor(m/K)) = {}, got s = {s} \
                     (set max_iters to override the literal iteration guard)",
                    k.min(cap)
                )));
            }
        }
        if let Some(tol) = self.residual_tol {
            if !(tol >= 0.0) || !tol.is_finite() {
                return Err(Error::Domain(format!(
                    "residual tolerance must be a nonnegative real, got {tol}"
                )));
            }
        }
        Ok(())
    }

    fn iteration_cap(&self, rows: usize) -> usize {
        match self.max_iters {
            Some(cap) => cap,
            None => {
                let k = self.sparsity as f64;
                let m = rows as f64;
                k.min(m / k).floor() as usize
            }
        }
    }
}

/// Which preconditioner (if any) the preconditioned solver builds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PreconditionMode {
    Pip,
    ModifiedPip { lambda: f64 },
    None,
}

/// Scoring rule for the greedy loop.
#[derive(Clone, Copy, PartialEq)]
enum SelectionRule {
    /// `|<phi_i, r>| / ||Pc phi_i||` — the orthogonal-least-squares score.
    ProjectedCorrelation,
    /// `|<phi_i, r>|` — the matching-pursuit score.
    RawCorrelation,
}

/// Selects the `s` admissible columns outside `selected` with the largest
/// scores `|<phi_i, r>| / ||Pc phi_i||`. Columns whose complement norm
/// falls at or below the drop tolerance are excluded as already spanned.
/// Ties break toward the lowest column index.
pub fn select_indices(
    system: &SensingSystem,
    residual: &[f64],
    selected: &IndexSet,
    s: usize,
) -> Result<IndexSet> {
    let phi = &system.phi;
    if residual.len() != phi.rows() {
        return Err(Error::DimensionMismatch {
            context: "selection residual",
            expected: format!("length {}", phi.rows()),
            found: format!("length {}", residual.len()),
        });
    }
    if s == 0 || s > phi.cols() - selected.len() {
        return Err(Error::Domain(format!(
            "cannot select {s} columns with {} remaining",
            phi.cols() - selected.len()
        )));
    }
    let mut basis = QrBasis::new(phi.rows());
    for &col in selected.iter() {
        basis.push_column(&phi.column(col), col)?;
    }
    let mut scored: Vec<(f64, usize)> = Vec::new();
    for col in 0..phi.cols() {
        if selected.contains(col) {
            continue;
        }
        let column = phi.column(col);
        let complement_norm = norm2(&basis.complement(&column));
        if complement_norm <= PROJECTION_DROP_TOL {
            continue;
        }
        scored.push((dot(&column, residual).abs() / complement_norm, col));
    }
    if scored.len() < s {
        return Err(Error::Exhausted {
            needed: s,
            available: scored.len(),
        });
    }
    scored.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
    IndexSet::new(scored[..s].iter().map(|&(_, col)| col).collect())
}

/// Multiple orthogonal least squares on an explicit `(phi, y)` system.
///
/// Per iteration: select `s` columns by projected correlation, solve least
/// squares on the grown support, update the residual; stop on the residual
/// tolerance or the iteration cap. The provisional estimate is then pruned
/// to its `sparsity` largest-magnitude entries and least squares is
/// re-solved on that final support.
pub fn mols(phi: &DenseMatrix, y: &[f64], params: &SolverParams) -> Result<RecoveryResult> {
    greedy(phi, y, params, SelectionRule::ProjectedCorrelation)
}

/// Orthogonal matching pursuit baseline: one column per iteration selected
/// by raw correlation `|<phi_i, r>|`, least squares on the accumulated
/// support, up to `sparsity` iterations. Ties break toward the lowest
/// column index.
pub fn omp(
    phi: &DenseMatrix,
    y: &[f64],
    sparsity: usize,
    residual_tol: Option<f64>,
) -> Result<RecoveryResult> {
    let params = SolverParams {
        sparsity,
        selection: 1,
        residual_tol,
        max_iters: Some(sparsity),
    };
    greedy(phi, y, &params, SelectionRule::RawCorrelation)
}

/// Preconditioned mOLS: builds the sensing system for the requested mode
/// and runs [`mols`] on the effective `(phi, y)` pair. `PreconditionMode::None`
/// is plain mOLS on `(psi, y0)`.
pub fn pmols(
    psi: &DenseMatrix,
    y0: &[f64],
    params: &SolverParams,
    mode: PreconditionMode,
) -> Result<RecoveryResult> {
    match mode {
        PreconditionMode::None => mols(psi, y0, params),
        PreconditionMode::Pip => {
            let pre = precondition::pip_preconditioner(psi, DEFAULT_RANK_TOL)?;
            let system = precondition::apply(&pre, psi, y0)?;
            mols(&system.phi, &system.y, params)
        }
        PreconditionMode::ModifiedPip { lambda } => {
            let pre = precondition::modified_pip(psi, lambda)?;
            let system = precondition::apply(&pre, psi, y0)?;
            mols(&system.phi, &system.y, params)
        }
    }
}

fn greedy(
    phi: &DenseMatrix,
    y: &[f64],
    params: &SolverParams,
    rule: SelectionRule,
) -> Result<RecoveryResult> {
    let (rows, cols) = (phi.rows(), phi.cols());
    if y.len() != rows {
        return Err(Error::DimensionMismatch {
            context: "solver samples",
            expected: format!("length {rows}"),
            found: format!("length {}", y.len()),
        });
    }
    params.validate(rows, cols)?;

    let tol = params.residual_tol.unwrap_or(1e-6 * norm2(y));
    let cap = params.iteration_cap(rows);
    let columns = phi.columns();

    let mut basis = QrBasis::new(rows);
    let mut selected: Vec<usize> = Vec::new();
    let mut is_selected = vec![false; cols];
    // Squared complement norms ||Pc phi_i||^2, maintained incrementally.
    let mut complement_sq: Vec<f64> = columns.iter().map(|c| dot(c, c)).collect();
    let mut residual = y.to_vec();
    let mut residual_norms = vec![norm2(y)];
    let mut iterations = 0;
    let mut termination = Termination::IterationCap;

    if residual_norms[0] <= tol {
        termination = Termination::ResidualTolerance;
    } else {
        'outer: while iterations < cap {
            if selected.len() + params.selection > rows {
                termination = Termination::IterationCap;
                break;
            }
            let mut scored: Vec<(f64, usize)> = Vec::with_capacity(cols - selected.len());
            for col in 0..cols {
                if is_selected[col] {
                    continue;
                }
                let correlation = dot(&columns[col], &residual).abs();
                match rule {
                    SelectionRule::ProjectedCorrelation => {
                        let complement = complement_sq[col].max(0.0).sqrt();
                        if complement <= PROJECTION_DROP_TOL {
                            continue;
                        }
                        scored.push((correlation / complement, col));
                    }
                    SelectionRule::RawCorrelation => scored.push((correlation, col)),
                }
            }
            if scored.len() < params.selection {
                termination = Termination::RankFailure;
                break;
            }
            scored.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));

            for &(_, col) in scored[..params.selection].iter() {
                if basis.push_column(&columns[col], col).is_err() {
                    termination = Termination::RankFailure;
                    break 'outer;
                }
                selected.push(col);
                is_selected[col] = true;
                let q_new = basis.basis().last().unwrap();
                let step = dot(q_new, &residual);
                let q_new = q_new.clone();
                for (ri, qi) in residual.iter_mut().zip(&q_new) {
                    *ri -= step * qi;
                }
                for col in 0..cols {
                    if !is_selected[col] {
                        let c = dot(&q_new, &columns[col]);
                        complement_sq[col] -= c * c;
                    }
                }
            }

            iterations += 1;
            let r_norm = norm2(&residual);
            residual_norms.push(r_norm);
            if r_norm <= tol {
                termination = Termination::ResidualTolerance;
                break;
            }
        }
    }

    // Provisional coefficients on everything accepted so far.
    let mut provisional = vec![0.0; cols];
    if !selected.is_empty() {
        let coefficients = basis.solve(y);
        for (&col, &value) in selected.iter().zip(&coefficients) {
            provisional[col] = value;
        }
    }

    // Prune to the K largest magnitudes (ties toward the lowest index),
    // then re-solve least squares on the final support.
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&a, &b| {
        provisional[b]
            .abs()
            .partial_cmp(&provisional[a].abs())
            .unwrap()
            .then(a.cmp(&b))
    });
    let support = IndexSet::new(order[..params.sparsity].to_vec())?;

    let mut estimate = vec![0.0; cols];
    match matrix::least_squares_on_support(phi, y, &support) {
        Ok(coefficients) => {
            for (&col, &value) in support.iter().zip(&coefficients) {
                estimate[col] = value;
            }
        }
        Err(Error::RankDeficient { .. }) | Err(Error::Domain(_)) => {
            // Keep the pruned provisional estimate as best-so-far.
            termination = Termination::RankFailure;
            for &col in support.iter() {
                estimate[col] = provisional[col];
            }
        }
        Err(other) => return Err(other),
    }

    Ok(RecoveryResult {
        estimate,
        support,
        residual_norms,
        iterations,
        termination,
        selection_order: selected,
    })
}

/// Exact-recovery threshold of mOLS at sparsity `k` and selection count
/// `s`: recovery is guaranteed when the mutual coherence is strictly below
/// `1 / (2sK - 2s + 1)`.
pub fn theorem2_threshold(k: usize, s: usize) -> f64 {
    1.0 / (2 * s * k - 2 * s + 1) as f64
}

/// Tests the deterministic mOLS recovery condition
/// `mu < 1 / (2sK - 2s + 1)`. At `s = 1` this reduces to the classic
/// `mu < 1 / (2K - 1)` condition.
pub fn theorem2_condition(mu: f64, k: usize, s: usize) -> Result<bool> {
    if k == 0 || s == 0 || s > k {
        return Err(Error::Domain(format!(
            "condition requires K >= 1 and 1 <= s <= K, got K = {k}, s = {s}"
        )));
    }
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::Domain(format!("mu must lie in [0, 1], got {mu}")));
    }
    Ok(mu < theorem2_threshold(k, s))
}

/// Probability that the preconditioned solver recovers every `K`-sparse
/// signal from `m` Gaussian samples:
/// `1 - 3 n^2 exp(-m / (72 (2Ks - 2s + 1)^2))`, raw and clamped.
pub fn theorem3_probability(n: usize, m: usize, k: usize, s: usize) -> Result<BoundValue> {
    if m == 0 || m >= n {
        return Err(Error::Domain(format!(
            "bound requires 0 < m < n, got m = {m}, n = {n}"
        )));
    }
    if k == 0 || s == 0 || s > k || (s as f64) > (m as f64) / (k as f64) {
        return Err(Error::Domain(format!(
            "bound requires 1 <= s <= min(K, m/K), got K = {k}, s = {s}, m = {m}"
        )));
    }
    let denom = 72.0 * (theorem2_threshold(k, s).recip()).powi(2);
    let nf = n as f64;
    let raw = 1.0 - 3.0 * nf * nf * (-(m as f64) / denom).exp();
    Ok(BoundValue {
        raw,
        clamped: raw.max(0.0),
    })
}

/// Sample count sufficient for success probability `1 - epsilon`:
/// `ceil(c K^2 ln(n / epsilon))`, floored at zero.
pub fn sample_complexity(n: usize, k: usize, epsilon: f64, c: f64) -> Result<u64> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::Domain(format!(
            "epsilon must be a positive real, got {epsilon}"
        )));
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::Domain(format!("c must be a positive real, got {c}")));
    }
    if n == 0 {
        return Err(Error::Domain("n must be positive".to_string()));
    }
    let value = c * (k * k) as f64 * (n as f64 / epsilon).ln();
    Ok(value.ceil().max(0.0) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::DenseMatrix;

    fn mat(rows: &[&[f64]]) -> DenseMatrix {
        DenseMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn identity_system() -> SensingSystem {
        SensingSystem::unpreconditioned(DenseMatrix::identity(4), vec![0.0, 3.0, 0.0, -2.0])
            .unwrap()
    }

    #[test]
    fn sparse_signal_from_dense_derives_support() {
        let x = SparseSignal::from_dense(vec![0.0, 3.0, 0.0, -2.0]).unwrap();
        assert_eq!(x.sparsity(), 2);
        assert_eq!(x.support().as_slice(), &[1, 3]);
    }

    #[test]
    fn sparse_signal_rejects_zero_support_value() {
        let support = IndexSet::new(vec![0, 2]).unwrap();
        assert!(SparseSignal::new(4, support, &[1.0, 0.0]).is_err());
    }

    #[test]
    fn selection_on_identity_scores_by_magnitude() {
        let system = identity_system();
        let chosen =
            select_indices(&system, &[0.0, 3.0, 0.0, -2.0], &IndexSet::empty(), 2).unwrap();
        assert_eq!(chosen.as_slice(), &[1, 3]);
    }

    #[test]
    fn selection_single_matches_ols_rule() {
        let phi = mat(&[
            &[0.9, 0.1, -0.4],
            &[0.2, 0.8, 0.3],
            &[-0.1, 0.5, 0.7],
        ]);
        let y = vec![1.0, -0.5, 0.25];
        let system = SensingSystem::unpreconditioned(phi.clone(), y.clone()).unwrap();
        let chosen = select_indices(&system, &y, &IndexSet::empty(), 1).unwrap();
        // With an empty support the score is |<phi_i, y>| / ||phi_i||.
        let mut best = (f64::NEG_INFINITY, 0);
        for col in 0..3 {
            let column = phi.column(col);
            let score = dot(&column, &y).abs() / norm2(&column);
            if score > best.0 {
                best = (score, col);
            }
        }
        assert_eq!(chosen.as_slice(), &[best.1]);
    }

    #[test]
    fn selection_exhaustion_errors() {
        let system = identity_system();
        let selected = IndexSet::new(vec![0, 1, 2]).unwrap();
        assert!(matches!(
            select_indices(&system, &[0.0, 3.0, 0.0, -2.0], &selected, 2),
            Err(Error::Domain(_))
        ));
        // A spanned column is inadmissible even if unselected.
        let phi = mat(&[&[1.0, 2.0, 0.0], &[0.0, 0.0, 1.0]]);
        let system = SensingSystem::unpreconditioned(phi, vec![1.0, 1.0]).unwrap();
        let selected = IndexSet::new(vec![0]).unwrap();
        assert!(matches!(
            select_indices(&system, &[1.0, 1.0], &selected, 2),
            Err(Error::Exhausted {
                needed: 2,
                available: 1
            })
        ));
    }

    #[test]
    fn mols_identity_recovers_exactly() {
        let phi = DenseMatrix::identity(4);
        let y = [0.0, 3.0, 0.0, -2.0];
        let result = mols(&phi, &y, &SolverParams::new(2, 1).with_tol(1e-8)).unwrap();
        assert_eq!(result.support.as_slice(), &[1, 3]);
        assert_eq!(result.estimate, vec![0.0, 3.0, 0.0, -2.0]);
        assert_eq!(result.iterations, 2);
        assert_eq!(result.termination, Termination::ResidualTolerance);
    }

    #[test]
    fn mols_zero_samples_stop_immediately() {
        let phi = DenseMatrix::identity(4);
        let result = mols(&phi, &[0.0; 4], &SolverParams::new(2, 1)).unwrap();
        assert_eq!(result.iterations, 0);
        assert_eq!(result.termination, Termination::ResidualTolerance);
        assert!(result.estimate.iter().all(|&v| v == 0.0));
        // Zero-magnitude ties resolve toward the lowest indices.
        assert_eq!(result.support.as_slice(), &[0, 1]);
    }

    #[test]
    fn mols_residuals_are_nonincreasing() {
        let phi = mat(&[
            &[0.6, -0.3, 0.8, 0.1, -0.5],
            &[0.2, 0.9, -0.1, 0.7, 0.3],
            &[-0.4, 0.2, 0.5, -0.6, 0.8],
            &[0.7, 0.1, -0.3, 0.2, -0.2],
        ]);
        let y = [1.0, -2.0, 0.5, 0.7];
        let result = mols(&phi, &y, &SolverParams::new(3, 1).with_max_iters(3)).unwrap();
        for w in result.residual_norms.windows(2) {
            assert!(w[1] <= w[0] + 1e-10);
        }
    }

    #[test]
    fn mols_default_cap_is_literal_guard() {
        // K = 3, m = 4: floor(min(3, 4/3)) = 1 iteration.
        let phi = mat(&[
            &[0.6, -0.3, 0.8, 0.1, -0.5],
            &[0.2, 0.9, -0.1, 0.7, 0.3],
            &[-0.4, 0.2, 0.5, -0.6, 0.8],
            &[0.7, 0.1, -0.3, 0.2, -0.2],
        ]);
        let y = [1.0, -2.0, 0.5, 0.7];
        let result = mols(&phi, &y, &SolverParams::new(3, 1)).unwrap();
        assert_eq!(result.iterations, 1);
        assert_eq!(result.termination, Termination::IterationCap);
        assert_eq!(result.support.len(), 3);
    }

    #[test]
    fn solver_params_validation() {
        let phi = DenseMatrix::identity(4);
        let y = [1.0, 0.0, 0.0, 0.0];
        // s > K
        assert!(mols(&phi, &y, &SolverParams::new(2, 3)).is_err());
        // K > n
        assert!(mols(&phi, &y, &SolverParams::new(5, 1)).is_err());
        // Literal guard: K = 3, m = 4 -> floor(m/K) = 1, so s = 2 is out...
        assert!(mols(&phi, &y, &SolverParams::new(3, 2)).is_err());
        // ...unless the cap is overridden.
        assert!(mols(&phi, &y, &SolverParams::new(3, 2).with_max_iters(2)).is_ok());
    }

    #[test]
    fn omp_identity_recovers_exactly() {
        let phi = DenseMatrix::identity(4);
        let result = omp(&phi, &[0.0, 3.0, 0.0, -2.0], 2, None).unwrap();
        assert_eq!(result.support.as_slice(), &[1, 3]);
        assert_eq!(result.estimate, vec![0.0, 3.0, 0.0, -2.0]);
    }

    #[test]
    fn omp_and_mols_agree_on_orthonormal_columns() {
        // Orthonormal columns make the OLS denominators all one.
        let phi = mat(&[
            &[1.0, 0.0, 0.0],
            &[0.0, 0.6, -0.8],
            &[0.0, 0.8, 0.6],
        ]);
        let y = [0.3, -1.2, 0.9];
        let a = omp(&phi, &y, 2, None).unwrap();
        let b = mols(&phi, &y, &SolverParams::new(2, 1).with_max_iters(2)).unwrap();
        assert_eq!(a.selection_order, b.selection_order);
    }

    #[test]
    fn omp_orthogonal_samples_tie_break_lowest_index() {
        // y is orthogonal to every column: all scores zero.
        let phi = mat(&[&[1.0, 1.0], &[0.0, 0.0]]);
        let y = [0.0, 5.0];
        let result = omp(&phi, &y, 1, None).unwrap();
        assert_eq!(result.selection_order, vec![0]);
        assert_eq!(result.support.as_slice(), &[0]);
    }

    #[test]
    fn pmols_square_invertible_matches_plain_mols() {
        let psi = mat(&[&[2.0, 1.0], &[1.0, 3.0]]);
        let x = [0.0, 4.0];
        let y0 = psi.matvec(&x);
        let params = SolverParams::new(1, 1);
        let with_pip = pmols(&psi, &y0, &params, PreconditionMode::Pip).unwrap();
        let plain = pmols(&psi, &y0, &params, PreconditionMode::None).unwrap();
        assert_eq!(with_pip.support.as_slice(), plain.support.as_slice());
        for (a, b) in with_pip.estimate.iter().zip(&plain.estimate) {
            assert!((a - b).abs() < 1e-8);
        }
        assert!((with_pip.estimate[1] - 4.0).abs() < 1e-8);
    }

    #[test]
    fn pmols_zero_signal_gives_zero_estimate() {
        let psi = mat(&[&[0.8, -0.3, 0.5, 1.2], &[0.2, 0.9, -0.4, 0.1]]);
        let result = pmols(&psi, &[0.0, 0.0], &SolverParams::new(1, 1), PreconditionMode::Pip)
            .unwrap();
        assert!(result.estimate.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn theorem2_examples() {
        assert_eq!(theorem2_threshold(1, 1), 1.0);
        assert!(theorem2_condition(0.999, 1, 1).unwrap());
        assert!((theorem2_threshold(2, 1) - 1.0 / 3.0).abs() < 1e-15);
        assert!((theorem2_threshold(5, 3) - 1.0 / 25.0).abs() < 1e-15);
        assert!(!theorem2_condition(0.04, 5, 3).unwrap());
        assert!(theorem2_condition(0.039, 5, 3).unwrap());
        // s = 1 reduces to the classic OLS condition 1/(2K - 1).
        assert!((theorem2_threshold(4, 1) - 1.0 / 7.0).abs() < 1e-15);
        assert!(theorem2_condition(1.5, 2, 1).is_err());
        assert!(theorem2_condition(0.5, 2, 3).is_err());
    }

    #[test]
    fn theorem3_examples() {
        // K = s = 1: exponent is m/72.
        let b = theorem3_probability(16, 8, 1, 1).unwrap();
        let expected = 1.0 - 3.0 * 256.0 * (-8.0 / 72.0_f64).exp();
        assert!((b.raw - expected).abs() < 1e-12);
        // Desk scale is vacuous. Oracle: -196491.488...
        let desk = theorem3_probability(256, 128, 10, 3).unwrap();
        assert!((desk.raw - (-196491.48838139442)).abs() < 1e-4);
        assert_eq!(desk.clamped, 0.0);
        // Domain checks.
        assert!(theorem3_probability(256, 256, 10, 3).is_err());
        assert!(theorem3_probability(256, 128, 10, 15).is_err());
    }

    #[test]
    fn sample_complexity_examples() {
        // epsilon = n makes the log vanish.
        assert_eq!(sample_complexity(256, 4, 256.0, 1.0).unwrap(), 0);
        // Frozen oracle: ceil(16 ln 25600) = 163.
        assert_eq!(sample_complexity(256, 4, 0.01, 1.0).unwrap(), 163);
        // Doubling K quadruples the requirement (up to the ceiling).
        let m1 = sample_complexity(512, 5, 0.05, 0.7).unwrap();
        let m2 = sample_complexity(512, 10, 0.05, 0.7).unwrap();
        assert!(m2 <= 4 * m1 && m2 + 3 >= 4 * m1, "m1 = {m1}, m2 = {m2}");
        assert!(sample_complexity(256, 4, 0.0, 1.0).is_err());
        assert!(sample_complexity(256, 4, 0.5, 0.0).is_err());
    }
}
