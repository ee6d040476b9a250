//! Pseudo-inverse preconditioning (PIP) and its regularized variant.
//!
//! The PIP preconditioner is the minimizer of `||P Psi - I||_F`. For a
//! matrix with thin SVD `Psi = U S V^T` of numerical rank `r` the minimizer
//! is `P = V_r diag(1/s_1..1/s_r) U_r^T`, and `P Psi = V_r V_r^T` is an
//! orthogonal projector. The full-row-rank and full-column-rank analytic
//! forms (`Psi^T (Psi Psi^T)^-1` and `(Psi^T Psi)^-1 Psi^T`) coincide with
//! that formula, so a single SVD code path serves all three rank cases; the
//! analytic forms survive only as test oracles.

use crate::error::{Error, Result};
use crate::matrix::{self, DenseMatrix, SvdResult};

/// How a preconditioner was constructed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PreconditionMethod {
    /// Moore-Penrose pseudo-inverse of the sampling matrix.
    Pip,
    /// Tikhonov-regularized variant `Psi^T (Psi Psi^T + lambda I)^-1`.
    ModifiedPip { lambda: f64 },
}

/// An `n x m` preconditioner for an `m x n` sampling matrix, with the
/// quantities the probability analysis needs.
#[derive(Debug, Clone)]
pub struct Preconditioner {
    /// The preconditioning matrix `P`, transpose-shaped relative to the
    /// source sampling matrix.
    pub matrix: DenseMatrix,
    pub method: PreconditionMethod,
    /// Numerical rank of the source matrix at construction time.
    pub source_rank: usize,
    /// Singular-value spread `(s_1^2 - s_m^2) / (s_1^2 + s_m^2)`; present
    /// only for PIP with `m <= n` and a strictly positive smallest singular
    /// value.
    pub nu_m: Option<f64>,
}

/// A sampling matrix bundled with its (optional) preconditioner, the
/// effective recovery matrix, and both raw and preconditioned samples.
#[derive(Debug, Clone)]
pub struct SensingSystem {
    pub psi: DenseMatrix,
    pub preconditioner: Option<Preconditioner>,
    /// Effective recovery matrix: `P Psi` when preconditioned, else `Psi`.
    pub phi: DenseMatrix,
    pub y0: Vec<f64>,
    /// `P y0` when preconditioned, else `y0`.
    pub y: Vec<f64>,
}

impl SensingSystem {
    /// Bundles a system without preconditioning: `phi = psi`, `y = y0`.
    pub fn unpreconditioned(psi: DenseMatrix, y0: Vec<f64>) -> Result<Self> {
        if y0.len() != psi.rows() {
            return Err(Error::DimensionMismatch {
                context: "sensing system samples",
                expected: format!("length {}", psi.rows()),
                found: format!("length {}", y0.len()),
            });
        }
        Ok(Self {
            phi: psi.clone(),
            y: y0.clone(),
            psi,
            preconditioner: None,
            y0,
        })
    }
}

/// Raw and `[0, 1]`-clamped values of a probability lower bound. The raw
/// value is deeply negative (vacuous) at desk scales and callers must be
/// able to see that.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundValue {
    pub raw: f64,
    pub clamped: f64,
}

impl BoundValue {
    fn from_raw(raw: f64) -> Self {
        Self {
            raw,
            clamped: raw.max(0.0),
        }
    }
}

/// Builds the PIP preconditioner of `psi` at the given rank tolerance.
///
/// Regardless of the rank case, `P Psi = V_r V_r^T` is symmetric and
/// idempotent (an orthogonal projector onto the top-`r` right-singular
/// subspace).
pub fn pip_preconditioner(psi: &DenseMatrix, rank_tol: f64) -> Result<Preconditioner> {
    let decomposition = matrix::svd(psi, rank_tol)?;
    let r = decomposition.numerical_rank;
    if r == 0 {
        return Err(Error::DegenerateInput(
            "cannot precondition the zero matrix".to_string(),
        ));
    }
    let p = pseudo_inverse_from_svd(&decomposition, r);
    let nu_m = spread_nu(psi, &decomposition);
    Ok(Preconditioner {
        matrix: p,
        method: PreconditionMethod::Pip,
        source_rank: r,
        nu_m,
    })
}

/// Builds the regularized preconditioner `Psi^T (Psi Psi^T + lambda I)^-1`
/// for the down-sampling regime `m <= n`.
///
/// At `lambda = 0` this reproduces [`pip_preconditioner`] for full-row-rank
/// input and errors on singular `Psi Psi^T`.
pub fn modified_pip(psi: &DenseMatrix, lambda: f64) -> Result<Preconditioner> {
    if psi.rows() > psi.cols() {
        return Err(Error::Domain(format!(
            "modified PIP targets down-sampling (m <= n), got {}x{}",
            psi.rows(),
            psi.cols()
        )));
    }
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!(
            "lambda must be a nonnegative real, got {lambda}"
        )));
    }
    let decomposition = matrix::svd(psi, matrix::DEFAULT_RANK_TOL)?;
    let r = decomposition.numerical_rank;
    if lambda == 0.0 && r < psi.rows() {
        return Err(Error::SingularGram);
    }
    // Psi Psi^T + lambda I = U diag(s^2 + lambda) U^T, so
    // P = V diag(s / (s^2 + lambda)) U^T.
    let m = psi.rows();
    let n = psi.cols();
    let p_count = decomposition.singular_values.len();
    let factors: Vec<f64> = decomposition
        .singular_values
        .iter()
        .map(|&s| {
            let denom = s * s + lambda;
            if denom > 0.0 {
                s / denom
            } else {
                0.0
            }
        })
        .collect();
    let mut p = DenseMatrix::zeros(n, m);
    for i in 0..n {
        for j in 0..m {
            let mut sum = 0.0;
            for t in 0..p_count {
                if factors[t] != 0.0 {
                    sum += decomposition.v.get(i, t) * factors[t] * decomposition.u.get(j, t);
                }
            }
            p.set(i, j, sum);
        }
    }
    Ok(Preconditioner {
        matrix: p,
        method: PreconditionMethod::ModifiedPip { lambda },
        source_rank: r,
        nu_m: None,
    })
}

/// Applies a preconditioner to a sampling matrix and raw samples, bundling
/// the result: `phi = P psi`, `y = P y0`.
pub fn apply(
    preconditioner: &Preconditioner,
    psi: &DenseMatrix,
    y0: &[f64],
) -> Result<SensingSystem> {
    let p = &preconditioner.matrix;
    if p.cols() != psi.rows() || p.rows() != psi.cols() {
        return Err(Error::DimensionMismatch {
            context: "preconditioner application",
            expected: format!("{}x{} preconditioner", psi.cols(), psi.rows()),
            found: format!("{}x{}", p.rows(), p.cols()),
        });
    }
    if y0.len() != psi.rows() {
        return Err(Error::DimensionMismatch {
            context: "preconditioner application samples",
            expected: format!("length {}", psi.rows()),
            found: format!("length {}", y0.len()),
        });
    }
    Ok(SensingSystem {
        psi: psi.clone(),
        preconditioner: Some(preconditioner.clone()),
        phi: p.matmul(psi),
        y0: y0.to_vec(),
        y: p.matvec(y0),
    })
}

/// Lower bound on `Pr(mu(P Psi) <= eta)` for an `m x n` Gaussian sampling
/// matrix: `1 - 3 n^2 exp(-m eta^2 / 72)`, reported raw and clamped.
pub fn theorem1_bound(n: usize, m: usize, eta: f64) -> Result<BoundValue> {
    if m == 0 || m >= n {
        return Err(Error::Domain(format!(
            "bound requires 0 < m < n, got m = {m}, n = {n}"
        )));
    }
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::Domain(format!(
            "eta must lie in the open interval (0, 1), got {eta}"
        )));
    }
    let nf = n as f64;
    let raw = 1.0 - 3.0 * nf * nf * (-(m as f64) * eta * eta / 72.0).exp();
    Ok(BoundValue::from_raw(raw))
}

/// Result of a Parseval-projector test on a square matrix.
#[derive(Debug, Clone, Copy)]
pub struct ParsevalReport {
    pub is_parseval_projector: bool,
    /// Largest deviation across the symmetry and idempotence tests.
    pub max_deviation: f64,
}

/// Checks whether `phi` acts as a Parseval tight frame on its range, i.e.
/// `phi^T phi = phi` and `phi = phi^T` entrywise within `tol`.
pub fn parseval_check(phi: &DenseMatrix, tol: f64) -> Result<ParsevalReport> {
    if phi.rows() != phi.cols() {
        return Err(Error::NonSquare {
            rows: phi.rows(),
            cols: phi.cols(),
        });
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let gram = phi.transpose().matmul(phi);
    let gram_dev = gram.max_abs_diff(phi);
    let sym_dev = phi.max_abs_diff(&phi.transpose());
    let max_deviation = gram_dev.max(sym_dev);
    Ok(ParsevalReport {
        is_parseval_projector: max_deviation <= tol,
        max_deviation,
    })
}

/// Result of the double-preconditioning test.
#[derive(Debug, Clone, Copy)]
pub struct IdempotenceReport {
    pub passed: bool,
    pub max_deviation: f64,
}

/// Verifies that applying PIP a second time leaves the preconditioned
/// matrix unchanged: with `P` built for `psi` and `P'` built for `P psi`,
/// `P' (P psi) = P psi` within `tol`.
pub fn pip_idempotence_check(psi: &DenseMatrix, tol: f64) -> Result<IdempotenceReport> {
    if psi.rows() >= psi.cols() {
        return Err(Error::Domain(format!(
            "idempotence check targets m < n, got {}x{}",
            psi.rows(),
            psi.cols()
        )));
    }
    let first = pip_preconditioner(psi, matrix::DEFAULT_RANK_TOL)?;
    let phi = first.matrix.matmul(psi);
    let second = pip_preconditioner(&phi, matrix::DEFAULT_RANK_TOL)?;
    let twice = second.matrix.matmul(&phi);
    let max_deviation = twice.max_abs_diff(&phi);
    Ok(IdempotenceReport {
        passed: max_deviation <= tol,
        max_deviation,
    })
}

fn pseudo_inverse_from_svd(decomposition: &SvdResult, rank: usize) -> DenseMatrix {
    let n = decomposition.v.rows();
    let m = decomposition.u.rows();
    let mut p = DenseMatrix::zeros(n, m);
    for i in 0..n {
        for j in 0..m {
            let mut sum = 0.0;
            for t in 0..rank {
                sum += decomposition.v.get(i, t) * decomposition.u.get(j, t)
                    / decomposition.singular_values[t];
            }
            p.set(i, j, sum);
        }
    }
    p
}

fn spread_nu(psi: &DenseMatrix, decomposition: &SvdResult) -> Option<f64> {
    let m = psi.rows();
    if m > psi.cols() {
        return None;
    }
    let sigma_1 = *decomposition.singular_values.first()?;
    let sigma_m = *decomposition.singular_values.get(m - 1)?;
    if sigma_m <= 0.0 {
        return None;
    }
    Some((sigma_1 * sigma_1 - sigma_m * sigma_m) / (sigma_1 * sigma_1 + sigma_m * sigma_m))
}
