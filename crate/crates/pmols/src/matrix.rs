//! Dense real linear algebra primitives consumed by every other module:
//! singular value decomposition, subset least squares, orthogonal
//! projections, norms, and mutual coherence.
//!
//! Matrices are row-major with column-vector convention throughout. The
//! decomposition itself is backed by `nalgebra`; subset least squares goes
//! through modified Gram-Schmidt orthogonalization rather than normal
//! equations.

use crate::error::{Error, Result};

/// Default relative rank tolerance: singular values above
/// `DEFAULT_RANK_TOL * sigma_1` count toward the numerical rank.
pub const DEFAULT_RANK_TOL: f64 = 1e-12;

/// Columns whose projection onto the current orthogonal complement falls at
/// or below this norm are treated as already spanned.
pub const PROJECTION_DROP_TOL: f64 = 1e-12;

/// Dense real matrix with explicit dimensions, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Builds a matrix from row-major entries, validating shape and
    /// finiteness.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                rows,
                cols,
                len: data.len(),
                needed: rows * cols,
            });
        }
        for (pos, &value) in data.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFiniteEntry {
                    row: pos / cols,
                    col: pos % cols,
                    value,
                });
            }
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from a slice of equal-length rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyMatrix { rows: 0, cols: 0 });
        }
        let cols = rows[0].len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::ShapeMismatch {
                    rows: rows.len(),
                    cols,
                    len: row.len(),
                    needed: cols * rows.len(),
                });
            }
            let _ = i;
        }
        let data: Vec<f64> = rows.iter().flatten().copied().collect();
        Self::from_row_major(rows.len(), cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "zero-sized matrix");
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.data[row * self.cols + col] = value;
    }

    pub fn entries(&self) -> &[f64] {
        &self.data
    }

    pub fn row_slice(&self, row: usize) -> &[f64] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    /// Copies column `col` into a fresh vector.
    pub fn column(&self, col: usize) -> Vec<f64> {
        (0..self.rows).map(|r| self.get(r, col)).collect()
    }

    /// All columns as contiguous vectors; useful when an algorithm walks
    /// columns repeatedly over row-major storage.
    pub fn columns(&self) -> Vec<Vec<f64>> {
        let mut out = vec![Vec::with_capacity(self.rows); self.cols];
        for r in 0..self.rows {
            let row = self.row_slice(r);
            for (c, &v) in row.iter().enumerate() {
                out[c].push(v);
            }
        }
        out
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        out
    }

    /// Matrix product `self * other`. Dimensions are a programmer contract.
    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0.0 {
                    continue;
                }
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                let src = &other.data[k * other.cols..(k + 1) * other.cols];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += a * s;
                }
            }
        }
        out
    }

    /// Matrix-vector product `self * v`.
    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "matvec dimension mismatch");
        (0..self.rows)
            .map(|r| dot(self.row_slice(r), v))
            .collect()
    }

    /// Submatrix of the columns listed in `set` (in increasing order).
    pub fn select_columns(&self, set: &IndexSet) -> DenseMatrix {
        assert!(!set.is_empty(), "empty column selection");
        let k = set.len();
        let mut out = DenseMatrix::zeros(self.rows, k);
        for r in 0..self.rows {
            for (j, &c) in set.iter().enumerate() {
                out.data[r * k + j] = self.get(r, c);
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
    }

    /// Largest absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0_f64, |acc, (a, b)| acc.max((a - b).abs()))
    }

    pub fn scale(&self, factor: f64) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn add(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub(crate) fn to_nalgebra(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (row, col): (usize, usize)) -> &f64 {
        &self.data[row * self.cols + col]
    }
}

/// Strictly increasing set of column indices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IndexSet {
    indices: Vec<usize>,
}

impl IndexSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Sorts the input and rejects duplicates.
    pub fn new(mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        for w in indices.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Domain(format!("duplicate index {}", w[0])));
            }
        }
        Ok(Self { indices })
    }

    /// Validates the indices against a column count.
    pub fn checked(indices: Vec<usize>, cols: usize) -> Result<Self> {
        let set = Self::new(indices)?;
        if let Some(&last) = set.indices.last() {
            if last >= cols {
                return Err(Error::IndexOutOfRange { index: last, cols });
            }
        }
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.indices.iter()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.indices
    }

    /// Inserts a new index, keeping the set sorted. Duplicates are rejected.
    pub fn insert(&mut self, index: usize) -> Result<()> {
        match self.indices.binary_search(&index) {
            Ok(_) => Err(Error::Domain(format!("duplicate index {index}"))),
            Err(pos) => {
                self.indices.insert(pos, index);
                Ok(())
            }
        }
    }
}

/// Singular value decomposition with column-orthonormal factors and a
/// numerical rank at the supplied tolerance.
#[derive(Debug, Clone)]
pub struct SvdResult {
    /// Left singular vectors, `rows x p` with `p = min(rows, cols)`.
    pub u: DenseMatrix,
    /// Singular values sorted nonincreasing, all nonnegative.
    pub singular_values: Vec<f64>,
    /// Right singular vectors, `cols x p`.
    pub v: DenseMatrix,
    /// Count of singular values above `rank_tol * sigma_1`.
    pub numerical_rank: usize,
}

/// Computes the thin SVD of `a` and the numerical rank at `rank_tol`.
///
/// The rank is the number of singular values strictly above
/// `rank_tol * sigma_1`; a zero matrix has rank 0.
pub fn svd(a: &DenseMatrix, rank_tol: f64) -> Result<SvdResult> {
    if !(rank_tol > 0.0) || !rank_tol.is_finite() {
        return Err(Error::Domain(format!(
            "rank tolerance must be a positive real, got {rank_tol}"
        )));
    }
    let decomposition = a
        .to_nalgebra()
        .try_svd(true, true, f64::EPSILON, 10_000)
        .ok_or(Error::DecompositionFailure {
            rows: a.rows(),
            cols: a.cols(),
        })?;
    let u_na = decomposition.u.ok_or(Error::DecompositionFailure {
        rows: a.rows(),
        cols: a.cols(),
    })?;
    let vt_na = decomposition.v_t.ok_or(Error::DecompositionFailure {
        rows: a.rows(),
        cols: a.cols(),
    })?;
    let sigma: Vec<f64> = decomposition.singular_values.iter().copied().collect();

    // nalgebra sorts, but the ordering is a contract here, so enforce it.
    let mut order: Vec<usize> = (0..sigma.len()).collect();
    order.sort_by(|&i, &j| sigma[j].partial_cmp(&sigma[i]).unwrap());

    let p = sigma.len();
    let mut u = DenseMatrix::zeros(a.rows(), p);
    let mut v = DenseMatrix::zeros(a.cols(), p);
    let mut singular_values = Vec::with_capacity(p);
    for (new_col, &old_col) in order.iter().enumerate() {
        singular_values.push(sigma[old_col]);
        for r in 0..a.rows() {
            u.set(r, new_col, u_na[(r, old_col)]);
        }
        for r in 0..a.cols() {
            v.set(r, new_col, vt_na[(old_col, r)]);
        }
    }

    let sigma_max = singular_values.first().copied().unwrap_or(0.0);
    let numerical_rank = singular_values
        .iter()
        .filter(|&&s| s > rank_tol * sigma_max && s > 0.0)
        .count();

    Ok(SvdResult {
        u,
        singular_values,
        v,
        numerical_rank,
    })
}

/// Mutual coherence: the largest absolute normalized inner product between
/// distinct columns, clamped to `[0, 1]` against rounding.
pub fn mutual_coherence(a: &DenseMatrix) -> Result<f64> {
    if a.cols() < 2 {
        return Err(Error::Domain(format!(
            "mutual coherence needs at least 2 columns, got {}",
            a.cols()
        )));
    }
    let cols = a.columns();
    let mut norms = Vec::with_capacity(cols.len());
    for (j, col) in cols.iter().enumerate() {
        let n = norm2(col);
        if n == 0.0 {
            return Err(Error::ZeroColumn { col: j });
        }
        norms.push(n);
    }
    let mut best = 0.0_f64;
    for i in 0..cols.len() {
        for j in (i + 1)..cols.len() {
            let value = dot(&cols[i], &cols[j]).abs() / (norms[i] * norms[j]);
            if value > best {
                best = value;
            }
        }
    }
    Ok(best.clamp(0.0, 1.0))
}

/// Least-squares coefficients of `y` against the columns of `phi` listed in
/// `set`: the minimum-residual solution over `span(phi_S)`.
///
/// Solved through modified Gram-Schmidt orthogonalization of the subset
/// columns, never normal equations.
pub fn least_squares_on_support(phi: &DenseMatrix, y: &[f64], set: &IndexSet) -> Result<Vec<f64>> {
    validate_vector_len("least_squares_on_support", phi.rows(), y)?;
    validate_index_set(phi, set)?;
    if set.len() > phi.rows() {
        return Err(Error::Domain(format!(
            "support size {} exceeds row count {}",
            set.len(),
            phi.rows()
        )));
    }
    if set.is_empty() {
        return Ok(Vec::new());
    }
    let mut basis = QrBasis::new(phi.rows());
    for &col in set.iter() {
        basis.push_column(&phi.column(col), col)?;
    }
    Ok(basis.solve(y))
}

/// Projects `v` onto the orthogonal complement of `span(phi_S)`:
/// `v - phi_S pinv(phi_S) v`.
pub fn project_orthogonal_complement(
    phi: &DenseMatrix,
    set: &IndexSet,
    v: &[f64],
) -> Result<Vec<f64>> {
    validate_vector_len("project_orthogonal_complement", phi.rows(), v)?;
    validate_index_set(phi, set)?;
    if set.is_empty() {
        return Ok(v.to_vec());
    }
    let mut basis = QrBasis::new(phi.rows());
    for &col in set.iter() {
        basis.push_column(&phi.column(col), col)?;
    }
    Ok(basis.complement(v))
}

/// Frobenius distance to the identity, `||a - I||_F`, for square `a`.
pub fn frobenius_distance_to_identity(a: &DenseMatrix) -> Result<f64> {
    if a.rows() != a.cols() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut sum = 0.0;
    for r in 0..n {
        for c in 0..n {
            let d = a.get(r, c) - if r == c { 1.0 } else { 0.0 };
            sum += d * d;
        }
    }
    Ok(sum.sqrt())
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn validate_vector_len(context: &'static str, expected: usize, v: &[f64]) -> Result<()> {
    if v.len() != expected {
        return Err(Error::DimensionMismatch {
            context,
            expected: format!("length {expected}"),
            found: format!("length {}", v.len()),
        });
    }
    Ok(())
}

fn validate_index_set(phi: &DenseMatrix, set: &IndexSet) -> Result<()> {
    if let Some(&last) = set.as_slice().last() {
        if last >= phi.cols() {
            return Err(Error::IndexOutOfRange {
                index: last,
                cols: phi.cols(),
            });
        }
    }
    Ok(())
}

/// Incrementally grown orthonormal basis (modified Gram-Schmidt with one
/// reorthogonalization pass) plus the triangular factor needed to solve
/// least squares on the pushed columns.
pub(crate) struct QrBasis {
    rows: usize,
    /// Orthonormal vectors, one per accepted column.
    q: Vec<Vec<f64>>,
    /// Upper-triangular columns: `r[t]` holds the coefficients of pushed
    /// column `t` against `q[0..=t]`.
    r: Vec<Vec<f64>>,
}

impl QrBasis {
    pub fn new(rows: usize) -> Self {
        Self {
            rows,
            q: Vec::new(),
            r: Vec::new(),
        }
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.q
    }

    /// Orthogonalizes `col` against the current basis and appends it.
    /// `label` is only used for the rank-deficiency message.
    pub fn push_column(&mut self, col: &[f64], label: usize) -> Result<()> {
        debug_assert_eq!(col.len(), self.rows);
        let original_norm = norm2(col);
        let mut v = col.to_vec();
        let mut coeffs = vec![0.0; self.q.len() + 1];
        for _pass in 0..2 {
            for (t, q) in self.q.iter().enumerate() {
                let c = dot(q, &v);
                coeffs[t] += c;
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= c * qi;
                }
            }
        }
        let norm = norm2(&v);
        if original_norm == 0.0 || norm <= PROJECTION_DROP_TOL * original_norm {
            return Err(Error::RankDeficient {
                detail: format!(
                    "column {label} lies in the span of the {} previously selected columns",
                    self.q.len()
                ),
            });
        }
        for vi in v.iter_mut() {
            *vi /= norm;
        }
        *coeffs.last_mut().unwrap() = norm;
        self.q.push(v);
        self.r.push(coeffs);
        Ok(())
    }

    /// Least-squares coefficients for the pushed columns: solves
    /// `R x = Q^T y` by back substitution.
    pub fn solve(&self, y: &[f64]) -> Vec<f64> {
        let k = self.q.len();
        let mut qty: Vec<f64> = self.q.iter().map(|q| dot(q, y)).collect();
        for t in (0..k).rev() {
            qty[t] /= self.r[t][t];
            let x_t = qty[t];
            for (row, value) in qty.iter_mut().enumerate().take(t) {
                *value -= self.r[t][row] * x_t;
            }
        }
        qty
    }

    /// `v` minus its projection onto the basis span.
    pub fn complement(&self, v: &[f64]) -> Vec<f64> {
        let mut w = v.to_vec();
        for _pass in 0..2 {
            for q in &self.q {
                let c = dot(q, &w);
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= c * qi;
                }
            }
        }
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[f64]]) -> DenseMatrix {
        DenseMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn construction_rejects_non_finite() {
        let err = DenseMatrix::from_row_major(1, 2, vec![1.0, f64::NAN]).unwrap_err();
        assert!(matches!(err, Error::NonFiniteEntry { row: 0, col: 1, .. }));
        assert!(DenseMatrix::from_row_major(0, 2, vec![]).is_err());
        assert!(DenseMatrix::from_row_major(2, 2, vec![0.0; 3]).is_err());
    }

    #[test]
    fn svd_identity() {
        let result = svd(&DenseMatrix::identity(3), DEFAULT_RANK_TOL).unwrap();
        assert_eq!(result.numerical_rank, 3);
        for s in &result.singular_values {
            assert!((s - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn svd_diagonal_rectangular() {
        let a = mat(&[&[2.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]);
        let result = svd(&a, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(result.singular_values.len(), 2);
        assert!((result.singular_values[0] - 2.0).abs() < 1e-12);
        assert!((result.singular_values[1] - 1.0).abs() < 1e-12);
        assert_eq!(result.numerical_rank, 2);
    }

    #[test]
    fn svd_zero_matrix_has_rank_zero() {
        let a = DenseMatrix::zeros(2, 3);
        let result = svd(&a, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(result.numerical_rank, 0);
        assert!(result.singular_values.iter().all(|&s| s == 0.0));
    }

    #[test]
    fn svd_factors_are_orthonormal_and_reconstruct() {
        let a = mat(&[
            &[0.3, -1.2, 0.7, 2.0],
            &[1.1, 0.4, -0.9, 0.2],
            &[-0.5, 0.8, 1.3, -0.1],
        ]);
        let result = svd(&a, DEFAULT_RANK_TOL).unwrap();
        let p = result.singular_values.len();

        let utu = result.u.transpose().matmul(&result.u);
        let vtv = result.v.transpose().matmul(&result.v);
        assert!(utu.max_abs_diff(&DenseMatrix::identity(p)) < 1e-12);
        assert!(vtv.max_abs_diff(&DenseMatrix::identity(p)) < 1e-12);

        let mut sigma = DenseMatrix::zeros(p, p);
        for i in 0..p {
            sigma.set(i, i, result.singular_values[i]);
        }
        let reconstructed = result.u.matmul(&sigma).matmul(&result.v.transpose());
        let err = reconstructed.max_abs_diff(&a);
        assert!(err < 1e-12, "reconstruction error {err}");

        // Nonincreasing order.
        for w in result.singular_values.windows(2) {
            assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn coherence_orthogonal_columns_is_zero() {
        assert_eq!(mutual_coherence(&DenseMatrix::identity(3)).unwrap(), 0.0);
    }

    #[test]
    fn coherence_of_known_pair() {
        let a = mat(&[&[1.0, 1.0], &[0.0, 1.0]]);
        let mu = mutual_coherence(&a).unwrap();
        assert!((mu - 1.0 / 2.0_f64.sqrt()).abs() < 1e-12, "mu = {mu}");
    }

    #[test]
    fn coherence_identical_columns_is_one() {
        let a = mat(&[&[1.0, 1.0], &[2.0, 2.0]]);
        let mu = mutual_coherence(&a).unwrap();
        assert!((mu - 1.0).abs() < 1e-12, "mu = {mu}");
        assert!(mu <= 1.0);
    }

    #[test]
    fn coherence_rejects_zero_column() {
        let a = mat(&[&[1.0, 0.0], &[2.0, 0.0]]);
        match mutual_coherence(&a).unwrap_err() {
            Error::ZeroColumn { col } => assert_eq!(col, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn least_squares_identity_support() {
        let phi = DenseMatrix::identity(4);
        let set = IndexSet::new(vec![1, 3]).unwrap();
        let x = least_squares_on_support(&phi, &[0.0, 3.0, 0.0, -2.0], &set).unwrap();
        assert_eq!(x, vec![3.0, -2.0]);
    }

    #[test]
    fn least_squares_small_system() {
        let phi = mat(&[&[1.0, 1.0], &[0.0, 1.0]]);
        let set = IndexSet::new(vec![0, 1]).unwrap();
        let x = least_squares_on_support(&phi, &[2.0, 1.0], &set).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12);
        assert!((x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn least_squares_orthonormal_columns_match_transpose() {
        let phi = mat(&[
            &[1.0, 0.0],
            &[0.0, 0.6],
            &[0.0, 0.8],
        ]);
        let y = [0.7, -0.2, 0.5];
        let set = IndexSet::new(vec![0, 1]).unwrap();
        let x = least_squares_on_support(&phi, &y, &set).unwrap();
        let expected0 = dot(&phi.column(0), &y);
        let expected1 = dot(&phi.column(1), &y);
        assert!((x[0] - expected0).abs() < 1e-12);
        assert!((x[1] - expected1).abs() < 1e-12);
    }

    #[test]
    fn least_squares_residual_is_orthogonal_to_support() {
        let phi = mat(&[
            &[0.9, -0.3, 0.2],
            &[0.1, 0.8, -0.5],
            &[-0.4, 0.2, 0.7],
            &[0.3, 0.6, 0.1],
        ]);
        let y = [1.0, -2.0, 0.5, 0.25];
        let set = IndexSet::new(vec![0, 2]).unwrap();
        let x = least_squares_on_support(&phi, &y, &set).unwrap();
        let sub = phi.select_columns(&set);
        let fitted = sub.matvec(&x);
        let residual: Vec<f64> = y.iter().zip(&fitted).map(|(a, b)| a - b).collect();
        for &col in set.iter() {
            let inner = dot(&phi.column(col), &residual).abs();
            assert!(inner <= 1e-8 * norm2(&y), "inner product {inner}");
        }
    }

    #[test]
    fn least_squares_rejects_dependent_columns() {
        let phi = mat(&[&[1.0, 2.0], &[2.0, 4.0]]);
        let set = IndexSet::new(vec![0, 1]).unwrap();
        assert!(matches!(
            least_squares_on_support(&phi, &[1.0, 1.0], &set),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn projection_with_empty_support_is_identity() {
        let phi = DenseMatrix::identity(3);
        let v = [1.0, 2.0, 3.0];
        let w = project_orthogonal_complement(&phi, &IndexSet::empty(), &v).unwrap();
        assert_eq!(w, v.to_vec());
    }

    #[test]
    fn projection_annihilates_in_span_vectors() {
        let phi = mat(&[
            &[1.0, 0.5],
            &[2.0, -0.25],
            &[0.5, 1.0],
        ]);
        let set = IndexSet::new(vec![0, 1]).unwrap();
        // v = 2*phi_0 - 3*phi_1 lies in the span.
        let v: Vec<f64> = (0..3)
            .map(|r| 2.0 * phi.get(r, 0) - 3.0 * phi.get(r, 1))
            .collect();
        let w = project_orthogonal_complement(&phi, &set, &v).unwrap();
        assert!(norm2(&w) < 1e-10);
    }

    #[test]
    fn projection_coordinate_case() {
        let phi = DenseMatrix::identity(3);
        let set = IndexSet::new(vec![0]).unwrap();
        let w = project_orthogonal_complement(&phi, &set, &[1.0, 2.0, 3.0]).unwrap();
        assert!((w[0]).abs() < 1e-15);
        assert_eq!(w[1], 2.0);
        assert_eq!(w[2], 3.0);
    }

    #[test]
    fn projection_is_idempotent() {
        let phi = mat(&[
            &[0.2, -0.7, 0.3],
            &[1.0, 0.1, -0.2],
            &[-0.3, 0.5, 0.9],
            &[0.4, 0.4, 0.4],
        ]);
        let set = IndexSet::new(vec![0, 2]).unwrap();
        let v = [0.3, -1.0, 0.7, 0.2];
        let once = project_orthogonal_complement(&phi, &set, &v).unwrap();
        let twice = project_orthogonal_complement(&phi, &set, &once).unwrap();
        let diff: f64 = once
            .iter()
            .zip(&twice)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(diff < 1e-10);
    }

    #[test]
    fn frobenius_distance_examples() {
        assert_eq!(
            frobenius_distance_to_identity(&DenseMatrix::identity(4)).unwrap(),
            0.0
        );
        let a = mat(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 0.0]]);
        assert!((frobenius_distance_to_identity(&a).unwrap() - 1.0).abs() < 1e-15);
        let zero = DenseMatrix::zeros(2, 2);
        assert!(
            (frobenius_distance_to_identity(&zero).unwrap() - 2.0_f64.sqrt()).abs() < 1e-15
        );
        assert!(matches!(
            frobenius_distance_to_identity(&DenseMatrix::zeros(2, 3)),
            Err(Error::NonSquare { .. })
        ));
    }

    #[test]
    fn index_set_rejects_duplicates_and_sorts() {
        assert!(IndexSet::new(vec![3, 1, 3]).is_err());
        let set = IndexSet::new(vec![4, 0, 2]).unwrap();
        assert_eq!(set.as_slice(), &[0, 2, 4]);
        assert!(IndexSet::checked(vec![5], 5).is_err());
    }
}
