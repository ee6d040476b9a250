//! Synthetic ghost-imaging pipeline: non-negative pattern lifting, bucket
//! detection, correlation-based baseline reconstruction, image quality
//! metrics, and binary PGM (P5) file I/O.
//!
//! The pipeline vectorizes a small two-valued object, samples it through a
//! lifted random pattern matrix with a single-element (bucket) detector,
//! and reconstructs either by fluctuation correlation or by the sparse
//! solvers in [`crate::recovery`].

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use std::io::Write;
use std::path::Path;

/// Grayscale object with nonnegative finite pixels, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectImage {
    height: usize,
    width: usize,
    pixels: Vec<f64>,
}

impl ObjectImage {
    pub fn new(height: usize, width: usize, pixels: Vec<f64>) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::EmptyMatrix {
                rows: height,
                cols: width,
            });
        }
        if pixels.len() != height * width {
            return Err(Error::ShapeMismatch {
                rows: height,
                cols: width,
                len: pixels.len(),
                needed: height * width,
            });
        }
        for (pos, &p) in pixels.iter().enumerate() {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::Domain(format!(
                    "pixel ({},{}) must be a nonnegative finite real, got {p}",
                    pos / width,
                    pos % width
                )));
            }
        }
        Ok(Self {
            height,
            width,
            pixels,
        })
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    /// Row-major vectorization (the signal the pipeline recovers).
    pub fn to_vector(&self) -> Vec<f64> {
        self.pixels.clone()
    }

    /// Number of nonzero pixels (sparsity of the vectorized object).
    pub fn nonzero_count(&self) -> usize {
        self.pixels.iter().filter(|&&p| p != 0.0).count()
    }
}

/// A pattern matrix lifted to nonnegative entries by a constant offset.
#[derive(Debug, Clone)]
pub struct LiftedSystem {
    /// The lifted matrix `psi + c0`, entrywise nonnegative.
    pub psi0: DenseMatrix,
    pub c0: f64,
    /// The original (unlifted) matrix.
    pub base: DenseMatrix,
}

/// Adds a constant to every pattern entry so the matrix becomes physically
/// realizable (nonnegative light intensity).
///
/// With `c0 = None` the tightest lift is used: `c0 = -min entry`. An
/// explicit `c0` must satisfy `c0 >= -min entry`.
pub fn lift_nonnegative(psi: &DenseMatrix, c0: Option<f64>) -> Result<LiftedSystem> {
    let mut min_entry = f64::INFINITY;
    let mut min_pos = (0, 0);
    for r in 0..psi.rows() {
        for c in 0..psi.cols() {
            let v = psi.get(r, c);
            if v < min_entry {
                min_entry = v;
                min_pos = (r, c);
            }
        }
    }
    let c0 = match c0 {
        Some(given) => {
            if given < -min_entry {
                return Err(Error::LiftTooSmall {
                    c0: given,
                    row: min_pos.0,
                    col: min_pos.1,
                    value: min_entry,
                });
            }
            given
        }
        None => -min_entry,
    };
    let mut psi0 = DenseMatrix::zeros(psi.rows(), psi.cols());
    for r in 0..psi.rows() {
        for c in 0..psi.cols() {
            psi0.set(r, c, psi.get(r, c) + c0);
        }
    }
    Ok(LiftedSystem {
        psi0,
        c0,
        base: psi.clone(),
    })
}

/// Decomposes a pattern matrix into a difference of nonnegative matrices:
/// `psi = plus - minus` with `plus = max(psi, 0)` and `minus = max(-psi, 0)`.
/// Bucket samples through the two parts recombine as
/// `(plus x) - (minus x) = psi x`, so the reconstructor can see the
/// unlifted matrix at the cost of doubling the samples.
pub fn split_nonnegative(psi: &DenseMatrix) -> (DenseMatrix, DenseMatrix) {
    let mut plus = DenseMatrix::zeros(psi.rows(), psi.cols());
    let mut minus = DenseMatrix::zeros(psi.rows(), psi.cols());
    for r in 0..psi.rows() {
        for c in 0..psi.cols() {
            let v = psi.get(r, c);
            if v > 0.0 {
                plus.set(r, c, v);
            } else if v < 0.0 {
                minus.set(r, c, -v);
            }
        }
    }
    (plus, minus)
}

/// Bucket-detector sampling: `y0 = psi0 x`, valid only for nonnegative
/// pattern matrices (light intensities).
pub fn bucket_sample(psi0: &DenseMatrix, x: &[f64]) -> Result<Vec<f64>> {
    for r in 0..psi0.rows() {
        for c in 0..psi0.cols() {
            let v = psi0.get(r, c);
            if v < 0.0 {
                return Err(Error::NegativeEntry {
                    row: r,
                    col: c,
                    value: v,
                });
            }
        }
    }
    if x.len() != psi0.cols() {
        return Err(Error::DimensionMismatch {
            context: "bucket sampling",
            expected: format!("length {}", psi0.cols()),
            found: format!("length {}", x.len()),
        });
    }
    Ok(psi0.matvec(x))
}

/// Correlation reconstruction from intensity fluctuations:
/// `x_hat = (psi0 - <psi0>)^T (y0 - <y0>)`, where `<y0>` is the scalar
/// sample mean and `<psi0>` replaces each column by its column mean.
pub fn gi_correlate(psi0: &DenseMatrix, y0: &[f64]) -> Result<Vec<f64>> {
    let m = psi0.rows();
    if m < 2 {
        return Err(Error::DegenerateStatistics { need: 2, have: m });
    }
    if y0.len() != m {
        return Err(Error::DimensionMismatch {
            context: "correlation reconstruction",
            expected: format!("length {m}"),
            found: format!("length {}", y0.len()),
        });
    }
    let y_mean = y0.iter().sum::<f64>() / m as f64;
    let n = psi0.cols();
    let mut column_means = vec![0.0; n];
    for r in 0..m {
        for (c, mean) in column_means.iter_mut().enumerate() {
            *mean += psi0.get(r, c);
        }
    }
    for mean in column_means.iter_mut() {
        *mean /= m as f64;
    }
    let mut estimate = vec![0.0; n];
    for r in 0..m {
        let dy = y0[r] - y_mean;
        for (c, out) in estimate.iter_mut().enumerate() {
            *out += (psi0.get(r, c) - column_means[c]) * dy;
        }
    }
    Ok(estimate)
}

/// Mean squared error `(1 / (h w)) sum (a - b)^2`.
pub fn mse(a: &ObjectImage, b: &ObjectImage) -> Result<f64> {
    if a.height != b.height || a.width != b.width {
        return Err(Error::DimensionMismatch {
            context: "image comparison",
            expected: format!("{}x{}", a.height, a.width),
            found: format!("{}x{}", b.height, b.width),
        });
    }
    let sum: f64 = a
        .pixels
        .iter()
        .zip(&b.pixels)
        .map(|(x, y)| (x - y) * (x - y))
        .sum();
    Ok(sum / (a.height * a.width) as f64)
}

/// Peak signal-to-noise ratio against the 255 peak, or a distinguished
/// marker for identical images (never infinite arithmetic).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Psnr {
    Identical,
    Decibels(f64),
}

impl Psnr {
    /// Decibel value with identical images mapped to `None`.
    pub fn decibels(&self) -> Option<f64> {
        match self {
            Psnr::Identical => None,
            Psnr::Decibels(db) => Some(*db),
        }
    }

    /// Orders PSNR values with `Identical` above any finite reading.
    pub fn at_least(&self, other: &Psnr) -> bool {
        match (self, other) {
            (Psnr::Identical, _) => true,
            (Psnr::Decibels(_), Psnr::Identical) => false,
            (Psnr::Decibels(a), Psnr::Decibels(b)) => a >= b,
        }
    }
}

impl std::fmt::Display for Psnr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Psnr::Identical => write!(f, "identical"),
            Psnr::Decibels(db) => write!(f, "{}", crate::io::fmt_sig9(*db)),
        }
    }
}

/// `20 log10(255 / sqrt(MSE))` in dB; zero MSE returns [`Psnr::Identical`].
pub fn psnr(a: &ObjectImage, b: &ObjectImage) -> Result<Psnr> {
    let error = mse(a, b)?;
    if error == 0.0 {
        Ok(Psnr::Identical)
    } else {
        Ok(Psnr::Decibels(20.0 * (255.0 / error.sqrt()).log10()))
    }
}

/// Min-max rescaling to `[0, 255]`; constant inputs map to all zeros.
/// Applied identically to every reconstruction before PSNR.
pub fn rescale_to_255(values: &[f64]) -> Vec<f64> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let range = hi - lo;
    if !(range > 0.0) {
        return vec![0.0; values.len()];
    }
    values.iter().map(|&v| (v - lo) / range * 255.0).collect()
}

/// Reads a binary PGM (P5) file with maxval 255.
pub fn load_pgm(path: &Path) -> Result<ObjectImage> {
    let bytes = std::fs::read(path)?;
    parse_pgm(&bytes)
}

pub fn parse_pgm(bytes: &[u8]) -> Result<ObjectImage> {
    if bytes.len() < 2 || &bytes[0..2] != b"P5" {
        let found = String::from_utf8_lossy(&bytes[..bytes.len().min(2)]).to_string();
        return Err(Error::PgmParse {
            offset: 0,
            detail: format!("unsupported format marker {found:?}, expected \"P5\""),
        });
    }
    let mut cursor = 2usize;
    let width = read_pgm_number(bytes, &mut cursor)?;
    let height = read_pgm_number(bytes, &mut cursor)?;
    let maxval = read_pgm_number(bytes, &mut cursor)?;
    if maxval != 255 {
        return Err(Error::PgmParse {
            offset: cursor,
            detail: format!("maxval must be 255, got {maxval}"),
        });
    }
    // Exactly one whitespace byte separates the header from the raster.
    match bytes.get(cursor) {
        Some(b) if b.is_ascii_whitespace() => cursor += 1,
        _ => {
            return Err(Error::PgmParse {
                offset: cursor,
                detail: "expected a single whitespace byte before the raster".to_string(),
            })
        }
    }
    if width == 0 || height == 0 {
        return Err(Error::PgmParse {
            offset: cursor,
            detail: format!("dimensions must be positive, got {width}x{height}"),
        });
    }
    let needed = width * height;
    let payload = &bytes[cursor..];
    if payload.len() < needed {
        return Err(Error::PgmParse {
            offset: bytes.len(),
            detail: format!(
                "truncated raster: expected {needed} bytes, found {}",
                payload.len()
            ),
        });
    }
    let pixels: Vec<f64> = payload[..needed].iter().map(|&b| f64::from(b)).collect();
    ObjectImage::new(height, width, pixels)
}

fn read_pgm_number(bytes: &[u8], cursor: &mut usize) -> Result<usize> {
    // Skip whitespace and '#' comments.
    loop {
        match bytes.get(*cursor) {
            Some(b) if b.is_ascii_whitespace() => *cursor += 1,
            Some(b'#') => {
                while let Some(&b) = bytes.get(*cursor) {
                    *cursor += 1;
                    if b == b'\n' {
                        break;
                    }
                }
            }
            _ => break,
        }
    }
    let start = *cursor;
    while let Some(b) = bytes.get(*cursor) {
        if b.is_ascii_digit() {
            *cursor += 1;
        } else {
            break;
        }
    }
    if *cursor == start {
        return Err(Error::PgmParse {
            offset: start,
            detail: "expected a decimal number".to_string(),
        });
    }
    std::str::from_utf8(&bytes[start..*cursor])
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or(Error::PgmParse {
            offset: start,
            detail: "number out of range".to_string(),
        })
}

/// Writes a binary PGM (P5) file with maxval 255. Pixels are rounded and
/// clamped to `[0, 255]`; the round trip is lossless for integer-valued
/// images in that range.
pub fn save_pgm(image: &ObjectImage, path: &Path) -> Result<()> {
    let mut file = std::fs::File::create(path)?;
    file.write_all(&encode_pgm(image))?;
    Ok(())
}

pub fn encode_pgm(image: &ObjectImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", image.width, image.height).into_bytes();
    out.extend(
        image
            .pixels
            .iter()
            .map(|&p| p.round().clamp(0.0, 255.0) as u8),
    );
    out
}

/// Built-in 28x28 two-valued test objects (pixels in {0, 255}), each with
/// at most 40 lit pixels. `twolobe` is a pair of opposed lobes.
pub fn synthetic_object(name: &str) -> Option<ObjectImage> {
    let art: &[&str] = match name {
        "digit3" => &DIGIT3,
        "digit7" => &DIGIT7,
        "twolobe" => &TWOLOBE,
        _ => return None,
    };
    Some(from_art(art))
}

pub const SYNTHETIC_OBJECT_NAMES: [&str; 3] = ["digit3", "digit7", "twolobe"];

fn from_art(rows: &[&str]) -> ObjectImage {
    let height = rows.len();
    let width = rows[0].len();
    let mut pixels = Vec::with_capacity(height * width);
    for row in rows {
        debug_assert_eq!(row.len(), width);
        for ch in row.chars() {
            pixels.push(if ch == '#' { 255.0 } else { 0.0 });
        }
    }
    ObjectImage::new(height, width, pixels).expect("static art is well-formed")
}

#[rustfmt::skip]
const DIGIT3: [&str; 28] = [
    "                            ",
    "                            ",
    "                            ",
    "                            ",
    "                            ",
    "         ########           ",
    "                #           ",
    "                #           ",
    "                #           ",
    "                #           ",
    "                            ",
    "                            ",
    "          ######            ",
    "                #           ",
    "                #           ",
    "                #           ",
    "                #           ",
    "                            ",
    "                            ",
    "         #######            ",
    "                            ",
    "                            ",
    "                            ",
    "                            ",
    "                            ",
    "                            ",
    "                            ",
    "                            ",
];

#[rustfmt::skip]
const DIGIT7: [&str; 28] = [
    "                            ",
    "                            ",
    "                            ",
    "                            ",
    "                            ",
    "        ##########          ",
    "                 #          ",
    "                #           ",
    "               #            ",
    "               #            ",
    "              #             ",
    "              #             ",
    "             #              ",
    "             #              ",
    "            #               ",
    "            #               ",
    "           #                ",
    "           #                ",
    "          #                 ",
    "          #                 ",
    "                            ",
    "                            ",
    "                            ",
    "                            ",
    "                            ",
    "                            ",
    "                            ",
    "                            ",
];

#[rustfmt::skip]
const TWOLOBE: [&str; 28] = [
    "                            ",
    "                            ",
    "                            ",
    "                            ",
    "                            ",
    "                            ",
    "         ####               ",
    "        ######              ",
    "        ######              ",
    "         ####               ",
    "                            ",
    "                            ",
    "                            ",
    "                            ",
    "                            ",
    "                            ",
    "                            ",
    "               ####         ",
    "              ######        ",
    "              ######        ",
    "               ####         ",
    "                            ",
    "                            ",
    "                            ",
    "                            ",
    "                            ",
    "                            ",
    "                            ",
];

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[f64]]) -> DenseMatrix {
        DenseMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn lift_nonnegative_defaults_to_min_entry() {
        let psi = mat(&[&[-1.0, 2.0]]);
        let lifted = lift_nonnegative(&psi, None).unwrap();
        assert_eq!(lifted.c0, 1.0);
        assert_eq!(lifted.psi0.entries(), &[0.0, 3.0]);
    }

    #[test]
    fn lift_with_zero_offset_keeps_nonnegative_matrix() {
        let psi = mat(&[&[0.5, 2.0], &[0.0, 1.0]]);
        let lifted = lift_nonnegative(&psi, Some(0.0)).unwrap();
        assert_eq!(lifted.psi0, psi);
    }

    #[test]
    fn lift_rejects_too_small_offset() {
        let psi = mat(&[&[-1.5, 2.0]]);
        match lift_nonnegative(&psi, Some(1.0)).unwrap_err() {
            Error::LiftTooSmall { row, col, value, .. } => {
                assert_eq!((row, col), (0, 0));
                assert_eq!(value, -1.5);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn lift_undoes_exactly() {
        let psi = mat(&[&[-0.3, 0.7, -1.1], &[0.2, -0.4, 0.9]]);
        let lifted = lift_nonnegative(&psi, None).unwrap();
        for r in 0..psi.rows() {
            for c in 0..psi.cols() {
                assert!(lifted.psi0.get(r, c) >= 0.0);
                assert!((lifted.psi0.get(r, c) - lifted.c0 - psi.get(r, c)).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn split_nonnegative_worked_example() {
        let psi = mat(&[&[1.0, 1.0, 1.0], &[-1.0, -1.0, -1.0]]);
        let (plus, minus) = split_nonnegative(&psi);
        assert_eq!(plus.entries(), &[1.0, 1.0, 1.0, 0.0, 0.0, 0.0]);
        assert_eq!(minus.entries(), &[0.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn split_of_nonnegative_matrix_has_zero_negative_part() {
        let psi = mat(&[&[1.0, 0.0], &[2.0, 3.0]]);
        let (plus, minus) = split_nonnegative(&psi);
        assert_eq!(plus, psi);
        assert!(minus.entries().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn split_recombines_linearly() {
        let psi = mat(&[&[-0.3, 0.7, -1.1], &[0.2, -0.4, 0.9]]);
        let (plus, minus) = split_nonnegative(&psi);
        let x = [0.5, -1.0, 2.0];
        let direct = psi.matvec(&x);
        let recombined: Vec<f64> = plus
            .matvec(&x)
            .iter()
            .zip(&minus.matvec(&x))
            .map(|(a, b)| a - b)
            .collect();
        for (a, b) in direct.iter().zip(&recombined) {
            assert!((a - b).abs() <= 1e-12);
        }
        // Disjoint supports: plus .* minus = 0 entrywise.
        for (p, m) in plus.entries().iter().zip(minus.entries()) {
            assert_eq!(p * m, 0.0);
        }
    }

    #[test]
    fn bucket_sample_examples() {
        let ones = mat(&[&[1.0, 1.0, 1.0]]);
        assert_eq!(bucket_sample(&ones, &[0.0, 0.0, 0.0]).unwrap(), vec![0.0]);
        assert_eq!(bucket_sample(&ones, &[1.0, 2.0, 3.0]).unwrap(), vec![6.0]);
        let psi0 = mat(&[&[0.0, 3.0]]);
        assert_eq!(bucket_sample(&psi0, &[5.0, 2.0]).unwrap(), vec![6.0]);
    }

    #[test]
    fn bucket_sample_rejects_negative_patterns() {
        let psi = mat(&[&[0.5, -0.1]]);
        assert!(matches!(
            bucket_sample(&psi, &[1.0, 1.0]),
            Err(Error::NegativeEntry { row: 0, col: 1, .. })
        ));
    }

    #[test]
    fn gi_correlate_hand_instance() {
        let psi0 = mat(&[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0], &[0.0, 0.0]]);
        let x = [2.0, 1.0];
        let y0 = bucket_sample(&psi0, &x).unwrap();
        assert_eq!(y0, vec![2.0, 1.0, 3.0, 0.0]);
        let estimate = gi_correlate(&psi0, &y0).unwrap();
        // Frozen by direct evaluation of the fluctuation formula.
        assert!((estimate[0] - 2.0).abs() < 1e-12);
        assert!((estimate[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gi_correlate_degenerate_cases() {
        let psi0 = mat(&[&[1.0, 0.5], &[0.0, 0.25], &[1.0, 0.75]]);
        // Constant samples carry no fluctuation.
        let estimate = gi_correlate(&psi0, &[4.0, 4.0, 4.0]).unwrap();
        assert!(estimate.iter().all(|&v| v.abs() < 1e-12));
        // Constant columns carry no fluctuation either.
        let flat = mat(&[&[1.0, 2.0], &[1.0, 2.0], &[1.0, 2.0]]);
        let estimate = gi_correlate(&flat, &[1.0, -2.0, 5.0]).unwrap();
        assert!(estimate.iter().all(|&v| v.abs() < 1e-12));
        // Too few samples for statistics.
        let single = mat(&[&[1.0, 2.0]]);
        assert!(matches!(
            gi_correlate(&single, &[1.0]),
            Err(Error::DegenerateStatistics { .. })
        ));
    }

    #[test]
    fn mse_and_psnr_examples() {
        let a = ObjectImage::new(2, 2, vec![255.0; 4]).unwrap();
        let b = ObjectImage::new(2, 2, vec![0.0; 4]).unwrap();
        assert_eq!(mse(&a, &a).unwrap(), 0.0);
        assert_eq!(mse(&a, &b).unwrap(), 65025.0);
        assert_eq!(psnr(&a, &b).unwrap(), Psnr::Decibels(0.0));
        assert_eq!(psnr(&a, &a).unwrap(), Psnr::Identical);

        let c = ObjectImage::new(2, 2, vec![1.0; 4]).unwrap();
        assert_eq!(mse(&b, &c).unwrap(), 1.0);
        match psnr(&b, &c).unwrap() {
            // Frozen oracle: 20 log10(255) = 48.1308036086791.
            Psnr::Decibels(db) => assert!((db - 48.1308036086791).abs() < 1e-10),
            other => panic!("unexpected {other:?}"),
        }
        let wide = ObjectImage::new(1, 4, vec![0.0; 4]).unwrap();
        assert!(mse(&a, &wide).is_err());
    }

    #[test]
    fn psnr_is_symmetric_and_permutation_invariant() {
        let a = ObjectImage::new(2, 3, vec![10.0, 40.0, 90.0, 0.0, 255.0, 30.0]).unwrap();
        let b = ObjectImage::new(2, 3, vec![12.0, 35.0, 95.0, 5.0, 250.0, 20.0]).unwrap();
        assert_eq!(psnr(&a, &b).unwrap(), psnr(&b, &a).unwrap());
        // Same permutation applied to both images leaves PSNR unchanged.
        let perm = [3, 0, 5, 1, 4, 2];
        let pa: Vec<f64> = perm.iter().map(|&i| a.pixels()[i]).collect();
        let pb: Vec<f64> = perm.iter().map(|&i| b.pixels()[i]).collect();
        let a2 = ObjectImage::new(2, 3, pa).unwrap();
        let b2 = ObjectImage::new(2, 3, pb).unwrap();
        assert_eq!(psnr(&a, &b).unwrap(), psnr(&a2, &b2).unwrap());
    }

    #[test]
    fn rescale_handles_constant_and_general_inputs() {
        assert_eq!(rescale_to_255(&[3.0, 3.0, 3.0]), vec![0.0, 0.0, 0.0]);
        let scaled = rescale_to_255(&[-1.0, 0.0, 1.0]);
        assert_eq!(scaled, vec![0.0, 127.5, 255.0]);
    }

    #[test]
    fn pgm_single_pixel_layout() {
        let image = ObjectImage::new(1, 1, vec![0.0]).unwrap();
        let bytes = encode_pgm(&image);
        assert_eq!(bytes, b"P5\n1 1\n255\n\x00");
        assert_eq!(bytes.len(), 12);
        let back = parse_pgm(&bytes).unwrap();
        assert_eq!(back, image);
    }

    #[test]
    fn pgm_round_trip_through_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("object.pgm");
        let image = synthetic_object("digit3").unwrap();
        save_pgm(&image, &path).unwrap();
        let back = load_pgm(&path).unwrap();
        assert_eq!(back, image);
    }

    #[test]
    fn pgm_rejects_wrong_magic() {
        let err = parse_pgm(b"P2\n1 1\n255\n0").unwrap_err();
        match err {
            Error::PgmParse { offset, detail } => {
                assert_eq!(offset, 0);
                assert!(detail.contains("P2"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn pgm_rejects_bad_maxval_and_truncation() {
        assert!(matches!(
            parse_pgm(b"P5\n1 1\n254\n\x00"),
            Err(Error::PgmParse { .. })
        ));
        match parse_pgm(b"P5\n2 2\n255\n\x00\x01") {
            Err(Error::PgmParse { offset, detail }) => {
                assert_eq!(offset, 13);
                assert!(detail.contains("truncated"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn synthetic_objects_are_two_valued_and_sparse() {
        for name in SYNTHETIC_OBJECT_NAMES {
            let object = synthetic_object(name).unwrap();
            assert_eq!(object.height(), 28);
            assert_eq!(object.width(), 28);
            assert!(object
                .pixels()
                .iter()
                .all(|&p| p == 0.0 || p == 255.0));
            let k = object.nonzero_count();
            assert!(k > 0 && k <= 40, "{name} has {k} lit pixels");
        }
        assert!(synthetic_object("unknown").is_none());
    }
}
