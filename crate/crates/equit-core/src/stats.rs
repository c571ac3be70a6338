//! Shared statistical primitives: datasets, discrete entropy, contingency-table
//! mutual information, Pearson correlation, and the Linfoot transform.
//!
//! Conventions used everywhere in this crate:
//!
//! * logarithms are base 2, so entropies and mutual informations are in bits;
//! * `0 * log2(0)` contributes `0` to every entropy sum;
//! * a correlation against a constant sequence is `0` by convention (the
//!   limit is undefined; `0` keeps downstream summaries well-defined).

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::float;

/// A finite sample of `(x, y)` pairs.
///
/// Construction validates the two invariants every algorithm in this crate
/// relies on: at least two points, and every coordinate finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    points: Vec<(f64, f64)>,
}

impl Dataset {
    /// Wraps a list of points, rejecting samples with fewer than two points
    /// or any non-finite coordinate.
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::TooFewPoints { needed: 2, got: points.len() });
        }
        if points.iter().any(|&(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Dataset { points })
    }

    /// Builds a dataset from parallel coordinate slices.
    pub fn from_columns(xs: &[f64], ys: &[f64]) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::LengthMismatch { x: xs.len(), y: ys.len() });
        }
        Dataset::new(xs.iter().copied().zip(ys.iter().copied()).collect())
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always `false`; present for API completeness.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The points in input order.
    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// Iterator over x coordinates.
    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|&(x, _)| x)
    }

    /// Iterator over y coordinates.
    pub fn ys(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|&(_, y)| y)
    }

    /// The same sample with the axes exchanged.
    pub fn swapped(&self) -> Dataset {
        Dataset { points: self.points.iter().map(|&(x, y)| (y, x)).collect() }
    }
}

/// A validated discrete probability distribution.
///
/// Weights must be non-negative and sum to 1 within `1e-9`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbDist {
    weights: Vec<f64>,
}

impl ProbDist {
    /// Validates and wraps a weight vector.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidDistribution("no weights"));
        }
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::NonFinite);
        }
        if weights.iter().any(|&w| w < 0.0) {
            return Err(Error::InvalidDistribution("negative weight"));
        }
        let sum: f64 = weights.iter().sum();
        if float::abs(sum - 1.0) > 1e-9 {
            return Err(Error::InvalidDistribution("weights do not sum to 1"));
        }
        Ok(ProbDist { weights })
    }

    /// The validated weights.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// A rectangular table of non-negative counts with a positive total.
#[derive(Debug, Clone, PartialEq)]
pub struct ContingencyTable {
    counts: Vec<Vec<u64>>,
    total: u64,
}

impl ContingencyTable {
    /// Validates and wraps a count matrix. Single-row or single-column
    /// tables are permitted (their mutual information is 0).
    pub fn new(counts: Vec<Vec<u64>>) -> Result<Self> {
        if counts.is_empty() || counts[0].is_empty() {
            return Err(Error::InvalidTable("empty table"));
        }
        let width = counts[0].len();
        if counts.iter().any(|row| row.len() != width) {
            return Err(Error::InvalidTable("ragged rows"));
        }
        let total: u64 = counts.iter().flatten().sum();
        if total == 0 {
            return Err(Error::InvalidTable("zero total"));
        }
        Ok(ContingencyTable { counts, total })
    }

    /// The count matrix (rows index the first variable).
    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    /// Sum of all cells.
    pub fn total(&self) -> u64 {
        self.total
    }
}

/// Entropy of a count vector given its total, in bits.
///
/// Computed as `log2(total) - (1/total) * sum c * log2(c)`, which keeps the
/// round-off of the `p log p` form away from the many tiny-probability cells
/// typical of fine grids.
pub(crate) fn entropy_from_counts<I: IntoIterator<Item = u64>>(counts: I, total: u64) -> f64 {
    debug_assert!(total > 0);
    let mut weighted = 0.0;
    for c in counts {
        if c > 0 {
            let c = c as f64;
            weighted += c * float::log2(c);
        }
    }
    let total = total as f64;
    (float::log2(total) - weighted / total).max(0.0)
}

/// Shannon entropy of a validated distribution, in bits.
///
/// Zero-weight cells contribute nothing.
///
/// # Examples
///
/// ```
/// use equit_core::stats::{entropy, ProbDist};
/// let uniform = ProbDist::new(vec![0.25; 4]).unwrap();
/// assert_eq!(entropy(&uniform), 2.0);
/// ```
pub fn entropy(dist: &ProbDist) -> f64 {
    let mut h = 0.0;
    for &p in dist.weights() {
        if p > 0.0 {
            h -= p * float::log2(p);
        }
    }
    h.max(0.0)
}

/// Mutual information of a contingency table, in bits:
/// `I = H(rows) + H(cols) - H(cells)`.
///
/// The result is clipped at zero; the exact value is non-negative and the
/// clip only removes round-off of order 1e-16.
///
/// # Examples
///
/// ```
/// use equit_core::stats::{mutual_information, ContingencyTable};
/// let diag = ContingencyTable::new(vec![vec![2, 0], vec![0, 2]]).unwrap();
/// assert_eq!(mutual_information(&diag), 1.0);
/// ```
pub fn mutual_information(table: &ContingencyTable) -> f64 {
    let total = table.total();
    let row_margins = table.counts().iter().map(|row| row.iter().sum::<u64>());
    let col_margins = (0..table.counts()[0].len())
        .map(|j| table.counts().iter().map(|row| row[j]).sum::<u64>());
    let h_rows = entropy_from_counts(row_margins, total);
    let h_cols = entropy_from_counts(col_margins, total);
    let h_joint = entropy_from_counts(table.counts().iter().flatten().copied(), total);
    (h_rows + h_cols - h_joint).max(0.0)
}

/// Squared Pearson correlation of a paired sample.
///
/// Returns `0` when either coordinate is constant.
pub fn pearson_squared(data: &Dataset) -> f64 {
    let pairs: Vec<(f64, f64)> = data.points().to_vec();
    pearson_squared_of(&pairs)
}

/// Squared Pearson correlation of two parallel sequences (see
/// [`pearson_squared`]); used internally where no [`Dataset`] exists yet.
pub(crate) fn pearson_squared_of(pairs: &[(f64, f64)]) -> f64 {
    let n = pairs.len() as f64;
    let mean_x = pairs.iter().map(|&(x, _)| x).sum::<f64>() / n;
    let mean_y = pairs.iter().map(|&(_, y)| y).sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for &(x, y) in pairs {
        let dx = x - mean_x;
        let dy = y - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return 0.0;
    }
    ((sxy * sxy) / (sxx * syy)).clamp(0.0, 1.0)
}

/// Coefficient of determination of a sample against a reference function:
/// the squared Pearson correlation between `f(clamp(x_i))` and `y_i`.
///
/// `x` values are clamped into `domain` before evaluation, so noise that
/// pushes a point past the domain edge is scored against the nearest valid
/// function value. A constant predictor (for example the "random" null
/// relationship) scores `0` by convention.
pub fn r_squared_vs_function<F: Fn(f64) -> f64>(
    data: &Dataset,
    f: F,
    domain: (f64, f64),
) -> Result<f64> {
    let (lo, hi) = domain;
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(Error::InvalidParameter("empty or non-finite domain"));
    }
    let pairs: Vec<(f64, f64)> = data
        .points()
        .iter()
        .map(|&(x, y)| (f(x.clamp(lo, hi)), y))
        .collect();
    if pairs.iter().any(|&(p, _)| !p.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(pearson_squared_of(&pairs))
}

/// Linfoot's informational coefficient of correlation, squared:
/// `1 - 2^(-2 I)` for a mutual information `I >= 0` in bits.
///
/// Maps `[0, inf)` onto `[0, 1)` and inverts the Gaussian relation
/// `I = -1/2 log2(1 - rho^2)`, so a Gaussian with correlation `rho` comes
/// back out at exactly `rho^2`.
pub fn linfoot_squared(mi_bits: f64) -> Result<f64> {
    if !mi_bits.is_finite() || mi_bits < 0.0 {
        return Err(Error::InvalidParameter("mutual information must be finite and >= 0"));
    }
    Ok((1.0 - float::exp2(-2.0 * mi_bits)).clamp(0.0, 1.0))
}

/// Binary entropy `H(a) = -a log2 a - (1-a) log2 (1-a)` for `a` in `[0, 1]`,
/// with `H(0) = H(1) = 0`.
pub fn binary_entropy(a: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::InvalidParameter("binary entropy argument must lie in [0, 1]"));
    }
    if a == 0.0 || a == 1.0 {
        return Ok(0.0);
    }
    Ok(-a * float::log2(a) - (1.0 - a) * float::log2(1.0 - a))
}
