//! Sample distance correlation.

use alloc::vec;

use crate::float;
use crate::stats::Dataset;

/// The sample distance correlation of a dataset, in `[0, 1]`.
///
/// Defined through the double-centered pairwise distance matrices of each
/// coordinate: `dCov^2` is the mean elementwise product of the centered
/// matrices, and the correlation is
/// `sqrt(dCov^2 / sqrt(dVar_x^2 * dVar_y^2))`, or 0 when either distance
/// variance vanishes (a constant coordinate). The same quantity is computed
/// here without materializing the matrices, via
///
/// ```text
/// dCov^2 = mean(a*b) + mean(a)*mean(b) - 2 * mean_i(rowmean_a(i) * rowmean_b(i))
/// ```
///
/// which needs one O(n^2) pass and O(n) memory. The value is 1 exactly for
/// non-degenerate affine relationships and is invariant under separate
/// affine maps of either coordinate.
pub fn distance_correlation(data: &Dataset) -> f64 {
    let n = data.len();
    let nf = n as f64;
    let pts = data.points();

    let mut sum_ab = 0.0f64;
    let mut sum_aa = 0.0f64;
    let mut sum_bb = 0.0f64;
    let mut row_a = vec![0.0f64; n];
    let mut row_b = vec![0.0f64; n];
    for i in 0..n {
        let (xi, yi) = pts[i];
        for &(xj, yj) in pts {
            let a = float::abs(xj - xi);
            let b = float::abs(yj - yi);
            sum_ab += a * b;
            sum_aa += a * a;
            sum_bb += b * b;
            row_a[i] += a;
            row_b[i] += b;
        }
    }

    let n2 = nf * nf;
    let mean_a = row_a.iter().sum::<f64>() / n2;
    let mean_b = row_b.iter().sum::<f64>() / n2;
    let cross = |s1: f64, m1: f64, m2: f64, r1: &[f64], r2: &[f64]| {
        let s3 = r1.iter().zip(r2).map(|(&p, &q)| p * q).sum::<f64>() / (n2 * nf);
        s1 / n2 + m1 * m2 - 2.0 * s3
    };
    let dcov2 = cross(sum_ab, mean_a, mean_b, &row_a, &row_b);
    let dvar_x2 = cross(sum_aa, mean_a, mean_a, &row_a, &row_a);
    let dvar_y2 = cross(sum_bb, mean_b, mean_b, &row_b, &row_b);

    if dvar_x2 <= 0.0 || dvar_y2 <= 0.0 {
        return 0.0;
    }
    let denom = float::sqrt(dvar_x2 * dvar_y2);
    float::sqrt((dcov2 / denom).max(0.0)).clamp(0.0, 1.0)
}
