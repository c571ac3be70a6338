//! Dynamic-programming column optimizer.
//!
//! Given a fixed row partition `Q` of the y-axis and a "master" partition of
//! the x-axis whose boundaries are the only admissible cut positions, the
//! optimizer finds, for every column count `l`, the column partition drawn
//! from the master boundaries that maximizes the mutual information of the
//! resulting grid. Maximizing I = H(Q) - H(Q | columns) at fixed `Q` is the
//! same as minimizing the weighted conditional entropy, which decomposes
//! over a prefix of master bins ("superclumps"):
//!
//! ```text
//! F(t, 1) = H(Q over the first cum(t) points)
//! F(t, l) = min over s in [l-1, t-1] of
//!             cum(s)/cum(t) * F(s, l-1)
//!           + (cum(t) - cum(s))/cum(t) * H(Q over superclumps s+1 ..= t)
//! I*[l]   = H(Q over all n) - F(k, l)
//! ```
//!
//! where `cum(t)` counts the points in the first `t` superclumps. The search
//! is exact over this restricted family (every split of the master bins into
//! `l` non-empty runs is considered) and costs `O(k^2 * max_cols)` per row
//! partition for `k` master bins.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::float;
use crate::mic::partition::AxisPartition;
use crate::stats::Dataset;

/// A column-optimization instance in rank space.
pub(crate) struct ColumnProblem<'a> {
    /// Row label of each point, listed in column-axis sorted order.
    pub rows_in_axis_order: &'a [u32],
    /// Number of row bins.
    pub row_count: usize,
    /// Cumulative point counts at the master-partition bin edges.
    pub master_bounds: &'a [usize],
}

#[inline]
fn h_from(w: u64, s: f64) -> f64 {
    if w == 0 {
        return 0.0;
    }
    let wf = w as f64;
    (float::log2(wf) - s / wf).max(0.0)
}

/// Core solver; returns `I*[l]` for `l = 2 ..= max_cols` (bits).
///
/// With fewer than 2 master bins no vertical cut exists and every value is 0.
/// For `l` beyond the number of master bins the value saturates at the
/// all-bins partition (extra columns would have to be empty and empty
/// columns never change the information).
pub(crate) fn column_dp(p: &ColumnProblem<'_>, max_cols: usize) -> Vec<f64> {
    debug_assert!(max_cols >= 2);
    let out_len = max_cols - 1;
    let k = p.master_bounds.len();
    if k < 2 {
        return vec![0.0; out_len];
    }
    let n = *p.master_bounds.last().unwrap();
    debug_assert_eq!(n, p.rows_in_axis_order.len());
    let r = p.row_count;

    // c * log2(c) lookup; counts never exceed n.
    let xl2: Vec<f64> = (0..=n)
        .map(|c| if c == 0 { 0.0 } else { c as f64 * float::log2(c as f64) })
        .collect();

    // Sparse (row, count) pairs per superclump, in canonical row order so
    // that entropy sums accumulate in a fixed order.
    let mut sc_rows: Vec<Vec<(u32, u32)>> = Vec::with_capacity(k);
    {
        let mut scratch = vec![0u32; r];
        let mut touched: Vec<u32> = Vec::new();
        let mut start = 0usize;
        for &end in p.master_bounds {
            for &row in &p.rows_in_axis_order[start..end] {
                if scratch[row as usize] == 0 {
                    touched.push(row);
                }
                scratch[row as usize] += 1;
            }
            touched.sort_unstable();
            let counts = touched.iter().map(|&row| (row, scratch[row as usize])).collect();
            for &row in &touched {
                scratch[row as usize] = 0;
            }
            touched.clear();
            sc_rows.push(counts);
            start = end;
        }
    }

    // cum[t] = number of points in superclumps 1..=t.
    let mut cum = Vec::with_capacity(k + 1);
    cum.push(0usize);
    cum.extend_from_slice(p.master_bounds);

    let lmax = max_cols.min(k);
    // f[l][t] = minimal weighted conditional entropy of the first t
    // superclumps split into l columns.
    let mut f: Vec<Vec<f64>> = vec![vec![f64::INFINITY; k + 1]; lmax + 1];

    // Base row l = 1: prefix entropies.
    {
        let mut counts = vec![0u64; r];
        let mut w = 0u64;
        let mut s = 0.0f64;
        for t in 1..=k {
            for &(row, c) in &sc_rows[t - 1] {
                let old = counts[row as usize];
                let new = old + c as u64;
                counts[row as usize] = new;
                s += xl2[new as usize] - xl2[old as usize];
                w += c as u64;
            }
            f[1][t] = h_from(w, s);
        }
    }
    let h_all = f[1][k];

    // hrange[s] = H(Q over superclumps s+1..=t) for the t of the outer loop,
    // built incrementally by sweeping s from t-1 down to 0.
    let mut hrange = vec![0.0f64; k];
    let mut counts = vec![0u64; r];
    for t in 2..=k {
        for c in counts.iter_mut() {
            *c = 0;
        }
        let mut w = 0u64;
        let mut s_acc = 0.0f64;
        for j in (1..=t).rev() {
            for &(row, c) in &sc_rows[j - 1] {
                let old = counts[row as usize];
                let new = old + c as u64;
                counts[row as usize] = new;
                s_acc += xl2[new as usize] - xl2[old as usize];
                w += c as u64;
            }
            hrange[j - 1] = h_from(w, s_acc);
        }
        let cum_t = cum[t] as f64;
        for l in 2..=lmax.min(t) {
            let (lo, hi) = f.split_at_mut(l);
            let fprev = &lo[l - 1];
            let mut best = f64::INFINITY;
            for s_idx in (l - 1)..t {
                let cum_s = cum[s_idx] as f64;
                let cand = (cum_s * fprev[s_idx] + (cum_t - cum_s) * hrange[s_idx]) / cum_t;
                if cand < best {
                    best = cand;
                }
            }
            hi[0][t] = best;
        }
    }

    let mut out = Vec::with_capacity(out_len);
    for l in 2..=max_cols {
        let li = l.min(lmax);
        out.push((h_all - f[li][k]).max(0.0));
    }
    out
}

/// Optimal column placements for a fixed row partition.
///
/// For each column count `l` in `2 ..= max_cols`, finds the partition of the
/// x-axis into `l` non-empty column groups -- cut only at boundaries of
/// `master` -- that maximizes the mutual information (bits) of the grid
/// formed with `rows`, and returns those maxima as a vector indexed by
/// `l - 2`. The search is exhaustive over the restricted family, so the
/// result is exact for it.
///
/// `rows` partitions the y-ranks and `master` the x-ranks of `data`; both
/// must cover exactly `data.len()` points, and neither may separate tied
/// coordinate values (a cut between equal values is not realizable by a
/// vertical or horizontal line). If `master` has a single bin there is
/// nothing to cut and every value is 0. Values for `l` beyond the number of
/// master bins saturate at the all-bins optimum.
pub fn optimize_columns(
    data: &Dataset,
    rows: &AxisPartition,
    max_cols: usize,
    master: &AxisPartition,
) -> Result<Vec<f64>> {
    let n = data.len();
    if max_cols < 2 {
        return Err(Error::InvalidParameter("max_cols must be >= 2"));
    }
    if rows.total() != n {
        return Err(Error::LengthMismatch { x: rows.total(), y: n });
    }
    if master.total() != n {
        return Err(Error::LengthMismatch { x: master.total(), y: n });
    }

    let order_x = super::sort_indices(data.points(), true);
    let order_y = super::sort_indices(data.points(), false);

    // Reject partitions that separate tied coordinates.
    let splits_ties = |order: &[u32], part: &AxisPartition, coord_of: fn(&(f64, f64)) -> f64| {
        part.boundaries().iter().take(part.len() - 1).any(|&b| {
            let lo = coord_of(&data.points()[order[b - 1] as usize]);
            let hi = coord_of(&data.points()[order[b] as usize]);
            lo == hi
        })
    };
    if splits_ties(&order_x, master, |p| p.0) {
        return Err(Error::InvalidParameter("master partition splits tied x values"));
    }
    if splits_ties(&order_y, rows, |p| p.1) {
        return Err(Error::InvalidParameter("row partition splits tied y values"));
    }

    let mut y_rank = vec![0u32; n];
    for (r, &i) in order_y.iter().enumerate() {
        y_rank[i as usize] = r as u32;
    }
    let rows_in_x_order: Vec<u32> = order_x
        .iter()
        .map(|&i| rows.bin_of_rank(y_rank[i as usize] as usize) as u32)
        .collect();

    let problem = ColumnProblem {
        rows_in_axis_order: &rows_in_x_order,
        row_count: rows.len(),
        master_bounds: master.boundaries(),
    };
    Ok(column_dp(&problem, max_cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mic::partition::{clump_partition, equipartition_axis};
    use alloc::vec;

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_unstable_by(f64::total_cmp);
        v
    }

    fn setup(points: Vec<(f64, f64)>, y_bins: usize) -> (Dataset, AxisPartition, AxisPartition) {
        let data = Dataset::new(points).unwrap();
        let ys = sorted(data.ys().collect());
        let xs = sorted(data.xs().collect());
        let rows = equipartition_axis(&ys, y_bins).unwrap();
        let master = clump_partition(&xs).unwrap();
        (data, rows, master)
    }

    #[test]
    fn perfectly_separable_grid_reaches_one_bit() {
        let (data, rows, master) =
            setup(vec![(0.0, 0.0), (0.0, 0.1), (1.0, 1.0), (1.0, 1.1)], 2);
        let info = optimize_columns(&data, &rows, 2, &master).unwrap();
        assert!((info[0] - 1.0).abs() < 1e-12, "I*[2] = {}", info[0]);
    }

    #[test]
    fn independent_rows_carry_no_information() {
        // Both rows appear equally inside every x clump, so each admissible
        // column split leaves the row distribution unchanged.
        let (data, rows, master) =
            setup(vec![(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)], 2);
        let info = optimize_columns(&data, &rows, 3, &master).unwrap();
        assert_eq!(info, vec![0.0, 0.0]);
    }

    #[test]
    fn alternating_rows_match_the_hand_computed_optimum() {
        // y alternates 0,1,0,1 along x. The balanced middle split carries
        // nothing, but isolating one endpoint gives a pure first column:
        // I = H(1/2) + H(1/4) - H(1/4, 1/4, 1/2) = 3/4 log2(4/3).
        let (data, rows, master) =
            setup(vec![(0.0, 0.0), (1.0, 1.0), (2.0, 0.0), (3.0, 1.0)], 2);
        let info = optimize_columns(&data, &rows, 2, &master).unwrap();
        let expect = 0.75 * (4.0f64 / 3.0).log2();
        assert!((info[0] - expect).abs() < 1e-12, "I*[2] = {}", info[0]);
    }

    #[test]
    fn single_clump_master_yields_zeros() {
        let data =
            Dataset::new(vec![(5.0, 0.0), (5.0, 1.0), (5.0, 2.0), (5.0, 3.0)]).unwrap();
        let ys = sorted(data.ys().collect());
        let rows = equipartition_axis(&ys, 2).unwrap();
        let master = clump_partition(&[5.0, 5.0, 5.0, 5.0]).unwrap();
        let info = optimize_columns(&data, &rows, 4, &master).unwrap();
        assert_eq!(info, vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn values_saturate_beyond_master_size() {
        let (data, rows, master) = setup(
            vec![(0.0, 0.3), (1.0, 0.9), (2.0, 0.1), (3.0, 0.8), (4.0, 0.2)],
            2,
        );
        let info = optimize_columns(&data, &rows, 8, &master).unwrap();
        // master has 5 bins; l = 6, 7, 8 saturate at the l = 5 value.
        assert_eq!(info[4], info[3]);
        assert_eq!(info[5], info[3]);
        assert_eq!(info[6], info[3]);
    }

    #[test]
    fn values_are_monotone_in_column_count() {
        let mut rng = crate::rng::Rng::new(99);
        for _ in 0..50 {
            let pts: Vec<(f64, f64)> =
                (0..20).map(|_| (rng.next_f64(), rng.next_f64())).collect();
            let (data, rows, master) = setup(pts, 3);
            let info = optimize_columns(&data, &rows, 6, &master).unwrap();
            for w in info.windows(2) {
                assert!(w[1] >= w[0] - 1e-12, "refinement decreased information: {info:?}");
            }
        }
    }

    #[test]
    fn rejects_partitions_that_split_ties() {
        let data =
            Dataset::new(vec![(0.0, 0.0), (0.0, 1.0), (1.0, 2.0), (2.0, 3.0)]).unwrap();
        // Master boundary after rank 1 splits the two x = 0 points.
        let master = AxisPartition::from_boundaries(vec![1, 4]).unwrap();
        let ys = sorted(data.ys().collect());
        let rows = equipartition_axis(&ys, 2).unwrap();
        assert!(optimize_columns(&data, &rows, 2, &master).is_err());
    }

    #[test]
    fn rejects_mismatched_sizes() {
        let (data, rows, master) =
            setup(vec![(0.0, 0.0), (1.0, 1.0), (2.0, 0.5), (3.0, 0.7)], 2);
        assert!(optimize_columns(&data, &rows, 1, &master).is_err());
        let short = AxisPartition::from_boundaries(vec![2]).unwrap();
        assert!(optimize_columns(&data, &short, 2, &master).is_err());
        assert!(optimize_columns(&data, &rows, 2, &short).is_err());
    }
}
