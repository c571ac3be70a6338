//! Orientation driver: per-resolution grid searches behind the
//! characteristic matrix.
//!
//! For each admissible row count the driver equipartitions the row axis,
//! restricts column cuts to superclump boundaries, and runs the column
//! optimizer; the resulting `(columns, rows, bits)` triples are merged over
//! both axis orientations by the caller. An exhaustive mode replaces the
//! heuristic row equipartition at 2 and 3 rows with a search over every
//! contiguous merge of a 20-bin row equipartition.

use alloc::vec;
use alloc::vec::Vec;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::float;
use crate::mic::dp::{column_dp, ColumnProblem};
use crate::mic::partition::greedy_group_merge;

/// Number of seed bins for the exhaustive low-row search.
pub(crate) const EXHAUSTIVE_SEED_BINS: usize = 20;
/// Row counts the exhaustive search takes over from the heuristic.
pub(crate) const EXHAUSTIVE_ROW_COUNTS: [usize; 2] = [2, 3];

/// One axis orientation of a dataset, reduced to rank space.
pub(crate) struct Orientation {
    n: usize,
    /// Sizes of maximal runs of equal column-axis values, in sorted order.
    clump_sizes: Vec<usize>,
    /// Sizes of maximal runs of equal row-axis values, in sorted order.
    row_tie_sizes: Vec<usize>,
    /// Row-axis rank of each point, listed in column-axis sorted order.
    row_rank_in_col_order: Vec<u32>,
}

fn run_lengths<F: Fn(u32) -> f64>(order: &[u32], coord: F) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut run = 0usize;
    let mut prev = f64::NAN;
    for &i in order {
        let v = coord(i);
        if run > 0 && v == prev {
            run += 1;
        } else {
            if run > 0 {
                sizes.push(run);
            }
            run = 1;
            prev = v;
        }
    }
    if run > 0 {
        sizes.push(run);
    }
    sizes
}

impl Orientation {
    /// Builds the orientation with columns along x when `cols_on_x`, or with
    /// the axes swapped otherwise.
    pub(crate) fn new(points: &[(f64, f64)], cols_on_x: bool) -> Self {
        let col_of = |i: u32| {
            let p = points[i as usize];
            if cols_on_x {
                p.0
            } else {
                p.1
            }
        };
        let row_of = |i: u32| {
            let p = points[i as usize];
            if cols_on_x {
                p.1
            } else {
                p.0
            }
        };
        let order_c = super::sort_indices(points, cols_on_x);
        let order_r = super::sort_indices(points, !cols_on_x);

        let clump_sizes = run_lengths(&order_c, col_of);
        let row_tie_sizes = run_lengths(&order_r, row_of);

        let n = points.len();
        let mut row_rank = vec![0u32; n];
        for (r, &i) in order_r.iter().enumerate() {
            row_rank[i as usize] = r as u32;
        }
        let row_rank_in_col_order = order_c.iter().map(|&i| row_rank[i as usize]).collect();

        Orientation { n, clump_sizes, row_tie_sizes, row_rank_in_col_order }
    }

    /// Labels each point (in column order) with its row bin under the
    /// partition given by cumulative `bounds`.
    fn row_labels(&self, bounds: &[usize]) -> Vec<u32> {
        self.row_rank_in_col_order
            .iter()
            .map(|&r| bounds.partition_point(|&b| b <= r as usize) as u32)
            .collect()
    }

    /// Grid searches at a single row count; returns `(cols, rows, bits)`
    /// triples for every admissible column count.
    fn resolution(&self, y: usize, budget: f64, c: f64, exhaustive: bool) -> Vec<(usize, usize, f64)> {
        let x_max = (float::floor(budget / y as f64) as usize).min(self.n);
        if x_max < 2 {
            return Vec::new();
        }

        let master = {
            let limit = (float::floor(c * x_max as f64) as usize).max(2);
            greedy_group_merge(&self.clump_sizes, limit)
        };

        let info = if exhaustive && EXHAUSTIVE_ROW_COUNTS.contains(&y) {
            match self.exhaustive_rows(y, x_max, &master) {
                Some(v) => v,
                None => return Vec::new(),
            }
        } else {
            let rows = greedy_group_merge(&self.row_tie_sizes, y);
            if rows.len() < y {
                // Too few distinct row values to form y rows.
                return Vec::new();
            }
            let labels = self.row_labels(&rows);
            let problem = ColumnProblem {
                rows_in_axis_order: &labels,
                row_count: rows.len(),
                master_bounds: &master,
            };
            column_dp(&problem, x_max)
        };

        info.into_iter().enumerate().map(|(i, v)| (i + 2, y, v)).collect()
    }

    /// Exhaustive row placement for small row counts: seeds a 20-bin
    /// equipartition of the row axis and tries every way of merging its bins
    /// into `y` contiguous groups, keeping the elementwise-best column
    /// optimum. Returns `None` when fewer than `y` seed bins exist.
    fn exhaustive_rows(&self, y: usize, x_max: usize, master: &[usize]) -> Option<Vec<f64>> {
        let seed = greedy_group_merge(&self.row_tie_sizes, EXHAUSTIVE_SEED_BINS);
        let m = seed.len();
        if m < y {
            return None;
        }

        // Candidate row partitions as cut sets over the seed-bin boundaries
        // (positions 1 ..= m-1, in seed-bin units).
        let mut candidates: Vec<Vec<usize>> = Vec::new();
        match y {
            2 => {
                for i in 1..m {
                    candidates.push(vec![i]);
                }
            }
            3 => {
                for i in 1..(m - 1) {
                    for j in (i + 1)..m {
                        candidates.push(vec![i, j]);
                    }
                }
            }
            _ => unreachable!("exhaustive row search is limited to 2 or 3 rows"),
        }

        let solve = |cuts: &Vec<usize>| -> Vec<f64> {
            // Convert seed-bin cuts into cumulative point bounds.
            let mut bounds = Vec::with_capacity(y);
            for &cut in cuts.iter() {
                bounds.push(seed[cut - 1]);
            }
            bounds.push(self.n);
            let labels = self.row_labels(&bounds);
            let problem = ColumnProblem {
                rows_in_axis_order: &labels,
                row_count: bounds.len(),
                master_bounds: master,
            };
            column_dp(&problem, x_max)
        };

        let merge = |mut best: Vec<f64>, cur: Vec<f64>| -> Vec<f64> {
            for (b, v) in best.iter_mut().zip(cur) {
                if v > *b {
                    *b = v;
                }
            }
            best
        };

        #[cfg(feature = "parallel")]
        let best = candidates
            .par_iter()
            .map(solve)
            .reduce(|| vec![0.0; x_max - 1], merge);
        #[cfg(not(feature = "parallel"))]
        let best = candidates.iter().map(solve).fold(vec![0.0; x_max - 1], merge);

        Some(best)
    }

    /// All `(cols, rows, bits)` contributions of this orientation under the
    /// given budget.
    pub(crate) fn contributions(
        &self,
        budget: f64,
        c: f64,
        exhaustive: bool,
    ) -> Vec<(usize, usize, f64)> {
        let y_cap = (float::floor(budget / 2.0) as usize).min(self.n);
        if y_cap < 2 {
            return Vec::new();
        }
        let ys: Vec<usize> = (2..=y_cap).collect();

        #[cfg(feature = "parallel")]
        let chunks: Vec<Vec<(usize, usize, f64)>> = ys
            .par_iter()
            .map(|&y| self.resolution(y, budget, c, exhaustive))
            .collect();
        #[cfg(not(feature = "parallel"))]
        let chunks: Vec<Vec<(usize, usize, f64)>> =
            ys.iter().map(|&y| self.resolution(y, budget, c, exhaustive)).collect();

        chunks.into_iter().flatten().collect()
    }

    /// Maximum equipartition information over admissible resolutions:
    /// both axes are cut by the tie-aware equipartition heuristic alone (no
    /// column optimization). Returns `(max normalized, max bits)`.
    pub(crate) fn equipartition_max(&self, budget: f64) -> (f64, f64) {
        let n = self.n;
        let y_cap = (float::floor(budget / 2.0) as usize).min(n);
        let mut best_norm = 0.0f64;
        let mut best_raw = 0.0f64;

        for y in 2..=y_cap {
            let rows = greedy_group_merge(&self.row_tie_sizes, y);
            if rows.len() < y {
                continue;
            }
            let labels = self.row_labels(&rows);
            let x_cap = (float::floor(budget / y as f64) as usize).min(n);
            for x in 2..=x_cap {
                let cols = greedy_group_merge(&self.clump_sizes, x);
                if cols.len() < x {
                    continue;
                }
                let info = grid_information(&labels, &cols, y, n);
                if info > best_raw {
                    best_raw = info;
                }
                let norm = (info / float::log2(x.min(y) as f64)).clamp(0.0, 1.0);
                if norm > best_norm {
                    best_norm = norm;
                }
            }
        }
        (best_norm, best_raw)
    }
}

/// Mutual information (bits) of the grid whose columns are the contiguous
/// rank ranges in `col_bounds` and whose row labels are `labels` (listed in
/// column order).
fn grid_information(labels: &[u32], col_bounds: &[usize], row_count: usize, n: usize) -> f64 {
    let cols = col_bounds.len();
    let mut joint = vec![0u64; cols * row_count];
    let mut col_margin = vec![0u64; cols];
    let mut row_margin = vec![0u64; row_count];
    let mut start = 0usize;
    for (j, &end) in col_bounds.iter().enumerate() {
        for &row in &labels[start..end] {
            joint[j * row_count + row as usize] += 1;
            row_margin[row as usize] += 1;
        }
        col_margin[j] = (end - start) as u64;
        start = end;
    }
    let n64 = n as u64;
    let h_rows = crate::stats::entropy_from_counts(row_margin.iter().copied(), n64);
    let h_cols = crate::stats::entropy_from_counts(col_margin.iter().copied(), n64);
    let h_joint = crate::stats::entropy_from_counts(joint.iter().copied(), n64);
    (h_rows + h_cols - h_joint).max(0.0)
}
