//! Brute-force maximal grid information for small inputs.
//!
//! [`exact_max_grid_info`] finds the true maximum of the grid mutual
//! information over *all* placements of `x - 1` vertical and `y - 1`
//! horizontal cut lines, with no heuristic restriction of the candidate
//! positions. It exists to referee the production search on small datasets
//! and is deliberately independent of it: one axis is enumerated outright,
//! and the other is solved by a maximization over column sums that shares no
//! code with the conditional-entropy minimizer used by the main engine.
//!
//! Cuts only matter between distinct coordinate values, so the search space
//! per axis is the set of cut positions between consecutive distinct values.
//! The axis with fewer cut-set combinations is enumerated; for each of its
//! cut sets the other axis is solved exactly by dynamic programming on the
//! column decomposition `I = sum_j sum_r (c_jr / n) log2(c_jr n / (w_j m_r))`,
//! which is additive over columns once the row margins `m_r` are fixed.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::float;
use crate::stats::Dataset;

/// Default cap on the number of points; the search is exponential in
/// distinct values, so larger inputs must opt in explicitly.
const DEFAULT_POINT_CEILING: usize = 40;
/// Hard cap on enumerated cut sets, whatever the point ceiling.
const MAX_ENUMERATED_CUT_SETS: u64 = 2_000_000;

/// Maps values to indices of their sorted distinct values; returns the
/// per-point index and the number of distinct values.
fn unit_indices(vals: &[f64]) -> (Vec<u32>, usize) {
    let mut sorted = vals.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    sorted.dedup();
    let idx = vals.iter().map(|v| sorted.partition_point(|s| s < v) as u32).collect();
    (idx, sorted.len())
}

fn binom(n: usize, k: usize) -> u64 {
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i as u128 + 1);
        if r > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    r as u64
}

/// Enumerates every set of `e_cuts` cut positions on the `eu` axis; for
/// each, exactly maximizes the grid information over partitions of the `du`
/// axis into at most `d_parts` contiguous groups. Returns the overall
/// maximum in bits.
fn hybrid_max(
    eu: &[u32],
    e_units: usize,
    e_cuts: usize,
    du: &[u32],
    d_units: usize,
    d_parts: usize,
) -> f64 {
    let n = eu.len();
    let nf = n as f64;
    let rows = e_cuts + 1;
    let l_cap = d_parts.min(d_units);

    // Points bucketed by their du unit, carrying their eu unit.
    let mut per_unit: Vec<Vec<u32>> = vec![Vec::new(); d_units];
    for i in 0..n {
        per_unit[du[i] as usize].push(eu[i]);
    }

    let mut best = 0.0f64;

    // prefix[t][r] = points with du unit < t in row r, for the current cuts.
    let mut prefix = vec![vec![0u64; rows]; d_units + 1];
    let mut row_margin = vec![0u64; rows];
    // g[s][t] = information contribution of a column covering units (s, t].
    let mut g = vec![vec![0.0f64; d_units + 1]; d_units + 1];
    let mut dp = vec![vec![f64::NEG_INFINITY; d_units + 1]; l_cap + 1];

    let mut cuts: Vec<usize> = (1..=e_cuts).collect();
    loop {
        let row_of = |u: u32| cuts.partition_point(|&c| c <= u as usize);

        for m in row_margin.iter_mut() {
            *m = 0;
        }
        for t in 1..=d_units {
            let (lo, hi) = prefix.split_at_mut(t);
            hi[0].copy_from_slice(&lo[t - 1]);
            for &u in &per_unit[t - 1] {
                let r = row_of(u);
                hi[0][r] += 1;
                row_margin[r] += 1;
            }
        }

        for s in 0..d_units {
            for t in (s + 1)..=d_units {
                let mut w = 0u64;
                for (&pt, &ps) in prefix[t].iter().zip(&prefix[s]) {
                    w += pt - ps;
                }
                let wf = w as f64;
                let mut term = 0.0;
                for r in 0..rows {
                    let c = prefix[t][r] - prefix[s][r];
                    if c > 0 {
                        let cf = c as f64;
                        term += cf / nf * float::log2(cf * nf / (wf * row_margin[r] as f64));
                    }
                }
                g[s][t] = term;
            }
        }

        dp[0].iter_mut().for_each(|v| *v = f64::NEG_INFINITY);
        dp[0][0] = 0.0;
        for l in 1..=l_cap {
            for t in l..=d_units {
                let mut m = f64::NEG_INFINITY;
                for s in (l - 1)..t {
                    let v = dp[l - 1][s];
                    if v > f64::NEG_INFINITY {
                        let cand = v + g[s][t];
                        if cand > m {
                            m = cand;
                        }
                    }
                }
                dp[l][t] = m;
            }
        }
        best = dp[1..=l_cap].iter().map(|row| row[d_units]).fold(best, f64::max);

        // Lexicographic successor of the cut set.
        let mut i = e_cuts;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if cuts[i] < (e_units - 1) - (e_cuts - 1 - i) {
                break;
            }
        }
        cuts[i] += 1;
        for j in (i + 1)..e_cuts {
            cuts[j] = cuts[j - 1] + 1;
        }
    }
}

/// True maximum grid information at resolution `(x, y)`, in bits, searching
/// all cut placements. See [`exact_max_grid_info_with_ceiling`] to lift the
/// default 40-point ceiling.
pub fn exact_max_grid_info(data: &Dataset, x: usize, y: usize) -> Result<f64> {
    exact_max_grid_info_with_ceiling(data, x, y, DEFAULT_POINT_CEILING)
}

/// True maximum grid information at resolution `(x, y)` for datasets of up
/// to `max_points` points.
///
/// The maximum is over every grid of at most `x` columns and `y` rows (both
/// at least 2) formed by cutting between distinct coordinate values; empty
/// bins never increase information, so this equals the maximum over exactly
/// `x` by `y` grids. The cost grows combinatorially: the cheaper axis is
/// enumerated in full (an error is returned beyond 2 million cut sets) and
/// the other axis is solved exactly per cut set.
pub fn exact_max_grid_info_with_ceiling(
    data: &Dataset,
    x: usize,
    y: usize,
    max_points: usize,
) -> Result<f64> {
    if x < 2 || y < 2 {
        return Err(Error::InvalidParameter("grids need at least 2 bins per axis"));
    }
    let n = data.len();
    if n > max_points {
        return Err(Error::TooLarge { limit: max_points, got: n });
    }
    let xs: Vec<f64> = data.xs().collect();
    let ys: Vec<f64> = data.ys().collect();
    let (xu, x_units) = unit_indices(&xs);
    let (yu, y_units) = unit_indices(&ys);
    if x_units == 1 || y_units == 1 {
        return Ok(0.0);
    }
    let x_cuts = (x - 1).min(x_units - 1);
    let y_cuts = (y - 1).min(y_units - 1);
    let combos_x = binom(x_units - 1, x_cuts);
    let combos_y = binom(y_units - 1, y_cuts);
    if combos_x.min(combos_y) > MAX_ENUMERATED_CUT_SETS {
        return Err(Error::TooLarge {
            limit: MAX_ENUMERATED_CUT_SETS as usize,
            got: combos_x.min(combos_y) as usize,
        });
    }
    let v = if combos_y <= combos_x {
        hybrid_max(&yu, y_units, y_cuts, &xu, x_units, x)
    } else {
        hybrid_max(&xu, x_units, x_cuts, &yu, y_units, y)
    };
    Ok(v.max(0.0))
}
