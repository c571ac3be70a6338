//! Axis partitions: tie-aware equipartition, clumps, and superclumps.
//!
//! A partition of one axis is stored in *rank space*: bin `i` holds the
//! sorted positions `[boundaries[i-1], boundaries[i])` (with an implicit
//! leading 0), so `boundaries` is a strictly increasing list of cumulative
//! point counts ending at `n`. Working in rank space makes every partition
//! operation independent of the coordinate values themselves -- only the
//! ordering and the tie pattern matter, which is what gives the grid
//! statistics their invariance under strictly increasing transforms.
//!
//! Ties are never split: points sharing a coordinate always land in the same
//! bin. The greedy rule that places bin edges walks tie groups in sorted
//! order and closes the open bin as soon as absorbing the next group would
//! not move the bin size strictly closer to the running target
//! `remaining points / remaining bins` (ties close the bin).

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A partition of `n` sorted ranks into consecutive, non-empty bins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisPartition {
    /// Strictly increasing cumulative point counts; the last entry is `n`.
    boundaries: Vec<usize>,
}

impl AxisPartition {
    /// Wraps an explicit boundary list (cumulative counts, last = total).
    pub fn from_boundaries(boundaries: Vec<usize>) -> Result<Self> {
        if boundaries.is_empty() {
            return Err(Error::InvalidParameter("partition needs at least one bin"));
        }
        if boundaries[0] == 0 || boundaries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "partition boundaries must be strictly increasing cumulative counts",
            ));
        }
        Ok(AxisPartition { boundaries })
    }

    /// Number of bins.
    pub fn len(&self) -> usize {
        self.boundaries.len()
    }

    /// Always `false` (a partition has at least one bin).
    pub fn is_empty(&self) -> bool {
        self.boundaries.is_empty()
    }

    /// Total number of points covered.
    pub fn total(&self) -> usize {
        *self.boundaries.last().unwrap()
    }

    /// The cumulative bin edges.
    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    /// Bin sizes in point counts.
    pub fn bin_sizes(&self) -> Vec<usize> {
        let mut prev = 0;
        self.boundaries
            .iter()
            .map(|&b| {
                let s = b - prev;
                prev = b;
                s
            })
            .collect()
    }

    /// Index of the bin containing sorted rank `rank` (0-based).
    pub fn bin_of_rank(&self, rank: usize) -> usize {
        debug_assert!(rank < self.total());
        self.boundaries.partition_point(|&b| b <= rank)
    }
}

/// Greedy near-equal merge of ordered, indivisible groups into at most `k`
/// bins. Returns cumulative point counts. Shared by [`equipartition_axis`]
/// (groups = value ties) and [`superclump_partition`] (groups = clumps).
pub(crate) fn greedy_group_merge(group_sizes: &[usize], k: usize) -> Vec<usize> {
    debug_assert!(k >= 1 && !group_sizes.is_empty());
    let m = group_sizes.len();
    if m <= k {
        // Each group gets its own bin.
        let mut out = Vec::with_capacity(m);
        let mut acc = 0;
        for &g in group_sizes {
            acc += g;
            out.push(acc);
        }
        return out;
    }
    let total: usize = group_sizes.iter().sum();
    let mut boundaries = Vec::with_capacity(k);
    let mut closed_points = 0usize; // points inside closed bins
    let mut bins_closed = 0usize;
    let mut cur = 0usize; // points inside the open bin
    for (j, &g) in group_sizes.iter().enumerate() {
        if cur == 0 {
            cur = g;
            continue;
        }
        if bins_closed == k - 1 {
            // Final bin absorbs everything that remains.
            cur += g;
            continue;
        }
        let bins_remaining = k - bins_closed; // including the open bin
        let groups_remaining = m - j; // including group j
        // Closing is forced when every remaining group is needed to keep the
        // remaining bins non-empty.
        let must_close = groups_remaining < bins_remaining;
        if !must_close {
            let target = (total - closed_points) as f64 / bins_remaining as f64;
            let keep = cur as f64 - target;
            let grown = (cur + g) as f64 - target;
            if grown.abs() < keep.abs() {
                // Absorbing moves the bin strictly closer to the target.
                cur += g;
                continue;
            }
        }
        boundaries.push(closed_points + cur);
        closed_points += cur;
        bins_closed += 1;
        cur = g;
    }
    boundaries.push(total);
    boundaries
}

/// Sizes of maximal runs of equal values in a sorted slice.
pub(crate) fn tie_group_sizes(sorted_values: &[f64]) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut run = 1usize;
    for w in sorted_values.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            sizes.push(run);
            run = 1;
        }
    }
    sizes.push(run);
    sizes
}

fn ensure_sorted(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidParameter("empty value slice"));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    if values.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameter("values must be sorted ascending"));
    }
    Ok(())
}

/// Splits sorted values into `k` near-equal bins without separating ties.
///
/// When the slice has fewer than `k` distinct values the partition has one
/// bin per distinct value instead.
///
/// # Examples
///
/// ```
/// use equit_core::mic::equipartition_axis;
/// let p = equipartition_axis(&[1.0, 1.0, 1.0, 2.0], 2).unwrap();
/// assert_eq!(p.bin_sizes(), vec![3, 1]); // the tie group of 1s is not split
/// ```
pub fn equipartition_axis(sorted_values: &[f64], k: usize) -> Result<AxisPartition> {
    if k < 2 {
        return Err(Error::InvalidParameter("equipartition needs k >= 2"));
    }
    ensure_sorted(sorted_values)?;
    let groups = tie_group_sizes(sorted_values);
    AxisPartition::from_boundaries(greedy_group_merge(&groups, k))
}

/// Groups sorted values into maximal runs of equal values ("clumps").
///
/// # Examples
///
/// ```
/// use equit_core::mic::clump_partition;
/// let p = clump_partition(&[1.0, 1.0, 2.0, 3.0, 3.0]).unwrap();
/// assert_eq!(p.bin_sizes(), vec![2, 1, 2]);
/// ```
pub fn clump_partition(sorted_values: &[f64]) -> Result<AxisPartition> {
    ensure_sorted(sorted_values)?;
    let groups = tie_group_sizes(sorted_values);
    AxisPartition::from_boundaries(greedy_group_merge(&groups, groups.len()))
}

/// Merges adjacent clumps until at most `limit` "superclumps" remain, with
/// point counts as even as clump integrity allows (same greedy rule as
/// [`equipartition_axis`]). With `clumps.len() <= limit` the input comes
/// back unchanged.
pub fn superclump_partition(clumps: &AxisPartition, limit: usize) -> Result<AxisPartition> {
    if limit < 2 {
        return Err(Error::InvalidParameter("superclump limit must be >= 2"));
    }
    let sizes = clumps.bin_sizes();
    AxisPartition::from_boundaries(greedy_group_merge(&sizes, limit))
}
