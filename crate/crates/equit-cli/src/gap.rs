//! Equitability gap analysis over sweep records.
//!
//! An equitable statistic gives similar scores to equally noisy
//! relationships of different shapes. The gap makes that operational: bin
//! records by realized R², and within each bin measure the spread between
//! the highest and lowest score. A statistic whose score is a function of
//! R² alone has every gap bounded by what R² varies within the bin; a
//! shape-sensitive statistic shows wide bins.

use std::collections::BTreeSet;

use crate::sweep::TrialRecord;

/// Width of the R² bins.
pub const GAP_BIN_WIDTH: f64 = 0.1;

/// Score spread inside one R² bin.
#[derive(Clone, Debug)]
pub struct GapBin {
    /// Bin interval `[lo, hi)` (the last bin closes at 1).
    pub lo: f64,
    pub hi: f64,
    /// Highest minus lowest score among the bin's records.
    pub gap: f64,
    /// Number of distinct function types contributing records.
    pub function_types: usize,
    /// Number of scored records in the bin.
    pub records: usize,
}

/// Gap profile of one statistic.
#[derive(Clone, Debug)]
pub struct GapSummary {
    pub statistic: String,
    /// Worst-case spread over qualifying bins (bins mixing at least two
    /// function types). When no bin qualifies this falls back to the
    /// spread over all populated bins and `cross_type` is `false`.
    pub max_gap: f64,
    /// Whether any bin mixed two or more function types. A `false` here
    /// means the profile only measures within-type spread.
    pub cross_type: bool,
    /// All populated bins, low R² first.
    pub bins: Vec<GapBin>,
}

/// Computes the gap profile of every statistic present in `records`,
/// in order of first appearance.
///
/// Records with non-finite scores (failed trials) are ignored. The result
/// depends only on the multiset of records, not their order.
pub fn equitability_gap(records: &[TrialRecord]) -> Vec<GapSummary> {
    let mut stats: Vec<String> = Vec::new();
    for r in records {
        if !stats.contains(&r.statistic) {
            stats.push(r.statistic.clone());
        }
    }
    stats.iter().map(|s| gap_for(records, s)).collect()
}

fn gap_for(records: &[TrialRecord], statistic: &str) -> GapSummary {
    let n_bins = (1.0 / GAP_BIN_WIDTH).ceil() as usize;
    let mut lo_score = vec![f64::INFINITY; n_bins];
    let mut hi_score = vec![f64::NEG_INFINITY; n_bins];
    let mut types: Vec<BTreeSet<&str>> = vec![BTreeSet::new(); n_bins];
    let mut counts = vec![0usize; n_bins];

    for r in records {
        if r.statistic != statistic || !r.score.is_finite() {
            continue;
        }
        let bin = ((r.r_squared / GAP_BIN_WIDTH) as usize).min(n_bins - 1);
        lo_score[bin] = lo_score[bin].min(r.score);
        hi_score[bin] = hi_score[bin].max(r.score);
        types[bin].insert(r.function);
        counts[bin] += 1;
    }

    let mut bins = Vec::new();
    let mut cross_gap = f64::NEG_INFINITY;
    let mut any_gap = f64::NEG_INFINITY;
    let mut cross_type = false;
    for b in 0..n_bins {
        if counts[b] == 0 {
            continue;
        }
        let gap = hi_score[b] - lo_score[b];
        bins.push(GapBin {
            lo: b as f64 * GAP_BIN_WIDTH,
            hi: ((b + 1) as f64 * GAP_BIN_WIDTH).min(1.0),
            gap,
            function_types: types[b].len(),
            records: counts[b],
        });
        any_gap = any_gap.max(gap);
        if types[b].len() >= 2 {
            cross_type = true;
            cross_gap = cross_gap.max(gap);
        }
    }

    let max_gap = if cross_type {
        cross_gap
    } else if bins.is_empty() {
        0.0
    } else {
        any_gap
    };
    GapSummary { statistic: statistic.to_string(), max_gap, cross_type, bins }
}
