//! The column optimizer against a literal enumeration of its search space.
//!
//! `optimize_columns` claims exactness over the restricted family "cuts on
//! master-partition boundaries". The oracle here walks every subset of those
//! boundaries, computes each grid's mutual information from explicit cell
//! counts, and keeps the best per column count — no shared code with the
//! dynamic program beyond the partition types themselves.

use equit_core::mic::{
    clump_partition, equipartition_axis, optimize_columns, superclump_partition, AxisPartition,
};
use equit_core::rng::Rng;
use equit_core::Dataset;

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_unstable_by(f64::total_cmp);
    v
}

fn lower_rank(sorted: &[f64], v: f64) -> usize {
    sorted.partition_point(|&s| s < v)
}

/// Mutual information of a fully counted grid via H(C) + H(R) - H(C, R);
/// the optimizer works with conditional entropies instead.
fn grid_mi(col_of: &[usize], row_of: &[usize], cols: usize, rows: usize) -> f64 {
    let n = col_of.len() as f64;
    let mut joint = vec![0u64; cols * rows];
    for (&c, &r) in col_of.iter().zip(row_of) {
        joint[c * rows + r] += 1;
    }
    let h = |count: u64| {
        if count == 0 {
            0.0
        } else {
            let p = count as f64 / n;
            -p * p.log2()
        }
    };
    let mut h_joint = 0.0;
    let mut col_sums = vec![0u64; cols];
    let mut row_sums = vec![0u64; rows];
    for c in 0..cols {
        for r in 0..rows {
            let cell = joint[c * rows + r];
            h_joint += h(cell);
            col_sums[c] += cell;
            row_sums[r] += cell;
        }
    }
    let h_cols: f64 = col_sums.into_iter().map(h).sum();
    let h_rows: f64 = row_sums.into_iter().map(h).sum();
    h_cols + h_rows - h_joint
}

/// Brute force over every subset of the master's interior boundaries.
fn enumeration_oracle(
    data: &Dataset,
    rows: &AxisPartition,
    max_cols: usize,
    master: &AxisPartition,
) -> Vec<f64> {
    let xs = sorted(data.xs().collect());
    let ys = sorted(data.ys().collect());
    let x_ranks: Vec<usize> = data.points().iter().map(|&(x, _)| lower_rank(&xs, x)).collect();
    let row_of: Vec<usize> = data
        .points()
        .iter()
        .map(|&(_, y)| rows.bin_of_rank(lower_rank(&ys, y)))
        .collect();

    let m = master.len();
    let interior = &master.boundaries()[..m - 1];
    assert!(interior.len() <= 16, "oracle cost grows as 2^boundaries");

    // Best information using exactly `cols` columns.
    let mut best = vec![f64::NEG_INFINITY; m + 1];
    best[1] = 0.0;
    for mask in 0u32..(1 << interior.len()) {
        let cuts: Vec<usize> = interior
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &b)| b)
            .collect();
        let cols = cuts.len() + 1;
        let col_of: Vec<usize> =
            x_ranks.iter().map(|&r| cuts.partition_point(|&c| c <= r)).collect();
        let mi = grid_mi(&col_of, &row_of, cols, rows.len());
        if mi > best[cols] {
            best[cols] = mi;
        }
    }

    // Splitting a column never loses information, so the exactly-l optimum
    // is the cumulative maximum; column counts past the master size
    // saturate.
    (2..=max_cols)
        .map(|l| best[1..=l.min(m)].iter().fold(0.0f64, |a, &b| a.max(b)))
        .collect()
}

fn mixed_points(rng: &mut Rng, n: usize, tie_rich: bool) -> Vec<(f64, f64)> {
    (0..n)
        .map(|_| {
            let x = rng.next_f64();
            let y = 0.6 * x + 0.4 * rng.next_f64();
            if tie_rich {
                ((x * 4.0).floor() / 4.0, (y * 3.0).floor() / 3.0)
            } else {
                (x, y)
            }
        })
        .collect()
}

#[test]
fn dp_matches_subset_enumeration_on_random_data() {
    let mut rng = Rng::new(0x51C0_FFEE);
    for trial in 0..60 {
        let n = 8 + (rng.next_u64() % 17) as usize;
        let data = Dataset::new(mixed_points(&mut rng, n, trial % 2 == 0)).unwrap();
        let xs = sorted(data.xs().collect());
        let ys = sorted(data.ys().collect());

        let rows = equipartition_axis(&ys, 2 + (rng.next_u64() % 3) as usize).unwrap();
        let clumps = clump_partition(&xs).unwrap();
        let limit = 3 + (rng.next_u64() % 8) as usize;
        let master = superclump_partition(&clumps, limit).unwrap();
        let max_cols = 2 + (rng.next_u64() % 5) as usize;

        let got = optimize_columns(&data, &rows, max_cols, &master).unwrap();
        let want = enumeration_oracle(&data, &rows, max_cols, &master);
        assert_eq!(got.len(), want.len());
        for (l, (g, w)) in got.iter().zip(&want).enumerate() {
            assert!(
                (g - w).abs() <= 1e-12,
                "trial {trial}, l = {}: dp {g} vs enumeration {w}",
                l + 2
            );
        }
    }
}

#[test]
fn dp_matches_enumeration_past_master_saturation() {
    // max_cols far beyond the master size exercises the saturation path on
    // both sides.
    let mut rng = Rng::new(0xBEEF);
    let data = Dataset::new(mixed_points(&mut rng, 18, true)).unwrap();
    let xs = sorted(data.xs().collect());
    let ys = sorted(data.ys().collect());
    let rows = equipartition_axis(&ys, 3).unwrap();
    let clumps = clump_partition(&xs).unwrap();
    let master = superclump_partition(&clumps, 4).unwrap();

    let got = optimize_columns(&data, &rows, 9, &master).unwrap();
    let want = enumeration_oracle(&data, &rows, 9, &master);
    for (g, w) in got.iter().zip(&want) {
        assert!((g - w).abs() <= 1e-12, "dp {g} vs enumeration {w}");
    }
    // Saturated region is constant.
    let m = master.len();
    for l in m..=9 {
        assert_eq!(got[l - 2], got[m - 2]);
    }
}
