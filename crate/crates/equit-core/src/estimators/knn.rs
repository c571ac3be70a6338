//! K-nearest-neighbor mutual information (Kraskov variant 1).
//!
//! For each point the distance `d_i` to its k-th nearest neighbor is found
//! under the max-norm in the joint space; `n_x(i)` and `n_y(i)` count the
//! points whose marginal distance is strictly smaller than `d_i`, and the
//! estimate in nats is
//!
//! ```text
//! psi(k) + psi(n) - mean_i[ psi(n_x(i) + 1) + psi(n_y(i) + 1) ]
//! ```
//!
//! converted to bits. The estimator assumes continuous data, so exact
//! coordinate ties are broken by a deterministic seeded jitter proportional
//! to each coordinate's range. Neighbor search uses a kd-tree; the result is
//! exact (the test suite checks it bit-for-bit against a quadratic scan).

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::float;
use crate::rng::Rng;
use crate::stats::{linfoot_squared, Dataset};

/// Parameters for the k-nearest-neighbor estimator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KraskovParams {
    /// Neighbor count; must satisfy `1 <= k <= n - 1`.
    pub k: usize,
    /// Tie-breaking jitter, as a fraction of each coordinate's range.
    pub jitter_scale: f64,
    /// Seed for the jitter stream.
    pub seed: u64,
}

impl Default for KraskovParams {
    fn default() -> Self {
        KraskovParams { k: 6, jitter_scale: 1e-10, seed: 0 }
    }
}

/// The digamma function for positive arguments (NaN otherwise).
///
/// Small arguments are shifted up by the recurrence
/// `psi(x) = psi(x + 1) - 1/x` until the asymptotic expansion applies.
pub(crate) fn digamma(mut x: f64) -> f64 {
    if x.is_nan() || x <= 0.0 {
        return f64::NAN;
    }
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv = 1.0 / x;
    let p = inv * inv;
    let series = p * (1.0 / 12.0 - p * (1.0 / 120.0 - p * (1.0 / 252.0 - p / 240.0)));
    acc + float::ln(x) - 0.5 * inv - series
}

/// A static 2-d kd-tree over point indices, used for exact max-norm
/// k-nearest-neighbor distances.
struct KdTree<'a> {
    pts: &'a [(f64, f64)],
    order: Vec<u32>,
}

impl<'a> KdTree<'a> {
    fn new(pts: &'a [(f64, f64)]) -> Self {
        let mut order: Vec<u32> = (0..pts.len() as u32).collect();
        build(pts, &mut order, 0);
        KdTree { pts, order }
    }

    /// Distance from `q` to its k-th nearest point (max-norm), ignoring the
    /// point with index `skip`.
    fn kth_distance(&self, q: (f64, f64), skip: u32, k: usize) -> f64 {
        let mut best: Vec<f64> = Vec::with_capacity(k);
        self.search(0, self.order.len(), 0, q, skip, k, &mut best);
        debug_assert_eq!(best.len(), k);
        best.iter().fold(0.0f64, |m, &d| m.max(d))
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        &self,
        lo: usize,
        hi: usize,
        axis: usize,
        q: (f64, f64),
        skip: u32,
        k: usize,
        best: &mut Vec<f64>,
    ) {
        if lo >= hi {
            return;
        }
        let mid = (lo + hi) / 2;
        let i = self.order[mid];
        let p = self.pts[i as usize];
        if i != skip {
            let d = float::abs(p.0 - q.0).max(float::abs(p.1 - q.1));
            offer(best, k, d);
        }
        if hi - lo == 1 {
            return;
        }
        let (qa, pa) = if axis == 0 { (q.0, p.0) } else { (q.1, p.1) };
        let (near, far) = if qa < pa { ((lo, mid), (mid + 1, hi)) } else { ((mid + 1, hi), (lo, mid)) };
        self.search(near.0, near.1, axis ^ 1, q, skip, k, best);
        // Any point across the splitting line is at least `gap` away in
        // max-norm; skip the far side when that cannot improve the heap.
        let gap = float::abs(qa - pa);
        if best.len() < k || gap < worst(best) {
            self.search(far.0, far.1, axis ^ 1, q, skip, k, best);
        }
    }
}

fn build(pts: &[(f64, f64)], order: &mut [u32], axis: usize) {
    if order.len() <= 1 {
        return;
    }
    let mid = order.len() / 2;
    order.select_nth_unstable_by(mid, |&a, &b| {
        let (pa, pb) = (pts[a as usize], pts[b as usize]);
        let (ka, kb) = if axis == 0 { (pa.0, pb.0) } else { (pa.1, pb.1) };
        ka.total_cmp(&kb).then(a.cmp(&b))
    });
    let (left, rest) = order.split_at_mut(mid);
    build(pts, left, axis ^ 1);
    build(pts, &mut rest[1..], axis ^ 1);
}

fn worst(best: &[f64]) -> f64 {
    best.iter().fold(f64::NEG_INFINITY, |m, &d| m.max(d))
}

fn offer(best: &mut Vec<f64>, k: usize, d: f64) {
    if best.len() < k {
        best.push(d);
        return;
    }
    let (mut wi, mut wd) = (0, best[0]);
    for (i, &v) in best.iter().enumerate().skip(1) {
        if v > wd {
            wi = i;
            wd = v;
        }
    }
    if d < wd {
        best[wi] = d;
    }
}

/// Values of `sorted` with `|s - v| < d`, not counting `v`'s own entry.
/// This is the marginal neighbor count of the estimator.
///
/// The predicate compares the floating-point difference itself (never
/// precomputed interval endpoints `v ± d`, which round differently): the
/// k-th neighbor sits at distance exactly `d` on one axis, so the boundary
/// case is the common case and must match the definition bit for bit.
fn strict_count(sorted: &[f64], v: f64, d: f64) -> usize {
    if d <= 0.0 {
        return 0;
    }
    let lo = sorted.partition_point(|&s| s < v && float::abs(s - v) >= d);
    let hi = sorted.partition_point(|&s| s < v || float::abs(s - v) < d);
    hi - lo - 1
}

fn validate(n: usize, params: &KraskovParams) -> Result<()> {
    if params.k < 1 {
        return Err(Error::InvalidParameter("k must be at least 1"));
    }
    if !(params.jitter_scale.is_finite() && params.jitter_scale >= 0.0) {
        return Err(Error::InvalidParameter("jitter_scale must be finite and non-negative"));
    }
    if n < params.k + 1 {
        return Err(Error::TooFewPoints { needed: params.k + 1, got: n });
    }
    Ok(())
}

/// Estimates the mutual information of a dataset in bits.
///
/// The estimate is asymptotically unbiased on continuous data but can be
/// negative on finite samples (true MI is never negative); callers that need
/// a dependence score should use [`mi_linfoot_score`]. The result is
/// deterministic given `(data, params)`.
pub fn kraskov_mi(data: &Dataset, params: &KraskovParams) -> Result<f64> {
    let n = data.len();
    validate(n, params)?;
    let k = params.k;

    let mut pts = data.points().to_vec();
    if params.jitter_scale > 0.0 {
        let mut rng = Rng::new(params.seed);
        let (mut xlo, mut xhi) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut ylo, mut yhi) = (f64::INFINITY, f64::NEG_INFINITY);
        for &(x, y) in pts.iter() {
            xlo = xlo.min(x);
            xhi = xhi.max(x);
            ylo = ylo.min(y);
            yhi = yhi.max(y);
        }
        // A constant axis has no range to scale by; fall back to the scale
        // itself so ties still break.
        let span = |lo: f64, hi: f64| if hi - lo > 0.0 { hi - lo } else { 1.0 };
        let ex = params.jitter_scale * span(xlo, xhi);
        let ey = params.jitter_scale * span(ylo, yhi);
        for p in pts.iter_mut() {
            p.0 += rng.symmetric(ex);
        }
        for p in pts.iter_mut() {
            p.1 += rng.symmetric(ey);
        }
    }

    let tree = KdTree::new(&pts);
    let mut xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let mut ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    xs.sort_unstable_by(f64::total_cmp);
    ys.sort_unstable_by(f64::total_cmp);

    let mut sum = 0.0;
    for (i, &p) in pts.iter().enumerate() {
        let d = tree.kth_distance(p, i as u32, k);
        let nx = strict_count(&xs, p.0, d);
        let ny = strict_count(&ys, p.1, d);
        sum += digamma((nx + 1) as f64) + digamma((ny + 1) as f64);
    }
    let nats = digamma(k as f64) + digamma(n as f64) - sum / n as f64;
    Ok(nats / core::f64::consts::LN_2)
}

/// The k-nearest-neighbor MI estimate mapped to the squared Linfoot scale.
///
/// Negative estimates are clamped to zero before the transform, so the
/// score always lies in `[0, 1)`. On bivariate Gaussian data the population
/// value of this score is exactly the squared correlation.
pub fn mi_linfoot_score(data: &Dataset, params: &KraskovParams) -> Result<f64> {
    let mi = kraskov_mi(data, params)?;
    linfoot_squared(mi.max(0.0))
}
