//! Dataset generation: x placement, uniform noise, and the `D_alpha` family.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::float;
use crate::rng::{mix_seed, Rng};
use crate::stats::Dataset;
use crate::synth::{FunctionSpec, NoiseAxes, NoiseModel, Placement};

/// Segment count of the dense polyline used for arc-length placement,
/// distributed over pieces in proportion to their x-width.
const POLYLINE_SEGMENTS: usize = 100_000;

/// Places `n` x-positions on the function's domain.
///
/// `AlongXRange` returns the evenly spaced grid
/// `x_i = x_min + i (x_max - x_min) / (n - 1)`. `AlongCurve` spaces the
/// positions evenly in arc length along `(x, f(x))`: the curve is
/// discretized into a dense polyline ([`POLYLINE_SEGMENTS`] segments uniform
/// in x, plus a vertical segment wherever adjacent pieces disagree at their
/// shared boundary, so discontinuities contribute their jump length), and
/// the cumulative length is inverted by linear interpolation. Both
/// placements include the domain endpoints exactly and are deterministic.
pub fn sample_xs(spec: &FunctionSpec, n: usize, placement: Placement) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    let (lo, hi) = spec.domain();
    match placement {
        Placement::AlongXRange => {
            let step = (hi - lo) / (n - 1) as f64;
            Ok((0..n)
                .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
                .collect())
        }
        Placement::AlongCurve => Ok(curve_positions(spec, n)),
    }
}

fn curve_positions(spec: &FunctionSpec, n: usize) -> Vec<f64> {
    let (dlo, dhi) = spec.domain();
    let width = dhi - dlo;

    // Polyline nodes over every piece restricted to the domain. Adjacent
    // pieces both emit a node at the shared boundary x; when their one-sided
    // values differ, the pair forms the vertical jump segment.
    let mut nodes: Vec<(f64, f64)> = Vec::new();
    for piece in spec.pieces() {
        let plo = piece.lo.max(dlo);
        let phi = piece.hi.min(dhi);
        if phi <= plo {
            continue;
        }
        let m = (((phi - plo) / width) * POLYLINE_SEGMENTS as f64) as usize + 1;
        for j in 0..=m {
            let x = if j == m { phi } else { plo + (phi - plo) * j as f64 / m as f64 };
            nodes.push((x, (piece.f)(x)));
        }
    }

    let mut cum = Vec::with_capacity(nodes.len());
    cum.push(0.0);
    let mut total = 0.0;
    for w in nodes.windows(2) {
        let dx = w[1].0 - w[0].0;
        let dy = w[1].1 - w[0].1;
        total += float::sqrt(dx * dx + dy * dy);
        cum.push(total);
    }

    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if k == 0 {
            out.push(dlo);
            continue;
        }
        if k == n - 1 {
            out.push(dhi);
            continue;
        }
        let target = total * k as f64 / (n - 1) as f64;
        let idx = cum.partition_point(|&c| c < target).clamp(1, cum.len() - 1);
        let (l0, l1) = (cum[idx - 1], cum[idx]);
        let (x0, x1) = (nodes[idx - 1].0, nodes[idx].0);
        let x = if l1 > l0 { x0 + (x1 - x0) * (target - l0) / (l1 - l0) } else { x0 };
        out.push(x.clamp(dlo, dhi));
    }
    out
}

/// Adds independent `U[-w, w]` noise to the coordinates designated by the
/// model's noise axes (the same half-width serves both axes when both are
/// perturbed). `w = 0` returns the input unchanged without consuming any
/// randomness. Draws are consumed per point, x before y, so the output is a
/// pure function of `(xs, ys, model, w, seed)`.
pub fn apply_noise(
    xs: &[f64],
    ys: &[f64],
    model: NoiseModel,
    w: f64,
    seed: u64,
) -> Result<Dataset> {
    if !w.is_finite() || w < 0.0 {
        return Err(Error::InvalidParameter("noise half-width must be finite and >= 0"));
    }
    if w == 0.0 {
        return Dataset::from_columns(xs, ys);
    }
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch { x: xs.len(), y: ys.len() });
    }
    let axes = model.noise_axes();
    let mut rng = Rng::new(seed);
    let points = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let dx = match axes {
                NoiseAxes::XOnly | NoiseAxes::Both => rng.symmetric(w),
                NoiseAxes::YOnly => 0.0,
            };
            let dy = match axes {
                NoiseAxes::YOnly | NoiseAxes::Both => rng.symmetric(w),
                NoiseAxes::XOnly => 0.0,
            };
            (x + dx, y + dy)
        })
        .collect();
    Dataset::new(points)
}

/// Generates one noisy dataset: places `n` x-positions per the model,
/// evaluates the function (or draws independent `U[0, 1)` ys for the random
/// entry), and applies the model's noise at half-width `w`.
///
/// Equivalent to [`sample_xs`] followed by [`generate_with_xs`]; callers that
/// reuse one placement across many widths or replicates (calibration,
/// sweeps) should compute the xs once and call [`generate_with_xs`], which
/// produces bit-identical output.
pub fn generate(
    spec: &FunctionSpec,
    model: NoiseModel,
    n: usize,
    w: f64,
    seed: u64,
) -> Result<Dataset> {
    let xs = sample_xs(spec, n, model.placement())?;
    generate_with_xs(spec, model, &xs, w, seed)
}

/// [`generate`] with the x placement precomputed (x positions are a
/// deterministic function of spec, model, and `n`, so they can be shared
/// across replicates and candidate widths).
///
/// The y draws and the noise draws come from separate streams derived from
/// `seed` (`mix_seed(seed, &[1])` and `mix_seed(seed, &[2])`), so the noise
/// realization at a given seed does not depend on whether the function is
/// the random entry.
pub fn generate_with_xs(
    spec: &FunctionSpec,
    model: NoiseModel,
    xs: &[f64],
    w: f64,
    seed: u64,
) -> Result<Dataset> {
    let ys: Vec<f64> = if spec.is_random() {
        let mut rng = Rng::new(mix_seed(seed, &[1]));
        xs.iter().map(|_| rng.next_f64()).collect()
    } else {
        xs.iter()
            .map(|&x| spec.evaluate(x).expect("sampled x lies in the domain"))
            .collect()
    };
    apply_noise(xs, &ys, model, w, mix_seed(seed, &[2]))
}

/// Samples `n` points from the two-block distribution uniform on
/// `[0, alpha]^2 ∪ [alpha, 1]^2`.
///
/// Each point independently lands in the lower block with probability
/// `alpha` and is uniform within its block, which makes both coordinate
/// marginals exactly uniform on `[0, 1]` and gives the distribution a
/// maximal information coefficient of the binary entropy `H(alpha)`. Every
/// point consumes exactly three draws (membership, x, y), so output is a
/// pure function of `(alpha, n, seed)`.
pub fn sample_d_alpha(alpha: f64, n: usize, seed: u64) -> Result<Dataset> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameter("alpha must lie in [0, 1]"));
    }
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    let mut rng = Rng::new(seed);
    let points = (0..n)
        .map(|_| {
            let lower = rng.next_f64() < alpha;
            if lower {
                (rng.uniform(0.0, alpha), rng.uniform(0.0, alpha))
            } else {
                (rng.uniform(alpha, 1.0), rng.uniform(alpha, 1.0))
            }
        })
        .collect();
    Dataset::new(points)
}
