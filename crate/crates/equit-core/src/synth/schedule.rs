//! Noise-level calibration.
//!
//! Noise half-widths are not comparable across functions: the width that
//! leaves a line clearly visible can bury a narrow sinusoid completely. The
//! schedule therefore works backwards from effect size: it picks widths so
//! that the mean coefficient of determination of pilot datasets lands on an
//! evenly spaced ladder of targets, making levels comparable across the
//! whole suite.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::float;
use crate::rng::mix_seed;
use crate::stats::r_squared_vs_function;
use crate::synth::{generate_with_xs, sample_xs, FunctionSpec, NoiseModel};

/// A level counts as attained when its mean pilot R² is within this
/// distance of the target.
pub const R2_TOLERANCE: f64 = 0.03;

/// Bisection refines well past [`R2_TOLERANCE`] so that calibrated widths
/// track the target curve instead of stopping at the first loose hit.
const BISECT_TOLERANCE: f64 = 0.005;
const MAX_BISECT_ITERS: usize = 60;
const MAX_BRACKET_DOUBLINGS: usize = 60;

/// One calibrated noise level.
#[derive(Clone, Copy, Debug)]
pub struct ScheduleLevel {
    /// Calibrated noise half-width.
    pub width: f64,
    /// Mean pilot R² this level aims for.
    pub target_r2: f64,
    /// Mean pilot R² actually achieved at `width`.
    pub pilot_r2: f64,
    /// Whether `pilot_r2` lies within [`R2_TOLERANCE`] of `target_r2`.
    /// `false` flags an unattainable target — most prominently the random
    /// entry, whose R² is 0 by definition at every width.
    pub attained: bool,
}

/// Calibrates `levels` noise half-widths for one function/model pair.
///
/// Level `i` (1-based) targets `R² = 1 - (i-1)/levels`, so ten levels aim at
/// `1.0, 0.9, ..., 0.1`. The first width is always 0. Each later width is
/// found by bisection on the mean R² of `pilot_reps` pilot datasets; the
/// pilot replicates use seeds fixed across candidate widths (derived from
/// `seed` and the replicate index only), which makes the pilot mean a
/// continuous decreasing function of the width and the whole schedule a
/// pure function of its arguments. Returned widths are monotone
/// non-decreasing. When a target cannot be bracketed (the attainable R²
/// range does not reach it), the closest attainable width is returned with
/// `attained = false`.
pub fn noise_schedule(
    spec: &FunctionSpec,
    model: NoiseModel,
    n: usize,
    levels: usize,
    pilot_reps: usize,
    seed: u64,
) -> Result<Vec<ScheduleLevel>> {
    if levels < 1 {
        return Err(Error::InvalidParameter("levels must be >= 1"));
    }
    let (xs, var_f) = pilot_setup(spec, model, n, pilot_reps)?;
    let pilot = |w: f64| pilot_mean(spec, model, &xs, pilot_reps, seed, w);

    let mut out: Vec<ScheduleLevel> = Vec::with_capacity(levels);
    let mut prev_w = 0.0;
    for i in 1..=levels {
        let target = 1.0 - (i - 1) as f64 / levels as f64;
        let level = if i == 1 {
            let p = pilot(0.0)?;
            ScheduleLevel {
                width: 0.0,
                target_r2: target,
                pilot_r2: p,
                attained: (p - target).abs() <= R2_TOLERANCE,
            }
        } else {
            calibrate_level(&pilot, target, prev_w, var_f)?
        };
        debug_assert!(level.width >= prev_w);
        prev_w = level.width;
        out.push(level);
    }
    Ok(out)
}

/// Calibrates a single noise half-width so the mean pilot R² lands on
/// `target_r2`, with no lower-width constraint.
///
/// This is the one-off counterpart of [`noise_schedule`]: same pilot
/// construction, same determinism guarantees, same flagging of unattainable
/// targets. `target_r2` must lie in `(0, 1]`.
pub fn calibrate_width(
    spec: &FunctionSpec,
    model: NoiseModel,
    n: usize,
    target_r2: f64,
    pilot_reps: usize,
    seed: u64,
) -> Result<ScheduleLevel> {
    if !(target_r2 > 0.0 && target_r2 <= 1.0) {
        return Err(Error::InvalidParameter("target R^2 must lie in (0, 1]"));
    }
    let (xs, var_f) = pilot_setup(spec, model, n, pilot_reps)?;
    let pilot = |w: f64| pilot_mean(spec, model, &xs, pilot_reps, seed, w);
    calibrate_level(&pilot, target_r2, 0.0, var_f)
}

/// Draws the shared pilot x-sample and the noiseless y-variance used to
/// seed bracket sizes.
///
/// Bracket seeding: uniform y-noise of half-width w has variance w²/3,
/// giving R² ≈ Var f / (Var f + w²/3) and so w ≈ sqrt(3·Var f·(1/target −
/// 1)). Exact only for y-only noise, but a good starting size for every
/// model.
fn pilot_setup(
    spec: &FunctionSpec,
    model: NoiseModel,
    n: usize,
    pilot_reps: usize,
) -> Result<(Vec<f64>, f64)> {
    if pilot_reps < 1 {
        return Err(Error::InvalidParameter("pilot_reps must be >= 1"));
    }
    let xs = sample_xs(spec, n, model.placement())?;
    let var_f = if spec.is_random() {
        0.0
    } else {
        let ys: Vec<f64> =
            xs.iter().map(|&x| spec.evaluate(x).expect("sampled x lies in the domain")).collect();
        let mean = ys.iter().sum::<f64>() / ys.len() as f64;
        ys.iter().map(|y| (y - mean) * (y - mean)).sum::<f64>() / ys.len() as f64
    };
    Ok((xs, var_f))
}

/// Mean pilot R² at half-width `w`. Replicate seeds depend only on `seed`
/// and the replicate index, never on `w`, so the mean is continuous and
/// decreasing in the width.
fn pilot_mean(
    spec: &FunctionSpec,
    model: NoiseModel,
    xs: &[f64],
    pilot_reps: usize,
    seed: u64,
    w: f64,
) -> Result<f64> {
    if spec.is_random() {
        return Ok(0.0);
    }
    let mut sum = 0.0;
    for rep in 0..pilot_reps {
        let data = generate_with_xs(spec, model, xs, w, mix_seed(seed, &[rep as u64]))?;
        let f = |x: f64| spec.evaluate(x).expect("clamped x lies in the domain");
        sum += r_squared_vs_function(&data, f, spec.domain())?;
    }
    Ok(sum / pilot_reps as f64)
}

fn calibrate_level(
    pilot: &dyn Fn(f64) -> Result<f64>,
    target: f64,
    prev_w: f64,
    var_f: f64,
) -> Result<ScheduleLevel> {
    let done = |width: f64, pilot_r2: f64| ScheduleLevel {
        width,
        target_r2: target,
        pilot_r2,
        attained: (pilot_r2 - target).abs() <= R2_TOLERANCE,
    };

    // The previous width is the smallest admissible one (widths must be
    // monotone). If it already reaches or overshoots the target, stop here:
    // widening only lowers R² further.
    let mut lo = prev_w;
    let p_lo = pilot(lo)?;
    if p_lo - target <= BISECT_TOLERANCE {
        return Ok(done(lo, p_lo));
    }

    // Grow the upper end geometrically until the pilot mean falls to or
    // below the target.
    let mut hi = float::sqrt(3.0 * var_f * (1.0 / target - 1.0)).max(lo * 1.25);
    if hi <= 0.0 {
        hi = 1e-3;
    }
    let mut p_hi = pilot(hi)?;
    let mut doublings = 0;
    while p_hi - target > BISECT_TOLERANCE {
        if doublings == MAX_BRACKET_DOUBLINGS {
            // R² floor above the target: report the closest width reached.
            return Ok(done(hi, p_hi));
        }
        lo = hi;
        hi *= 2.0;
        p_hi = pilot(hi)?;
        doublings += 1;
    }
    if (p_hi - target).abs() <= BISECT_TOLERANCE {
        return Ok(done(hi, p_hi));
    }

    // Bisect [lo, hi] with pilot(lo) above and pilot(hi) below the target.
    let (mut mid, mut p_mid) = (hi, p_hi);
    for _ in 0..MAX_BISECT_ITERS {
        mid = 0.5 * (lo + hi);
        p_mid = pilot(mid)?;
        if (p_mid - target).abs() <= BISECT_TOLERANCE {
            return Ok(done(mid, p_mid));
        }
        if p_mid > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(done(mid, p_mid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::FunctionId;

    fn model(id: u8) -> NoiseModel {
        NoiseModel::new(id).unwrap()
    }

    #[test]
    fn first_level_is_noiseless_with_exact_r_squared() {
        let line = FunctionId::Line.spec();
        let sched = noise_schedule(&line, model(1), 200, 4, 2, 17).unwrap();
        assert_eq!(sched.len(), 4);
        assert_eq!(sched[0].width, 0.0);
        assert_eq!(sched[0].target_r2, 1.0);
        assert_eq!(sched[0].pilot_r2, 1.0);
        assert!(sched[0].attained);
    }

    #[test]
    fn line_calibration_matches_the_analytic_width() {
        // For y = x with y-only noise, R² = Var f / (Var f + w²/3), so the
        // width hitting R² = 0.5 is sqrt(3·Var f) = 0.5 for Var f = 1/12.
        let line = FunctionId::Line.spec();
        let sched = noise_schedule(&line, model(1), 2000, 2, 4, 11).unwrap();
        let lv = &sched[1];
        assert_eq!(lv.target_r2, 0.5);
        assert!(lv.attained, "pilot {} vs target 0.5", lv.pilot_r2);
        assert!(
            (lv.width - 0.5).abs() <= 0.025,
            "calibrated width {} strays from the analytic 0.5",
            lv.width
        );
    }

    #[test]
    fn widths_rise_and_pilots_fall_along_the_ladder() {
        let parabola = FunctionId::Parabola.spec();
        let sched = noise_schedule(&parabola, model(4), 500, 10, 3, 23).unwrap();
        assert_eq!(sched.len(), 10);
        for (i, lv) in sched.iter().enumerate() {
            let target = 1.0 - i as f64 / 10.0;
            assert!((lv.target_r2 - target).abs() < 1e-12);
            assert!(lv.attained, "level {i} missed: pilot {}", lv.pilot_r2);
            if i > 0 {
                assert!(lv.width >= sched[i - 1].width);
                assert!(lv.pilot_r2 <= sched[i - 1].pilot_r2 + 1e-9);
            }
        }
    }

    #[test]
    fn x_noise_models_calibrate_too() {
        let line = FunctionId::Line.spec();
        let sched = noise_schedule(&line, model(6), 500, 3, 3, 29).unwrap();
        assert_eq!(sched.len(), 3);
        for (i, lv) in sched.iter().enumerate() {
            assert!(lv.attained, "level {i} missed: pilot {}", lv.pilot_r2);
        }
        assert!(sched[1].width > 0.0 && sched[2].width > sched[1].width);
    }

    #[test]
    fn random_targets_are_flagged_unattainable() {
        let random = FunctionId::Random.spec();
        let sched = noise_schedule(&random, model(1), 100, 5, 2, 31).unwrap();
        for lv in &sched {
            assert_eq!(lv.width, 0.0);
            assert_eq!(lv.pilot_r2, 0.0);
            assert!(!lv.attained);
        }
    }

    #[test]
    fn schedules_are_deterministic() {
        let sine = FunctionId::SineLowFreq.spec();
        let a = noise_schedule(&sine, model(4), 300, 3, 2, 41).unwrap();
        let b = noise_schedule(&sine, model(4), 300, 3, 2, 41).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.width, y.width);
            assert_eq!(x.pilot_r2, y.pilot_r2);
        }
    }

    #[test]
    fn parameters_are_validated() {
        let line = FunctionId::Line.spec();
        assert!(noise_schedule(&line, model(1), 100, 0, 2, 0).is_err());
        assert!(noise_schedule(&line, model(1), 100, 3, 0, 0).is_err());
        assert!(calibrate_width(&line, model(1), 100, 0.0, 2, 0).is_err());
        assert!(calibrate_width(&line, model(1), 100, 1.5, 2, 0).is_err());
    }

    #[test]
    fn single_target_calibration_matches_the_schedule_machinery() {
        // Same analytic check as the two-level schedule: a line under
        // y-noise reaches R² = 0.5 at width sqrt(3·Var f) = 0.5.
        let line = FunctionId::Line.spec();
        let lv = calibrate_width(&line, model(1), 2000, 0.5, 4, 11).unwrap();
        assert!(lv.attained, "pilot {} vs target 0.5", lv.pilot_r2);
        assert!((lv.width - 0.5).abs() <= 0.025, "width {}", lv.width);

        // A full-strength target needs no noise at all.
        let exact = calibrate_width(&line, model(1), 200, 1.0, 2, 3).unwrap();
        assert_eq!(exact.width, 0.0);
        assert!(exact.attained);

        // The random relationship can never reach a positive target.
        let random = FunctionId::Random.spec();
        let flagged = calibrate_width(&random, model(1), 200, 0.5, 2, 3).unwrap();
        assert!(!flagged.attained);
        assert_eq!(flagged.pilot_r2, 0.0);
    }
}
