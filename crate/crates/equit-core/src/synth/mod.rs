//! Synthetic benchmark data: the function suite, the six sampling/noise
//! models, the two-block `D_alpha` family, and noise-level calibration.
//!
//! A benchmark trial is assembled in three steps, all deterministic given a
//! seed:
//!
//! 1. pick a [`FunctionSpec`] and place `n` x-positions on its domain, either
//!    evenly along the curve's arc length or evenly along the x-range
//!    ([`sample_xs`]);
//! 2. evaluate the function (or draw independent ys for the random entry)
//!    and perturb the coordinates designated by the [`NoiseModel`] with
//!    uniform `U[-w, w]` noise ([`apply_noise`], or [`generate`] for the
//!    whole pipeline);
//! 3. calibrate the half-widths so that mean coefficients of determination
//!    land on an evenly spaced target ladder ([`noise_schedule`]).

mod functions;
mod sample;
mod schedule;

pub use functions::{
    function_suite, function_suite_with_exclusions, FunctionId, FunctionSpec, ALL_FUNCTIONS,
    STEEP_EXCLUSION_DEFAULT,
};
pub use sample::{apply_noise, generate, generate_with_xs, sample_d_alpha, sample_xs};
pub use schedule::{calibrate_width, noise_schedule, ScheduleLevel, R2_TOLERANCE};

use crate::error::{Error, Result};

/// How x-positions are placed on the function's domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    /// Evenly spaced in arc length along the curve `(x, f(x))`.
    AlongCurve,
    /// Evenly spaced along the x-range.
    AlongXRange,
}

/// Which coordinates receive uniform noise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoiseAxes {
    /// Perturb y only.
    YOnly,
    /// Perturb x and y independently with the same half-width.
    Both,
    /// Perturb x only.
    XOnly,
}

/// One of the six sampling/perturbation regimes.
///
/// The identifier fixes both the placement and the noised axes:
///
/// | id | placement   | noise   |
/// |----|-------------|---------|
/// | 1  | along curve | y only  |
/// | 2  | along curve | both    |
/// | 3  | along curve | x only  |
/// | 4  | x-range     | y only  |
/// | 5  | x-range     | both    |
/// | 6  | x-range     | x only  |
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NoiseModel(u8);

impl NoiseModel {
    /// Creates a model from its identifier (1 through 6).
    pub fn new(id: u8) -> Result<NoiseModel> {
        if (1..=6).contains(&id) {
            Ok(NoiseModel(id))
        } else {
            Err(Error::InvalidParameter("noise model id must be 1 through 6"))
        }
    }

    /// The model identifier, 1 through 6.
    pub fn id(self) -> u8 {
        self.0
    }

    /// Point placement for this model.
    pub fn placement(self) -> Placement {
        if self.0 <= 3 {
            Placement::AlongCurve
        } else {
            Placement::AlongXRange
        }
    }

    /// Noised coordinates for this model.
    pub fn noise_axes(self) -> NoiseAxes {
        match self.0 % 3 {
            1 => NoiseAxes::YOnly,
            2 => NoiseAxes::Both,
            _ => NoiseAxes::XOnly,
        }
    }
}
