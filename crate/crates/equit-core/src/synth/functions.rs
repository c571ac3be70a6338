//! The benchmark function suite.
//!
//! Twenty-two fixed functional relationships spanning linear, periodic,
//! mixed, exponential, and near-degenerate shapes, plus an independent
//! "random" entry. Each is a piecewise closed form over a fixed domain;
//! evaluation, piece boundaries, and domain restrictions are exact so that
//! generated data and analytic references agree.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::float;
use crate::synth::NoiseModel;

/// Identifier of one suite function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[allow(missing_docs)]
pub enum FunctionId {
    LinearPeriodicLowFreq,
    LinearPeriodicMediumFreq,
    LinearPeriodicHighFreq,
    LinearPeriodicHighFreq2,
    NonFourierCosine,
    CosineHighFreq,
    Cubic,
    CubicYStretched,
    LShaped,
    ExpTwo,
    ExpTen,
    Line,
    Parabola,
    Random,
    NonFourierSine,
    SineLowFreq,
    SineHighFreq,
    Sigmoid,
    VaryingFreqCosine,
    VaryingFreqSine,
    Spike,
    LopsidedLShaped,
}

/// All suite members, in canonical order.
pub const ALL_FUNCTIONS: [FunctionId; 22] = [
    FunctionId::LinearPeriodicLowFreq,
    FunctionId::LinearPeriodicMediumFreq,
    FunctionId::LinearPeriodicHighFreq,
    FunctionId::LinearPeriodicHighFreq2,
    FunctionId::NonFourierCosine,
    FunctionId::CosineHighFreq,
    FunctionId::Cubic,
    FunctionId::CubicYStretched,
    FunctionId::LShaped,
    FunctionId::ExpTwo,
    FunctionId::ExpTen,
    FunctionId::Line,
    FunctionId::Parabola,
    FunctionId::Random,
    FunctionId::NonFourierSine,
    FunctionId::SineLowFreq,
    FunctionId::SineHighFreq,
    FunctionId::Sigmoid,
    FunctionId::VaryingFreqCosine,
    FunctionId::VaryingFreqSine,
    FunctionId::Spike,
    FunctionId::LopsidedLShaped,
];

/// Functions with near-vertical or discontinuous segments, excluded by
/// default from every sampling model except model 1.
pub const STEEP_EXCLUSION_DEFAULT: [FunctionId; 6] = [
    FunctionId::ExpTen,
    FunctionId::LShaped,
    FunctionId::LopsidedLShaped,
    FunctionId::Sigmoid,
    FunctionId::Spike,
    FunctionId::CubicYStretched,
];

impl FunctionId {
    /// Stable machine-readable token (used in CSV output and CLI flags).
    pub fn id(self) -> &'static str {
        match self {
            FunctionId::LinearPeriodicLowFreq => "linear_periodic_low_freq",
            FunctionId::LinearPeriodicMediumFreq => "linear_periodic_medium_freq",
            FunctionId::LinearPeriodicHighFreq => "linear_periodic_high_freq",
            FunctionId::LinearPeriodicHighFreq2 => "linear_periodic_high_freq_2",
            FunctionId::NonFourierCosine => "non_fourier_cosine",
            FunctionId::CosineHighFreq => "cosine_high_freq",
            FunctionId::Cubic => "cubic",
            FunctionId::CubicYStretched => "cubic_y_stretched",
            FunctionId::LShaped => "l_shaped",
            FunctionId::ExpTwo => "exp_2x",
            FunctionId::ExpTen => "exp_10x",
            FunctionId::Line => "line",
            FunctionId::Parabola => "parabola",
            FunctionId::Random => "random",
            FunctionId::NonFourierSine => "non_fourier_sine",
            FunctionId::SineLowFreq => "sine_low_freq",
            FunctionId::SineHighFreq => "sine_high_freq",
            FunctionId::Sigmoid => "sigmoid",
            FunctionId::VaryingFreqCosine => "varying_freq_cosine",
            FunctionId::VaryingFreqSine => "varying_freq_sine",
            FunctionId::Spike => "spike",
            FunctionId::LopsidedLShaped => "lopsided_l_shaped",
        }
    }

    /// Human-readable display name.
    pub fn label(self) -> &'static str {
        match self {
            FunctionId::LinearPeriodicLowFreq => "Linear+Periodic, Low Freq",
            FunctionId::LinearPeriodicMediumFreq => "Linear+Periodic, Medium Freq",
            FunctionId::LinearPeriodicHighFreq => "Linear+Periodic, High Freq",
            FunctionId::LinearPeriodicHighFreq2 => "Linear+Periodic, High Freq 2",
            FunctionId::NonFourierCosine => "Non-Fourier Freq [Low] Cosine",
            FunctionId::CosineHighFreq => "Cosine, High Freq",
            FunctionId::Cubic => "Cubic",
            FunctionId::CubicYStretched => "Cubic, Y-stretched",
            FunctionId::LShaped => "L-shaped",
            FunctionId::ExpTwo => "Exponential [2^x]",
            FunctionId::ExpTen => "Exponential [10^x]",
            FunctionId::Line => "Line",
            FunctionId::Parabola => "Parabola",
            FunctionId::Random => "Random",
            FunctionId::NonFourierSine => "Non-Fourier Freq [Low] Sine",
            FunctionId::SineLowFreq => "Sine, Low Freq",
            FunctionId::SineHighFreq => "Sine, High Freq",
            FunctionId::Sigmoid => "Sigmoid",
            FunctionId::VaryingFreqCosine => "Varying Freq [Medium] Cosine",
            FunctionId::VaryingFreqSine => "Varying Freq [Medium] Sine",
            FunctionId::Spike => "Spike",
            FunctionId::LopsidedLShaped => "Lopsided L-shaped",
        }
    }

    /// Parses a machine token back to an identifier.
    pub fn from_id(s: &str) -> Option<FunctionId> {
        ALL_FUNCTIONS.iter().copied().find(|f| f.id() == s)
    }

    /// Builds the function's full specification.
    pub fn spec(self) -> FunctionSpec {
        let single = |lo: f64, hi: f64, f: fn(f64) -> f64| FunctionSpec {
            id: self,
            domain: (lo, hi),
            pieces: vec![Piece { lo, hi, hi_closed: true, f }],
            is_random: false,
        };
        match self {
            FunctionId::LinearPeriodicLowFreq => single(0.0, 1.0, |x| {
                0.2 * float::sin(4.0 * (2.0 * x - 1.0)) + 1.1 * (2.0 * x - 1.0)
            }),
            FunctionId::LinearPeriodicMediumFreq => {
                single(0.0, 1.0, |x| float::sin(10.0 * PI * x) + x)
            }
            FunctionId::LinearPeriodicHighFreq => single(0.0, 1.0, |x| {
                0.1 * float::sin(10.6 * (2.0 * x - 1.0)) + 1.1 * (2.0 * x - 1.0)
            }),
            FunctionId::LinearPeriodicHighFreq2 => single(0.0, 1.0, |x| {
                0.2 * float::sin(10.6 * (2.0 * x - 1.0)) + 1.1 * (2.0 * x - 1.0)
            }),
            FunctionId::NonFourierCosine => single(0.0, 1.0, |x| float::cos(7.0 * PI * x)),
            FunctionId::CosineHighFreq => single(0.0, 1.0, |x| float::cos(14.0 * PI * x)),
            FunctionId::Cubic => {
                single(-1.3, 1.1, |x| 4.0 * x * x * x + x * x - 4.0 * x)
            }
            FunctionId::CubicYStretched => {
                single(-1.3, 1.1, |x| 41.0 * (4.0 * x * x * x + x * x - 4.0 * x))
            }
            FunctionId::LShaped => FunctionSpec {
                id: self,
                domain: (0.0, 1.0),
                pieces: vec![
                    Piece { lo: 0.0, hi: 0.99, hi_closed: true, f: |x| x / 99.0 },
                    Piece { lo: 0.99, hi: 1.0, hi_closed: true, f: |_| 1.0 },
                ],
                is_random: false,
            },
            FunctionId::ExpTwo => single(0.0, 10.0, float::exp2),
            FunctionId::ExpTen => single(0.0, 10.0, |x| float::powf(10.0, x)),
            FunctionId::Line => single(0.0, 1.0, |x| x),
            FunctionId::Parabola => single(-0.5, 0.5, |x| 4.0 * x * x),
            FunctionId::Random => FunctionSpec {
                id: self,
                domain: (0.0, 1.0),
                pieces: vec![Piece { lo: 0.0, hi: 1.0, hi_closed: true, f: |_| 0.0 }],
                is_random: true,
            },
            FunctionId::NonFourierSine => single(0.0, 1.0, |x| float::sin(9.0 * PI * x)),
            FunctionId::SineLowFreq => single(0.0, 1.0, |x| float::sin(8.0 * PI * x)),
            FunctionId::SineHighFreq => single(0.0, 1.0, |x| float::sin(16.0 * PI * x)),
            FunctionId::Sigmoid => FunctionSpec {
                id: self,
                domain: (0.0, 1.0),
                pieces: vec![
                    // The ramp meets both plateaus exactly, so boundary
                    // ownership is free; giving the endpoints to the
                    // constant pieces keeps those values exact.
                    Piece { lo: 0.0, hi: 0.49, hi_closed: true, f: |_| 0.0 },
                    Piece {
                        lo: 0.49,
                        hi: 0.51,
                        hi_closed: false,
                        f: |x| 50.0 * (x - 0.5) + 0.5,
                    },
                    Piece { lo: 0.51, hi: 1.0, hi_closed: true, f: |_| 1.0 },
                ],
                is_random: false,
            },
            FunctionId::VaryingFreqCosine => {
                single(0.0, 1.0, |x| float::sin(5.0 * PI * x * (1.0 + x)))
            }
            FunctionId::VaryingFreqSine => {
                single(0.0, 1.0, |x| float::sin(6.0 * PI * x * (1.0 + x)))
            }
            FunctionId::Spike => FunctionSpec {
                id: self,
                domain: (0.0, 1.0),
                pieces: vec![
                    Piece { lo: 0.0, hi: 0.05, hi_closed: false, f: |_| 20.0 },
                    Piece { lo: 0.05, hi: 0.1, hi_closed: false, f: |x| -18.0 * x + 1.9 },
                    Piece { lo: 0.1, hi: 1.0, hi_closed: true, f: |x| -x / 9.0 + 1.0 / 9.0 },
                ],
                is_random: false,
            },
            FunctionId::LopsidedLShaped => FunctionSpec {
                id: self,
                domain: (0.0, 1.0),
                pieces: vec![
                    Piece { lo: 0.0, hi: 0.005, hi_closed: false, f: |x| 200.0 * x },
                    Piece {
                        lo: 0.005,
                        hi: 0.01,
                        hi_closed: false,
                        f: |x| -198.0 * x + 1.99,
                    },
                    Piece { lo: 0.01, hi: 1.0, hi_closed: true, f: |x| -x / 99.0 + 1.0 / 99.0 },
                ],
                is_random: false,
            },
        }
    }
}

/// One branch of a piecewise definition. `hi_closed` records whether the
/// right endpoint belongs to this branch or the next.
#[derive(Clone, Copy)]
pub(crate) struct Piece {
    pub lo: f64,
    pub hi: f64,
    pub hi_closed: bool,
    pub f: fn(f64) -> f64,
}

/// A concrete suite function: identifier, domain, and piecewise definition.
#[derive(Clone)]
pub struct FunctionSpec {
    id: FunctionId,
    domain: (f64, f64),
    pieces: Vec<Piece>,
    is_random: bool,
}

impl core::fmt::Debug for FunctionSpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("FunctionSpec")
            .field("id", &self.id)
            .field("domain", &self.domain)
            .field("pieces", &self.pieces.len())
            .field("is_random", &self.is_random)
            .finish()
    }
}

impl FunctionSpec {
    /// The function's identifier.
    pub fn id(&self) -> FunctionId {
        self.id
    }

    /// Display name.
    pub fn label(&self) -> &'static str {
        self.id.label()
    }

    /// `[x_min, x_max]` sampling domain.
    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    /// Whether this is the independent (no functional relationship) entry.
    pub fn is_random(&self) -> bool {
        self.is_random
    }

    pub(crate) fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Evaluates the function at `x`.
    ///
    /// Fails outside the domain and for the random entry, which has no
    /// functional value.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        if self.is_random {
            return Err(Error::InvalidParameter("the random entry has no functional value"));
        }
        if !(x >= self.domain.0 && x <= self.domain.1) {
            return Err(Error::OutOfDomain);
        }
        for p in &self.pieces {
            if x < p.hi || (p.hi_closed && x <= p.hi) {
                return Ok((p.f)(x));
            }
        }
        // x can only be the domain's right endpoint here when the last
        // piece excludes it; the suite never defines such a spec.
        let last = self.pieces.last().expect("specs always have pieces");
        Ok((last.f)(x))
    }

    /// Restricts the sampling domain (used by suite construction).
    pub(crate) fn restricted_to(&self, lo: f64, hi: f64) -> FunctionSpec {
        debug_assert!(lo >= self.domain.0 && hi <= self.domain.1 && lo < hi);
        FunctionSpec { id: self.id, domain: (lo, hi), pieces: self.pieces.clone(), is_random: self.is_random }
    }
}

/// The suite used for a given sampling model, with the default exclusions.
///
/// Model 1 uses all 22 entries verbatim. The other models drop the steep and
/// discontinuous entries in [`STEEP_EXCLUSION_DEFAULT`] and restrict
/// `Exponential [2^x]` to `[0, 2]`, whose curve is otherwise dominated by an
/// effectively vertical right edge.
pub fn function_suite(model: NoiseModel) -> Vec<FunctionSpec> {
    function_suite_with_exclusions(model, &STEEP_EXCLUSION_DEFAULT)
}

/// Like [`function_suite`] but with a caller-chosen exclusion set for
/// models 2-6.
pub fn function_suite_with_exclusions(
    model: NoiseModel,
    excluded: &[FunctionId],
) -> Vec<FunctionSpec> {
    ALL_FUNCTIONS
        .iter()
        .filter(|f| model.id() == 1 || !excluded.contains(f))
        .map(|f| {
            let spec = f.spec();
            if model.id() != 1 && *f == FunctionId::ExpTwo {
                spec.restricted_to(0.0, 2.0)
            } else {
                spec
            }
        })
        .collect()
}
