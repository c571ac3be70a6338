//! Statistic selection: the token grammar shared by CLI flags, config
//! files, and sweep output.

use equit_core::estimators::{distance_correlation, mi_linfoot_score, KraskovParams};
use equit_core::mic::{mic, mic_exhaustive_low_rows, mic_variant, MicParams, MicVariant};
use equit_core::stats::pearson_squared;
use equit_core::{Dataset, Result};

use crate::AppError;

/// One computable statistic with its parameters resolved.
///
/// Tokens: `mic`, `mic1`, `mic2`, `mic3`, `mic_ex`, `mi<k>` (for example
/// `mi6`), `dcor`, `pearson`. The grid statistics carry the grid-search
/// parameters they were configured with; `mi<k>` fixes the neighbor count.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Statistic {
    /// Maximal information coefficient.
    Mic(MicParams),
    /// Equipartition-only ablation, normalized.
    Mic1(MicParams),
    /// Unnormalized characteristic-matrix maximum.
    Mic2(MicParams),
    /// Equipartition-only ablation, unnormalized.
    Mic3(MicParams),
    /// MIC with the exhaustive low-row refinement.
    MicExhaustive(MicParams),
    /// k-nearest-neighbor mutual information on the squared Linfoot scale.
    MiLinfoot(usize),
    /// Distance correlation.
    DCor,
    /// Squared Pearson correlation.
    PearsonSq,
}

impl Statistic {
    /// Parses one token. `params` seeds the grid statistics; `default_k`
    /// resolves a bare `mi`, while `mi<k>` pins its own neighbor count.
    pub fn parse(
        token: &str,
        params: MicParams,
        default_k: usize,
    ) -> std::result::Result<Statistic, AppError> {
        let t = token.trim();
        Ok(match t {
            "mic" => Statistic::Mic(params),
            "mic1" => Statistic::Mic1(params),
            "mic2" => Statistic::Mic2(params),
            "mic3" => Statistic::Mic3(params),
            "mic_ex" => Statistic::MicExhaustive(params),
            "mi" if default_k >= 1 => Statistic::MiLinfoot(default_k),
            "dcor" => Statistic::DCor,
            "pearson" => Statistic::PearsonSq,
            _ => {
                let k = t
                    .strip_prefix("mi")
                    .and_then(|rest| rest.parse::<usize>().ok())
                    .filter(|&k| k >= 1);
                match k {
                    Some(k) => Statistic::MiLinfoot(k),
                    None => {
                        return Err(AppError::Config(format!(
                            "unknown statistic {t:?}; valid tokens: mic, mic1, mic2, mic3, \
                             mic_ex, mi<k> (e.g. mi6), dcor, pearson"
                        )))
                    }
                }
            }
        })
    }

    /// Parses a comma-separated token list.
    pub fn parse_list(
        tokens: &str,
        params: MicParams,
        default_k: usize,
    ) -> std::result::Result<Vec<Statistic>, AppError> {
        let list: Vec<Statistic> = tokens
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| Statistic::parse(t, params, default_k))
            .collect::<std::result::Result<_, _>>()?;
        if list.is_empty() {
            return Err(AppError::Config("no statistics selected".into()));
        }
        Ok(list)
    }

    /// The statistic's token, as written in CSV output.
    pub fn id(&self) -> String {
        match self {
            Statistic::Mic(_) => "mic".into(),
            Statistic::Mic1(_) => "mic1".into(),
            Statistic::Mic2(_) => "mic2".into(),
            Statistic::Mic3(_) => "mic3".into(),
            Statistic::MicExhaustive(_) => "mic_ex".into(),
            Statistic::MiLinfoot(k) => format!("mi{k}"),
            Statistic::DCor => "dcor".into(),
            Statistic::PearsonSq => "pearson".into(),
        }
    }

    /// Human-readable parameter list (`;`-separated so it nests in CSV).
    pub fn params_string(&self) -> String {
        let grid = |p: &MicParams| match p.b_override {
            Some(b) => format!("alpha={};c={};b={}", p.alpha, p.c, b),
            None => format!("alpha={};c={}", p.alpha, p.c),
        };
        match self {
            Statistic::Mic(p)
            | Statistic::Mic1(p)
            | Statistic::Mic2(p)
            | Statistic::Mic3(p)
            | Statistic::MicExhaustive(p) => grid(p),
            Statistic::MiLinfoot(k) => format!("k={k}"),
            Statistic::DCor | Statistic::PearsonSq => String::new(),
        }
    }

    /// Computes the statistic on one dataset.
    ///
    /// Scores are `[0, 1]` for the normalized grid statistics, distance
    /// correlation, and squared Pearson; `[0, 1)` for `mi<k>`; `mic2`/`mic3`
    /// are unnormalized information values in bits.
    pub fn compute(&self, data: &Dataset) -> Result<f64> {
        match *self {
            Statistic::Mic(p) => mic(data, &p),
            Statistic::Mic1(p) => mic_variant(data, &p, MicVariant::Mic1),
            Statistic::Mic2(p) => mic_variant(data, &p, MicVariant::Mic2),
            Statistic::Mic3(p) => mic_variant(data, &p, MicVariant::Mic3),
            Statistic::MicExhaustive(p) => mic_exhaustive_low_rows(data, &p),
            Statistic::MiLinfoot(k) => {
                mi_linfoot_score(data, &KraskovParams { k, ..KraskovParams::default() })
            }
            Statistic::DCor => Ok(distance_correlation(data)),
            Statistic::PearsonSq => Ok(pearson_squared(data)),
        }
    }
}
