//! End-to-end checks across generation, grid statistics, and estimators.

use equit_core::estimators::{distance_correlation, mi_linfoot_score, KraskovParams};
use equit_core::mic::{mic, mic_exhaustive_low_rows, mic_variant, MicParams, MicVariant};
use equit_core::stats::pearson_squared;
use equit_core::synth::{generate, FunctionId, NoiseModel, ALL_FUNCTIONS};
use equit_core::Dataset;

#[test]
fn scores_stay_in_range_and_variants_stay_ordered_across_the_suite() {
    let params = MicParams::default();
    let knn = KraskovParams::default();
    let model = NoiseModel::new(4).unwrap();
    for (i, id) in ALL_FUNCTIONS.iter().enumerate() {
        let data = generate(&id.spec(), model, 120, 0.15, 1000 + i as u64).unwrap();

        let full = mic(&data, &params).unwrap();
        let m1 = mic_variant(&data, &params, MicVariant::Mic1).unwrap();
        let m2 = mic_variant(&data, &params, MicVariant::Mic2).unwrap();
        let m3 = mic_variant(&data, &params, MicVariant::Mic3).unwrap();
        let refined = mic_exhaustive_low_rows(&data, &params).unwrap();
        let dcor = distance_correlation(&data);
        let linfoot = mi_linfoot_score(&data, &knn).unwrap();
        let r2 = pearson_squared(&data);

        for (name, v) in
            [("mic", full), ("mic1", m1), ("mic_ex", refined), ("dcor", dcor), ("r2", r2)]
        {
            assert!((0.0..=1.0).contains(&v), "{name}({}) = {v}", id.id());
        }
        assert!((0.0..1.0).contains(&linfoot), "mi_linfoot({}) = {linfoot}", id.id());
        assert!(full <= m2 + 1e-12, "mic {full} > mic2 {m2} on {}", id.id());
        assert!(m1 <= m3 + 1e-12, "mic1 {m1} > mic3 {m3} on {}", id.id());
    }
}

#[test]
fn grid_statistics_are_rank_invariant_on_generated_data() {
    // Strictly increasing maps on either axis preserve coordinate order and
    // tie structure, which is all the grid statistics may depend on.
    let params = MicParams::default();
    let model = NoiseModel::new(5).unwrap();
    for id in [FunctionId::Parabola, FunctionId::SineLowFreq, FunctionId::Line] {
        let data = generate(&id.spec(), model, 64, 0.2, 7).unwrap();
        let mapped = Dataset::new(
            data.points().iter().map(|&(x, y)| (x * x * x, y.exp())).collect(),
        )
        .unwrap();
        for (a, b) in [
            (mic(&data, &params).unwrap(), mic(&mapped, &params).unwrap()),
            (
                mic_variant(&data, &params, MicVariant::Mic1).unwrap(),
                mic_variant(&mapped, &params, MicVariant::Mic1).unwrap(),
            ),
            (
                mic_variant(&data, &params, MicVariant::Mic2).unwrap(),
                mic_variant(&mapped, &params, MicVariant::Mic2).unwrap(),
            ),
            (
                mic_variant(&data, &params, MicVariant::Mic3).unwrap(),
                mic_variant(&mapped, &params, MicVariant::Mic3).unwrap(),
            ),
            (
                mic_exhaustive_low_rows(&data, &params).unwrap(),
                mic_exhaustive_low_rows(&mapped, &params).unwrap(),
            ),
        ] {
            assert!((a - b).abs() <= 1e-12, "{}: {a} vs {b} after transform", id.id());
        }
    }
}

#[test]
fn noiseless_line_saturates_every_dependence_measure() {
    let line = FunctionId::Line.spec();
    let data = generate(&line, NoiseModel::new(1).unwrap(), 200, 0.0, 3).unwrap();
    assert_eq!(mic(&data, &MicParams::default()).unwrap(), 1.0);
    assert!((distance_correlation(&data) - 1.0).abs() < 1e-9);
    assert!((pearson_squared(&data) - 1.0).abs() < 1e-12);
    let linfoot = mi_linfoot_score(&data, &KraskovParams::default()).unwrap();
    assert!(linfoot > 0.9, "kNN Linfoot score on a noiseless line: {linfoot}");
}

#[test]
fn high_frequency_sine_separates_mic_from_pearson() {
    let sine = FunctionId::SineHighFreq.spec();
    let data = generate(&sine, NoiseModel::new(1).unwrap(), 400, 0.0, 5).unwrap();
    let r2 = pearson_squared(&data);
    let score = mic(&data, &MicParams::default()).unwrap();
    assert!(r2 < 0.05, "pearson^2 on a centered sinusoid: {r2}");
    assert!(score > 0.8, "mic on a noiseless sinusoid: {score}");
}

#[test]
fn independent_noise_scores_low_everywhere() {
    let random = FunctionId::Random.spec();
    let data = generate(&random, NoiseModel::new(1).unwrap(), 300, 0.0, 11).unwrap();
    let score = mic(&data, &MicParams::default()).unwrap();
    assert!(score < 0.35, "mic on independent data: {score}");
    assert!(distance_correlation(&data) < 0.2);
    assert!(pearson_squared(&data) < 0.05);
}
