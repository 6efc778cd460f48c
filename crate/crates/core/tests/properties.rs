use moment_atlas::center::{decide, DecideOptions, Decision, OdeSystem};
use moment_atlas::curve_model::SampledPath;
use moment_atlas::fixtures::{figure_eight, fixture, random_closed_word, realize_closed, FixtureParams};
use moment_atlas::moments::{face_coefficients, moment_quadrature, moment_via_homology, MomentSpec};
use moment_atlas::planar_geometry::extract_faces;
use moment_atlas::projection::{expansion_check, sample_direction};
use moment_atlas::report::{analyze, AnalysisReport, AnalyzeOptions};
use proptest::prelude::*;

fn spatial_loop(points: &[[f64; 3]]) -> SampledPath {
    let mut samples: Vec<(f64, Vec<f64>)> = vec![(0.0, vec![0.0; 3])];
    for (i, p) in points.iter().enumerate() {
        samples.push(((i + 1) as f64, p.to_vec()));
    }
    samples.push(((points.len() + 1) as f64, vec![0.0; 3]));
    SampledPath::new(3, samples, true).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn expansion_identity_holds_for_sampled_directions(
        seed in 0u64..1_000,
        points in prop::collection::vec(prop::array::uniform3(-1.0f64..1.0), 2..6),
        degree in 1usize..7,
    ) {
        let path = spatial_loop(&points);
        let v = sample_direction(seed, 3).unwrap();
        prop_assert!(expansion_check(&path, &v, degree, 1e-9).unwrap());
    }

    #[test]
    fn pipelines_agree_on_random_words(seed in 0u64..500, len in 1usize..12, d1 in 0u32..5, d2 in 0u32..5, i in 1usize..3) {
        let complex = figure_eight().unwrap();
        let faces = extract_faces(&complex).unwrap();
        let word = random_closed_word(&complex, seed, len);
        prop_assume!(!word.0.is_empty());
        let path = realize_closed(&word, &complex).unwrap();
        let coeffs = face_coefficients(&path, &faces).unwrap();
        let spec = MomentSpec::new(vec![d1, d2], i).unwrap();
        let q = moment_quadrature(&path, &spec).unwrap();
        let h = moment_via_homology(&faces, &coeffs, &spec).unwrap();
        prop_assert!((q - h).abs() <= 1e-10 * (1.0 + q.abs()), "{} vs {}", q, h);
    }

    #[test]
    fn verdicts_never_contradict_moments(seed in 0u64..200, len in 1usize..8) {
        let complex = figure_eight().unwrap();
        let word = random_closed_word(&complex, seed, len);
        prop_assume!(!word.0.is_empty());
        let path = realize_closed(&word, &complex).unwrap();
        let options = DecideOptions { residual_v0: vec![0.01], steps_per_unit: 1 << 10, ..DecideOptions::default() };
        let verdict = decide(&OdeSystem::new(path).unwrap(), &complex, &options).unwrap();
        match verdict.decision {
            Decision::UniversalCenter => prop_assert!(verdict.witness.is_none()),
            Decision::NotCenter => prop_assert!(verdict.witness.is_some()),
            Decision::Undecided => {}
        }
    }
}

#[test]
fn degree_above_the_bound_still_vanishes() {
    let fx = fixture("figure_eight", &FixtureParams::default()).unwrap();
    let path = &fx.paths[1];
    let report = analyze(&fx.complex, &fx.paths, &AnalyzeOptions::default()).unwrap();
    let n = report.bound.value() as u32;
    for (d1, d2) in [(n + 4, 0), (n + 1, 3), (2, n + 2)] {
        for i in 1..=2 {
            let spec = MomentSpec::new(vec![d1, d2], i).unwrap();
            let value = moment_quadrature(path, &spec).unwrap();
            assert!(value.abs() < 1e-8, "{spec}: {value}");
        }
    }
}

#[test]
fn reports_round_trip_for_every_fixture() {
    let params = FixtureParams { k: 1, n: 3, segments: 16 };
    for name in moment_atlas::fixtures::NAMES {
        let fx = fixture(name, &params).unwrap();
        let options = AnalyzeOptions {
            cubes: fx.cubes.as_ref().map(|c| c.cubes.clone()),
            max_degree: 2,
            ..AnalyzeOptions::default()
        };
        let Ok(report) = analyze(&fx.complex, &fx.paths, &options) else { continue };
        let back = AnalysisReport::from_json(&report.to_json()).unwrap();
        assert_eq!(back, report, "{name}");
    }
}
