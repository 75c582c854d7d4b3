//! Cross-module pipeline checks: generate -> select -> evaluate, plus the
//! CSV round trip through the selector.

use mrmr_core::dataset::{load_csv, write_csv};
use mrmr_core::forest::ForestParams;
use mrmr_core::measures::RdcParams;
use mrmr_core::selector::{select, Method, SelectConfig};
use mrmr_core::synth::{generate, FeatureGroup, SyntheticSpec};

fn spec(n: usize, seed: u64) -> SyntheticSpec {
    SyntheticSpec::with_size(n, seed)
}

fn config_for(method: Method, top_k: usize, seed: u64) -> SelectConfig {
    let mut config = SelectConfig::new(method.spec(), top_k);
    config.forest_params = Some(ForestParams {
        n_trees: 15,
        min_samples_leaf: 20,
        ..ForestParams::default().with_seed(seed)
    });
    config.rdc_params = Some(RdcParams {
        repetitions: 3,
        seed,
        ..RdcParams::default()
    });
    config
}

#[test]
fn all_eight_methods_produce_valid_rankings() {
    let (data, _) = generate(&spec(1200, 42)).unwrap();
    for method in Method::ALL {
        let result = select(&data, &config_for(method, 10, 42)).unwrap();
        assert_eq!(result.ranked.len(), 10, "{method}");
        assert_eq!(result.steps.len(), 10, "{method}");
        let mut sorted = result.ranked.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 10, "{method}: duplicate indices");
        for (step, &feature) in result.steps.iter().zip(&result.ranked) {
            assert_eq!(step.feature, feature, "{method}: steps misaligned");
            assert!(step.score.is_finite(), "{method}: non-finite score");
        }
        assert_eq!(result.steps[0].mean_redundancy, 0.0, "{method}");
    }
}

#[test]
fn fcq_keeps_irrelevant_features_out_of_the_top() {
    let (data, truth) = generate(&spec(4000, 7)).unwrap();
    let result = select(&data, &config_for(Method::FCQ, 10, 7)).unwrap();
    let irrelevant = truth.indices_of_group(FeatureGroup::Irrelevant);
    let picked_irrelevant = result
        .ranked
        .iter()
        .filter(|i| irrelevant.contains(i))
        .count();
    assert!(
        picked_irrelevant <= 2,
        "{picked_irrelevant} irrelevant features in the FCQ top 10: {:?}",
        result.ranked
    );
}

#[test]
fn selection_is_stable_across_csv_round_trip() {
    let (data, _) = generate(&spec(600, 9)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("data.csv");
    write_csv(&data, &path, "label").unwrap();
    let reloaded = load_csv(&path, "label").unwrap();

    let a = select(&data, &config_for(Method::FCQ, 8, 9)).unwrap();
    let b = select(&reloaded, &config_for(Method::FCQ, 8, 9)).unwrap();
    assert_eq!(a.ranked, b.ranked);
    for (x, y) in a.steps.iter().zip(&b.steps) {
        assert_eq!(x.score.to_bits(), y.score.to_bits());
    }
}
