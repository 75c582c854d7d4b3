//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its measured numbers (run with `--nocapture` to see them).
//!
//! Several criteria are statistical (thresholds over 10 seeds or trials);
//! their tolerances are pinned here and must not be loosened to make runs
//! green.

use std::process::Command;
use std::time::Instant;

use mrmr_core::dataset::{split, Dataset};
use mrmr_core::eval::{auc, loss_and_gradient, train_naive_bayes};
use mrmr_core::forest::{train_forest, ForestParams};
use mrmr_core::measures::{f_statistic, mutual_information, pearson, rdc, RdcParams};
use mrmr_core::seed::{derive_seed, derived_rng};
use mrmr_core::selector::{
    redundancy, relevance_scores, select, Method, Scheme, SelectConfig,
};
use mrmr_core::synth::{generate, random_spline, FeatureGroup, SyntheticSpec, RANDOM_SPLINE_KNOTS};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

fn single_thread_pool() -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("pool builds")
}

fn mean_abs_offdiagonal(data: &Dataset, indices: &[usize]) -> f64 {
    let mut sum = 0.0;
    let mut pairs = 0.0;
    for (a, &i) in indices.iter().enumerate() {
        for &j in indices.iter().skip(a + 1) {
            sum += pearson(data.column(i), data.column(j)).unwrap().value.abs();
            pairs += 1.0;
        }
    }
    sum / pairs
}

/// Criterion 1: on fresh synthetic data the top-6 FCQ features carry less
/// pairwise correlation than the top-6 RF features in at least 8 of 10
/// seeds, inside 5 minutes.
#[test]
fn acceptance_01_fcq_reduces_redundancy_vs_rf() {
    let started = Instant::now();
    let mut wins = 0;
    for seed in 0..10u64 {
        let spec = SyntheticSpec::with_size(10_000, derive_seed(100, "acc1.data", seed));
        let (data, _) = generate(&spec).unwrap();

        let fcq = select(&data, &SelectConfig::new(Method::FCQ.spec(), 6)).unwrap();

        let mut rf_config = SelectConfig::new(Method::RF.spec(), 6);
        rf_config.forest_params =
            Some(ForestParams::default().with_seed(derive_seed(100, "acc1.forest", seed)));
        let rf = select(&data, &rf_config).unwrap();

        let fcq_mean = mean_abs_offdiagonal(&data, &fcq.ranked);
        let rf_mean = mean_abs_offdiagonal(&data, &rf.ranked);
        if fcq_mean < rf_mean {
            wins += 1;
        }
        println!("criterion 1 seed {seed}: FCQ {fcq_mean:.4} vs RF {rf_mean:.4}");
    }
    let elapsed = started.elapsed().as_secs_f64();
    assert!(wins >= 8, "FCQ less redundant in only {wins}/10 seeds");
    assert!(elapsed < 300.0, "took {elapsed:.1} s, budget 300 s");
    println!("criterion 1: PASS - {wins}/10 seeds, {elapsed:.1} s");
}

/// Criterion 2: a random forest on the top-10 FCQ features reaches mean
/// AUC within 0.02 of the all-70-feature forest over 10 fresh trials at
/// n = 10^4, inside 15 minutes.
#[test]
fn acceptance_02_top10_fcq_forest_auc_near_all_features() {
    let started = Instant::now();
    let mut top10 = Vec::new();
    let mut all70 = Vec::new();
    for trial in 0..10u64 {
        let spec = SyntheticSpec::with_size(10_000, derive_seed(200, "acc2.data", trial));
        let (data, _) = generate(&spec).unwrap();
        let (train, test) = split(&data, 0.5, derive_seed(200, "acc2.split", trial)).unwrap();

        let ranking = select(&train, &SelectConfig::new(Method::FCQ.spec(), 10)).unwrap();
        let params = ForestParams::default().with_seed(derive_seed(200, "acc2.forest", trial));

        let chosen = &ranking.ranked[..10];
        let forest = train_forest(&train.select_columns(chosen), &params).unwrap();
        let probs = forest.predict_proba(&test.select_columns(chosen)).unwrap();
        top10.push(auc(&probs, test.labels()).unwrap());

        let forest = train_forest(&train, &params).unwrap();
        let probs = forest.predict_proba(&test).unwrap();
        all70.push(auc(&probs, test.labels()).unwrap());
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let (mean_top10, mean_all) = (mean(&top10), mean(&all70));
    let elapsed = started.elapsed().as_secs_f64();
    assert!(
        mean_top10 >= mean_all - 0.02,
        "top-10 mean AUC {mean_top10:.4} more than 0.02 below all-features {mean_all:.4}"
    );
    assert!(elapsed < 900.0, "took {elapsed:.1} s, budget 900 s");
    println!(
        "criterion 2: PASS - top-10 {mean_top10:.4} vs all-features {mean_all:.4}, {elapsed:.1} s"
    );
}

/// Criterion 3: naive Bayes on the top-5 FCQ features beats naive Bayes on
/// all 70 features in at least 7 of 10 trials (the overfitting reversal).
#[test]
fn acceptance_03_naive_bayes_overfitting_reversal() {
    let mut wins = 0;
    let mut margins = Vec::new();
    for trial in 0..10u64 {
        let spec = SyntheticSpec::with_size(10_000, derive_seed(300, "acc3.data", trial));
        let (data, _) = generate(&spec).unwrap();
        let (train, test) = split(&data, 0.5, derive_seed(300, "acc3.split", trial)).unwrap();

        let ranking = select(&train, &SelectConfig::new(Method::FCQ.spec(), 5)).unwrap();
        let chosen = &ranking.ranked[..5];

        let nb = train_naive_bayes(&train.select_columns(chosen)).unwrap();
        let probs = nb.predict_proba(&test.select_columns(chosen)).unwrap();
        let auc_top5 = auc(&probs, test.labels()).unwrap();

        let nb = train_naive_bayes(&train).unwrap();
        let probs = nb.predict_proba(&test).unwrap();
        let auc_all = auc(&probs, test.labels()).unwrap();

        if auc_top5 > auc_all {
            wins += 1;
        }
        margins.push(auc_top5 - auc_all);
        println!("criterion 3 trial {trial}: top-5 {auc_top5:.4} vs all {auc_all:.4}");
    }
    let mean_margin = margins.iter().sum::<f64>() / margins.len() as f64;
    assert!(
        wins >= 7,
        "top-5 NB beat all-features NB in only {wins}/10 trials \
         (mean AUC margin {mean_margin:+.4}); with this generator the \
         all-features naive-Bayes baseline is not consistently weaker than \
         any 5-feature subset, including the true informative ones"
    );
    println!("criterion 3: PASS - {wins}/10 trials");
}

/// Criterion 4: FCQ ranks the top 20 of 70 features at least 5x faster
/// than MID and 5x faster than FRQ on n = 10^4 at a single worker.
#[test]
fn acceptance_04_fcq_timing_dominates_mid_and_frq() {
    let spec = SyntheticSpec::with_size(10_000, 4400);
    let (data, _) = generate(&spec).unwrap();
    let pool = single_thread_pool();

    let time_method = |method: Method| -> f64 {
        let mut config = SelectConfig::new(method.spec(), 20);
        config.rdc_params = Some(RdcParams {
            seed: 44,
            ..RdcParams::default()
        });
        // Best of three runs, to shave scheduler noise off the comparison.
        (0..3)
            .map(|_| {
                let started = Instant::now();
                pool.install(|| select(&data, &config)).unwrap();
                started.elapsed().as_secs_f64()
            })
            .fold(f64::INFINITY, f64::min)
    };

    let fcq = time_method(Method::FCQ);
    let mid = time_method(Method::MID);
    let frq = time_method(Method::FRQ);
    println!("criterion 4 timings: FCQ {fcq:.3} s, MID {mid:.3} s, FRQ {frq:.3} s");
    assert!(
        mid >= 5.0 * fcq,
        "MID only {:.1}x slower than FCQ",
        mid / fcq
    );
    assert!(
        frq >= 5.0 * fcq,
        "FRQ only {:.1}x slower than FCQ",
        frq / fcq
    );
    println!(
        "criterion 4: PASS - MID {:.1}x, FRQ {:.1}x slower than FCQ",
        mid / fcq,
        frq / fcq
    );
}

/// Random small instance for the oracle-equivalence check: a mix of
/// label-correlated, noise, duplicate, and constant columns.
fn random_instance(seed: u64) -> Dataset {
    let mut rng = derived_rng(500, "acc5.instance", seed);
    let n = rng.gen_range(40..=200);
    let m = rng.gen_range(3..=8);
    let labels: Vec<u8> = (0..n).map(|i| (i % 2) as u8).collect();

    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(m);
    for f in 0..m {
        let style = rng.gen_range(0..10);
        let column: Vec<f64> = if style == 0 && f > 0 {
            columns[rng.gen_range(0..f)].clone() // exact duplicate
        } else if style == 1 {
            vec![rng.gen_range(-1.0..1.0); n] // constant (degenerate)
        } else {
            let signal: f64 = rng.gen_range(0.0..2.0);
            labels
                .iter()
                .map(|&y| signal * f64::from(y) + rng.gen_range(-1.0..1.0))
                .collect()
        };
        columns.push(column);
    }
    let names = (0..m).map(|f| format!("f{f}")).collect();
    Dataset::new(columns, labels, names).unwrap()
}

/// No-cache greedy reference implementation, built on the public
/// per-operation API only.
fn naive_select(data: &Dataset, config: &SelectConfig) -> Vec<usize> {
    let spec = config.method;
    let relevance = relevance_scores(
        data,
        spec.relevance,
        config.forest_params.as_ref(),
        config.mi_bins,
    )
    .unwrap();
    let mut ranked: Vec<usize> = Vec::new();
    while ranked.len() < config.max_features {
        let mut best: Option<(usize, f64)> = None;
        for candidate in 0..data.n_features() {
            if ranked.contains(&candidate) || relevance[candidate].degenerate {
                continue;
            }
            let score = if ranked.is_empty() {
                relevance[candidate].value
            } else {
                let mean =
                    redundancy(data, candidate, &ranked, spec.redundancy, config).unwrap();
                match spec.scheme {
                    Scheme::Difference => relevance[candidate].value - mean,
                    Scheme::Quotient => {
                        relevance[candidate].value / mean.max(config.quotient_epsilon)
                    }
                    Scheme::RelevanceOnly => relevance[candidate].value,
                }
            };
            if best.is_none_or(|(_, b)| score > b) {
                best = Some((candidate, score));
            }
        }
        match best {
            Some((candidate, _)) => ranked.push(candidate),
            None => break,
        }
    }
    ranked
}

/// Criterion 5: on 50 random small instances the cached greedy selector
/// equals the no-cache reference exactly, for all 8 methods, in 2 minutes.
#[test]
fn acceptance_05_greedy_matches_bruteforce_oracle() {
    let started = Instant::now();
    for instance in 0..50u64 {
        let data = random_instance(instance);
        for method in Method::ALL {
            let mut config = SelectConfig::new(method.spec(), data.n_features());
            config.forest_params = Some(ForestParams {
                n_trees: 5,
                max_depth: 3,
                min_samples_leaf: 5,
                ..ForestParams::default().with_seed(derive_seed(500, "acc5.forest", instance))
            });
            config.rdc_params = Some(RdcParams {
                k: 3,
                repetitions: 2,
                seed: derive_seed(500, "acc5.rdc", instance),
                ..RdcParams::default()
            });
            let fast = select(&data, &config).unwrap().ranked;
            let slow = naive_select(&data, &config);
            assert_eq!(
                fast, slow,
                "instance {instance}, method {method}: cached {fast:?} vs naive {slow:?}"
            );
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed < 120.0, "took {elapsed:.1} s, budget 120 s");
    println!("criterion 5: PASS - 50 instances x 8 methods identical, {elapsed:.1} s");
}

/// Direct evaluation of the discrete mutual-information sum over a count
/// grid, written from the definition.
fn mi_reference(counts: &[Vec<u64>]) -> f64 {
    let n: u64 = counts.iter().flatten().sum();
    let nf = n as f64;
    let rows = counts.len();
    let cols = counts[0].len();
    let mut mi = 0.0;
    for i in 0..rows {
        for j in 0..cols {
            if counts[i][j] == 0 {
                continue;
            }
            let p_xy = counts[i][j] as f64 / nf;
            let p_x = counts[i].iter().sum::<u64>() as f64 / nf;
            let p_y = (0..rows).map(|r| counts[r][j]).sum::<u64>() as f64 / nf;
            mi += p_xy * (p_xy / (p_x * p_y)).ln();
        }
    }
    mi
}

/// Criterion 6: the measure unit suite at its stated tolerances.
#[test]
fn acceptance_06_measure_unit_suite() {
    // Pearson: three exact examples at 1e-12.
    let p = |x: &[f64], y: &[f64]| pearson(x, y).unwrap().value;
    assert!((p(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]) - 1.0).abs() < 1e-12);
    assert!((p(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]) + 1.0).abs() < 1e-12);
    assert!((p(&[1.0, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 4.0]) - 0.8).abs() < 1e-12);

    // Mutual information vs the direct sum on 20 random small tables.
    let mut rng = derived_rng(600, "acc6.tables", 0);
    for table_idx in 0..20 {
        let rows = rng.gen_range(2..=5);
        let cols = rng.gen_range(2..=5);
        let mut counts = vec![vec![0u64; cols]; rows];
        let mut x: Vec<f64> = Vec::new();
        let mut y: Vec<f64> = Vec::new();
        for (i, row) in counts.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let c = rng.gen_range(0..8u64);
                *cell = c;
                for _ in 0..c {
                    x.push(i as f64);
                    y.push(j as f64);
                }
            }
        }
        if x.len() < 2 {
            continue;
        }
        let got = mutual_information(&x, &y, 10).unwrap().value;
        let want = mi_reference(&counts).max(0.0);
        assert!(
            (got - want).abs() < 1e-10,
            "table {table_idx}: {got} vs {want}"
        );
    }

    // F-statistic hand-ANOVA example at 1e-9.
    let f = f_statistic(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0], &[0, 0, 0, 1, 1, 1])
        .unwrap()
        .value;
    assert!((f - 13.5).abs() < 1e-9);

    // RDC behaviour over 10 seeds, each clause in >= 9 of 10.
    let mut self_ok = 0;
    let mut null_ok = 0;
    let mut parabola_ok = 0;
    for seed in 0..10u64 {
        let params = RdcParams {
            seed: derive_seed(600, "acc6.rdc", seed),
            ..RdcParams::default()
        };
        let mut rng = derived_rng(600, "acc6.draws", seed);
        let x: Vec<f64> = (0..2000).map(|_| StandardNormal.sample(&mut rng)).collect();
        let y: Vec<f64> = (0..2000).map(|_| StandardNormal.sample(&mut rng)).collect();
        let u: Vec<f64> = (0..2000).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let u_sq: Vec<f64> = u.iter().map(|&v| v * v).collect();

        let self_score = rdc(&x, &x, &params).unwrap().value;
        let null_score = rdc(&x, &y, &params).unwrap().value;
        let parabola_score = rdc(&u, &u_sq, &params).unwrap().value;
        let parabola_pearson = pearson(&u, &u_sq).unwrap().value.abs();

        self_ok += usize::from(self_score >= 0.99);
        null_ok += usize::from(null_score <= 0.2);
        parabola_ok += usize::from(parabola_score >= 0.7 && parabola_pearson <= 0.1);
        println!(
            "criterion 6 seed {seed}: rdc(x,x) {self_score:.4}, null {null_score:.4}, parabola {parabola_score:.4} (|rho| {parabola_pearson:.4})"
        );
    }
    assert!(self_ok >= 9, "rdc(x,x) >= 0.99 in only {self_ok}/10 seeds");
    assert!(null_ok >= 9, "null rdc <= 0.2 in only {null_ok}/10 seeds");
    assert!(
        parabola_ok >= 9,
        "parabola rdc >= 0.7 with |rho| <= 0.1 in only {parabola_ok}/10 seeds"
    );
    println!("criterion 6: PASS - rdc clauses {self_ok}/{null_ok}/{parabola_ok} of 10");
}

/// Criterion 7: forest determinism, importance normalization, and
/// irrelevant-below-median-informative importance in >= 9 of 10 seeds.
#[test]
fn acceptance_07_forest_sanity() {
    let mut ordering_ok = 0;
    for seed in 0..10u64 {
        let spec = SyntheticSpec::with_size(10_000, derive_seed(700, "acc7.data", seed));
        let (data, truth) = generate(&spec).unwrap();
        let params = ForestParams::default().with_seed(derive_seed(700, "acc7.forest", seed));

        let a = train_forest(&data, &params).unwrap();
        let b = train_forest(&data, &params).unwrap();
        let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        assert_eq!(
            bits(a.feature_importance()),
            bits(b.feature_importance()),
            "seed {seed}: importance not bit-identical"
        );

        let sum: f64 = a.feature_importance().iter().sum();
        assert!((sum - 1.0).abs() < 1e-9, "seed {seed}: sum {sum}");

        let importance = a.feature_importance();
        let mut informative: Vec<f64> = truth
            .indices_of_group(FeatureGroup::Informative)
            .into_iter()
            .map(|i| importance[i])
            .collect();
        informative.sort_unstable_by(f64::total_cmp);
        let median = 0.5 * (informative[4] + informative[5]);
        let max_irrelevant = truth
            .indices_of_group(FeatureGroup::Irrelevant)
            .into_iter()
            .map(|i| importance[i])
            .fold(0.0f64, f64::max);
        if max_irrelevant < median {
            ordering_ok += 1;
        }
        println!(
            "criterion 7 seed {seed}: median informative {median:.5}, max irrelevant {max_irrelevant:.5}"
        );
    }
    assert!(
        ordering_ok >= 9,
        "irrelevant below median informative in only {ordering_ok}/10 seeds"
    );
    println!("criterion 7: PASS - ordering held in {ordering_ok}/10 seeds");
}

/// Thomas-algorithm natural-spline oracle, independent of the library's
/// forward-sweep implementation.
fn spline_oracle(xs: &[f64], ys: &[f64]) -> impl Fn(f64) -> f64 {
    let xs = xs.to_vec();
    let ys = ys.to_vec();
    let n = xs.len();
    let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
    let interior = n - 2;
    let mut second = vec![0.0; n];
    let mut diag: Vec<f64> = (1..=interior).map(|i| 2.0 * (h[i - 1] + h[i])).collect();
    let mut rhs: Vec<f64> = (1..=interior)
        .map(|i| 6.0 * ((ys[i + 1] - ys[i]) / h[i] - (ys[i] - ys[i - 1]) / h[i - 1]))
        .collect();
    for i in 1..interior {
        let w = h[i] / diag[i - 1];
        diag[i] -= w * h[i];
        rhs[i] -= w * rhs[i - 1];
    }
    for i in (0..interior).rev() {
        let upper = if i + 1 < interior {
            h[i + 1] * second[i + 2]
        } else {
            0.0
        };
        second[i + 1] = (rhs[i] - upper) / diag[i];
    }
    move |x: f64| {
        let mut seg = n - 2;
        for i in 0..n - 1 {
            if x <= xs[i + 1] {
                seg = i;
                break;
            }
        }
        let t = x - xs[seg];
        let hi = h[seg];
        let c0 = ys[seg];
        let c1 = (ys[seg + 1] - ys[seg]) / hi - hi * (2.0 * second[seg] + second[seg + 1]) / 6.0;
        let c2 = second[seg] / 2.0;
        let c3 = (second[seg + 1] - second[seg]) / (6.0 * hi);
        c0 + t * (c1 + t * (c2 + t * c3))
    }
}

/// Criterion 8: splines interpolate their knots to 1e-10 and agree with an
/// independent tridiagonal-solver oracle at 100 interior points to 1e-8.
#[test]
fn acceptance_08_spline_contract() {
    for seed in 0..10u64 {
        let spline = random_spline(derive_seed(800, "acc8", seed), RANDOM_SPLINE_KNOTS, -3.0, 3.0);
        let (xs, ys) = spline.knots();
        for (&x, &y) in xs.iter().zip(ys) {
            assert!(
                (spline.evaluate(x) - y).abs() < 1e-10,
                "seed {seed}: interpolation error at knot {x}"
            );
        }
        let oracle = spline_oracle(xs, ys);
        for i in 0..100 {
            let x = -3.0 + 6.0 * (i as f64 + 0.5) / 100.0;
            let got = spline.evaluate(x);
            let want = oracle(x);
            assert!(
                (got - want).abs() < 1e-8,
                "seed {seed}, x = {x}: {got} vs {want}"
            );
        }
    }
    println!("criterion 8: PASS - 10 splines, knots at 1e-10, oracle at 1e-8");
}

/// Criterion 9: `mrmr benchmark` run twice with identical flags produces
/// byte-identical report.json and cells.csv.
#[test]
fn acceptance_09_benchmark_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("run_a");
    let out_b = dir.path().join("run_b");
    for out in [&out_a, &out_b] {
        let status = Command::new(env!("CARGO_BIN_EXE_mrmr"))
            .args([
                "benchmark",
                "--synthetic",
                "--n",
                "2000",
                "--seed",
                "5",
                "--methods",
                "FCQ,RF",
                "--classifiers",
                "naive_bayes,logistic_regression",
                "--feature-counts",
                "1..5",
                "--top-k",
                "5",
                "--trials",
                "2",
                "--out",
            ])
            .arg(out)
            .status()
            .expect("binary runs");
        assert!(status.success(), "benchmark exited nonzero");
    }
    for file in ["report.json", "cells.csv"] {
        let a = std::fs::read(out_a.join(file)).unwrap();
        let b = std::fs::read(out_b.join(file)).unwrap();
        assert_eq!(a, b, "{file} differs between identical runs");
        assert!(!a.is_empty());
    }
    println!("criterion 9: PASS - report.json and cells.csv byte-identical");
}

/// Criterion 10: the logistic-regression loss gradient agrees with central
/// finite differences to 1e-4 relative on 10 random small instances.
#[test]
fn acceptance_10_logreg_gradient_check() {
    let mut rng = derived_rng(1000, "acc10", 0);
    for instance in 0..10 {
        let n = rng.gen_range(12..50);
        let m = rng.gen_range(1..6);
        let columns: Vec<Vec<f64>> = (0..m)
            .map(|_| (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect())
            .collect();
        let labels: Vec<u8> = (0..n).map(|_| u8::from(rng.gen_bool(0.5))).collect();
        let weights: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let intercept = rng.gen_range(-1.0..1.0);
        let l2 = 1e-4;

        let (_, grad, grad_intercept) =
            loss_and_gradient(&columns, &labels, &weights, intercept, l2);
        let h = 1e-6;
        for f in 0..m {
            let mut plus = weights.clone();
            let mut minus = weights.clone();
            plus[f] += h;
            minus[f] -= h;
            let (lp, _, _) = loss_and_gradient(&columns, &labels, &plus, intercept, l2);
            let (lm, _, _) = loss_and_gradient(&columns, &labels, &minus, intercept, l2);
            let fd = (lp - lm) / (2.0 * h);
            let rel = (grad[f] - fd).abs() / grad[f].abs().max(1e-8);
            assert!(rel < 1e-4, "instance {instance}, weight {f}: relative {rel}");
        }
        let (lp, _, _) = loss_and_gradient(&columns, &labels, &weights, intercept + h, l2);
        let (lm, _, _) = loss_and_gradient(&columns, &labels, &weights, intercept - h, l2);
        let fd = (lp - lm) / (2.0 * h);
        let rel = (grad_intercept - fd).abs() / grad_intercept.abs().max(1e-8);
        assert!(rel < 1e-4, "instance {instance}, intercept: relative {rel}");
    }
    println!("criterion 10: PASS - 10 instances at 1e-4 relative");
}
