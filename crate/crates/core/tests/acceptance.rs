//! One test per acceptance criterion. Each prints a single PASS/FAIL line;
//! run with `--nocapture` to see them.

mod common;

use std::time::{Duration, Instant};

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sssom::data::{kfold_split, load_arff, load_csv, synthetic::SubspaceClusters, Dataset};
use sssom::experiment::{
    best_per_fold, mean_std, replay_run, results_csv, run_sweep, table_ranges, LhsDesign, Scale,
    SweepConfig,
};
use sssom::inference::{accuracy, classify_all};
use sssom::kernel::{activation, compute_relevances, weighted_distance};
use sssom::train::{Phase, ResetReport};
use sssom::{HyperParams, Model, Outcome, SomMap, TrainObserver, TrainState};

const CASES: usize = 1000;

// criterion 1
const KERNEL_BUDGET: Duration = Duration::from_secs(10);
const EUCLID_TOL: f64 = 1e-12;
const SATURATION: f64 = 1e-12;
// criterion 2
const STRUCTURE_BUDGET: Duration = Duration::from_secs(30);
// criterion 5
const SEPARATION_BUDGET: Duration = Duration::from_secs(120);
const SEPARATION_MIN_ACC: f64 = 0.90;
// criterion 7
const GLASS_BUDGET: Duration = Duration::from_secs(15 * 60);
const GLASS_REFERENCE: f64 = 0.714;
const GLASS_TOL: f64 = 0.10;

fn synthetic(seed: u64) -> Dataset {
    SubspaceClusters::default()
        .generate(seed)
        .unwrap()
        .normalize()
        .unwrap()
}

fn glass() -> Dataset {
    load_arff(data_path("glass.arff"))
        .unwrap()
        .normalize()
        .unwrap()
}

fn blobs() -> Dataset {
    load_csv(data_path("blobs.csv"), Some("kind"))
        .unwrap()
        .normalize()
        .unwrap()
}

/// Past this point the logistic no longer resolves distinct inputs in f64.
fn saturated(w: f64) -> bool {
    w < SATURATION || 1.0 - w < SATURATION
}

#[test]
fn criterion_1_math_kernels() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    let mut failures: Vec<String> = Vec::new();

    let mut bad = 0;
    for _ in 0..CASES {
        let m = rng.gen_range(1..12);
        let node = random_node(&mut rng, m, 3);
        let x: Vec<f64> = (0..m).map(|_| rng.gen_range(-0.5..1.5)).collect();
        let a = activation(&x, &node, EPS).unwrap();
        if !(0.0..1.0).contains(&a) || (a - oracle_activation(&x, &node)).abs() > 1e-12 {
            bad += 1;
        }
    }
    if bad > 0 {
        failures.push(format!("activation: {bad} cases"));
    }

    let mut bad = 0;
    for _ in 0..CASES {
        let m = rng.gen_range(2..12);
        let dist: Vec<f64> = (0..m)
            .map(|_| rng.gen::<f64>() * rng.gen::<f64>())
            .collect();
        let slope = rng.gen_range(0.01..0.1);
        let w = compute_relevances(&dist, slope);
        let in_range = w.iter().all(|v| (0.0..=1.0).contains(v));
        let mut ordered = true;
        for i in 0..m {
            for j in 0..m {
                if dist[i] < dist[j] && !(w[i] > w[j] || (w[i] == w[j] && saturated(w[i]))) {
                    ordered = false;
                }
            }
        }
        if !in_range || !ordered {
            bad += 1;
        }
    }
    if bad > 0 {
        failures.push(format!("relevance: {bad} cases"));
    }

    let mut worst: f64 = 0.0;
    for _ in 0..CASES {
        let m = rng.gen_range(1..20);
        let mut node = random_node(&mut rng, m, 0);
        node.relevance = vec![1.0; m];
        let x: Vec<f64> = (0..m).map(|_| rng.gen()).collect();
        let d = weighted_distance(&x, &node).unwrap();
        worst = worst.max((d - oracle_euclidean(&x, &node.center)).abs());
    }
    if worst > EUCLID_TOL {
        failures.push(format!("euclidean gap {worst:e}"));
    }

    let mut bad = 0;
    for _ in 0..CASES {
        let m = rng.gen_range(1..8);
        let n = rng.gen_range(1..30);
        let mut nodes = random_map(&mut rng, m, n, 3).nodes().to_vec();
        let x: Vec<f64> = if rng.gen_bool(0.2) {
            // exact tie: a duplicated center probed at that center
            let dup = nodes[rng.gen_range(0..n)].clone();
            let x = dup.center.clone();
            nodes.push(dup);
            x
        } else {
            (0..m).map(|_| rng.gen()).collect()
        };
        let map = SomMap::from_parts(m, nodes.len(), nodes, &[], 0).unwrap();
        let (w, _) = map.find_winner(&x).unwrap();
        if w != oracle_winner(map.nodes(), &x) {
            bad += 1;
        }
    }
    if bad > 0 {
        failures.push(format!("find_winner: {bad} cases"));
    }

    let mut bad = 0;
    for _ in 0..CASES {
        let m = rng.gen_range(1..8);
        let n = rng.gen_range(1..25);
        let minwd = rng.gen_range(0.0..0.6);
        let mut map = random_map(&mut rng, m, n, 3);
        map = SomMap::from_parts(m, n + 5, map.nodes().to_vec(), &[], 0).unwrap();
        map.rebuild_connections(minwd);
        if map.connections() != oracle_connections(map.nodes(), minwd) {
            bad += 1;
            continue;
        }
        let x: Vec<f64> = (0..m).map(|_| rng.gen()).collect();
        let label = if rng.gen_bool(0.5) {
            Some(sssom::ClassId(rng.gen_range(0..3)))
        } else {
            None
        };
        map.insert_node(&x, label, minwd).unwrap();
        if map.connections() != oracle_connections(map.nodes(), minwd) {
            bad += 1;
        }
    }
    if bad > 0 {
        failures.push(format!("connections: {bad} cases"));
    }

    let elapsed = start.elapsed();
    if elapsed > KERNEL_BUDGET {
        failures.push(format!("took {elapsed:?}"));
    }
    let detail = if failures.is_empty() {
        format!("5 x {CASES} cases in {elapsed:.2?}")
    } else {
        failures.join("; ")
    };
    verdict(1, "math kernels", failures.is_empty(), &detail);
}

#[derive(Default)]
struct Audit {
    n_max: usize,
    minwd: f64,
    steps: u64,
    resets: u64,
    convergence_resets: u64,
    removed: u64,
    insertions_at_convergence: Option<u64>,
    last_len: usize,
    violations: Vec<String>,
}

impl Audit {
    fn flag(&mut self, what: String) {
        if self.violations.len() < 5 {
            self.violations.push(what);
        }
    }
}

impl TrainObserver for Audit {
    fn after_step(&mut self, s: &TrainState) {
        self.steps += 1;
        let len = s.map.len();
        if len == 0 || len > self.n_max {
            self.flag(format!("node count {len} with budget {}", self.n_max));
        }
        if s.phase == Phase::Convergence {
            let at = *self
                .insertions_at_convergence
                .get_or_insert(s.stats.insertions);
            if s.stats.insertions != at || len > self.last_len {
                self.flag(format!("growth during convergence at t={}", s.t));
            }
        }
        self.last_len = len;
    }

    fn after_reset(&mut self, s: &TrainState, r: &ResetReport) {
        self.resets += 1;
        self.removed += r.removed_wins.len() as u64;
        if r.phase == Phase::Convergence {
            self.convergence_resets += 1;
        }
        if s.map.nodes().iter().any(|n| n.wins != 0) || s.map.nwins() != 0 {
            self.flag("win counters survived a reset".into());
        }
        if r.removed_wins.iter().any(|&w| w as f64 >= r.threshold) {
            self.flag(format!("removed a node at or above {}", r.threshold));
        }
        if !r.guard_kept && r.kept_wins.iter().any(|&w| (w as f64) < r.threshold) {
            self.flag("kept a node below the threshold".into());
        }
        if r.guard_kept && r.kept_wins.len() != 1 {
            self.flag("guard kept more than one node".into());
        }
        if s.map.connections() != oracle_connections(s.map.nodes(), self.minwd) {
            self.flag("connections differ from the predicate after reset".into());
        }
        self.last_len = s.map.len();
    }
}

#[test]
fn criterion_2_structural_invariants() {
    let start = Instant::now();
    let fixtures = [
        ("synthetic", synthetic(2)),
        ("glass", glass()),
        ("blobs", blobs()),
    ];
    let mut failures: Vec<String> = Vec::new();
    let (mut runs, mut resets, mut removed) = (0, 0, 0);
    for (name, ds) in &fixtures {
        let mut sets = sssom::experiment::lhs_sample(&table_ranges(), 4, 21, ds.len()).unwrap();
        // a small budget and short cycles so the budget and removal paths fire
        sets.push(HyperParams {
            a_t: 0.99,
            age_wins: 25,
            lp: 0.04,
            epochs: 5,
            n_max: 6,
            seed: 3,
            ..HyperParams::default()
        });
        for (i, p) in sets.iter().enumerate() {
            let mut p = p.clone();
            p.epochs = p.epochs.min(30);
            let mut audit = Audit {
                n_max: p.n_max,
                minwd: p.minwd,
                last_len: 1,
                ..Audit::default()
            };
            let out = sssom::train_observed(ds, &p, &mut audit).unwrap();
            runs += 1;
            resets += audit.resets;
            removed += audit.removed;
            if audit.convergence_resets != 2 {
                audit.flag(format!("{} convergence resets", audit.convergence_resets));
            }
            if out.map.len() > p.n_max {
                audit.flag("final map over budget".into());
            }
            for v in audit.violations {
                failures.push(format!("{name}#{i}: {v}"));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > STRUCTURE_BUDGET {
        failures.push(format!("took {elapsed:?}"));
    }
    let detail = if failures.is_empty() {
        format!("{runs} runs, {resets} resets, {removed} removals, {elapsed:.2?}")
    } else {
        failures.join("; ")
    };
    verdict(2, "structural invariants", failures.is_empty(), &detail);
}

#[derive(Default)]
struct LabelWatch {
    labeled_steps: u64,
}

impl TrainObserver for LabelWatch {
    fn after_step(&mut self, s: &TrainState) {
        if s.map.labeled_count() > 0 {
            self.labeled_steps += 1;
        }
    }
}

#[test]
fn criterion_3_unsupervised_degeneracy() {
    let mut failures: Vec<String> = Vec::new();
    let mut rejected = 0;
    for (name, ds) in [("synthetic", synthetic(4)), ("glass", glass())] {
        let plan = kfold_split(ds.len(), 1, 3, 8).unwrap();
        for split in plan.splits() {
            let train_ds = ds.subset(&split.train).mask_labels(0.0, 1).unwrap();
            let test_ds = ds.subset(&split.test);
            let p = HyperParams {
                n_max: train_ds.len(),
                age_wins: 5 * train_ds.len() as u64,
                epochs: 10,
                ..HyperParams::default()
            };
            let mut watch = LabelWatch::default();
            let out = sssom::train_observed(&train_ds, &p, &mut watch).unwrap();
            if out.stats.supervised != 0 || out.stats.pushes != 0 || watch.labeled_steps != 0 {
                failures.push(format!("{name}: supervised path touched"));
            }
            let preds = classify_all(&out.map, &test_ds.patterns, p.a_t).unwrap();
            rejected += preds
                .iter()
                .filter(|p| p.outcome == Outcome::Rejected)
                .count();
            if preds.iter().any(|p| p.outcome != Outcome::Rejected) {
                failures.push(format!("{name}: a test pattern got a class"));
            }
        }
    }
    let ds = synthetic(4);
    let plan = kfold_split(ds.len(), 1, 3, 8).unwrap();
    let cfg = SweepConfig {
        fractions: vec![0.0],
        n_samples: 3,
        seed: 2,
        ..SweepConfig::default()
    };
    let results = run_sweep(&ds, &plan, &cfg).unwrap();
    if results.iter().any(|r| r.accuracy != 0.0) {
        failures.push("sweep at fraction 0 scored above 0".into());
    }
    let detail = if failures.is_empty() {
        format!(
            "{rejected} test patterns rejected, {} sweep runs at 0",
            results.len()
        )
    } else {
        failures.join("; ")
    };
    verdict(3, "unsupervised degeneracy", failures.is_empty(), &detail);
}

#[test]
fn criterion_4_determinism() {
    let mut failures: Vec<String> = Vec::new();
    let ds = glass();
    let p = sssom::experiment::lhs_sample(&table_ranges(), 1, 77, ds.len()).unwrap()[0].clone();
    let json = |p: &HyperParams| {
        Model::new(sssom::train(&ds, p).unwrap(), p.clone(), &ds)
            .to_json()
            .unwrap()
    };
    if json(&p) != json(&p) {
        failures.push("model JSON differs between identical runs".into());
    }

    let plan = kfold_split(ds.len(), 2, 3, 5).unwrap();
    let sweep = |jobs| {
        let cfg = SweepConfig {
            fractions: vec![0.25, 1.0],
            n_samples: 4,
            seed: 9,
            jobs: Some(jobs),
            ..SweepConfig::default()
        };
        results_csv(&run_sweep(&ds, &plan, &cfg).unwrap())
    };
    let serial = sweep(1);
    let parallel = sweep(4);
    if serial != parallel {
        failures.push("results CSV differs between 1 and 4 workers".into());
    }
    let detail = if failures.is_empty() {
        format!("model and {}-line CSV identical", serial.lines().count())
    } else {
        failures.join("; ")
    };
    verdict(4, "determinism", failures.is_empty(), &detail);
}

#[test]
fn criterion_5_synthetic_separation() {
    let start = Instant::now();
    let generator = SubspaceClusters::default();
    let ds = synthetic(7);
    let plan = kfold_split(ds.len(), 3, 3, 1).unwrap();
    let cfg = SweepConfig {
        fractions: vec![0.10],
        n_samples: 50,
        seed: 1,
        ..SweepConfig::default()
    };
    let results = run_sweep(&ds, &plan, &cfg).unwrap();
    let bests = best_per_fold(&results).unwrap();
    let accs: Vec<f64> = bests.iter().map(|b| b.accuracy).collect();
    let (mean, _) = mean_std(&accs).unwrap();

    let top = bests.iter().fold(
        &bests[0],
        |a, b| if b.accuracy > a.accuracy { b } else { a },
    );
    let replay = replay_run(
        &ds,
        &plan,
        &cfg,
        top.repeat,
        top.fold,
        top.fraction,
        top.sample_id,
    )
    .unwrap();
    let replayed = accuracy(
        &classify_all(&replay.map, &replay.test.patterns, replay.params.a_t).unwrap(),
        &replay.test.labels,
    );
    let (mut inf, mut noise) = (Vec::new(), Vec::new());
    for node in replay.map.nodes() {
        for (d, &w) in node.relevance.iter().enumerate() {
            if generator.is_informative(d) {
                inf.push(w)
            } else {
                noise.push(w)
            }
        }
    }
    let inf_mean = mean_std(&inf).unwrap().0;
    let noise_mean = mean_std(&noise).unwrap().0;
    let elapsed = start.elapsed();

    let pass = mean >= SEPARATION_MIN_ACC
        && replayed == top.accuracy
        && noise_mean < inf_mean
        && elapsed <= SEPARATION_BUDGET;
    verdict(
        5,
        "synthetic separation",
        pass,
        &format!(
            "mean best {mean:.4} (min {:.4}), relevance informative {inf_mean:.4} vs noise {noise_mean:.4}, replay {replayed:.4}, {elapsed:.1?}",
            accs.iter().cloned().fold(f64::INFINITY, f64::min)
        ),
    );
}

#[test]
fn criterion_6_supervision_trend() {
    let mut low = Vec::new();
    let mut high = Vec::new();
    for seed in 0..5u64 {
        let ds = synthetic(100 + seed);
        let plan = kfold_split(ds.len(), 3, 3, seed).unwrap();
        let cfg = SweepConfig {
            fractions: vec![0.01, 1.0],
            n_samples: 20,
            seed,
            ..SweepConfig::default()
        };
        let bests = best_per_fold(&run_sweep(&ds, &plan, &cfg).unwrap()).unwrap();
        let mean_at = |f: f64| {
            let v: Vec<f64> = bests
                .iter()
                .filter(|b| b.fraction == f)
                .map(|b| b.accuracy)
                .collect();
            mean_std(&v).unwrap().0
        };
        low.push(mean_at(0.01));
        high.push(mean_at(1.0));
    }
    let low_mean = mean_std(&low).unwrap().0;
    let high_mean = mean_std(&high).unwrap().0;
    verdict(
        6,
        "supervision trend",
        high_mean >= low_mean,
        &format!("100%: {high_mean:.4} vs 1%: {low_mean:.4} over 5 seeds (per seed {high:.3?} vs {low:.3?})"),
    );
}

#[test]
fn criterion_7_glass_reference() {
    let start = Instant::now();
    let ds = glass();
    let plan = kfold_split(ds.len(), 3, 3, 1).unwrap();
    let cfg = SweepConfig {
        fractions: vec![1.0],
        n_samples: 50,
        seed: 1,
        ..SweepConfig::default()
    };
    let bests = best_per_fold(&run_sweep(&ds, &plan, &cfg).unwrap()).unwrap();
    let accs: Vec<f64> = bests.iter().map(|b| b.accuracy).collect();
    let (mean, std) = mean_std(&accs).unwrap();
    let elapsed = start.elapsed();
    verdict(
        7,
        "glass reference accuracy",
        (mean - GLASS_REFERENCE).abs() <= GLASS_TOL && elapsed <= GLASS_BUDGET,
        &format!(
            "mean {mean:.4} (std {std:.4}) vs {GLASS_REFERENCE} +/- {GLASS_TOL}, {elapsed:.1?}"
        ),
    );
}

fn param_value(p: &HyperParams, name: &str) -> f64 {
    match name {
        "a_t" => p.a_t,
        "lp" => p.lp,
        "beta" => p.beta,
        "e_b" => p.e_b,
        "push_rate" => p.push_rate,
        "e_n" => p.e_n,
        "eps_beta" => p.eps_beta,
        "minwd" => p.minwd,
        other => panic!("not a continuous parameter: {other}"),
    }
}

fn is_permutation(strata: &mut [usize]) -> bool {
    strata.sort_unstable();
    strata.iter().enumerate().all(|(i, &s)| i == s)
}

#[test]
fn criterion_8_lhs_stratification() {
    let mut failures: Vec<String> = Vec::new();
    for n in [2usize, 10, 500] {
        let design = LhsDesign::new(table_ranges(), n, 31 + n as u64).unwrap();
        for (d, range) in design.ranges.iter().enumerate() {
            let mut strata: Vec<usize> = design
                .unit
                .iter()
                .map(|u| ((u[d] * n as f64).floor() as usize).min(n - 1))
                .collect();
            if !is_permutation(&mut strata) {
                failures.push(format!("n={n}: unit design, {}", range.name));
            }
            if range.integer {
                continue;
            }
            let mut strata = Vec::with_capacity(n);
            for id in 0..n {
                let p = design.resolve(id, 150).unwrap();
                let mut v = param_value(&p, range.name);
                if range.scale == Scale::TimesWinnerRate {
                    v /= p.e_b;
                }
                let u = (v - range.low) / (range.high - range.low);
                strata.push(((u * n as f64 + 1e-9).floor() as usize).min(n - 1));
            }
            if !is_permutation(&mut strata) {
                failures.push(format!("n={n}: resolved {}", range.name));
            }
        }
    }
    let detail = if failures.is_empty() {
        format!("{} dimensions x n in {{2, 10, 500}}", table_ranges().len())
    } else {
        failures.join("; ")
    };
    verdict(8, "LHS stratification", failures.is_empty(), &detail);
}
