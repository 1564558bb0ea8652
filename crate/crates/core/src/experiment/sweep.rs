use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::{Dataset, FoldPlan};
use crate::error::{Error, Result};
use crate::inference::{accuracy, classify_all};
use crate::map::SomMap;
use crate::params::HyperParams;
use crate::rng::derive_seed;
use crate::train::train;

use super::lhs::{table_ranges, LhsDesign, ParamRange};

/// Supervision levels of the standard protocol.
pub const SUPERVISION_LEVELS: [f64; 7] = [0.01, 0.05, 0.10, 0.25, 0.50, 0.75, 1.0];

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub fractions: Vec<f64>,
    pub n_samples: usize,
    pub seed: u64,
    pub ranges: Vec<ParamRange>,
    /// Worker threads; `None` uses rayon's default pool.
    pub jobs: Option<usize>,
    /// Wall-clock timing makes result files differ between runs, so it is
    /// opt-in. Without it `runtime_ms` is recorded as 0.
    pub record_timing: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            fractions: SUPERVISION_LEVELS.to_vec(),
            n_samples: 500,
            seed: 0,
            ranges: table_ranges(),
            jobs: None,
            record_timing: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub repeat: usize,
    pub fold: usize,
    pub fraction: f64,
    pub sample_id: usize,
    pub accuracy: f64,
    pub nodes: usize,
    pub runtime_ms: u64,
}

fn mask_seed(cfg: &SweepConfig, repeat: usize, fold: usize, fraction: f64) -> u64 {
    derive_seed(
        cfg.seed,
        &[0x3a5c, repeat as u64, fold as u64, fraction.to_bits()],
    )
}

fn run_params(
    design: &LhsDesign,
    cfg: &SweepConfig,
    coords: (usize, usize, f64, usize),
    train_size: usize,
) -> Result<HyperParams> {
    let (repeat, fold, fraction, sample_id) = coords;
    let mut params = design.resolve(sample_id, train_size)?;
    params.seed = derive_seed(
        cfg.seed,
        &[
            0x7a1,
            repeat as u64,
            fold as u64,
            fraction.to_bits(),
            sample_id as u64,
        ],
    );
    Ok(params)
}

fn check_inputs(ds: &Dataset, plan: &FoldPlan, cfg: &SweepConfig) -> Result<LhsDesign> {
    if let Some(f) = cfg.fractions.iter().find(|f| !(0.0..=1.0).contains(*f)) {
        return Err(Error::param("fraction", format!("{f} is outside [0, 1]")));
    }
    if plan.assignments.iter().any(|a| a.len() != ds.len()) {
        return Err(Error::Data(
            "fold plan does not match the dataset size".into(),
        ));
    }
    LhsDesign::new(cfg.ranges.clone(), cfg.n_samples, cfg.seed)
}

/// Trains and scores one model per (repeat, fold, fraction, sample).
///
/// Labels are masked on the training split only; the test split is always
/// scored against the full ground truth. Every run draws its randomness
/// from seeds derived from its coordinates, so the output does not depend
/// on scheduling.
pub fn run_sweep(ds: &Dataset, plan: &FoldPlan, cfg: &SweepConfig) -> Result<Vec<RunResult>> {
    let design = check_inputs(ds, plan, cfg)?;

    struct Job {
        repeat: usize,
        fold: usize,
        fraction: f64,
        train: Dataset,
        test: Dataset,
    }
    let mut jobs = Vec::new();
    for split in plan.splits() {
        let test = ds.subset(&split.test);
        let full_train = ds.subset(&split.train);
        for &fraction in &cfg.fractions {
            let seed = mask_seed(cfg, split.repeat, split.fold, fraction);
            jobs.push(Job {
                repeat: split.repeat,
                fold: split.fold,
                fraction,
                train: full_train.mask_labels(fraction, seed)?,
                test: test.clone(),
            });
        }
    }

    let tasks: Vec<(usize, usize)> = (0..jobs.len())
        .flat_map(|j| (0..design.len()).map(move |s| (j, s)))
        .collect();
    let run = |&(j, sample_id): &(usize, usize)| -> Result<RunResult> {
        let job = &jobs[j];
        let started = Instant::now();
        let params = run_params(
            &design,
            cfg,
            (job.repeat, job.fold, job.fraction, sample_id),
            job.train.len(),
        )?;
        let map = train(&job.train, &params)?;
        let predictions = classify_all(&map, &job.test.patterns, params.a_t)?;
        Ok(RunResult {
            repeat: job.repeat,
            fold: job.fold,
            fraction: job.fraction,
            sample_id,
            accuracy: accuracy(&predictions, &job.test.labels),
            nodes: map.len(),
            runtime_ms: if cfg.record_timing {
                started.elapsed().as_millis() as u64
            } else {
                0
            },
        })
    };

    let mut results: Vec<RunResult> = match cfg.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::param("jobs", e.to_string()))?
            .install(|| tasks.par_iter().map(run).collect::<Result<_>>())?,
        None => tasks.par_iter().map(run).collect::<Result<_>>()?,
    };
    results.sort_by(|a, b| {
        (a.repeat, a.fold)
            .cmp(&(b.repeat, b.fold))
            .then(a.fraction.total_cmp(&b.fraction))
            .then(a.sample_id.cmp(&b.sample_id))
    });
    Ok(results)
}

/// A single sweep run rebuilt from its coordinates.
#[derive(Clone, Debug)]
pub struct Replay {
    pub params: HyperParams,
    pub train: Dataset,
    pub test: Dataset,
    pub map: SomMap,
}

/// Retrains the run at (repeat, fold, fraction, sample) exactly as
/// [`run_sweep`] did.
pub fn replay_run(
    ds: &Dataset,
    plan: &FoldPlan,
    cfg: &SweepConfig,
    repeat: usize,
    fold: usize,
    fraction: f64,
    sample_id: usize,
) -> Result<Replay> {
    let design = check_inputs(ds, plan, cfg)?;
    if sample_id >= design.len() {
        return Err(Error::param("sample_id", "outside the design"));
    }
    let split = plan
        .splits()
        .into_iter()
        .find(|s| s.repeat == repeat && s.fold == fold)
        .ok_or_else(|| Error::param("fold", "no such split"))?;
    let train_ds = ds
        .subset(&split.train)
        .mask_labels(fraction, mask_seed(cfg, repeat, fold, fraction))?;
    let params = run_params(
        &design,
        cfg,
        (repeat, fold, fraction, sample_id),
        train_ds.len(),
    )?;
    let map = train(&train_ds, &params)?;
    Ok(Replay {
        params,
        train: train_ds,
        test: ds.subset(&split.test),
        map,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FoldBest {
    pub repeat: usize,
    pub fold: usize,
    pub fraction: f64,
    pub sample_id: usize,
    pub accuracy: f64,
}

/// Highest accuracy over parameter samples for each (repeat, fold,
/// fraction); ties keep the lowest sample id.
pub fn best_per_fold(results: &[RunResult]) -> Result<Vec<FoldBest>> {
    if results.is_empty() {
        return Err(Error::Data("no results to summarize".into()));
    }
    let mut best: BTreeMap<(u64, usize, usize), FoldBest> = BTreeMap::new();
    for r in results {
        let key = (r.fraction.to_bits(), r.repeat, r.fold);
        let better = best.get(&key).is_none_or(|b| {
            r.accuracy > b.accuracy || (r.accuracy == b.accuracy && r.sample_id < b.sample_id)
        });
        if better {
            best.insert(
                key,
                FoldBest {
                    repeat: r.repeat,
                    fold: r.fold,
                    fraction: r.fraction,
                    sample_id: r.sample_id,
                    accuracy: r.accuracy,
                },
            );
        }
    }
    let mut out: Vec<FoldBest> = best.into_values().collect();
    out.sort_by(|a, b| {
        a.fraction
            .total_cmp(&b.fraction)
            .then((a.repeat, a.fold).cmp(&(b.repeat, b.fold)))
    });
    Ok(out)
}

/// Mean and population standard deviation.
pub fn mean_std(values: &[f64]) -> Result<(f64, f64)> {
    if values.is_empty() {
        return Err(Error::Data("mean of an empty set".into()));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    Ok((mean, var.sqrt()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub fraction: f64,
    pub mean: f64,
    pub std: f64,
    pub folds: usize,
}

/// Mean and spread of the per-fold bests at each supervision level.
pub fn supervision_curve(results: &[RunResult]) -> Result<Vec<CurvePoint>> {
    let bests = best_per_fold(results)?;
    let mut by_fraction: Vec<(f64, Vec<f64>)> = Vec::new();
    for b in &bests {
        match by_fraction.last_mut() {
            Some((f, v)) if *f == b.fraction => v.push(b.accuracy),
            _ => by_fraction.push((b.fraction, vec![b.accuracy])),
        }
    }
    by_fraction
        .into_iter()
        .map(|(fraction, accs)| {
            let (mean, std) = mean_std(&accs)?;
            Ok(CurvePoint {
                fraction,
                mean,
                std,
                folds: accs.len(),
            })
        })
        .collect()
}
