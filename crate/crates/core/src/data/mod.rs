//! Datasets: loading, min-max normalization, label masking and fold plans.

mod arff;
mod folds;
pub mod synthetic;
mod table;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::ClassId;

pub use arff::{load_arff, parse_arff};
pub use folds::{kfold_split, FoldPlan, Split};
pub use table::{load_csv, parse_csv};

/// Per-dimension range recorded by [`Dataset::normalize`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormRange {
    pub min: f64,
    pub max: f64,
}

impl NormRange {
    pub fn apply(&self, v: f64) -> f64 {
        if self.max > self.min {
            ((v - self.min) / (self.max - self.min)).clamp(0.0, 1.0)
        } else {
            0.5
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    pub patterns: Vec<Vec<f64>>,
    pub labels: Vec<Option<ClassId>>,
    pub class_names: Vec<String>,
    pub dim_names: Vec<String>,
    pub norm_stats: Option<Vec<NormRange>>,
}

impl Dataset {
    /// Builds a dataset, checking shape and label indices.
    pub fn new(
        patterns: Vec<Vec<f64>>,
        labels: Vec<Option<ClassId>>,
        class_names: Vec<String>,
        dim_names: Vec<String>,
    ) -> Result<Self> {
        let m = dim_names.len();
        if m == 0 {
            return Err(Error::Data("dataset has no feature dimensions".into()));
        }
        if labels.len() != patterns.len() {
            return Err(Error::Data(format!(
                "{} labels for {} patterns",
                labels.len(),
                patterns.len()
            )));
        }
        if let Some((i, p)) = patterns.iter().enumerate().find(|(_, p)| p.len() != m) {
            return Err(Error::Data(format!(
                "pattern {i} has {} values, expected {m}",
                p.len()
            )));
        }
        if let Some(c) = labels
            .iter()
            .flatten()
            .find(|c| c.index() >= class_names.len())
        {
            return Err(Error::Data(format!("label {c} has no class name")));
        }
        Ok(Dataset {
            patterns,
            labels,
            class_names,
            dim_names,
            norm_stats: None,
        })
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim_names.len()
    }

    pub fn labeled_count(&self) -> usize {
        self.labels.iter().filter(|l| l.is_some()).count()
    }

    pub fn class_name(&self, id: ClassId) -> &str {
        &self.class_names[id.index()]
    }

    /// Rows at `indices`, in that order, sharing class and dimension names.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        Dataset {
            patterns: indices.iter().map(|&i| self.patterns[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            class_names: self.class_names.clone(),
            dim_names: self.dim_names.clone(),
            norm_stats: self.norm_stats.clone(),
        }
    }

    /// Min-max scales every dimension to `[0, 1]` and records the ranges.
    /// Constant dimensions map to 0.5.
    pub fn normalize(&self) -> Result<Dataset> {
        if self.is_empty() {
            return Err(Error::Data("cannot normalize an empty dataset".into()));
        }
        let stats: Vec<NormRange> = (0..self.dim())
            .map(|j| {
                let (min, max) = self
                    .patterns
                    .iter()
                    .map(|p| p[j])
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                        (lo.min(v), hi.max(v))
                    });
                NormRange { min, max }
            })
            .collect();
        let mut out = self.apply_normalization(&stats)?;
        out.norm_stats = Some(stats);
        Ok(out)
    }

    /// Scales with previously recorded ranges, clamping to `[0, 1]`.
    pub fn apply_normalization(&self, stats: &[NormRange]) -> Result<Dataset> {
        if stats.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: stats.len(),
                found: self.dim(),
            });
        }
        let patterns = self
            .patterns
            .iter()
            .map(|p| p.iter().zip(stats).map(|(&v, r)| r.apply(v)).collect())
            .collect();
        Ok(Dataset {
            patterns,
            norm_stats: Some(stats.to_vec()),
            ..self.clone()
        })
    }

    /// Keeps the labels of `round(fraction * len)` uniformly chosen patterns
    /// (at least one when `fraction > 0`) and clears the rest.
    pub fn mask_labels(&self, fraction: f64, seed: u64) -> Result<Dataset> {
        if !(0.0..=1.0).contains(&fraction) {
            return Err(Error::param(
                "fraction",
                format!("{fraction} is outside [0, 1]"),
            ));
        }
        if let Some(i) = self.labels.iter().position(Option::is_none) {
            return Err(Error::Data(format!(
                "label masking needs a fully labeled dataset (pattern {i} has no label)"
            )));
        }
        let n = self.len();
        let mut keep = (fraction * n as f64).round() as usize;
        if fraction > 0.0 {
            keep = keep.max(1);
        }
        let keep = keep.min(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut retained = vec![false; n];
        for i in sample(&mut rng, n, keep) {
            retained[i] = true;
        }
        let labels = self
            .labels
            .iter()
            .zip(&retained)
            .map(|(&l, &r)| if r { l } else { None })
            .collect();
        Ok(Dataset {
            labels,
            ..self.clone()
        })
    }
}
