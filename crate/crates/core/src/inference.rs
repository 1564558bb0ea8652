//! Cluster assignment and classification over a trained map.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::ClassId;
use crate::map::SomMap;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Assignment {
    Cluster { node: usize, activation: f64 },
    Outlier,
}

impl Assignment {
    pub fn node(&self) -> Option<usize> {
        match self {
            Assignment::Cluster { node, .. } => Some(*node),
            Assignment::Outlier => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Class(ClassId),
    Rejected,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    /// Node that supplied the label, or the global winner when rejected.
    pub node: Option<usize>,
    pub outcome: Outcome,
    pub activation: f64,
}

impl Prediction {
    pub fn class(&self) -> Option<ClassId> {
        match self.outcome {
            Outcome::Class(c) => Some(c),
            Outcome::Rejected => None,
        }
    }
}

/// Global winner if its activation reaches `a_t`, otherwise an outlier.
pub fn cluster(map: &SomMap, x: &[f64], a_t: f64) -> Result<Assignment> {
    let (node, activation) = map.find_winner(x)?;
    Ok(if activation >= a_t {
        Assignment::Cluster { node, activation }
    } else {
        Assignment::Outlier
    })
}

/// Label of the global winner when it has one; otherwise the label of the
/// most activated labeled node, provided it reaches `a_t`; otherwise
/// rejected.
pub fn classify(map: &SomMap, x: &[f64], a_t: f64) -> Result<Prediction> {
    let acts = map.activations(x)?;
    classify_with(map, &acts, a_t)
}

pub(crate) fn classify_with(map: &SomMap, acts: &[f64], a_t: f64) -> Result<Prediction> {
    let nodes = map.nodes();
    let mut winner: Option<usize> = None;
    let mut labeled: Option<usize> = None;
    for (i, &a) in acts.iter().enumerate() {
        if winner.is_none_or(|w| a > acts[w]) {
            winner = Some(i);
        }
        if nodes[i].label.is_some() && labeled.is_none_or(|l| a > acts[l]) {
            labeled = Some(i);
        }
    }
    let winner = winner.ok_or(Error::EmptyMap)?;
    if let Some(label) = nodes[winner].label {
        return Ok(Prediction {
            node: Some(winner),
            outcome: Outcome::Class(label),
            activation: acts[winner],
        });
    }
    match labeled {
        Some(id) if acts[id] >= a_t => Ok(Prediction {
            node: Some(id),
            outcome: Outcome::Class(nodes[id].label.expect("labeled node")),
            activation: acts[id],
        }),
        _ => Ok(Prediction {
            node: Some(winner),
            outcome: Outcome::Rejected,
            activation: acts[winner],
        }),
    }
}

/// Classifies every row; rows whose dimension does not match fail the call.
pub fn classify_all(map: &SomMap, patterns: &[Vec<f64>], a_t: f64) -> Result<Vec<Prediction>> {
    let mut acts = Vec::with_capacity(map.len());
    patterns
        .iter()
        .map(|x| {
            map.activations_into(x, &mut acts)?;
            classify_with(map, &acts, a_t)
        })
        .collect()
}

/// Fraction of `truth` matched by `predictions`; rejections count as wrong.
pub fn accuracy(predictions: &[Prediction], truth: &[Option<ClassId>]) -> f64 {
    if predictions.is_empty() {
        return 0.0;
    }
    let correct = predictions
        .iter()
        .zip(truth)
        .filter(|(p, t)| p.class().is_some() && p.class() == **t)
        .count();
    correct as f64 / predictions.len() as f64
}
