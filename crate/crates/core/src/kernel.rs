//! Node state and the per-node math: weighted distance, activation,
//! relevance estimation, prototype adaptation and the connection rule.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Constant added to the activation denominator so a node with zero total
/// relevance at zero distance stays finite.
pub const ACTIVATION_EPS: f64 = 1e-7;

/// Index into a dataset's class dictionary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassId(pub u32);

impl ClassId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::fmt::Display for ClassId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A prototype of the map. `label == None` is the unlabeled ("no class") state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub center: Vec<f64>,
    pub relevance: Vec<f64>,
    /// Moving average of `|x - center|`, one entry per dimension.
    pub dist_avg: Vec<f64>,
    pub wins: u64,
    pub label: Option<ClassId>,
}

impl Node {
    /// Fresh node at `x`: full relevance, zero distance average, no wins.
    pub fn at(x: &[f64], label: Option<ClassId>) -> Self {
        Node {
            center: x.to_vec(),
            relevance: vec![1.0; x.len()],
            dist_avg: vec![0.0; x.len()],
            wins: 0,
            label,
        }
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn relevance_sum(&self) -> f64 {
        self.relevance.iter().sum()
    }

    /// One adaptation step with learning rate `lr` (negative to push away).
    ///
    /// Order matters: the distance average sees the pre-update center, the
    /// relevances are recomputed from it, and only then does the center move.
    pub fn adapt(&mut self, x: &[f64], lr: f64, beta: f64, slope: f64) -> Result<()> {
        check_dim(self.dim(), x.len())?;
        let rate = lr * beta;
        for ((d, &c), &xi) in self.dist_avg.iter_mut().zip(&self.center).zip(x) {
            let next = (1.0 - rate) * *d + rate * (xi - c).abs();
            // a negative rate can drive the average below zero
            *d = next.max(0.0);
        }
        relevances_into(&self.dist_avg, slope, &mut self.relevance);
        // c + lr (x - c), written so that lr = 1 lands exactly on x
        for (c, &xi) in self.center.iter_mut().zip(x) {
            *c = (1.0 - lr) * *c + lr * xi;
        }
        Ok(())
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// `sqrt(sum_i w_i (x_i - c_i)^2)` with the node's relevances as weights.
pub fn weighted_distance(x: &[f64], node: &Node) -> Result<f64> {
    check_dim(node.dim(), x.len())?;
    Ok(weighted_distance_unchecked(
        x,
        &node.center,
        &node.relevance,
    ))
}

#[inline]
pub(crate) fn weighted_distance_unchecked(x: &[f64], center: &[f64], relevance: &[f64]) -> f64 {
    x.iter()
        .zip(center)
        .zip(relevance)
        .map(|((&xi, &ci), &wi)| {
            let d = xi - ci;
            wi * d * d
        })
        .sum::<f64>()
        .sqrt()
}

/// Radial activation `sum(w) / (sum(w) + D_w(x, c) + eps)`, always in `[0, 1)`.
pub fn activation(x: &[f64], node: &Node, eps: f64) -> Result<f64> {
    let dist = weighted_distance(x, node)?;
    Ok(activation_from(node.relevance_sum(), dist, eps))
}

#[inline]
pub(crate) fn activation_from(relevance_sum: f64, dist: f64, eps: f64) -> f64 {
    relevance_sum / (relevance_sum + dist + eps)
}

/// Relevances from a distance average: a logistic curve centered on the
/// mean distance, so dimensions with smaller average distance get larger
/// weights. A flat distance vector yields all-ones.
pub fn compute_relevances(dist_avg: &[f64], slope: f64) -> Vec<f64> {
    let mut out = vec![0.0; dist_avg.len()];
    relevances_into(dist_avg, slope, &mut out);
    out
}

fn relevances_into(dist_avg: &[f64], slope: f64, out: &mut [f64]) {
    if dist_avg.is_empty() {
        return;
    }
    let (min, max, sum) = dist_avg.iter().fold(
        (f64::INFINITY, f64::NEG_INFINITY, 0.0),
        |(lo, hi, s), &d| (lo.min(d), hi.max(d), s + d),
    );
    if min == max {
        out.iter_mut().for_each(|w| *w = 1.0);
        return;
    }
    let mean = sum / dist_avg.len() as f64;
    let scale = slope * (max - min);
    for (w, &d) in out.iter_mut().zip(dist_avg) {
        *w = 1.0 / (1.0 + ((d - mean) / scale).exp());
    }
}

/// Connection rule between two nodes: compatible labels (equal, or either
/// unlabeled) and relevance vectors closer than `minwd * sqrt(m)`.
pub fn connected(a: &Node, b: &Node, minwd: f64, m: usize) -> bool {
    let compatible = match (a.label, b.label) {
        (Some(la), Some(lb)) => la == lb,
        _ => true,
    };
    if !compatible {
        return false;
    }
    let gap = a
        .relevance
        .iter()
        .zip(&b.relevance)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt();
    gap < minwd * (m as f64).sqrt()
}
