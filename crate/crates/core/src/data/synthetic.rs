//! Gaussian clusters living in a subset of the dimensions, padded with
//! uniform noise dimensions. Useful for checking that relevances learn
//! which dimensions matter.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::kernel::ClassId;

use super::Dataset;

#[derive(Clone, Debug)]
pub struct SubspaceClusters {
    pub patterns: usize,
    pub clusters: usize,
    pub informative: usize,
    pub noise: usize,
    pub sigma: f64,
    /// Minimum Euclidean gap between cluster means on the informative dims.
    pub min_separation: f64,
}

impl Default for SubspaceClusters {
    fn default() -> Self {
        SubspaceClusters {
            patterns: 300,
            clusters: 3,
            informative: 4,
            noise: 6,
            sigma: 0.05,
            min_separation: 0.3,
        }
    }
}

impl SubspaceClusters {
    /// Informative dimensions come first, noise dimensions after them.
    /// Pattern `i` belongs to cluster `i % clusters`.
    pub fn generate(&self, seed: u64) -> Result<Dataset> {
        if self.clusters == 0 || self.informative + self.noise == 0 {
            return Err(Error::Data(
                "need at least one cluster and one dimension".into(),
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let means = self.draw_means(&mut rng)?;
        let normal =
            Normal::new(0.0, self.sigma).map_err(|e| Error::param("sigma", e.to_string()))?;

        let mut patterns = Vec::with_capacity(self.patterns);
        let mut labels = Vec::with_capacity(self.patterns);
        for i in 0..self.patterns {
            let c = i % self.clusters;
            let mut row: Vec<f64> = means[c]
                .iter()
                .map(|&mu| mu + normal.sample(&mut rng))
                .collect();
            row.extend((0..self.noise).map(|_| rng.gen::<f64>()));
            patterns.push(row);
            labels.push(Some(ClassId(c as u32)));
        }
        let class_names = (0..self.clusters).map(|c| format!("c{c}")).collect();
        let dim_names = (0..self.informative)
            .map(|j| format!("inf{j}"))
            .chain((0..self.noise).map(|j| format!("noise{j}")))
            .collect();
        Dataset::new(patterns, labels, class_names, dim_names)
    }

    fn draw_means(&self, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<f64>>> {
        let mut means: Vec<Vec<f64>> = Vec::with_capacity(self.clusters);
        for _ in 0..10_000 {
            if means.len() == self.clusters {
                break;
            }
            let cand: Vec<f64> = (0..self.informative)
                .map(|_| rng.gen_range(0.2..0.8))
                .collect();
            let far = means.iter().all(|m| {
                m.iter()
                    .zip(&cand)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
                    >= self.min_separation
            });
            if far {
                means.push(cand);
            }
        }
        if means.len() < self.clusters {
            return Err(Error::Data(
                "cannot place cluster means that far apart".into(),
            ));
        }
        Ok(means)
    }

    pub fn is_informative(&self, dim: usize) -> bool {
        dim < self.informative
    }
}
