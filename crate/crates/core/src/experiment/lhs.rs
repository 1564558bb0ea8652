use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::params::HyperParams;
use crate::rng::derive_seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Linear,
    /// Sampled as a multiple of the winner learning rate `e_b`.
    TimesWinnerRate,
    /// Sampled as a multiple of the training-set size.
    TimesDatasetSize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParamRange {
    /// Key understood by [`HyperParams::set_value`].
    pub name: &'static str,
    pub low: f64,
    pub high: f64,
    pub scale: Scale,
    pub integer: bool,
}

impl ParamRange {
    const fn new(name: &'static str, low: f64, high: f64, scale: Scale, integer: bool) -> Self {
        ParamRange {
            name,
            low,
            high,
            scale,
            integer,
        }
    }
}

/// Default sweep ranges for the ten sampled training parameters.
pub fn table_ranges() -> Vec<ParamRange> {
    use Scale::*;
    vec![
        ParamRange::new("a_t", 0.80, 0.999, Linear, false),
        ParamRange::new("lp", 0.001, 0.01, Linear, false),
        ParamRange::new("beta", 0.001, 0.5, Linear, false),
        ParamRange::new("age_wins", 1.0, 100.0, TimesDatasetSize, true),
        ParamRange::new("e_b", 0.001, 0.2, Linear, false),
        ParamRange::new("push_rate", 0.01, 1.0, TimesWinnerRate, false),
        ParamRange::new("e_n", 0.002, 1.0, TimesWinnerRate, false),
        ParamRange::new("eps_beta", 0.01, 0.1, Linear, false),
        ParamRange::new("minwd", 0.0, 0.5, Linear, false),
        ParamRange::new("epochs", 1.0, 100.0, Linear, true),
    ]
}

/// `n` points in `[0, 1)^dims`: in every dimension each of the `n`
/// equal-width strata holds exactly one point, and strata are paired
/// across dimensions by independent random permutations.
pub fn latin_hypercube<R: Rng>(n: usize, dims: usize, rng: &mut R) -> Vec<Vec<f64>> {
    let mut points = vec![vec![0.0; dims]; n];
    let mut strata: Vec<usize> = (0..n).collect();
    for d in 0..dims {
        strata.shuffle(rng);
        for (point, &s) in points.iter_mut().zip(&strata) {
            point[d] = (s as f64 + rng.gen::<f64>()) / n as f64;
        }
    }
    points
}

/// A unit-cube design together with the ranges it maps onto.
#[derive(Clone, Debug)]
pub struct LhsDesign {
    pub ranges: Vec<ParamRange>,
    pub unit: Vec<Vec<f64>>,
    pub seed: u64,
}

impl LhsDesign {
    pub fn new(ranges: Vec<ParamRange>, n: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("samples", "need at least one sample"));
        }
        if let Some(r) = ranges
            .iter()
            .find(|r| r.low.is_nan() || r.high.is_nan() || r.low > r.high)
        {
            return Err(Error::param(r.name, "range low exceeds high"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &[0x1a5]));
        let unit = latin_hypercube(n, ranges.len(), &mut rng);
        Ok(LhsDesign { ranges, unit, seed })
    }

    pub fn len(&self) -> usize {
        self.unit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.unit.is_empty()
    }

    /// Sample `id` as concrete parameters for a training set of
    /// `train_size` patterns. The node budget equals the training-set size.
    pub fn resolve(&self, id: usize, train_size: usize) -> Result<HyperParams> {
        let mut p = HyperParams {
            n_max: train_size.max(1),
            seed: derive_seed(self.seed, &[0x5a3, id as u64]),
            ..HyperParams::default()
        };
        let point = &self.unit[id];
        // multipliers of e_b need e_b resolved first
        for pass in [false, true] {
            for (range, &u) in self.ranges.iter().zip(point) {
                if (range.scale == Scale::TimesWinnerRate) != pass {
                    continue;
                }
                let raw = range.low + u * (range.high - range.low);
                let value = match range.scale {
                    Scale::Linear => raw,
                    Scale::TimesWinnerRate => raw * p.e_b,
                    Scale::TimesDatasetSize => raw * train_size as f64,
                };
                let value = if range.integer {
                    value.round().max(1.0)
                } else {
                    value
                };
                p.set_value(range.name, value)?;
            }
        }
        Ok(p)
    }
}

/// Convenience: `n` resolved parameter sets for one training-set size.
pub fn lhs_sample(
    ranges: &[ParamRange],
    n: usize,
    seed: u64,
    train_size: usize,
) -> Result<Vec<HyperParams>> {
    let design = LhsDesign::new(ranges.to_vec(), n, seed)?;
    (0..n).map(|i| design.resolve(i, train_size)).collect()
}
