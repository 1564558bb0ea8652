use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rng::derive_seed;

/// Repeated k-fold assignment: `assignments[r][i]` is the test fold of
/// pattern `i` in repeat `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldPlan {
    pub repeats: usize,
    pub k: usize,
    pub assignments: Vec<Vec<usize>>,
}

/// One train/test partition of a [`FoldPlan`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub repeat: usize,
    pub fold: usize,
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Shuffles the pattern indices afresh for each repeat and deals them into
/// `k` folds whose sizes differ by at most one.
pub fn kfold_split(n: usize, repeats: usize, k: usize, seed: u64) -> Result<FoldPlan> {
    if k < 2 {
        return Err(Error::param("k", "need at least 2 folds"));
    }
    if repeats == 0 {
        return Err(Error::param("repeats", "must be positive"));
    }
    if n < k {
        return Err(Error::Data(format!("{n} patterns cannot fill {k} folds")));
    }
    let assignments = (0..repeats)
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &[0xf01d, r as u64]));
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let mut fold_of = vec![0; n];
            for (pos, &i) in order.iter().enumerate() {
                fold_of[i] = pos % k;
            }
            fold_of
        })
        .collect();
    Ok(FoldPlan {
        repeats,
        k,
        assignments,
    })
}

impl FoldPlan {
    /// All `repeats * k` splits, repeat-major.
    pub fn splits(&self) -> Vec<Split> {
        let mut out = Vec::with_capacity(self.repeats * self.k);
        for (repeat, fold_of) in self.assignments.iter().enumerate() {
            for fold in 0..self.k {
                let (test, train): (Vec<usize>, Vec<usize>) =
                    (0..fold_of.len()).partition(|&i| fold_of[i] == fold);
                out.push(Split {
                    repeat,
                    fold,
                    train,
                    test,
                });
            }
        }
        out
    }
}
