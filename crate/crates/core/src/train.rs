//! Organization and convergence phases.
//!
//! Each presentation draws a pattern uniformly with replacement, finds the
//! most activated node and dispatches on whether the pattern carries a
//! label. Every `age_wins` presentations a reset removes nodes that won too
//! rarely. The convergence phase repeats the same loop with insertion
//! disabled until two more resets have happened.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::kernel::ClassId;
use crate::map::SomMap;
use crate::params::HyperParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phase {
    Organization,
    Convergence,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrainStats {
    pub supervised: u64,
    pub unsupervised: u64,
    pub insertions: u64,
    pub removals: u64,
    pub pushes: u64,
    pub resets: u64,
    /// Presentations that changed nothing (no room, or insertion disabled).
    pub idle: u64,
}

/// What a reset did, reported to observers.
#[derive(Clone, Debug, PartialEq)]
pub struct ResetReport {
    pub phase: Phase,
    pub threshold: f64,
    /// Pre-reset wins of every removed node.
    pub removed_wins: Vec<u64>,
    /// Pre-reset wins of every surviving node, in surviving order.
    pub kept_wins: Vec<u64>,
    /// Set when every node fell below the threshold and the most
    /// victorious one was kept anyway.
    pub guard_kept: bool,
}

/// Hooks for inspecting a run while it happens.
pub trait TrainObserver {
    fn after_step(&mut self, _state: &TrainState) {}
    fn after_reset(&mut self, _state: &TrainState, _report: &ResetReport) {}
}

impl TrainObserver for () {}

pub struct TrainState {
    pub map: SomMap,
    pub params: HyperParams,
    rng: ChaCha8Rng,
    /// Organization presentations so far.
    pub t: u64,
    pub t_max: u64,
    pub phase: Phase,
    pub stats: TrainStats,
    acts: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct TrainOutcome {
    pub map: SomMap,
    pub stats: TrainStats,
}

impl TrainState {
    /// Validates `params` and seeds a one-node map at `first`.
    pub fn new(
        first: &[f64],
        first_label: Option<ClassId>,
        params: HyperParams,
        n_patterns: usize,
    ) -> Result<Self> {
        params.validate()?;
        let map = SomMap::new(first, first_label, params.n_max)?;
        Ok(TrainState {
            map,
            rng: ChaCha8Rng::seed_from_u64(params.seed),
            t: 0,
            t_max: params.epochs.saturating_mul(n_patterns as u64),
            phase: Phase::Organization,
            stats: TrainStats::default(),
            acts: Vec::new(),
            params,
        })
    }

    fn may_insert(&self) -> bool {
        self.phase == Phase::Organization && self.map.len() < self.params.n_max
    }

    fn insert(&mut self, x: &[f64], label: Option<ClassId>) -> Result<()> {
        self.map.insert_node(x, label, self.params.minwd)?;
        self.stats.insertions += 1;
        Ok(())
    }

    /// Moves `id` toward `x` with the winner rate and its neighbors with the
    /// neighbor rate.
    fn update_with_neighbors(&mut self, x: &[f64], id: usize) -> Result<()> {
        let HyperParams {
            e_b,
            e_n,
            beta,
            eps_beta,
            ..
        } = self.params;
        self.map.node_mut(id).adapt(x, e_b, beta, eps_beta)?;
        for k in 0..self.map.neighbors(id).len() {
            let nb = self.map.neighbors(id)[k];
            self.map.node_mut(nb).adapt(x, e_n, beta, eps_beta)?;
        }
        Ok(())
    }

    /// Handling of an unlabeled pattern given its winner and activation.
    pub fn unsupervised_step(&mut self, x: &[f64], winner: usize, act: f64) -> Result<()> {
        self.stats.unsupervised += 1;
        if act < self.params.a_t {
            if self.may_insert() {
                return self.insert(x, None);
            }
            if self.phase == Phase::Convergence {
                self.stats.idle += 1;
                return Ok(());
            }
        }
        self.update_with_neighbors(x, winner)?;
        self.map.node_mut(winner).wins += 1;
        Ok(())
    }

    /// Handling of a labeled pattern given its winner and activation.
    pub fn supervised_step(
        &mut self,
        x: &[f64],
        label: ClassId,
        winner: usize,
        act: f64,
    ) -> Result<()> {
        self.stats.supervised += 1;
        let a_t = self.params.a_t;
        let compatible = self.map.node(winner).label.is_none_or(|l| l == label);

        if compatible {
            if act < a_t {
                if self.may_insert() {
                    return self.insert(x, Some(label));
                }
                self.stats.idle += 1;
                return Ok(());
            }
            self.update_with_neighbors(x, winner)?;
            self.map.node_mut(winner).label = Some(label);
            self.map.relink_node(winner, self.params.minwd);
            self.map.node_mut(winner).wins += 1;
            return Ok(());
        }

        if self.acts.len() != self.map.len() {
            self.map.activations_into(x, &mut self.acts)?;
        }
        match self.map.winner_for_class_in(&self.acts, label, a_t) {
            Some((second, _)) => {
                self.update_with_neighbors(x, second)?;
                let HyperParams {
                    push_rate,
                    beta,
                    eps_beta,
                    ..
                } = self.params;
                self.map
                    .node_mut(winner)
                    .adapt(x, -push_rate, beta, eps_beta)?;
                self.map.node_mut(second).wins += 1;
                self.stats.pushes += 1;
            }
            None if self.may_insert() => self.insert(x, Some(label))?,
            None => self.stats.idle += 1,
        }
        self.acts.clear();
        Ok(())
    }

    /// One presentation: winner search and mode dispatch. Does not touch
    /// the competition counter.
    pub fn present(&mut self, x: &[f64], label: Option<ClassId>) -> Result<()> {
        let mut acts = std::mem::take(&mut self.acts);
        self.map.activations_into(x, &mut acts)?;
        let (winner, act) = acts
            .iter()
            .enumerate()
            .fold(None, |best: Option<(usize, f64)>, (i, &a)| match best {
                Some((_, b)) if a <= b => best,
                _ => Some((i, a)),
            })
            .ok_or(Error::EmptyMap)?;
        self.acts = acts;
        let result = match label {
            Some(label) => self.supervised_step(x, label, winner, act),
            None => self.unsupervised_step(x, winner, act),
        };
        self.acts.clear();
        result
    }

    /// Removes nodes that won fewer than `lp * age_wins` competitions,
    /// relinks the survivors and zeroes all win counters.
    pub fn handle_reset(&mut self) -> ResetReport {
        let threshold = self.params.removal_threshold();
        let mut keep: Vec<bool> = self
            .map
            .nodes()
            .iter()
            .map(|n| n.wins as f64 >= threshold)
            .collect();
        let guard_kept = !keep.iter().any(|&k| k);
        if guard_kept {
            let best = self.map.nodes().iter().enumerate().fold(0, |best, (i, n)| {
                if n.wins > self.map.node(best).wins {
                    i
                } else {
                    best
                }
            });
            keep[best] = true;
        }
        let (mut removed_wins, mut kept_wins) = (Vec::new(), Vec::new());
        for (n, &k) in self.map.nodes().iter().zip(&keep) {
            if k {
                kept_wins.push(n.wins);
            } else {
                removed_wins.push(n.wins);
            }
        }
        self.map.retain_nodes(&keep);
        self.map.rebuild_connections(self.params.minwd);
        for id in 0..self.map.len() {
            self.map.node_mut(id).wins = 0;
        }
        self.map.nwins = 0;
        self.stats.removals += removed_wins.len() as u64;
        self.stats.resets += 1;
        ResetReport {
            phase: self.phase,
            threshold,
            removed_wins,
            kept_wins,
            guard_kept,
        }
    }

    /// Counter bookkeeping after a presentation; returns true if a reset ran.
    fn tick(&mut self, observer: &mut dyn TrainObserver) -> bool {
        let reset = self.map.nwins == self.params.age_wins;
        if reset {
            let report = self.handle_reset();
            observer.after_reset(self, &report);
        }
        self.map.nwins += 1;
        reset
    }

    fn draw<'a>(&mut self, ds: &'a Dataset) -> (&'a [f64], Option<ClassId>) {
        let i = self.rng.gen_range(0..ds.len());
        (&ds.patterns[i], ds.labels[i])
    }

    /// Organization phase: `t_max` presentations with insertion enabled.
    pub fn organize(&mut self, ds: &Dataset, observer: &mut dyn TrainObserver) -> Result<()> {
        self.phase = Phase::Organization;
        while self.t < self.t_max {
            let (x, label) = self.draw(ds);
            self.present(x, label)?;
            self.t += 1;
            observer.after_step(self);
            self.tick(observer);
        }
        Ok(())
    }

    /// Finishes the current `age_wins` cycle and runs one more, without
    /// inserting nodes.
    pub fn convergence_phase(
        &mut self,
        ds: &Dataset,
        observer: &mut dyn TrainObserver,
    ) -> Result<()> {
        self.phase = Phase::Convergence;
        let mut resets = 0;
        while resets < 2 {
            let (x, label) = self.draw(ds);
            self.present(x, label)?;
            observer.after_step(self);
            if self.tick(observer) {
                resets += 1;
            }
        }
        Ok(())
    }
}

/// Trains a map on `ds` (patterns already scaled to `[0, 1]`).
pub fn train(ds: &Dataset, params: &HyperParams) -> Result<SomMap> {
    Ok(train_observed(ds, params, &mut ())?.map)
}

pub fn train_observed(
    ds: &Dataset,
    params: &HyperParams,
    observer: &mut dyn TrainObserver,
) -> Result<TrainOutcome> {
    if ds.is_empty() {
        return Err(Error::Data("cannot train on an empty dataset".into()));
    }
    let mut state = TrainState::new(&ds.patterns[0], ds.labels[0], params.clone(), ds.len())?;
    state.organize(ds, observer)?;
    state.convergence_phase(ds, observer)?;
    Ok(TrainOutcome {
        map: state.map,
        stats: state.stats,
    })
}
