//! Hook into training to watch the map grow and get pruned.

use sssom::data::load_arff;
use sssom::train::ResetReport;
use sssom::{train_observed, HyperParams, TrainObserver, TrainState};

struct Log {
    every: u64,
    steps: u64,
}

impl TrainObserver for Log {
    fn after_step(&mut self, s: &TrainState) {
        self.steps += 1;
        if self.steps % self.every == 0 {
            println!("step {:5} {:?}: {} nodes", self.steps, s.phase, s.map.len());
        }
    }

    fn after_reset(&mut self, s: &TrainState, r: &ResetReport) {
        println!(
            "reset ({:?}): removed {} below {:.2} wins, {} nodes left",
            r.phase,
            r.removed_wins.len(),
            r.threshold,
            s.map.len()
        );
    }
}

fn main() -> sssom::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/toy.arff");
    let ds = load_arff(path)?.normalize()?;
    let params = HyperParams {
        n_max: ds.len(),
        age_wins: 100,
        lp: 0.05,
        epochs: 10,
        ..HyperParams::default()
    };
    let out = train_observed(
        &ds,
        &params,
        &mut Log {
            every: 50,
            steps: 0,
        },
    )?;
    println!("{:?}", out.stats);
    Ok(())
}
