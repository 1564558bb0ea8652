//! Load an ARFF file (the bundled UCI Glass copy by default) and report the
//! mean of per-fold best accuracies over an LHS sample of parameters.
//!
//! cargo run --release --example arff_glass -- [file.arff] [samples]

use sssom::data::{kfold_split, load_arff};
use sssom::experiment::{best_per_fold, mean_std, run_sweep, SweepConfig};

fn main() -> sssom::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/glass.arff").into());
    let samples = args.next().map_or(50, |s| s.parse().expect("sample count"));

    let ds = load_arff(&path)?.normalize()?;
    println!(
        "{path}: {} patterns, {} dims, classes {:?}",
        ds.len(),
        ds.dim(),
        ds.class_names
    );
    let plan = kfold_split(ds.len(), 3, 3, 1)?;
    let cfg = SweepConfig {
        fractions: vec![1.0],
        n_samples: samples,
        seed: 1,
        ..SweepConfig::default()
    };
    let bests = best_per_fold(&run_sweep(&ds, &plan, &cfg)?)?;
    for b in &bests {
        println!(
            "repeat {} fold {}: {:.3} (sample {})",
            b.repeat, b.fold, b.accuracy, b.sample_id
        );
    }
    let accs: Vec<f64> = bests.iter().map(|b| b.accuracy).collect();
    let (mean, std) = mean_std(&accs)?;
    println!("mean of best: {mean:.3} ({std:.3})");
    Ok(())
}
