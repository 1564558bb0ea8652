//! Accuracy against the fraction of labeled data: a small LHS sweep under
//! 3x3-fold cross-validation, written as CSV and SVG.
//!
//! cargo run --release --example supervision_sweep -- [out_dir] [samples]

use sssom::data::{kfold_split, synthetic::SubspaceClusters};
use sssom::experiment::{
    emit_curve, emit_curve_svg, emit_results, run_sweep, supervision_curve, SweepConfig,
};

fn main() -> sssom::Result<()> {
    let mut args = std::env::args().skip(1);
    let out_dir = args.next().unwrap_or_else(|| "sweep-out".into());
    let samples = args.next().map_or(10, |s| s.parse().expect("sample count"));

    let ds = SubspaceClusters::default().generate(5)?.normalize()?;
    let plan = kfold_split(ds.len(), 3, 3, 5)?;
    let cfg = SweepConfig {
        n_samples: samples,
        seed: 5,
        ..SweepConfig::default()
    };
    let results = run_sweep(&ds, &plan, &cfg)?;
    let curve = supervision_curve(&results)?;

    std::fs::create_dir_all(&out_dir)?;
    let dir = std::path::Path::new(&out_dir);
    emit_results(&results, dir.join("results.csv"))?;
    emit_curve(&curve, dir.join("curve.csv"))?;
    emit_curve_svg(&curve, dir.join("curve.svg"))?;

    for p in &curve {
        println!(
            "{:>5.0}% labels: {:.3} +/- {:.3}",
            p.fraction * 100.0,
            p.mean,
            p.std
        );
    }
    println!("wrote {} runs to {out_dir}", results.len());
    Ok(())
}
