//! Train on a small synthetic problem with 10% of the labels and classify the
//! rest.

use sssom::data::synthetic::SubspaceClusters;
use sssom::inference::{accuracy, classify_all};
use sssom::{train, HyperParams};

fn main() -> sssom::Result<()> {
    let full = SubspaceClusters::default().generate(42)?.normalize()?;
    let ds = full.mask_labels(0.10, 7)?;
    println!(
        "{} patterns, {} labeled, {} dims",
        ds.len(),
        ds.labeled_count(),
        ds.dim()
    );

    let params = HyperParams {
        a_t: 0.85,
        beta: 0.13,
        e_b: 0.07,
        e_n: 0.02,
        push_rate: 0.05,
        minwd: 0.5,
        n_max: ds.len(),
        age_wins: 20 * ds.len() as u64,
        epochs: 30,
        ..HyperParams::default()
    };
    let map = train(&ds, &params)?;
    println!("{} nodes, {} labeled", map.len(), map.labeled_count());

    let preds = classify_all(&map, &full.patterns, params.a_t)?;
    println!(
        "accuracy on all patterns: {:.3}",
        accuracy(&preds, &full.labels)
    );
    Ok(())
}
