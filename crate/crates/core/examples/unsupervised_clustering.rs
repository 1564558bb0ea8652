//! With no labels at all the map is a plain subspace clusterer. Prints each
//! cluster's size and the dimensions it considers relevant.

use sssom::data::synthetic::SubspaceClusters;
use sssom::{cluster, train, Assignment, HyperParams};

fn main() -> sssom::Result<()> {
    let ds = SubspaceClusters::default()
        .generate(3)?
        .mask_labels(0.0, 0)?
        .normalize()?;
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

    let mut sizes = vec![0usize; map.len()];
    let mut outliers = 0;
    for x in &ds.patterns {
        match cluster(&map, x, params.a_t)? {
            Assignment::Cluster { node, .. } => sizes[node] += 1,
            Assignment::Outlier => outliers += 1,
        }
    }
    for (id, node) in map.nodes().iter().enumerate() {
        let relevant: Vec<&str> = node
            .relevance
            .iter()
            .zip(&ds.dim_names)
            .filter(|(w, _)| **w > 0.5)
            .map(|(_, name)| name.as_str())
            .collect();
        println!(
            "node {id}: {:3} patterns, relevant {:?}",
            sizes[id], relevant
        );
    }
    println!("outliers: {outliers}");
    Ok(())
}
