//! Train, save to JSON, load back and predict on raw (unnormalized) data.
//! The model carries its own normalization and class names.

use sssom::data::load_csv;
use sssom::{train, HyperParams, Model, Outcome};

fn main() -> sssom::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/blobs.csv");
    let raw = load_csv(path, Some("kind"))?;
    let ds = raw.normalize()?;
    let params = HyperParams {
        n_max: ds.len(),
        age_wins: 2 * ds.len() as u64,
        epochs: 10,
        ..HyperParams::default()
    };
    let model = Model::new(train(&ds, &params)?, params, &ds);

    let file = std::env::temp_dir().join("sssom-blobs-model.json");
    model.save(&file)?;
    let loaded = Model::load(&file)?;
    assert_eq!(loaded.to_json()?, model.to_json()?);
    println!(
        "saved and reloaded {} ({} nodes)",
        file.display(),
        loaded.map.len()
    );

    for (i, p) in loaded.predict(&raw)?.iter().enumerate().step_by(30) {
        let label = match p.outcome {
            Outcome::Class(c) => loaded.class_name(c).to_string(),
            Outcome::Rejected => "REJECTED".into(),
        };
        println!("pattern {i:3}: {label} (activation {:.3})", p.activation);
    }
    Ok(())
}
