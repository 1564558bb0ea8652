//! Draw a Latin hypercube over the default parameter ranges and print the
//! resolved parameter sets for a training set of a given size.

use sssom::experiment::{table_ranges, LhsDesign};

fn main() -> sssom::Result<()> {
    let design = LhsDesign::new(table_ranges(), 5, 2024)?;
    for range in &design.ranges {
        println!(
            "{:>9}: [{}, {}] {:?}",
            range.name, range.low, range.high, range.scale
        );
    }
    for id in 0..design.len() {
        let p = design.resolve(id, 200)?;
        println!("--- sample {id}\n{}", p.to_kv());
    }
    Ok(())
}
