//! Interaction from co-usage counts, e.g. how often two features appear in
//! the same tree of a boosted ensemble.
//!
//!     cargo run --example cooccurrence

use featgrid::interaction::{cooccurrence_interaction, CooccurrenceCounts};

fn main() -> featgrid::Result<()> {
    let mut counts = CooccurrenceCounts::new(3)?;
    for (i, c) in [40, 25, 10].into_iter().enumerate() {
        counts.set_usage(i, c)?;
    }
    counts.set_pair(0, 1, 20)?;
    counts.set_pair(1, 2, 10)?;
    let g = cooccurrence_interaction(&counts)?;
    for i in 0..3 {
        for j in (i + 1)..3 {
            println!("G[{i}][{j}] = {:.4}", g.get(i, j));
        }
    }
    Ok(())
}
