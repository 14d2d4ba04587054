//! Place a handful of features greedily and print the grid and its loss.
//!
//!     cargo run --example greedy_layout

use featgrid::{build_table, full_loss, greedy_place, FeatureRecord, InteractionMatrix, LayoutConfig};

fn main() -> featgrid::Result<()> {
    let table = build_table(vec![
        FeatureRecord::new("age", "num", 0.31),
        FeatureRecord::new("income", "num", 0.22),
        FeatureRecord::new("zip", "cat", 0.12),
        FeatureRecord::new("tenure", "num", 0.09),
        FeatureRecord::new("segment", "cat", 0.05),
    ])?;
    // income and tenure interact strongly, so tenure lands next to income.
    let mut g = vec![0.0; 25];
    for (i, j, v) in [(1, 3, 0.9), (0, 2, 0.3)] {
        g[i * 5 + j] = v;
        g[j * 5 + i] = v;
    }
    let g = InteractionMatrix::from_dense(5, g)?;

    let config = LayoutConfig::default();
    let layout = greedy_place(&table, &g, &config)?;
    for (rec, p) in table.features().iter().zip(layout.positions()) {
        println!("{:>8} -> {p}", rec.name);
    }
    let loss = full_loss(&table, &g, &layout, config.weights)?;
    println!("R={} loss={:.4} (main {:.4})", layout.candidate_radius(), loss.total, loss.main);
    Ok(())
}
