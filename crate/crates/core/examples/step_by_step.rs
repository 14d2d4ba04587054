//! Drive the placer one feature at a time and show the candidate costs the
//! first few steps chose from.
//!
//!     cargo run --example step_by_step

use featgrid::layout::GreedyPlacer;
use featgrid::{build_table, FeatureRecord, InteractionMatrix, LayoutConfig};

fn main() -> featgrid::Result<()> {
    let table = build_table((0..6).map(|i| FeatureRecord::new(format!("f{i}"), "num", 6.0 - i as f64)).collect())?;
    let mut g = vec![0.0; 36];
    g[5] = 1.0; // f0 <-> f5
    g[30] = 1.0;
    let g = InteractionMatrix::from_dense(6, g)?;

    let config = LayoutConfig::default();
    let mut placer = GreedyPlacer::new(&table, &g, &config)?;
    while !placer.is_done() {
        let i = placer.step();
        let best = placer
            .candidate_cells()
            .filter(|&q| placer.is_free(q))
            .map(|q| placer.candidate_cost(q))
            .fold(f64::INFINITY, f64::min);
        let q = placer.place_next().expect("box has room");
        println!("step {i}: f{i} -> {q} cost {best:.3}");
    }
    Ok(())
}
