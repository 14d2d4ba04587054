//! Outline one subset and dot another; the more compact subset gets the
//! outline.
//!
//!     cargo run --example overlays

use featgrid::overlay::area_perimeter;
use featgrid::{build_table, greedy_place, resolve_styles, FeatureRecord, FeatureSubset, InteractionMatrix, LayoutConfig};

fn main() -> featgrid::Result<()> {
    let table = build_table((0..16).map(|i| FeatureRecord::new(format!("f{i}"), "num", 16.0 - i as f64)).collect())?;
    let g = InteractionMatrix::zeros(16)?;
    let layout = greedy_place(&table, &g, &LayoutConfig::default())?;

    let top = FeatureSubset::new("top5", (0..5).map(|i| format!("f{i}")));
    let scattered = FeatureSubset::new("picked", ["f1", "f7", "f12", "f15"]);
    for spec in resolve_styles(&[top, scattered], &table, &layout)? {
        let (area, perimeter) = area_perimeter(&spec.cells)?;
        println!(
            "{:>7}: {} in {} area={area} perimeter={perimeter} loops={}",
            spec.subset.label,
            spec.style.as_str(),
            spec.color,
            spec.polygons.len()
        );
        for poly in &spec.polygons {
            println!("         {poly:?}");
        }
    }
    Ok(())
}
