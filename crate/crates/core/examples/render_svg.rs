//! Render a layout to SVG plus the layout JSON a viewer can load.
//!
//!     cargo run --example render_svg -- out/grid

use std::path::PathBuf;

use featgrid::io::write_text;
use featgrid::{
    build_table, full_loss, greedy_place, render, resolve_styles, FeatureRecord, FeatureSubset, InteractionMatrix,
    LayoutConfig, RenderConfig,
};

fn main() -> featgrid::Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("featgrid-example"));
    let types = ["num", "num", "cat", "text", "num", "cat"];
    let table = build_table(
        (0..24)
            .map(|i| {
                FeatureRecord::new(format!("feat_{i:02}"), types[i % types.len()], 1.0 / (1.0 + i as f64))
                    .with_stat("coverage", format!("{:.2}", 1.0 - i as f64 / 40.0))
            })
            .collect(),
    )?;
    let g = InteractionMatrix::zeros(table.len())?;
    let config = LayoutConfig::default();
    let layout = greedy_place(&table, &g, &config)?;
    let loss = full_loss(&table, &g, &layout, config.weights)?;
    let overlays = resolve_styles(&[FeatureSubset::new("top8", table.names().take(8))], &table, &layout)?;

    let render_config = RenderConfig {
        annotation: Some("AUC: 0.91".into()),
        ..RenderConfig::default()
    };
    let (svg, json) = render(&table, &layout, &overlays, loss, &render_config)?;
    write_text(&out.with_extension("svg"), &svg)?;
    write_text(&out.with_extension("json"), &json)?;
    println!("wrote {} and {}", out.with_extension("svg").display(), out.with_extension("json").display());
    Ok(())
}
