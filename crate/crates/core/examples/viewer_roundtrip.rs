//! What an interactive viewer does with the layout JSON: load it, select
//! features, export the selection, and hand it back as a highlight.
//!
//!     cargo run --example viewer_roundtrip

use std::path::PathBuf;

use featgrid::io::{parse_subset, subset_to_json, write_text};
use featgrid::{FeatureSubset, RenderDocument};

fn main() -> featgrid::Result<()> {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/golden");
    let text = std::fs::read_to_string(fixtures.join("expected.json")).expect("fixture exists");
    let doc = RenderDocument::from_json(&text)?;
    println!("schema v{} with {} features", doc.schema_version, doc.features.len());

    // Select every feature in the top row of the grid.
    let top_y = doc.features.iter().map(|c| c.y).min().unwrap_or(0);
    let picked: Vec<&str> = doc.features.iter().filter(|c| c.y == top_y).map(|c| c.name.as_str()).collect();
    let path = std::env::temp_dir().join("featgrid-selection.json");
    write_text(&path, &subset_to_json(&FeatureSubset::new("top row", picked)))?;

    let back = parse_subset(&path)?;
    println!("exported '{}' with {} members to {}", back.label, back.members.len(), path.display());
    println!("pass it to the tool with --highlight {}", path.display());
    Ok(())
}
