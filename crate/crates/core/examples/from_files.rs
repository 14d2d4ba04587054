//! The full pipeline from files on disk, the same path the command line tool
//! takes. Uses the fixture inputs shipped with the tests.
//!
//!     cargo run --example from_files

use std::path::PathBuf;

use featgrid::cli::{run, InteractionMode, RunConfig};

fn main() {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/golden");
    let out = std::env::temp_dir().join("featgrid-from-files");
    let config = RunConfig {
        features_path: fixtures.join("features.csv"),
        interaction_mode: InteractionMode::Pearson,
        interaction_path: Some(fixtures.join("values.csv")),
        highlight_paths: vec![fixtures.join("top10.json"), fixtures.join("manual.csv")],
        out_svg: Some(out.with_extension("svg")),
        out_json: Some(out.with_extension("json")),
        ..RunConfig::default()
    };
    match run(&config) {
        Ok(summary) => {
            println!("{summary}");
            println!("outputs in {}.{{svg,json}}", out.display());
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(featgrid::cli::exit_code(&e));
        }
    }
}
