//! End-to-end run: read inputs, build interactions, place, refine, render.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::interaction::{cooccurrence_interaction, pearson_interaction, InteractionMatrix, NegativeCorrelation};
use crate::io;
use crate::layout::{full_loss, greedy_place, refine, LayoutConfig, LossBreakdown};
use crate::model::FeatureTable;
use crate::overlay::{resolve_styles, MAX_SUBSETS};
use crate::render::{RenderConfig, RenderDocument, Rgb};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InteractionMode {
    Pearson,
    Cooccurrence,
    Matrix,
    #[default]
    None,
}

impl std::str::FromStr for InteractionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pearson" => Ok(InteractionMode::Pearson),
            "cooccurrence" => Ok(InteractionMode::Cooccurrence),
            "matrix" => Ok(InteractionMode::Matrix),
            "none" => Ok(InteractionMode::None),
            other => Err(Error::invalid(format!(
                "unknown interaction mode '{other}' (expected pearson, cooccurrence, matrix or none)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    pub features_path: PathBuf,
    pub interaction_mode: InteractionMode,
    pub interaction_path: Option<PathBuf>,
    pub negatives: NegativeCorrelation,
    pub layout: LayoutConfig,
    pub highlight_paths: Vec<PathBuf>,
    /// Applied to highlights in order; missing entries use the defaults.
    pub highlight_colors: Vec<Rgb>,
    pub render: RenderConfig,
    pub out_svg: Option<PathBuf>,
    pub out_json: Option<PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.interaction_mode != InteractionMode::None && self.interaction_path.is_none() {
            return Err(Error::invalid(
                "--interaction-file is required when --interaction is pearson, cooccurrence or matrix",
            ));
        }
        if self.highlight_paths.len() > MAX_SUBSETS {
            return Err(Error::invalid(format!(
                "at most {MAX_SUBSETS} --highlight files are supported, got {}",
                self.highlight_paths.len()
            )));
        }
        if self.highlight_colors.len() > self.highlight_paths.len() {
            return Err(Error::invalid("more --highlight-color values than --highlight files"));
        }
        self.layout.validate()?;
        self.render.validate()
    }
}

/// Outcome of a run, also printed by the binary as a one-line summary.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub features: usize,
    pub radius: i32,
    pub loss: LossBreakdown,
    pub greedy_loss: LossBreakdown,
    pub passes: usize,
    pub improvements: usize,
    pub elapsed: Duration,
    pub document: RenderDocument,
    pub svg: String,
    pub json: String,
}

impl std::fmt::Display for RunSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "N={} R={} loss={:.6} (main={:.6} r_center={:.6} r_seq={:.6}) greedy_loss={:.6} passes={} improvements={} time={:.3}s",
            self.features,
            self.radius,
            self.loss.total,
            self.loss.main,
            self.loss.r_center,
            self.loss.r_seq,
            self.greedy_loss.total,
            self.passes,
            self.improvements,
            self.elapsed.as_secs_f64()
        )
    }
}

/// Builds the interaction matrix selected by `config`.
pub fn load_interaction(config: &RunConfig, table: &FeatureTable) -> Result<InteractionMatrix> {
    let path = config.interaction_path.as_deref();
    match (config.interaction_mode, path) {
        (InteractionMode::None, _) => InteractionMatrix::zeros(table.len()),
        (InteractionMode::Pearson, Some(p)) => {
            pearson_interaction(&io::parse_values(p, table)?, config.negatives).map_err(|e| e.context(p.display()))
        }
        (InteractionMode::Cooccurrence, Some(p)) => {
            cooccurrence_interaction(&io::parse_cooccurrence(p, table)?).map_err(|e| e.context(p.display()))
        }
        (InteractionMode::Matrix, Some(p)) => Ok(io::parse_matrix(p, table)?.0),
        (_, None) => Err(Error::invalid("--interaction-file is required for this interaction mode")),
    }
}

/// Runs the whole pipeline and writes the requested outputs.
pub fn run(config: &RunConfig) -> Result<RunSummary> {
    let started = Instant::now();
    config.validate()?;
    let table = io::parse_features(&config.features_path)?;
    let g = load_interaction(config, &table)?;
    let mut subsets = Vec::with_capacity(config.highlight_paths.len());
    for (k, path) in config.highlight_paths.iter().enumerate() {
        let mut s = io::parse_subset(path)?;
        if let Some(&c) = config.highlight_colors.get(k) {
            s.color = Some(c);
        }
        subsets.push(s);
    }

    let greedy = greedy_place(&table, &g, &config.layout)?;
    let greedy_loss = full_loss(&table, &g, &greedy, config.layout.weights)?;
    let refined = refine(&table, &g, &greedy, &config.layout)?;
    let layout = refined.layout;
    let loss = full_loss(&table, &g, &layout, config.layout.weights)?;
    log::info!(
        "greedy loss {:.6} -> refined {:.6} after {} passes",
        greedy_loss.total,
        loss.total,
        refined.passes
    );

    let overlays = resolve_styles(&subsets, &table, &layout)?;
    let document = RenderDocument::build(&table, &layout, &overlays, loss, &config.render)?;
    let svg = document.to_svg(&config.render)?;
    let json = document.to_json();
    if let Some(p) = &config.out_svg {
        io::write_text(p, &svg)?;
    }
    if let Some(p) = &config.out_json {
        io::write_text(p, &json)?;
    }
    Ok(RunSummary {
        features: table.len(),
        radius: layout.candidate_radius(),
        loss,
        greedy_loss,
        passes: refined.passes,
        improvements: refined.improvements,
        elapsed: started.elapsed(),
        document,
        svg,
        json,
    })
}

/// Process exit code for an error: 2 for validation, 1 for I/O.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Validation(_) => 2,
        Error::Io { .. } => 1,
    }
}
