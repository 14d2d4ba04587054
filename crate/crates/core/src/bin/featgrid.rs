use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use featgrid::cli::{exit_code, run, InteractionMode, RunConfig};
use featgrid::layout::{LayoutConfig, DEFAULT_POSTPROCESS_PASSES, DEFAULT_WINDOW_SIZE};
use featgrid::{NegativeCorrelation, RenderConfig, Rgb, Weights};

/// Lay out ML features on a grid and render them to SVG and layout JSON.
#[derive(Debug, Parser)]
#[command(name = "featgrid", version)]
struct Args {
    /// Feature file: CSV `name,type,importance[,stats...]` or JSON records.
    #[arg(long)]
    features: PathBuf,
    /// How pairwise interaction is obtained.
    #[arg(long, default_value = "none", value_parser = ["pearson", "cooccurrence", "matrix", "none"])]
    interaction: String,
    /// Values CSV, co-occurrence CSV or matrix CSV, depending on --interaction.
    #[arg(long)]
    interaction_file: Option<PathBuf>,
    /// Clip negative correlations to zero instead of taking |r|.
    #[arg(long)]
    clip_negative: bool,
    #[arg(long, default_value_t = Weights::default().w1)]
    w1: f64,
    #[arg(long, default_value_t = Weights::default().w2)]
    w2: f64,
    /// Refinement passes after greedy placement.
    #[arg(long, default_value_t = DEFAULT_POSTPROCESS_PASSES)]
    passes: usize,
    /// Features permuted together during refinement (2..=6).
    #[arg(long, default_value_t = DEFAULT_WINDOW_SIZE)]
    window: usize,
    /// Override the candidate box radius.
    #[arg(long)]
    radius: Option<i32>,
    /// Subset file to highlight (at most twice).
    #[arg(long)]
    highlight: Vec<PathBuf>,
    /// Color for the corresponding --highlight (#RRGGBB or a name).
    #[arg(long)]
    highlight_color: Vec<String>,
    /// Text drawn at the top right of the image.
    #[arg(long)]
    annotate: Option<String>,
    #[arg(long)]
    out_svg: Option<PathBuf>,
    #[arg(long)]
    out_json: Option<PathBuf>,
    #[arg(long, default_value_t = RenderConfig::default().cell_px)]
    cell_px: u32,
}

fn config_from(args: Args) -> featgrid::Result<RunConfig> {
    let highlight_colors = args
        .highlight_color
        .iter()
        .map(|c| c.parse::<Rgb>())
        .collect::<featgrid::Result<Vec<_>>>()?;
    Ok(RunConfig {
        features_path: args.features,
        interaction_mode: args.interaction.parse::<InteractionMode>()?,
        interaction_path: args.interaction_file,
        negatives: if args.clip_negative {
            NegativeCorrelation::Clip
        } else {
            NegativeCorrelation::Absolute
        },
        layout: LayoutConfig {
            weights: Weights::new(args.w1, args.w2)?,
            candidate_radius_override: args.radius,
            postprocess_passes: args.passes,
            window_size: args.window,
        },
        highlight_paths: args.highlight,
        highlight_colors,
        render: RenderConfig {
            cell_px: args.cell_px,
            annotation: args.annotate,
            ..RenderConfig::default()
        },
        out_svg: args.out_svg,
        out_json: args.out_json,
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    match config_from(args).and_then(|c| run(&c)) {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
