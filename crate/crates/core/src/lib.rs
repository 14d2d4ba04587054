//! Interaction-aware grid layouts for ML feature sets.
//!
//! Each feature becomes one square on an integer lattice. Features are placed
//! greedily in descending importance so that strongly interacting features
//! land close together, important features sit near the origin, and features
//! with neighbouring ranks stay near each other. A windowed exhaustive search
//! then refines the placement. The result is rendered to SVG (color = type,
//! saturation = importance, label = rank) with optional subset overlays, and
//! to a versioned layout JSON document for interactive viewers.
//!
//! The pipeline, bottom-up:
//!
//! - [`model`]: feature records, the importance-ordered table, grid positions
//!   and loss weights.
//! - [`interaction`]: the symmetric non-negative pairwise interaction matrix,
//!   built from feature values (|Pearson r|), co-occurrence counts, or loaded
//!   directly.
//! - [`layout`]: full loss, greedy placement and local-search refinement.
//! - [`overlay`]: contour vs. dots resolution and boundary tracing for
//!   highlighted subsets.
//! - [`render`]: colors, the resolved render document, SVG and JSON output.
//! - [`io`] and [`cli`]: file formats and the end-to-end run used by the
//!   `featgrid` binary.

pub mod cli;
pub mod error;
pub mod interaction;
pub mod io;
pub mod layout;
pub mod model;
pub mod overlay;
pub mod render;

pub use error::{Error, Result};
pub use interaction::{InteractionMatrix, NegativeCorrelation};
pub use layout::{full_loss, greedy_place, postprocess, Layout, LayoutConfig, LossBreakdown};
pub use model::{build_table, normalize_importance, FeatureRecord, FeatureTable, GridPos, Weights};
pub use overlay::{resolve_styles, FeatureSubset, OverlaySpec, OverlayStyle};
pub use render::{render, RenderConfig, RenderDocument, Rgb};
