//! SVG and layout-JSON output.
//!
//! [`RenderDocument`] is the resolved visual model: every cell with its fill
//! and label, the type legend, overlays and the loss summary. Both output
//! formats are generated from it and are byte-deterministic: attribute order
//! is fixed and numbers are formatted without locale dependence.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layout::{Layout, LossBreakdown};
use crate::model::{normalize_importance, FeatureTable, GridPos};
use crate::overlay::{Corner, FeatureSubset, OverlaySpec, OverlayStyle};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rgb(pub u8, pub u8, pub u8);

impl Rgb {
    pub const WHITE: Rgb = Rgb(0xFF, 0xFF, 0xFF);
    pub const BLACK: Rgb = Rgb(0, 0, 0);

    /// Relative luminance in `[0, 1]` (sRGB weights, no gamma).
    fn luma(self) -> f64 {
        (0.299 * self.0 as f64 + 0.587 * self.1 as f64 + 0.114 * self.2 as f64) / 255.0
    }
}

impl fmt::Display for Rgb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{:02X}{:02X}{:02X}", self.0, self.1, self.2)
    }
}

impl FromStr for Rgb {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let named = match s.to_ascii_lowercase().as_str() {
            "yellow" => Some(Rgb(0xFF, 0xD7, 0x00)),
            "white" => Some(Rgb::WHITE),
            "black" => Some(Rgb::BLACK),
            "red" => Some(Rgb(0xE4, 0x1A, 0x1C)),
            "blue" => Some(Rgb(0x37, 0x7E, 0xB8)),
            "green" => Some(Rgb(0x4D, 0xAF, 0x4A)),
            "orange" => Some(Rgb(0xFF, 0x7F, 0x00)),
            "cyan" => Some(Rgb(0x00, 0xCE, 0xD1)),
            "magenta" => Some(Rgb(0xFF, 0x00, 0xFF)),
            _ => None,
        };
        if let Some(c) = named {
            return Ok(c);
        }
        let hex = s
            .strip_prefix('#')
            .filter(|h| h.len() == 6 && h.bytes().all(|b| b.is_ascii_hexdigit()))
            .ok_or_else(|| Error::invalid(format!("invalid color '{s}': expected #RRGGBB or a color name")))?;
        let channel = |k: usize| u8::from_str_radix(&hex[k..k + 2], 16).expect("validated hex");
        Ok(Rgb(channel(0), channel(2), channel(4)))
    }
}

impl Serialize for Rgb {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rgb {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Twelve distinguishable hues; yellow and white are left to overlays.
pub const DEFAULT_PALETTE: [Rgb; 12] = [
    Rgb(0xE4, 0x1A, 0x1C),
    Rgb(0x37, 0x7E, 0xB8),
    Rgb(0x4D, 0xAF, 0x4A),
    Rgb(0x98, 0x4E, 0xA3),
    Rgb(0xFF, 0x7F, 0x00),
    Rgb(0xA6, 0x56, 0x28),
    Rgb(0xF7, 0x81, 0xBF),
    Rgb(0x99, 0x99, 0x99),
    Rgb(0x1B, 0x9E, 0x77),
    Rgb(0xD9, 0x5F, 0x02),
    Rgb(0x75, 0x70, 0xB3),
    Rgb(0x66, 0xA6, 0x1E),
];

#[derive(Debug, Clone, PartialEq)]
pub struct RenderConfig {
    pub cell_px: u32,
    pub gap_px: u32,
    pub margin_px: u32,
    pub palette: Vec<Rgb>,
    /// Free text drawn at the top right, e.g. model metrics.
    pub annotation: Option<String>,
    pub font_family: String,
    pub label_font_px: u32,
    pub legend_font_px: u32,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig {
            cell_px: 28,
            gap_px: 2,
            margin_px: 20,
            palette: DEFAULT_PALETTE.to_vec(),
            annotation: None,
            font_family: "Helvetica, Arial, sans-serif".to_owned(),
            label_font_px: 11,
            legend_font_px: 13,
        }
    }
}

impl RenderConfig {
    pub fn validate(&self) -> Result<()> {
        if self.cell_px == 0 || self.cell_px <= self.gap_px {
            return Err(Error::invalid(format!(
                "cell size must exceed the gap (cell_px = {}, gap_px = {})",
                self.cell_px, self.gap_px
            )));
        }
        if self.palette.is_empty() {
            return Err(Error::invalid("palette must not be empty"));
        }
        Ok(())
    }

    fn pitch(&self) -> i64 {
        (self.cell_px + self.gap_px) as i64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LegendEntry {
    #[serde(rename = "type")]
    pub type_tag: String,
    pub color: Rgb,
    pub count: usize,
}

/// Base color per feature type.
///
/// Types are ordered by feature count (descending) then name, and take
/// palette colors in that order, cycling when there are more types than
/// colors. The returned order is the legend order.
pub fn assign_colors(table: &FeatureTable, palette: &[Rgb]) -> Vec<LegendEntry> {
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for f in table.features() {
        *counts.entry(f.type_tag.as_str()).or_default() += 1;
    }
    let mut types: Vec<(&str, usize)> = counts.into_iter().collect();
    types.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    if types.len() > palette.len() {
        log::warn!(
            "{} feature types but only {} palette colors; colors repeat",
            types.len(),
            palette.len()
        );
    }
    types
        .into_iter()
        .enumerate()
        .map(|(k, (t, count))| LegendEntry {
            type_tag: t.to_owned(),
            color: palette[k % palette.len()],
            count,
        })
        .collect()
}

/// White at saturation 0, `base` at saturation 255, linear in between.
pub fn cell_fill(base: Rgb, saturation: u8) -> Rgb {
    let s = saturation as f64;
    let mix = |c: u8| (255.0 - (255 - c) as f64 * s / 255.0).round().clamp(0.0, 255.0) as u8;
    Rgb(mix(base.0), mix(base.1), mix(base.2))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderedCell {
    pub name: String,
    #[serde(rename = "type")]
    pub type_tag: String,
    pub importance: f64,
    /// 1-based selection rank.
    pub rank: usize,
    pub x: i32,
    pub y: i32,
    pub saturation: u8,
    pub fill: Rgb,
    pub stats: serde_json::Map<String, serde_json::Value>,
}

impl RenderedCell {
    pub fn pos(&self) -> GridPos {
        GridPos::new(self.x, self.y)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderedOverlay {
    pub label: String,
    pub style: String,
    pub color: Rgb,
    pub cells: Vec<[i32; 2]>,
    pub polygons: Vec<Vec<[i32; 2]>>,
}

impl From<&OverlaySpec> for RenderedOverlay {
    fn from(o: &OverlaySpec) -> Self {
        RenderedOverlay {
            label: o.subset.label.clone(),
            style: o.style.as_str().to_owned(),
            color: o.color,
            cells: o.cells.iter().map(|c| [c.x, c.y]).collect(),
            polygons: o
                .polygons
                .iter()
                .map(|l| l.iter().map(|&(x, y)| [x, y]).collect())
                .collect(),
        }
    }
}

impl RenderedOverlay {
    pub fn overlay_style(&self) -> Result<OverlayStyle> {
        match self.style.as_str() {
            "contour" => Ok(OverlayStyle::Contour),
            "dots" => Ok(OverlayStyle::Dots),
            other => Err(Error::invalid(format!("unknown overlay style '{other}'"))),
        }
    }

    /// The subset this overlay highlights, with its resolved color.
    pub fn subset(&self, doc: &RenderDocument) -> FeatureSubset {
        let by_pos: HashMap<GridPos, &str> = doc.features.iter().map(|c| (c.pos(), c.name.as_str())).collect();
        let members: Vec<&str> = self
            .cells
            .iter()
            .filter_map(|&[x, y]| by_pos.get(&GridPos::new(x, y)).copied())
            .collect();
        FeatureSubset::new(self.label.clone(), members).with_color(self.color)
    }
}

/// Everything needed to draw the layout; serialized as the layout JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderDocument {
    pub schema_version: u32,
    pub features: Vec<RenderedCell>,
    pub legend: Vec<LegendEntry>,
    pub overlays: Vec<RenderedOverlay>,
    pub annotation: Option<String>,
    pub loss: LossBreakdown,
}

impl RenderDocument {
    pub fn build(
        table: &FeatureTable,
        layout: &Layout,
        overlays: &[OverlaySpec],
        loss: LossBreakdown,
        config: &RenderConfig,
    ) -> Result<Self> {
        config.validate()?;
        if table.len() != layout.len() {
            return Err(Error::invalid(format!(
                "layout has {} positions but the table has {} features",
                layout.len(),
                table.len()
            )));
        }
        let saturation = normalize_importance(table)?;
        let legend = assign_colors(table, &config.palette);
        let base: HashMap<&str, Rgb> = legend.iter().map(|e| (e.type_tag.as_str(), e.color)).collect();
        let features = table
            .features()
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let p = layout.position(i);
                RenderedCell {
                    name: f.name.clone(),
                    type_tag: f.type_tag.clone(),
                    importance: f.importance,
                    rank: i + 1,
                    x: p.x,
                    y: p.y,
                    saturation: saturation[i],
                    fill: cell_fill(base[f.type_tag.as_str()], saturation[i]),
                    stats: f
                        .stats
                        .iter()
                        .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
                        .collect(),
                }
            })
            .collect();
        Ok(RenderDocument {
            schema_version: SCHEMA_VERSION,
            features,
            legend,
            overlays: overlays.iter().map(RenderedOverlay::from).collect(),
            annotation: config.annotation.clone(),
            loss,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("render document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: RenderDocument =
            serde_json::from_str(text).map_err(|e| Error::invalid(format!("layout JSON: {e}")))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::invalid(format!(
                "layout JSON: unsupported schema_version {} (expected {SCHEMA_VERSION})",
                doc.schema_version
            )));
        }
        Ok(doc)
    }

    pub fn to_svg(&self, config: &RenderConfig) -> Result<String> {
        config.validate()?;
        Ok(SvgWriter::new(self, config).write())
    }
}

/// Builds the render document and returns `(svg, json)`.
pub fn render(
    table: &FeatureTable,
    layout: &Layout,
    overlays: &[OverlaySpec],
    loss: LossBreakdown,
    config: &RenderConfig,
) -> Result<(String, String)> {
    let doc = RenderDocument::build(table, layout, overlays, loss, config)?;
    Ok((doc.to_svg(config)?, doc.to_json()))
}

/// Pixel geometry of the canvas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanvasGeometry {
    pub width: i64,
    pub height: i64,
    /// Pixel position of the top-left corner of the cell with the smallest x
    /// and y coordinates.
    pub grid_left: i64,
    pub grid_top: i64,
    pub min_x: i32,
    pub min_y: i32,
    pub pitch: i64,
    pub legend_left: i64,
}

impl CanvasGeometry {
    pub fn of(doc: &RenderDocument, config: &RenderConfig) -> Self {
        let min_x = doc.features.iter().map(|c| c.x).min().unwrap_or(0);
        let max_x = doc.features.iter().map(|c| c.x).max().unwrap_or(0);
        let min_y = doc.features.iter().map(|c| c.y).min().unwrap_or(0);
        let max_y = doc.features.iter().map(|c| c.y).max().unwrap_or(0);
        let pitch = config.pitch();
        let margin = config.margin_px as i64;
        let annotation_band = if doc.annotation.is_some() {
            2 * config.legend_font_px as i64
        } else {
            0
        };
        let grid_w = (max_x - min_x + 1) as i64 * pitch - config.gap_px as i64;
        let grid_h = (max_y - min_y + 1) as i64 * pitch - config.gap_px as i64;
        let legend_left = margin + grid_w + 2 * margin;
        let font = config.legend_font_px as i64;
        let longest = doc
            .legend
            .iter()
            .map(|e| legend_text(e).chars().count() as i64)
            .max()
            .unwrap_or(0);
        let legend_w = font + 8 + longest * font * 6 / 10;
        let legend_h = (doc.legend.len() as i64 + 1) * legend_row(config);
        let annotation_w = doc
            .annotation
            .as_ref()
            .map_or(0, |a| a.chars().count() as i64 * font * 6 / 10);
        let width = (legend_left + legend_w + margin).max(margin + annotation_w + margin);
        let grid_top = margin + annotation_band;
        let height = grid_top + grid_h.max(legend_h) + margin;
        CanvasGeometry {
            width,
            height,
            grid_left: margin,
            grid_top,
            min_x,
            min_y,
            pitch,
            legend_left,
        }
    }

    pub fn cell_origin(&self, p: GridPos) -> (i64, i64) {
        (
            self.grid_left + (p.x - self.min_x) as i64 * self.pitch,
            self.grid_top + (p.y - self.min_y) as i64 * self.pitch,
        )
    }

    /// Pixel position of a lattice corner, centered in the gap between cells.
    pub fn corner(&self, c: Corner, gap_px: u32) -> (f64, f64) {
        let half = gap_px as f64 / 2.0;
        (
            (self.grid_left + (c.0 - self.min_x) as i64 * self.pitch) as f64 - half,
            (self.grid_top + (c.1 - self.min_y) as i64 * self.pitch) as f64 - half,
        )
    }
}

fn legend_row(config: &RenderConfig) -> i64 {
    config.legend_font_px as i64 + 9
}

fn legend_text(e: &LegendEntry) -> String {
    format!("{} ({})", e.type_tag, e.count)
}

/// Formats with at most two decimals and no trailing zeros.
fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_owned()
    } else {
        s.to_owned()
    }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            '\n' => out.push_str("&#10;"),
            c if (c as u32) < 0x20 && c != '\t' => {}
            c => out.push(c),
        }
    }
    out
}

fn stat_text(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

struct SvgWriter<'a> {
    doc: &'a RenderDocument,
    config: &'a RenderConfig,
    geo: CanvasGeometry,
    out: String,
}

impl<'a> SvgWriter<'a> {
    fn new(doc: &'a RenderDocument, config: &'a RenderConfig) -> Self {
        SvgWriter {
            doc,
            config,
            geo: CanvasGeometry::of(doc, config),
            out: String::new(),
        }
    }

    fn write(mut self) -> String {
        let (w, h) = (self.geo.width, self.geo.height);
        let _ = writeln!(self.out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            self.out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="{}" style="background:#FFFFFF">"#,
            escape(&self.config.font_family)
        );
        self.cells();
        self.overlays();
        self.legend();
        self.annotation();
        self.out.push_str("</svg>\n");
        self.out
    }

    fn cells(&mut self) {
        let cell = self.config.cell_px;
        let half = cell as f64 / 2.0;
        let _ = writeln!(self.out, r#"<g class="features">"#);
        for c in &self.doc.features {
            let (x, y) = self.geo.cell_origin(c.pos());
            let mut title = format!("#{} {}\ntype: {}\nimportance: {}", c.rank, c.name, c.type_tag, c.importance);
            for (k, v) in &c.stats {
                let _ = write!(title, "\n{k}: {}", stat_text(v));
            }
            let ink = if c.fill.luma() < 0.5 { Rgb::WHITE } else { Rgb::BLACK };
            let _ = writeln!(
                self.out,
                r#"<g class="feature" data-rank="{}" data-name="{}"><title>{}</title><rect x="{x}" y="{y}" width="{cell}" height="{cell}" fill="{}"/><text x="{}" y="{}" font-size="{}" text-anchor="middle" dominant-baseline="central" fill="{ink}">{}</text></g>"#,
                c.rank,
                escape(&c.name),
                escape(&title),
                c.fill,
                num(x as f64 + half),
                num(y as f64 + half),
                self.config.label_font_px,
                c.rank
            );
        }
        let _ = writeln!(self.out, "</g>");
    }

    fn overlays(&mut self) {
        if self.doc.overlays.is_empty() {
            return;
        }
        let _ = writeln!(self.out, r#"<g class="overlays">"#);
        for o in &self.doc.overlays {
            match o.style.as_str() {
                "contour" => {
                    let d = self.contour_path(o);
                    let _ = writeln!(
                        self.out,
                        r##"<path class="contour-halo" data-label="{}" d="{d}" fill="none" stroke="#333333" stroke-width="5" stroke-linejoin="round"/>"##,
                        escape(&o.label)
                    );
                    let _ = writeln!(
                        self.out,
                        r#"<path class="contour" data-label="{}" d="{d}" fill="none" stroke="{}" stroke-width="3" stroke-linejoin="round"/>"#,
                        escape(&o.label),
                        o.color
                    );
                }
                _ => {
                    let half = self.config.cell_px as f64 / 2.0;
                    let r = num(self.config.cell_px as f64 / 6.0);
                    let _ = writeln!(self.out, r#"<g class="dots" data-label="{}">"#, escape(&o.label));
                    for &[x, y] in &o.cells {
                        let (px, py) = self.geo.cell_origin(GridPos::new(x, y));
                        let _ = writeln!(
                            self.out,
                            r##"<circle cx="{}" cy="{}" r="{r}" fill="{}" stroke="#333333" stroke-width="1"/>"##,
                            num(px as f64 + half),
                            num(py as f64 + half),
                            o.color
                        );
                    }
                    let _ = writeln!(self.out, "</g>");
                }
            }
        }
        let _ = writeln!(self.out, "</g>");
    }

    fn contour_path(&self, o: &RenderedOverlay) -> String {
        let mut d = String::new();
        for poly in &o.polygons {
            for (k, &[cx, cy]) in poly.iter().enumerate() {
                let (px, py) = self.geo.corner((cx, cy), self.config.gap_px);
                if !d.is_empty() {
                    d.push(' ');
                }
                let _ = write!(d, "{}{} {}", if k == 0 { 'M' } else { 'L' }, num(px), num(py));
            }
            d.push_str(" Z");
        }
        d
    }

    fn legend(&mut self) {
        let font = self.config.legend_font_px as i64;
        let row = legend_row(self.config);
        let x = self.geo.legend_left;
        let mut y = self.geo.grid_top;
        let _ = writeln!(self.out, r#"<g class="legend" font-size="{font}">"#);
        let _ = writeln!(
            self.out,
            r#"<text x="{x}" y="{}" font-weight="bold">Feature types</text>"#,
            y + font
        );
        for e in &self.doc.legend {
            y += row;
            // Swatches are paths so that `rect` elements map one-to-one to features.
            let _ = writeln!(
                self.out,
                r##"<path d="M{x} {y} h{font} v{font} h-{font} Z" fill="{}" stroke="#333333" stroke-width="0.5"/><text x="{}" y="{}">{}</text>"##,
                e.color,
                x + font + 8,
                y + font - 2,
                escape(&legend_text(e))
            );
        }
        let _ = writeln!(self.out, "</g>");
    }

    fn annotation(&mut self) {
        if let Some(text) = &self.doc.annotation {
            let _ = writeln!(
                self.out,
                r#"<text class="annotation" x="{}" y="{}" font-size="{}" text-anchor="end">{}</text>"#,
                self.geo.width - self.config.margin_px as i64,
                self.config.margin_px as i64 + self.config.legend_font_px as i64,
                self.config.legend_font_px,
                escape(text)
            );
        }
    }
}
