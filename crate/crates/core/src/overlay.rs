//! Highlighting feature subsets on the grid.
//!
//! A subset is drawn either as contours around its cells or as dots inside
//! them. With two subsets, the one whose cell union is more compact (higher
//! area / perimeter ratio) gets contours and the other gets dots.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::layout::Layout;
use crate::model::{FeatureTable, GridPos};
use crate::render::Rgb;

pub const MAX_SUBSETS: usize = 2;

/// Default colors by subset position: yellow, then white.
pub const DEFAULT_COLORS: [Rgb; MAX_SUBSETS] = [Rgb(0xFF, 0xD7, 0x00), Rgb(0xFF, 0xFF, 0xFF)];

/// A corner of the lattice: corner `(x, y)` is the top-left of cell `(x, y)`.
pub type Corner = (i32, i32);

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSubset {
    pub label: String,
    /// Member names in first-seen order, without duplicates.
    pub members: Vec<String>,
    pub color: Option<Rgb>,
}

impl FeatureSubset {
    pub fn new<S: Into<String>>(label: impl Into<String>, members: impl IntoIterator<Item = S>) -> Self {
        let mut seen = HashSet::new();
        let members = members
            .into_iter()
            .map(Into::into)
            .filter(|m: &String| seen.insert(m.clone()))
            .collect();
        FeatureSubset {
            label: label.into(),
            members,
            color: None,
        }
    }

    pub fn with_color(mut self, color: Rgb) -> Self {
        self.color = Some(color);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OverlayStyle {
    Contour,
    Dots,
}

impl OverlayStyle {
    pub fn as_str(self) -> &'static str {
        match self {
            OverlayStyle::Contour => "contour",
            OverlayStyle::Dots => "dots",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OverlaySpec {
    pub subset: FeatureSubset,
    pub style: OverlayStyle,
    pub color: Rgb,
    /// Member cells sorted by `(y, x)`.
    pub cells: Vec<GridPos>,
    /// Boundary loops; empty unless `style` is contour.
    pub polygons: Vec<Vec<Corner>>,
}

fn unique_cells(cells: &[GridPos]) -> Result<HashSet<GridPos>> {
    if cells.is_empty() {
        return Err(Error::invalid("cell set is empty"));
    }
    Ok(cells.iter().copied().collect())
}

/// Cell count and number of unit edges with a member cell on exactly one side.
pub fn area_perimeter(cells: &[GridPos]) -> Result<(usize, usize)> {
    let set = unique_cells(cells)?;
    let mut perimeter = 0;
    for c in &set {
        for (dx, dy) in [(0, -1), (1, 0), (0, 1), (-1, 0)] {
            if !set.contains(&GridPos::new(c.x + dx, c.y + dy)) {
                perimeter += 1;
            }
        }
    }
    Ok((set.len(), perimeter))
}

/// Compares `a1/p1` with `a2/p2` exactly.
fn compare_ratio((a1, p1): (usize, usize), (a2, p2): (usize, usize)) -> Ordering {
    (a1 as u128 * p2 as u128).cmp(&(a2 as u128 * p1 as u128))
}

/// Chooses contour or dots for each subset and resolves cells and colors.
pub fn resolve_styles(subsets: &[FeatureSubset], table: &FeatureTable, layout: &Layout) -> Result<Vec<OverlaySpec>> {
    if subsets.len() > MAX_SUBSETS {
        return Err(Error::invalid(format!(
            "at most {MAX_SUBSETS} highlight subsets are supported, got {}",
            subsets.len()
        )));
    }
    if layout.len() != table.len() {
        return Err(Error::invalid("layout and table sizes differ"));
    }
    let index: HashMap<&str, usize> = table.names().enumerate().map(|(i, n)| (n, i)).collect();
    let mut resolved = Vec::with_capacity(subsets.len());
    for subset in subsets {
        if subset.members.is_empty() {
            return Err(Error::invalid(format!("highlight subset '{}' is empty", subset.label)));
        }
        let mut cells = Vec::with_capacity(subset.members.len());
        for name in &subset.members {
            let i = index.get(name.as_str()).ok_or_else(|| {
                Error::invalid(format!("highlight subset '{}': unknown feature '{name}'", subset.label))
            })?;
            cells.push(layout.position(*i));
        }
        cells.sort_by_key(|c| c.scan_key());
        cells.dedup();
        let ratio = area_perimeter(&cells)?;
        resolved.push((subset, cells, ratio));
    }

    let contour_index = match resolved.as_slice() {
        [(_, _, r0), (_, _, r1)] => {
            if compare_ratio(*r1, *r0) == Ordering::Greater {
                1
            } else {
                0
            }
        }
        _ => 0,
    };

    Ok(resolved
        .into_iter()
        .enumerate()
        .map(|(k, (subset, cells, _))| {
            let style = if k == contour_index {
                OverlayStyle::Contour
            } else {
                OverlayStyle::Dots
            };
            let polygons = match style {
                OverlayStyle::Contour => trace_contours(&cells).expect("non-empty cells"),
                OverlayStyle::Dots => Vec::new(),
            };
            OverlaySpec {
                color: subset.color.unwrap_or(DEFAULT_COLORS[k]),
                subset: subset.clone(),
                style,
                cells,
                polygons,
            }
        })
        .collect())
}

/// Directions in screen coordinates (y grows downward), clockwise order.
const DIRS: [(i32, i32); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];

/// Boundary loops of the union of unit squares.
///
/// Loops run with the member cells on their right, so outer boundaries are
/// clockwise on screen and holes counter-clockwise. Where two cells touch only
/// at a corner the walk turns toward the cell it came along, keeping
/// diagonal neighbours in separate loops. Collinear vertices are merged. Each
/// loop starts at its smallest `(y, x)` vertex and loops are sorted by that
/// vertex, so the result does not depend on input order.
pub fn trace_contours(cells: &[GridPos]) -> Result<Vec<Vec<Corner>>> {
    let set = unique_cells(cells)?;
    let member = |x: i32, y: i32| set.contains(&GridPos::new(x, y));

    // Directed boundary edges keyed by start corner, stored as direction index.
    let mut outgoing: HashMap<Corner, Vec<usize>> = HashMap::new();
    let mut edge_count = 0usize;
    for c in &set {
        let (x, y) = (c.x, c.y);
        if !member(x, y - 1) {
            outgoing.entry((x, y)).or_default().push(0);
            edge_count += 1;
        }
        if !member(x + 1, y) {
            outgoing.entry((x + 1, y)).or_default().push(1);
            edge_count += 1;
        }
        if !member(x, y + 1) {
            outgoing.entry((x + 1, y + 1)).or_default().push(2);
            edge_count += 1;
        }
        if !member(x - 1, y) {
            outgoing.entry((x, y + 1)).or_default().push(3);
            edge_count += 1;
        }
    }

    let mut used: HashSet<(Corner, usize)> = HashSet::with_capacity(edge_count);
    let mut starts: Vec<(Corner, usize)> = outgoing
        .iter()
        .flat_map(|(&v, dirs)| dirs.iter().map(move |&d| (v, d)))
        .collect();
    starts.sort_unstable_by_key(|&((x, y), d)| (y, x, d));

    let mut loops = Vec::new();
    for start in starts {
        if used.contains(&start) {
            continue;
        }
        let mut corners: Vec<Corner> = Vec::new();
        let mut dirs: Vec<usize> = Vec::new();
        let (mut v, mut d) = start;
        loop {
            used.insert((v, d));
            corners.push(v);
            dirs.push(d);
            let next = (v.0 + DIRS[d].0, v.1 + DIRS[d].1);
            let options = &outgoing[&next];
            // Prefer a right turn, then straight, then left.
            let nd = [(d + 1) % 4, d, (d + 3) % 4]
                .into_iter()
                .find(|c| options.contains(c))
                .expect("boundary edges form closed loops");
            v = next;
            d = nd;
            if (v, d) == start {
                break;
            }
        }
        loops.push(canonical_loop(&corners, &dirs));
    }
    debug_assert_eq!(used.len(), edge_count);

    loops.sort_by(|a, b| {
        let ka: Vec<(i32, i32)> = a.iter().map(|&(x, y)| (y, x)).collect();
        let kb: Vec<(i32, i32)> = b.iter().map(|&(x, y)| (y, x)).collect();
        ka.cmp(&kb)
    });
    Ok(loops)
}

/// Drops collinear corners and rotates to the lexicographically smallest
/// `(y, x)` sequence.
fn canonical_loop(corners: &[Corner], dirs: &[usize]) -> Vec<Corner> {
    let n = corners.len();
    let turning: Vec<Corner> = (0..n)
        .filter(|&k| dirs[(k + n - 1) % n] != dirs[k])
        .map(|k| corners[k])
        .collect();
    let m = turning.len();
    let key = |start: usize| -> Vec<(i32, i32)> {
        (0..m).map(|k| turning[(start + k) % m]).map(|(x, y)| (y, x)).collect()
    };
    let best = (0..m).min_by(|&a, &b| key(a).cmp(&key(b))).unwrap_or(0);
    (0..m).map(|k| turning[(best + k) % m]).collect()
}

/// Total edge length of a closed loop in grid units.
pub fn loop_length(points: &[Corner]) -> i64 {
    let n = points.len();
    (0..n)
        .map(|k| {
            let (a, b) = (points[k], points[(k + 1) % n]);
            (a.0 - b.0).abs() as i64 + (a.1 - b.1).abs() as i64
        })
        .sum()
}

/// Twice the signed area; positive for loops that are clockwise on screen.
pub fn signed_area2(points: &[Corner]) -> i64 {
    let n = points.len();
    (0..n)
        .map(|k| {
            let (a, b) = (points[k], points[(k + 1) % n]);
            a.0 as i64 * b.1 as i64 - b.0 as i64 * a.1 as i64
        })
        .sum()
}

/// Cells grouped into 4-connected components, each sorted by `(y, x)`.
pub fn connected_groups(cells: &[GridPos]) -> Vec<Vec<GridPos>> {
    let set: BTreeSet<(i32, i32)> = cells.iter().map(|c| (c.y, c.x)).collect();
    let mut seen = HashSet::new();
    let mut groups = Vec::new();
    for &(y, x) in &set {
        if !seen.insert((y, x)) {
            continue;
        }
        let mut group = vec![GridPos::new(x, y)];
        let mut stack = vec![(y, x)];
        while let Some((cy, cx)) = stack.pop() {
            for (dx, dy) in [(0, -1), (1, 0), (0, 1), (-1, 0)] {
                let n = (cy + dy, cx + dx);
                if set.contains(&n) && seen.insert(n) {
                    group.push(GridPos::new(n.1, n.0));
                    stack.push(n);
                }
            }
        }
        group.sort_by_key(|c| c.scan_key());
        groups.push(group);
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_table, FeatureRecord};
    use proptest::prelude::*;

    fn cells(list: &[(i32, i32)]) -> Vec<GridPos> {
        list.iter().map(|&(x, y)| GridPos::new(x, y)).collect()
    }

    fn block(w: i32, h: i32, ox: i32, oy: i32) -> Vec<GridPos> {
        (0..h).flat_map(|y| (0..w).map(move |x| GridPos::new(ox + x, oy + y))).collect()
    }

    /// Winding number of `loops` around the center of `cell`.
    fn winding(loops: &[Vec<Corner>], cell: GridPos) -> i32 {
        let (px, py) = (cell.x as f64 + 0.5, cell.y as f64 + 0.5);
        let mut w = 0;
        for l in loops {
            for k in 0..l.len() {
                let (a, b) = (l[k], l[(k + 1) % l.len()]);
                // Vertical edges crossing the horizontal ray to +x.
                if a.0 == b.0 && (a.0 as f64) > px {
                    let (lo, hi) = (a.1.min(b.1) as f64, a.1.max(b.1) as f64);
                    if lo < py && py < hi {
                        w += if b.1 > a.1 { 1 } else { -1 };
                    }
                }
            }
        }
        w
    }

    #[test]
    fn area_perimeter_examples() {
        assert_eq!(area_perimeter(&block(2, 2, 0, 0)).unwrap(), (4, 8));
        assert_eq!(area_perimeter(&block(4, 1, 0, 0)).unwrap(), (4, 10));
        assert_eq!(area_perimeter(&cells(&[(3, -2)])).unwrap(), (1, 4));
        assert_eq!(area_perimeter(&cells(&[(0, 0), (0, 0)])).unwrap(), (1, 4));
        assert!(area_perimeter(&[]).is_err());
    }

    #[test]
    fn trace_examples() {
        assert_eq!(trace_contours(&cells(&[(0, 0)])).unwrap(), vec![vec![(0, 0), (1, 0), (1, 1), (0, 1)]]);
        assert_eq!(
            trace_contours(&cells(&[(1, 0), (0, 0)])).unwrap(),
            vec![vec![(0, 0), (2, 0), (2, 1), (0, 1)]]
        );
        let diag = trace_contours(&cells(&[(0, 0), (1, 1)])).unwrap();
        assert_eq!(diag.len(), 2);
        assert_eq!(diag[0], vec![(0, 0), (1, 0), (1, 1), (0, 1)]);
        assert_eq!(diag[1], vec![(1, 1), (2, 1), (2, 2), (1, 2)]);
    }

    #[test]
    fn ring_has_clockwise_outer_and_counter_clockwise_hole() {
        let ring: Vec<GridPos> = block(3, 3, 0, 0).into_iter().filter(|c| *c != GridPos::new(1, 1)).collect();
        let loops = trace_contours(&ring).unwrap();
        assert_eq!(loops.len(), 2);
        assert_eq!(loops[0], vec![(0, 0), (3, 0), (3, 3), (0, 3)]);
        assert!(signed_area2(&loops[0]) > 0);
        assert_eq!(loops[1], vec![(1, 1), (1, 2), (2, 2), (2, 1)]);
        assert!(signed_area2(&loops[1]) < 0);
        assert_eq!(winding(&loops, GridPos::new(1, 1)), 0);
        assert_eq!(winding(&loops, GridPos::new(0, 0)), 1);
    }

    fn two_subsets() -> (FeatureTable, Layout) {
        let recs = (0..8).map(|i| FeatureRecord::new(format!("f{i}"), "t", 10.0 - i as f64)).collect();
        let t = build_table(recs).unwrap();
        let mut pos = block(2, 2, -1, -1);
        pos.extend(block(4, 1, -1, 1));
        (t, Layout::new(pos, 2).unwrap())
    }

    #[test]
    fn compact_subset_gets_contour() {
        let (t, l) = two_subsets();
        let square = FeatureSubset::new("square", ["f0", "f1", "f2", "f3"]);
        let line = FeatureSubset::new("line", ["f4", "f5", "f6", "f7"]);
        let out = resolve_styles(&[line.clone(), square.clone()], &t, &l).unwrap();
        assert_eq!(out[0].style, OverlayStyle::Dots);
        assert_eq!(out[1].style, OverlayStyle::Contour);
        assert!(out[0].polygons.is_empty());
        assert_eq!(out[1].polygons.len(), 1);
        assert_eq!(out[0].color, DEFAULT_COLORS[0]);
        assert_eq!(out[1].color, DEFAULT_COLORS[1]);

        let single = resolve_styles(&[line], &t, &l).unwrap();
        assert_eq!(single[0].style, OverlayStyle::Contour);
    }

    #[test]
    fn equal_ratios_favor_first_subset() {
        let (t, l) = two_subsets();
        let a = FeatureSubset::new("a", ["f4", "f5"]);
        let b = FeatureSubset::new("b", ["f6", "f7"]).with_color(Rgb(1, 2, 3));
        let out = resolve_styles(&[a, b], &t, &l).unwrap();
        assert_eq!(out[0].style, OverlayStyle::Contour);
        assert_eq!(out[1].style, OverlayStyle::Dots);
        assert_eq!(out[1].color, Rgb(1, 2, 3));
    }

    #[test]
    fn resolve_errors() {
        let (t, l) = two_subsets();
        let a = FeatureSubset::new("a", ["f0"]);
        assert!(resolve_styles(&[a.clone(), a.clone(), a], &t, &l).is_err());
        let err = resolve_styles(&[FeatureSubset::new("a", ["nope"])], &t, &l).unwrap_err();
        assert!(err.to_string().contains("'nope'"), "{err}");
        let empty: [&str; 0] = [];
        assert!(resolve_styles(&[FeatureSubset::new("a", empty)], &t, &l).is_err());
    }

    #[test]
    fn groups_use_four_connectivity() {
        let g = connected_groups(&cells(&[(0, 0), (1, 1), (1, 0), (5, 5)]));
        assert_eq!(g.len(), 2);
        assert_eq!(g[0].len(), 3);
        assert_eq!(connected_groups(&cells(&[(0, 0), (1, 1)])).len(), 2);
    }

    proptest! {
        #[test]
        fn contours_match_perimeter_and_enclose_members(raw in proptest::collection::vec((-4i32..4, -4i32..4), 1..40)) {
            let cs = cells(&raw);
            let loops = trace_contours(&cs).unwrap();
            let (_, perimeter) = area_perimeter(&cs).unwrap();
            let total: i64 = loops.iter().map(|l| loop_length(l)).sum();
            prop_assert_eq!(total, perimeter as i64);

            let set: HashSet<GridPos> = cs.iter().copied().collect();
            for y in -5..5 {
                for x in -5..5 {
                    let c = GridPos::new(x, y);
                    prop_assert_eq!(winding(&loops, c), i32::from(set.contains(&c)));
                }
            }

            let mut shuffled = cs.clone();
            shuffled.reverse();
            prop_assert_eq!(trace_contours(&shuffled).unwrap(), loops);
        }
    }
}
