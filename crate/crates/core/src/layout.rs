//! Grid placement of features.
//!
//! Features are assigned distinct lattice cells so as to reduce
//!
//! ```text
//! loss = Σ_i I_i Σ_{j<i} G_ij ‖p_i − p_j‖²          (main)
//!      + w1 Σ_i I_i ‖p_i‖²                           (centering)
//!      + w2 Σ_{i≥1} I_i ‖p_i − p_{i−1}‖²             (rank sequence)
//! ```
//!
//! where `i` is the selection index (descending importance). Exact
//! minimization is a quadratic assignment problem, so [`greedy_place`] places
//! one feature at a time against a per-step proxy, and [`postprocess`]
//! exhaustively permutes small windows of nearby features against the full
//! loss.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interaction::InteractionMatrix;
use crate::model::{FeatureTable, GridPos, Weights};

pub const DEFAULT_POSTPROCESS_PASSES: usize = 3;
pub const DEFAULT_WINDOW_SIZE: usize = 4;
pub const MIN_WINDOW_SIZE: usize = 2;
pub const MAX_WINDOW_SIZE: usize = 6;

/// Relative improvement a window permutation must achieve to be adopted.
/// Smaller differences are treated as ties and keep the current arrangement.
const IMPROVEMENT_TOLERANCE: f64 = 1e-12;

/// Positions indexed by selection index, plus the candidate radius used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    positions: Vec<GridPos>,
    candidate_radius: i32,
}

impl Layout {
    /// Checks that positions are pairwise distinct and inside the box of
    /// Chebyshev radius `candidate_radius`.
    pub fn new(positions: Vec<GridPos>, candidate_radius: i32) -> Result<Self> {
        if candidate_radius < 0 {
            return Err(Error::invalid(format!("candidate radius must be >= 0, got {candidate_radius}")));
        }
        let mut sorted = positions.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("layout: two features share cell {}", w[0])));
        }
        if let Some(p) = positions.iter().find(|p| p.chebyshev_norm() > candidate_radius) {
            return Err(Error::invalid(format!(
                "layout: cell {p} lies outside candidate radius {candidate_radius}"
            )));
        }
        Ok(Layout {
            positions,
            candidate_radius,
        })
    }

    pub fn positions(&self) -> &[GridPos] {
        &self.positions
    }

    pub fn position(&self, index: usize) -> GridPos {
        self.positions[index]
    }

    pub fn candidate_radius(&self) -> i32 {
        self.candidate_radius
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayoutConfig {
    pub weights: Weights,
    pub candidate_radius_override: Option<i32>,
    pub postprocess_passes: usize,
    pub window_size: usize,
}

impl Default for LayoutConfig {
    fn default() -> Self {
        LayoutConfig {
            weights: Weights::default(),
            candidate_radius_override: None,
            postprocess_passes: DEFAULT_POSTPROCESS_PASSES,
            window_size: DEFAULT_WINDOW_SIZE,
        }
    }
}

impl LayoutConfig {
    pub fn validate(&self) -> Result<()> {
        self.weights.validate()?;
        if !(MIN_WINDOW_SIZE..=MAX_WINDOW_SIZE).contains(&self.window_size) {
            return Err(Error::invalid(format!(
                "window size must be in [{MIN_WINDOW_SIZE}, {MAX_WINDOW_SIZE}], got {}",
                self.window_size
            )));
        }
        if let Some(r) = self.candidate_radius_override {
            if r < 0 {
                return Err(Error::invalid(format!("candidate radius must be >= 0, got {r}")));
            }
        }
        Ok(())
    }

    /// Radius of the candidate box for `n` features.
    pub fn radius_for(&self, n: usize) -> i32 {
        self.candidate_radius_override.unwrap_or_else(|| default_radius(n))
    }
}

/// Smallest `R` with `(2R + 1)² >= 4n`.
pub fn default_radius(n: usize) -> i32 {
    let need = 4 * n as u64;
    let mut r: u64 = 0;
    while (2 * r + 1) * (2 * r + 1) < need {
        r += 1;
    }
    r as i32
}

/// The three terms of the loss and their weighted total.
///
/// `r_center` and `r_seq` are reported unweighted; `total` applies `w1`/`w2`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LossBreakdown {
    pub total: f64,
    pub main: f64,
    pub r_center: f64,
    pub r_seq: f64,
}

fn check_sizes(table: &FeatureTable, g: &InteractionMatrix, n_positions: Option<usize>) -> Result<()> {
    if g.len() != table.len() {
        return Err(Error::invalid(format!(
            "interaction matrix is {0}x{0} but the table has {1} features",
            g.len(),
            table.len()
        )));
    }
    if let Some(n) = n_positions {
        if n != table.len() {
            return Err(Error::invalid(format!(
                "layout has {n} positions but the table has {} features",
                table.len()
            )));
        }
    }
    Ok(())
}

/// Evaluates the full loss for `layout`.
pub fn full_loss(table: &FeatureTable, g: &InteractionMatrix, layout: &Layout, w: Weights) -> Result<LossBreakdown> {
    check_sizes(table, g, Some(layout.len()))?;
    Ok(loss_of_positions(table, g, &layout.positions, w))
}

fn loss_of_positions(table: &FeatureTable, g: &InteractionMatrix, pos: &[GridPos], w: Weights) -> LossBreakdown {
    let mut main = 0.0;
    let mut r_center = 0.0;
    let mut r_seq = 0.0;
    for i in 0..pos.len() {
        let imp = table.importance(i);
        let row = g.row(i);
        let mut inner = 0.0;
        for j in 0..i {
            inner += row[j] * pos[i].dist_sq(pos[j]) as f64;
        }
        main += imp * inner;
        r_center += imp * pos[i].norm_sq() as f64;
        if i > 0 {
            r_seq += imp * pos[i].dist_sq(pos[i - 1]) as f64;
        }
    }
    LossBreakdown {
        total: main + w.w1 * r_center + w.w2 * r_seq,
        main,
        r_center,
        r_seq,
    }
}

/// Step-by-step greedy placement.
///
/// Keeps, for every not-yet-placed feature `k`, the aggregates
/// `S_k = Σ G_kj`, `m_k = Σ G_kj p_j` and `t_k = Σ G_kj ‖p_j‖²` over placed
/// `j`, so the proxy cost of a candidate cell is
/// `S‖q‖² − 2 q·m + t + w1‖q‖² + w2‖q − p_prev‖²` in constant time.
pub struct GreedyPlacer<'a> {
    g: &'a InteractionMatrix,
    weights: Weights,
    radius: i32,
    side: usize,
    occupied: Vec<bool>,
    positions: Vec<GridPos>,
    s: Vec<f64>,
    mx: Vec<f64>,
    my: Vec<f64>,
    t: Vec<f64>,
}

impl<'a> GreedyPlacer<'a> {
    pub fn new(table: &FeatureTable, g: &'a InteractionMatrix, config: &LayoutConfig) -> Result<Self> {
        config.validate()?;
        check_sizes(table, g, None)?;
        let n = table.len();
        let radius = config.radius_for(n);
        let side = 2 * radius as usize + 1;
        if n > side * side {
            return Err(Error::invalid(format!(
                "{n} features do not fit in a candidate box of radius {radius} ({} cells)",
                side * side
            )));
        }
        Ok(GreedyPlacer {
            g,
            weights: config.weights,
            radius,
            side,
            occupied: vec![false; side * side],
            positions: Vec::with_capacity(n),
            s: vec![0.0; n],
            mx: vec![0.0; n],
            my: vec![0.0; n],
            t: vec![0.0; n],
        })
    }

    pub fn radius(&self) -> i32 {
        self.radius
    }

    /// Selection index of the next feature to be placed.
    pub fn step(&self) -> usize {
        self.positions.len()
    }

    pub fn is_done(&self) -> bool {
        self.positions.len() == self.g.len()
    }

    pub fn placed(&self) -> &[GridPos] {
        &self.positions
    }

    fn slot(&self, q: GridPos) -> usize {
        let r = self.radius;
        (q.y + r) as usize * self.side + (q.x + r) as usize
    }

    pub fn is_free(&self, q: GridPos) -> bool {
        q.chebyshev_norm() <= self.radius && !self.occupied[self.slot(q)]
    }

    /// All cells of the candidate box in scan order (row, then column).
    pub fn candidate_cells(&self) -> impl Iterator<Item = GridPos> {
        let r = self.radius;
        (-r..=r).flat_map(move |y| (-r..=r).map(move |x| GridPos::new(x, y)))
    }

    /// Proxy cost of putting the next feature at `q`, from the aggregates.
    pub fn candidate_cost(&self, q: GridPos) -> f64 {
        let i = self.step();
        let (qx, qy) = (q.x as f64, q.y as f64);
        let qq = q.norm_sq() as f64;
        let mut cost = self.s[i] * qq - 2.0 * (qx * self.mx[i] + qy * self.my[i]) + self.t[i];
        cost += self.weights.w1 * qq;
        if let Some(&prev) = self.positions.last() {
            cost += self.weights.w2 * q.dist_sq(prev) as f64;
        }
        cost
    }

    /// Places the next feature in the cheapest free cell. Equal costs go to
    /// the cell with the smallest `(y, x)`.
    pub fn place_next(&mut self) -> Option<GridPos> {
        if self.is_done() {
            return None;
        }
        let mut best: Option<(f64, GridPos)> = None;
        for q in self.candidate_cells() {
            if self.occupied[self.slot(q)] {
                continue;
            }
            let c = self.candidate_cost(q);
            // Strict comparison keeps the earliest cell in scan order on ties.
            if best.is_none_or(|(bc, _)| c < bc) {
                best = Some((c, q));
            }
        }
        let (_, q) = best.expect("box capacity checked at construction");
        self.commit(q);
        Some(q)
    }

    fn commit(&mut self, q: GridPos) {
        let i = self.step();
        let slot = self.slot(q);
        self.occupied[slot] = true;
        self.positions.push(q);
        let (qx, qy, qq) = (q.x as f64, q.y as f64, q.norm_sq() as f64);
        let row = self.g.row(i);
        for k in (i + 1)..self.g.len() {
            let gk = row[k];
            if gk != 0.0 {
                self.s[k] += gk;
                self.mx[k] += gk * qx;
                self.my[k] += gk * qy;
                self.t[k] += gk * qq;
            }
        }
    }

    pub fn finish(mut self) -> Layout {
        while self.place_next().is_some() {}
        Layout {
            positions: self.positions,
            candidate_radius: self.radius,
        }
    }
}

/// Greedy placement in descending importance order.
pub fn greedy_place(table: &FeatureTable, g: &InteractionMatrix, config: &LayoutConfig) -> Result<Layout> {
    if table.is_empty() {
        return Err(Error::invalid("cannot lay out an empty feature table"));
    }
    Ok(GreedyPlacer::new(table, g, config)?.finish())
}

/// What a refinement run did.
#[derive(Debug, Clone, PartialEq)]
pub struct Refinement {
    pub layout: Layout,
    /// Passes executed, including the final one that found nothing to improve.
    pub passes: usize,
    /// Number of windows whose arrangement was changed.
    pub improvements: usize,
}

/// Windowed exhaustive refinement; see [`refine`].
pub fn postprocess(
    table: &FeatureTable,
    g: &InteractionMatrix,
    layout: &Layout,
    config: &LayoutConfig,
) -> Result<Layout> {
    Ok(refine(table, g, layout, config)?.layout)
}

/// Improves `layout` by permuting small groups of nearby features.
///
/// Each pass visits features in rank order. For feature `i` the window is `i`
/// plus its `window_size − 1` nearest placed features (ties by rank); all
/// permutations of those features over their current cells are scored under
/// the full loss and the best one is adopted if it is strictly better. Passes
/// stop early once a pass changes nothing.
pub fn refine(table: &FeatureTable, g: &InteractionMatrix, layout: &Layout, config: &LayoutConfig) -> Result<Refinement> {
    config.validate()?;
    check_sizes(table, g, Some(layout.len()))?;
    let n = layout.len();
    let mut pos = layout.positions.clone();
    let mut passes = 0;
    let mut improvements = 0;
    let k = config.window_size.min(n);
    if k >= 2 {
        let mut window = WindowSearch::new(k);
        for _ in 0..config.postprocess_passes {
            passes += 1;
            let mut changed = false;
            for i in 0..n {
                window.select(i, &pos);
                if window.improve(table, g, config.weights, &mut pos) {
                    changed = true;
                    improvements += 1;
                }
            }
            if !changed {
                break;
            }
        }
    }
    Ok(Refinement {
        layout: Layout {
            positions: pos,
            candidate_radius: layout.candidate_radius,
        },
        passes,
        improvements,
    })
}

/// Scratch space for one window evaluation.
struct WindowSearch {
    size: usize,
    members: Vec<usize>,
    /// `external[a * size + b]`: cost of member `a` sitting on slot `b`
    /// against everything outside the window.
    external: Vec<f64>,
    /// `pair[a * size + b]`: weight of the squared distance between members.
    pair: Vec<f64>,
    slots: Vec<GridPos>,
    perms: Vec<Vec<usize>>,
}

impl WindowSearch {
    fn new(size: usize) -> Self {
        WindowSearch {
            size,
            members: Vec::with_capacity(size),
            external: vec![0.0; size * size],
            pair: vec![0.0; size * size],
            slots: Vec::with_capacity(size),
            perms: permutations(size),
        }
    }

    /// Feature `center` plus its nearest neighbours, ordered by rank.
    fn select(&mut self, center: usize, pos: &[GridPos]) {
        let want = self.size - 1;
        let c = pos[center];
        let mut near: Vec<(i64, usize)> = Vec::with_capacity(want + 1);
        for (j, &p) in pos.iter().enumerate() {
            if j == center {
                continue;
            }
            let key = (c.dist_sq(p), j);
            if near.len() < want {
                let at = near.partition_point(|e| *e < key);
                near.insert(at, key);
            } else if key < near[want - 1] {
                near.pop();
                let at = near.partition_point(|e| *e < key);
                near.insert(at, key);
            }
        }
        self.members.clear();
        self.members.push(center);
        self.members.extend(near.iter().map(|&(_, j)| j));
        self.members.sort_unstable();
    }

    /// Weight of the squared distance between features `a` and `b` in the
    /// main term plus, for consecutive ranks, the sequence term.
    fn coupling(table: &FeatureTable, g: &InteractionMatrix, w: Weights, a: usize, b: usize) -> f64 {
        let later = a.max(b);
        let mut c = table.importance(later) * g.get(a, b);
        if a.abs_diff(b) == 1 {
            c += w.w2 * table.importance(later);
        }
        c
    }

    fn improve(&mut self, table: &FeatureTable, g: &InteractionMatrix, w: Weights, pos: &mut [GridPos]) -> bool {
        let k = self.members.len();
        debug_assert_eq!(k, self.size);
        self.slots.clear();
        self.slots.extend(self.members.iter().map(|&m| pos[m]));

        for (a, &fa) in self.members.iter().enumerate() {
            let imp = table.importance(fa);
            let row = g.row(fa);
            for (b, &q) in self.slots.iter().enumerate() {
                let mut cost = w.w1 * imp * q.norm_sq() as f64;
                for (o, &po) in pos.iter().enumerate() {
                    if self.members.binary_search(&o).is_ok() {
                        continue;
                    }
                    let d = q.dist_sq(po) as f64;
                    let later = table.importance(fa.max(o));
                    let mut c = later * row[o];
                    if fa.abs_diff(o) == 1 {
                        c += w.w2 * later;
                    }
                    if c != 0.0 {
                        cost += c * d;
                    }
                }
                self.external[a * k + b] = cost;
            }
            for (b, &fb) in self.members.iter().enumerate() {
                self.pair[a * k + b] = if a == b { 0.0 } else { Self::coupling(table, g, w, fa, fb) };
            }
        }

        let score = |perm: &[usize], ext: &[f64], pair: &[f64], slots: &[GridPos]| -> f64 {
            let mut total = 0.0;
            for a in 0..k {
                total += ext[a * k + perm[a]];
                for b in (a + 1)..k {
                    let c = pair[a * k + b];
                    if c != 0.0 {
                        total += c * slots[perm[a]].dist_sq(slots[perm[b]]) as f64;
                    }
                }
            }
            total
        };

        // perms[0] is the identity: member a stays on slot a.
        let current = score(&self.perms[0], &self.external, &self.pair, &self.slots);
        let mut best = (current, 0);
        for (idx, perm) in self.perms.iter().enumerate().skip(1) {
            let c = score(perm, &self.external, &self.pair, &self.slots);
            if c < best.0 {
                best = (c, idx);
            }
        }
        let threshold = current - IMPROVEMENT_TOLERANCE * current.abs();
        if best.1 == 0 || best.0 >= threshold {
            return false;
        }
        let perm = &self.perms[best.1];
        for (a, &m) in self.members.iter().enumerate() {
            pos[m] = self.slots[perm[a]];
        }
        true
    }
}

/// All permutations of `0..k` in lexicographic order, identity first.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // Next lexicographic permutation.
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_table, FeatureRecord};

    fn table(imps: &[f64]) -> FeatureTable {
        build_table(
            imps.iter()
                .enumerate()
                .map(|(i, &v)| FeatureRecord::new(format!("f{i}"), "num", v))
                .collect(),
        )
        .unwrap()
    }

    fn matrix(n: usize, pairs: &[(usize, usize, f64)]) -> InteractionMatrix {
        let mut e = vec![0.0; n * n];
        for &(i, j, v) in pairs {
            e[i * n + j] = v;
            e[j * n + i] = v;
        }
        InteractionMatrix::from_dense(n, e).unwrap()
    }

    fn p(x: i32, y: i32) -> GridPos {
        GridPos::new(x, y)
    }

    #[test]
    fn radius_rule() {
        assert_eq!(default_radius(0), 0);
        assert_eq!(default_radius(1), 1);
        assert_eq!(default_radius(2), 1);
        assert_eq!(default_radius(3), 2);
        assert_eq!(default_radius(6), 2);
        assert_eq!(default_radius(7), 3);
        for n in 1..500 {
            let r = default_radius(n) as usize;
            assert!((2 * r + 1).pow(2) >= 4 * n);
            assert!(r == 0 || (2 * r - 1).pow(2) < 4 * n);
        }
    }

    #[test]
    fn layout_rejects_collisions_and_out_of_box() {
        assert!(Layout::new(vec![p(0, 0), p(0, 0)], 1).is_err());
        assert!(Layout::new(vec![p(2, 0)], 1).is_err());
        assert!(Layout::new(vec![p(1, -1), p(0, 0)], 1).is_ok());
    }

    #[test]
    fn loss_examples() {
        let t = table(&[5.0]);
        let l = Layout::new(vec![p(0, 0)], 1).unwrap();
        assert_eq!(full_loss(&t, &matrix(1, &[]), &l, Weights::default()).unwrap().total, 0.0);

        let t = table(&[2.0, 1.0]);
        let l = Layout::new(vec![p(0, 0), p(1, 0)], 1).unwrap();
        let loss = full_loss(&t, &matrix(2, &[(0, 1, 0.5)]), &l, Weights::default()).unwrap();
        assert!((loss.total - 0.57).abs() < 1e-12);
        assert_eq!(loss.main, 0.5);
        assert_eq!(loss.r_center, 1.0);
        assert_eq!(loss.r_seq, 1.0);
    }

    #[test]
    fn loss_rejects_size_mismatch() {
        let t = table(&[2.0, 1.0]);
        let l = Layout::new(vec![p(0, 0)], 1).unwrap();
        assert!(full_loss(&t, &matrix(2, &[]), &l, Weights::default()).is_err());
        let l = Layout::new(vec![p(0, 0), p(0, 1)], 1).unwrap();
        assert!(full_loss(&t, &matrix(3, &[]), &l, Weights::default()).is_err());
    }

    #[test]
    fn greedy_small_examples() {
        let cfg = LayoutConfig::default();
        let one = greedy_place(&table(&[1.0]), &matrix(1, &[]), &cfg).unwrap();
        assert_eq!(one.positions(), [p(0, 0)]);

        let two = greedy_place(&table(&[2.0, 1.0]), &matrix(2, &[]), &cfg).unwrap();
        assert_eq!(two.positions(), [p(0, 0), p(0, -1)]);

        let t = table(&[3.0, 2.0, 1.0]);
        let g = matrix(3, &[(0, 2, 1.0)]);
        let mut placer = GreedyPlacer::new(&t, &g, &cfg).unwrap();
        placer.place_next();
        placer.place_next();
        assert!((placer.candidate_cost(p(-1, 0)) - 1.09).abs() < 1e-12);
        assert!((placer.candidate_cost(p(1, 0)) - 1.09).abs() < 1e-12);
        let layout = placer.finish();
        assert_eq!(layout.positions(), [p(0, 0), p(0, -1), p(-1, 0)]);
        let loss = full_loss(&t, &g, &layout, cfg.weights).unwrap();
        assert!((loss.total - 1.23).abs() < 1e-12);
    }

    #[test]
    fn greedy_rejects_undersized_box_and_empty_table() {
        let cfg = LayoutConfig {
            candidate_radius_override: Some(0),
            ..LayoutConfig::default()
        };
        assert!(greedy_place(&table(&[2.0, 1.0]), &matrix(2, &[]), &cfg).is_err());
        assert!(greedy_place(&table(&[]), &matrix(0, &[]), &LayoutConfig::default()).is_err());
    }

    #[test]
    fn window_size_is_bounded() {
        for bad in [0, 1, 7] {
            let cfg = LayoutConfig {
                window_size: bad,
                ..LayoutConfig::default()
            };
            assert!(cfg.validate().is_err(), "window {bad}");
        }
    }

    #[test]
    fn permutations_are_lexicographic() {
        assert_eq!(permutations(1), vec![vec![0]]);
        let p3 = permutations(3);
        assert_eq!(p3.len(), 6);
        assert_eq!(p3[0], [0, 1, 2]);
        assert_eq!(p3[5], [2, 1, 0]);
        assert_eq!(permutations(6).len(), 720);
    }

    #[test]
    fn refine_keeps_optimal_two_feature_layout() {
        let t = table(&[2.0, 1.0]);
        let g = matrix(2, &[(0, 1, 0.7)]);
        let cfg = LayoutConfig::default();
        let greedy = greedy_place(&t, &g, &cfg).unwrap();
        let r = refine(&t, &g, &greedy, &cfg).unwrap();
        assert_eq!(r.layout, greedy);
        assert_eq!(r.improvements, 0);
        assert_eq!(r.passes, 1);
    }

    #[test]
    fn refine_pulls_interacting_pair_together() {
        let t = table(&[1.0, 1.0, 1.0]);
        let g = matrix(3, &[(1, 2, 10.0)]);
        let cfg = LayoutConfig {
            weights: Weights { w1: 0.0, w2: 0.0 },
            window_size: 3,
            ..LayoutConfig::default()
        };
        let start = Layout::new(vec![p(0, 0), p(0, -1), p(-1, 0)], 1).unwrap();
        assert_eq!(full_loss(&t, &g, &start, cfg.weights).unwrap().total, 20.0);
        let out = postprocess(&t, &g, &start, &cfg).unwrap();
        assert_eq!(out.position(1).dist_sq(out.position(2)), 1);
        assert_eq!(full_loss(&t, &g, &out, cfg.weights).unwrap().total, 10.0);
    }

    #[test]
    fn refine_leaves_regularizer_only_greedy_alone() {
        let t = table(&[9.0, 7.0, 5.0, 4.0, 3.0, 2.0, 1.5, 1.0, 0.5]);
        let g = matrix(9, &[]);
        let cfg = LayoutConfig {
            weights: Weights { w1: 0.05, w2: 0.0 },
            ..LayoutConfig::default()
        };
        let greedy = greedy_place(&t, &g, &cfg).unwrap();
        let r = refine(&t, &g, &greedy, &cfg).unwrap();
        assert_eq!(r.layout, greedy);
    }

    #[test]
    fn zero_passes_is_identity() {
        let t = table(&[3.0, 2.0, 1.0]);
        let g = matrix(3, &[(1, 2, 5.0)]);
        let cfg = LayoutConfig {
            postprocess_passes: 0,
            ..LayoutConfig::default()
        };
        let greedy = greedy_place(&t, &g, &cfg).unwrap();
        let r = refine(&t, &g, &greedy, &cfg).unwrap();
        assert_eq!(r.layout, greedy);
        assert_eq!(r.passes, 0);
    }
}
