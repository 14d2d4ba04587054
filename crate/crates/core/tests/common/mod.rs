//! Independent reference implementations and random instance generators
//! shared by the integration tests. Nothing here calls the code under test
//! except to construct its input types.

#![allow(dead_code)]

use featgrid::model::{build_table, FeatureRecord, FeatureTable, GridPos, Weights};
use featgrid::InteractionMatrix;
use rand::seq::SliceRandom;
use rand::Rng;

/// Straight transcription of the loss: main term over ordered pairs j < i,
/// centering, and the rank-sequence term from i = 1.
pub fn naive_loss(importance: &[f64], g: &[Vec<f64>], pos: &[(i64, i64)], w: Weights) -> f64 {
    let n = pos.len();
    let sq = |a: (i64, i64), b: (i64, i64)| {
        let dx = (a.0 - b.0) as f64;
        let dy = (a.1 - b.1) as f64;
        dx * dx + dy * dy
    };
    let mut main = 0.0;
    for i in 0..n {
        for j in 0..i {
            main += importance[i] * g[i][j] * sq(pos[i], pos[j]);
        }
    }
    let center: f64 = (0..n).map(|i| importance[i] * sq(pos[i], (0, 0))).sum();
    let seq: f64 = (1..n).map(|i| importance[i] * sq(pos[i], pos[i - 1])).sum();
    main + w.w1 * center + w.w2 * seq
}

/// Per-step proxy cost summed term by term.
pub fn naive_step_cost(i: usize, q: (i64, i64), g: &[Vec<f64>], placed: &[(i64, i64)], w: Weights) -> f64 {
    let sq = |a: (i64, i64), b: (i64, i64)| {
        let dx = (a.0 - b.0) as f64;
        let dy = (a.1 - b.1) as f64;
        dx * dx + dy * dy
    };
    let mut cost = 0.0;
    for (j, &p) in placed.iter().enumerate().take(i) {
        cost += g[i][j] * sq(q, p);
    }
    cost += w.w1 * sq(q, (0, 0));
    if i > 0 {
        cost += w.w2 * sq(q, placed[i - 1]);
    }
    cost
}

/// Greedy placement by brute force: every free cell of the box is scored
/// with [`naive_step_cost`], scanned row by row, first minimum wins.
pub fn brute_force_greedy(n: usize, g: &[Vec<f64>], radius: i64, w: Weights) -> Vec<(i64, i64)> {
    let mut placed: Vec<(i64, i64)> = Vec::new();
    for i in 0..n {
        let mut best: Option<(f64, (i64, i64))> = None;
        for y in -radius..=radius {
            for x in -radius..=radius {
                if placed.contains(&(x, y)) {
                    continue;
                }
                let c = naive_step_cost(i, (x, y), g, &placed, w);
                if best.is_none_or(|(b, _)| c < b) {
                    best = Some((c, (x, y)));
                }
            }
        }
        placed.push(best.unwrap().1);
    }
    placed
}

/// Exact minimum of the loss over all injective assignments to `cells`.
pub fn brute_force_optimum(importance: &[f64], g: &[Vec<f64>], cells: &[(i64, i64)], w: Weights) -> f64 {
    fn go(
        k: usize,
        importance: &[f64],
        g: &[Vec<f64>],
        cells: &[(i64, i64)],
        used: &mut Vec<bool>,
        cur: &mut Vec<(i64, i64)>,
        w: Weights,
        best: &mut f64,
    ) {
        if k == importance.len() {
            let l = naive_loss(importance, g, cur, w);
            if l < *best {
                *best = l;
            }
            return;
        }
        for c in 0..cells.len() {
            if used[c] {
                continue;
            }
            used[c] = true;
            cur.push(cells[c]);
            go(k + 1, importance, g, cells, used, cur, w, best);
            cur.pop();
            used[c] = false;
        }
    }
    let mut best = f64::INFINITY;
    go(0, importance, g, cells, &mut vec![false; cells.len()], &mut Vec::new(), w, &mut best);
    best
}

/// Pearson r via the textbook two-pass formula with sample covariance.
pub fn two_pass_pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for k in 0..x.len() {
        cov += (x[k] - mx) * (y[k] - my);
        vx += (x[k] - mx) * (x[k] - mx);
        vy += (y[k] - my) * (y[k] - my);
    }
    let (cov, sx, sy) = (cov / (n - 1.0), (vx / (n - 1.0)).sqrt(), (vy / (n - 1.0)).sqrt());
    if sx == 0.0 || sy == 0.0 {
        0.0
    } else {
        cov / (sx * sy)
    }
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// Random table plus a symmetric interaction with the given pair density.
pub struct Instance {
    pub table: FeatureTable,
    pub g_rows: Vec<Vec<f64>>,
    pub g: InteractionMatrix,
}

impl Instance {
    pub fn random<R: Rng>(rng: &mut R, n: usize, density: f64) -> Instance {
        let records = (0..n)
            .map(|i| FeatureRecord::new(format!("f{i}"), ["num", "cat", "emb"][i % 3], rng.gen_range(0.01..10.0)))
            .collect();
        let table = build_table(records).unwrap();
        let mut g_rows = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen_bool(density) {
                    let v = rng.gen_range(0.0..1.0);
                    g_rows[i][j] = v;
                    g_rows[j][i] = v;
                }
            }
        }
        let g = InteractionMatrix::from_dense(n, g_rows.concat()).unwrap();
        Instance { table, g_rows, g }
    }

    pub fn importances(&self) -> Vec<f64> {
        self.table.importances().collect()
    }
}

/// `n` distinct random cells inside the box of radius `r`.
pub fn random_cells<R: Rng>(rng: &mut R, n: usize, r: i32) -> Vec<GridPos> {
    let mut all: Vec<GridPos> = (-r..=r).flat_map(|y| (-r..=r).map(move |x| GridPos::new(x, y))).collect();
    all.shuffle(rng);
    all.truncate(n);
    all
}

pub fn to_pairs(pos: &[GridPos]) -> Vec<(i64, i64)> {
    pos.iter().map(|p| (p.x as i64, p.y as i64)).collect()
}
