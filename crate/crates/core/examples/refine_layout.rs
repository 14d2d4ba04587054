//! Compare the greedy layout with the locally refined one on a random
//! instance.
//!
//!     cargo run --release --example refine_layout -- 300

use featgrid::layout::refine;
use featgrid::{build_table, full_loss, greedy_place, FeatureRecord, InteractionMatrix, LayoutConfig};

// Small deterministic generator so the example has no extra dependencies.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> f64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }
}

fn main() -> featgrid::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(120);
    let mut rng = Lcg(42);
    let table = build_table((0..n).map(|i| FeatureRecord::new(format!("f{i}"), "num", rng.next())).collect())?;
    let mut g = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.next() < 0.1 {
                let v = rng.next();
                g[i * n + j] = v;
                g[j * n + i] = v;
            }
        }
    }
    let g = InteractionMatrix::from_dense(n, g)?;

    let mut config = LayoutConfig::default();
    let greedy = greedy_place(&table, &g, &config)?;
    let before = full_loss(&table, &g, &greedy, config.weights)?.total;
    println!("greedy      loss {before:.3}");
    for window in [3, 4, 5] {
        config.window_size = window;
        let r = refine(&table, &g, &greedy, &config)?;
        let after = full_loss(&table, &g, &r.layout, config.weights)?.total;
        println!(
            "window {window}    loss {after:.3} ({:+.2}%, {} moves in {} passes)",
            100.0 * (after - before) / before,
            r.improvements,
            r.passes
        );
    }
    Ok(())
}
