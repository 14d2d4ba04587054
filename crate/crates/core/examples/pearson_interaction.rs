//! Build interaction strengths from raw feature values with |Pearson r|.
//!
//!     cargo run --example pearson_interaction

use featgrid::interaction::{pearson_interaction, ValueMatrix};
use featgrid::NegativeCorrelation;

fn main() -> featgrid::Result<()> {
    let names: Vec<String> = ["a", "b", "c", "flat"].iter().map(|s| s.to_string()).collect();
    let a = vec![1.0, 2.0, 3.0, 4.0, 5.0];
    let b = vec![2.1, 3.9, 6.2, 8.0, 9.8];
    let c = vec![5.0, 4.0, 3.5, 2.0, 1.0];
    let flat = vec![7.0; 5];
    let values = ValueMatrix::new(names.clone(), vec![a, b, c, flat])?;

    for mode in [NegativeCorrelation::Absolute, NegativeCorrelation::Clip] {
        let g = pearson_interaction(&values, mode)?;
        println!("{mode:?}");
        for i in 0..g.len() {
            let row: Vec<String> = g.row(i).iter().map(|v| format!("{v:5.2}")).collect();
            println!("  {:>4} {}", names[i], row.join(" "));
        }
    }
    Ok(())
}
