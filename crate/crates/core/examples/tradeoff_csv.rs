//! Writes the rate-memory curve of a network as CSV to stdout.
//!
//!     cargo run --example tradeoff_csv -- 100 40 4 > curve.csv

use sicps::macc::{comparison_points, tradeoff_curve, write_tradeoff_csv, CcdnConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let nums: Vec<usize> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    let (n, k, l) = match nums[..] {
        [n, k, l] => (n, k, l),
        [] => (100, 40, 4),
        _ => return Err("expected N K L".into()),
    };
    let cfg = CcdnConfig::new(n, k, l)?;
    let mut points = tradeoff_curve(cfg, 16)?;
    points.extend(comparison_points(cfg)?);
    points.sort_by(|a, b| a.memory.cmp(&b.memory));
    write_tradeoff_csv(&points, std::io::stdout().lock())?;
    Ok(())
}
