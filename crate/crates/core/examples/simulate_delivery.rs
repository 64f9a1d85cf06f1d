//! Full placement and coded delivery with random file contents; every user
//! checks its reconstructed file symbol by symbol.
//!
//!     cargo run --release --example simulate_delivery

use sicps::macc::{end_to_end_simulate, CcdnConfig};
use sicps::ratio::{to_decimal, to_exact};

fn main() -> sicps::Result<()> {
    for (n, k, l, w) in [(8, 8, 2, 2), (10, 10, 2, 1), (11, 11, 2, 3), (4, 8, 2, 4)] {
        let cfg = CcdnConfig::new(n, k, l)?;
        let demands: Vec<usize> = (0..k).map(|u| u % n + 1).collect();
        let r = end_to_end_simulate(cfg, w, &demands, None, 42)?;
        println!(
            "(N,K,L)=({n},{k},{l}) w={w}: decoded {}, {} symbols, rate {} ({}), lowest decodable {}",
            r.decoded_ok,
            r.transmitted_symbols,
            to_exact(&r.total_rate),
            to_decimal(&r.total_rate),
            to_exact(&r.realized_rate)
        );
        for c in &r.classes {
            println!(
                "    class {:?}: period {}, sends {} per position, needs {}",
                c.representative, c.period, c.chi, c.chi_local
            );
        }
    }
    Ok(())
}
