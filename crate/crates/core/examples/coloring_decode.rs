//! Colors an instance, builds the coded broadcast and decodes every node.
//!
//!     cargo run --example coloring_decode -- 3,2,1 2

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sicps::coloring::{local_chromatic_value, cyclic_coloring, upper_bound_ru, verify_proper};
use sicps::icp::{build_union_icp, GapVector};
use sicps::scheme::build_mds_scheme;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let gaps: Vec<usize> = match args.next() {
        Some(s) => s.split(',').map(str::parse).collect::<Result<_, _>>()?,
        None => vec![2, 1, 0],
    };
    let l: usize = args.next().map_or(Ok(2), |s| s.parse())?;

    let spec = GapVector::new(gaps, l)?;
    let icp = build_union_icp(&spec);
    let g = icp.to_suicp();
    let coloring = cyclic_coloring(&icp);
    println!("{spec}: {} nodes, {} colors", g.len(), coloring.num_colors());
    println!("proper: {}", verify_proper(&g, &coloring)?.is_proper());
    println!("local chromatic count {} (R_u = {})", local_chromatic_value(&g, &coloring)?, upper_bound_ru(&spec));

    for k in 1..=spec.users().min(4) {
        let row: Vec<usize> = (1..=icp.columns())
            .map(|p| coloring.color(sicps::Node::new(k, p)).expect("covered"))
            .collect();
        println!("  user {k}: colors {row:?}");
    }

    let scheme = build_mds_scheme(&g, &coloring, None)?;
    let order = scheme.field().order();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let messages: Vec<u64> = (0..g.len()).map(|_| rng.gen_range(0..order)).collect();
    let codeword = scheme.encode(&messages)?;
    let decoded = scheme.simulate_decode(&g, &messages)?;
    println!(
        "sent {} symbols over F_{order} for {} messages; all decoded: {}",
        codeword.len(),
        messages.len(),
        decoded == messages
    );
    Ok(())
}
