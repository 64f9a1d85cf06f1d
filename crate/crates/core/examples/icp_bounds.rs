//! Upper and lower bounds for a few structured instances.
//!
//!     cargo run --example icp_bounds

use sicps::bounds::{analyze_bounds, gap_ratio, mais_node_cap, tilde_icp_bounds};
use sicps::icp::{build_single_icp, GapVector};
use sicps::ratio::{to_decimal, to_exact};

fn main() -> sicps::Result<()> {
    let spec = GapVector::new(vec![2, 1, 0], 2)?;
    let single = build_single_icp(&spec);
    println!("{spec}: K = {}", spec.users());
    for k in 1..=spec.users() {
        println!("  user {k} knows {:?}", single.known(k));
    }

    println!();
    println!("{:<16}{:>4}{:>8}{:>8}{:>8}{:>10}  ratio", "instance", "K", "upper", "lower", "mais", "exact");
    for (gaps, l) in [
        (vec![2, 1, 0], 2),
        (vec![3, 2, 1], 2),
        (vec![5, 3, 2], 2),
        (vec![3, 2, 1], 1),
        (vec![4, 0, 0], 3),
        (vec![2, 1], 6),
        (vec![2, 1], 11),
    ] {
        let spec = GapVector::new(gaps, l)?;
        let r = analyze_bounds(&spec, mais_node_cap());
        let ratio = gap_ratio(&spec);
        println!(
            "{:<16}{:>4}{:>8}{:>8}{:>8}{:>10}  {} ({})",
            spec.to_string(),
            spec.users(),
            r.upper,
            r.lower_constructive,
            r.lower_brute.map_or("-".into(), |v| v.to_string()),
            r.exact.as_ref().map_or("-".into(), to_exact),
            to_exact(&ratio),
            to_decimal(&ratio)
        );
    }

    println!();
    for (base, repeat, l) in [(vec![1], 3, 2), (vec![2, 0], 2, 3), (vec![3, 1, 0], 4, 2)] {
        let (lower, upper) = tilde_icp_bounds(&base, repeat, l)?;
        println!(
            "{base:?} repeated {repeat} times, L = {l}: per-message bounds [{}, {}]",
            to_exact(&lower),
            to_exact(&upper)
        );
    }
    Ok(())
}
