//! Placement, delivery decomposition and rates for a multi-access network.
//!
//!     cargo run --example caching_rates

use sicps::macc::{
    build_delivery_icp, group_rotation_classes, placement_map, rate_hkd, rate_new, rate_rk,
    weak_compositions, CcdnConfig,
};
use sicps::coloring::upper_bound_ru;
use sicps::icp::GapVector;
use sicps::ratio::{to_decimal, to_exact};

fn main() -> sicps::Result<()> {
    let (k, l, w) = (8, 2, 2);
    let cfg = CcdnConfig::new(k, k, l)?;
    let plan = placement_map(cfg, w)?;
    println!("(N,K,L) = ({k},{k},{l}), M = {}", to_exact(&cfg.memory(w)));
    println!("{} subfiles per file: {:?}", plan.sets().len(), plan.sets());
    for c in 1..=k {
        let sets: Vec<&Vec<usize>> = plan.cache_sets(c).iter().map(|&s| &plan.sets()[s]).collect();
        println!("  cache {c}: {sets:?}");
    }

    let demands: Vec<usize> = (1..=k).collect();
    let table = build_delivery_icp(cfg, w, &demands)?;
    println!("\n{} delivery columns", table.columns().len());
    for col in table.columns() {
        println!("  set {:?} -> gaps {:?}", plan.sets()[col.set], col.label);
    }

    println!("\nrotation classes");
    for class in group_rotation_classes(&weak_compositions(k - w * l - 1, w + 1)) {
        let spec = GapVector::new(class.representative.clone(), l)?;
        println!(
            "  {:?}: {} member(s), R_u = {}",
            class.representative,
            class.members.len(),
            upper_bound_ru(&spec)
        );
    }

    println!();
    let new = rate_new(k, l, w)?;
    let hkd = rate_hkd(k, l, w)?;
    let rk = rate_rk(k, k, l, &cfg.memory(w))?;
    for (name, r) in [("NEW", new), ("HKD", hkd), ("RK", rk)] {
        println!("{name:<5}{:<8}{}", to_exact(&r), to_decimal(&r));
    }
    Ok(())
}
