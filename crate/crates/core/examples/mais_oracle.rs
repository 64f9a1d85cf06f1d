//! Exhaustive MAIS check on every small canonical instance.
//!
//! For each canonical gap vector whose union instance has at most the
//! brute-force cap of nodes, compares the exact maximum acyclic induced
//! subgraph with the constructive lower bound and the upper bound `R_u`.
//!
//!     cargo run --release --example mais_oracle

use std::time::Instant;

use sicps::bounds::{constructive_lower_value, exact_rate_special, mais_bruteforce, mais_node_cap};
use sicps::coloring::upper_bound_ru;
use sicps::icp::{build_union_icp, canonical_rotation, GapVector};

fn canonical_vectors(max_nodes: usize) -> Vec<GapVector> {
    let mut out = Vec::new();
    for i in 1..=max_nodes {
        let max_l = if i == 1 { 1 } else { max_nodes };
        for l in 1..=max_l {
            // K = (i-1)L + sum + 1 and i*K <= max_nodes
            let base = (i - 1) * l + 1;
            if i * base > max_nodes {
                break;
            }
            let max_sum = max_nodes / i - base;
            for sum in 0..=max_sum {
                for gaps in compositions(sum, i) {
                    if canonical_rotation(&gaps).0 == gaps {
                        out.push(GapVector::new(gaps, l).unwrap());
                    }
                }
            }
        }
    }
    out
}

fn compositions(n: usize, m: usize) -> Vec<Vec<usize>> {
    if m == 1 {
        return vec![vec![n]];
    }
    (0..=n)
        .flat_map(|first| {
            compositions(n - first, m - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn main() {
    let cap = mais_node_cap();
    let start = Instant::now();
    let mut strict = 0;
    let vectors = canonical_vectors(cap);
    println!("{:<22}{:>6}{:>8}{:>8}{:>8}{:>8}", "instance", "nodes", "lower", "mais", "R_u", "exact");
    for spec in &vectors {
        let g = build_union_icp(spec).to_suicp();
        let t = Instant::now();
        let (mais, _) = mais_bruteforce(&g, cap).expect("within cap");
        let lower = constructive_lower_value(spec);
        let exact = exact_rate_special(spec).map(|r| r.to_string()).unwrap_or_else(|| "-".into());
        if mais > lower {
            strict += 1;
        }
        println!(
            "{:<22}{:>6}{:>8}{:>8}{:>8}{:>8}   {:.3}s",
            spec.to_string(),
            g.len(),
            lower,
            mais,
            upper_bound_ru(spec),
            exact,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "{} instances, {} with MAIS above the constructive bound, {:.2}s",
        vectors.len(),
        strict,
        start.elapsed().as_secs_f64()
    );
}
