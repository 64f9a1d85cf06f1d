//! Lower and upper bounds on the broadcast rate of the structured instances.

use num_rational::BigRational;
use serde::Serialize;

use crate::coloring::upper_bound_ru;
use crate::error::{Error, Result};
use crate::icp::{build_union_icp, rotate_gaps, GapVector, Node, SuicpGraph};
use crate::ratio::{frac, int, to_exact};

/// Default node cap for [`mais_bruteforce`], overridable with the
/// `SICPS_MAIS_CAP` environment variable.
pub const DEFAULT_MAIS_CAP: usize = 26;

pub fn mais_node_cap() -> usize {
    std::env::var("SICPS_MAIS_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .map(|c: usize| c.min(64))
        .unwrap_or(DEFAULT_MAIS_CAP)
}

/// `K - (i-1)L + i - 1`, the size of the constructive acyclic set.
pub fn constructive_lower_value(spec: &GapVector) -> usize {
    spec.users() - (spec.len() - 1) * spec.chunk() + spec.len() - 1
}

/// An acyclic induced subgraph of the union instance of size
/// `K - (i-1)L + i - 1`.
///
/// Every node of user 1 is taken, then in each column the consecutive users
/// following user 1 inside that column's first interference run.
pub fn lower_bound_mais_constructive(spec: &GapVector) -> (usize, Vec<Node>) {
    let i = spec.len();
    let mut first_runs: Vec<(usize, usize)> =
        (1..=i).map(|p| (p, rotate_gaps(spec.gaps(), p - 1)[0])).collect();
    first_runs.sort_by_key(|r| std::cmp::Reverse(r.1));
    let mut witness: Vec<Node> = (1..=i).map(|p| Node::new(1, p)).collect();
    for &(p, run) in &first_runs {
        witness.extend((2..=run + 1).map(|r| Node::new(r, p)));
    }
    witness.sort_unstable();
    (witness.len(), witness)
}

/// Whether the subgraph induced on `nodes` (graph indices) has no directed
/// cycle.
pub fn is_acyclic_induced(g: &SuicpGraph, nodes: &[usize]) -> bool {
    let n = nodes.len();
    let mut indeg = vec![0usize; n];
    for (a, &u) in nodes.iter().enumerate() {
        for (b, &v) in nodes.iter().enumerate() {
            if a != b && g.knows(u, v) {
                indeg[b] += 1;
            }
        }
    }
    let mut stack: Vec<usize> = (0..n).filter(|&b| indeg[b] == 0).collect();
    let mut removed = 0;
    while let Some(a) = stack.pop() {
        removed += 1;
        for (b, &v) in nodes.iter().enumerate() {
            if a != b && g.knows(nodes[a], v) {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    stack.push(b);
                }
            }
        }
    }
    removed == n
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

struct MaisSearch {
    out: Vec<u64>,
    inn: Vec<u64>,
    mutual: Vec<u64>,
    best: u32,
    best_set: u64,
}

impl MaisSearch {
    /// Whether adding `c` to the acyclic set `s` closes a cycle.
    fn closes_cycle(&self, s: u64, c: usize) -> bool {
        let target = self.inn[c] & s;
        if target == 0 {
            return false;
        }
        let mut reach = self.out[c] & s;
        let mut frontier = reach;
        while frontier != 0 {
            if reach & target != 0 {
                return true;
            }
            let mut next = 0;
            for x in bits(frontier) {
                next |= self.out[x];
            }
            next &= s & !reach;
            reach |= next;
            frontier = next;
        }
        reach & target != 0
    }

    /// Greedy partition of `cands` into cliques of mutually-knowing nodes;
    /// an acyclic set holds at most one node per clique.
    fn clique_cover(&self, cands: u64) -> u32 {
        let mut cliques: Vec<u64> = Vec::new();
        for v in bits(cands) {
            match cliques.iter_mut().find(|q| self.mutual[v] & **q == **q) {
                Some(q) => *q |= 1 << v,
                None => cliques.push(1 << v),
            }
        }
        cliques.len() as u32
    }

    fn run(&mut self, s: u64, cands: u64) {
        let size = s.count_ones();
        if size > self.best {
            self.best = size;
            self.best_set = s;
        }
        if cands == 0 || size + self.clique_cover(cands) <= self.best {
            return;
        }
        let v = bits(cands)
            .max_by_key(|&v| ((self.mutual[v] & cands).count_ones(), std::cmp::Reverse(v)))
            .expect("nonempty");
        let bit = 1u64 << v;
        let with = s | bit;
        let mut next = 0;
        for c in bits(cands & !bit) {
            if !self.closes_cycle(with, c) {
                next |= 1 << c;
            }
        }
        self.run(with, next);
        self.run(s, cands & !bit);
    }
}

/// Exact maximum acyclic induced subgraph by branch and bound. Returns the
/// size and one optimal node set (graph indices, ascending).
pub fn mais_bruteforce(g: &SuicpGraph, cap: usize) -> Result<(usize, Vec<usize>)> {
    let n = g.len();
    if n > cap.min(64) {
        return Err(Error::OverNodeCap { nodes: n, cap: cap.min(64) });
    }
    let mut out = vec![0u64; n];
    let mut inn = vec![0u64; n];
    for u in 0..n {
        for v in g.side_info(u) {
            out[u] |= 1 << v;
            inn[v] |= 1 << u;
        }
    }
    let mutual = (0..n).map(|u| out[u] & inn[u]).collect();
    let mut search = MaisSearch { out, inn, mutual, best: 0, best_set: 0 };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    search.run(0, all);
    Ok((search.best as usize, bits(search.best_set).collect()))
}

/// Exact broadcast rate where it is known in closed form: at most one
/// nonzero gap, `L = 1`, or two columns with `(a1 + a2 + 2) | K`.
pub fn exact_rate_special(spec: &GapVector) -> Option<BigRational> {
    let k_users = spec.users();
    if spec.gaps().iter().filter(|&&g| g > 0).count() <= 1 {
        return Some(int(constructive_lower_value(spec)));
    }
    if spec.chunk() == 1 {
        return Some(int(k_users));
    }
    if spec.len() == 2 {
        let d = spec.gap_sum() + 2;
        if k_users.is_multiple_of(d) {
            return Some(int(d));
        }
    }
    None
}

/// Ratio of the upper bound `R_u` to the constructive lower bound.
pub fn gap_ratio(spec: &GapVector) -> BigRational {
    frac(upper_bound_ru(spec), constructive_lower_value(spec))
}

/// Bounds `(lower, upper)` for the instance built from `s` repeated `l`
/// times, measured per full message: the lower bound is `sum(s) + len(s)`
/// and the upper bound is `R_u` of the repeated vector divided by `l`.
pub fn tilde_icp_bounds(
    base: &[usize],
    repeat: usize,
    chunk: usize,
) -> Result<(BigRational, BigRational)> {
    if repeat == 0 {
        return Err(Error::ZeroRepeat);
    }
    let full = GapVector::new(base.repeat(repeat), chunk)?;
    let lower = base.iter().sum::<usize>() + base.len();
    Ok((int(lower), frac(upper_bound_ru(&full), repeat)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub upper: usize,
    pub lower_constructive: usize,
    pub lower_brute: Option<usize>,
    pub exact: Option<BigRational>,
    pub witness: Vec<Node>,
}

#[derive(Serialize)]
struct BoundReportJson<'a> {
    upper: usize,
    lower_constructive: usize,
    lower_brute: Option<usize>,
    exact: Option<String>,
    witness: &'a [Node],
}

impl Serialize for BoundReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BoundReportJson {
            upper: self.upper,
            lower_constructive: self.lower_constructive,
            lower_brute: self.lower_brute,
            exact: self.exact.as_ref().map(to_exact),
            witness: &self.witness,
        }
        .serialize(s)
    }
}

/// All bounds for one gap vector; the brute-force value is filled in only
/// when the instance has at most `cap` nodes.
pub fn analyze_bounds(spec: &GapVector, cap: usize) -> BoundReport {
    let (lower_constructive, witness) = lower_bound_mais_constructive(spec);
    let lower_brute = if spec.users() * spec.len() <= cap {
        let g = build_union_icp(spec).to_suicp();
        mais_bruteforce(&g, cap).ok().map(|(v, _)| v)
    } else {
        None
    };
    BoundReport {
        upper: upper_bound_ru(spec),
        lower_constructive,
        lower_brute,
        exact: exact_rate_special(spec),
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gv(g: &[usize], l: usize) -> GapVector {
        GapVector::new(g.to_vec(), l).unwrap()
    }

    #[test]
    fn constructive_witness_shape() {
        let (v, w) = lower_bound_mais_constructive(&gv(&[5, 3, 2], 2));
        assert_eq!(v, 13);
        let mut expect: Vec<Node> = (1..=3)
            .flat_map(|k| (1..=3).map(move |p| Node::new(k, p)))
            .chain([Node::new(4, 1), Node::new(4, 3), Node::new(5, 1), Node::new(6, 1)])
            .collect();
        expect.sort_unstable();
        assert_eq!(w, expect);
    }

    #[test]
    fn constructive_witness_is_acyclic() {
        for (g, l) in [(vec![2, 1, 0], 2), (vec![3, 2, 1], 2), (vec![5, 3, 2], 2)] {
            let spec = gv(&g, l);
            let graph = build_union_icp(&spec).to_suicp();
            let (_, w) = lower_bound_mais_constructive(&spec);
            let idx: Vec<usize> = w.iter().map(|&n| graph.index_of(n).unwrap()).collect();
            assert!(is_acyclic_induced(&graph, &idx));
        }
    }

    #[test]
    fn brute_force_small() {
        let spec = gv(&[2, 1, 0], 2);
        let g = build_union_icp(&spec).to_suicp();
        let (v, set) = mais_bruteforce(&g, 26).unwrap();
        assert_eq!(v, 6);
        assert!(is_acyclic_induced(&g, &set));
        assert_eq!(
            mais_bruteforce(&build_union_icp(&gv(&[3, 2, 1], 2)).to_suicp(), 26),
            Err(Error::OverNodeCap { nodes: 33, cap: 26 })
        );
    }

    #[test]
    fn special_cases() {
        assert_eq!(exact_rate_special(&gv(&[5, 0, 0], 3)), Some(int(8)));
        assert_eq!(exact_rate_special(&gv(&[2, 1, 0], 1)), Some(int(6)));
        assert_eq!(exact_rate_special(&gv(&[2, 1], 6)), Some(int(5)));
        assert_eq!(exact_rate_special(&gv(&[2, 1, 0], 2)), None);
    }

    #[test]
    fn ratios_and_tilde_bounds() {
        assert_eq!(gap_ratio(&gv(&[2, 1, 0], 2)), frac(7, 6));
        assert_eq!(gap_ratio(&gv(&[3, 2, 1], 2)), frac(11, 9));
        assert_eq!(tilde_icp_bounds(&[1], 3, 2).unwrap(), (int(2), frac(8, 3)));
        assert_eq!(tilde_icp_bounds(&[3, 0, 0], 1, 2).unwrap(), (int(6), int(6)));
        assert_eq!(tilde_icp_bounds(&[2, 1, 0], 1, 2).unwrap(), (int(6), int(7)));
    }
}
