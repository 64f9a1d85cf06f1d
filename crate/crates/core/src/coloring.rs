//! Proper colorings of side-information graphs and their local chromatic
//! count.
//!
//! A coloring is proper when no node shares its color with a node whose
//! message it does not know. The local chromatic count of a coloring is the
//! largest number of distinct colors any node sees among itself and its
//! interferers; it is the rank of the coded broadcast built in
//! [`crate::scheme`].

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::cyc;
use crate::error::{Error, Result};
use crate::icp::{canonical_rotation, GapVector, Node, SuicpGraph, UnionIcp};

/// Node-to-color map with colors drawn from `1..=colors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: usize,
    assignment: BTreeMap<Node, usize>,
}

impl Coloring {
    pub fn new(colors: usize, assignment: BTreeMap<Node, usize>) -> Result<Self> {
        for (&node, &color) in &assignment {
            if color == 0 || color > colors {
                return Err(Error::ColorOutOfRange { node, color, colors });
            }
        }
        Ok(Coloring { colors, assignment })
    }

    pub fn num_colors(&self) -> usize {
        self.colors
    }

    pub fn color(&self, node: Node) -> Option<usize> {
        self.assignment.get(&node).copied()
    }

    pub fn assignment(&self) -> &BTreeMap<Node, usize> {
        &self.assignment
    }

    /// Colors in graph order; fails on the first uncovered node.
    pub fn dense(&self, g: &SuicpGraph) -> Result<Vec<usize>> {
        g.nodes()
            .iter()
            .map(|&n| self.color(n).ok_or(Error::UncoveredNode(n)))
            .collect()
    }

    /// Nodes of each color (index `c - 1`), as graph indices.
    pub fn classes(&self, g: &SuicpGraph) -> Result<Vec<Vec<usize>>> {
        let dense = self.dense(g)?;
        let mut out = vec![Vec::new(); self.colors];
        for (u, c) in dense.into_iter().enumerate() {
            out[c - 1].push(u);
        }
        Ok(out)
    }
}

#[derive(Serialize)]
struct ColoringJson {
    colors: usize,
    assignment: Vec<(usize, usize, usize)>,
}

impl Serialize for Coloring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ColoringJson {
            colors: self.colors,
            assignment: self.assignment.iter().map(|(n, &c)| (n.user, n.column, c)).collect(),
        }
        .serialize(s)
    }
}

/// Outcome of [`verify_proper`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Proper,
    /// Same-colored pairs where at least one side does not know the other.
    Violations(Vec<(Node, Node)>),
}

impl Verdict {
    pub fn is_proper(&self) -> bool {
        matches!(self, Verdict::Proper)
    }
}

pub fn verify_proper(g: &SuicpGraph, c: &Coloring) -> Result<Verdict> {
    let dense = c.dense(g)?;
    let mut bad = Vec::new();
    for u in 0..g.len() {
        for v in u + 1..g.len() {
            if dense[u] == dense[v] && !(g.knows(u, v) && g.knows(v, u)) {
                bad.push((g.node(u), g.node(v)));
            }
        }
    }
    Ok(if bad.is_empty() { Verdict::Proper } else { Verdict::Violations(bad) })
}

/// Distinct colors seen by node `u`: its own plus those of its interferers.
pub fn colors_seen(g: &SuicpGraph, dense: &[usize], colors: usize, u: usize) -> FixedBitSet {
    let mut seen = FixedBitSet::with_capacity(colors + 1);
    seen.insert(dense[u]);
    for v in g.interferers(u) {
        seen.insert(dense[v]);
    }
    seen
}

pub fn local_chromatic_value(g: &SuicpGraph, c: &Coloring) -> Result<usize> {
    let dense = c.dense(g)?;
    Ok((0..g.len())
        .map(|u| colors_seen(g, &dense, c.num_colors(), u).count_ones(..))
        .max()
        .unwrap_or(0))
}

/// Cyclic coloring with `K` colors: node `(k, v)` gets `<k - S_v>_K` where
/// `S_v = a_1 + ... + a_{v-1} + (v-1)L`.
///
/// The rule is applied to the canonical rotation (largest gap leading); for
/// any other rotation the columns are relabelled accordingly, since column
/// `p` of `rotate(c, t)` is column `t + p` of `c`.
pub fn cyclic_coloring(icp: &UnionIcp) -> Coloring {
    let spec = icp.spec();
    let i = icp.columns();
    let (canon, t) = canonical_rotation(spec.gaps());
    let canon = GapVector::new(canon, spec.chunk()).expect("rotation of a valid vector");
    let k_users = icp.users();
    let mut shifts = Vec::with_capacity(i);
    let mut shift = 0usize;
    for v in 1..=i {
        if v > 1 {
            shift += canon.a(v - 1) + canon.chunk();
        }
        shifts.push(shift);
    }
    let mut assignment = BTreeMap::new();
    for p in 1..=i {
        let shift = shifts[(t + p - 1) % i];
        for k in 1..=k_users {
            assignment.insert(Node::new(k, p), cyc(k as i64 - shift as i64, k_users));
        }
    }
    Coloring { colors: k_users, assignment }
}

/// Two-column coloring with `D = a_1 + a_2 + 2` colors; requires `D | K`.
pub fn two_column_coloring(icp: &UnionIcp) -> Result<Coloring> {
    let spec = icp.spec();
    if spec.len() != 2 {
        return Err(Error::TwoColumnPrecondition(format!("i = {}", spec.len())));
    }
    let d = spec.gap_sum() + 2;
    let k_users = icp.users();
    if !k_users.is_multiple_of(d) {
        return Err(Error::TwoColumnPrecondition(format!("D = {d} does not divide K = {k_users}")));
    }
    let a2 = spec.a(2);
    let mut assignment = BTreeMap::new();
    for k in 1..=k_users {
        assignment.insert(Node::new(k, 1), cyc(k as i64, d));
        assignment.insert(Node::new(k, 2), cyc((k + a2 + 1) as i64, d));
    }
    Ok(Coloring { colors: d, assignment })
}

/// One color per node; proper for every graph.
pub fn distinct_coloring(g: &SuicpGraph) -> Coloring {
    let assignment = g.nodes().iter().enumerate().map(|(u, &n)| (n, u + 1)).collect();
    Coloring { colors: g.len().max(1), assignment }
}

/// `R_u = min{2(K - (i-1)L) + i - 2 - a_max, K}`.
///
/// Every rotation describes the same instance, so the formula is evaluated
/// on the canonical rotation whose leading gap is the maximum.
pub fn upper_bound_ru(spec: &GapVector) -> usize {
    let (gaps, _) = canonical_rotation(spec.gaps());
    let k_users = spec.users();
    let i = spec.len();
    let span = k_users - (i - 1) * spec.chunk();
    let bound = 2 * span + i - 2 - gaps[0];
    bound.min(k_users)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icp::build_union_icp;

    fn union(g: &[usize], l: usize) -> UnionIcp {
        build_union_icp(&GapVector::new(g.to_vec(), l).unwrap())
    }

    fn row(c: &Coloring, k: usize, cols: usize) -> Vec<usize> {
        (1..=cols).map(|p| c.color(Node::new(k, p)).unwrap()).collect()
    }

    #[test]
    fn cyclic_first_rows() {
        let icp = union(&[2, 1, 0], 2);
        let c = cyclic_coloring(&icp);
        assert_eq!(row(&c, 1, 3), vec![1, 7, 4]);
        let icp = union(&[3, 2, 1], 2);
        let c = cyclic_coloring(&icp);
        assert_eq!(row(&c, 1, 3), vec![1, 9, 5]);
    }

    #[test]
    fn ru_values() {
        assert_eq!(upper_bound_ru(&GapVector::new(vec![2, 1, 0], 2).unwrap()), 7);
        assert_eq!(upper_bound_ru(&GapVector::new(vec![3, 2, 1], 2).unwrap()), 11);
        assert_eq!(upper_bound_ru(&GapVector::new(vec![0, 2, 1], 2).unwrap()), 7);
    }

    #[test]
    fn cyclic_is_proper_and_meets_ru_on_small_cases() {
        for (g, l, expect) in [
            (vec![2, 1, 0], 2, 7),
            (vec![3, 2, 1], 2, 11),
            (vec![3, 0, 0], 2, 6),
            (vec![1, 1, 1], 2, 8),
        ] {
            let icp = union(&g, l);
            let graph = icp.to_suicp();
            let c = cyclic_coloring(&icp);
            assert!(verify_proper(&graph, &c).unwrap().is_proper());
            assert_eq!(local_chromatic_value(&graph, &c).unwrap(), expect, "{g:?}");
        }
    }

    #[test]
    fn two_column_needs_divisibility() {
        assert!(two_column_coloring(&union(&[2, 1], 6)).is_ok());
        assert!(matches!(
            two_column_coloring(&union(&[2, 1], 2)),
            Err(Error::TwoColumnPrecondition(_))
        ));
        assert!(two_column_coloring(&union(&[2, 1, 0], 2)).is_err());
    }

    #[test]
    fn uncovered_node_is_an_error() {
        let icp = union(&[1, 0], 1);
        let graph = icp.to_suicp();
        let mut c = cyclic_coloring(&icp);
        c.assignment.remove(&Node::new(2, 2));
        assert_eq!(verify_proper(&graph, &c), Err(Error::UncoveredNode(Node::new(2, 2))));
    }

    #[test]
    fn constant_coloring_is_improper() {
        let icp = union(&[1, 0], 1);
        let graph = icp.to_suicp();
        let all = graph.nodes().iter().map(|&n| (n, 1)).collect();
        let c = Coloring::new(1, all).unwrap();
        assert!(!verify_proper(&graph, &c).unwrap().is_proper());
    }
}
