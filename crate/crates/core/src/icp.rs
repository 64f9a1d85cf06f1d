//! Structured index coding instances.
//!
//! A [`GapVector`] `(a_i, ..., a_1)` together with a chunk length `L` fixes a
//! family of symmetric instances on `K = (i-1)L + sum(a) + 1` users arranged
//! on a circle. Walking clockwise from user `k`, the pattern alternates
//! interference runs and known runs: `a_i` interfering files, `L` known
//! files, `a_{i-1}` interfering files, `L` known files, and so on, ending
//! with `a_1` interfering files before returning to `k`.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::ser::{SerializeTuple, Serializer};
use serde::Serialize;

use crate::cyc;
use crate::error::{Error, Result};

/// A message slot `(user, column)` of a union instance, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node {
    pub user: usize,
    pub column: usize,
}

impl Node {
    pub fn new(user: usize, column: usize) -> Self {
        Node { user, column }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.user, self.column)
    }
}

impl Serialize for Node {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.user)?;
        t.serialize_element(&self.column)?;
        t.end()
    }
}

/// Right (clockwise) rotation: `rotate_gaps(&[2, 1, 0], 1) == [0, 2, 1]`.
pub fn rotate_gaps(gaps: &[usize], t: usize) -> Vec<usize> {
    let mut out = gaps.to_vec();
    if !out.is_empty() {
        let t = t % out.len();
        out.rotate_right(t);
    }
    out
}

/// The lexicographically greatest rotation and the smallest shift `t` such
/// that `rotate_gaps(&canonical, t) == gaps`.
pub fn canonical_rotation(gaps: &[usize]) -> (Vec<usize>, usize) {
    let n = gaps.len();
    let mut best: Option<(Vec<usize>, usize)> = None;
    for t in 0..n.max(1) {
        // rotate_gaps(cand, t) == gaps  <=>  cand == gaps rotated left by t
        let mut cand = gaps.to_vec();
        if n > 0 {
            cand.rotate_left(t);
        }
        match &best {
            Some((b, _)) if cand <= *b => {}
            _ => best = Some((cand, t)),
        }
    }
    best.unwrap_or_default()
}

/// Length of the shortest prefix whose repetition yields `v`.
pub fn minimal_period(v: &[usize]) -> usize {
    let n = v.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|j| v[j] == v[j - p]))
        .unwrap_or(n)
}

/// Gap vector `(a_i, ..., a_1)` plus chunk length `L`.
///
/// `gaps()[0]` is `a_i` and `gaps()[i-1]` is `a_1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GapVector {
    gaps: Vec<usize>,
    chunk: usize,
}

impl GapVector {
    pub fn new(gaps: Vec<usize>, chunk: usize) -> Result<Self> {
        if gaps.is_empty() {
            return Err(Error::EmptyGaps);
        }
        if chunk == 0 {
            return Err(Error::InvalidChunkLength(0));
        }
        Ok(GapVector { gaps, chunk })
    }

    /// Validating constructor for untrusted signed input.
    pub fn from_signed(gaps: &[i64], chunk: i64) -> Result<Self> {
        if chunk <= 0 {
            return Err(Error::InvalidChunkLength(chunk));
        }
        let n = gaps.len();
        let mut out = Vec::with_capacity(n);
        for (pos, &g) in gaps.iter().enumerate() {
            if g < 0 {
                return Err(Error::NegativeGap { index: n - pos, value: g });
            }
            out.push(g as usize);
        }
        GapVector::new(out, chunk as usize)
    }

    pub fn gaps(&self) -> &[usize] {
        &self.gaps
    }

    /// `L`.
    pub fn chunk(&self) -> usize {
        self.chunk
    }

    /// `i`, the number of gaps (and of columns in the union instance).
    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    pub fn gap_sum(&self) -> usize {
        self.gaps.iter().sum()
    }

    pub fn max_gap(&self) -> usize {
        self.gaps.iter().copied().max().unwrap_or(0)
    }

    /// `K = (i-1)L + sum(a) + 1`.
    pub fn users(&self) -> usize {
        (self.len() - 1) * self.chunk + self.gap_sum() + 1
    }

    /// `a_j` for `j` in `1..=i`.
    pub fn a(&self, j: usize) -> usize {
        assert!(j >= 1 && j <= self.len(), "gap index out of range");
        self.gaps[self.len() - j]
    }

    /// True when the leading gap is a maximum.
    pub fn leads_with_max(&self) -> bool {
        self.gaps[0] == self.max_gap()
    }

    pub fn rotated(&self, t: usize) -> GapVector {
        GapVector { gaps: rotate_gaps(&self.gaps, t), chunk: self.chunk }
    }

    /// The lexicographically greatest rotation and its shift.
    pub fn canonical(&self) -> (GapVector, usize) {
        let (g, t) = canonical_rotation(&self.gaps);
        (GapVector { gaps: g, chunk: self.chunk }, t)
    }

    pub fn period(&self) -> usize {
        minimal_period(&self.gaps)
    }

    /// Clockwise offsets (in `1..K`) of the files user `k` knows.
    pub fn known_offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity((self.len() - 1) * self.chunk);
        let mut pos = 0;
        for &g in &self.gaps[..self.len() - 1] {
            pos += g;
            for _ in 0..self.chunk {
                pos += 1;
                out.push(pos);
            }
        }
        out
    }
}

impl fmt::Display for GapVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gaps.iter().map(|g| g.to_string()).collect();
        write!(f, "({})_{}", parts.join(","), self.chunk)
    }
}

/// The single-column instance: user `k` wants file `k` of `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingleIcp {
    spec: GapVector,
    known: Vec<Vec<usize>>,
}

pub fn build_single_icp(spec: &GapVector) -> SingleIcp {
    let k_users = spec.users();
    let offsets = spec.known_offsets();
    let known = (1..=k_users)
        .map(|k| {
            let mut files: Vec<usize> =
                offsets.iter().map(|&o| cyc((k + o) as i64, k_users)).collect();
            files.sort_unstable();
            files
        })
        .collect();
    SingleIcp { spec: spec.clone(), known }
}

impl SingleIcp {
    pub fn spec(&self) -> &GapVector {
        &self.spec
    }

    pub fn users(&self) -> usize {
        self.known.len()
    }

    /// Files known by user `k`, ascending.
    pub fn known(&self, k: usize) -> &[usize] {
        &self.known[k - 1]
    }
}

/// The union instance: `i` columns on the same `K` users, column `p` using
/// the gap pattern rotated clockwise by `p - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionIcp {
    spec: GapVector,
    known: Vec<Vec<Node>>,
}

pub fn build_union_icp(spec: &GapVector) -> UnionIcp {
    let k_users = spec.users();
    let columns: Vec<Vec<usize>> =
        (0..spec.len()).map(|t| spec.rotated(t).known_offsets()).collect();
    let known = (1..=k_users)
        .map(|k| {
            let mut nodes: Vec<Node> = columns
                .iter()
                .enumerate()
                .flat_map(|(t, offs)| {
                    offs.iter().map(move |&o| Node::new(cyc((k + o) as i64, k_users), t + 1))
                })
                .collect();
            nodes.sort_unstable();
            nodes
        })
        .collect();
    UnionIcp { spec: spec.clone(), known }
}

impl UnionIcp {
    pub fn spec(&self) -> &GapVector {
        &self.spec
    }

    pub fn users(&self) -> usize {
        self.known.len()
    }

    pub fn columns(&self) -> usize {
        self.spec.len()
    }

    pub fn node_count(&self) -> usize {
        self.users() * self.columns()
    }

    /// Gap pattern of column `p` (1-based).
    pub fn column_gaps(&self, p: usize) -> Vec<usize> {
        rotate_gaps(self.spec.gaps(), p - 1)
    }

    /// Every node of user `k` knows the same set, sorted by `(user, column)`.
    pub fn known(&self, k: usize) -> &[Node] {
        &self.known[k - 1]
    }

    pub fn to_suicp(&self) -> SuicpGraph {
        let cols = self.columns();
        let nodes: Vec<Node> = (1..=self.users())
            .flat_map(|k| (1..=cols).map(move |p| Node::new(k, p)))
            .collect();
        let index = |n: &Node| (n.user - 1) * cols + (n.column - 1);
        let side: Vec<Vec<usize>> = nodes
            .iter()
            .map(|n| self.known(n.user).iter().map(index).collect())
            .collect();
        SuicpGraph::from_side_info(nodes, side).expect("union instance yields a valid graph")
    }
}

#[derive(Serialize)]
struct InstanceJson<'a> {
    gaps: &'a [usize],
    #[serde(rename = "L")]
    chunk: usize,
    #[serde(rename = "K")]
    users: usize,
    i: usize,
    known: &'a [Vec<Node>],
}

impl Serialize for UnionIcp {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        InstanceJson {
            gaps: self.spec.gaps(),
            chunk: self.spec.chunk(),
            users: self.users(),
            i: self.columns(),
            known: &self.known,
        }
        .serialize(serializer)
    }
}

/// Single-unicast side-information graph: node `u` has an arc to `v` when
/// the holder of `u` knows the message of `v`.
#[derive(Debug, Clone)]
pub struct SuicpGraph {
    nodes: Vec<Node>,
    index: HashMap<Node, usize>,
    side: Vec<FixedBitSet>,
}

impl SuicpGraph {
    /// `side[u]` lists indices into `nodes` known at node `u`.
    pub fn from_side_info(nodes: Vec<Node>, side: Vec<Vec<usize>>) -> Result<Self> {
        let n = nodes.len();
        if side.len() != n {
            return Err(Error::InvalidGraph(format!(
                "{} side-information lists for {n} nodes",
                side.len()
            )));
        }
        let mut index = HashMap::with_capacity(n);
        for (pos, node) in nodes.iter().enumerate() {
            if index.insert(*node, pos).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate node {node}")));
            }
        }
        let mut sets = Vec::with_capacity(n);
        for (u, list) in side.iter().enumerate() {
            let mut bits = FixedBitSet::with_capacity(n);
            for &v in list {
                if v >= n {
                    return Err(Error::InvalidGraph(format!("index {v} out of range")));
                }
                if v == u {
                    return Err(Error::InvalidGraph(format!("node {} knows itself", nodes[u])));
                }
                bits.insert(v);
            }
            sets.push(bits);
        }
        Ok(SuicpGraph { nodes, index, side: sets })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, u: usize) -> Node {
        self.nodes[u]
    }

    pub fn index_of(&self, node: Node) -> Option<usize> {
        self.index.get(&node).copied()
    }

    /// Whether node `u` has node `v` as side information.
    pub fn knows(&self, u: usize, v: usize) -> bool {
        self.side[u].contains(v)
    }

    pub fn side_info(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.side[u].ones()
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.side[u].count_ones(..)
    }

    pub fn in_degree(&self, v: usize) -> usize {
        (0..self.len()).filter(|&u| self.knows(u, v)).count()
    }

    /// Nodes other than `u` whose messages `u` does not know.
    pub fn interferers(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&v| v != u && !self.knows(u, v))
    }
}

/// Instance built from a base vector `s` repeated `l` times: one column per
/// distinct rotation of the repeated vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TildeIcp {
    base: Vec<usize>,
    repeat: usize,
    chunk: usize,
    columns: Vec<Vec<usize>>,
    known: Vec<Vec<Node>>,
}

pub fn build_tilde_icp(base: &[usize], repeat: usize, chunk: usize) -> Result<TildeIcp> {
    if base.is_empty() {
        return Err(Error::EmptyGaps);
    }
    if repeat == 0 {
        return Err(Error::ZeroRepeat);
    }
    let full = GapVector::new(base.repeat(repeat), chunk)?;
    let period = full.period();
    let columns: Vec<Vec<usize>> = (0..period).map(|t| rotate_gaps(full.gaps(), t)).collect();
    let k_users = full.users();
    let offsets: Vec<Vec<usize>> = (0..period).map(|t| full.rotated(t).known_offsets()).collect();
    let known = (1..=k_users)
        .map(|k| {
            let mut nodes: Vec<Node> = offsets
                .iter()
                .enumerate()
                .flat_map(|(t, offs)| {
                    offs.iter().map(move |&o| Node::new(cyc((k + o) as i64, k_users), t + 1))
                })
                .collect();
            nodes.sort_unstable();
            nodes
        })
        .collect();
    Ok(TildeIcp { base: base.to_vec(), repeat, chunk, columns, known })
}

impl TildeIcp {
    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn repeat(&self) -> usize {
        self.repeat
    }

    /// The full gap vector `s` repeated `l` times.
    pub fn full_gaps(&self) -> GapVector {
        GapVector::new(self.base.repeat(self.repeat), self.chunk).expect("validated on build")
    }

    /// `K = l * sum(s) + (l*m - 1)L + 1`.
    pub fn users(&self) -> usize {
        self.known.len()
    }

    /// Gap patterns of the distinct columns, in rotation order.
    pub fn column_patterns(&self) -> &[Vec<usize>] {
        &self.columns
    }

    pub fn columns(&self) -> usize {
        self.columns.len()
    }

    pub fn known(&self, k: usize) -> &[Node] {
        &self.known[k - 1]
    }

    /// Number of parts each message splits into when the instance is viewed
    /// as the union instance of the repeated vector.
    pub fn parts(&self) -> usize {
        self.base.len() * self.repeat / self.columns()
    }

    /// Maps a column of the union instance of the repeated vector to
    /// `(tilde column, part)`, both 1-based.
    pub fn split_column(&self, union_column: usize) -> (usize, usize) {
        let period = self.columns();
        ((union_column - 1) % period + 1, (union_column - 1) / period + 1)
    }

    /// The union instance obtained by splitting every message into
    /// [`parts`](Self::parts) pieces.
    pub fn to_union_split(&self) -> UnionIcp {
        build_union_icp(&self.full_gaps())
    }

    pub fn to_suicp(&self) -> SuicpGraph {
        let cols = self.columns();
        let nodes: Vec<Node> = (1..=self.users())
            .flat_map(|k| (1..=cols).map(move |p| Node::new(k, p)))
            .collect();
        let index = |n: &Node| (n.user - 1) * cols + (n.column - 1);
        let side: Vec<Vec<usize>> = nodes
            .iter()
            .map(|n| self.known(n.user).iter().map(index).collect())
            .collect();
        SuicpGraph::from_side_info(nodes, side).expect("tilde instance yields a valid graph")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gv(g: &[usize], l: usize) -> GapVector {
        GapVector::new(g.to_vec(), l).unwrap()
    }

    #[test]
    fn users_count() {
        assert_eq!(gv(&[2, 1, 0], 2).users(), 8);
        assert_eq!(gv(&[3, 2, 1], 2).users(), 11);
        assert_eq!(gv(&[5, 3, 2], 2).users(), 15);
        assert_eq!(gv(&[4], 3).users(), 5);
    }

    #[test]
    fn gap_indexing_is_reversed() {
        let g = gv(&[3, 2, 1], 2);
        assert_eq!(g.a(1), 1);
        assert_eq!(g.a(3), 3);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(GapVector::new(vec![], 2), Err(Error::EmptyGaps));
        assert_eq!(GapVector::new(vec![1], 0), Err(Error::InvalidChunkLength(0)));
        assert_eq!(GapVector::from_signed(&[1, 2], -1), Err(Error::InvalidChunkLength(-1)));
        assert!(matches!(
            GapVector::from_signed(&[1, -2, 0], 2),
            Err(Error::NegativeGap { index: 2, value: -2 })
        ));
    }

    #[test]
    fn rotation_and_canonical_form() {
        assert_eq!(rotate_gaps(&[2, 1, 0], 1), vec![0, 2, 1]);
        assert_eq!(canonical_rotation(&[0, 2, 1]), (vec![2, 1, 0], 1));
        assert_eq!(canonical_rotation(&[2, 1, 0]), (vec![2, 1, 0], 0));
        let (c, t) = canonical_rotation(&[2, 0, 2, 1]);
        assert_eq!(c, vec![2, 1, 2, 0]);
        assert_eq!(rotate_gaps(&c, t), vec![2, 0, 2, 1]);
        assert_eq!(minimal_period(&[1, 0, 1, 0]), 2);
        assert_eq!(minimal_period(&[1, 1, 1]), 1);
        assert_eq!(minimal_period(&[2, 1, 0]), 3);
    }

    #[test]
    fn single_instance_known_sets() {
        let icp = build_single_icp(&gv(&[2, 1, 0], 2));
        assert_eq!(icp.known(3), &[1, 2, 6, 7]);
        assert_eq!(icp.known(1), &[4, 5, 7, 8]);
    }

    #[test]
    fn union_instance_known_sets() {
        let icp = build_union_icp(&gv(&[2, 1, 0], 2));
        let col = |p: usize| -> Vec<usize> {
            icp.known(3).iter().filter(|n| n.column == p).map(|n| n.user).collect()
        };
        assert_eq!(col(1), vec![1, 2, 6, 7]);
        assert_eq!(col(2), vec![1, 4, 5, 8]);
        assert_eq!(col(3), vec![5, 6, 7, 8]);
        assert_eq!(icp.known(3).len(), 12);
    }

    #[test]
    fn suicp_degrees() {
        let g = build_union_icp(&gv(&[3, 2, 1], 2)).to_suicp();
        assert_eq!(g.len(), 33);
        for u in 0..g.len() {
            assert_eq!(g.out_degree(u), 12);
            assert_eq!(g.in_degree(u), 12);
        }
    }

    #[test]
    fn tilde_shape() {
        let t = build_tilde_icp(&[1], 3, 2).unwrap();
        assert_eq!(t.users(), 8);
        assert_eq!(t.columns(), 1);
        assert_eq!(t.parts(), 3);
        assert_eq!(t.split_column(2), (1, 2));
        let t = build_tilde_icp(&[2, 0], 2, 1).unwrap();
        assert_eq!(t.columns(), 2);
        assert_eq!(t.users(), 8);
        assert_eq!(build_tilde_icp(&[1], 0, 1), Err(Error::ZeroRepeat));
    }
}
