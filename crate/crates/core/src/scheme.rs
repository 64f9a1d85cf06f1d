//! MDS-coded broadcast built from a proper coloring.
//!
//! Messages sharing a color are summed into one aggregate per color. The
//! server sends `chi` combinations of the aggregates through a Vandermonde
//! generator with evaluation points `0..n`, where `chi` is the local
//! chromatic count; any `chi` columns are independent over `F_p` for
//! `p >= n`. A node removes the aggregates it can rebuild from side
//! information, solves for the remaining ones, and reads its own message off
//! its color's aggregate.

use serde::Serialize;

use crate::coloring::{colors_seen, local_chromatic_value, verify_proper, Coloring, Verdict};
use crate::error::{Error, Result};
use crate::field::{default_field_order, PrimeField};
use crate::icp::{Node, SuicpGraph};

#[derive(Debug, Clone)]
pub struct TransmissionScheme {
    field: PrimeField,
    rank: usize,
    colors: usize,
    generator: Vec<Vec<u64>>,
    node_colors: Vec<usize>,
    nodes: Vec<Node>,
}

/// Builds the scheme. `field` defaults to the smallest prime at least
/// `max(257, n)`; an explicit order must be a prime of at least `n`.
pub fn build_mds_scheme(
    g: &SuicpGraph,
    coloring: &Coloring,
    field: Option<u64>,
) -> Result<TransmissionScheme> {
    build_mds_scheme_with_rank(g, coloring, field, None)
}

/// As [`build_mds_scheme`], optionally sending `rank` symbols instead of the
/// local chromatic count. A larger rank (up to the number of colors) still
/// decodes and is used when a target rate has to be met exactly.
pub fn build_mds_scheme_with_rank(
    g: &SuicpGraph,
    coloring: &Coloring,
    field: Option<u64>,
    rank: Option<usize>,
) -> Result<TransmissionScheme> {
    if let Verdict::Violations(v) = verify_proper(g, coloring)? {
        return Err(Error::ImproperColoring(v.len()));
    }
    let colors = coloring.num_colors();
    let order = field.unwrap_or_else(|| default_field_order(colors));
    let field = PrimeField::new(order)?;
    if order < colors as u64 {
        return Err(Error::FieldTooSmall { order, colors });
    }
    let needed = local_chromatic_value(g, coloring)?;
    let rank = rank.unwrap_or(needed);
    if rank < needed || rank > colors {
        return Err(Error::RankOutOfRange { rank, needed, colors });
    }
    let generator = (0..rank)
        .map(|r| (0..colors as u64).map(|alpha| field.pow(alpha, r as u64)).collect())
        .collect();
    Ok(TransmissionScheme {
        field,
        rank,
        colors,
        generator,
        node_colors: coloring.dense(g)?,
        nodes: g.nodes().to_vec(),
    })
}

impl TransmissionScheme {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Number of transmitted symbols (`chi`).
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_colors(&self) -> usize {
        self.colors
    }

    /// `chi x n` generator, row `r` holding `alpha^r` for `alpha = 0..n`.
    pub fn generator(&self) -> &[Vec<u64>] {
        &self.generator
    }

    pub fn node_color(&self, u: usize) -> usize {
        self.node_colors[u]
    }

    fn aggregates(&self, messages: &[u64]) -> Vec<u64> {
        let mut y = vec![0u64; self.colors];
        for (u, &m) in messages.iter().enumerate() {
            let c = self.node_colors[u] - 1;
            y[c] = self.field.add(y[c], m % self.field.order());
        }
        y
    }

    /// Codeword `G y` for per-node messages in graph order.
    pub fn encode(&self, messages: &[u64]) -> Result<Vec<u64>> {
        if messages.len() != self.nodes.len() {
            return Err(Error::MessageCount { expected: self.nodes.len(), got: messages.len() });
        }
        let y = self.aggregates(messages);
        Ok(self
            .generator
            .iter()
            .map(|row| {
                row.iter().zip(&y).fold(0, |acc, (&g, &v)| self.field.add(acc, self.field.mul(g, v)))
            })
            .collect())
    }

    /// Decodes node `u` from the codeword, reading side information through
    /// `side(v)` for every node `v` that `u` knows.
    pub fn decode_node(
        &self,
        g: &SuicpGraph,
        u: usize,
        codeword: &[u64],
        side: impl Fn(usize) -> Option<u64>,
    ) -> Result<u64> {
        let f = self.field;
        let node = g.node(u);
        let seen = colors_seen(g, &self.node_colors, self.colors, u);
        let mut rhs = codeword.to_vec();
        for v in g.side_info(u) {
            let c = self.node_colors[v];
            let val = side(v).ok_or(Error::MissingSideInformation(g.node(v)))? % f.order();
            for (r, row) in self.generator.iter().enumerate() {
                rhs[r] = f.sub(rhs[r], f.mul(row[c - 1], val));
            }
        }
        let unknown: Vec<usize> = seen.ones().collect();
        if unknown.len() > self.rank {
            return Err(Error::TooManyUnknowns { node, unknown: unknown.len(), rank: self.rank });
        }
        let mut cols = unknown.clone();
        for c in 1..=self.colors {
            if cols.len() == self.rank {
                break;
            }
            if !seen.contains(c) {
                cols.push(c);
            }
        }
        cols.sort_unstable();
        let a: Vec<Vec<u64>> =
            self.generator.iter().map(|row| cols.iter().map(|&c| row[c - 1]).collect()).collect();
        let z = f.solve(a, rhs).ok_or(Error::SingularSubmatrix(node))?;
        let own = cols.iter().position(|&c| c == self.node_colors[u]).expect("own color selected");
        Ok(z[own])
    }

    /// Encodes `messages` and decodes every node from the result.
    pub fn simulate_decode(&self, g: &SuicpGraph, messages: &[u64]) -> Result<Vec<u64>> {
        let codeword = self.encode(messages)?;
        (0..g.len())
            .map(|u| self.decode_node(g, u, &codeword, |v| messages.get(v).copied()))
            .collect()
    }
}

#[derive(Serialize)]
struct SchemeJson {
    colors: usize,
    chi: usize,
    field: u64,
    assignment: Vec<(usize, usize, usize)>,
}

impl Serialize for TransmissionScheme {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SchemeJson {
            colors: self.colors,
            chi: self.rank,
            field: self.field.order(),
            assignment: self
                .nodes
                .iter()
                .zip(&self.node_colors)
                .map(|(n, &c)| (n.user, n.column, c))
                .collect(),
        }
        .serialize(s)
    }
}
