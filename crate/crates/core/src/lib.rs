//! Structured index coding problems and their application to multi-access
//! coded caching.
//!
//! The crate is organised bottom-up:
//!
//! - [`icp`] builds the structured index coding instances (single, union and
//!   tilde families) and their single-unicast side-information graphs.
//! - [`coloring`] holds the proper colorings, the local chromatic count and
//!   the closed-form upper bound `R_u`.
//! - [`scheme`] turns a proper coloring into an MDS-coded broadcast over a
//!   prime field and simulates per-node decoding.
//! - [`bounds`] collects the lower bounds (constructive and brute-force MAIS),
//!   the exactly solvable special cases and the tilde-instance bounds.
//! - [`macc`] applies all of the above to the multi-access coded caching
//!   network: placement, delivery decomposition, exact rates, trade-off
//!   curves and an end-to-end simulation.
//! - [`cli`] is the command-line front end used by the `sicps` binary.
//!
//! Users, columns and files are 1-based throughout the public API.

#![allow(clippy::needless_range_loop)]

pub mod bounds;
pub mod cli;
pub mod coloring;
pub mod error;
pub mod field;
pub mod icp;
pub mod macc;
pub mod ratio;
pub mod scheme;

pub use error::{Error, Result};
pub use icp::{GapVector, Node, SuicpGraph, UnionIcp};

/// The cyclic index `<m>_n`: `m mod n`, except that multiples of `n` map to
/// `n` rather than `0`. The result always lies in `1..=n`.
pub fn cyc(m: i64, n: usize) -> usize {
    assert!(n > 0, "cyclic modulus must be positive");
    let r = m.rem_euclid(n as i64) as usize;
    if r == 0 {
        n
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::cyc;

    #[test]
    fn cyclic_index_maps_multiples_to_modulus() {
        assert_eq!(cyc(8, 8), 8);
        assert_eq!(cyc(0, 8), 8);
        assert_eq!(cyc(9, 8), 1);
        assert_eq!(cyc(-1, 8), 7);
        assert_eq!(cyc(3, 8), 3);
    }
}
