use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::icp::{canonical_rotation, minimal_period, rotate_gaps};
use crate::ratio::binomial;

/// All weak compositions of `n` into `m` parts, in ascending lexicographic
/// order.
pub fn weak_compositions(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn fill(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 0..=rest {
            cur.push(first);
            fill(rest - first, slots - 1, cur, out);
            cur.pop();
        }
    }
    assert!(m >= 1, "at least one part");
    let mut out = Vec::new();
    fill(n, m, &mut Vec::with_capacity(m), &mut out);
    out
}

/// Number of weak compositions of `n` into `m` parts with every part
/// strictly below `t`, by inclusion-exclusion over the parts that reach `t`.
pub fn composition_count_max_below(n: usize, m: usize, t: usize) -> BigUint {
    assert!(m >= 1, "at least one part");
    if t == 0 {
        return BigUint::zero();
    }
    let mut total = BigInt::zero();
    let mut s = 0;
    while s <= m && t * s <= n {
        let r = (n - t * s) as u64;
        let term = BigInt::from(binomial(m as u64, s as u64))
            * BigInt::from(binomial(m as u64 + r - 1, r));
        if s % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
        s += 1;
    }
    debug_assert!(!total.is_negative());
    total.to_biguint().unwrap_or_default()
}

/// Orbit of a composition under cyclic rotation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationClass {
    /// Lexicographically greatest rotation (largest part leading).
    pub representative: Vec<usize>,
    /// Length of the minimal repeating block `u`.
    pub period: usize,
    /// `v`, the number of repetitions of `u` in the representative.
    pub repeat: usize,
    /// Members in rotation order: member `t` is the representative rotated
    /// clockwise by `t`.
    pub members: Vec<Vec<usize>>,
}

/// Partitions `compositions` into rotation classes, ordered by
/// representative, lexicographically descending.
pub fn group_rotation_classes(compositions: &[Vec<usize>]) -> Vec<RotationClass> {
    let mut groups: BTreeMap<Vec<usize>, Vec<(usize, Vec<usize>)>> = BTreeMap::new();
    for c in compositions {
        let (rep, shift) = canonical_rotation(c);
        groups.entry(rep).or_default().push((shift, c.clone()));
    }
    groups
        .into_iter()
        .rev()
        .map(|(rep, mut members)| {
            members.sort();
            members.dedup();
            let period = minimal_period(&rep);
            debug_assert!(members.iter().all(|(t, m)| rotate_gaps(&rep, *t) == *m));
            RotationClass {
                repeat: rep.len() / period,
                period,
                representative: rep,
                members: members.into_iter().map(|(_, m)| m).collect(),
            }
        })
        .collect()
}
