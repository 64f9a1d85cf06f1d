use std::collections::HashMap;

use num_bigint::BigUint;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::ratio::{binomial, frac};

/// An `(N, K, L)` network: `N` unit-size files, `K` caches, `K` users.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CcdnConfig {
    pub files: usize,
    pub caches: usize,
    pub access: usize,
}

impl CcdnConfig {
    pub fn new(files: usize, caches: usize, access: usize) -> Result<Self> {
        if files == 0 || caches == 0 {
            return Err(Error::InvalidNetwork("N and K must be positive".into()));
        }
        if access == 0 || access > caches {
            return Err(Error::InvalidNetwork(format!("L = {access} outside 1..={caches}")));
        }
        Ok(CcdnConfig { files, caches, access })
    }

    /// Largest memory multiplier with a defined placement, `floor(K/L)`.
    pub fn max_multiplier(&self) -> usize {
        self.caches / self.access
    }

    pub fn check_multiplier(&self, w: usize) -> Result<()> {
        check_multiplier(self.caches, self.access, w)
    }

    /// `M = wN/K`.
    pub fn memory(&self, w: usize) -> BigRational {
        frac(w * self.files, self.caches)
    }

    /// Whether user `user` reaches cache `cache`.
    pub fn reaches(&self, user: usize, cache: usize) -> bool {
        (cache + self.caches - user) % self.caches < self.access
    }
}

pub(crate) fn check_multiplier(k: usize, l: usize, w: usize) -> Result<()> {
    if l == 0 || l > k {
        return Err(Error::InvalidNetwork(format!("L = {l} outside 1..={k}")));
    }
    if w == 0 || w * l > k {
        return Err(Error::InvalidMultiplier { w, max: k / l });
    }
    Ok(())
}

/// All `w`-subsets of `1..=K` whose elements are pairwise at circular
/// distance at least `L`, sorted lexicographically.
pub fn enumerate_placement_sets(k: usize, l: usize, w: usize) -> Result<Vec<Vec<usize>>> {
    check_multiplier(k, l, w)?;
    fn extend(k: usize, l: usize, w: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == w {
            out.push(cur.clone());
            return;
        }
        let start = cur.last().map_or(1, |&x| x + l);
        for c in start..=k {
            if let Some(&first) = cur.first() {
                if k - (c - first) < l {
                    break;
                }
            }
            cur.push(c);
            extend(k, l, w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(k, l, w, &mut Vec::with_capacity(w), &mut out);
    Ok(out)
}

/// `(K/w) C(K - wL + w - 1, w - 1)`.
pub fn placement_set_count(k: usize, l: usize, w: usize) -> Result<BigUint> {
    check_multiplier(k, l, w)?;
    let c = binomial((k - w * l + w - 1) as u64, (w - 1) as u64);
    Ok(c * BigUint::from(k) / BigUint::from(w))
}

/// Uncoded placement: every file is split into one subfile per placement
/// set, and each cache stores the subfiles whose set contains it.
#[derive(Debug, Clone)]
pub struct PlacementPlan {
    config: CcdnConfig,
    w: usize,
    sets: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

pub fn placement_map(config: CcdnConfig, w: usize) -> Result<PlacementPlan> {
    let sets = enumerate_placement_sets(config.caches, config.access, w)?;
    let index = sets.iter().enumerate().map(|(j, s)| (s.clone(), j)).collect();
    Ok(PlacementPlan { config, w, sets, index })
}

impl PlacementPlan {
    pub fn config(&self) -> CcdnConfig {
        self.config
    }

    pub fn multiplier(&self) -> usize {
        self.w
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn set_index(&self, set: &[usize]) -> Option<usize> {
        self.index.get(set).copied()
    }

    /// Subfile id of `(file, set)`, files 1-based, sets by index.
    pub fn subfile_id(&self, file: usize, set: usize) -> usize {
        (file - 1) * self.sets.len() + set
    }

    pub fn subfile_size(&self) -> BigRational {
        frac(1, self.sets.len())
    }

    /// Index of the set obtained by shifting every cache of `set` by `t`.
    pub fn shifted(&self, set: usize, t: usize) -> usize {
        let k = self.config.caches;
        let mut s: Vec<usize> = self.sets[set].iter().map(|&c| (c - 1 + t) % k + 1).collect();
        s.sort_unstable();
        self.index[&s]
    }

    /// Set indices stored in `cache`.
    pub fn cache_sets(&self, cache: usize) -> Vec<usize> {
        (0..self.sets.len()).filter(|&j| self.sets[j].contains(&cache)).collect()
    }

    /// Memory used by `cache`, in file units.
    pub fn cache_load(&self, cache: usize) -> BigRational {
        frac(self.cache_sets(cache).len() * self.config.files, self.sets.len())
    }

    pub fn user_has(&self, user: usize, set: usize) -> bool {
        self.sets[set].iter().any(|&c| self.config.reaches(user, c))
    }

    /// Users reaching at least one cache of `set`, ascending.
    pub fn users_with_access(&self, set: usize) -> Vec<usize> {
        (1..=self.config.caches).filter(|&u| self.user_has(u, set)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k8_l2_w2_sets() {
        let sets = enumerate_placement_sets(8, 2, 2).unwrap();
        assert_eq!(sets.len(), 20);
        assert_eq!(sets[0], vec![1, 3]);
        assert_eq!(sets[19], vec![6, 8]);
        assert!(!sets.contains(&vec![1, 8]));
        assert_eq!(placement_set_count(8, 2, 2).unwrap(), BigUint::from(20u32));
    }

    #[test]
    fn counts_and_errors() {
        assert_eq!(enumerate_placement_sets(10, 2, 3).unwrap().len(), 50);
        assert_eq!(enumerate_placement_sets(7, 3, 1).unwrap().len(), 7);
        assert_eq!(
            enumerate_placement_sets(8, 2, 5),
            Err(Error::InvalidMultiplier { w: 5, max: 4 })
        );
        assert!(enumerate_placement_sets(8, 2, 0).is_err());
    }

    #[test]
    fn cache_loads_are_exact() {
        let cfg = CcdnConfig::new(10, 10, 2).unwrap();
        let plan = placement_map(cfg, 3).unwrap();
        assert_eq!(plan.subfile_size(), frac(1, 50));
        for c in 1..=10 {
            assert_eq!(plan.cache_load(c), frac(3 * 10, 10));
        }
    }

    #[test]
    fn access_wraps_around() {
        let cfg = CcdnConfig::new(4, 8, 2).unwrap();
        assert!(cfg.reaches(8, 1));
        assert!(cfg.reaches(8, 8));
        assert!(!cfg.reaches(8, 2));
    }
}
