use std::collections::HashMap;

use super::placement::{placement_map, CcdnConfig, PlacementPlan};
use crate::cyc;
use crate::error::{Error, Result};

/// One column of the delivery table. Row `k` holds the subfile of user
/// `k`'s demand on the column's set shifted by `k - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeliveryColumn {
    /// Placement set (index) of the row-1 entry.
    pub set: usize,
    /// Gap vector of the single instance formed by the column.
    pub label: Vec<usize>,
}

/// The `K x C(K - wL + w - 1, w)` table of missing subfiles.
#[derive(Debug, Clone)]
pub struct DeliveryIcp {
    plan: PlacementPlan,
    demands: Vec<usize>,
    columns: Vec<DeliveryColumn>,
    by_label: HashMap<Vec<usize>, usize>,
}

pub fn build_delivery_icp(
    config: CcdnConfig,
    w: usize,
    demands: &[usize],
) -> Result<DeliveryIcp> {
    let k = config.caches;
    if demands.len() != k {
        return Err(Error::DemandLength { expected: k, got: demands.len() });
    }
    for (u, &d) in demands.iter().enumerate() {
        if d == 0 || d > config.files {
            return Err(Error::DemandOutOfRange { user: u + 1, demand: d, files: config.files });
        }
    }
    let plan = placement_map(config, w)?;
    let mut columns = Vec::new();
    for set in 0..plan.sets().len() {
        if plan.user_has(1, set) {
            continue;
        }
        let access = plan.users_with_access(set);
        columns.push(DeliveryColumn { set, label: column_label(k, config.access, &access) });
    }
    let by_label = columns.iter().enumerate().map(|(j, c)| (c.label.clone(), j)).collect();
    Ok(DeliveryIcp { plan, demands: demands.to_vec(), columns, by_label })
}

/// Reads the gap pattern seen by row 1: the entry in row `1 + m` is side
/// information for user 1 exactly when user `<1 - m>_K` reaches the
/// column's set.
fn column_label(k: usize, l: usize, access: &[usize]) -> Vec<usize> {
    let known = |m: usize| access.contains(&cyc(1 - m as i64, k));
    let mut label = Vec::new();
    let mut run = 0;
    let mut m = 1;
    while m < k {
        if known(m) {
            debug_assert!((m..m + l).all(known), "side information comes in chunks of L");
            label.push(run);
            run = 0;
            m += l;
        } else {
            run += 1;
            m += 1;
        }
    }
    label.push(run);
    label
}

impl DeliveryIcp {
    pub fn plan(&self) -> &PlacementPlan {
        &self.plan
    }

    pub fn demands(&self) -> &[usize] {
        &self.demands
    }

    pub fn columns(&self) -> &[DeliveryColumn] {
        &self.columns
    }

    pub fn column_by_label(&self, label: &[usize]) -> Option<usize> {
        self.by_label.get(label).copied()
    }

    /// Placement set (index) of the entry in `row` (1-based) of `column`.
    pub fn entry_set(&self, row: usize, column: usize) -> usize {
        self.plan.shifted(self.columns[column].set, row - 1)
    }

    /// `(file, set)` of the entry in `row` of `column`.
    pub fn entry(&self, row: usize, column: usize) -> (usize, usize) {
        (self.demands[row - 1], self.entry_set(row, column))
    }
}
