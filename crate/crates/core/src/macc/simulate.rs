use std::collections::HashMap;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::compositions::{group_rotation_classes, weak_compositions};
use super::delivery::{build_delivery_icp, DeliveryIcp};
use super::placement::CcdnConfig;
use super::rates::rate_new;
use crate::coloring::{local_chromatic_value, cyclic_coloring, upper_bound_ru};
use crate::error::{Error, Result};
use crate::field::{default_field_order, PrimeField};
use crate::icp::{build_union_icp, rotate_gaps, GapVector};
use crate::ratio::{frac, to_exact};
use crate::scheme::build_mds_scheme_with_rank;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub representative: Vec<usize>,
    pub period: usize,
    pub repeat: usize,
    /// Delivery columns (1-based) of the class members, in rotation order.
    pub columns: Vec<usize>,
    /// Symbols sent per sub-subfile position; equals `R_u` of the
    /// representative.
    pub chi: usize,
    /// Local chromatic count of the coloring, the least rank that decodes.
    pub chi_local: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeFailure {
    pub user: usize,
    pub file: usize,
    pub set: Vec<usize>,
    pub symbol: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationReport {
    pub decoded_ok: bool,
    /// Transmitted symbols over symbols per file.
    pub total_rate: BigRational,
    /// Rate had every class sent only its local chromatic count.
    pub realized_rate: BigRational,
    pub formula_rate: BigRational,
    pub field: u64,
    pub subfiles: usize,
    pub symbols_per_subfile: usize,
    pub transmitted_symbols: usize,
    pub classes: Vec<ClassReport>,
    pub failures: Vec<NodeFailure>,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    decoded_ok: bool,
    total_rate: String,
    rate_new: String,
    realized_rate: String,
    field: u64,
    subfiles: usize,
    symbols_per_subfile: usize,
    transmitted_symbols: usize,
    classes: &'a [ClassReport],
    failures: &'a [NodeFailure],
}

impl Serialize for SimulationReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ReportJson {
            decoded_ok: self.decoded_ok,
            total_rate: to_exact(&self.total_rate),
            rate_new: to_exact(&self.formula_rate),
            realized_rate: to_exact(&self.realized_rate),
            field: self.field,
            subfiles: self.subfiles,
            symbols_per_subfile: self.symbols_per_subfile,
            transmitted_symbols: self.transmitted_symbols,
            classes: &self.classes,
            failures: &self.failures,
        }
        .serialize(s)
    }
}

/// Cache contents keyed by `(file, set)`; every subfile is `w + 1` symbols.
struct Network {
    config: CcdnConfig,
    caches: Vec<HashMap<(usize, usize), Vec<u64>>>,
}

impl Network {
    fn lookup(&self, user: usize, file: usize, set: usize) -> Option<&Vec<u64>> {
        let k = self.config.caches;
        (0..self.config.access)
            .map(|j| (user - 1 + j) % k)
            .find_map(|c| self.caches[c].get(&(file, set)))
    }
}

/// Places random files, builds the per-class coded broadcasts, and checks
/// that every user rebuilds its demanded file from its caches plus the
/// broadcast.
///
/// Each subfile is `w + 1` field symbols. A class whose representative
/// repeats a block `v` times splits every subfile into `v` pieces, one per
/// repetition, so all classes fit the same symbol layout.
pub fn end_to_end_simulate(
    config: CcdnConfig,
    w: usize,
    demands: &[usize],
    field: Option<u64>,
    seed: u64,
) -> Result<SimulationReport> {
    let table = build_delivery_icp(config, w, demands)?;
    let plan = table.plan();
    let k = config.caches;
    let symbols = w + 1;
    let nsets = plan.sets().len();
    let order = field.unwrap_or_else(|| default_field_order(k));
    PrimeField::new(order)?;
    if order < k as u64 {
        return Err(Error::FieldTooSmall { order, colors: k });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let library: Vec<Vec<Vec<u64>>> = (0..config.files)
        .map(|_| {
            (0..nsets).map(|_| (0..symbols).map(|_| rng.gen_range(0..order)).collect()).collect()
        })
        .collect();
    let mut caches = vec![HashMap::new(); k];
    for (c, cache) in caches.iter_mut().enumerate() {
        for set in plan.cache_sets(c + 1) {
            for (f, file) in library.iter().enumerate() {
                cache.insert((f + 1, set), file[set].clone());
            }
        }
    }
    let net = Network { config, caches };

    let mut decoded: HashMap<(usize, usize), Vec<Option<u64>>> = HashMap::new();
    let mut failures = Vec::new();
    let mut classes = Vec::new();
    let mut transmitted = 0;
    let mut realized = 0;

    if !table.columns().is_empty() {
        let n = k - w * config.access - 1;
        for class in group_rotation_classes(&weak_compositions(n, symbols)) {
            let report = deliver_class(
                &table,
                &net,
                &library,
                &class.representative,
                order,
                &mut decoded,
                &mut failures,
            )?;
            transmitted += report.chi * report.period;
            realized += report.chi_local * report.period;
            classes.push(report);
        }
    }

    for user in 1..=k {
        let file = demands[user - 1];
        for set in 0..nsets {
            let got: Vec<Option<u64>> = if plan.user_has(user, set) {
                net.lookup(user, file, set).expect("reachable subfile").iter().copied().map(Some).collect()
            } else {
                decoded.get(&(user, set)).cloned().unwrap_or_else(|| vec![None; symbols])
            };
            for (pos, (g, want)) in got.iter().zip(&library[file - 1][set]).enumerate() {
                let reason = match g {
                    None => "not recovered",
                    Some(x) if x != want => "wrong value",
                    Some(_) => continue,
                };
                failures.push(NodeFailure {
                    user,
                    file,
                    set: plan.sets()[set].clone(),
                    symbol: pos,
                    reason: reason.to_string(),
                });
            }
        }
    }
    failures.sort_by(|a, b| (a.user, &a.set, a.symbol).cmp(&(b.user, &b.set, b.symbol)));
    failures.dedup();

    let per_file = nsets * symbols;
    Ok(SimulationReport {
        decoded_ok: failures.is_empty(),
        total_rate: frac(transmitted, per_file),
        realized_rate: frac(realized, per_file),
        formula_rate: rate_new(k, config.access, w)?,
        field: order,
        subfiles: nsets,
        symbols_per_subfile: symbols,
        transmitted_symbols: transmitted,
        classes,
        failures,
    })
}

fn deliver_class(
    table: &DeliveryIcp,
    net: &Network,
    library: &[Vec<Vec<u64>>],
    representative: &[usize],
    order: u64,
    decoded: &mut HashMap<(usize, usize), Vec<Option<u64>>>,
    failures: &mut Vec<NodeFailure>,
) -> Result<ClassReport> {
    let config = net.config;
    let symbols = representative.len();
    let spec = GapVector::new(representative.to_vec(), config.access)?;
    let period = spec.period();
    let icp = build_union_icp(&spec);
    let g = icp.to_suicp();
    let coloring = cyclic_coloring(&icp);
    let chi = upper_bound_ru(&spec);
    let scheme = build_mds_scheme_with_rank(&g, &coloring, Some(order), Some(chi))?;
    let chi_local = local_chromatic_value(&g, &coloring)?;

    // Union column p reads delivery column labelled by the representative
    // rotated by p - 1, restricted to piece (p - 1) / period.
    let layout: Vec<(usize, usize)> = (0..symbols)
        .map(|p| {
            let label = rotate_gaps(representative, p % period);
            let col = table.column_by_label(&label).expect("every composition labels a column");
            (col, p / period)
        })
        .collect();
    let locate = |u: usize, s: usize| -> (usize, usize, usize) {
        let node = g.node(u);
        let (col, piece) = layout[node.column - 1];
        let (file, set) = table.entry(node.user, col);
        (file, set, piece * period + s)
    };

    for s in 0..period {
        let messages: Vec<u64> = (0..g.len())
            .map(|u| {
                let (file, set, pos) = locate(u, s);
                library[file - 1][set][pos]
            })
            .collect();
        let codeword = scheme.encode(&messages)?;
        for u in 0..g.len() {
            let user = g.node(u).user;
            let side = |v: usize| {
                let (file, set, pos) = locate(v, s);
                net.lookup(user, file, set).map(|sym| sym[pos])
            };
            let (file, set, pos) = locate(u, s);
            match scheme.decode_node(&g, u, &codeword, side) {
                Ok(x) => {
                    decoded.entry((user, set)).or_insert_with(|| vec![None; symbols])[pos] = Some(x);
                }
                Err(e) => failures.push(NodeFailure {
                    user,
                    file,
                    set: table.plan().sets()[set].clone(),
                    symbol: pos,
                    reason: e.to_string(),
                }),
            }
        }
    }

    let mut columns: Vec<usize> = layout[..period].iter().map(|&(c, _)| c + 1).collect();
    columns.dedup();
    Ok(ClassReport {
        representative: representative.to_vec(),
        period,
        repeat: symbols / period,
        columns,
        chi,
        chi_local,
    })
}
