//! Multi-access coded caching on a ring of `K` caches and `K` users, user
//! `k` reaching caches `k, k+1, ..., k+L-1` (cyclically).

mod compositions;
mod delivery;
mod placement;
mod rates;
mod simulate;
mod tradeoff;

pub use compositions::{
    composition_count_max_below, group_rotation_classes, weak_compositions, RotationClass,
};
pub use delivery::{build_delivery_icp, DeliveryColumn, DeliveryIcp};
pub use placement::{
    enumerate_placement_sets, placement_map, placement_set_count, CcdnConfig, PlacementPlan,
};
pub use rates::{
    rate_closed_form_bound, rate_closed_form_large_l, rate_hkd, rate_new, rate_rk,
    REFERENCE_SPE_RATE, REFERENCE_SR_RATE,
};
pub use simulate::{end_to_end_simulate, ClassReport, NodeFailure, SimulationReport};
pub use tradeoff::{
    comparison_points, memory_shared_rate, tradeoff_curve, write_tradeoff_csv, RatePoint,
    RateSource,
};
