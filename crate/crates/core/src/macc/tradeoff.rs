use std::fmt;
use std::io::Write;

use num_rational::BigRational;
use num_traits::Zero;

use super::placement::CcdnConfig;
use super::rates::{rate_closed_form_large_l, rate_hkd, rate_new, rate_rk};
use crate::error::Result;
use crate::ratio::{frac, int, to_decimal, to_exact};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RateSource {
    New,
    Hkd,
    Rk,
    ClosedForm,
    Extreme,
    MemoryShared,
}

impl fmt::Display for RateSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RateSource::New => "NEW",
            RateSource::Hkd => "HKD",
            RateSource::Rk => "RK",
            RateSource::ClosedForm => "CLOSED_FORM",
            RateSource::Extreme => "EXTREME",
            RateSource::MemoryShared => "MEMORY_SHARED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatePoint {
    pub memory: BigRational,
    pub rate: BigRational,
    pub source: RateSource,
}

impl RatePoint {
    fn new(memory: BigRational, rate: BigRational, source: RateSource) -> Self {
        RatePoint { memory, rate, source }
    }
}

/// Corner points of the proposed scheme: `M = 0`, `M = wN/K` for every
/// `w` with `wL < K`, and `M = ceil(K/L) N / K` where every user reaches
/// every file.
fn corner_points(cfg: CcdnConfig) -> Result<Vec<RatePoint>> {
    let (k, l) = (cfg.caches, cfg.access);
    let mut out = vec![RatePoint::new(int(0), int(k), RateSource::Extreme)];
    for w in 1..=cfg.max_multiplier() {
        if w * l < k {
            out.push(RatePoint::new(cfg.memory(w), rate_new(k, l, w)?, RateSource::New));
        }
    }
    out.push(RatePoint::new(cfg.memory(k.div_ceil(l)), int(0), RateSource::Extreme));
    Ok(out)
}

/// Lower convex hull of points sorted by memory.
fn lower_envelope(points: &[RatePoint]) -> Vec<RatePoint> {
    let mut hull: Vec<RatePoint> = Vec::new();
    for p in points {
        while hull.len() >= 2 {
            let a = &hull[hull.len() - 2];
            let b = &hull[hull.len() - 1];
            // drop b when it lies on or above the chord from a to p
            let cross = (&b.memory - &a.memory) * (&p.rate - &a.rate)
                - (&b.rate - &a.rate) * (&p.memory - &a.memory);
            if cross <= BigRational::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p.clone());
    }
    hull
}

fn interpolate(hull: &[RatePoint], m: &BigRational) -> BigRational {
    for pair in hull.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if *m >= a.memory && *m <= b.memory {
            let t = (m - &a.memory) / (&b.memory - &a.memory);
            return &a.rate + t * (&b.rate - &a.rate);
        }
    }
    hull.last().map(|p| p.rate.clone()).unwrap_or_else(BigRational::zero)
}

/// Achievable rate at any memory by memory sharing between corner points.
pub fn memory_shared_rate(cfg: CcdnConfig, memory: &BigRational) -> Result<BigRational> {
    Ok(interpolate(&lower_envelope(&corner_points(cfg)?), memory))
}

/// The proposed rate-memory curve: every corner memory plus `samples`
/// evenly spaced intermediate memories, each evaluated on the lower convex
/// envelope of the corner points. Corners above the envelope are reported
/// with their memory-shared value.
pub fn tradeoff_curve(cfg: CcdnConfig, samples: usize) -> Result<Vec<RatePoint>> {
    let corners = corner_points(cfg)?;
    let hull = lower_envelope(&corners);
    let top = corners.last().expect("at least two corners").memory.clone();
    let mut out: Vec<RatePoint> = corners
        .into_iter()
        .map(|c| {
            let rate = interpolate(&hull, &c.memory);
            if rate == c.rate {
                c
            } else {
                RatePoint::new(c.memory, rate, RateSource::MemoryShared)
            }
        })
        .collect();
    for j in 1..=samples {
        let m = &top * frac(j, samples + 1);
        if out.iter().any(|p| p.memory == m) {
            continue;
        }
        let rate = interpolate(&hull, &m);
        out.push(RatePoint::new(m, rate, RateSource::MemoryShared));
    }
    out.sort_by(|a, b| a.memory.cmp(&b.memory));
    Ok(out)
}

/// Baseline rates at the corner memories `wN/K`: both reference schemes,
/// and the closed form when `w = 1` and `2L >= K`.
pub fn comparison_points(cfg: CcdnConfig) -> Result<Vec<RatePoint>> {
    let (n, k, l) = (cfg.files, cfg.caches, cfg.access);
    let mut out = Vec::new();
    for w in 1..=cfg.max_multiplier() {
        let m = cfg.memory(w);
        out.push(RatePoint::new(m.clone(), rate_hkd(k, l, w)?, RateSource::Hkd));
        out.push(RatePoint::new(m.clone(), rate_rk(n, k, l, &m)?, RateSource::Rk));
        if w == 1 && 2 * l + 1 >= k {
            out.push(RatePoint::new(m, rate_closed_form_large_l(k, l)?, RateSource::ClosedForm));
        }
    }
    Ok(out)
}

pub fn write_tradeoff_csv<W: Write>(points: &[RatePoint], out: W) -> std::io::Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(["M_exact", "M_decimal", "rate_exact", "rate_decimal", "source"])?;
    for p in points {
        wtr.write_record([
            to_exact(&p.memory),
            to_decimal(&p.memory),
            to_exact(&p.rate),
            to_decimal(&p.rate),
            p.source.to_string(),
        ])?;
    }
    wtr.flush()
}
