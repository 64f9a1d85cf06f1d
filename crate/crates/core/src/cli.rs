//! Command-line front end. [`run`] holds all logic so it can be driven from
//! tests; the `sicps` binary only forwards `std::env::args`.
//!
//! Exit codes: `0` success, `2` usage or parameter error, `3` verification
//! failure.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::bounds::{analyze_bounds, gap_ratio, mais_node_cap};
use crate::coloring::{
    local_chromatic_value, cyclic_coloring, two_column_coloring, verify_proper, Coloring,
};
use crate::error::Error;
use crate::icp::{build_union_icp, GapVector, UnionIcp};
use crate::macc::{
    comparison_points, end_to_end_simulate, placement_set_count, rate_closed_form_large_l,
    rate_hkd, rate_new, rate_rk, tradeoff_curve, write_tradeoff_csv, CcdnConfig, RatePoint,
};
use crate::ratio::{to_decimal, to_exact};
use crate::scheme::build_mds_scheme;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "sicps", version, about = "Structured index coding and multi-access coded caching")]
struct Cli {
    #[command(subcommand)]
    command: Top,
}

#[derive(Subcommand, Debug)]
enum Top {
    /// Structured index coding instances.
    #[command(subcommand)]
    Icp(IcpCommand),
    /// Multi-access coded caching.
    #[command(subcommand)]
    Macc(MaccCommand),
}

#[derive(Subcommand, Debug)]
enum IcpCommand {
    /// Bounds, colorings and exact cases for one gap vector.
    Analyze(AnalyzeArgs),
    /// Encode random messages and decode every node.
    DecodeTest(DecodeTestArgs),
}

#[derive(Subcommand, Debug)]
enum MaccCommand {
    /// Proposed and baseline rates at memory wN/K.
    Rate(RateArgs),
    /// Rate-memory curve as CSV.
    Tradeoff(TradeoffArgs),
    /// Full placement, delivery and decoding run.
    Simulate(SimulateArgs),
}

#[derive(Args, Debug)]
struct InstanceArgs {
    /// Gap vector, leading entry first, e.g. 2,1,0.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    gaps: Vec<i64>,
    /// Side-information chunk length.
    #[arg(long = "L", allow_hyphen_values = true)]
    chunk: i64,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct DecodeTestArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Prime field order (at least K).
    #[arg(long)]
    field: Option<u64>,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct NetworkArgs {
    /// Number of files (defaults to K).
    #[arg(long = "N")]
    files: Option<usize>,
    #[arg(long = "K")]
    caches: usize,
    #[arg(long = "L")]
    access: usize,
}

impl NetworkArgs {
    fn config(&self) -> Result<CcdnConfig, Error> {
        CcdnConfig::new(self.files.unwrap_or(self.caches), self.caches, self.access)
    }
}

#[derive(Args, Debug)]
struct RateArgs {
    #[command(flatten)]
    network: NetworkArgs,
    #[arg(long)]
    w: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct TradeoffArgs {
    #[command(flatten)]
    network: NetworkArgs,
    /// Evenly spaced intermediate memories besides the corner points.
    #[arg(long, default_value_t = 32)]
    samples: usize,
    /// Output path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    network: NetworkArgs,
    #[arg(long)]
    w: usize,
    /// Demanded file per user; defaults to user k requesting file k (mod N).
    #[arg(long, value_delimiter = ',')]
    demands: Option<Vec<usize>>,
    #[arg(long)]
    field: Option<u64>,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

enum Failure {
    Usage(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let outcome = match cli.command {
        Top::Icp(IcpCommand::Analyze(a)) => icp_analyze(&a),
        Top::Icp(IcpCommand::DecodeTest(a)) => icp_decode_test(&a),
        Top::Macc(MaccCommand::Rate(a)) => macc_rate(&a),
        Top::Macc(MaccCommand::Tradeoff(a)) => macc_tradeoff(&a),
        Top::Macc(MaccCommand::Simulate(a)) => macc_simulate(&a),
    };
    match outcome {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Verify(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            EXIT_VERIFY
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn instance(args: &InstanceArgs) -> Result<(GapVector, UnionIcp), Failure> {
    let spec = GapVector::from_signed(&args.gaps, args.chunk)?;
    let icp = build_union_icp(&spec);
    Ok((spec, icp))
}

#[derive(Serialize)]
struct ColoringSummary {
    colors: usize,
    proper: bool,
    local_chromatic: usize,
}

fn summarize(icp: &UnionIcp, c: &Coloring) -> Result<ColoringSummary, Failure> {
    let g = icp.to_suicp();
    Ok(ColoringSummary {
        colors: c.num_colors(),
        proper: verify_proper(&g, c)?.is_proper(),
        local_chromatic: local_chromatic_value(&g, c)?,
    })
}

fn icp_analyze(args: &AnalyzeArgs) -> Outcome {
    let (spec, icp) = instance(&args.instance)?;
    let report = analyze_bounds(&spec, mais_node_cap());
    let cyclic = summarize(&icp, &cyclic_coloring(&icp))?;
    let two_col = match two_column_coloring(&icp) {
        Ok(c) => Some(summarize(&icp, &c)?),
        Err(_) => None,
    };
    let ratio = gap_ratio(&spec);
    let verified = cyclic.proper && two_col.as_ref().is_none_or(|s| s.proper);
    let text = match args.format {
        Format::Json => to_json(&json!({
            "gaps": spec.gaps(),
            "L": spec.chunk(),
            "K": spec.users(),
            "i": spec.len(),
            "bounds": report,
            "gap_ratio": to_exact(&ratio),
            "cyclic": cyclic,
            "two_column": two_col,
        })),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "instance      {spec}");
            let _ = writeln!(s, "K             {}", spec.users());
            let _ = writeln!(s, "upper (R_u)   {}", report.upper);
            let _ = writeln!(s, "lower         {}", report.lower_constructive);
            if let Some(b) = report.lower_brute {
                let _ = writeln!(s, "mais (exact)  {b}");
            }
            if let Some(e) = &report.exact {
                let _ = writeln!(s, "exact rate    {}", to_exact(e));
            }
            let _ = writeln!(s, "gap ratio     {} ({})", to_exact(&ratio), to_decimal(&ratio));
            let _ = writeln!(
                s,
                "cyclic        proper={} local={} colors={}",
                cyclic.proper, cyclic.local_chromatic, cyclic.colors
            );
            if let Some(two_col) = &two_col {
                let _ = writeln!(
                    s,
                    "two-column    proper={} local={} colors={}",
                    two_col.proper, two_col.local_chromatic, two_col.colors
                );
            }
            s
        }
        Format::Csv => return Err(Failure::Usage("icp analyze supports json or text".into())),
    };
    if verified {
        Ok(text)
    } else {
        Err(Failure::Verify(text))
    }
}

fn icp_decode_test(args: &DecodeTestArgs) -> Outcome {
    let (spec, icp) = instance(&args.instance)?;
    let g = icp.to_suicp();
    let scheme = build_mds_scheme(&g, &cyclic_coloring(&icp), args.field)?;
    let order = scheme.field().order();
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut failed = Vec::new();
    for trial in 0..args.trials {
        let messages: Vec<u64> = (0..g.len()).map(|_| rng.gen_range(0..order)).collect();
        match scheme.simulate_decode(&g, &messages) {
            Ok(out) if out == messages => {}
            _ => failed.push(trial),
        }
    }
    let text = match args.format {
        Format::Json => to_json(&json!({
            "gaps": spec.gaps(),
            "L": spec.chunk(),
            "K": spec.users(),
            "field": order,
            "chi": scheme.rank(),
            "trials": args.trials,
            "failures": failed.len(),
            "failed_trials": failed,
        })),
        Format::Text => format!(
            "instance {spec}: field {order}, chi {}, {} trials, {} failures\n",
            scheme.rank(),
            args.trials,
            failed.len()
        ),
        Format::Csv => return Err(Failure::Usage("icp decode-test supports json or text".into())),
    };
    if failed.is_empty() {
        Ok(text)
    } else {
        Err(Failure::Verify(text))
    }
}

fn macc_rate(args: &RateArgs) -> Outcome {
    let cfg = args.network.config()?;
    let (n, k, l, w) = (cfg.files, cfg.caches, cfg.access, args.w);
    let new = rate_new(k, l, w)?;
    let hkd = rate_hkd(k, l, w)?;
    let memory = cfg.memory(w);
    let rk = rate_rk(n, k, l, &memory)?;
    let closed = if w == 1 && 2 * l + 1 >= k { rate_closed_form_large_l(k, l).ok() } else { None };
    let subfiles = placement_set_count(k, l, w)?;
    let pair = |r: &num_rational::BigRational| json!({"exact": to_exact(r), "decimal": to_decimal(r)});
    Ok(match args.format {
        Format::Json => to_json(&json!({
            "N": n, "K": k, "L": l, "w": w,
            "M": to_exact(&memory),
            "subfiles": subfiles.to_string(),
            "rate_new": pair(&new),
            "rate_hkd": pair(&hkd),
            "rate_rk": pair(&rk),
            "closed_form": closed.as_ref().map(pair),
        })),
        Format::Csv => {
            let mut s = String::from(
                "N,K,L,w,M_exact,rate_new_exact,rate_new_decimal,rate_hkd_exact,rate_hkd_decimal,rate_rk_exact,rate_rk_decimal\n",
            );
            let _ = writeln!(
                s,
                "{n},{k},{l},{w},{},{},{},{},{},{},{}",
                to_exact(&memory),
                to_exact(&new),
                to_decimal(&new),
                to_exact(&hkd),
                to_decimal(&hkd),
                to_exact(&rk),
                to_decimal(&rk)
            );
            s
        }
        Format::Text => {
            let mut s = format!("(N,K,L) = ({n},{k},{l}), w = {w}, M = {}\n", to_exact(&memory));
            for (name, r) in [("NEW", &new), ("HKD", &hkd), ("RK", &rk)] {
                let _ = writeln!(s, "{name:<12}{:<12}{}", to_exact(r), to_decimal(r));
            }
            if let Some(c) = &closed {
                let _ = writeln!(s, "{:<12}{:<12}{}", "CLOSED_FORM", to_exact(c), to_decimal(c));
            }
            s
        }
    })
}

fn macc_tradeoff(args: &TradeoffArgs) -> Outcome {
    let cfg = args.network.config()?;
    let mut points: Vec<RatePoint> = tradeoff_curve(cfg, args.samples)?;
    points.extend(comparison_points(cfg)?);
    points.sort_by(|a, b| a.memory.cmp(&b.memory));
    let body = match args.format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_tradeoff_csv(&points, &mut buf).map_err(|e| Failure::Usage(e.to_string()))?;
            String::from_utf8(buf).expect("csv output is utf-8")
        }
        Format::Json => to_json(
            &points
                .iter()
                .map(|p| {
                    json!({
                        "M": to_exact(&p.memory),
                        "rate": to_exact(&p.rate),
                        "source": p.source.to_string(),
                    })
                })
                .collect::<Vec<_>>(),
        ),
        Format::Text => points
            .iter()
            .map(|p| format!("{:<12}{:<14}{}\n", to_decimal(&p.memory), to_decimal(&p.rate), p.source))
            .collect(),
    };
    match &args.out {
        Some(path) => {
            std::fs::write(path, body)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(body),
    }
}

fn macc_simulate(args: &SimulateArgs) -> Outcome {
    let cfg = args.network.config()?;
    let demands = match &args.demands {
        Some(d) => d.clone(),
        None => (0..cfg.caches).map(|k| k % cfg.files + 1).collect(),
    };
    let report = end_to_end_simulate(cfg, args.w, &demands, args.field, args.seed)?;
    let text = match args.format {
        Format::Json => to_json(&report),
        Format::Text => {
            let mut s = format!(
                "decoded_ok {}\ntotal_rate {} ({})\nrate_new   {}\n",
                report.decoded_ok,
                to_exact(&report.total_rate),
                to_decimal(&report.total_rate),
                to_exact(&report.formula_rate)
            );
            for c in &report.classes {
                let _ = writeln!(
                    s,
                    "class {:?} period {} chi {} local {}",
                    c.representative, c.period, c.chi, c.chi_local
                );
            }
            for f in &report.failures {
                let _ = writeln!(
                    s,
                    "failure user {} file {} set {:?} symbol {}: {}",
                    f.user, f.file, f.set, f.symbol, f.reason
                );
            }
            s
        }
        Format::Csv => return Err(Failure::Usage("macc simulate supports json or text".into())),
    };
    if report.decoded_ok {
        Ok(text)
    } else {
        Err(Failure::Verify(text))
    }
}
