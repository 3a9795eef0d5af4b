//! Command-line front end.
//!
//! Subcommands: `region`, `sumcap`, `simulate`, `gap`, `sweep`.
//! Exit codes: 0 success, 1 certification failure, 2 usage or domain error.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::det_model::{det_outer_polytope, det_sum_capacity, DetParams, FeedbackState};
use crate::det_sim::{simulate, trace, SchemeId};
use crate::gauss_ach::gap_budget;
use crate::gauss_outer::{
    cross_only_sum_bound, gauss_outer_polytope, sum_rate_bound, GaussParams,
};
use crate::rate_region::RatePolytope;
use crate::svg::render_regions;
use crate::sweep::{bounds_csv, feasibility_violations, gap_csv, gap_sweep, Grid};

#[derive(Parser)]
#[command(
    name = "ifcap",
    version,
    about = "Interference-channel feedback capacity toolkit: exact deterministic regions, \
             Gaussian outer bounds, relay-layer simulators, and constant-gap certification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Det,
    Gauss,
}

#[derive(Args)]
struct DetOpts {
    /// Direct-link bit levels n (deterministic model)
    #[arg(long)]
    n: Option<u32>,
    /// Cross-link bit levels m (deterministic model)
    #[arg(long)]
    m: Option<u32>,
}

#[derive(Args)]
struct GaussOpts {
    /// Signal-to-noise ratio (linear unless --db)
    #[arg(long)]
    snr: Option<f64>,
    /// Interference-to-noise ratio (linear unless --db)
    #[arg(long)]
    inr: Option<f64>,
    /// Interpret --snr/--inr as dB
    #[arg(long)]
    db: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a capacity/outer region and write it as JSON (and optionally SVG)
    Region {
        #[arg(value_enum)]
        model: Model,
        /// Feedback state as a 4-bit string, e.g. 1000
        state: String,
        #[command(flatten)]
        det: DetOpts,
        #[command(flatten)]
        gauss: GaussOpts,
        /// Output JSON path
        #[arg(long, default_value = "region.json")]
        out: PathBuf,
        /// SVG plot path (defaults to the JSON path with .svg extension)
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Additional states to overlay in the SVG (at most two)
        #[arg(long, num_args = 0.., value_name = "STATE")]
        overlay: Vec<String>,
    },
    /// Print the (approximate) sum capacity of a feedback state
    Sumcap {
        #[arg(value_enum)]
        model: Model,
        state: String,
        #[command(flatten)]
        det: DetOpts,
        #[command(flatten)]
        gauss: GaussOpts,
    },
    /// Run a deterministic relay-layer scheme and report achieved rates
    Simulate {
        /// One of: weak-r2sum, weak-sum2r, strong-relay-only, strong-r1sum
        scheme: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        /// Number of transmission blocks
        #[arg(long, default_value_t = 100)]
        blocks: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the per-block transcript as JSON lines
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Print the transcript as an aligned bit-level table
        #[arg(long)]
        table: bool,
    },
    /// Certify the constant-gap claims for a state over an (SNR, alpha) grid
    Gap {
        state: String,
        /// SNR range in decades, e.g. 1e1..1e6, or a single value
        #[arg(long, default_value = "1e1..1e6")]
        snr: String,
        /// alpha range, e.g. 0.1..3.0, or a single value ("any" = 1.0)
        #[arg(long, default_value = "0.1..3.0")]
        alpha: String,
        #[arg(long, default_value_t = 0.1)]
        alpha_step: f64,
        /// Write the per-corner sweep CSV here
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Override the certified gap budget in bits (exploration)
        #[arg(long)]
        budget: Option<f64>,
        /// Feasibility slack in bits for the decoding constraints
        #[arg(long, default_value_t = 1e-9)]
        slack: f64,
    },
    /// Emit sweep CSVs over an (SNR, alpha) grid
    Sweep {
        /// What to sweep: per-corner gaps or the outer bounds
        #[arg(long, value_enum, default_value_t = SweepKind::Gap)]
        kind: SweepKind,
        state: String,
        #[arg(long, default_value = "1e1..1e6")]
        snr: String,
        #[arg(long, default_value = "0.1..3.0")]
        alpha: String,
        #[arg(long, default_value_t = 0.1)]
        alpha_step: f64,
        /// Output CSV path (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepKind {
    Gap,
    Bounds,
}

/// Parse and dispatch; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn parse_state(s: &str) -> Result<FeedbackState, String> {
    s.parse::<FeedbackState>().map_err(|e| e.to_string())
}

fn det_params(d: &DetOpts) -> Result<DetParams, String> {
    match (d.n, d.m) {
        (Some(n), Some(m)) => Ok(DetParams::new(n, m)),
        _ => Err("deterministic model needs --n and --m".into()),
    }
}

fn gauss_params(g: &GaussOpts) -> Result<GaussParams, String> {
    match (g.snr, g.inr) {
        (Some(s), Some(i)) => {
            let p = if g.db {
                GaussParams::from_db(s, i)
            } else {
                GaussParams::new(s, i)
            };
            p.map_err(|e| e.to_string())
        }
        _ => Err("gaussian model needs --snr and --inr".into()),
    }
}

fn parse_range(s: &str, what: &str) -> Result<(f64, f64), String> {
    if s == "any" {
        return Ok((1.0, 1.0));
    }
    let parse1 = |t: &str| {
        t.parse::<f64>()
            .map_err(|_| format!("bad {what} value {t:?}"))
    };
    match s.split_once("..") {
        Some((lo, hi)) => Ok((parse1(lo)?, parse1(hi)?)),
        None => {
            let v = parse1(s)?;
            Ok((v, v))
        }
    }
}

fn build_region(
    model: Model,
    state: FeedbackState,
    det: &DetOpts,
    gauss: &GaussOpts,
) -> Result<RatePolytope, String> {
    match model {
        Model::Det => det_outer_polytope(state, det_params(det)?).map_err(|e| e.to_string()),
        Model::Gauss => gauss_outer_polytope(state, gauss_params(gauss)?).map_err(|e| e.to_string()),
    }
}

fn dispatch(cmd: Command) -> Result<i32, String> {
    match cmd {
        Command::Region { model, state, det, gauss, out, svg, overlay } => {
            let f = parse_state(&state)?;
            let region = build_region(model, f, &det, &gauss)?;
            fs::write(&out, serde_json::to_string_pretty(&region).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            println!("region {state}: {} planes, {} vertices -> {}", region.planes.len(), region.vertices.len(), out.display());
            for v in &region.vertices {
                println!("  ({:.6}, {:.6})", v.0, v.1);
            }
            let svg_path = svg.unwrap_or_else(|| out.with_extension("svg"));
            if overlay.len() > 2 {
                return Err("at most two overlay states".into());
            }
            let mut named: Vec<(String, RatePolytope)> = vec![(state.clone(), region)];
            for os in &overlay {
                let of = parse_state(os)?;
                named.push((os.clone(), build_region(model, of, &det, &gauss)?));
            }
            let refs: Vec<(String, &RatePolytope)> =
                named.iter().map(|(l, p)| (l.clone(), p)).collect();
            fs::write(&svg_path, render_regions(&refs)).map_err(|e| e.to_string())?;
            println!("svg -> {}", svg_path.display());
            Ok(0)
        }
        Command::Sumcap { model, state, det, gauss } => {
            let f = parse_state(&state)?;
            match model {
                Model::Det => {
                    let v = det_sum_capacity(f, det_params(&det)?);
                    println!("{v}");
                }
                Model::Gauss => {
                    let g = gauss_params(&gauss)?;
                    let srb = sum_rate_bound(g);
                    let v = if f.has_direct() {
                        srb.value
                    } else if f.is_cross_only() {
                        srb.value.min(cross_only_sum_bound(g))
                    } else {
                        return Err(format!("uncharacterized feedback state {f}"));
                    };
                    println!("{v}");
                    println!("rho_star={}", srb.rho_star);
                }
            }
            Ok(0)
        }
        Command::Simulate { scheme, n, m, blocks, seed, trace: trace_path, table } => {
            let id = SchemeId::from_name(&scheme)
                .ok_or_else(|| format!("unknown scheme {scheme:?}"))?;
            let p = DetParams::new(n, m);
            let res = simulate(id, p, blocks, seed).map_err(|e| e.to_string())?;
            if trace_path.is_some() || table {
                let records = trace(id, p, blocks, seed).map_err(|e| e.to_string())?;
                if let Some(path) = trace_path {
                    let mut text = String::new();
                    for r in &records {
                        text.push_str(&serde_json::to_string(r).map_err(|e| e.to_string())?);
                        text.push('\n');
                    }
                    fs::write(&path, text).map_err(|e| e.to_string())?;
                    println!("trace -> {}", path.display());
                }
                if table {
                    print_table(&records);
                }
            }
            println!(
                "decode_ok={} achieved=({}, {}) target=({}, {})",
                res.decode_ok, res.achieved.0, res.achieved.1, res.target.0, res.target.1
            );
            Ok(0)
        }
        Command::Gap { state, snr, alpha, alpha_step, csv, budget, slack } => {
            let f = parse_state(&state)?;
            let default_budget =
                gap_budget(f).ok_or_else(|| format!("uncharacterized feedback state {f}"))?;
            let budget = budget.unwrap_or(default_budget);
            let (s_lo, s_hi) = parse_range(&snr, "snr")?;
            let (a_lo, a_hi) = parse_range(&alpha, "alpha")?;
            let grid = Grid::new(s_lo, s_hi, a_lo, a_hi, alpha_step);
            let infeasible = feasibility_violations(&grid, slack);
            let sweep = gap_sweep(f, &grid, budget).map_err(|e| e.to_string())?;
            if let Some(path) = csv {
                fs::write(&path, gap_csv(&sweep)).map_err(|e| e.to_string())?;
            }
            if let Some((snr, alpha, corner, v)) = infeasible.first() {
                println!(
                    "FAIL state {state}: {corner} allocation infeasible at snr={snr}, alpha={alpha}: {} > {} + {slack}",
                    v.lhs, v.rhs
                );
                return Ok(1);
            }
            let sum_part = match sweep.worst_sum_gap {
                Some(v) => format!(
                    ", worst sum gap {v:.4} (budget {:.2} weak / 3.00 strong)",
                    4.17
                ),
                None => String::new(),
            };
            if sweep.pass {
                println!(
                    "PASS state {state}: worst corner gap {:.4} <= {budget} bits at snr={}, alpha={}{sum_part}",
                    sweep.worst_gap, sweep.worst_point.0, sweep.worst_point.1
                );
                Ok(0)
            } else {
                println!(
                    "FAIL state {state}: worst corner gap {:.4} bits (budget {budget}) at snr={}, alpha={}{sum_part}",
                    sweep.worst_gap, sweep.worst_point.0, sweep.worst_point.1
                );
                Ok(1)
            }
        }
        Command::Sweep { kind, state, snr, alpha, alpha_step, out } => {
            let f = parse_state(&state)?;
            let (s_lo, s_hi) = parse_range(&snr, "snr")?;
            let (a_lo, a_hi) = parse_range(&alpha, "alpha")?;
            let grid = Grid::new(s_lo, s_hi, a_lo, a_hi, alpha_step);
            let csv = match kind {
                SweepKind::Bounds => bounds_csv(f, &grid),
                SweepKind::Gap => {
                    let budget = gap_budget(f)
                        .ok_or_else(|| format!("uncharacterized feedback state {f}"))?;
                    gap_csv(&gap_sweep(f, &grid, budget).map_err(|e| e.to_string())?)
                }
            };
            match out {
                Some(path) => {
                    fs::write(&path, csv).map_err(|e| e.to_string())?;
                    println!("csv -> {}", path.display());
                }
                None => print!("{csv}"),
            }
            Ok(0)
        }
    }
}

/// Aligned bit-level table in the style of the block diagrams: one row per
/// block, one column per signal, decode events on the right.
fn print_table(records: &[crate::det_sim::BlockRecord]) {
    let w = records.iter().map(|r| r.x1.len()).max().unwrap_or(1).max(2);
    println!(
        "{:>5}  {:<w$}  {:<w$}  {:<w$}  {:<w$}  decoded (d1 | d2)",
        "block", "x1", "x2", "y1", "y2",
    );
    for r in records {
        println!(
            "{:>5}  {:<w$}  {:<w$}  {:<w$}  {:<w$}  {} | {}",
            r.index,
            r.x1,
            r.x2,
            r.y1,
            r.y2,
            r.d1_decodes.join(","),
            r.d2_decodes.join(","),
        );
    }
}
