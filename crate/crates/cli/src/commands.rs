use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Args;
use serde::Serialize;
use serieseig::algebra::rational::{format_rational, parse_rational, to_f64, to_fixed};
use serieseig::hankel::hankel_roots;
use serieseig::hill::hill_roots;
use serieseig::numerov::{numerov_with_estimate, Parity, ShootingConfig};
use serieseig::potential::PotentialConfig;
use serieseig::reproduce::{parse_interval, reproduce, ReproOptions, Reproduction, Target};
use serieseig::sequence::{convergence_report, scan_width_parameter, table_for, track_hankel, track_hill};
use serieseig::{
    ConvergenceReport, HankelOptions, HankelResult, HankelSpec, HillResult, PotentialSpec, Precision, Rational,
    RootSequence, TrackOptions, WidthMethod,
};

use crate::config::{BackendName, Method, RunConfig};
use crate::output::{strings, write_csv, write_json};
use crate::Failure;

const DIGITS: usize = 25;

#[derive(Clone, Debug, Args)]
pub struct PotentialArgs {
    /// quartic, harmonic, rational or poly
    #[arg(long, default_value = "quartic")]
    pub potential: String,
    /// Coupling g of x² + λx²/(1+gx²).
    #[arg(long)]
    pub g: Option<String>,
    #[arg(long, default_value = "1")]
    pub lambda: String,
    /// Comma-separated v_1, v_2, … of Σ v_k x^{2k} for `--potential poly`.
    #[arg(long)]
    pub coeffs: Option<String>,
}

impl PotentialArgs {
    pub fn config(&self) -> Result<PotentialConfig, Failure> {
        let cfg = match self.potential.as_str() {
            "quartic" => PotentialConfig::Polynomial { v: vec!["0".into(), "1".into()] },
            "harmonic" => PotentialConfig::Polynomial { v: vec!["1".into()] },
            "rational" => {
                let g = self.g.clone().ok_or_else(|| Failure::config("--potential rational needs --g"))?;
                PotentialConfig::Rational { lambda: self.lambda.clone(), g }
            }
            "poly" => {
                let c = self.coeffs.as_deref().ok_or_else(|| Failure::config("--potential poly needs --coeffs"))?;
                PotentialConfig::Polynomial { v: c.split(',').map(|s| s.trim().to_string()).collect() }
            }
            other => return Err(Failure::config(format!("unknown potential {other:?}"))),
        };
        cfg.to_spec(1)?;
        Ok(cfg)
    }

    pub fn spec(&self, order: usize) -> Result<PotentialSpec, Failure> {
        Ok(self.config()?.to_spec(order)?)
    }
}

fn sci(w: &Rational) -> String {
    format!("{:.3e}", to_f64(w))
}

fn num(text: &str) -> Result<Rational, Failure> {
    Ok(parse_rational(text)?)
}

fn interval(text: &str) -> Result<(Rational, Rational), Failure> {
    Ok(parse_interval(text)?)
}

fn precision(digits: u32) -> Result<Precision, Failure> {
    if digits < Precision::MIN_DIGITS {
        return Err(Failure::config(format!("precision must be at least {} digits", Precision::MIN_DIGITS)));
    }
    Ok(Precision::digits(digits))
}

// ---- series ----

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub pot: PotentialArgs,
    #[arg(long, default_value = "1")]
    pub a: String,
    #[arg(long, default_value_t = 0)]
    pub s: u8,
    #[arg(long = "j-max", default_value_t = 6)]
    pub j_max: usize,
    /// Write JSON here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn series(args: &SeriesArgs) -> Result<(), Failure> {
    let table = table_for(&args.pot.spec(args.j_max)?, &num(&args.a)?, args.s, args.j_max)?;
    let json = table.to_json();
    match &args.output {
        Some(p) => write_json(p, &json)?,
        None => println!("{}", serde_json::to_string_pretty(&json).map_err(anyhow::Error::from)?),
    }
    Ok(())
}

// ---- hill ----

#[derive(Debug, Args)]
pub struct HillArgs {
    #[command(flatten)]
    pub pot: PotentialArgs,
    #[arg(long, default_value = "1")]
    pub a: String,
    #[arg(long, default_value_t = 0)]
    pub s: u8,
    #[arg(long = "m-min", default_value_t = 2)]
    pub m_min: usize,
    #[arg(long = "m-max", default_value_t = 10)]
    pub m_max: usize,
    /// Search window "lo,hi".
    #[arg(long, default_value = "0,4")]
    pub interval: String,
    #[arg(long, default_value = "1e-25")]
    pub tol: String,
    /// CSV destination (stdout when absent).
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

fn hill_rows(results: &[HillResult]) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for r in results {
        let lo = to_fixed(&r.interval.0, 10);
        let hi = to_fixed(&r.interval.1, 10);
        if r.roots.is_empty() {
            rows.push(vec![r.m.to_string(), String::new(), String::new(), lo.clone(), hi.clone()]);
        }
        for root in &r.roots {
            rows.push(vec![
                r.m.to_string(),
                to_fixed(&root.value, DIGITS),
                sci(&root.bracket.width()),
                lo.clone(),
                hi.clone(),
            ]);
        }
    }
    rows
}

const HILL_HEADER: &[&str] = &["M", "root", "bracket_width", "interval_lo", "interval_hi"];
const HANKEL_HEADER: &[&str] = &["D", "d", "root", "bracket_width", "backend", "exact_confirmed"];

pub fn hill(args: &HillArgs) -> Result<(), Failure> {
    check_range(args.m_min, args.m_max)?;
    let (lo, hi) = interval(&args.interval)?;
    let tol = num(&args.tol)?;
    let table = table_for(&args.pot.spec(args.m_max)?, &num(&args.a)?, args.s, args.m_max)?;
    let results = (args.m_min..=args.m_max)
        .map(|m| hill_roots(&table, m, &lo, &hi, &tol))
        .collect::<serieseig::Result<Vec<_>>>()?;
    write_csv(args.output.as_deref(), &strings(HILL_HEADER), &hill_rows(&results))?;
    if let Some(p) = &args.json {
        write_json(p, &results)?;
    }
    Ok(())
}

fn check_range(min: usize, max: usize) -> Result<(), Failure> {
    if min == 0 || min > max {
        return Err(Failure::config(format!("empty order range {min}..{max}")));
    }
    Ok(())
}

// ---- hankel ----

#[derive(Debug, Args)]
pub struct HankelArgs {
    #[command(flatten)]
    pub pot: PotentialArgs,
    #[arg(long, default_value = "1")]
    pub a: String,
    #[arg(long, default_value_t = 0)]
    pub s: u8,
    #[arg(long = "d-min", default_value_t = 2)]
    pub d_min: usize,
    #[arg(long = "d-max", default_value_t = 8)]
    pub d_max: usize,
    /// Hankel offset d.
    #[arg(long, default_value_t = 0)]
    pub offset: usize,
    #[arg(long, default_value = "0,4")]
    pub interval: String,
    #[arg(long, default_value = "1e-25")]
    pub tol: String,
    #[arg(long, value_enum, default_value = "float")]
    pub backend: BackendName,
    /// Decimal digits of the float backend.
    #[arg(long, default_value_t = Precision::DEFAULT_DIGITS)]
    pub precision: u32,
    #[arg(long, default_value_t = 200)]
    pub grid: usize,
    /// Follow one root through D instead of listing every root.
    #[arg(long)]
    pub track: bool,
    /// Starting point for --track (default: interval midpoint).
    #[arg(long)]
    pub seed: Option<String>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

fn hankel_rows(results: &[HankelResult]) -> Vec<Vec<String>> {
    results
        .iter()
        .flat_map(|r| {
            r.roots.iter().map(move |root| {
                vec![
                    r.spec.dim.to_string(),
                    r.spec.offset.to_string(),
                    to_fixed(&root.value, DIGITS),
                    sci(&root.bracket_width()),
                    root.backend.to_string(),
                    root.exact_confirmed.to_string(),
                ]
            })
        })
        .collect()
}

fn hankel_options(tol: &str, backend: BackendName, digits: u32, grid: usize) -> Result<HankelOptions, Failure> {
    if grid < 2 {
        return Err(Failure::config("grid needs at least 2 points"));
    }
    Ok(HankelOptions {
        tol: num(tol)?,
        precision: precision(digits)?,
        grid_n: grid,
        exact_only: backend == BackendName::Exact,
        ..HankelOptions::default()
    })
}

#[derive(Serialize)]
struct Tracked<'a> {
    results: &'a [HankelResult],
    sequence: Vec<String>,
    indices: &'a [usize],
    report: Option<ConvergenceReport>,
}

fn sequence_strings(seq: &RootSequence) -> Vec<String> {
    seq.values.iter().map(|v| to_fixed(v, DIGITS)).collect()
}

pub fn hankel(args: &HankelArgs) -> Result<(), Failure> {
    check_range(args.d_min, args.d_max)?;
    let (lo, hi) = interval(&args.interval)?;
    let opts = hankel_options(&args.tol, args.backend, args.precision, args.grid)?;
    let j = HankelSpec::new(args.d_max, args.offset)?.required_j();
    let table = table_for(&args.pot.spec(j)?, &num(&args.a)?, args.s, j)?;
    if args.track {
        let seed = args.seed.as_deref().map(num).transpose()?;
        let topts = TrackOptions { seed, hankel: opts, ..TrackOptions::default() };
        let t = track_hankel(&table, args.offset, args.d_min..=args.d_max, &lo, &hi, &topts)?;
        let rows: Vec<Vec<String>> = t
            .sequence
            .indices
            .iter()
            .zip(&t.sequence.values)
            .map(|(d, v)| {
                let root = t.results.iter().flat_map(|r| &r.roots).find(|r| &r.value == v).expect("pick comes from a scan");
                vec![
                    d.to_string(),
                    args.offset.to_string(),
                    to_fixed(v, DIGITS),
                    sci(&root.bracket_width()),
                    root.backend.to_string(),
                    root.exact_confirmed.to_string(),
                ]
            })
            .collect();
        write_csv(args.output.as_deref(), &strings(HANKEL_HEADER), &rows)?;
        if let Some(p) = &args.json {
            let report = convergence_report(&t.sequence, None).ok();
            let doc = Tracked { results: &t.results, sequence: sequence_strings(&t.sequence), indices: &t.sequence.indices, report };
            write_json(p, &doc)?;
        }
        return Ok(());
    }
    let results = (args.d_min..=args.d_max)
        .map(|dim| hankel_roots(&table, HankelSpec::new(dim, args.offset)?, &lo, &hi, &opts))
        .collect::<serieseig::Result<Vec<_>>>()?;
    write_csv(args.output.as_deref(), &strings(HANKEL_HEADER), &hankel_rows(&results))?;
    if let Some(p) = &args.json {
        write_json(p, &results)?;
    }
    Ok(())
}

// ---- scan-a ----

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub pot: PotentialArgs,
    #[arg(long, value_enum, default_value = "hankel")]
    pub method: ScanMethod,
    /// Hill order M, or 2D − 1 for Hankel (must be odd).
    #[arg(long)]
    pub m: usize,
    /// "start:step:stop" or a comma-separated list.
    #[arg(long = "a-grid", default_value = "0.5:0.5:4")]
    pub a_grid: String,
    #[arg(long)]
    pub reference: String,
    #[arg(long, default_value = "0,4")]
    pub interval: String,
    #[arg(long, default_value_t = Precision::DEFAULT_DIGITS)]
    pub precision: u32,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ScanMethod {
    Hill,
    Hankel,
}

pub fn parse_grid(text: &str) -> Result<Vec<Rational>, Failure> {
    let parts: Vec<&str> = text.split(':').collect();
    let grid = match parts.as_slice() {
        [start, step, stop] => {
            let (start, step, stop) = (num(start)?, num(step)?, num(stop)?);
            if step <= Rational::from_integer(0.into()) || start > stop {
                return Err(Failure::config(format!("bad grid {text:?}")));
            }
            let mut out = Vec::new();
            let mut x = start;
            while x <= stop {
                out.push(x.clone());
                x += &step;
            }
            out
        }
        [list] => list.split(',').map(|s| num(s.trim())).collect::<Result<_, _>>()?,
        _ => return Err(Failure::config(format!("bad grid {text:?}"))),
    };
    if grid.is_empty() {
        return Err(Failure::config("empty a grid"));
    }
    Ok(grid)
}

pub fn scan_a(args: &ScanArgs) -> Result<(), Failure> {
    let (lo, hi) = interval(&args.interval)?;
    let grid = parse_grid(&args.a_grid)?;
    let method = match args.method {
        ScanMethod::Hill => WidthMethod::Hill,
        ScanMethod::Hankel => WidthMethod::Hankel,
    };
    let opts = HankelOptions { precision: precision(args.precision)?, ..HankelOptions::default() };
    let scan = scan_width_parameter(method, &args.pot.spec(args.m)?, args.m, &grid, &num(&args.reference)?, &lo, &hi, &opts)?;
    let rows: Vec<Vec<String>> = scan
        .a_grid
        .iter()
        .zip(&scan.errors)
        .map(|(a, e)| {
            let err = match e {
                None => "no-root".to_string(),
                Some(x) if x.is_infinite() => "-inf".to_string(),
                Some(x) => format!("{x:.6}"),
            };
            vec![format_rational(a), scan.m.to_string(), err]
        })
        .collect();
    write_csv(args.output.as_deref(), &strings(&["a", "M", "log_error"]), &rows)?;
    if let Some(p) = &args.json {
        write_json(p, &scan)?;
    }
    Ok(())
}

// ---- oracle ----

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub pot: PotentialArgs,
    #[arg(long, value_enum, default_value = "even")]
    pub parity: ParityArg,
    #[arg(long = "x-max", default_value = "12")]
    pub x_max: String,
    #[arg(long, default_value = "1/200")]
    pub h: String,
    /// Energy bracket "lo,hi" holding exactly one level of this parity.
    #[arg(long)]
    pub bracket: String,
    #[arg(long, default_value_t = Precision::MIN_DIGITS)]
    pub precision: u32,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
}

pub fn oracle(args: &OracleArgs) -> Result<(), Failure> {
    let parity = match args.parity {
        ParityArg::Even => Parity::Even,
        ParityArg::Odd => Parity::Odd,
    };
    let cfg = ShootingConfig::new(num(&args.x_max)?, num(&args.h)?, parity, precision(args.precision)?)?;
    let (lo, hi) = interval(&args.bracket)?;
    let pot = args.pot.spec(1)?;
    let r = numerov_with_estimate(|x| pot.value_at(x), &cfg, &lo, &hi)?;
    println!("E = {}", r.energy.to_decimal(30));
    println!("h = {}", format_rational(&r.h));
    println!("x_max = {}", format_rational(&r.x_max));
    match &r.error_estimate {
        Some(e) => println!("error estimate = {}", e.to_scientific(3)),
        None => println!("error estimate = n/a"),
    }
    if let Some(p) = &args.json {
        write_json(p, &r)?;
    }
    Ok(())
}

// ---- solve ----

#[derive(Serialize)]
struct SolveOutput {
    hill: Option<Vec<HillResult>>,
    hankel: Option<Vec<HankelResult>>,
    hill_sequence: Option<Vec<String>>,
    hankel_sequence: Option<Vec<String>>,
    hill_report: Option<ConvergenceReport>,
    hankel_report: Option<ConvergenceReport>,
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

pub fn solve(path: &Path) -> Result<(), Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(Failure::Config)?;
    let cfg = RunConfig::from_json(&text).map_err(Failure::Config)?;
    let v = cfg.validate().map_err(Failure::Config)?;
    let (min, max) = (cfg.orders.min, cfg.orders.max);
    let hill_orders = match cfg.method {
        Method::Hill => Some(min..=max),
        Method::Hankel => None,
        Method::Both => Some(2 * min - 1..=2 * max - 1),
    };
    let hankel_dims = (cfg.method != Method::Hill).then_some(min..=max);
    let j = hill_orders.as_ref().map_or(0, |r| *r.end()).max(match &hankel_dims {
        Some(r) => HankelSpec::new(*r.end(), cfg.d)?.required_j(),
        None => 0,
    });
    let table = table_for(&cfg.potential.to_spec(j)?, &v.a, cfg.s, j)?;
    let mut out = SolveOutput { hill: None, hankel: None, hill_sequence: None, hankel_sequence: None, hill_report: None, hankel_report: None };

    if let Some(orders) = hill_orders {
        let t = track_hill(&table, orders, &v.lo, &v.hi, &v.tol, None)?;
        let suffix = if cfg.method == Method::Both { ".hill.csv" } else { ".csv" };
        write_csv(Some(&with_suffix(&cfg.output, suffix)), &strings(HILL_HEADER), &hill_rows(&t.results))?;
        out.hill_sequence = Some(sequence_strings(&t.sequence));
        out.hill_report = convergence_report(&t.sequence, None).ok();
        out.hill = Some(t.results);
    }
    if let Some(dims) = hankel_dims {
        let opts = HankelOptions {
            tol: v.tol.clone(),
            precision: Precision::digits(cfg.precision),
            exact_only: cfg.backend == BackendName::Exact,
            ..HankelOptions::default()
        };
        let t = track_hankel(&table, cfg.d, dims, &v.lo, &v.hi, &TrackOptions { hankel: opts, ..TrackOptions::default() })?;
        let suffix = if cfg.method == Method::Both { ".hankel.csv" } else { ".csv" };
        write_csv(Some(&with_suffix(&cfg.output, suffix)), &strings(HANKEL_HEADER), &hankel_rows(&t.results))?;
        out.hankel_sequence = Some(sequence_strings(&t.sequence));
        out.hankel_report = convergence_report(&t.sequence, None).ok();
        out.hankel = Some(t.results);
    }
    write_json(&with_suffix(&cfg.output, ".json"), &out)?;
    for (name, seq) in [("hill", &out.hill_sequence), ("hankel", &out.hankel_sequence)] {
        if let Some(last) = seq.as_ref().and_then(|s| s.last()) {
            println!("{name}: {last}");
        }
    }
    Ok(())
}

// ---- reproduce ----

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// table1, table2, fig1, fig2, fig3 or all
    pub target: String,
    #[arg(long = "out-dir", default_value = "repro")]
    pub out_dir: PathBuf,
    /// Hill window for table2 as "lo,hi".
    #[arg(long)]
    pub interval: Option<String>,
    #[arg(long, default_value_t = Precision::DEFAULT_DIGITS)]
    pub precision: u32,
}

pub fn run_reproduce(args: &ReproduceArgs) -> Result<(), Failure> {
    let targets: Vec<Target> = if args.target == "all" {
        Target::ALL.to_vec()
    } else {
        vec![args.target.parse::<Target>()?]
    };
    let mut opts = ReproOptions { precision: precision(args.precision)?, ..ReproOptions::default() };
    if let Some(iv) = &args.interval {
        opts.table2_interval = interval(iv)?;
    }
    let mut mismatches = 0;
    for t in targets {
        let rep = reproduce(t, &opts)?;
        write_reproduction(&args.out_dir, &rep)?;
        let failed = rep.failures().count();
        println!("{t}: {} comparisons, {failed} mismatched", rep.comparisons.len());
        for f in rep.failures() {
            println!(
                "  {} {}: printed {} computed {} ({})",
                f.column,
                f.index,
                f.printed.as_deref().unwrap_or("-"),
                f.computed.as_deref().unwrap_or("-"),
                f.note
            );
        }
        mismatches += failed;
    }
    if mismatches > 0 {
        return Err(Failure::Mismatch(mismatches));
    }
    Ok(())
}

fn write_reproduction(dir: &Path, rep: &Reproduction) -> Result<()> {
    for f in &rep.csv {
        write_csv(Some(&dir.join(format!("{}.csv", f.name))), &f.header, &f.rows)?;
    }
    let rows: Vec<Vec<String>> = rep
        .comparisons
        .iter()
        .map(|c| {
            vec![
                c.column.clone(),
                c.index.to_string(),
                c.printed.clone().unwrap_or_default(),
                c.computed.clone().unwrap_or_default(),
                if c.pass { "PASS" } else { "FAIL" }.to_string(),
                c.note.clone(),
            ]
        })
        .collect();
    let header = strings(&["column", "index", "printed", "computed", "status", "note"]);
    write_csv(Some(&dir.join(format!("{}_comparison.csv", rep.target))), &header, &rows)?;
    write_json(&dir.join(format!("{}.json", rep.target)), rep)
}
