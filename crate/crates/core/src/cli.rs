//! Command-line front end. Every subcommand writes its result to `--out`
//! (or stdout) and a manifest echoing the configuration.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use serde_json::{json, Value};

use crate::census;
use crate::colorsim::{self, Statistic};
use crate::error::{Error, Result};
use crate::extremal;
use crate::graph::{FamilySpec, Graph};
use crate::limits::{self, ColorRegime, LawSource, LimitLaw};
use crate::moments::{self, MomentKind, MomentRequest};
use crate::spectral;
use crate::stats::{self, Pmf};

pub const WORKERS_ENV: &str = "MONOCHROME_WORKERS";

const FAMILY_HELP: &str = "\
Graph sources (--graph) are either an edge-list file or a family spec:
  complete:N            bipartite:A:B          star:N (K_{1,N})
  path:M (M edges)      cycle:G                hypercube:S
  er:N:P:seedS          regular:N:D:seedS      gw:p0,p1,...:HEIGHT:seedS
  gadget:A:B:G          inhomogeneous:GRID.csv:seedS
Edge-list files: first line \"n m\", then one \"u v\" line per edge (0-based);
lines starting with '#' are ignored. Grid CSV files hold an n x n matrix of
edge probabilities, one row per line.

Exit codes: 0 ok, 1 comparison failed its tolerance, 2 usage or input error,
3 size gate exceeded, 4 numerical failure.";

#[derive(Parser, Debug, Serialize)]
#[command(name = "monochrome", version, about = "Monochromatic subgraph counts under uniform random colorings", after_help = FAMILY_HELP)]
pub struct Cli {
    /// Worker threads (results do not depend on it).
    #[arg(long, global = true, env = WORKERS_ENV)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "subcommand", rename_all = "lowercase")]
pub enum Command {
    /// Emit a graph as an edge list.
    Generate(GenerateArgs),
    /// Count ordered edge tuples by the multigraph they span, and cycles.
    Census(CensusArgs),
    /// Fractional stable number and structure of a pattern graph.
    Extremal(ExtremalArgs),
    /// Adjacency eigenvalues and the spectral ratio.
    Spectrum(SpectrumArgs),
    /// Monte Carlo distribution of a monochromatic statistic.
    Simulate(SimulateArgs),
    /// Exact distribution of a monochromatic statistic by enumeration.
    Exact(ExactArgs),
    /// Exact conditional moments.
    Moments(MomentsArgs),
    /// Select the limit law, or sample from it.
    Limit(LimitArgs),
    /// Distance between an empirical distribution and a law.
    Compare(CompareArgs),
    /// Birthday-problem probabilities.
    Birthday(BirthdayArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct Output {
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct GenerateArgs {
    #[arg(long)]
    pub graph: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Serialize)]
pub struct CensusArgs {
    #[arg(long)]
    pub graph: String,
    /// Tuple length.
    #[arg(long, default_value_t = 2)]
    pub tuples: usize,
    /// Also count cycles of every length up to this one.
    #[arg(long)]
    pub cycles: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Serialize)]
pub struct ExtremalArgs {
    #[arg(long)]
    pub graph: String,
    /// Also report the 4-cycle, spectral and cycle ratios.
    #[arg(long)]
    pub conditions: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Serialize)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Serialize)]
pub struct SimulateArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long)]
    pub colors: u32,
    /// edges, stars:R or cycles:G.
    #[arg(long, default_value = "edges")]
    pub stat: String,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Serialize)]
pub struct ExactArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long)]
    pub colors: u32,
    #[arg(long, default_value = "edges")]
    pub stat: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KindArg {
    All,
    RawN,
    RawM,
    CentralZ,
    CentralW,
}

#[derive(Args, Debug, Serialize)]
pub struct MomentsArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long)]
    pub colors: u64,
    /// Highest moment order.
    #[arg(long, default_value_t = 4)]
    pub order: usize,
    #[arg(long, value_enum, default_value = "all")]
    pub kind: KindArg,
    /// Add the split of the fourth central moment.
    #[arg(long)]
    pub fourth: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Serialize)]
pub struct LimitArgs {
    #[arg(long)]
    pub graph: String,
    /// Fixed number of colors.
    #[arg(long, conflicts_with = "growing", required_unless_present = "growing")]
    pub colors: Option<u32>,
    /// Growing colors with m/c tending to this value ("inf" for infinity).
    #[arg(long)]
    pub growing: Option<String>,
    /// Emit this many samples of the law as CSV instead of its description.
    #[arg(long, requires = "seed")]
    pub sample: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Auto,
    Tv,
    Ks,
}

#[derive(Args, Debug, Serialize)]
pub struct CompareArgs {
    /// CSV of `value,count` rows (as written by simulate) or one value per row.
    #[arg(long)]
    pub empirical: PathBuf,
    /// Law as JSON (a file, or inline when it starts with '{'); the output
    /// of `limit` is accepted.
    #[arg(long)]
    pub law: String,
    #[arg(long)]
    pub tol: f64,
    /// Values are replaced by (value - center) / scale before comparing.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub center: f64,
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
    /// TV for discrete laws and KS otherwise, unless forced.
    #[arg(long, value_enum, default_value = "auto")]
    pub metric: Metric,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Serialize)]
pub struct BirthdayArgs {
    #[arg(long, required_unless_present = "lambda_from")]
    pub people: Option<u64>,
    #[arg(long, conflicts_with = "days_power")]
    pub days: Option<u64>,
    /// Derive the rate from an edge count instead: lambda = edges / days.
    #[arg(long, requires = "edges")]
    pub lambda_from: bool,
    #[arg(long)]
    pub edges: Option<f64>,
    /// Number of days as BASE:EXP, i.e. BASE^EXP.
    #[arg(long)]
    pub days_power: Option<String>,
    #[command(flatten)]
    pub output: Output,
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be at least 1");
            return 2;
        }
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w).build_global();
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command, writing outputs and the manifest.
pub fn run(cli: &Cli) -> Result<i32> {
    let start = Instant::now();
    let (text, code) = execute(&cli.command)?;
    let out = match &cli.command {
        Command::Generate(a) => &a.output,
        Command::Census(a) => &a.output,
        Command::Extremal(a) => &a.output,
        Command::Spectrum(a) => &a.output,
        Command::Simulate(a) => &a.output,
        Command::Exact(a) => &a.output,
        Command::Moments(a) => &a.output,
        Command::Limit(a) => &a.output,
        Command::Compare(a) => &a.output,
        Command::Birthday(a) => &a.output,
    };
    let manifest = json!({
        "schema": "monochrome.manifest/1",
        "version": env!("CARGO_PKG_VERSION"),
        "config": cli,
        "wall_time_seconds": start.elapsed().as_secs_f64(),
        "output": out.out,
    });
    match &out.out {
        Some(path) => {
            std::fs::write(path, &text)?;
            std::fs::write(manifest_path(path), serde_json::to_string_pretty(&manifest).unwrap() + "\n")?;
        }
        None => {
            print!("{text}");
            eprintln!("{manifest}");
        }
    }
    Ok(code)
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    out.with_file_name(name)
}

fn execute(cmd: &Command) -> Result<(String, i32)> {
    Ok(match cmd {
        Command::Generate(a) => (load_graph(&a.graph)?.to_edge_list(), 0),
        Command::Census(a) => (census_json(a)?, 0),
        Command::Extremal(a) => (extremal_json(a)?, 0),
        Command::Spectrum(a) => (spectrum_text(a)?, 0),
        Command::Simulate(a) => {
            let g = load_graph(&a.graph)?;
            let run = colorsim::simulate(&g, a.colors, Statistic::from_str(&a.stat)?, a.samples, a.seed)?;
            let mut s = String::from("value,count\n");
            for (v, c) in run.histogram() {
                writeln!(s, "{v},{c}").unwrap();
            }
            (s, 0)
        }
        Command::Exact(a) => {
            let g = load_graph(&a.graph)?;
            let pmf = colorsim::exact_distribution(&g, a.colors, Statistic::from_str(&a.stat)?)?;
            let mut s = String::from("value,probability\n");
            for (v, p) in pmf {
                writeln!(s, "{v},{p}").unwrap();
            }
            (s, 0)
        }
        Command::Moments(a) => (moments_json(a)?, 0),
        Command::Limit(a) => (limit_text(a)?, 0),
        Command::Compare(a) => compare(a)?,
        Command::Birthday(a) => (birthday_json(a)?, 0),
    })
}

fn pretty(v: Value) -> String {
    serde_json::to_string_pretty(&v).unwrap() + "\n"
}

/// An edge-list file if `source` names one, else a family spec.
pub fn load_graph(source: &str) -> Result<Graph> {
    if Path::new(source).is_file() {
        return Graph::parse_edge_list(&std::fs::read_to_string(source)?);
    }
    load_family(source)?.generate()
}

pub fn load_family(source: &str) -> Result<FamilySpec> {
    if let Some(rest) = source.strip_prefix("inhomogeneous:") {
        let (file, seed) = rest
            .rsplit_once(':')
            .ok_or_else(|| Error::Parse(format!("expected inhomogeneous:GRID.csv:seedS, got {source:?}")))?;
        let seed = seed
            .strip_prefix("seed")
            .unwrap_or(seed)
            .parse()
            .map_err(|_| Error::Parse(format!("bad seed in {source:?}")))?;
        let grid = parse_grid(&std::fs::read_to_string(file)?)?;
        let spec = FamilySpec::Inhomogeneous { grid, seed };
        spec.validate()?;
        return Ok(spec);
    }
    let spec = FamilySpec::from_str(source)?;
    if let FamilySpec::GaltonWatson { offspring, .. } = &spec {
        let mean: f64 = offspring.iter().enumerate().map(|(k, p)| k as f64 * p).sum();
        if mean <= 1.0 {
            eprintln!("warning: offspring mean {mean} <= 1, the tree dies out almost surely");
        }
    }
    Ok(spec)
}

fn parse_grid(text: &str) -> Result<Vec<Vec<f64>>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split(',')
                .map(|x| x.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad grid entry {x:?}"))))
                .collect()
        })
        .collect()
}

fn census_json(a: &CensusArgs) -> Result<String> {
    let g = load_graph(&a.graph)?;
    let census = census::count_multigraph_tuples(&g, a.tuples)?;
    let mut counts = serde_json::Map::new();
    let mut descriptions = serde_json::Map::new();
    for (key, class) in &census.classes {
        counts.insert(key.clone(), json!(class.count));
        descriptions.insert(key.clone(), json!(class.pattern.describe()));
    }
    let mut out = json!({
        "schema": "monochrome.census/1",
        "n": g.n(),
        "m": g.m(),
        "tuple_length": a.tuples,
        "total": census.total,
        "counts": counts,
        "descriptions": descriptions,
    });
    if let Some(max) = a.cycles {
        let mut cycles = serde_json::Map::new();
        for len in 3..=max {
            cycles.insert(len.to_string(), json!(census::count_cycles(&g, len)?));
        }
        out["cycles"] = Value::Object(cycles);
    }
    Ok(pretty(out))
}

fn extremal_json(a: &ExtremalArgs) -> Result<String> {
    let h = load_graph(&a.graph)?;
    let sol = extremal::gamma(&h);
    let report = extremal::structural_check(&sol, &h)?;
    let mut out = json!({
        "schema": "monochrome.extremal/1",
        "n": h.n(),
        "m": h.m(),
        "gamma": sol.gamma.to_string(),
        "deficiency": extremal::deficiency(&h),
        "phi": sol.phi_strings(),
        "partition_sizes": {"v0": sol.v0().len(), "v_half": sol.v_half().len(), "v1": sol.v1().len()},
        "structure": report,
    });
    if a.conditions {
        out["conditions"] = serde_json::to_value(extremal::condition_report(&h)?).unwrap();
    }
    Ok(pretty(out))
}

fn spectrum_text(a: &SpectrumArgs) -> Result<String> {
    let g = load_graph(&a.graph)?;
    let s = spectral::eigenvalues(&g)?;
    Ok(match a.format {
        Format::Json => pretty(json!({
            "schema": "monochrome.spectrum/1",
            "eigenvalues": s.eigenvalues,
            "l2_norm": s.l2_norm,
            "usn_ratio": s.usn_ratio(),
        })),
        Format::Csv => {
            let mut out = format!("# usn_ratio={}\neigenvalue\n", s.usn_ratio());
            for v in &s.eigenvalues {
                writeln!(out, "{v}").unwrap();
            }
            out
        }
    })
}

fn moments_json(a: &MomentsArgs) -> Result<String> {
    let g = load_graph(&a.graph)?;
    let kinds: &[MomentKind] = match a.kind {
        KindArg::All => &[MomentKind::RawN, MomentKind::RawM, MomentKind::CentralZ, MomentKind::CentralW],
        KindArg::RawN => &[MomentKind::RawN],
        KindArg::RawM => &[MomentKind::RawM],
        KindArg::CentralZ => &[MomentKind::CentralZ],
        KindArg::CentralW => &[MomentKind::CentralW],
    };
    let mut rows = Vec::new();
    for &kind in kinds {
        for k in 1..=a.order {
            let v = moments::conditional_moment(&g, MomentRequest { kind, k, c: a.colors })?;
            let mut row = json!({
                "kind": kind,
                "k": k,
                "value": v.value.to_string(),
                "scaled": v.scaled,
                "approx": v.to_f64(),
            });
            if !v.scaled {
                row["owed_exponent"] = json!(format!("{}/{}", v.scale_exponent.0, v.scale_exponent.1));
            }
            rows.push(row);
        }
    }
    let mut out = json!({
        "schema": "monochrome.moments/1",
        "m": g.m(),
        "colors": a.colors,
        "moments": rows,
    });
    if a.fourth {
        let r = moments::fourth_moment_report(&g, a.colors)?;
        out["fourth"] = json!({
            "exact": r.exact.to_string(),
            "leading": r.leading.to_string(),
            "c4_term": r.c4_term.to_string(),
            "remainder": r.remainder.to_string(),
        });
    }
    Ok(pretty(out))
}

fn regime(a: &LimitArgs) -> Result<ColorRegime> {
    if let Some(c) = a.colors {
        return Ok(ColorRegime::Fixed(c));
    }
    let raw = a.growing.as_deref().unwrap_or_default();
    if raw.eq_ignore_ascii_case("inf") {
        return Ok(ColorRegime::Growing(None));
    }
    raw.parse::<f64>()
        .map(|l| ColorRegime::Growing(Some(l)))
        .map_err(|_| Error::Parse(format!("--growing expects a number or inf, got {raw:?}")))
}

fn limit_text(a: &LimitArgs) -> Result<String> {
    let regime = regime(a)?;
    let law = if Path::new(&a.graph).is_file() {
        let g = load_graph(&a.graph)?;
        limits::limit_for(LawSource::Graph(&g), regime)
    } else {
        let spec = load_family(&a.graph)?;
        limits::limit_for(LawSource::Family(&spec), regime)
    };
    let law = match law {
        Ok(law) => law,
        Err(Error::AmbiguousRegime(reason)) if a.sample.is_none() => {
            return Ok(pretty(json!({
                "schema": "monochrome.limit/1",
                "regime": regime,
                "limit": null,
                "ambiguous": reason,
            })));
        }
        Err(e) => return Err(e),
    };
    if let Some(count) = a.sample {
        let xs = limits::sample_law(&law, count, a.seed.unwrap())?;
        let mut out = String::from("value\n");
        for x in xs {
            writeln!(out, "{x}").unwrap();
        }
        return Ok(out);
    }
    Ok(pretty(json!({
        "schema": "monochrome.limit/1",
        "regime": regime,
        "limit": law,
    })))
}

/// Reads either `value,count` rows or bare values; a header line is skipped.
pub fn read_empirical(text: &str) -> Result<Vec<(f64, u64)>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().map(str::trim).enumerate() {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split(',').map(str::trim);
        let first = fields.next().unwrap();
        let Ok(value) = first.parse::<f64>() else {
            if rows.is_empty() && i == 0 {
                continue;
            }
            return Err(Error::Parse(format!("line {}: bad value {first:?}", i + 1)));
        };
        let count = match fields.next() {
            Some(c) => c.parse().map_err(|_| Error::Parse(format!("line {}: bad count {c:?}", i + 1)))?,
            None => 1,
        };
        rows.push((value, count));
    }
    if rows.is_empty() {
        return Err(Error::InvalidInput("empirical file has no rows".into()));
    }
    Ok(rows)
}

fn read_law(raw: &str) -> Result<LimitLaw> {
    let text = if raw.trim_start().starts_with('{') { raw.to_string() } else { std::fs::read_to_string(raw)? };
    let mut v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("law JSON: {e}")))?;
    if let Some(inner) = v.get_mut("limit") {
        v = inner.take();
    }
    let law: LimitLaw = serde_json::from_value(v).map_err(|e| Error::Parse(format!("law JSON: {e}")))?;
    law.validate()?;
    Ok(law)
}

fn compare(a: &CompareArgs) -> Result<(String, i32)> {
    if !(a.scale > 0.0) || !(a.tol >= 0.0) {
        return Err(Error::InvalidInput("--scale must be positive and --tol nonnegative".into()));
    }
    let law = read_law(&a.law)?;
    let rows: Vec<(f64, u64)> = read_empirical(&std::fs::read_to_string(&a.empirical)?)?
        .into_iter()
        .map(|(v, c)| ((v - a.center) / a.scale, c))
        .collect();
    let metric = match a.metric {
        Metric::Auto if law.is_discrete() => Metric::Tv,
        Metric::Auto => Metric::Ks,
        m => m,
    };
    let statistic = match metric {
        Metric::Tv => {
            if !law.is_discrete() {
                return Err(Error::WrongLawKind("TV needs a discrete law".into()));
            }
            let mut counts = std::collections::BTreeMap::new();
            for &(v, c) in &rows {
                if v.fract() != 0.0 {
                    return Err(Error::InvalidInput(format!("TV needs integer values, got {v}")));
                }
                *counts.entry(v as i64).or_insert(0u64) += c;
            }
            let emp = Pmf::from_counts(counts);
            let top = emp.iter().map(|(k, _)| k).max().unwrap_or(0).max(0);
            // Extend the law's support past the data until its tail is negligible.
            let mut probs = Vec::new();
            let mut mass = 0.0;
            let mut k = 0i64;
            while k <= top || (mass < 1.0 - 1e-12 && k < top + 100_000) {
                let p = limits::law_pmf(&law, k)?;
                probs.push((k, p));
                mass += p;
                k += 1;
            }
            stats::tv_distance(&emp, &Pmf::from_probs(probs))
        }
        Metric::Ks => {
            let samples: Vec<f64> = rows.iter().flat_map(|&(v, c)| std::iter::repeat_n(v, c as usize)).collect();
            let law = &law;
            let cdf = |x: f64| limits::law_cdf(law, x).unwrap();
            limits::law_cdf(law, 0.0)?;
            stats::ks_statistic(&samples, cdf)?
        }
        Metric::Auto => unreachable!(),
    };
    let pass = statistic < a.tol;
    let out = pretty(json!({
        "schema": "monochrome.compare/1",
        "metric": metric,
        "statistic": statistic,
        "tol": a.tol,
        "pass": pass,
    }));
    Ok((out, if pass { 0 } else { 1 }))
}

fn birthday_json(a: &BirthdayArgs) -> Result<String> {
    let days = match (&a.days_power, a.days) {
        (Some(p), _) => {
            let (base, exp) = p
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("--days-power expects BASE:EXP, got {p:?}")))?;
            let base: f64 = base.parse().map_err(|_| Error::Parse(format!("bad base {base:?}")))?;
            let exp: i32 = exp.parse().map_err(|_| Error::Parse(format!("bad exponent {exp:?}")))?;
            base.powi(exp)
        }
        (None, Some(d)) => d as f64,
        (None, None) => 365.0,
    };
    if !(days >= 1.0) {
        return Err(Error::InvalidInput(format!("days must be at least 1, got {days}")));
    }
    if a.lambda_from {
        let edges = a.edges.unwrap();
        let lambda = edges / days;
        return Ok(pretty(json!({
            "schema": "monochrome.birthday/1",
            "edges": edges,
            "days": days,
            "lambda": lambda,
            "match_prob": -(-lambda).exp_m1(),
        })));
    }
    let people = a.people.unwrap();
    if days.fract() != 0.0 || days > u64::MAX as f64 {
        return Err(Error::InvalidInput("exact mode needs an integer number of days".into()));
    }
    let d = days as u64;
    let exact: BigRational = colorsim::no_match_probability(people, d)?;
    let lambda = (people as f64) * (people as f64 - 1.0) / 2.0 / days;
    // Smallest group size whose no-match probability drops below one half.
    let mut p = 1.0f64;
    let mut threshold = None;
    for n in 1..=d.saturating_add(1) {
        p *= 1.0 - (n - 1) as f64 / days;
        if p < 0.5 {
            threshold = Some(n);
            break;
        }
    }
    let exact_f = if exact.is_negative() { 0.0 } else { exact.to_f64().unwrap_or(0.0) };
    Ok(pretty(json!({
        "schema": "monochrome.birthday/1",
        "people": people,
        "days": d,
        "exact": exact_f,
        "poisson_approx": (-lambda).exp(),
        "lambda": lambda,
        "match_prob": 1.0 - exact_f,
        "threshold_people": threshold,
    })))
}
