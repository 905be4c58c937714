//! Uniform random colorings and the monochromatic statistics they induce.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use statrs::function::factorial::ln_factorial;

use crate::census::{self, MAX_CYCLE_LENGTH};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{substream, DOMAIN_COLORING};
use crate::stats::Pmf;

pub const EXACT_GATE: f64 = 1e7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Statistic {
    MonoEdges,
    MonoStars(usize),
    MonoCycles(usize),
}

impl Statistic {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Statistic::MonoStars(0) => Err(Error::InvalidInput("star size r must be at least 1".into())),
            Statistic::MonoCycles(g) if !(3..=MAX_CYCLE_LENGTH).contains(&g) => Err(Error::UnsupportedLength(g)),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistic::MonoEdges => write!(f, "edges"),
            Statistic::MonoStars(r) => write!(f, "stars:{r}"),
            Statistic::MonoCycles(g) => write!(f, "cycles:{g}"),
        }
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("statistic `{s}`: expected edges, stars:r or cycles:g"));
        let stat = match s.split_once(':') {
            None if s == "edges" => Statistic::MonoEdges,
            Some(("stars", r)) => Statistic::MonoStars(r.parse().map_err(|_| bad())?),
            Some(("cycles", g)) => Statistic::MonoCycles(g.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        stat.validate()?;
        Ok(stat)
    }
}

/// Evaluates one statistic on many colorings of a fixed graph. Cycle lists
/// are enumerated once at construction.
pub struct Counter<'a> {
    g: &'a Graph,
    stat: Statistic,
    cycles: Vec<Vec<usize>>,
}

impl<'a> Counter<'a> {
    pub fn new(g: &'a Graph, stat: Statistic) -> Result<Self> {
        stat.validate()?;
        let cycles = match stat {
            Statistic::MonoCycles(len) => census::list_cycles(g, len)?,
            _ => Vec::new(),
        };
        Ok(Counter { g, stat, cycles })
    }

    pub fn count(&self, colors: &[u32]) -> u64 {
        match self.stat {
            Statistic::MonoEdges => self
                .g
                .edges()
                .iter()
                .filter(|&&(u, v)| colors[u] == colors[v])
                .count() as u64,
            Statistic::MonoStars(r) => (0..self.g.n())
                .map(|v| {
                    let same = self.g.neighbors(v).iter().filter(|&&w| colors[w] == colors[v]).count();
                    binomial_u64(same as u64, r as u64)
                })
                .sum(),
            Statistic::MonoCycles(_) => self
                .cycles
                .iter()
                .filter(|c| c.iter().all(|&v| colors[v] == colors[c[0]]))
                .count() as u64,
        }
    }
}

pub fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Value of `stat` under one coloring.
pub fn mono_count(g: &Graph, colors: &[u32], stat: Statistic) -> Result<u64> {
    if colors.len() != g.n() {
        return Err(Error::BadColorVector(format!(
            "{} colors for {} vertices",
            colors.len(),
            g.n()
        )));
    }
    Ok(Counter::new(g, stat)?.count(colors))
}

/// The coloring used by sample `index` of a run seeded with `seed`.
pub fn sample_coloring(n: usize, c: u32, seed: u64, index: u64, out: &mut Vec<u32>) {
    let mut rng = substream(seed, DOMAIN_COLORING, index);
    out.clear();
    out.extend((0..n).map(|_| rng.random_range(0..c)));
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulationRun {
    pub seed: u64,
    pub c: u32,
    pub stat: Statistic,
    pub sample_count: usize,
    /// Statistic value per sample, in sample-index order.
    pub raw: Vec<u64>,
}

impl SimulationRun {
    /// `value -> count`.
    pub fn histogram(&self) -> BTreeMap<u64, u64> {
        let mut h = BTreeMap::new();
        for &x in &self.raw {
            *h.entry(x).or_default() += 1;
        }
        h
    }

    pub fn pmf(&self) -> Pmf {
        Pmf::from_counts(self.histogram().into_iter().map(|(k, v)| (k as i64, v)))
    }

    /// `(x − center) / scale` for every sample.
    pub fn standardized(&self, center: f64, scale: f64) -> Vec<f64> {
        self.raw.iter().map(|&x| (x as f64 - center) / scale).collect()
    }

    pub fn mean(&self) -> f64 {
        self.raw.iter().map(|&x| x as f64).sum::<f64>() / self.raw.len() as f64
    }
}

/// Draws `samples` uniform `c`-colorings and records `stat` for each. Sample
/// `i` depends only on `(seed, i)`, so the result does not depend on the
/// number of worker threads.
pub fn simulate(g: &Graph, c: u32, stat: Statistic, samples: usize, seed: u64) -> Result<SimulationRun> {
    if c < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 colors, got {c}")));
    }
    if samples == 0 {
        return Err(Error::InvalidInput("need at least one sample".into()));
    }
    let counter = Counter::new(g, stat)?;
    let n = g.n();
    let raw: Vec<u64> = (0..samples as u64)
        .into_par_iter()
        .map_init(
            || Vec::with_capacity(n),
            |colors, i| {
                sample_coloring(n, c, seed, i, colors);
                counter.count(colors)
            },
        )
        .collect();
    Ok(SimulationRun { seed, c, stat, sample_count: samples, raw })
}

/// Exact law as `value -> probability`.
pub type ExactPmf = BTreeMap<u64, BigRational>;

pub fn exact_to_pmf(p: &ExactPmf) -> Pmf {
    Pmf::from_probs(p.iter().map(|(&k, v)| (k as i64, v.to_f64().unwrap())))
}

/// Distribution of `stat` over all `c^n` colorings, as exact rationals.
pub fn exact_distribution(g: &Graph, c: u32, stat: Statistic) -> Result<ExactPmf> {
    if c < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 colors, got {c}")));
    }
    let n = g.n();
    let size = (c as f64).powi(n as i32);
    if size > EXACT_GATE {
        return Err(Error::EnumerationGateExceeded {
            what: format!("c^n = {c}^{n}"),
            size,
            limit: EXACT_GATE,
        });
    }
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    let mut colors = vec![0u32; n];
    match stat {
        Statistic::MonoEdges => {
            // Ripple-carry over colorings, updating the count per changed digit.
            let mut hist = vec![0u64; g.m() + 1];
            let mut value = g.m();
            loop {
                hist[value] += 1;
                let mut v = 0;
                loop {
                    if v == n {
                        break;
                    }
                    let old = colors[v];
                    let new = if old + 1 == c { 0 } else { old + 1 };
                    for &w in g.neighbors(v) {
                        if colors[w] == old {
                            value -= 1;
                        }
                        if colors[w] == new {
                            value += 1;
                        }
                    }
                    colors[v] = new;
                    if new != 0 {
                        break;
                    }
                    v += 1;
                }
                if v == n {
                    break;
                }
            }
            for (k, &h) in hist.iter().enumerate() {
                if h > 0 {
                    counts.insert(k as u64, h);
                }
            }
        }
        _ => {
            let counter = Counter::new(g, stat)?;
            loop {
                *counts.entry(counter.count(&colors)).or_default() += 1;
                let mut v = 0;
                while v < n {
                    colors[v] += 1;
                    if colors[v] < c {
                        break;
                    }
                    colors[v] = 0;
                    v += 1;
                }
                if v == n {
                    break;
                }
            }
        }
    }
    let total = BigInt::from(c).pow(n as u32);
    Ok(counts
        .into_iter()
        .map(|(k, h)| (k, BigRational::new(BigInt::from(h), total.clone())))
        .collect())
}

/// Law of the number of monochromatic edges of `K_n` under `c` colors,
/// on `0..=max_value`, with the leftover tail mass. Only the multiset of
/// color-class sizes matters, so the sum runs over integer partitions of
/// `n` whose classes contribute at most `max_value` monochromatic pairs.
pub fn complete_graph_distribution(n: usize, c: u64, max_value: u64) -> Result<(Pmf, f64)> {
    if c < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 colors, got {c}")));
    }
    let mut probs = vec![0.0f64; max_value as usize + 1];
    let ln_base = ln_factorial(n as u64) + ln_factorial(c) - n as f64 * (c as f64).ln();
    // Non-singleton class sizes, non-increasing.
    let mut parts: Vec<usize> = Vec::new();
    partitions(n, max_value, n, 0, 0, &mut parts, &mut |parts, used, value| {
        let singles = n - used;
        let classes = parts.len() + singles;
        if classes as u64 > c {
            return;
        }
        let mut ln_p = ln_base - ln_factorial(singles as u64) - ln_factorial(c - classes as u64);
        let mut i = 0;
        while i < parts.len() {
            let mut j = i;
            while j < parts.len() && parts[j] == parts[i] {
                ln_p -= ln_factorial(parts[j] as u64);
                j += 1;
            }
            ln_p -= ln_factorial((j - i) as u64);
            i = j;
        }
        probs[value as usize] += ln_p.exp();
    });
    let total: f64 = probs.iter().sum();
    let pmf = Pmf::from_probs(probs.into_iter().enumerate().map(|(k, p)| (k as i64, p)));
    Ok((pmf, (1.0 - total).max(0.0)))
}

/// `P(N(K_n) = 0)` under `c` colors: the falling-factorial product
/// `Π_{i<n} (1 − i/c)`, exactly.
pub fn no_match_probability(n: u64, c: u64) -> Result<BigRational> {
    if c == 0 {
        return Err(Error::InvalidInput("need at least 1 color".into()));
    }
    let mut p = BigRational::from_integer(BigInt::from(1));
    for i in 0..n.min(c + 1) {
        p *= BigRational::new(BigInt::from(c - i), BigInt::from(c));
    }
    Ok(p)
}

fn partitions<F: FnMut(&[usize], usize, u64)>(
    n: usize,
    max_value: u64,
    largest: usize,
    used: usize,
    value: u64,
    parts: &mut Vec<usize>,
    visit: &mut F,
) {
    visit(parts, used, value);
    for s in (2..=largest.min(n - used)).rev() {
        let add = (s * (s - 1) / 2) as u64;
        if value + add > max_value {
            continue;
        }
        parts.push(s);
        partitions(n, max_value, s, used + s, value + add, parts, visit);
        parts.pop();
    }
}
