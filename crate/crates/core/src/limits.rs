//! Limiting laws of monochromatic counts, and a selector mapping a graph (or
//! family) and a color regime to its limit.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{ChiSquared, Distribution, Normal as NormalDist, Poisson as PoissonDist, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};
use statrs::function::factorial::ln_factorial;

use crate::error::{Error, Result};
use crate::extremal::cycle_count;
use crate::graph::{FamilySpec, Graph};
use crate::rng::{substream, DOMAIN_GENERATOR, DOMAIN_LAW};
use crate::spectral::{self, Spectrum};

pub const ACF4_NORMAL_BELOW: f64 = 1e-2;
pub const ACF4_GRAY_ABOVE: f64 = 1e-1;
/// Edge density `2m/n²` from which a graph is treated as dense.
pub const DENSE_EDGE_DENSITY: f64 = 0.1;
pub const WEIGHT_TAIL_TOL: f64 = 1e-6;
pub const QUANTILE_SAMPLES: usize = 10_000_000;
const QUANTILE_SEED: u64 = 0x5eed_7ab1e;
const MIXTURE_TAIL: f64 = 1e-12;
const EMPIRICAL_MIXING_DRAWS: u64 = 1000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Mixing {
    PointMass { lambda: f64 },
    /// Mixing variable itself `Poisson(λ)`.
    PoissonMixing { lambda: f64 },
    Empirical { samples: Vec<f64> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law")]
pub enum LimitLaw {
    Poisson { lambda: f64 },
    PoissonMixture { mixing: Mixing },
    Normal { mean: f64, var: f64 },
    /// `scale · Σ w_i ξ_i` with `ξ_i ~ χ²_dof − dof` independent.
    WeightedChiSquare { weights: Vec<f64>, dof: u32, scale: f64 },
    /// Point mass at 0 with probability `p0`, otherwise `N(0, var)`.
    AtomPlusNormal { p0: f64, var: f64 },
}

impl LimitLaw {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInput(m));
        match self {
            LimitLaw::Poisson { lambda } if !(*lambda >= 0.0) => bad(format!("Poisson rate {lambda} < 0")),
            LimitLaw::PoissonMixture { mixing } => match mixing {
                Mixing::PointMass { lambda } | Mixing::PoissonMixing { lambda } if !(*lambda >= 0.0) => {
                    bad(format!("mixing rate {lambda} < 0"))
                }
                Mixing::Empirical { samples } if samples.is_empty() || samples.iter().any(|&z| !(z >= 0.0)) => {
                    bad("empirical mixing needs nonnegative samples".into())
                }
                _ => Ok(()),
            },
            LimitLaw::Normal { var, .. } if !(*var > 0.0) => bad(format!("normal variance {var} <= 0")),
            LimitLaw::WeightedChiSquare { weights, dof, scale } => {
                let sq: f64 = weights.iter().map(|w| w * w).sum();
                if (sq - 1.0).abs() > 1e-10 {
                    bad(format!("squared weights sum to {sq}, not 1"))
                } else if *dof == 0 {
                    bad("degrees of freedom must be at least 1".into())
                } else if !(*scale > 0.0) {
                    bad(format!("scale {scale} <= 0"))
                } else {
                    Ok(())
                }
            }
            LimitLaw::AtomPlusNormal { p0, var } if !(0.0..=1.0).contains(p0) || !(*var > 0.0) => {
                bad(format!("atom {p0} or variance {var} out of range"))
            }
            _ => Ok(()),
        }
    }

    pub fn is_discrete(&self) -> bool {
        matches!(self, LimitLaw::Poisson { .. } | LimitLaw::PoissonMixture { .. })
    }
}

fn poisson_pmf(lambda: f64, k: u64) -> f64 {
    if lambda == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    (-lambda + k as f64 * lambda.ln() - ln_factorial(k)).exp()
}

/// `P(W = k)` for a discrete law.
pub fn law_pmf(law: &LimitLaw, k: i64) -> Result<f64> {
    if k < 0 {
        return if law.is_discrete() {
            Ok(0.0)
        } else {
            Err(Error::WrongLawKind("pmf of a continuous law".into()))
        };
    }
    let k = k as u64;
    match law {
        LimitLaw::Poisson { lambda } => Ok(poisson_pmf(*lambda, k)),
        LimitLaw::PoissonMixture { mixing } => Ok(match mixing {
            Mixing::PointMass { lambda } => poisson_pmf(*lambda, k),
            Mixing::PoissonMixing { lambda } => {
                // Σ_j P(Z = j)·P(Poisson(j) = k), stopped once the remaining
                // mass of Z is negligible (each inner factor is at most 1).
                let mut total = 0.0;
                let mut seen = 0.0;
                let mut j = 0u64;
                loop {
                    let pz = poisson_pmf(*lambda, j);
                    total += pz * poisson_pmf(j as f64, k);
                    seen += pz;
                    j += 1;
                    if (j as f64) > *lambda && 1.0 - seen < MIXTURE_TAIL * total.max(f64::MIN_POSITIVE) {
                        break;
                    }
                    if 1.0 - seen <= 0.0 || j > 100_000 {
                        break;
                    }
                }
                total
            }
            Mixing::Empirical { samples } => {
                samples.iter().map(|&z| poisson_pmf(z, k)).sum::<f64>() / samples.len() as f64
            }
        }),
        _ => Err(Error::WrongLawKind("pmf of a continuous law".into())),
    }
}

/// `P(W <= x)`.
pub fn law_cdf(law: &LimitLaw, x: f64) -> Result<f64> {
    match law {
        LimitLaw::Poisson { .. } | LimitLaw::PoissonMixture { .. } => {
            if x < 0.0 {
                return Ok(0.0);
            }
            let top = x.floor() as i64;
            let mut total = 0.0;
            for k in 0..=top {
                total += law_pmf(law, k)?;
                if total >= 1.0 {
                    break;
                }
            }
            Ok(total.min(1.0))
        }
        LimitLaw::Normal { mean, var } => Ok(Normal::new(*mean, var.sqrt()).unwrap().cdf(x)),
        LimitLaw::AtomPlusNormal { p0, var } => {
            let atom = if x >= 0.0 { *p0 } else { 0.0 };
            Ok(atom + (1.0 - p0) * Normal::new(0.0, var.sqrt()).unwrap().cdf(x))
        }
        LimitLaw::WeightedChiSquare { weights, dof, scale } => {
            let table = quantile_table(weights, *dof, *scale);
            Ok(table.partition_point(|&v| v <= x) as f64 / table.len() as f64)
        }
    }
}

/// Distinct weights with multiplicities, after dropping the smallest
/// weights whose squares sum to less than the tail tolerance. Returns the
/// groups and the dropped squared mass.
pub fn weight_groups(weights: &[f64]) -> (Vec<(f64, u32)>, f64) {
    let mut ws: Vec<f64> = weights.iter().copied().filter(|w| *w != 0.0).collect();
    ws.sort_by(|a, b| b.abs().total_cmp(&a.abs()).then(b.total_cmp(a)));
    let mut kept = ws.len();
    let mut dropped = 0.0;
    while kept > 0 && dropped + ws[kept - 1].powi(2) < WEIGHT_TAIL_TOL {
        dropped += ws[kept - 1].powi(2);
        kept -= 1;
    }
    ws.truncate(kept);
    ws.sort_by(|a, b| a.total_cmp(b));
    let mut groups: Vec<(f64, u32)> = Vec::new();
    let mut sum = 0.0;
    for &w in &ws {
        match groups.last_mut() {
            Some((g, count)) if (w - sum / *count as f64).abs() <= 1e-9 * w.abs().max(1e-300) => {
                *count += 1;
                sum += w;
                *g = sum / *count as f64;
            }
            _ => {
                groups.push((w, 1));
                sum = w;
            }
        }
    }
    (groups, dropped)
}

/// One draw of `scale · Σ w_i (χ²_dof − dof)`. Equal weights are merged: a
/// group of `r` copies contributes one `χ²_{r·dof}` draw.
fn sample_weighted<R: Rng>(groups: &[(f64, u32)], dof: u32, scale: f64, rng: &mut R) -> f64 {
    let mut total = 0.0;
    for &(w, r) in groups {
        let k = (r * dof) as f64;
        let x: f64 = if k == 1.0 {
            let z: f64 = rng.sample(StandardNormal);
            z * z
        } else {
            ChiSquared::new(k).unwrap().sample(rng)
        };
        total += w * (x - k);
    }
    scale * total
}

type TableKey = (Vec<u64>, u32, u64);

fn quantile_table(weights: &[f64], dof: u32, scale: f64) -> Arc<Vec<f64>> {
    static CACHE: OnceLock<Mutex<HashMap<TableKey, Arc<Vec<f64>>>>> = OnceLock::new();
    let key = (weights.iter().map(|w| w.to_bits()).collect(), dof, scale.to_bits());
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&key) {
        return t.clone();
    }
    let (groups, _) = weight_groups(weights);
    const CHUNK: usize = 100_000;
    let mut table: Vec<f64> = (0..(QUANTILE_SAMPLES / CHUNK) as u64)
        .into_par_iter()
        .flat_map_iter(|chunk| {
            let mut rng = substream(QUANTILE_SEED, DOMAIN_LAW, chunk);
            let groups = &groups;
            (0..CHUNK).map(move |_| sample_weighted(groups, dof, scale, &mut rng))
        })
        .collect();
    table.par_sort_unstable_by(|a, b| a.total_cmp(b));
    let table = Arc::new(table);
    cache.lock().unwrap().insert(key, table.clone());
    table
}

/// `count` independent draws; draw `i` depends only on `(seed, i)`.
pub fn sample_law(law: &LimitLaw, count: usize, seed: u64) -> Result<Vec<f64>> {
    law.validate()?;
    let groups = match law {
        LimitLaw::WeightedChiSquare { weights, .. } => weight_groups(weights).0,
        _ => Vec::new(),
    };
    Ok((0..count as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(seed, DOMAIN_LAW, i);
            match law {
                LimitLaw::Poisson { lambda } => poisson_draw(*lambda, &mut rng),
                LimitLaw::PoissonMixture { mixing } => {
                    let z = match mixing {
                        Mixing::PointMass { lambda } => *lambda,
                        Mixing::PoissonMixing { lambda } => poisson_draw(*lambda, &mut rng),
                        Mixing::Empirical { samples } => samples[rng.random_range(0..samples.len())],
                    };
                    poisson_draw(z, &mut rng)
                }
                LimitLaw::Normal { mean, var } => NormalDist::new(*mean, var.sqrt()).unwrap().sample(&mut rng),
                LimitLaw::AtomPlusNormal { p0, var } => {
                    if rng.random_bool(*p0) {
                        0.0
                    } else {
                        var.sqrt() * rng.sample::<f64, _>(StandardNormal)
                    }
                }
                LimitLaw::WeightedChiSquare { dof, scale, .. } => sample_weighted(&groups, *dof, *scale, &mut rng),
            }
        })
        .collect())
}

fn poisson_draw<R: Rng>(lambda: f64, rng: &mut R) -> f64 {
    if lambda <= 0.0 {
        0.0
    } else {
        PoissonDist::new(lambda).unwrap().sample(rng)
    }
}

/// `E exp(t Σ w_j ξ_j)` with `ξ_j ~ χ²_dof − dof`:
/// `Π_j (1 − 2t w_j)^{−dof/2} e^{−dof·t·w_j}`, finite for `|t| < 1/(2 max|w|)`.
pub fn weighted_chisq_mgf(weights: &[f64], dof: u32, t: f64) -> Result<f64> {
    let max = weights.iter().fold(0.0f64, |a, w| a.max(w.abs()));
    if max > 0.0 {
        let bound = 1.0 / (2.0 * max);
        if t.abs() >= bound {
            return Err(Error::DomainExceeded { t, bound });
        }
    }
    let d = dof as f64;
    let log: f64 = weights
        .iter()
        .map(|&w| -0.5 * d * (1.0 - 2.0 * t * w).ln() - d * t * w)
        .sum();
    Ok(log.exp())
}

/// `E(e^{tΔ} | G) = Π_j (1 − λ̃_j t/c)^{(1−c)/2}` over the normalized
/// spectrum, for `|t| < c/(2 max|λ̃_j|)`.
pub fn delta_conditional_mgf(g: &Graph, c: u32, t: f64) -> Result<f64> {
    let spectrum = spectral::eigenvalues(g)?;
    delta_mgf_from_spectrum(&spectrum, c, t)
}

pub fn delta_mgf_from_spectrum(spectrum: &Spectrum, c: u32, t: f64) -> Result<f64> {
    if c < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 colors, got {c}")));
    }
    let lt = spectrum.normalized();
    let max = lt.iter().fold(0.0f64, |a, w| a.max(w.abs()));
    let cf = c as f64;
    if max > 0.0 {
        let bound = cf / (2.0 * max);
        if t.abs() >= bound {
            return Err(Error::DomainExceeded { t, bound });
        }
    }
    let log: f64 = lt.iter().map(|&l| 0.5 * (1.0 - cf) * (1.0 - l * t / cf).ln()).sum();
    Ok(log.exp())
}

/// Characteristic function of the number of monochromatic `g`-cycles in the
/// path-cycle gadget: `E (1 − c^{2−g} + e^{it} c^{2−g})^{b·N_a}` with
/// `N_a ~ Binomial(a, 1/c)` the monochromatic path edges.
pub fn gadget_char_function(a: u64, b: u64, c: u64, g: u32, t: f64) -> Result<Complex64> {
    if g < 3 || c < 2 {
        return Err(Error::InvalidInput(format!("gadget needs g >= 3 and c >= 2 (got g={g}, c={c})")));
    }
    let q = (c as f64).powi(2 - g as i32);
    let base = Complex64::new(1.0 - q, 0.0) + Complex64::from_polar(q, t);
    let p = 1.0 / c as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for k in 0..=a {
        let ln_w = ln_factorial(a) - ln_factorial(k) - ln_factorial(a - k)
            + k as f64 * p.ln()
            + (a - k) as f64 * (1.0 - p).ln();
        total += base.powf((b * k) as f64) * ln_w.exp();
    }
    Ok(total)
}

/// Characteristic function `E e^{itW}` of a discrete law, by summing its pmf
/// until the remaining mass is below `1e-13`.
pub fn discrete_char_function(law: &LimitLaw, t: f64) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    let mut mass = 0.0;
    let mut k = 0i64;
    while mass < 1.0 - 1e-13 && k < 1_000_000 {
        let p = law_pmf(law, k)?;
        total += Complex64::from_polar(p, t * k as f64);
        mass += p;
        k += 1;
    }
    Ok(total)
}

/// How the number of colors behaves along the sequence.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum ColorRegime {
    Fixed(u32),
    /// `m/c → λ`; `None` for `λ = ∞`.
    Growing(Option<f64>),
}

pub enum LawSource<'a> {
    Graph(&'a Graph),
    Family(&'a FamilySpec),
}

/// Selects the limit law of the standardized count. With `Growing`, the
/// count itself is Poisson (finite λ) or `(N − m/c)/√(m/c)` is standard
/// normal. With `Fixed(c)`: `(N − m/c)/√(m/c)` is `Normal(0, 1 − 1/c)` for
/// 4-cycle-sparse graphs, dense graphs give a weighted chi-square for
/// `(N − m/c)/√(2m)`, and in between the regime is reported as ambiguous.
pub fn limit_for(source: LawSource<'_>, regime: ColorRegime) -> Result<LimitLaw> {
    match regime {
        ColorRegime::Growing(Some(lambda)) => {
            if !(lambda >= 0.0) {
                return Err(Error::InvalidInput(format!("rate {lambda} < 0")));
            }
            if let LawSource::Family(spec @ FamilySpec::GaltonWatson { .. }) = source {
                return Ok(LimitLaw::PoissonMixture { mixing: Mixing::Empirical { samples: tree_mixing(spec, lambda)? } });
            }
            Ok(LimitLaw::Poisson { lambda })
        }
        ColorRegime::Growing(None) => Ok(LimitLaw::Normal { mean: 0.0, var: 1.0 }),
        ColorRegime::Fixed(c) => {
            if c < 2 {
                return Err(Error::InvalidInput(format!("need at least 2 colors, got {c}")));
            }
            match source {
                LawSource::Graph(g) => fixed_for_graph(g, c),
                LawSource::Family(spec) => fixed_for_family(spec, c),
            }
        }
    }
}

fn chi_square(weights: Vec<f64>, c: u32) -> LimitLaw {
    LimitLaw::WeightedChiSquare { weights, dof: c - 1, scale: 1.0 / (2.0 * c as f64) }
}

fn fixed_for_family(spec: &FamilySpec, c: u32) -> Result<LimitLaw> {
    spec.validate()?;
    match *spec {
        FamilySpec::Complete(_) => Ok(chi_square(vec![1.0], c)),
        FamilySpec::ErdosRenyi { p, .. } if p >= DENSE_EDGE_DENSITY => Ok(chi_square(vec![1.0], c)),
        FamilySpec::CompleteBipartite(a, b) => {
            let (small, large) = (a.min(b), a.max(b));
            if small as f64 >= DENSE_EDGE_DENSITY * (a + b) as f64 {
                let w = 0.5f64.sqrt();
                Ok(chi_square(vec![w, -w], c))
            } else if small == 2 && c == 2 && large > 2 {
                Ok(LimitLaw::AtomPlusNormal { p0: 0.5, var: 1.0 })
            } else {
                fixed_for_graph(&spec.generate()?, c)
            }
        }
        _ => fixed_for_graph(&spec.generate()?, c),
    }
}

fn fixed_for_graph(g: &Graph, c: u32) -> Result<LimitLaw> {
    let m = g.m();
    if m == 0 {
        return Err(Error::PreconditionViolated("graph has no edges".into()));
    }
    let acf4 = cycle_count(g, 4)? as f64 / (m as f64 * m as f64);
    if acf4 < ACF4_NORMAL_BELOW {
        return Ok(LimitLaw::Normal { mean: 0.0, var: 1.0 - 1.0 / c as f64 });
    }
    if acf4 <= ACF4_GRAY_ABOVE {
        return Err(Error::AmbiguousRegime(format!(
            "4-cycle ratio {acf4:.4} lies in [{ACF4_NORMAL_BELOW}, {ACF4_GRAY_ABOVE}]"
        )));
    }
    let n = g.n() as f64;
    if 2.0 * m as f64 / (n * n) >= DENSE_EDGE_DENSITY {
        let weights: Vec<f64> = spectral::eigenvalues(g)?
            .normalized()
            .into_iter()
            .filter(|w| w.abs() > 1e-12)
            .collect();
        let norm = weights.iter().map(|w| w * w).sum::<f64>().sqrt();
        return Ok(chi_square(weights.into_iter().map(|w| w / norm).collect(), c));
    }
    if c == 2 && is_two_hub_bipartite(g) {
        return Ok(LimitLaw::AtomPlusNormal { p0: 0.5, var: 1.0 });
    }
    Err(Error::AmbiguousRegime(format!(
        "4-cycle ratio {acf4:.4} is large but the graph is not dense (edge density {:.4})",
        2.0 * m as f64 / (n * n)
    )))
}

/// `K_{2,b}` with `b > 2`, isolated vertices ignored.
fn is_two_hub_bipartite(g: &Graph) -> bool {
    let h = g.without_isolated();
    let hubs: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) == h.n() - 2).collect();
    let b = h.n().saturating_sub(2);
    b > 2 && hubs.len() == 2 && !h.has_edge(hubs[0], hubs[1]) && h.m() == 2 * b
}

/// Mixing samples `λ·m_i / mean(m)` over independently grown trees.
fn tree_mixing(spec: &FamilySpec, lambda: f64) -> Result<Vec<f64>> {
    let FamilySpec::GaltonWatson { offspring, height, seed } = spec else {
        unreachable!()
    };
    let sizes: Vec<f64> = (0..EMPIRICAL_MIXING_DRAWS)
        .map(|i| {
            let s = substream(*seed, DOMAIN_GENERATOR, i).random::<u64>();
            FamilySpec::GaltonWatson { offspring: offspring.clone(), height: *height, seed: s }
                .generate()
                .map(|t| t.m() as f64)
        })
        .collect::<Result<_>>()?;
    let mean = sizes.iter().sum::<f64>() / sizes.len() as f64;
    if mean == 0.0 {
        return Ok(vec![0.0; sizes.len()]);
    }
    Ok(sizes.into_iter().map(|m| lambda * m / mean).collect())
}
