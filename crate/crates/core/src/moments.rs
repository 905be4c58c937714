//! Exact conditional moments of monochromatic edge counts.
//!
//! Moments of order `k` expand over ordered `k`-tuples of edges; each tuple
//! forms a small multigraph, and the contribution of a tuple depends only on
//! its isomorphism class. All arithmetic is in exact rationals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::census::{self, MultiGraphPattern};
use crate::error::{Error, Result};
use crate::extremal::cycle_count;
use crate::graph::Graph;
use crate::rng::{substream, DOMAIN_SURROGATE};
use crate::stats::Estimate;

pub const MAX_PRODUCT_EDGES: usize = 6;

fn int(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

fn ratio(p: impl Into<BigInt>, q: impl Into<BigInt>) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn pow(x: &BigRational, k: usize) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, _| acc * x)
}

/// Stirling numbers of the second kind `S(k, j)` for `0 <= j <= k`.
pub fn stirling2(k: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for n in 1..=k {
        let mut next = vec![BigInt::zero(); n + 1];
        for j in 1..=n {
            let keep = if j < n { &row[j] * BigInt::from(j) } else { BigInt::zero() };
            next[j] = keep + &row[j - 1];
        }
        row = next;
    }
    row
}

/// `E(M^k) = Σ_j S(k, j) (m)_j c^{−j}`, the `k`-th raw moment of `Binomial(m, 1/c)`.
pub fn stirling_moment(m: u64, c: u64, k: usize) -> BigRational {
    let s = stirling2(k);
    let mut total = BigRational::zero();
    let mut falling = BigInt::one();
    for (j, sj) in s.iter().enumerate() {
        if j > 0 {
            if (j as u64) > m {
                break;
            }
            falling *= BigInt::from(m - (j as u64 - 1));
        }
        total += BigRational::new(sj * &falling, BigInt::from(c).pow(j as u32));
    }
    total
}

/// Number of connected components and covered vertices of an edge list.
fn span(edges: &[(usize, usize)]) -> (usize, usize) {
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    verts.sort_unstable();
    verts.dedup();
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut comps = verts.len();
    for &(u, v) in edges {
        let a = find(&mut parent, verts.binary_search(&u).unwrap());
        let b = find(&mut parent, verts.binary_search(&v).unwrap());
        if a != b {
            parent[a] = b;
            comps -= 1;
        }
    }
    (verts.len(), comps)
}

/// `E(B − p)^j` for `B ~ Bernoulli(p)`.
fn bernoulli_central(p: &BigRational, j: usize) -> BigRational {
    let q = BigRational::one() - p;
    p * pow(&q, j) + &q * pow(&(-p.clone()), j)
}

/// `(E Z(H), E W(H))` for a multigraph `H`: `Z` multiplies centered
/// same-color indicators over the edges of `H`, `W` multiplies independent
/// centered `Bernoulli(1/c)` variables, one per distinct edge.
pub fn expected_central_products(h: &MultiGraphPattern, c: u64) -> Result<(BigRational, BigRational)> {
    let slots = h.expanded_edges();
    let k = slots.len();
    if k > MAX_PRODUCT_EDGES {
        return Err(Error::PatternTooLarge(format!("{k} edges with multiplicity (max {MAX_PRODUCT_EDGES})")));
    }
    let inv_c = ratio(1, c);
    let neg = -inv_c.clone();
    // Expand each factor as (indicator − 1/c) and take expectations: the
    // product of indicators over a sub-multiset F is 1 when its vertices are
    // monochromatic per component, probability c^{−(|V(F)| − ν(F))}.
    let mut ez = BigRational::zero();
    let mut chosen = Vec::with_capacity(k);
    for mask in 0u32..(1 << k) {
        chosen.clear();
        chosen.extend((0..k).filter(|&i| mask >> i & 1 == 1).map(|i| slots[i]));
        let (verts, comps) = span(&chosen);
        let rank = (verts - comps) as u32;
        ez += pow(&neg, k - chosen.len()) * ratio(1, BigInt::from(c).pow(rank));
    }
    let ew = h
        .multiedges()
        .iter()
        .fold(BigRational::one(), |acc, &(_, _, m)| acc * bernoulli_central(&inv_c, m as usize));
    Ok((ez, ew))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MomentKind {
    RawN,
    RawM,
    CentralZ,
    CentralW,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MomentRequest {
    pub kind: MomentKind,
    pub k: usize,
    pub c: u64,
}

/// A moment as an exact rational. For the central kinds the `(m/c)^{−k/2}`
/// standardization is applied when it is rational; otherwise `value` holds the
/// unscaled sum and `scaled` is false, so the true moment is
/// `value · (m/c)^{scale_exponent}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentValue {
    pub value: BigRational,
    pub unscaled: BigRational,
    pub scaled: bool,
    /// Exponent of `m/c` still owed when `scaled` is false: `−k/2`.
    pub scale_exponent: (i64, i64),
    /// `m/c` as a float, for evaluating the owed factor.
    pub mean_ratio: f64,
}

impl MomentValue {
    /// The standardized moment as a float.
    pub fn to_f64(&self) -> f64 {
        let v = self.unscaled.to_f64().unwrap();
        if self.scaled {
            self.value.to_f64().unwrap()
        } else {
            let (p, q) = self.scale_exponent;
            v * self.mean_ratio.powf(p as f64 / q as f64)
        }
    }
}

/// Exact `E(·^k | G)` by classification of ordered edge `k`-tuples.
pub fn conditional_moment(g: &Graph, req: MomentRequest) -> Result<MomentValue> {
    if req.c < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 colors, got {}", req.c)));
    }
    let mean_ratio = g.m() as f64 / req.c as f64;
    if req.k == 0 {
        let one = BigRational::one();
        return Ok(MomentValue { value: one.clone(), unscaled: one, scaled: true, scale_exponent: (0, 1), mean_ratio });
    }
    if req.kind == MomentKind::RawM {
        let value = stirling_moment(g.m() as u64, req.c, req.k);
        return Ok(MomentValue { value: value.clone(), unscaled: value, scaled: true, scale_exponent: (0, 1), mean_ratio });
    }
    let census = census::count_multigraph_tuples(g, req.k)?;
    let c = BigInt::from(req.c);
    let mut total = BigRational::zero();
    for class in census.classes.values() {
        let h = &class.pattern;
        let weight = match req.kind {
            MomentKind::RawN => {
                let rank = (h.vertex_count() - h.component_count()) as u32;
                BigRational::new(BigInt::one(), c.pow(rank))
            }
            MomentKind::CentralZ => expected_central_products(h, req.c)?.0,
            MomentKind::CentralW => expected_central_products(h, req.c)?.1,
            MomentKind::RawM => unreachable!(),
        };
        total += weight * int(class.count);
    }
    if matches!(req.kind, MomentKind::RawN) {
        return Ok(MomentValue { value: total.clone(), unscaled: total, scaled: true, scale_exponent: (0, 1), mean_ratio });
    }
    let mean = ratio(g.m() as u64, req.c);
    let k = req.k;
    let root = if k % 2 == 0 { Some(pow(&mean, k / 2)) } else { rational_sqrt(&mean).map(|r| pow(&r, k)) };
    Ok(match root {
        Some(scale) if !scale.is_zero() => MomentValue {
            value: &total / scale,
            unscaled: total,
            scaled: true,
            scale_exponent: (-(k as i64), 2),
            mean_ratio,
        },
        _ => MomentValue { value: total.clone(), unscaled: total, scaled: false, scale_exponent: (-(k as i64), 2), mean_ratio },
    })
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let (p, q) = (x.numer(), x.denom());
    let (rp, rq) = (p.sqrt(), q.sqrt());
    (&rp * &rp == *p && &rq * &rq == *q).then(|| BigRational::new(rp, rq))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourthMomentReport {
    pub exact: BigRational,
    pub leading: BigRational,
    pub c4_term: BigRational,
    pub remainder: BigRational,
}

/// Splits `E(Z⁴ | G)` into the Gaussian term `3(1−1/c)²`, the 4-cycle term
/// `24·(1/c)(1−1/c)·N(C4)/m²` and what is left (quadruple edges, triangles
/// with a doubled edge, and the `−3(1−1/c)²/m` correction from pairs of
/// doubled edges).
pub fn fourth_moment_report(g: &Graph, c: u64) -> Result<FourthMomentReport> {
    let exact = conditional_moment(g, MomentRequest { kind: MomentKind::CentralZ, k: 4, c })?.value;
    let q = BigRational::one() - ratio(1, c);
    let leading = int(3) * &q * &q;
    let m = int(g.m() as u64);
    let c4 = int(cycle_count(g, 4)?);
    let c4_term = int(24) * ratio(1, c) * &q * c4 / (&m * &m);
    let remainder = &exact - &leading - &c4_term;
    Ok(FourthMomentReport { exact, leading, c4_term, remainder })
}

/// One draw of the Gaussian surrogate: per vertex, `c` independent
/// `N(0, 1/c)` variables centered at their own mean.
fn surrogate_vectors<R: Rng>(n: usize, c: usize, rng: &mut R, out: &mut Vec<f64>) {
    let sd = (1.0 / c as f64).sqrt();
    out.clear();
    for _ in 0..n {
        let start = out.len();
        out.extend((0..c).map(|_| sd * rng.sample::<f64, _>(StandardNormal)));
        let mean = out[start..].iter().sum::<f64>() / c as f64;
        for x in &mut out[start..] {
            *x -= mean;
        }
    }
}

/// Draws of `Δ = Q(G)/√(2m)` with `Q(G) = Σ_{edges ij} Σ_a S_ia S_ja`.
pub fn sample_surrogate_delta(g: &Graph, c: usize, count: usize, seed: u64) -> Result<Vec<f64>> {
    if c < 2 || g.m() == 0 {
        return Err(Error::InvalidInput("surrogate needs c >= 2 and at least one edge".into()));
    }
    let norm = (2.0 * g.m() as f64).sqrt();
    let n = g.n();
    Ok((0..count as u64)
        .into_par_iter()
        .map_init(Vec::new, |s, i| {
            let mut rng = substream(seed, DOMAIN_SURROGATE, i);
            surrogate_vectors(n, c, &mut rng, s);
            let q: f64 = g
                .edges()
                .iter()
                .map(|&(u, v)| (0..c).map(|a| s[u * c + a] * s[v * c + a]).sum::<f64>())
                .sum();
            q / norm
        })
        .collect())
}

/// Monte Carlo mean of `T(H) = Π_{edges ij of H} Σ_a S_ia S_ja` with its
/// standard error.
pub fn surrogate_product(h: &MultiGraphPattern, c: usize, draws: usize, seed: u64) -> Result<Estimate> {
    if c < 2 || draws < 2 {
        return Err(Error::InvalidInput("surrogate needs c >= 2 and at least 2 draws".into()));
    }
    let edges = h.expanded_edges();
    let n = h.vertex_count();
    let values: Vec<f64> = (0..draws as u64)
        .into_par_iter()
        .map_init(Vec::new, |s, i| {
            let mut rng = substream(seed, DOMAIN_SURROGATE, i);
            surrogate_vectors(n, c, &mut rng, s);
            edges
                .iter()
                .map(|&(u, v)| (0..c).map(|a| s[u * c + a] * s[v * c + a]).sum::<f64>())
                .product()
        })
        .collect();
    let mean = values.iter().sum::<f64>() / draws as f64;
    let var = values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (draws - 1) as f64;
    Ok(Estimate { value: mean, se: (var / draws as f64).sqrt() })
}

/// Every multigraph class reachable from ordered tuples of at most `k_max`
/// edges, keyed by canonical key. `K_{2k}` contains every simple graph with
/// `k` edges, so its tuple census realizes every class.
pub fn tuple_patterns(k_max: usize) -> Result<BTreeMap<String, MultiGraphPattern>> {
    let mut out = BTreeMap::new();
    let host = crate::graph::complete(2 * k_max.max(1));
    for k in 1..=k_max {
        for (key, class) in census::count_multigraph_tuples(&host, k)?.classes {
            out.insert(key, class.pattern);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorsim::{exact_distribution, Statistic};
    use crate::graph::{complete, cycle, path};

    fn pat(n: usize, e: &[(usize, usize)]) -> MultiGraphPattern {
        MultiGraphPattern::from_multiedges(n, e).unwrap()
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling_moment(3, 2, 1), ratio(3, 2));
        assert_eq!(stirling_moment(3, 2, 2), int(3));
        assert_eq!(stirling_moment(3, 2, 3), ratio(27, 4));
        assert_eq!(stirling_moment(3, 2, 0), int(1));
    }

    #[test]
    fn central_product_examples() {
        let doubled = pat(2, &[(0, 1), (0, 1)]);
        assert_eq!(expected_central_products(&doubled, 2).unwrap(), (ratio(1, 4), ratio(1, 4)));
        let c4 = pat(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(expected_central_products(&c4, 2).unwrap(), (ratio(1, 16), int(0)));
        let shared = pat(3, &[(0, 1), (0, 1), (1, 2), (1, 2)]);
        assert_eq!(expected_central_products(&shared, 2).unwrap(), (ratio(1, 16), ratio(1, 16)));
        let seven = pat(2, &[(0, 1); 7]);
        assert!(matches!(expected_central_products(&seven, 2), Err(Error::PatternTooLarge(_))));
    }

    #[test]
    fn conditional_moment_examples() {
        let k3 = complete(3);
        let raw2 = conditional_moment(&k3, MomentRequest { kind: MomentKind::RawN, k: 2, c: 2 }).unwrap();
        assert_eq!(raw2.value, int(3));
        let raw3 = conditional_moment(&k3, MomentRequest { kind: MomentKind::RawN, k: 3, c: 2 }).unwrap();
        let m3 = conditional_moment(&k3, MomentRequest { kind: MomentKind::RawM, k: 3, c: 2 }).unwrap();
        assert_eq!(raw3.value - m3.value, ratio(3, 4));
        let z4 = conditional_moment(&cycle(4), MomentRequest { kind: MomentKind::CentralZ, k: 4, c: 2 }).unwrap();
        assert!(z4.scaled);
        assert_eq!(z4.value, int(1));
    }

    #[test]
    fn odd_order_scaling() {
        // m/c = 3/2 is not a rational square, so k = 3 stays unscaled.
        let z3 = conditional_moment(&complete(3), MomentRequest { kind: MomentKind::CentralZ, k: 3, c: 2 }).unwrap();
        assert!(!z3.scaled);
        assert_eq!(z3.scale_exponent, (-3, 2));
        // m/c = 4/1 for C8 with c = 2.
        let z3 = conditional_moment(&cycle(8), MomentRequest { kind: MomentKind::CentralZ, k: 3, c: 2 }).unwrap();
        assert!(z3.scaled);
        assert_eq!(&z3.value * int(8), z3.unscaled);
    }

    #[test]
    fn raw_moments_match_enumeration() {
        for g in [complete(4), path(3), cycle(5)] {
            for c in [2u64, 3] {
                let law = exact_distribution(&g, c as u32, Statistic::MonoEdges).unwrap();
                for k in 1..=4 {
                    let direct: BigRational = law.iter().map(|(&v, p)| pow(&int(v), k) * p).sum();
                    let engine = conditional_moment(&g, MomentRequest { kind: MomentKind::RawN, k, c }).unwrap();
                    assert_eq!(engine.value, direct);
                }
            }
        }
    }

    #[test]
    fn fourth_moment_examples() {
        let r = fourth_moment_report(&cycle(4), 2).unwrap();
        assert_eq!(r.exact, int(1));
        assert_eq!(r.leading, ratio(3, 4));
        assert_eq!(r.c4_term, ratio(3, 8));
        assert_eq!(r.remainder, ratio(-1, 8));
        let r = fourth_moment_report(&path(1), 2).unwrap();
        assert_eq!(r.exact, ratio(1, 4));
        assert_eq!(r.c4_term, int(0));
        assert_eq!(&r.leading + &r.remainder, r.exact);
    }

    #[test]
    fn tree_equality_and_annihilation() {
        let patterns = tuple_patterns(4).unwrap();
        assert!(patterns.len() > 20);
        for h in patterns.values() {
            for c in [2u64, 3, 5] {
                let (ez, ew) = expected_central_products(h, c).unwrap();
                if h.simple_is_tree() {
                    assert_eq!(ez, ew, "{}", h.describe());
                }
                if h.degrees().contains(&1) {
                    assert!(ez.is_zero() && ew.is_zero(), "{}", h.describe());
                }
            }
        }
    }

    #[test]
    fn surrogate_matches_doubled_edge() {
        let doubled = pat(2, &[(0, 1), (0, 1)]);
        let est = surrogate_product(&doubled, 3, 200_000, 5).unwrap();
        let (ez, _) = expected_central_products(&doubled, 3).unwrap();
        assert!((est.value - ez.to_f64().unwrap()).abs() < 4.0 * est.se);
    }
}
