//! Fractional stable number, deficiency, and cycle/spectral condition reports.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::census;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::{double_cover, has_cycle_edge_factor, hopcroft_karp, konig_cover};
use crate::spectral;

pub const MAX_AUT_VERTICES: usize = 10;

/// `δ(H) = max_S |S| − |N(S)|`, computed as `|V|` minus a maximum matching of
/// the bipartite double cover.
pub fn deficiency(h: &Graph) -> usize {
    h.n() - hopcroft_karp(&double_cover(h), h.n()).size
}

/// A half-integral optimum of `max Σφ` subject to `φ(x) + φ(y) <= 1` on edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalSolution {
    /// `2φ(v)`, each in `{0, 1, 2}`.
    pub twice_phi: Vec<u8>,
    pub gamma: BigRational,
}

impl FractionalSolution {
    pub fn phi(&self, v: usize) -> BigRational {
        BigRational::new(BigInt::from(self.twice_phi[v]), BigInt::from(2))
    }

    fn part(&self, value: u8) -> Vec<usize> {
        (0..self.twice_phi.len()).filter(|&v| self.twice_phi[v] == value).collect()
    }

    pub fn v0(&self) -> Vec<usize> {
        self.part(0)
    }

    pub fn v_half(&self) -> Vec<usize> {
        self.part(1)
    }

    pub fn v1(&self) -> Vec<usize> {
        self.part(2)
    }

    /// `φ` rendered as `0`, `1/2`, `1` per vertex.
    pub fn phi_strings(&self) -> Vec<&'static str> {
        self.twice_phi
            .iter()
            .map(|&x| match x {
                0 => "0",
                1 => "1/2",
                _ => "1",
            })
            .collect()
    }

    pub fn is_feasible(&self, h: &Graph) -> bool {
        self.twice_phi.len() == h.n()
            && self.twice_phi.iter().all(|&x| x <= 2)
            && h.edges().iter().all(|&(u, v)| self.twice_phi[u] + self.twice_phi[v] <= 2)
    }

    pub fn objective(&self) -> BigRational {
        let twice: u64 = self.twice_phi.iter().map(|&x| x as u64).sum();
        BigRational::new(BigInt::from(twice), BigInt::from(2))
    }
}

/// `γ(H) = (|V| + δ(H)) / 2`, with an optimal `φ` read off the König cover of
/// the double cover: `φ(v) = 1 − (cover_L(v) + cover_R(v)) / 2`.
pub fn gamma(h: &Graph) -> FractionalSolution {
    let adj = double_cover(h);
    let matching = hopcroft_karp(&adj, h.n());
    let (left, right) = konig_cover(&adj, h.n(), &matching);
    let twice_phi: Vec<u8> = (0..h.n())
        .map(|v| 2 - left[v] as u8 - right[v] as u8)
        .collect();
    let gamma = BigRational::new(BigInt::from(2 * h.n() - matching.size), BigInt::from(2));
    let sol = FractionalSolution { twice_phi, gamma };
    debug_assert!(sol.is_feasible(h));
    debug_assert_eq!(sol.objective(), sol.gamma);
    sol
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    pub saturating_matching: bool,
    pub half_part_spanning: bool,
    pub union_of_stars: bool,
}

/// Checks the structure of an optimal solution: the `V0 → V1` edges admit a
/// matching saturating `V0` (checked only when `γ > |V|/2`, otherwise
/// vacuously true), the graph induced on `V½` has a spanning union of cycles
/// and isolated edges, and whether `H` is a disjoint union of stars.
pub fn structural_check(sol: &FractionalSolution, h: &Graph) -> Result<StructuralReport> {
    if !sol.is_feasible(h) {
        return Err(Error::SolutionMismatch("phi violates an edge constraint or has the wrong length".into()));
    }
    if sol.objective() != sol.gamma {
        return Err(Error::SolutionMismatch(format!(
            "sum of phi {} differs from gamma {}",
            sol.objective(),
            sol.gamma
        )));
    }
    let half_n = BigRational::new(BigInt::from(h.n()), BigInt::from(2));
    let saturating_matching = if sol.gamma > half_n {
        let v0 = sol.v0();
        let v1 = sol.v1();
        let adj: Vec<Vec<usize>> = v0
            .iter()
            .map(|&u| {
                h.neighbors(u)
                    .iter()
                    .filter_map(|w| v1.binary_search(w).ok())
                    .collect()
            })
            .collect();
        hopcroft_karp(&adj, v1.len()).size == v0.len()
    } else {
        true
    };
    let half = sol.v_half();
    let half_part_spanning = half.is_empty() || has_cycle_edge_factor(&h.induced(&half));
    Ok(StructuralReport {
        saturating_matching,
        half_part_spanning,
        union_of_stars: is_union_of_stars(h),
    })
}

/// Every component (ignoring isolated vertices) is a tree with at most one
/// vertex of degree above 1.
pub fn is_union_of_stars(h: &Graph) -> bool {
    let (label, count) = h.components();
    let mut verts = vec![0usize; count];
    let mut edges = vec![0usize; count];
    let mut hubs = vec![0usize; count];
    for v in 0..h.n() {
        verts[label[v]] += 1;
        if h.degree(v) > 1 {
            hubs[label[v]] += 1;
        }
    }
    for &(u, _) in h.edges() {
        edges[label[u]] += 1;
    }
    (0..count).all(|c| verts[c] == 1 || (edges[c] + 1 == verts[c] && hubs[c] <= 1))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionReport {
    pub m: usize,
    pub acf4_ratio: f64,
    pub usn_ratio: f64,
    pub cycle_ratios: BTreeMap<usize, f64>,
}

/// Condition report with cycle ratios `N(C_g)/m^{g/2}` for `3 <= g <= max_cycle`.
pub fn condition_report_upto(g: &Graph, max_cycle: usize) -> Result<ConditionReport> {
    let m = g.m();
    if m == 0 {
        return Err(Error::PreconditionViolated("condition report needs at least one edge".into()));
    }
    let spectrum = spectral::eigenvalues(g)?;
    let mf = m as f64;
    let mut cycle_ratios = BTreeMap::new();
    for len in 3..=max_cycle.min(census::MAX_CYCLE_LENGTH) {
        let count = cycle_count(g, len)? as f64;
        cycle_ratios.insert(len, count / mf.powf(len as f64 / 2.0));
    }
    let acf4_ratio = cycle_count(g, 4)? as f64 / (mf * mf);
    Ok(ConditionReport { m, acf4_ratio, usn_ratio: spectrum.usn_ratio(), cycle_ratios })
}

pub fn condition_report(g: &Graph) -> Result<ConditionReport> {
    condition_report_upto(g, census::MAX_CYCLE_LENGTH)
}

/// Exact cycle count; lengths 3 and 4 use the closed-walk identities, which
/// are exact and much cheaper on dense graphs.
pub fn cycle_count(g: &Graph, len: usize) -> Result<u64> {
    Ok(match len {
        3 => (census::walk_trace_3(g) / 6) as u64,
        4 => {
            let sum_d2: u128 = g.degrees().iter().map(|&d| (d * d) as u128).sum();
            ((census::walk_trace_4(g) + 2 * g.m() as u128 - 2 * sum_d2) / 8) as u64
        }
        _ => census::count_cycles(g, len)?,
    })
}

/// Number of automorphisms, by backtracking over degree-preserving maps.
pub fn automorphism_count(h: &Graph) -> Result<u64> {
    let n = h.n();
    if n > MAX_AUT_VERTICES {
        return Err(Error::PatternTooLarge(format!("{n} vertices (max {MAX_AUT_VERTICES})")));
    }
    fn go(h: &Graph, v: usize, image: &mut Vec<usize>, used: &mut [bool]) -> u64 {
        if v == h.n() {
            return 1;
        }
        let mut total = 0;
        for w in 0..h.n() {
            if used[w] || h.degree(w) != h.degree(v) {
                continue;
            }
            let consistent = (0..v).all(|u| h.has_edge(u, v) == h.has_edge(image[u], w));
            if consistent {
                used[w] = true;
                image.push(w);
                total += go(h, v + 1, image, used);
                image.pop();
                used[w] = false;
            }
        }
        total
    }
    Ok(go(h, 0, &mut Vec::with_capacity(n), &mut vec![false; n]))
}

/// `(2ℓ)^{|V(H)|/2} / |Aut(H)|`, the asymptotic maximum number of copies of
/// `H` in a graph with `ℓ` edges, for `H` with a spanning union of cycles
/// and isolated edges.
pub fn alon_asymptotic(h: &Graph, edges: f64) -> Result<f64> {
    if h.n() > MAX_AUT_VERTICES {
        return Err(Error::PatternTooLarge(format!("{} vertices (max {MAX_AUT_VERTICES})", h.n())));
    }
    if !has_cycle_edge_factor(h) {
        return Err(Error::NoSpanningCycleEdgeFactor);
    }
    let aut = automorphism_count(h)? as f64;
    Ok((2.0 * edges).powf(h.n() as f64 / 2.0) / aut)
}
