#![allow(dead_code)]

use monochrome::graph::{complete, complete_bipartite, cycle, erdos_renyi, path};
use monochrome::Graph;
use num_bigint::BigInt;
use num_rational::BigRational;

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edge_list(n, edges).unwrap()
}

pub fn star(leaves: usize) -> Graph {
    complete_bipartite(1, leaves)
}

/// 25 small graphs (at most 7 vertices) used by the exactness checks.
pub fn small_catalog() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = Vec::new();
    for n in 2..=7 {
        out.push((format!("K{n}"), complete(n)));
    }
    for e in [2, 3, 5] {
        out.push((format!("P{e}"), path(e)));
    }
    for g in 4..=7 {
        out.push((format!("C{g}"), cycle(g)));
    }
    out.push(("K1,3".into(), star(3)));
    out.push(("K1,6".into(), star(6)));
    out.push(("K2,3".into(), complete_bipartite(2, 3)));
    out.push(("K3,3".into(), complete_bipartite(3, 3)));
    out.push(("K3,4".into(), complete_bipartite(3, 4)));
    out.push(("K3+K1,2".into(), complete(3).disjoint_union(&star(2))));
    out.push(("2K2".into(), path(1).disjoint_union(&path(1))));
    out.push(("paw".into(), graph(4, &[(0, 1), (1, 2), (0, 2), (2, 3)])));
    out.push(("diamond".into(), graph(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])));
    out.push(("bowtie".into(), graph(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])));
    out.push(("er(7,0.5)".into(), erdos_renyi(7, 0.5, 1).without_isolated()));
    out.push(("er(7,0.4)".into(), erdos_renyi(7, 0.4, 2).without_isolated()));
    out
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Maximum of `Σφ` over `φ ∈ {0, ½, 1}^V` with `φ(x) + φ(y) ≤ 1` on edges,
/// by scanning all `3^n` assignments.
pub fn brute_force_gamma(g: &Graph) -> BigRational {
    let n = g.n();
    let mut twice = vec![0u8; n];
    let mut best = 0u32;
    loop {
        if g.edges().iter().all(|&(u, v)| twice[u] + twice[v] <= 2) {
            best = best.max(twice.iter().map(|&x| x as u32).sum());
        }
        let mut i = 0;
        while i < n && twice[i] == 2 {
            twice[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        twice[i] += 1;
    }
    rat(best as i64, 2)
}

/// Every component is a tree with at most one vertex of degree above 1.
pub fn union_of_stars_oracle(g: &Graph) -> bool {
    let (label, count) = g.components();
    (0..count).all(|c| {
        let verts: Vec<usize> = (0..g.n()).filter(|&v| label[v] == c).collect();
        let deg_sum: usize = verts.iter().map(|&v| g.degree(v)).sum();
        let hubs = verts.iter().filter(|&&v| g.degree(v) > 1).count();
        deg_sum / 2 + 1 == verts.len() && hubs <= 1
    })
}
