//! Maximum bipartite matching by Hopcroft-Karp, and the König vertex cover
//! derived from it.

use std::collections::VecDeque;

use crate::graph::Graph;

const UNREACHED: u32 = u32::MAX;

/// Result of a maximum matching on a bipartite graph with parts `L` and `R`.
#[derive(Clone, Debug)]
pub struct Matching {
    pub size: usize,
    pub left_to_right: Vec<Option<usize>>,
    pub right_to_left: Vec<Option<usize>>,
}

/// `adj[l]` lists the right-neighbors of left vertex `l`; right vertices are `0..right`.
pub fn hopcroft_karp(adj: &[Vec<usize>], right: usize) -> Matching {
    let left = adj.len();
    let mut l2r = vec![None; left];
    let mut r2l = vec![None; right];
    let mut dist = vec![UNREACHED; left];
    let mut size = 0;
    loop {
        if !bfs_layers(adj, &l2r, &r2l, &mut dist) {
            break;
        }
        let mut next_edge = vec![0usize; left];
        for l in 0..left {
            if l2r[l].is_none() && augment(l, adj, &mut l2r, &mut r2l, &mut dist, &mut next_edge) {
                size += 1;
            }
        }
    }
    Matching { size, left_to_right: l2r, right_to_left: r2l }
}

fn bfs_layers(
    adj: &[Vec<usize>],
    l2r: &[Option<usize>],
    r2l: &[Option<usize>],
    dist: &mut [u32],
) -> bool {
    let mut queue = VecDeque::new();
    for (l, d) in dist.iter_mut().enumerate() {
        if l2r[l].is_none() {
            *d = 0;
            queue.push_back(l);
        } else {
            *d = UNREACHED;
        }
    }
    let mut found = false;
    while let Some(l) = queue.pop_front() {
        for &r in &adj[l] {
            match r2l[r] {
                None => found = true,
                Some(l2) if dist[l2] == UNREACHED => {
                    dist[l2] = dist[l] + 1;
                    queue.push_back(l2);
                }
                _ => {}
            }
        }
    }
    found
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    l2r: &mut [Option<usize>],
    r2l: &mut [Option<usize>],
    dist: &mut [u32],
    next_edge: &mut [usize],
) -> bool {
    while next_edge[l] < adj[l].len() {
        let r = adj[l][next_edge[l]];
        next_edge[l] += 1;
        let ok = match r2l[r] {
            None => true,
            Some(l2) => dist[l2] == dist[l] + 1 && augment(l2, adj, l2r, r2l, dist, next_edge),
        };
        if ok {
            l2r[l] = Some(r);
            r2l[r] = Some(l);
            return true;
        }
    }
    dist[l] = UNREACHED;
    false
}

/// Minimum vertex cover `(left_in_cover, right_in_cover)` from a maximum
/// matching: with `Z` the vertices reachable from unmatched left vertices by
/// alternating paths, the cover is `(L \ Z) ∪ (R ∩ Z)`.
pub fn konig_cover(adj: &[Vec<usize>], right: usize, matching: &Matching) -> (Vec<bool>, Vec<bool>) {
    let left = adj.len();
    let mut seen_l = vec![false; left];
    let mut seen_r = vec![false; right];
    let mut queue: VecDeque<usize> =
        (0..left).filter(|&l| matching.left_to_right[l].is_none()).collect();
    for &l in &queue {
        seen_l[l] = true;
    }
    while let Some(l) = queue.pop_front() {
        for &r in &adj[l] {
            if seen_r[r] {
                continue;
            }
            seen_r[r] = true;
            if let Some(l2) = matching.right_to_left[r] {
                if !seen_l[l2] {
                    seen_l[l2] = true;
                    queue.push_back(l2);
                }
            }
        }
    }
    (seen_l.iter().map(|&z| !z).collect(), seen_r)
}

/// Adjacency of the bipartite double cover of `g`: left copy `u` is joined to
/// right copy `v` whenever `uv` is an edge.
pub fn double_cover(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect()
}

/// Whether `g` has a spanning subgraph whose components are cycles and
/// isolated edges, i.e. whether its double cover has a perfect matching.
pub fn has_cycle_edge_factor(g: &Graph) -> bool {
    hopcroft_karp(&double_cover(g), g.n()).size == g.n()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, cycle, path};

    fn brute_max_matching(adj: &[Vec<usize>], right: usize) -> usize {
        fn go(l: usize, adj: &[Vec<usize>], used: &mut Vec<bool>) -> usize {
            if l == adj.len() {
                return 0;
            }
            let mut best = go(l + 1, adj, used);
            for &r in &adj[l] {
                if !used[r] {
                    used[r] = true;
                    best = best.max(1 + go(l + 1, adj, used));
                    used[r] = false;
                }
            }
            best
        }
        go(0, adj, &mut vec![false; right])
    }

    #[test]
    fn matches_brute_force_and_cover_is_valid() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let left = rng.random_range(1..7);
            let right = rng.random_range(1..7);
            let adj: Vec<Vec<usize>> = (0..left)
                .map(|_| (0..right).filter(|_| rng.random_bool(0.35)).collect())
                .collect();
            let m = hopcroft_karp(&adj, right);
            assert_eq!(m.size, brute_max_matching(&adj, right));
            let (cl, cr) = konig_cover(&adj, right, &m);
            let cover = cl.iter().filter(|&&b| b).count() + cr.iter().filter(|&&b| b).count();
            assert_eq!(cover, m.size);
            for (l, rs) in adj.iter().enumerate() {
                for &r in rs {
                    assert!(cl[l] || cr[r]);
                }
            }
        }
    }

    #[test]
    fn cycle_edge_factors() {
        assert!(has_cycle_edge_factor(&cycle(5)));
        assert!(has_cycle_edge_factor(&path(1)));
        assert!(has_cycle_edge_factor(&path(3)));
        assert!(!has_cycle_edge_factor(&path(2)));
        assert!(!has_cycle_edge_factor(&complete_bipartite(1, 3)));
    }
}
