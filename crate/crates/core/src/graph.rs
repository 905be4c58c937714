//! Simple undirected graphs, the edge-list interchange format, and generators
//! for the graph families used throughout the crate.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::{substream, DOMAIN_GENERATOR};

/// Rejection cap for the pairing model.
pub const PAIRING_ATTEMPTS: usize = 1000;
/// Galton-Watson trees larger than this are refused.
pub const MAX_TREE_SIZE: usize = 5_000_000;

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted lexicographically.
/// Adjacency lists are sorted. The value is immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasicStats {
    pub n: usize,
    pub m: usize,
    pub degrees: Vec<usize>,
    pub components: usize,
}

impl Graph {
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut seen = HashSet::with_capacity(pairs.len());
        let mut edges = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::OutOfRange(a, b, n));
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(Error::DuplicateEdge(a, b));
            }
            edges.push(e);
        }
        Ok(Self::from_canonical_edges(n, edges))
    }

    /// Builds from edges already known to be loop-free and duplicate-free.
    fn from_canonical_edges(n: usize, mut edges: Vec<(usize, usize)>) -> Self {
        edges.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Component label per vertex, labels `0..count` in order of first vertex.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn basic_stats(&self) -> BasicStats {
        BasicStats {
            n: self.n,
            m: self.m(),
            degrees: self.degrees(),
            components: self.components().1,
        }
    }

    /// Drops isolated vertices, relabelling the rest in increasing order.
    pub fn without_isolated(&self) -> Graph {
        let mut map = vec![usize::MAX; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if !self.adj[v].is_empty() {
                map[v] = next;
                next += 1;
            }
        }
        let edges = self.edges.iter().map(|&(u, v)| (map[u], map[v])).collect();
        Graph::from_canonical_edges(next, edges)
    }

    /// Subgraph induced by `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut map = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            map[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| map[u] != usize::MAX && map[v] != usize::MAX)
            .map(|&(u, v)| (map[u].min(map[v]), map[u].max(map[v])))
            .collect();
        Graph::from_canonical_edges(vertices.len(), edges)
    }

    /// Disjoint union, `other` relabelled after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)))
            .collect();
        Graph::from_canonical_edges(self.n + other.n, edges)
    }

    /// Serializes to the edge-list text format: `n m` then one `u v` per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty edge list".into()))?;
        let (n, m) = parse_pair(header)?;
        let mut pairs = Vec::with_capacity(m);
        for line in lines {
            pairs.push(parse_pair(line)?);
        }
        if pairs.len() != m {
            return Err(Error::Parse(format!("header declares {m} edges, found {}", pairs.len())));
        }
        Graph::from_edge_list(n, &pairs)
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::Parse(format!("expected two integers in {line:?}")))?
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer in {line:?}")))
    };
    let a = next()?;
    let b = next()?;
    Ok((a, b))
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

/// Graph families. Random families carry their seed, so generation is a pure
/// function of the spec.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    Complete(usize),
    CompleteBipartite(usize, usize),
    /// `K_{1,n}`: center 0 and `n` leaves.
    Star(usize),
    /// Path with the given number of edges.
    Path(usize),
    Cycle(usize),
    Hypercube(u32),
    ErdosRenyi { n: usize, p: f64, seed: u64 },
    /// Edge `{i, j}` present with probability `grid[i][j]`.
    Inhomogeneous { grid: Vec<Vec<f64>>, seed: u64 },
    RandomRegular { n: usize, d: usize, seed: u64 },
    GaltonWatson { offspring: Vec<f64>, height: usize, seed: u64 },
    /// Path of `a` edges; each path edge carries `b` extra cycles of length `g`.
    PathCycleGadget { a: usize, b: usize, g: usize },
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InfeasibleSpec(msg));
        match self {
            FamilySpec::Cycle(g) if *g < 3 => bad(format!("cycle length {g} < 3")),
            FamilySpec::Hypercube(s) if *s > 24 => bad(format!("hypercube dimension {s} too large")),
            FamilySpec::ErdosRenyi { p, .. } if !(0.0..=1.0).contains(p) => {
                bad(format!("edge probability {p} outside [0, 1]"))
            }
            FamilySpec::Inhomogeneous { grid, .. } => {
                let n = grid.len();
                for (i, row) in grid.iter().enumerate() {
                    if row.len() != n {
                        return bad(format!("kernel grid row {i} has {} entries, expected {n}", row.len()));
                    }
                    for (j, &p) in row.iter().enumerate() {
                        if !(0.0..=1.0).contains(&p) {
                            return bad(format!("kernel grid entry ({i},{j}) = {p} outside [0, 1]"));
                        }
                        if (p - grid[j][i]).abs() > 1e-12 {
                            return bad(format!("kernel grid is not symmetric at ({i},{j})"));
                        }
                    }
                }
                Ok(())
            }
            FamilySpec::RandomRegular { n, d, .. } => {
                if (n * d) % 2 == 1 {
                    bad(format!("n*d = {} is odd", n * d))
                } else if *d >= (*n).max(1) && !(*n == 0 && *d == 0) {
                    bad(format!("degree {d} must be below n = {n}"))
                } else {
                    Ok(())
                }
            }
            FamilySpec::GaltonWatson { offspring, .. } => {
                if offspring.is_empty() || offspring.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
                    return bad("offspring pmf must be a nonempty vector of nonnegative numbers".into());
                }
                let total: f64 = offspring.iter().sum();
                if (total - 1.0).abs() > 1e-9 {
                    return bad(format!("offspring pmf sums to {total}, tail mass is not allowed"));
                }
                Ok(())
            }
            FamilySpec::PathCycleGadget { a, b, g } => {
                if *g < 3 || *a < 1 || *b < 1 {
                    bad(format!("gadget needs a >= 1, b >= 1, g >= 3 (got {a}, {b}, {g})"))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// Whether generation consumes randomness.
    pub fn is_random(&self) -> bool {
        matches!(
            self,
            FamilySpec::ErdosRenyi { .. }
                | FamilySpec::Inhomogeneous { .. }
                | FamilySpec::RandomRegular { .. }
                | FamilySpec::GaltonWatson { .. }
        )
    }

    pub fn generate(&self) -> Result<Graph> {
        self.validate()?;
        Ok(match self {
            FamilySpec::Complete(n) => complete(*n),
            FamilySpec::CompleteBipartite(a, b) => complete_bipartite(*a, *b),
            FamilySpec::Star(leaves) => complete_bipartite(1, *leaves),
            FamilySpec::Path(k) => path(*k),
            FamilySpec::Cycle(g) => cycle(*g),
            FamilySpec::Hypercube(s) => hypercube(*s),
            FamilySpec::ErdosRenyi { n, p, seed } => erdos_renyi(*n, *p, *seed),
            FamilySpec::Inhomogeneous { grid, seed } => inhomogeneous(grid, *seed),
            FamilySpec::RandomRegular { n, d, seed } => random_regular(*n, *d, *seed)?,
            FamilySpec::GaltonWatson { offspring, height, seed } => {
                galton_watson(offspring, *height, *seed)?
            }
            FamilySpec::PathCycleGadget { a, b, g } => path_cycle_gadget(*a, *b, *g),
        })
    }
}

/// Mini-grammar `name:arg:arg...`, e.g. `complete:23`, `er:100:0.05:seed7`,
/// `gadget:30:30:3`, `gw:0.25,0.25,0.5:6:seed1`. Inhomogeneous kernels need a
/// grid and are not expressible here; see [`crate::cli`].
impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let usage = || Error::Parse(format!("unrecognized family spec {s:?}"));
        let int = |i: usize| -> Result<usize> {
            parts.get(i).ok_or_else(usage)?.parse().map_err(|_| usage())
        };
        let float = |i: usize| -> Result<f64> {
            parts.get(i).ok_or_else(usage)?.parse().map_err(|_| usage())
        };
        let seed = |i: usize| -> Result<u64> {
            let raw = parts.get(i).ok_or_else(usage)?;
            raw.strip_prefix("seed").unwrap_or(raw).parse().map_err(|_| usage())
        };
        let arity = |k: usize| if parts.len() == k + 1 { Ok(()) } else { Err(usage()) };
        let spec = match parts[0] {
            "complete" | "k" => {
                arity(1)?;
                FamilySpec::Complete(int(1)?)
            }
            "bipartite" | "kab" => {
                arity(2)?;
                FamilySpec::CompleteBipartite(int(1)?, int(2)?)
            }
            "star" => {
                arity(1)?;
                FamilySpec::Star(int(1)?)
            }
            "path" => {
                arity(1)?;
                FamilySpec::Path(int(1)?)
            }
            "cycle" => {
                arity(1)?;
                FamilySpec::Cycle(int(1)?)
            }
            "hypercube" => {
                arity(1)?;
                FamilySpec::Hypercube(int(1)? as u32)
            }
            "er" => {
                arity(3)?;
                FamilySpec::ErdosRenyi { n: int(1)?, p: float(2)?, seed: seed(3)? }
            }
            "regular" => {
                arity(3)?;
                FamilySpec::RandomRegular { n: int(1)?, d: int(2)?, seed: seed(3)? }
            }
            "gw" => {
                arity(3)?;
                let offspring = parts[1]
                    .split(',')
                    .map(|x| x.parse::<f64>().map_err(|_| usage()))
                    .collect::<Result<Vec<_>>>()?;
                FamilySpec::GaltonWatson { offspring, height: int(2)?, seed: seed(3)? }
            }
            "gadget" => {
                arity(3)?;
                FamilySpec::PathCycleGadget { a: int(1)?, b: int(2)?, g: int(3)? }
            }
            _ => return Err(usage()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_canonical_edges(n, edges)
}

/// Left part `0..a`, right part `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
    Graph::from_canonical_edges(a + b, edges)
}

pub fn path(edges: usize) -> Graph {
    Graph::from_canonical_edges(edges + 1, (0..edges).map(|i| (i, i + 1)).collect())
}

pub fn cycle(g: usize) -> Graph {
    let mut edges: Vec<_> = (0..g - 1).map(|i| (i, i + 1)).collect();
    edges.push((0, g - 1));
    Graph::from_canonical_edges(g, edges)
}

pub fn hypercube(s: u32) -> Graph {
    let n = 1usize << s;
    let edges = (0..n)
        .flat_map(|u| (0..s).map(move |b| (u, u ^ (1 << b))).filter(|&(u, v)| u < v))
        .collect();
    Graph::from_canonical_edges(n, edges)
}

pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = substream(seed, DOMAIN_GENERATOR, 0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_canonical_edges(n, edges)
}

pub fn inhomogeneous(grid: &[Vec<f64>], seed: u64) -> Graph {
    let n = grid.len();
    let mut rng = substream(seed, DOMAIN_GENERATOR, 0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(grid[u][v]) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_canonical_edges(n, edges)
}

/// Pairing (configuration) model with whole-graph rejection of loops and
/// multi-edges. Attempt `k` draws from substream `k` of the seed.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    'attempt: for attempt in 0..PAIRING_ATTEMPTS {
        let mut rng = substream(seed, DOMAIN_GENERATOR, attempt as u64);
        points.shuffle(&mut rng);
        let mut seen = HashSet::with_capacity(n * d / 2);
        let mut edges = Vec::with_capacity(n * d / 2);
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || !seen.insert((u.min(v), u.max(v))) {
                continue 'attempt;
            }
            edges.push((u.min(v), u.max(v)));
        }
        return Ok(Graph::from_canonical_edges(n, edges));
    }
    Err(Error::GenerationTimeout(PAIRING_ATTEMPTS))
}

/// All individuals born by generation `height` (root is generation 0),
/// numbered in breadth-first order.
pub fn galton_watson(offspring: &[f64], height: usize, seed: u64) -> Result<Graph> {
    let mut rng = substream(seed, DOMAIN_GENERATOR, 0);
    let cumulative: Vec<f64> = offspring
        .iter()
        .scan(0.0, |acc, &p| {
            *acc += p;
            Some(*acc)
        })
        .collect();
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    let mut next_id = 1usize;
    for _ in 0..height {
        let mut children = Vec::new();
        for &parent in &frontier {
            let u: f64 = rng.random();
            let k = cumulative.iter().position(|&c| u < c).unwrap_or(cumulative.len() - 1);
            for _ in 0..k {
                edges.push((parent, next_id));
                children.push(next_id);
                next_id += 1;
            }
            if next_id > MAX_TREE_SIZE {
                return Err(Error::InfeasibleSpec(format!(
                    "Galton-Watson tree exceeded {MAX_TREE_SIZE} vertices"
                )));
            }
        }
        if children.is_empty() {
            break;
        }
        frontier = children;
    }
    Ok(Graph::from_canonical_edges(next_id, edges))
}

/// Path `0..=a`; for each path edge `(i, i+1)` and each of `b` copies, a fresh
/// chain of `g - 2` vertices closes a `g`-cycle through that edge.
pub fn path_cycle_gadget(a: usize, b: usize, g: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..a).map(|i| (i, i + 1)).collect();
    let mut next = a + 1;
    for i in 0..a {
        for _ in 0..b {
            let mut prev = i;
            for _ in 0..g - 2 {
                edges.push((prev.min(next), prev.max(next)));
                prev = next;
                next += 1;
            }
            edges.push((i + 1, prev));
        }
    }
    Graph::from_canonical_edges(next, edges)
}

/// Vertex set of the edges, used by callers that need to check coverage.
pub fn edge_vertices(edges: &[(usize, usize)]) -> BTreeSet<usize> {
    edges.iter().flat_map(|&(u, v)| [u, v]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_from_pairs() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn rejects_bad_pairs() {
        assert_eq!(Graph::from_edge_list(2, &[(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(Graph::from_edge_list(4, &[(0, 1), (1, 0)]), Err(Error::DuplicateEdge(1, 0)));
        assert_eq!(Graph::from_edge_list(2, &[(0, 2)]), Err(Error::OutOfRange(0, 2, 2)));
    }

    #[test]
    fn basic_stats_examples() {
        let k4 = complete(4).basic_stats();
        assert_eq!((k4.n, k4.m, k4.degrees.clone(), k4.components), (4, 6, vec![3; 4], 1));
        let two = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap().basic_stats();
        assert_eq!((two.n, two.m, two.degrees.clone(), two.components), (4, 2, vec![1; 4], 2));
    }

    #[test]
    fn hypercube_counts() {
        let q = FamilySpec::Hypercube(3).generate().unwrap();
        assert_eq!((q.n(), q.m()), (8, 12));
        assert!(q.degrees().iter().all(|&d| d == 3));
    }

    #[test]
    fn gadget_counts() {
        // a + 1 path vertices plus a*b chains of g - 2 vertices each.
        let g = FamilySpec::PathCycleGadget { a: 5, b: 3, g: 3 }.generate().unwrap();
        assert_eq!(g.n(), 6 + 15);
        assert_eq!(g.m(), 5 + 15 * 2);
        assert_eq!(g.basic_stats().components, 1);
        let g = path_cycle_gadget(2, 2, 5);
        assert_eq!((g.n(), g.m()), (3 + 4 * 3, 2 + 4 * 4));
    }

    #[test]
    fn infeasible_specs() {
        assert!(matches!(
            FamilySpec::RandomRegular { n: 5, d: 3, seed: 0 }.generate(),
            Err(Error::InfeasibleSpec(_))
        ));
        assert!(matches!(FamilySpec::Cycle(2).generate(), Err(Error::InfeasibleSpec(_))));
        assert!(matches!(
            FamilySpec::GaltonWatson { offspring: vec![0.5, 0.4], height: 3, seed: 0 }.generate(),
            Err(Error::InfeasibleSpec(_))
        ));
    }

    #[test]
    fn regular_degrees_exact() {
        for seed in 0..5 {
            let g = FamilySpec::RandomRegular { n: 30, d: 3, seed }.generate().unwrap();
            assert!(g.degrees().iter().all(|&d| d == 3));
        }
    }

    #[test]
    fn galton_watson_is_a_tree() {
        for seed in 0..10 {
            let spec = FamilySpec::GaltonWatson { offspring: vec![0.2, 0.3, 0.5], height: 6, seed };
            let g = spec.generate().unwrap();
            let s = g.basic_stats();
            assert_eq!(s.components, 1);
            assert_eq!(s.m + 1, s.n);
        }
    }

    #[test]
    fn parse_round_trip() {
        let g = erdos_renyi(12, 0.4, 3);
        let text = format!("# comment\n{}", g.to_edge_list());
        assert_eq!(Graph::parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn family_grammar() {
        assert_eq!("complete:23".parse::<FamilySpec>().unwrap(), FamilySpec::Complete(23));
        assert_eq!(
            "er:100:0.05:seed7".parse::<FamilySpec>().unwrap(),
            FamilySpec::ErdosRenyi { n: 100, p: 0.05, seed: 7 }
        );
        assert_eq!(
            "gadget:30:30:3".parse::<FamilySpec>().unwrap(),
            FamilySpec::PathCycleGadget { a: 30, b: 30, g: 3 }
        );
        assert!("complete".parse::<FamilySpec>().is_err());
        assert!("regular:5:3:1".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn generation_is_pure() {
        let spec = FamilySpec::RandomRegular { n: 40, d: 4, seed: 11 };
        assert_eq!(spec.generate().unwrap().to_edge_list(), spec.generate().unwrap().to_edge_list());
    }
}
