//! Exact counts of small patterns inside a host graph.
//!
//! Patterns are small multigraphs identified up to isomorphism by a canonical
//! key. The key is built per connected component: vertices are colored by
//! iterated degree refinement, and the component's multiplicity matrix is
//! minimized over every vertex ordering that respects the color order. The
//! sorted component codes, joined, form the key.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral;

pub const MAX_CYCLE_LENGTH: usize = 8;
pub const MAX_PATTERN_EDGES: usize = 6;
pub const MAX_TUPLE_LENGTH: usize = 4;
pub const ENUMERATION_GATE: f64 = 1e8;
/// Largest connected component the permutation search accepts.
pub const MAX_CANONICAL_VERTICES: usize = 10;

/// A multigraph without loops or isolated vertices, on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiGraphPattern {
    n: usize,
    /// `(u, v, multiplicity)` with `u < v`, sorted, multiplicity >= 1.
    edges: Vec<(usize, usize, u32)>,
    key: String,
}

impl MultiGraphPattern {
    /// Builds from a list of (possibly repeated) edges. Vertices must be
    /// `0..n` and every one of them must be covered.
    pub fn from_multiedges(n: usize, list: &[(usize, usize)]) -> Result<Self> {
        let mut mult: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for &(a, b) in list {
            if a >= n || b >= n {
                return Err(Error::OutOfRange(a, b, n));
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            *mult.entry((a.min(b), a.max(b))).or_default() += 1;
        }
        let mut covered = vec![false; n];
        for &(u, v) in mult.keys() {
            covered[u] = true;
            covered[v] = true;
        }
        if let Some(v) = covered.iter().position(|&c| !c) {
            return Err(Error::PreconditionViolated(format!("pattern vertex {v} is isolated")));
        }
        let edges: Vec<_> = mult.into_iter().map(|((u, v), k)| (u, v, k)).collect();
        let key = canonical_key(n, &edges)?;
        Ok(MultiGraphPattern { n, edges, key })
    }

    pub fn from_graph(g: &Graph) -> Result<Self> {
        Self::from_multiedges(g.n(), g.edges())
    }

    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Edge count with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(|e| e.2 as usize).sum()
    }

    pub fn simple_edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn multiedges(&self) -> &[(usize, usize, u32)] {
        &self.edges
    }

    /// Edge list with every edge repeated by its multiplicity.
    pub fn expanded_edges(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .flat_map(|&(u, v, k)| std::iter::repeat_n((u, v), k as usize))
            .collect()
    }

    /// The underlying simple graph `H_S`.
    pub fn simple(&self) -> Graph {
        let pairs: Vec<_> = self.edges.iter().map(|&(u, v, _)| (u, v)).collect();
        Graph::from_edge_list(self.n, &pairs).expect("pattern edges are valid")
    }

    pub fn component_count(&self) -> usize {
        self.simple().components().1
    }

    /// Degrees counted with multiplicity.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v, k) in &self.edges {
            d[u] += k as usize;
            d[v] += k as usize;
        }
        d
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    pub fn is_simple(&self) -> bool {
        self.edges.iter().all(|e| e.2 == 1)
    }

    /// Whether the underlying simple graph is a tree.
    pub fn simple_is_tree(&self) -> bool {
        self.component_count() == 1 && self.edges.len() + 1 == self.n
    }

    /// Short human-readable description, e.g. `"C4"` or `"doubled edge + P2"`.
    pub fn describe(&self) -> String {
        let simple = self.simple();
        let (label, count) = simple.components();
        let mut parts: Vec<String> = (0..count)
            .map(|c| {
                let verts: Vec<usize> = (0..self.n).filter(|&v| label[v] == c).collect();
                let edges: Vec<_> = self
                    .edges
                    .iter()
                    .filter(|e| label[e.0] == c)
                    .copied()
                    .collect();
                describe_component(&verts, &edges)
            })
            .collect();
        parts.sort();
        parts.join(" + ")
    }
}

impl fmt::Display for MultiGraphPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}

fn describe_component(verts: &[usize], edges: &[(usize, usize, u32)]) -> String {
    let p = verts.len();
    let e = edges.len();
    let total: u32 = edges.iter().map(|x| x.2).sum();
    if p == 2 {
        return match total {
            1 => "edge".into(),
            2 => "doubled edge".into(),
            3 => "tripled edge".into(),
            k => format!("edge x{k}"),
        };
    }
    if edges.iter().any(|x| x.2 > 1) {
        return format!("multigraph(v={p}, e={total})");
    }
    let mut deg: HashMap<usize, usize> = HashMap::new();
    for &(u, v, _) in edges {
        *deg.entry(u).or_default() += 1;
        *deg.entry(v).or_default() += 1;
    }
    let max = deg.values().copied().max().unwrap_or(0);
    if e == p && deg.values().all(|&d| d == 2) {
        return format!("C{p}");
    }
    if e + 1 == p {
        if max <= 2 {
            return format!("P{e}");
        }
        if max == e {
            return format!("K1,{e}");
        }
        return format!("tree(v={p})");
    }
    if e == p * (p - 1) / 2 {
        return format!("K{p}");
    }
    format!("graph(v={p}, e={e})")
}

/// Canonical key of a multigraph given as sorted `(u, v, mult)` triples.
fn canonical_key(n: usize, edges: &[(usize, usize, u32)]) -> Result<String> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut x = x;
        while p[x] != r {
            let nx = p[x];
            p[x] = r;
            x = nx;
        }
        r
    }
    for &(u, v, _) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    let mut codes = Vec::with_capacity(groups.len());
    for verts in groups.values() {
        if verts.len() > MAX_CANONICAL_VERTICES {
            return Err(Error::PatternTooLarge(format!(
                "connected pattern component with {} vertices (max {MAX_CANONICAL_VERTICES})",
                verts.len()
            )));
        }
        let mut local = vec![usize::MAX; n];
        for (i, &v) in verts.iter().enumerate() {
            local[v] = i;
        }
        let sub: Vec<(usize, usize, u32)> = edges
            .iter()
            .filter(|e| local[e.0] != usize::MAX)
            .map(|&(u, v, k)| (local[u], local[v], k))
            .collect();
        codes.push(component_code(verts.len(), &sub));
    }
    codes.sort();
    Ok(codes.join(" + "))
}

/// Canonical edge-list string of one connected component.
fn component_code(p: usize, edges: &[(usize, usize, u32)]) -> String {
    let mut mat = vec![vec![0u32; p]; p];
    for &(u, v, k) in edges {
        mat[u][v] = k;
        mat[v][u] = k;
    }
    let colors = refine_colors(&mat);
    // Cells of equal color, in color order.
    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by_key(|&v| colors[v]);
    let cell_of: Vec<usize> = order.iter().map(|&v| colors[v]).collect();

    let mut best: Option<Vec<u32>> = None;
    let mut perm = Vec::with_capacity(p);
    let mut used = vec![false; p];
    let mut code = Vec::with_capacity(p * (p - 1) / 2);
    search(&mat, &colors, &cell_of, &mut perm, &mut used, &mut code, &mut best);
    let best = best.expect("at least one ordering");

    let mut out = Vec::new();
    let mut idx = 0;
    for j in 1..p {
        for i in 0..j {
            let k = best[idx];
            idx += 1;
            if k > 0 {
                out.push(if k == 1 { format!("{i}-{j}") } else { format!("{i}-{j}x{k}") });
            }
        }
    }
    out.join(",")
}

/// Column-major code: for position `j`, entries `mat[perm[i]][perm[j]]`, `i < j`.
fn search(
    mat: &[Vec<u32>],
    colors: &[usize],
    cell_of: &[usize],
    perm: &mut Vec<usize>,
    used: &mut [bool],
    code: &mut Vec<u32>,
    best: &mut Option<Vec<u32>>,
) {
    let p = mat.len();
    let j = perm.len();
    if j == p {
        if best.as_ref().is_none_or(|b| code[..] < b[..]) {
            *best = Some(code.clone());
        }
        return;
    }
    for v in 0..p {
        if used[v] || colors[v] != cell_of[j] {
            continue;
        }
        let mark = code.len();
        for &u in perm.iter() {
            code.push(mat[u][v]);
        }
        // Prune once the prefix exceeds the best code found so far.
        let keep = match best {
            Some(b) => code[..] <= b[..code.len()],
            None => true,
        };
        if keep {
            used[v] = true;
            perm.push(v);
            search(mat, colors, cell_of, perm, used, code, best);
            perm.pop();
            used[v] = false;
        }
        code.truncate(mark);
    }
}

/// Iterated refinement of vertex colors by neighbor color multisets. Color ids
/// are ranks of sorted signatures, so they are invariant under relabelling.
fn refine_colors(mat: &[Vec<u32>]) -> Vec<usize> {
    let p = mat.len();
    let mut colors: Vec<usize> = {
        let sig: Vec<(u32, usize)> = (0..p)
            .map(|v| (mat[v].iter().sum(), mat[v].iter().filter(|&&k| k > 0).count()))
            .collect();
        rank(&sig)
    };
    loop {
        let sig: Vec<(usize, Vec<(usize, u32)>)> = (0..p)
            .map(|v| {
                let mut nb: Vec<(usize, u32)> = (0..p)
                    .filter(|&u| mat[v][u] > 0)
                    .map(|u| (colors[u], mat[v][u]))
                    .collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let next = rank(&sig);
        let before = colors.iter().collect::<std::collections::HashSet<_>>().len();
        let after = next.iter().collect::<std::collections::HashSet<_>>().len();
        colors = next;
        if after == before {
            return colors;
        }
    }
}

fn rank<T: Ord + Clone>(sig: &[T]) -> Vec<usize> {
    let mut distinct: Vec<T> = sig.to_vec();
    distinct.sort();
    distinct.dedup();
    sig.iter().map(|s| distinct.binary_search(s).unwrap()).collect()
}

/// Enumerates every `g`-cycle once. Each cycle is reported rooted at its
/// smallest vertex, oriented so the second vertex is below the last.
pub fn for_each_cycle<F: FnMut(&[usize])>(g: &Graph, len: usize, mut visit: F) -> Result<()> {
    if !(3..=MAX_CYCLE_LENGTH).contains(&len) {
        return Err(Error::UnsupportedLength(len));
    }
    let mut path = Vec::with_capacity(len);
    let mut on_path = vec![false; g.n()];
    for s in 0..g.n() {
        path.push(s);
        on_path[s] = true;
        extend(g, len, s, &mut path, &mut on_path, &mut visit);
        on_path[s] = false;
        path.pop();
    }
    Ok(())
}

fn extend<F: FnMut(&[usize])>(
    g: &Graph,
    len: usize,
    root: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    visit: &mut F,
) {
    let last = *path.last().unwrap();
    let closing = path.len() == len - 1;
    for &w in g.neighbors(last) {
        if w <= root || on_path[w] {
            continue;
        }
        if closing {
            if path[1].min(w) == path[1] && path[1] != w && g.has_edge(w, root) {
                path.push(w);
                visit(path);
                path.pop();
            }
        } else {
            path.push(w);
            on_path[w] = true;
            extend(g, len, root, path, on_path, visit);
            on_path[w] = false;
            path.pop();
        }
    }
}

pub fn list_cycles(g: &Graph, len: usize) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for_each_cycle(g, len, |c| out.push(c.to_vec()))?;
    Ok(out)
}

/// Number of (unlabeled) `len`-cycles in `g`, for `3 <= len <= 8`.
///
/// For lengths 3 and 4 the enumeration is checked against the closed-walk
/// identities `tr(A^3) = 6 N(C3)` and `tr(A^4) = 8 N(C4) + 2 sum d^2 - 2m`.
pub fn count_cycles(g: &Graph, len: usize) -> Result<u64> {
    let mut count = 0u64;
    for_each_cycle(g, len, |_| count += 1)?;
    match len {
        3 => assert_eq!(
            count as u128,
            walk_trace_3(g) / 6,
            "triangle enumeration disagrees with tr(A^3)"
        ),
        4 => assert_eq!(
            count as u128,
            four_cycles_from_walks(g),
            "4-cycle enumeration disagrees with tr(A^4)"
        ),
        _ => {}
    }
    Ok(count)
}

/// `tr(A^3)`, counted as common neighbors over ordered adjacent pairs.
pub fn walk_trace_3(g: &Graph) -> u128 {
    let mut total = 0u128;
    for &(u, v) in g.edges() {
        let (a, b) = (g.neighbors(u), g.neighbors(v));
        let (mut i, mut j, mut common) = (0, 0, 0u128);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    common += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        total += 2 * common;
    }
    total
}

/// `tr(A^4) = sum_{i,k} s2(i,k)^2` with `s2` the 2-walk counts.
pub fn walk_trace_4(g: &Graph) -> u128 {
    let n = g.n();
    let mut s2 = vec![0u64; n];
    let mut touched = Vec::new();
    let mut total = 0u128;
    for i in 0..n {
        for &j in g.neighbors(i) {
            for &k in g.neighbors(j) {
                if s2[k] == 0 {
                    touched.push(k);
                }
                s2[k] += 1;
            }
        }
        for &k in &touched {
            total += (s2[k] as u128) * (s2[k] as u128);
            s2[k] = 0;
        }
        touched.clear();
    }
    total
}

fn four_cycles_from_walks(g: &Graph) -> u128 {
    let sum_d2: u128 = g.degrees().iter().map(|&d| (d * d) as u128).sum();
    (walk_trace_4(g) + 2 * g.m() as u128 - 2 * sum_d2) / 8
}

/// Number of edge subsets `S` of `g` whose edge-induced subgraph is
/// isomorphic to `pattern` (a simple graph without isolated vertices).
pub fn count_subgraph(g: &Graph, pattern: &Graph) -> Result<u64> {
    let k = pattern.m();
    if k > MAX_PATTERN_EDGES {
        return Err(Error::PatternTooLarge(format!("{k} edges (max {MAX_PATTERN_EDGES})")));
    }
    if k == 0 || pattern.degrees().contains(&0) {
        return Err(Error::PreconditionViolated("pattern must have edges and no isolated vertices".into()));
    }
    let subsets = binomial_f64(g.m(), k);
    if subsets > ENUMERATION_GATE {
        return Err(Error::EnumerationGateExceeded {
            what: format!("C(m={}, {k})", g.m()),
            size: subsets,
            limit: ENUMERATION_GATE,
        });
    }
    let target = MultiGraphPattern::from_graph(pattern)?;
    let mut target_degrees = pattern.degrees();
    target_degrees.sort_unstable();
    let max_deg = *target_degrees.last().unwrap();
    let mut state = SubsetSearch {
        g,
        k,
        vmax: pattern.n(),
        max_deg,
        target: &target,
        target_degrees: &target_degrees,
        deg: vec![0; g.n()],
        touched: 0,
        chosen: Vec::with_capacity(k),
        count: 0,
    };
    state.run(0);
    Ok(state.count)
}

struct SubsetSearch<'a> {
    g: &'a Graph,
    k: usize,
    vmax: usize,
    max_deg: usize,
    target: &'a MultiGraphPattern,
    target_degrees: &'a [usize],
    deg: Vec<usize>,
    touched: usize,
    chosen: Vec<usize>,
    count: u64,
}

impl SubsetSearch<'_> {
    fn run(&mut self, start: usize) {
        if self.chosen.len() == self.k {
            self.check();
            return;
        }
        let edges = self.g.edges();
        let remaining = self.k - self.chosen.len();
        for idx in start..=edges.len().saturating_sub(remaining) {
            if idx >= edges.len() {
                break;
            }
            let (u, v) = edges[idx];
            let added = (self.deg[u] == 0) as usize + (self.deg[v] == 0) as usize;
            if self.touched + added > self.vmax
                || self.deg[u] + 1 > self.max_deg
                || self.deg[v] + 1 > self.max_deg
            {
                continue;
            }
            self.deg[u] += 1;
            self.deg[v] += 1;
            self.touched += added;
            self.chosen.push(idx);
            self.run(idx + 1);
            self.chosen.pop();
            self.touched -= added;
            self.deg[u] -= 1;
            self.deg[v] -= 1;
        }
    }

    fn check(&mut self) {
        if self.touched != self.vmax {
            return;
        }
        let edges = self.g.edges();
        let mut verts: Vec<usize> = self.chosen.iter().flat_map(|&i| [edges[i].0, edges[i].1]).collect();
        verts.sort_unstable();
        verts.dedup();
        let mut degs: Vec<usize> = verts.iter().map(|&v| self.deg[v]).collect();
        degs.sort_unstable();
        if degs != self.target_degrees {
            return;
        }
        let local: Vec<(usize, usize)> = self
            .chosen
            .iter()
            .map(|&i| {
                let (u, v) = edges[i];
                (verts.binary_search(&u).unwrap(), verts.binary_search(&v).unwrap())
            })
            .collect();
        let p = MultiGraphPattern::from_multiedges(verts.len(), &local).expect("valid subset");
        if p.key == self.target.key {
            self.count += 1;
        }
    }
}

fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// One isomorphism class of edge tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleClass {
    pub pattern: MultiGraphPattern,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleCensus {
    pub k: usize,
    pub total: u64,
    pub classes: BTreeMap<String, TupleClass>,
}

impl TupleCensus {
    pub fn count(&self, key: &str) -> u64 {
        self.classes.get(key).map_or(0, |c| c.count)
    }
}

/// Partitions all `m^k` ordered edge `k`-tuples of `g` by the isomorphism
/// class of the multigraph they form.
pub fn count_multigraph_tuples(g: &Graph, k: usize) -> Result<TupleCensus> {
    if !(1..=MAX_TUPLE_LENGTH).contains(&k) {
        return Err(Error::InvalidInput(format!("tuple length {k} outside 1..={MAX_TUPLE_LENGTH}")));
    }
    let m = g.m();
    let size = (m as f64).powi(k as i32);
    if size > ENUMERATION_GATE {
        return Err(Error::EnumerationGateExceeded {
            what: format!("m^k = {m}^{k}"),
            size,
            limit: ENUMERATION_GATE,
        });
    }
    let edges = g.edges();
    // Shapes of tuples are tallied by a labelling that depends only on the
    // tuple, then canonicalized once per distinct shape.
    let shapes: HashMap<u32, u64> = (0..m)
        .into_par_iter()
        .map(|first| {
            let mut local: HashMap<u32, u64> = HashMap::new();
            let mut idx = vec![0; k];
            idx[0] = first;
            loop {
                *local.entry(tuple_shape(edges, &idx)).or_default() += 1;
                // Odometer over positions 1..k.
                let mut pos = k;
                loop {
                    if pos == 1 {
                        return local;
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < m {
                        break;
                    }
                    idx[pos] = 0;
                }
            }
        })
        .reduce(HashMap::new, |mut a, b| {
            for (s, c) in b {
                *a.entry(s).or_default() += c;
            }
            a
        });
    let mut classes: BTreeMap<String, TupleClass> = BTreeMap::new();
    for (shape, count) in shapes {
        let pattern = shape_pattern(shape, k);
        classes
            .entry(pattern.key.clone())
            .and_modify(|c| c.count += count)
            .or_insert(TupleClass { pattern, count });
    }
    let total = classes.values().map(|c| c.count).sum();
    Ok(TupleCensus { k, total, classes })
}

/// Packs a tuple into 8 bits per edge after relabelling its vertices by
/// first appearance.
fn tuple_shape(edges: &[(usize, usize)], idx: &[usize]) -> u32 {
    let mut seen = [usize::MAX; 2 * MAX_TUPLE_LENGTH];
    let mut used = 0;
    let mut label = |v: usize| -> u32 {
        for (i, &s) in seen[..used].iter().enumerate() {
            if s == v {
                return i as u32;
            }
        }
        seen[used] = v;
        used += 1;
        (used - 1) as u32
    };
    let mut shape = 0u32;
    for &e in idx {
        let (u, v) = edges[e];
        let (a, b) = (label(u), label(v));
        shape = (shape << 8) | (a.min(b) << 4) | a.max(b);
    }
    shape
}

fn shape_pattern(shape: u32, k: usize) -> MultiGraphPattern {
    let mut list = Vec::with_capacity(k);
    for i in (0..k).rev() {
        let byte = (shape >> (8 * i)) & 0xff;
        list.push(((byte >> 4) as usize, (byte & 0xf) as usize));
    }
    let n = list.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
    MultiGraphPattern::from_multiedges(n, &list).expect("tuple shapes are valid multigraphs")
}

/// Homomorphism density `t(C_g, G) = tr(A^g) / n^g`, from the spectrum.
pub fn hom_density_cycle(g: &Graph, len: usize) -> Result<f64> {
    if len < 2 {
        return Err(Error::InvalidInput(format!("cycle length {len} < 2")));
    }
    if g.n() == 0 || g.m() == 0 {
        return Ok(0.0);
    }
    let spectrum = spectral::eigenvalues(g)?;
    Ok(spectrum.power_sum(len as i32) / (g.n() as f64).powi(len as i32))
}

/// Component of a multigraph with `d_min >= 2` and `|V| = |E|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum TightComponent {
    DoubledEdge,
    Cycle(usize),
}

/// Splits a multigraph with minimum degree at least 2 and as many edges as
/// vertices into its components, each a simple cycle or an isolated doubled
/// edge. Components are returned sorted (doubled edges first, then cycles by
/// length).
///
/// # Panics
///
/// If a component is neither shape. That cannot happen for valid input and
/// indicates a bug.
pub fn decompose_tight_multigraph(h: &MultiGraphPattern) -> Result<Vec<TightComponent>> {
    if h.min_degree() < 2 {
        return Err(Error::PreconditionViolated("pattern has a vertex of degree below 2".into()));
    }
    if h.vertex_count() != h.edge_count() {
        return Err(Error::PreconditionViolated(format!(
            "|V| = {} differs from |E| = {}",
            h.vertex_count(),
            h.edge_count()
        )));
    }
    let (label, count) = h.simple().components();
    let mut out = Vec::with_capacity(count);
    for c in 0..count {
        let verts = label.iter().filter(|&&l| l == c).count();
        let comp: Vec<_> = h.edges.iter().filter(|e| label[e.0] == c).collect();
        let total: u32 = comp.iter().map(|e| e.2).sum();
        if verts == 2 && comp.len() == 1 && total == 2 {
            out.push(TightComponent::DoubledEdge);
        } else if comp.iter().all(|e| e.2 == 1) && comp.len() == verts {
            let mut deg = vec![0; h.n];
            for e in &comp {
                deg[e.0] += 1;
                deg[e.1] += 1;
            }
            assert!(
                deg.iter().enumerate().all(|(v, &d)| label[v] != c || d == 2),
                "component is not a cycle"
            );
            out.push(TightComponent::Cycle(verts));
        } else {
            panic!("tight multigraph component is neither a cycle nor a doubled edge: {comp:?}");
        }
    }
    out.sort();
    Ok(out)
}
