//! Simple undirected graphs over dense integer vertices 0..n-1, together with
//! the minor machinery used everywhere else: joins, disjoint unions, inflation,
//! one-step minors, a brute-force minor test, cliques, components and a
//! permutation-search canonical form for small graphs.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

/// Hard representation limit: adjacency rows are `u128` bitmasks.
pub const MAX_VERTICES: usize = 128;
/// Default cap for the permutation-search canonical form.
pub const CANONICAL_CAP: usize = 8;
/// Cap on `|V(h)|` in the brute-force minor test.
pub const MINOR_TEST_CAP: usize = 8;
/// Cap for the branch-and-bound maximum-clique solver.
pub const CLIQUE_CAP: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graphs must have at least one vertex")]
    Empty,
    #[error("graph has {n} vertices, limit is {max}")]
    TooLarge { n: usize, max: usize },
    #[error("vertex {v} out of range for {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },
    #[error("operation capped at {cap} vertices, got {n}")]
    CapExceeded { n: usize, cap: usize },
    #[error("not a permutation of 0..{n}")]
    BadPermutation { n: usize },
    #[error("disjoint union of an empty list")]
    EmptyUnion,
    #[error("inflation factor must be at least 1")]
    ZeroInflation,
    #[error("graph text: {0}")]
    Parse(String),
}

/// Finite simple undirected graph. Vertices are `0..n`, edges are unordered
/// pairs of distinct vertices. The empty graph (`n == 0`) is rejected.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u128>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge { n, max: MAX_VERTICES });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn with_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange { v: u, n: self.n });
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { v, n: self.n });
        }
        if u == v {
            return Err(GraphError::SelfLoop { v });
        }
        self.adj[u] |= 1u128 << v;
        self.adj[v] |= 1u128 << u;
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & (1u128 << v) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Neighbourhood of `v` as a bitmask.
    pub fn neighbors_mask(&self, v: usize) -> u128 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let mask = self.adj[v];
        (0..self.n).filter(move |&u| mask & (1u128 << u) != 0)
    }

    /// Edges as sorted pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self, GraphError> {
        if perm.len() != self.n || !is_permutation(perm) {
            return Err(GraphError::BadPermutation { n: self.n });
        }
        let mut g = Graph::new(self.n)?;
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v])?;
        }
        Ok(g)
    }

    /// Deletes vertex `v`; higher-numbered vertices shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Self, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { v, n: self.n });
        }
        if self.n == 1 {
            return Err(GraphError::Empty);
        }
        let mut g = Graph::new(self.n - 1)?;
        for (a, b) in self.edges() {
            if a == v || b == v {
                continue;
            }
            let map = |w: usize| if w > v { w - 1 } else { w };
            g.add_edge(map(a), map(b))?;
        }
        Ok(g)
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Self {
        let mut g = self.clone();
        g.adj[u] &= !(1u128 << v);
        g.adj[v] &= !(1u128 << u);
        g
    }

    /// Contracts edge `{u, v}` into `min(u, v)`, dropping loops and parallel
    /// edges, then compacts vertex numbers order-preservingly.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        debug_assert!(self.has_edge(u, v));
        let (keep, gone) = (u.min(v), u.max(v));
        let mut merged = self.clone();
        merged.adj[keep] |= merged.adj[gone];
        merged.adj[keep] &= !(1u128 << keep) & !(1u128 << gone);
        for w in 0..self.n {
            if merged.adj[keep] & (1u128 << w) != 0 {
                merged.adj[w] |= 1u128 << keep;
            }
        }
        merged.adj[gone] = 0;
        for w in 0..self.n {
            merged.adj[w] &= !(1u128 << gone);
        }
        merged.delete_isolated(gone)
    }

    fn delete_isolated(&self, v: usize) -> Result<Self, GraphError> {
        // same compaction as delete_vertex, v known isolated
        self.delete_vertex(v)
    }

    /// Induced subgraph on the vertices of `mask`, renumbered in ascending
    /// order. Returns the subgraph and the local-to-global index map.
    pub fn induced_subgraph(&self, mask: u128) -> Result<(Self, Vec<usize>), GraphError> {
        let verts: Vec<usize> = (0..self.n).filter(|&v| mask & (1u128 << v) != 0).collect();
        if verts.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut g = Graph::new(verts.len())?;
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok((g, verts))
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = 1u128;
        let mut frontier = 1u128;
        while frontier != 0 {
            let mut next = 0u128;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == self.n
    }

    /// A forest: acyclic, possibly disconnected.
    pub fn is_acyclic(&self) -> bool {
        self.edge_count() + connected_components(self).len() == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() == self.n - 1
    }

    /// True if the vertices of `mask` are pairwise adjacent.
    pub fn is_clique(&self, mask: u128) -> bool {
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            if mask & !(self.adj[v] | (1u128 << v)) != 0 {
                return false;
            }
        }
        true
    }

    // ---- generators -------------------------------------------------------

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::new(n)?;
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    pub fn edgeless(n: usize) -> Result<Self, GraphError> {
        Graph::new(n)
    }

    /// Path on `n` vertices: 0-1-2-...-(n-1).
    pub fn path_graph(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::new(n)?;
        for v in 1..n {
            g.add_edge(v - 1, v)?;
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::Parse(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let mut g = Graph::path_graph(n)?;
        g.add_edge(n - 1, 0)?;
        Ok(g)
    }

    /// Star with `leaves` leaves; the hub is vertex 0.
    pub fn star(leaves: usize) -> Result<Self, GraphError> {
        let mut g = Graph::new(leaves + 1)?;
        for v in 1..=leaves {
            g.add_edge(0, v)?;
        }
        Ok(g)
    }

    /// Wheel: cycle on vertices `0..rim` plus a hub `rim` adjacent to all.
    pub fn wheel(rim: usize) -> Result<Self, GraphError> {
        let mut g = Graph::cycle(rim)?;
        let mut w = Graph::new(rim + 1)?;
        for (u, v) in g.edges() {
            w.add_edge(u, v)?;
        }
        for v in 0..rim {
            w.add_edge(v, rim)?;
        }
        g = w;
        Ok(g)
    }

    // ---- text format ------------------------------------------------------

    /// Canonical text form: `"n m"` header, then one `"u v"` line per edge in
    /// ascending order.
    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Parses the text format. `#` starts a comment; blank lines are skipped.
    pub fn from_text(input: &str) -> Result<Self, GraphError> {
        let mut lines = input
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| GraphError::Parse("missing 'n m' header".into()))?;
        let mut it = header.split_whitespace();
        let n: usize = parse_num(it.next(), "vertex count")?;
        let m: usize = parse_num(it.next(), "edge count")?;
        if it.next().is_some() {
            return Err(GraphError::Parse("trailing tokens after 'n m' header".into()));
        }
        let mut g = Graph::new(n)?;
        for _ in 0..m {
            let line = lines
                .next()
                .ok_or_else(|| GraphError::Parse(format!("expected {m} edge lines")))?;
            let mut it = line.split_whitespace();
            let u: usize = parse_num(it.next(), "edge endpoint")?;
            let v: usize = parse_num(it.next(), "edge endpoint")?;
            if it.next().is_some() {
                return Err(GraphError::Parse(format!("trailing tokens on edge line '{line}'")));
            }
            if g.has_edge(u, v) {
                return Err(GraphError::Parse(format!("duplicate edge {u} {v}")));
            }
            g.add_edge(u, v)?;
        }
        if lines.next().is_some() {
            return Err(GraphError::Parse("trailing lines after edge list".into()));
        }
        Ok(g)
    }
}

fn parse_num(tok: Option<&str>, what: &str) -> Result<usize, GraphError> {
    tok.ok_or_else(|| GraphError::Parse(format!("missing {what}")))?
        .parse()
        .map_err(|_| GraphError::Parse(format!("bad {what}")))
}

fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

/// Join: disjoint union of `g1` and `g2` plus all edges between them.
pub fn join(g1: &Graph, g2: &Graph) -> Result<Graph, GraphError> {
    let n1 = g1.n();
    let mut g = disjoint_union(&[g1.clone(), g2.clone()])?;
    for u in 0..n1 {
        for v in 0..g2.n() {
            g.add_edge(u, n1 + v)?;
        }
    }
    Ok(g)
}

/// Vertex-shifted union; component structure is preserved.
pub fn disjoint_union(gs: &[Graph]) -> Result<Graph, GraphError> {
    if gs.is_empty() {
        return Err(GraphError::EmptyUnion);
    }
    let total: usize = gs.iter().map(|g| g.n()).sum();
    let mut g = Graph::new(total)?;
    let mut offset = 0;
    for part in gs {
        for (u, v) in part.edges() {
            g.add_edge(offset + u, offset + v)?;
        }
        offset += part.n();
    }
    Ok(g)
}

/// Inflation `G ⋄ k`: each vertex becomes a k-clique of copies, each edge a
/// complete join between copy groups. Copy `i` of vertex `v` is `v*k + i`.
pub fn inflate(g: &Graph, k: usize) -> Result<Graph, GraphError> {
    if k == 0 {
        return Err(GraphError::ZeroInflation);
    }
    let n = g.n() * k;
    let mut out = Graph::new(n)?;
    for v in 0..g.n() {
        for i in 0..k {
            for j in (i + 1)..k {
                out.add_edge(v * k + i, v * k + j)?;
            }
        }
    }
    for (u, v) in g.edges() {
        for i in 0..k {
            for j in 0..k {
                out.add_edge(u * k + i, v * k + j)?;
            }
        }
    }
    Ok(out)
}

/// All graphs one vertex deletion, one edge deletion, or one edge contraction
/// away from `g`. No deduplication; vertex deletions require `n >= 2`.
pub fn one_step_minors(g: &Graph) -> Vec<Graph> {
    let mut out = Vec::new();
    if g.n() >= 2 {
        for v in 0..g.n() {
            out.push(g.delete_vertex(v).expect("n >= 2"));
        }
    }
    for (u, v) in g.edges() {
        out.push(g.delete_edge(u, v));
    }
    for (u, v) in g.edges() {
        out.push(g.contract_edge(u, v).expect("edge exists"));
    }
    out
}

/// Brute-force minor test: searches for disjoint connected branch sets in `g`,
/// one per vertex of `h`, realizing every edge of `h`. Correctness over speed.
pub fn is_minor(h: &Graph, g: &Graph) -> Result<bool, GraphError> {
    if h.n() > MINOR_TEST_CAP {
        return Err(GraphError::CapExceeded { n: h.n(), cap: MINOR_TEST_CAP });
    }
    if h.n() > g.n() || h.edge_count() > g.edge_count() {
        return Ok(false);
    }
    let mut branch_sets = vec![0u128; h.n()];
    Ok(assign_branch_sets(h, g, 0, &mut branch_sets))
}

fn assign_branch_sets(h: &Graph, g: &Graph, next: usize, branch_sets: &mut Vec<u128>) -> bool {
    let empty = branch_sets.iter().filter(|&&m| m == 0).count();
    if g.n() - next < empty {
        return false;
    }
    if next == g.n() {
        return check_branch_sets(h, g, branch_sets);
    }
    // leave `next` unused
    if assign_branch_sets(h, g, next + 1, branch_sets) {
        return true;
    }
    for class in 0..h.n() {
        branch_sets[class] |= 1u128 << next;
        if assign_branch_sets(h, g, next + 1, branch_sets) {
            branch_sets[class] &= !(1u128 << next);
            return true;
        }
        branch_sets[class] &= !(1u128 << next);
    }
    false
}

fn check_branch_sets(h: &Graph, g: &Graph, branch_sets: &[u128]) -> bool {
    for &set in branch_sets {
        if set == 0 || !mask_connected(g, set) {
            return false;
        }
    }
    for (a, b) in h.edges() {
        if !sets_touch(g, branch_sets[a], branch_sets[b]) {
            return false;
        }
    }
    true
}

fn mask_connected(g: &Graph, mask: u128) -> bool {
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u128 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u128;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= g.neighbors_mask(v) & mask;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen & mask == mask
}

fn sets_touch(g: &Graph, a: u128, b: u128) -> bool {
    let mut m = a;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        if g.neighbors_mask(v) & b != 0 {
            return true;
        }
    }
    false
}

/// Maximum clique size by branch and bound.
pub fn clique_number(g: &Graph) -> Result<usize, GraphError> {
    if g.n() > CLIQUE_CAP {
        return Err(GraphError::CapExceeded { n: g.n(), cap: CLIQUE_CAP });
    }
    let mut best = 0;
    let all = if g.n() == 128 { !0u128 } else { (1u128 << g.n()) - 1 };
    clique_bb(g, 0, all, &mut best);
    Ok(best)
}

fn clique_bb(g: &Graph, current: usize, cand: u128, best: &mut usize) {
    if current + cand.count_ones() as usize <= *best {
        return;
    }
    if cand == 0 {
        *best = (*best).max(current);
        return;
    }
    let v = cand.trailing_zeros() as usize;
    clique_bb(g, current + 1, cand & g.neighbors_mask(v), best);
    clique_bb(g, current, cand & !(1u128 << v), best);
}

/// Maximal connected induced subgraphs, each with its local-to-global vertex
/// map, ordered by smallest contained vertex.
pub fn connected_components(g: &Graph) -> Vec<(Graph, Vec<usize>)> {
    let mut seen = 0u128;
    let mut out = Vec::new();
    for v in 0..g.n() {
        if seen & (1u128 << v) != 0 {
            continue;
        }
        let mut comp = 1u128 << v;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0u128;
            let mut f = frontier;
            while f != 0 {
                let w = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= g.neighbors_mask(w);
            }
            frontier = next & !comp;
            comp |= next;
        }
        seen |= comp;
        out.push(g.induced_subgraph(comp).expect("component nonempty"));
    }
    out
}

/// Lexicographically minimal row-major adjacency-matrix bit string over all
/// vertex permutations, one ASCII `'0'`/`'1'` byte per matrix cell. Two graphs
/// within the cap have equal codes iff they are isomorphic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalForm {
    pub code: Vec<u8>,
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, GraphError> {
    canonical_form_capped(g, CANONICAL_CAP)
}

pub fn canonical_form_capped(g: &Graph, cap: usize) -> Result<CanonicalForm, GraphError> {
    let n = g.n();
    if n > cap || n * n > 128 {
        return Err(GraphError::CapExceeded { n, cap: cap.min(11) });
    }
    let mut best = u128::MAX;
    for perm in (0..n).permutations(n) {
        // perm[i] = original vertex placed at position i
        let mut bits = 0u128;
        for i in 0..n {
            for j in 0..n {
                if g.has_edge(perm[i], perm[j]) {
                    bits |= 1u128 << (127 - (i * n + j));
                }
            }
        }
        best = best.min(bits);
    }
    let mut code = Vec::with_capacity(n * n);
    for p in 0..(n * n) {
        code.push(if best & (1u128 << (127 - p)) != 0 { b'1' } else { b'0' });
    }
    Ok(CanonicalForm { code })
}

/// The canonical representative itself, rebuilt from the canonical code.
pub fn canonical_graph(g: &Graph) -> Result<Graph, GraphError> {
    let form = canonical_form(g)?;
    let n = g.n();
    let mut out = Graph::new(n)?;
    for u in 0..n {
        for v in (u + 1)..n {
            if form.code[u * n + v] == b'1' {
                out.add_edge(u, v)?;
            }
        }
    }
    Ok(out)
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool, GraphError> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)?.code == canonical_form(b)?.code)
}

/// All labeled graphs on exactly `n` vertices, in edge-mask order.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let mut out = Vec::with_capacity(1 << pairs.len());
    for mask in 0u64..(1u64 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect();
        out.push(Graph::with_edges(n, &edges).expect("valid enumeration"));
    }
    out
}

/// One representative per isomorphism class of graphs on exactly `n` vertices.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for g in all_graphs(n) {
        let code = canonical_form(&g).expect("within cap").code;
        if seen.insert(code) {
            out.push(canonical_graph(&g).expect("within cap"));
        }
    }
    out
}
