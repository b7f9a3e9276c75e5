//! Path decompositions: validity, width, clique containment, and the
//! constructive transforms used by the composition pipeline (inflation
//! lifting/normalization/projection and bag splicing).

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{inflate, Graph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecompError {
    #[error("a path decomposition needs at least one bag")]
    EmptySequence,
    #[error("bag vertex {v} out of range for {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("input decomposition is not valid for the given graph")]
    InvalidInput,
    #[error("decomposition is not normalized for inflation groups of size {k}")]
    NotNormalized { k: usize },
    #[error("bag index {at} out of range for {len} bags")]
    BagIndexOutOfRange { at: usize, len: usize },
    #[error("empty bags cannot be serialized")]
    EmptyBag,
    #[error("decomposition text: {0}")]
    Parse(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub type Bag = BTreeSet<usize>;

/// Ordered sequence of vertex bags. Validity against a host graph is a
/// separate checked predicate, not a construction-time invariant; empty bags
/// are permitted mid-pipeline (splicing pads) and dropped on normalization.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathDecomposition {
    bags: Vec<Bag>,
}

impl PathDecomposition {
    pub fn from_bags(bags: Vec<Bag>) -> Result<Self, DecompError> {
        if bags.is_empty() {
            return Err(DecompError::EmptySequence);
        }
        Ok(PathDecomposition { bags })
    }

    pub fn single_bag(bag: Bag) -> Self {
        PathDecomposition { bags: vec![bag] }
    }

    pub fn bags(&self) -> &[Bag] {
        &self.bags
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0)
    }

    /// Maximum bag size minus one. A decomposition whose bags are all empty
    /// (padding only) reports width 0.
    pub fn width(&self) -> usize {
        self.max_bag_size().saturating_sub(1)
    }

    /// Checks conditions (i) vertex cover, (ii) edge realization and
    /// (iii) convexity against `g`. Out-of-range bag members are an error,
    /// not a `false`.
    pub fn validate(&self, g: &Graph) -> Result<bool, DecompError> {
        for bag in &self.bags {
            for &v in bag {
                if v >= g.n() {
                    return Err(DecompError::VertexOutOfRange { v, n: g.n() });
                }
            }
        }
        let mut covered = vec![false; g.n()];
        for bag in &self.bags {
            for &v in bag {
                covered[v] = true;
            }
        }
        if covered.iter().any(|c| !c) {
            return Ok(false);
        }
        for (u, v) in g.edges() {
            if !self.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
                return Ok(false);
            }
        }
        for v in 0..g.n() {
            let first = self.bags.iter().position(|b| b.contains(&v)).expect("covered");
            let last = self.bags.iter().rposition(|b| b.contains(&v)).expect("covered");
            if !(first..=last).all(|i| self.bags[i].contains(&v)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Index of the first bag containing all of `s`, if any. The empty set is
    /// contained in bag 0.
    pub fn find_bag_containing(&self, s: &Bag) -> Option<usize> {
        self.bags.iter().position(|b| s.is_subset(b))
    }

    /// Removes adjacent duplicate bags. Only called explicitly; the transforms
    /// deliberately keep replicated bags.
    pub fn compact(&self) -> Self {
        let mut bags: Vec<Bag> = Vec::with_capacity(self.bags.len());
        for bag in &self.bags {
            if bags.last() != Some(bag) {
                bags.push(bag.clone());
            }
        }
        PathDecomposition { bags }
    }

    pub fn drop_empty_bags(&self) -> Result<Self, DecompError> {
        let bags: Vec<Bag> = self.bags.iter().filter(|b| !b.is_empty()).cloned().collect();
        PathDecomposition::from_bags(bags)
    }

    pub fn map_vertices(&self, f: impl Fn(usize) -> usize) -> Self {
        let bags = self.bags.iter().map(|b| b.iter().map(|&v| f(v)).collect()).collect();
        PathDecomposition { bags }
    }

    pub fn shifted(&self, offset: usize) -> Self {
        self.map_vertices(|v| v + offset)
    }

    /// One bag per line, space-separated ascending vertex indices.
    pub fn to_text(&self) -> Result<String, DecompError> {
        let mut s = String::new();
        for bag in &self.bags {
            if bag.is_empty() {
                return Err(DecompError::EmptyBag);
            }
            let line: Vec<String> = bag.iter().map(|v| v.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        Ok(s)
    }

    /// Parses the text format. `#` starts a comment; blank lines are skipped.
    pub fn from_text(input: &str) -> Result<Self, DecompError> {
        let mut bags = Vec::new();
        for line in input.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut bag = Bag::new();
            for tok in line.split_whitespace() {
                let v: usize = tok
                    .parse()
                    .map_err(|_| DecompError::Parse(format!("bad vertex index '{tok}'")))?;
                bag.insert(v);
            }
            bags.push(bag);
        }
        PathDecomposition::from_bags(bags)
    }
}

/// Standard vertex-separation-to-decomposition conversion: bag `i` is the
/// boundary of the first `i` vertices of `order` plus the next vertex.
pub fn decomposition_from_order(g: &Graph, order: &[usize]) -> Result<PathDecomposition, DecompError> {
    if order.len() != g.n() {
        return Err(DecompError::InvalidInput);
    }
    let mut placed = 0u128;
    let mut bags = Vec::with_capacity(order.len());
    for &v in order {
        let mut bag: Bag = (0..g.n())
            .filter(|&u| placed & (1u128 << u) != 0 && g.neighbors_mask(u) & !placed != 0)
            .collect();
        bag.insert(v);
        bags.push(bag);
        placed |= 1u128 << v;
    }
    PathDecomposition::from_bags(bags)
}

/// Replaces every occurrence of a vertex `v` by its `k` copies
/// `v*k .. v*k+k-1`, turning a decomposition of `g` into one of
/// `inflate(g, k)`. Every bag size is multiplied by `k`.
pub fn lift_inflation(
    p: &PathDecomposition,
    g: &Graph,
    k: usize,
) -> Result<PathDecomposition, DecompError> {
    if k == 0 {
        return Err(DecompError::Graph(GraphError::ZeroInflation));
    }
    if !p.validate(g)? {
        return Err(DecompError::InvalidInput);
    }
    let bags = p
        .bags
        .iter()
        .map(|bag| bag.iter().flat_map(|&v| (0..k).map(move |i| v * k + i)).collect())
        .collect();
    Ok(PathDecomposition { bags })
}

/// Rebuilds each bag from exactly the copy groups it fully contains, yielding
/// an all-or-none decomposition of `inflate(g, k)` of no larger width. Bag
/// count is kept fixed during the rewrite, then empty bags are dropped.
pub fn normalize_inflation(
    p: &PathDecomposition,
    g: &Graph,
    k: usize,
) -> Result<PathDecomposition, DecompError> {
    let inflated = inflate(g, k)?;
    if !p.validate(&inflated)? {
        return Err(DecompError::InvalidInput);
    }
    let mut bags = Vec::with_capacity(p.len());
    for bag in &p.bags {
        let mut rebuilt = Bag::new();
        for v in 0..g.n() {
            let group: Bag = (0..k).map(|i| v * k + i).collect();
            if group.is_subset(bag) {
                rebuilt.extend(group);
            }
        }
        bags.push(rebuilt);
    }
    PathDecomposition::from_bags(bags)?.drop_empty_bags()
}

/// Keeps only copy index 0 of every group, mapping `v*k` back to `v`. Input
/// must be all-or-none normalized; for `k == 1` this is the identity.
pub fn project_inflation(
    p_norm: &PathDecomposition,
    g: &Graph,
    k: usize,
) -> Result<PathDecomposition, DecompError> {
    if k == 0 {
        return Err(DecompError::Graph(GraphError::ZeroInflation));
    }
    let mut bags = Vec::with_capacity(p_norm.len());
    for bag in &p_norm.bags {
        let mut projected = Bag::new();
        for v in 0..g.n() {
            let present = (0..k).filter(|i| bag.contains(&(v * k + i))).count();
            if present == k {
                projected.insert(v);
            } else if present != 0 {
                return Err(DecompError::NotNormalized { k });
            }
        }
        bags.push(projected);
    }
    PathDecomposition::from_bags(bags)
}

/// Splices `inner` into `host` at bag `at`: deletes `remove` from every bag,
/// replicates bag `at` `inner.len() - 1` times, and unions the i-th inner bag
/// into the i-th replica. Caller supplies disjoint index spaces for `inner`.
pub fn splice(
    host: &PathDecomposition,
    at: usize,
    remove: &Bag,
    inner: &PathDecomposition,
) -> Result<PathDecomposition, DecompError> {
    if at >= host.len() {
        return Err(DecompError::BagIndexOutOfRange { at, len: host.len() });
    }
    let cleaned: Vec<Bag> = host
        .bags
        .iter()
        .map(|b| b.difference(remove).copied().collect())
        .collect();
    let mut bags = Vec::with_capacity(cleaned.len() + inner.len() - 1);
    bags.extend_from_slice(&cleaned[..at]);
    for inner_bag in &inner.bags {
        let mut replica = cleaned[at].clone();
        replica.extend(inner_bag.iter().copied());
        bags.push(replica);
    }
    bags.extend_from_slice(&cleaned[at + 1..]);
    PathDecomposition::from_bags(bags)
}
