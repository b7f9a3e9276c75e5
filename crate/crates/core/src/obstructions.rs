//! The ternary-tree obstruction family: complete ternary trees T^i, the
//! pendant-augmented graphs T~^i that are minor-minimal pathwidth
//! obstructions, and the rule composing three acyclic obstructions into one
//! for the next width.

use thiserror::Error;

use crate::graph::{disjoint_union, Graph, GraphError, MAX_VERTICES};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("height {height} needs {needed} vertices, limit is {max}")]
    CapExceeded { height: usize, needed: usize, max: usize },
    #[error("composition inputs must be acyclic")]
    NotAcyclic,
    #[error("composition inputs must be connected")]
    NotConnected,
    #[error("anchor vertex {a} out of range for {n} vertices")]
    AnchorOutOfRange { a: usize, n: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// T~^s with its breadth-first labelling: `leaves[i]` is the degree-one
/// pendant x^i, `parents[i]` its unique neighbour y^i.
#[derive(Clone, Debug)]
pub struct LabeledObstruction {
    pub graph: Graph,
    pub root: usize,
    pub leaves: Vec<usize>,
    pub parents: Vec<usize>,
}

fn tree_size(height: usize) -> usize {
    (3usize.pow(height as u32 + 1) - 1) / 2
}

/// Complete ternary tree of height `i` with 3^i leaves, numbered breadth
/// first from the root at 0.
pub fn ternary_tree(height: usize) -> Result<Graph, ObstructionError> {
    let n = tree_size_checked(height, 0)?;
    let mut g = Graph::new(n)?;
    for level in 0..height {
        let start = (3usize.pow(level as u32) - 1) / 2;
        let next_start = (3usize.pow(level as u32 + 1) - 1) / 2;
        let count = 3usize.pow(level as u32);
        for offset in 0..count {
            let v = start + offset;
            for c in 0..3 {
                g.add_edge(v, next_start + 3 * offset + c)?;
            }
        }
    }
    Ok(g)
}

fn tree_size_checked(height: usize, extra_leaves: usize) -> Result<usize, ObstructionError> {
    if height > 7 {
        // 3^(h+1) overflows nothing here, but anything past the vertex cap is pointless
        return Err(ObstructionError::CapExceeded {
            height,
            needed: usize::MAX,
            max: MAX_VERTICES,
        });
    }
    let needed = tree_size(height) + extra_leaves;
    if needed > MAX_VERTICES {
        return Err(ObstructionError::CapExceeded { height, needed, max: MAX_VERTICES });
    }
    Ok(needed)
}

/// T~^i: the ternary tree of height `i` with one new pendant vertex attached
/// to each leaf. Pendants are appended after the tree vertices in leaf order.
pub fn ternary_tree_obstruction(height: usize) -> Result<LabeledObstruction, ObstructionError> {
    let t = 3usize.pow(height as u32);
    let n_tree = tree_size_checked(height, t)? - t;
    let tree = ternary_tree(height)?;
    let mut g = Graph::new(n_tree + t)?;
    for (u, v) in tree.edges() {
        g.add_edge(u, v)?;
    }
    let leaf_start = n_tree - t; // deepest level of the tree
    let mut leaves = Vec::with_capacity(t);
    let mut parents = Vec::with_capacity(t);
    for j in 0..t {
        let pendant = n_tree + j;
        g.add_edge(leaf_start + j, pendant)?;
        leaves.push(pendant);
        parents.push(leaf_start + j);
    }
    Ok(LabeledObstruction { graph: g, root: 0, leaves, parents })
}

/// Disjoint union of three acyclic connected graphs plus a new apex adjacent
/// to one anchor in each. If the inputs are minor-minimal obstructions to
/// pathwidth k, the result is one to pathwidth k+1.
pub fn compose_obstructions(
    g1: &Graph,
    g2: &Graph,
    g3: &Graph,
    a1: usize,
    a2: usize,
    a3: usize,
) -> Result<Graph, ObstructionError> {
    for (g, a) in [(g1, a1), (g2, a2), (g3, a3)] {
        if !g.is_acyclic() {
            return Err(ObstructionError::NotAcyclic);
        }
        if !g.is_connected() {
            return Err(ObstructionError::NotConnected);
        }
        if a >= g.n() {
            return Err(ObstructionError::AnchorOutOfRange { a, n: g.n() });
        }
    }
    let parts = disjoint_union(&[g1.clone(), g2.clone(), g3.clone()])?;
    let apex = parts.n();
    let mut g = Graph::new(apex + 1)?;
    for (u, v) in parts.edges() {
        g.add_edge(u, v)?;
    }
    g.add_edge(apex, a1)?;
    g.add_edge(apex, g1.n() + a2)?;
    g.add_edge(apex, g1.n() + g2.n() + a3)?;
    Ok(g)
}
