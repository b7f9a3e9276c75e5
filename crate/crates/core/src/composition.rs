//! The pathwidth-improvement problem, the reduction from plain pathwidth into
//! it, and the OR-cross-composition that embeds many improvement instances
//! into a single bounded-pathwidth question by inflating a ternary-tree
//! obstruction and replacing its inflated leaf cliques with the inputs.

use std::collections::BTreeSet;
use std::ops::Range;

use thiserror::Error;

use crate::decomp::{lift_inflation, splice, Bag, DecompError, PathDecomposition};
use crate::graph::{inflate, join, Graph, GraphError};
use crate::obstructions::{
    ternary_tree, ternary_tree_obstruction, LabeledObstruction, ObstructionError,
};
use crate::pwsolver::{pathwidth, pathwidth_le, SolverError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CompositionError {
    #[error("improvement instances need 2 <= k <= n, got k={k}, n={n}")]
    ParameterOutOfRange { k: usize, n: usize },
    #[error("supplied decomposition is not valid for the instance graph")]
    InvalidDecomposition,
    #[error("supplied decomposition has width {got}, need exactly {need}")]
    WrongWidth { got: usize, need: usize },
    #[error("input list is empty")]
    EmptyInputs,
    #[error("inputs are not equivalent (mixed parameters or well-formedness)")]
    NotEquivalent,
    #[error("input count {t} is not a power of three at least 3")]
    BadInputCount { t: usize },
    #[error("input index {i} out of range for {t} inputs")]
    IndexOutOfRange { i: usize, t: usize },
    #[error("witness decomposition has width {got}, need at most {need}")]
    WitnessTooWide { got: usize, need: usize },
    #[error("no bag contains an inflated clique that must share one")]
    MissingCliqueBag,
    #[error("instance text: {0}")]
    Parse(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Obstruction(#[from] ObstructionError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// An instance of the improvement problem: a graph, a bound `k`, and a
/// width-`(k-1)` decomposition certifying `pw(g) <= k-1`. The question it
/// carries is whether `pw(g) <= k-2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PwImprovementInstance {
    graph: Graph,
    k: usize,
    decomposition: PathDecomposition,
}

impl PwImprovementInstance {
    pub fn new(
        graph: Graph,
        k: usize,
        decomposition: PathDecomposition,
    ) -> Result<Self, CompositionError> {
        if k < 2 || k > graph.n() {
            return Err(CompositionError::ParameterOutOfRange { k, n: graph.n() });
        }
        if !decomposition.validate(&graph)? {
            return Err(CompositionError::InvalidDecomposition);
        }
        if decomposition.width() != k - 1 {
            return Err(CompositionError::WrongWidth {
                got: decomposition.width(),
                need: k - 1,
            });
        }
        Ok(PwImprovementInstance { graph, k, decomposition })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn decomposition(&self) -> &PathDecomposition {
        &self.decomposition
    }

    /// Decides the carried question `pw(g) <= k-2` exactly.
    pub fn is_yes(&self) -> Result<bool, SolverError> {
        pathwidth_le(&self.graph, self.k - 2)
    }

    /// Instance text: graph section, a `k <int>` line, decomposition section.
    pub fn to_text(&self) -> Result<String, CompositionError> {
        let mut s = self.graph.to_text();
        s.push_str(&format!("k {}\n", self.k));
        s.push_str(&self.decomposition.to_text()?);
        Ok(s)
    }

    pub fn from_text(input: &str) -> Result<Self, CompositionError> {
        let lines: Vec<&str> = input
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .collect();
        if lines.is_empty() {
            return Err(CompositionError::Parse("empty instance".into()));
        }
        let mut it = lines[0].split_whitespace();
        let _n: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| CompositionError::Parse("bad graph header".into()))?;
        let m: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| CompositionError::Parse("bad graph header".into()))?;
        let graph_end = 1 + m;
        if lines.len() < graph_end + 2 {
            return Err(CompositionError::Parse("truncated instance".into()));
        }
        let graph = Graph::from_text(&lines[..graph_end].join("\n"))?;
        let k_line = lines[graph_end];
        let k: usize = k_line
            .strip_prefix('k')
            .map(str::trim)
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| CompositionError::Parse(format!("expected 'k <int>', got '{k_line}'")))?;
        let decomposition = PathDecomposition::from_text(&lines[graph_end + 1..].join("\n"))
            .map_err(|e| CompositionError::Parse(e.to_string()))?;
        PwImprovementInstance::new(graph, k, decomposition)
    }
}

/// Outcome of reducing a plain pathwidth question to the improvement problem.
#[derive(Clone, Debug)]
pub enum Reduction {
    /// `k >= n - 1`: every graph has a decomposition of width `n - 1`.
    TrivialYes,
    Instance(PwImprovementInstance),
}

/// Joins `g` with an independent set of `n-k-1` vertices and hands out the
/// canonical width-`n` decomposition. The produced instance asks whether
/// `pw(g') <= k'-2`, which holds iff `pw(g) <= k`.
pub fn reduce_pathwidth_to_improvement(g: &Graph, k: usize) -> Result<Reduction, CompositionError> {
    let n = g.n();
    if k + 1 >= n {
        return Ok(Reduction::TrivialYes);
    }
    let i = n - k - 1;
    let g_prime = join(g, &Graph::edgeless(i)?)?;
    let k_prime = n + 1;
    let bags: Vec<Bag> = (0..i)
        .map(|j| {
            let mut bag: Bag = (0..n).collect();
            bag.insert(n + j);
            bag
        })
        .collect();
    let p_prime = PathDecomposition::from_bags(bags)?;
    Ok(Reduction::Instance(PwImprovementInstance::new(g_prime, k_prime, p_prime)?))
}

/// Byte-level equivalence used by the composition: malformed inputs form one
/// class, well-formed inputs are equivalent iff they ask for the same bound.
pub fn equivalent(a: &[u8], b: &[u8]) -> bool {
    let parse = |bytes: &[u8]| {
        std::str::from_utf8(bytes)
            .ok()
            .and_then(|s| PwImprovementInstance::from_text(s).ok())
    };
    match (parse(a), parse(b)) {
        (None, None) => true,
        (Some(x), Some(y)) => x.k == y.k,
        _ => false,
    }
}

/// Duplicates inputs until their count is a power of three at least 3. The OR
/// of the answers is unchanged and the list grows by a factor below three.
pub fn pad_to_power_of_three(
    inputs: &[PwImprovementInstance],
) -> Result<Vec<PwImprovementInstance>, CompositionError> {
    if inputs.is_empty() {
        return Err(CompositionError::EmptyInputs);
    }
    if inputs.iter().any(|i| i.k != inputs[0].k) {
        return Err(CompositionError::NotEquivalent);
    }
    let mut target = 3;
    while target < inputs.len() {
        target *= 3;
    }
    Ok((0..target).map(|i| inputs[i % inputs.len()].clone()).collect())
}

/// The composed instance `(g', k')` plus full provenance: the labelled
/// obstruction, the shared parameters, the original inputs and the vertex
/// range each occupies inside `g'`.
#[derive(Clone, Debug)]
pub struct ComposedInstance {
    pub graph: Graph,
    pub k_prime: usize,
    pub k: usize,
    pub s: usize,
    pub obstruction: LabeledObstruction,
    pub inputs: Vec<PwImprovementInstance>,
    pub input_ranges: Vec<Range<usize>>,
}

fn power_of_three_log(t: usize) -> Option<usize> {
    let mut p = 1;
    let mut s = 0;
    while p < t {
        p *= 3;
        s += 1;
    }
    (p == t).then_some(s)
}

/// Builds `g'` from `t = 3^s` equivalent inputs: inflate the ternary-tree
/// part of the obstruction by `k` (blocks `v*k..v*k+k-1` in breadth-first
/// order), then append each input graph and join it to the `k` copies of the
/// parent of "its" pendant. `k' = k(s+2) - 2`.
pub fn cross_compose(inputs: &[PwImprovementInstance]) -> Result<ComposedInstance, CompositionError> {
    if inputs.is_empty() {
        return Err(CompositionError::EmptyInputs);
    }
    let k = inputs[0].k;
    if inputs.iter().any(|i| i.k != k) {
        return Err(CompositionError::NotEquivalent);
    }
    let t = inputs.len();
    let s = match power_of_three_log(t) {
        Some(s) if s >= 1 => s,
        _ => return Err(CompositionError::BadInputCount { t }),
    };
    let obstruction = ternary_tree_obstruction(s)?;
    let tree = ternary_tree(s)?;
    let base = inflate(&tree, k)?;
    let core_n = tree.n() * k;
    let total: usize = core_n + inputs.iter().map(|i| i.graph.n()).sum::<usize>();

    let mut graph = Graph::new(total)?;
    for (u, v) in base.edges() {
        graph.add_edge(u, v)?;
    }
    let mut input_ranges = Vec::with_capacity(t);
    let mut offset = core_n;
    for (i, inst) in inputs.iter().enumerate() {
        let range = offset..offset + inst.graph.n();
        for (u, v) in inst.graph.edges() {
            graph.add_edge(offset + u, offset + v)?;
        }
        let parent = obstruction.parents[i];
        for v in range.clone() {
            for copy in 0..k {
                graph.add_edge(v, parent * k + copy)?;
            }
        }
        offset = range.end;
        input_ranges.push(range);
    }
    Ok(ComposedInstance {
        graph,
        k_prime: k * (s + 2) - 2,
        k,
        s,
        obstruction,
        inputs: inputs.to_vec(),
        input_ranges,
    })
}

/// Raw composition entry point over byte strings, including the malformed
/// equivalence class which maps to a fixed constant-size no-instance.
#[derive(Clone, Debug)]
pub enum ComposeOutcome {
    /// All inputs were malformed: a constant no-instance (K_4, k' = 2).
    ConstantNo { graph: Graph, k_prime: usize },
    Composed(Box<ComposedInstance>),
}

pub fn cross_compose_raw(raw_inputs: &[&[u8]]) -> Result<ComposeOutcome, CompositionError> {
    if raw_inputs.is_empty() {
        return Err(CompositionError::EmptyInputs);
    }
    if raw_inputs.iter().any(|r| !equivalent(raw_inputs[0], r)) {
        return Err(CompositionError::NotEquivalent);
    }
    let parsed: Vec<Option<PwImprovementInstance>> = raw_inputs
        .iter()
        .map(|r| {
            std::str::from_utf8(r)
                .ok()
                .and_then(|s| PwImprovementInstance::from_text(s).ok())
        })
        .collect();
    if parsed[0].is_none() {
        return Ok(ComposeOutcome::ConstantNo { graph: Graph::complete(4)?, k_prime: 2 });
    }
    let instances: Vec<PwImprovementInstance> = parsed.into_iter().map(|p| p.unwrap()).collect();
    let padded = pad_to_power_of_three(&instances)?;
    Ok(ComposeOutcome::Composed(Box::new(cross_compose(&padded)?)))
}

/// Constructive certificate for the "if" direction: given a witness that
/// input `i_star` is a yes-instance, produces a decomposition of the composed
/// graph of width at most `k'`, independent of the exact solver.
pub fn witness_decomposition(
    c: &ComposedInstance,
    i_star: usize,
    p_star: &PathDecomposition,
) -> Result<PathDecomposition, CompositionError> {
    let t = c.inputs.len();
    if i_star >= t {
        return Err(CompositionError::IndexOutOfRange { i: i_star, t });
    }
    if !p_star.validate(&c.inputs[i_star].graph)? {
        return Err(CompositionError::InvalidDecomposition);
    }
    if p_star.width() > c.k - 2 {
        return Err(CompositionError::WitnessTooWide { got: p_star.width(), need: c.k - 2 });
    }

    let k = c.k;
    let tree_n = c.obstruction.graph.n() - t;
    debug_assert_eq!(tree_n * k, c.input_ranges[0].start);

    // Optimal decomposition of the obstruction minus the pendant of i_star,
    // lifted by k. Pendant j lives at tree_n + j in the obstruction numbering.
    let deleted = c.obstruction.leaves[i_star];
    let reduced = c.obstruction.graph.delete_vertex(deleted)?;
    let p0 = pathwidth(&reduced)?.witness;
    let lifted = lift_inflation(&p0, &reduced, k)?;

    // Map into the composed graph's index space. Copies of surviving pendants
    // j != i_star get placeholder indices beyond g' and are spliced away.
    let uncompact = |w: usize| if w < deleted { w } else { w + 1 };
    let final_index = |w: usize, copy: usize| {
        if w < tree_n {
            w * k + copy
        } else {
            c.graph.n() + (w - tree_n) * k + copy
        }
    };
    let mut cur = lifted.map_vertices(|idx| final_index(uncompact(idx / k), idx % k));

    for j in 0..t {
        if j == i_star {
            continue;
        }
        let x_block: Bag = (0..k).map(|cp| final_index(tree_n + j, cp)).collect();
        let y_block: Bag = (0..k).map(|cp| c.obstruction.parents[j] * k + cp).collect();
        let both: Bag = x_block.union(&y_block).copied().collect();
        let at = cur
            .find_bag_containing(&both)
            .ok_or(CompositionError::MissingCliqueBag)?;
        let inner = c.inputs[j].decomposition.shifted(c.input_ranges[j].start);
        cur = splice(&cur, at, &x_block, &inner)?;
    }

    let y_star: Bag = (0..k).map(|cp| c.obstruction.parents[i_star] * k + cp).collect();
    let at = cur
        .find_bag_containing(&y_star)
        .ok_or(CompositionError::MissingCliqueBag)?;
    let inner = p_star.shifted(c.input_ranges[i_star].start);
    cur = splice(&cur, at, &Bag::new(), &inner)?;
    Ok(cur)
}

/// Side-by-side check of the OR semantics: the composed instance must answer
/// yes exactly when some input does.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrReport {
    pub composed_within_bound: bool,
    pub input_yes: Vec<bool>,
    pub agree: bool,
}

pub fn verify_or_semantics(c: &ComposedInstance) -> Result<OrReport, CompositionError> {
    let composed_within_bound = pathwidth_le(&c.graph, c.k_prime)?;
    let input_yes = c
        .inputs
        .iter()
        .map(|i| i.is_yes())
        .collect::<Result<Vec<bool>, SolverError>>()?;
    let any = input_yes.iter().any(|&b| b);
    Ok(OrReport { composed_within_bound, agree: composed_within_bound == any, input_yes })
}
