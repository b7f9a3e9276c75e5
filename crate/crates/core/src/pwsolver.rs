//! Exact pathwidth. The solver runs the vertex-separation subset DP
//! `f(S) = max(|boundary(S)|, min_{v in S} f(S \ {v}))` over all 2^n subsets
//! and reconstructs an optimal decomposition from the DP order. A separate
//! interval-supergraph oracle recomputes pathwidth by a completely different
//! route for cross-checking.

use thiserror::Error;

use crate::decomp::{decomposition_from_order, DecompError, PathDecomposition};
use crate::graph::{clique_number, one_step_minors, Graph, GraphError};

/// Default subset-DP cap (2^24 table entries).
pub const DEFAULT_SOLVER_CAP: usize = 24;
/// Hard ceiling; above this the table would not fit in memory anyway.
pub const MAX_SOLVER_CAP: usize = 30;
/// The interval oracle enumerates all 2^(missing edges) supergraphs.
pub const INTERVAL_ORACLE_CAP: usize = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("solver capped at {cap} vertices, got {n}")]
    CapExceeded { n: usize, cap: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Decomp(#[from] DecompError),
}

/// Exact pathwidth together with a witness decomposition achieving it.
#[derive(Clone, Debug)]
pub struct PwResult {
    pub value: usize,
    pub witness: PathDecomposition,
}

fn check_cap(n: usize, cap: usize) -> Result<(), SolverError> {
    let cap = cap.min(MAX_SOLVER_CAP);
    if n > cap {
        return Err(SolverError::CapExceeded { n, cap });
    }
    Ok(())
}

fn local_adjacency(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.neighbors_mask(v) as u64).collect()
}

/// Vertices of `s` that still have a neighbour outside `s`.
fn boundary_size(adj: &[u64], s: u64) -> u32 {
    let mut count = 0;
    let mut m = s;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        if adj[v] & !s != 0 {
            count += 1;
        }
    }
    count
}

pub fn pathwidth(g: &Graph) -> Result<PwResult, SolverError> {
    pathwidth_capped(g, DEFAULT_SOLVER_CAP)
}

pub fn pathwidth_capped(g: &Graph, cap: usize) -> Result<PwResult, SolverError> {
    let n = g.n();
    check_cap(n, cap)?;
    let adj = local_adjacency(g);
    let full: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };

    let mut table = vec![0u8; 1usize << n];
    for s in 1..=full {
        let mut best = u8::MAX;
        let mut m = s;
        while m != 0 {
            let v = m.trailing_zeros();
            m &= m - 1;
            best = best.min(table[(s ^ (1u64 << v)) as usize]);
        }
        table[s as usize] = best.max(boundary_size(&adj, s) as u8);
    }
    let value = table[full as usize] as usize;

    // Backtrack an optimal elimination order; ties break towards the smallest
    // vertex index so witnesses are reproducible.
    let mut order_rev = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let mut pick = 0;
        let mut best = u8::MAX;
        let mut m = s;
        while m != 0 {
            let v = m.trailing_zeros();
            m &= m - 1;
            let val = table[(s ^ (1u64 << v)) as usize];
            if val < best {
                best = val;
                pick = v;
            }
        }
        order_rev.push(pick as usize);
        s ^= 1u64 << pick;
    }
    order_rev.reverse();
    let witness = decomposition_from_order(g, &order_rev)?;
    debug_assert!(witness.validate(g).unwrap_or(false));
    debug_assert_eq!(witness.width(), value);
    Ok(PwResult { value, witness })
}

pub fn pathwidth_le(g: &Graph, k: usize) -> Result<bool, SolverError> {
    pathwidth_le_capped(g, k, DEFAULT_SOLVER_CAP)
}

/// Early-exit variant of the DP: states whose boundary already exceeds `k`
/// are pruned instead of expanded.
pub fn pathwidth_le_capped(g: &Graph, k: usize, cap: usize) -> Result<bool, SolverError> {
    let n = g.n();
    check_cap(n, cap)?;
    if k >= n.saturating_sub(1) {
        return Ok(true);
    }
    const INF: u8 = u8::MAX;
    let adj = local_adjacency(g);
    let full: u64 = (1u64 << n) - 1;
    let mut table = vec![0u8; 1usize << n];
    for s in 1..=full {
        let cost = boundary_size(&adj, s);
        if cost as usize > k {
            table[s as usize] = INF;
            continue;
        }
        let mut best = INF;
        let mut m = s;
        while m != 0 {
            let v = m.trailing_zeros();
            m &= m - 1;
            best = best.min(table[(s ^ (1u64 << v)) as usize]);
        }
        table[s as usize] = if best == INF { INF } else { best.max(cost as u8) };
    }
    Ok(table[full as usize] != INF)
}

/// Pathwidth as `min ω(H) - 1` over interval supergraphs `H` on the same
/// vertex set. Interval recognition brute-forces a consecutive arrangement of
/// the maximal cliques. Independent of the DP solver by construction.
pub fn pathwidth_via_interval(g: &Graph) -> Result<usize, SolverError> {
    let n = g.n();
    if n > INTERVAL_ORACLE_CAP {
        return Err(SolverError::CapExceeded { n, cap: INTERVAL_ORACLE_CAP });
    }
    let mut missing = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if !g.has_edge(u, v) {
                missing.push((u, v));
            }
        }
    }
    let mut best = usize::MAX;
    for mask in 0u32..(1u32 << missing.len()) {
        let mut h = g.clone();
        for (i, &(u, v)) in missing.iter().enumerate() {
            if mask & (1 << i) != 0 {
                h.add_edge(u, v)?;
            }
        }
        if is_interval(&h) {
            best = best.min(clique_number(&h)? - 1);
        }
    }
    // the complete supergraph is interval, so a minimum always exists
    Ok(best)
}

/// Interval test: some ordering of the maximal cliques is consecutive for
/// every vertex (Gilmore-Hoffman). Only used at tiny sizes.
fn is_interval(g: &Graph) -> bool {
    let n = g.n();
    let full: u32 = (1u32 << n) - 1;
    let mut cliques: Vec<u32> = Vec::new();
    for s in 1..=full {
        if !g.is_clique(s as u128) {
            continue;
        }
        let extendable = (0..n).any(|w| {
            s & (1 << w) == 0 && s as u128 & !g.neighbors_mask(w) == 0
        });
        if !extendable {
            cliques.push(s);
        }
    }
    if cliques.len() > n {
        return false; // interval graphs have at most n maximal cliques
    }
    permutations_satisfy(&cliques, n)
}

fn permutations_satisfy(cliques: &[u32], n: usize) -> bool {
    use itertools::Itertools;
    for perm in cliques.iter().permutations(cliques.len()) {
        let ok = (0..n).all(|v| {
            let hits: Vec<usize> = perm
                .iter()
                .enumerate()
                .filter(|(_, c)| **c & (1 << v) != 0)
                .map(|(i, _)| i)
                .collect();
            hits.windows(2).all(|w| w[1] == w[0] + 1)
        });
        if ok {
            return true;
        }
    }
    false
}

/// Checks `pw(G1 ⊗ G2) = min(pw(G1) + |V(G2)|, pw(G2) + |V(G1)|)` by solving
/// both sides. Returns the verdict; a `false` would falsify the join law.
pub fn join_pathwidth_check(g1: &Graph, g2: &Graph) -> Result<bool, SolverError> {
    let joined = crate::graph::join(g1, g2)?;
    let lhs = pathwidth(&joined)?.value;
    let rhs = (pathwidth(g1)?.value + g2.n()).min(pathwidth(g2)?.value + g1.n());
    Ok(lhs == rhs)
}

/// True iff `pw(g) = k + 1` and every one-step minor has pathwidth at most
/// `k`. Minor-monotonicity of pathwidth makes one-step minors sufficient.
pub fn is_minor_minimal_obstruction(g: &Graph, k: usize) -> Result<bool, SolverError> {
    if pathwidth(g)?.value != k + 1 {
        return Ok(false);
    }
    for h in one_step_minors(g) {
        if !pathwidth_le(&h, k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::all_graphs;

    fn k(n: usize) -> Graph {
        Graph::complete(n).unwrap()
    }

    #[test]
    fn pathwidth_of_complete_graphs() {
        for n in 1..=6 {
            let res = pathwidth(&k(n)).unwrap();
            assert_eq!(res.value, n - 1);
            assert!(res.witness.validate(&k(n)).unwrap());
            assert_eq!(res.witness.width(), n - 1);
        }
    }

    #[test]
    fn pathwidth_of_paths_and_cycles() {
        for n in 2..=7 {
            assert_eq!(pathwidth(&Graph::path_graph(n).unwrap()).unwrap().value, 1);
        }
        for n in 3..=7 {
            assert_eq!(pathwidth(&Graph::cycle(n).unwrap()).unwrap().value, 2);
        }
    }

    #[test]
    fn solver_cap_is_enforced() {
        let g = Graph::edgeless(25).unwrap();
        assert_eq!(
            pathwidth(&g).unwrap_err(),
            SolverError::CapExceeded { n: 25, cap: 24 }
        );
        assert!(pathwidth_capped(&Graph::edgeless(10).unwrap(), 9).is_err());
    }

    #[test]
    fn pathwidth_le_agrees_with_full_solver() {
        for n in 1..=4 {
            for g in all_graphs(n) {
                let pw = pathwidth(&g).unwrap().value;
                for kk in 0..=4 {
                    assert_eq!(pathwidth_le(&g, kk).unwrap(), pw <= kk, "{g:?} k={kk}");
                }
            }
        }
        assert!(!pathwidth_le(&k(4), 2).unwrap());
    }

    // caterpillar: removing all leaves yields a path (or nothing)
    fn is_caterpillar(t: &Graph) -> bool {
        let spine: Vec<usize> = (0..t.n()).filter(|&v| t.degree(v) > 1).collect();
        if spine.len() <= 1 {
            return true;
        }
        let mut ends = 0;
        for &v in &spine {
            let d = t.neighbors(v).filter(|u| spine.contains(u)).count();
            match d {
                0 => return spine.len() == 1,
                1 => ends += 1,
                2 => {}
                _ => return false,
            }
        }
        // connected because t is a tree; a path has exactly two endpoints
        ends == 2
    }

    #[test]
    fn width_one_trees_are_exactly_the_caterpillars() {
        // all labeled trees on up to 7 vertices via Pruefer sequences; 7
        // vertices brings in the first non-caterpillar
        for n in 2..=7 {
            let trees = all_labeled_trees(n);
            assert_eq!(trees.len(), n.pow((n as u32).saturating_sub(2)));
            let mut non_caterpillars = 0;
            for t in trees {
                let le1 = pathwidth_le(&t, 1).unwrap();
                assert_eq!(le1, is_caterpillar(&t), "{t:?}");
                if !le1 {
                    non_caterpillars += 1;
                }
            }
            if n == 7 {
                assert!(non_caterpillars > 0);
            } else {
                assert_eq!(non_caterpillars, 0);
            }
        }
    }

    fn all_labeled_trees(n: usize) -> Vec<Graph> {
        if n == 1 {
            return vec![Graph::new(1).unwrap()];
        }
        if n == 2 {
            return vec![Graph::complete(2).unwrap()];
        }
        let mut out = Vec::new();
        let len = n - 2;
        let total = n.pow(len as u32);
        for code in 0..total {
            let mut seq = Vec::with_capacity(len);
            let mut c = code;
            for _ in 0..len {
                seq.push(c % n);
                c /= n;
            }
            out.push(decode_pruefer(&seq, n));
        }
        out
    }

    fn decode_pruefer(seq: &[usize], n: usize) -> Graph {
        let mut degree = vec![1usize; n];
        for &v in seq {
            degree[v] += 1;
        }
        let mut g = Graph::new(n).unwrap();
        let mut deg = degree;
        for &v in seq {
            let leaf = (0..n).find(|&u| deg[u] == 1).unwrap();
            g.add_edge(leaf, v).unwrap();
            deg[leaf] = 0;
            deg[v] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&u| deg[u] == 1).collect();
        g.add_edge(rest[0], rest[1]).unwrap();
        g
    }

    #[test]
    fn interval_oracle_examples() {
        assert_eq!(pathwidth_via_interval(&Graph::cycle(4).unwrap()).unwrap(), 2);
        for n in 1..=5 {
            assert_eq!(pathwidth_via_interval(&k(n)).unwrap(), n - 1);
        }
        assert!(pathwidth_via_interval(&Graph::edgeless(7).unwrap()).is_err());
    }

    #[test]
    fn interval_oracle_matches_dp_on_small_connected_graphs() {
        for n in 1..=4 {
            for g in all_graphs(n) {
                if !g.is_connected() {
                    continue;
                }
                assert_eq!(
                    pathwidth_via_interval(&g).unwrap(),
                    pathwidth(&g).unwrap().value,
                    "{g:?}"
                );
            }
        }
    }

    #[test]
    fn join_law_examples() {
        // pw(P_3 ⊗ K_1) = min(1+1, 0+3) = 2
        assert!(join_pathwidth_check(&Graph::path_graph(3).unwrap(), &k(1)).unwrap());
        let joined = crate::graph::join(&Graph::path_graph(3).unwrap(), &k(1)).unwrap();
        assert_eq!(pathwidth(&joined).unwrap().value, 2);
        assert!(join_pathwidth_check(&k(1), &k(1)).unwrap());
    }

    #[test]
    fn join_law_all_pairs_up_to_three() {
        for n1 in 1..=3 {
            for n2 in 1..=3 {
                for g1 in all_graphs(n1) {
                    for g2 in all_graphs(n2) {
                        assert!(join_pathwidth_check(&g1, &g2).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn obstruction_predicate_examples() {
        assert!(is_minor_minimal_obstruction(&k(2), 0).unwrap());
        // K_3 has pathwidth 2 but its one-step minor K_2 has pathwidth 1 > 0
        assert!(!is_minor_minimal_obstruction(&k(3), 0).unwrap());
        assert!(is_minor_minimal_obstruction(&k(3), 1).unwrap());
        assert!(!is_minor_minimal_obstruction(&Graph::path_graph(4).unwrap(), 1).unwrap());
    }

    #[test]
    fn witness_always_validates_on_small_graphs() {
        for n in 1..=4 {
            for g in all_graphs(n) {
                let res = pathwidth(&g).unwrap();
                assert!(res.witness.validate(&g).unwrap());
                assert_eq!(res.witness.width(), res.value);
            }
        }
    }
}
