//! Bounded pathwidth as a pluggable problem for the kernel-derived order:
//! matrix-encoded graphs, the exact solver as decider, and the trivial kernel
//! whose canonical no-instance is the complete graph on k+2 vertices (the
//! smallest graph of pathwidth k+1, and an exact fit for the size bound).

use crate::encoding::{decode_graph, encode_graph};
use crate::graph::Graph;
use crate::pwsolver::pathwidth_le;
use crate::quasiorder::{Kernelization, MembershipOracle, ParamInstance};

/// Instances this oracle is ever queried on stay far below the solver cap;
/// anything bigger is a programming error, not an input condition.
pub const ORACLE_CAP: usize = 20;

/// Accepts `(x, k)` iff `x` decodes to a graph of pathwidth at most `k`.
/// Malformed encodings are no-instances.
pub struct PathwidthOracle;

impl MembershipOracle for PathwidthOracle {
    fn accepts(&self, i: &ParamInstance) -> bool {
        match decode_graph(&i.x) {
            None => false,
            Some(g) => {
                assert!(g.n() <= ORACLE_CAP, "oracle queried beyond its cap");
                pathwidth_le(&g, i.k).expect("within solver cap")
            }
        }
    }
}

/// Size bound of the trivial pathwidth kernel: the matrix of K_{k+2} plus the
/// parameter.
pub fn pathwidth_kernel_bound(k: usize) -> usize {
    (k + 2) * (k + 2) + k
}

/// Trivial kernel for bounded pathwidth. Small instances pass through; large
/// ones are decided and collapse to `(K_1, k)` or `(K_{k+2}, k)`. Both
/// canonicals keep the input parameter, so the derived order never leaves a
/// parameter slice.
pub struct PathwidthKernel;

impl Kernelization for PathwidthKernel {
    fn size_bound(&self, k: usize) -> usize {
        pathwidth_kernel_bound(k)
    }

    fn apply(&self, i: &ParamInstance) -> ParamInstance {
        if i.size() <= self.size_bound(i.k) {
            return i.clone();
        }
        if PathwidthOracle.accepts(i) {
            canonical_yes(i.k)
        } else {
            canonical_no(i.k)
        }
    }
}

/// `(K_1, k)`: pathwidth 0, a yes-instance for every k.
pub fn canonical_yes(k: usize) -> ParamInstance {
    ParamInstance::new(encode_graph(&Graph::complete(1).expect("K1")), k)
}

/// `(K_{k+2}, k)`: pathwidth k+1, a no-instance of size exactly the bound.
pub fn canonical_no(k: usize) -> ParamInstance {
    ParamInstance::new(encode_graph(&Graph::complete(k + 2).expect("small clique")), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::all_graphs;
    use crate::quasiorder::{
        binary_string_instances, compute_obstruction_set, decide_via_obstructions,
        kernel_fixpoint, kernel_order_precedes, CheckedKernel, InstanceOrder, KernelOrder,
    };

    fn inst(g: &Graph, k: usize) -> ParamInstance {
        ParamInstance::new(encode_graph(g), k)
    }

    #[test]
    fn canonicals_are_classified_correctly() {
        for k in 0..=4 {
            assert!(PathwidthOracle.accepts(&canonical_yes(k)));
            assert!(!PathwidthOracle.accepts(&canonical_no(k)));
            assert_eq!(canonical_no(k).size(), pathwidth_kernel_bound(k));
        }
    }

    #[test]
    fn kernel_passes_small_and_collapses_large() {
        let kernel = PathwidthKernel;
        let small = inst(&Graph::complete(2).unwrap(), 0); // size 4 = bound
        assert_eq!(kernel.apply(&small), small);

        let yes = inst(&Graph::path_graph(3).unwrap(), 1); // size 10 = bound, stays
        assert_eq!(kernel.apply(&yes), yes);

        let big_yes = inst(&Graph::path_graph(4).unwrap(), 1); // size 17 > 10
        assert_eq!(kernel.apply(&big_yes), canonical_yes(1));

        let big_no = inst(&Graph::complete(3).unwrap(), 0); // pw 2 > 0, size 9 > 4
        assert_eq!(kernel.apply(&big_no), canonical_no(0));
    }

    #[test]
    fn checked_kernel_passes_on_the_small_pool() {
        let checked = CheckedKernel { kernel: PathwidthKernel, oracle: PathwidthOracle };
        for n in 1..=4 {
            for g in all_graphs(n) {
                for k in 0..=3 {
                    let i = inst(&g, k);
                    let fix = kernel_fixpoint(&i, &checked).unwrap();
                    assert!(fix.size() <= pathwidth_kernel_bound(k));
                }
            }
        }
    }

    #[test]
    fn order_properties_on_a_small_pool() {
        let kernel = PathwidthKernel;
        let mut pool = Vec::new();
        for n in 1..=3 {
            for g in all_graphs(n) {
                for k in 0..=2 {
                    pool.push(inst(&g, k));
                }
            }
        }
        let fix: Vec<ParamInstance> =
            pool.iter().map(|i| kernel_fixpoint(i, &kernel).unwrap()).collect();
        for (bi, b) in pool.iter().enumerate() {
            assert!(kernel_order_precedes(b, b, &kernel).unwrap());
            // transitivity through the fixpoint
            let f2 = kernel_fixpoint(&fix[bi], &kernel).unwrap();
            assert_eq!(f2, fix[bi]);
            // lower ideal
            if PathwidthOracle.accepts(b) {
                assert!(PathwidthOracle.accepts(&fix[bi]), "{b:?}");
            }
        }
    }

    #[test]
    fn obstruction_set_at_zero_contains_the_single_edge() {
        let order = KernelOrder { kernel: PathwidthKernel };
        let f0 = pathwidth_kernel_bound(0);
        let obs = compute_obstruction_set(
            0,
            &order,
            f0,
            &PathwidthOracle,
            binary_string_instances(0, f0).unwrap(),
        );
        assert!(obs.elements.contains(&canonical_no(0)));
        // every element is a genuine minimal no-instance
        for e in &obs.elements {
            assert!(!PathwidthOracle.accepts(e));
            assert_eq!(kernel_fixpoint(e, &PathwidthKernel).unwrap(), *e);
        }
    }

    #[test]
    fn decide_agrees_with_oracle_on_small_pool() {
        let order = KernelOrder { kernel: PathwidthKernel };
        for k in 0..=2 {
            let f_k = pathwidth_kernel_bound(k);
            let max_x = (f_k - k).min(crate::quasiorder::ENUMERATION_CAP - k);
            let obs = compute_obstruction_set(
                k,
                &order,
                f_k,
                &PathwidthOracle,
                binary_string_instances(k, max_x).unwrap(),
            );
            for n in 1..=3 {
                for g in all_graphs(n) {
                    let i = inst(&g, k);
                    assert_eq!(
                        decide_via_obstructions(&i, &obs, &order),
                        PathwidthOracle.accepts(&i),
                        "{g:?} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn closure_contains_exactly_self_and_fixpoint() {
        let order = KernelOrder { kernel: PathwidthKernel };
        let big_no = inst(&Graph::complete(3).unwrap(), 0);
        let closure = order.predecessor_closure(&big_no).unwrap();
        assert_eq!(closure, vec![big_no.clone(), canonical_no(0)]);
    }
}
