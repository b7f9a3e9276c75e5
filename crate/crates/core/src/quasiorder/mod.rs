//! Parameterized instances, pluggable kernelizations and membership oracles,
//! the quasi-order a kernel induces (repeated kernelization to a size
//! fixpoint), obstruction-set computation over exhaustively enumerated
//! instance spaces, and the obstruction-based decider.

use std::collections::BTreeSet;

use thiserror::Error;

pub mod pathwidth_problem;
pub mod threecol;

/// Instance of a parameterized problem: a byte string and a parameter.
/// Its size is `|x| + k`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ParamInstance {
    pub x: Vec<u8>,
    pub k: usize,
}

impl ParamInstance {
    pub fn new(x: impl Into<Vec<u8>>, k: usize) -> Self {
        ParamInstance { x: x.into(), k }
    }

    pub fn size(&self) -> usize {
        self.x.len() + self.k
    }
}

/// Total decider for the attached problem.
pub trait MembershipOracle {
    fn accepts(&self, i: &ParamInstance) -> bool;
}

/// Polynomial-time self-reduction with a declared size bound: the output is
/// equivalent to the input and has size at most `size_bound(input.k)`.
pub trait Kernelization {
    fn size_bound(&self, k: usize) -> usize;
    fn apply(&self, i: &ParamInstance) -> ParamInstance;
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuasiOrderError {
    #[error("kernel output size {got} exceeds declared bound {bound} at k={k}")]
    KernelBoundViolated { got: usize, bound: usize, k: usize },
    #[error("kernel did not reach a fixpoint within {limit} iterations")]
    IterationLimit { limit: usize },
    #[error("canonical yes-instance is rejected by the oracle")]
    BadCanonicalYes,
    #[error("canonical no-instance is accepted by the oracle")]
    BadCanonicalNo,
    #[error("enumeration of instances up to total size {requested} exceeds the cap {cap}")]
    EnumerationBudget { requested: usize, cap: usize },
    #[error("instance is a yes-instance; no obstruction precedes it")]
    YesInstance,
}

/// Applies `kernel` until it no longer shrinks the instance. The iteration
/// count is bounded by the initial size since every step strictly shrinks.
pub fn kernel_fixpoint<K: Kernelization>(
    i: &ParamInstance,
    kernel: &K,
) -> Result<ParamInstance, QuasiOrderError> {
    let limit = i.size() + 1;
    let mut cur = i.clone();
    for _ in 0..=limit {
        let out = kernel.apply(&cur);
        let bound = kernel.size_bound(cur.k);
        if out.size() > bound {
            return Err(QuasiOrderError::KernelBoundViolated { got: out.size(), bound, k: cur.k });
        }
        if out.size() < cur.size() {
            cur = out;
        } else {
            return Ok(cur);
        }
    }
    Err(QuasiOrderError::IterationLimit { limit })
}

/// The kernel-derived quasi-order: `a` precedes `b` iff `a = b` or `a` is the
/// kernelization fixpoint of `b`.
pub fn kernel_order_precedes<K: Kernelization>(
    a: &ParamInstance,
    b: &ParamInstance,
    kernel: &K,
) -> Result<bool, QuasiOrderError> {
    if a == b {
        return Ok(true);
    }
    Ok(*a == kernel_fixpoint(b, kernel)?)
}

/// The folklore kernel a decider induces: small instances pass through,
/// large ones collapse to a canonical constant of matching answer.
pub struct TrivialKernel<O, F> {
    oracle: O,
    bound: F,
    yes_c: ParamInstance,
    no_c: ParamInstance,
}

pub fn trivial_kernel_from_decider<O, F>(
    oracle: O,
    bound: F,
    yes_c: ParamInstance,
    no_c: ParamInstance,
) -> Result<TrivialKernel<O, F>, QuasiOrderError>
where
    O: MembershipOracle,
    F: Fn(usize) -> usize,
{
    if !oracle.accepts(&yes_c) {
        return Err(QuasiOrderError::BadCanonicalYes);
    }
    if oracle.accepts(&no_c) {
        return Err(QuasiOrderError::BadCanonicalNo);
    }
    Ok(TrivialKernel { oracle, bound, yes_c, no_c })
}

impl<O: MembershipOracle, F: Fn(usize) -> usize> Kernelization for TrivialKernel<O, F> {
    fn size_bound(&self, k: usize) -> usize {
        (self.bound)(k)
    }

    fn apply(&self, i: &ParamInstance) -> ParamInstance {
        if i.size() <= self.size_bound(i.k) {
            i.clone()
        } else if self.oracle.accepts(i) {
            self.yes_c.clone()
        } else {
            self.no_c.clone()
        }
    }
}

/// Test harness around a kernel: every application is checked against the
/// declared size bound and, via the oracle, for equivalence preservation.
/// Panics on violation; meant for test builds.
pub struct CheckedKernel<K, O> {
    pub kernel: K,
    pub oracle: O,
}

impl<K: Kernelization, O: MembershipOracle> Kernelization for CheckedKernel<K, O> {
    fn size_bound(&self, k: usize) -> usize {
        self.kernel.size_bound(k)
    }

    fn apply(&self, i: &ParamInstance) -> ParamInstance {
        let out = self.kernel.apply(i);
        assert!(
            out.size() <= self.kernel.size_bound(i.k),
            "kernel output size {} over bound {} at k={}",
            out.size(),
            self.kernel.size_bound(i.k),
            i.k
        );
        assert_eq!(
            self.oracle.accepts(i),
            self.oracle.accepts(&out),
            "kernel changed the answer of {i:?}"
        );
        out
    }
}

/// A quasi-order on instances. `predecessor_closure` may return the complete
/// predecessor list of an instance when that is cheaply enumerable; callers
/// fall back to pairwise `precedes` scans otherwise.
pub trait InstanceOrder {
    fn precedes(&self, a: &ParamInstance, b: &ParamInstance) -> bool;

    fn predecessor_closure(&self, _b: &ParamInstance) -> Option<Vec<ParamInstance>> {
        None
    }
}

/// `InstanceOrder` view of a kernel-derived order.
pub struct KernelOrder<K> {
    pub kernel: K,
}

impl<K: Kernelization> InstanceOrder for KernelOrder<K> {
    fn precedes(&self, a: &ParamInstance, b: &ParamInstance) -> bool {
        kernel_order_precedes(a, b, &self.kernel).expect("kernel violated its contract")
    }

    fn predecessor_closure(&self, b: &ParamInstance) -> Option<Vec<ParamInstance>> {
        let fix = kernel_fixpoint(b, &self.kernel).expect("kernel violated its contract");
        let mut out = vec![b.clone()];
        if fix != *b {
            out.push(fix);
        }
        Some(out)
    }
}

/// The minimal no-instances of size at most `f(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionSet {
    pub k: usize,
    pub elements: BTreeSet<ParamInstance>,
}

/// Collects the no-instances of size at most `f_k` from `candidates` and
/// keeps those not strictly preceded by another small no-instance. The
/// candidate enumeration must cover the instance space the caller cares
/// about; coverage is the caller's contract, not checked here.
pub fn compute_obstruction_set<O: MembershipOracle, Q: InstanceOrder>(
    k: usize,
    order: &Q,
    f_k: usize,
    oracle: &O,
    candidates: impl IntoIterator<Item = ParamInstance>,
) -> ObstructionSet {
    let pool: BTreeSet<ParamInstance> = candidates
        .into_iter()
        .filter(|i| i.size() <= f_k && !oracle.accepts(i))
        .collect();
    let mut elements = BTreeSet::new();
    for a in &pool {
        let minimal = match order.predecessor_closure(a) {
            Some(closure) => !closure
                .iter()
                .any(|e| e != a && e.size() <= f_k && !oracle.accepts(e)),
            None => !pool.iter().any(|e| e != a && order.precedes(e, a)),
        };
        if minimal {
            elements.insert(a.clone());
        }
    }
    ObstructionSet { k, elements }
}

/// Yes iff no obstruction precedes the instance.
pub fn decide_via_obstructions<Q: InstanceOrder>(
    i: &ParamInstance,
    obs: &ObstructionSet,
    order: &Q,
) -> bool {
    match order.predecessor_closure(i) {
        Some(closure) => !closure.iter().any(|e| obs.elements.contains(e)),
        None => !obs.elements.iter().any(|e| order.precedes(e, i)),
    }
}

/// Hard cap on exhaustive instance enumeration; the candidate space is
/// exponential in the size.
pub const ENUMERATION_CAP: usize = 20;

/// All instances `(x, k)` with `x` over the alphabet `{'0','1'}` and
/// `|x| <= max_x_len`, in length-then-lexicographic order.
pub fn binary_string_instances(
    k: usize,
    max_x_len: usize,
) -> Result<Vec<ParamInstance>, QuasiOrderError> {
    let requested = max_x_len + k;
    if requested > ENUMERATION_CAP {
        return Err(QuasiOrderError::EnumerationBudget { requested, cap: ENUMERATION_CAP });
    }
    let mut out = Vec::new();
    for len in 0..=max_x_len {
        for bits in 0u64..(1u64 << len) {
            let x: Vec<u8> = (0..len)
                .map(|p| if bits & (1 << (len - 1 - p)) != 0 { b'1' } else { b'0' })
                .collect();
            out.push(ParamInstance::new(x, k));
        }
    }
    Ok(out)
}

/// All instances `(x, k')` over `{'0','1'}` with `|x| + k' <= total`, for
/// orders whose predecessors may change the parameter.
pub fn binary_string_instances_all_params(
    total: usize,
) -> Result<Vec<ParamInstance>, QuasiOrderError> {
    if total > ENUMERATION_CAP {
        return Err(QuasiOrderError::EnumerationBudget { requested: total, cap: ENUMERATION_CAP });
    }
    let mut out = Vec::new();
    for k in 0..=total {
        out.extend(binary_string_instances(k, total - k)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cell::Cell;

    /// Toy problem: the count of b'1' bytes is even.
    struct ParityOracle;
    impl MembershipOracle for ParityOracle {
        fn accepts(&self, i: &ParamInstance) -> bool {
            i.x.iter().filter(|&&b| b == b'1').count() % 2 == 0
        }
    }

    fn parity_kernel() -> TrivialKernel<ParityOracle, fn(usize) -> usize> {
        trivial_kernel_from_decider(
            ParityOracle,
            (|k| k + 2) as fn(usize) -> usize,
            ParamInstance::new(*b"", 0),
            ParamInstance::new(*b"1", 0),
        )
        .unwrap()
    }

    fn toy_pool() -> Vec<ParamInstance> {
        let mut pool = Vec::new();
        for k in 0..=2 {
            pool.extend(binary_string_instances(k, 5).unwrap());
        }
        pool
    }

    #[test]
    fn misclassified_canonicals_are_rejected() {
        let err = trivial_kernel_from_decider(
            ParityOracle,
            |k| k + 2,
            ParamInstance::new(*b"1", 0),
            ParamInstance::new(*b"11", 0),
        )
        .unwrap_err();
        assert_eq!(err, QuasiOrderError::BadCanonicalYes);
        let err = trivial_kernel_from_decider(
            ParityOracle,
            |k| k + 2,
            ParamInstance::new(*b"", 0),
            ParamInstance::new(*b"11", 0),
        )
        .unwrap_err();
        assert_eq!(err, QuasiOrderError::BadCanonicalNo);
    }

    #[test]
    fn fixpoint_leaves_small_instances_alone() {
        let kernel = parity_kernel();
        let small = ParamInstance::new(*b"10", 0);
        assert_eq!(kernel_fixpoint(&small, &kernel).unwrap(), small);
    }

    #[test]
    fn fixpoint_collapses_large_instances_in_one_step() {
        let kernel = parity_kernel();
        let large_yes = ParamInstance::new(*b"1100110", 1);
        assert_eq!(kernel_fixpoint(&large_yes, &kernel).unwrap(), ParamInstance::new(*b"", 0));
        let large_no = ParamInstance::new(*b"1110000", 1);
        assert_eq!(kernel_fixpoint(&large_no, &kernel).unwrap(), ParamInstance::new(*b"1", 0));
    }

    /// Wraps a kernel, counting applications.
    struct CountingKernel<'a, K> {
        inner: &'a K,
        calls: Cell<usize>,
    }
    impl<K: Kernelization> Kernelization for CountingKernel<'_, K> {
        fn size_bound(&self, k: usize) -> usize {
            self.inner.size_bound(k)
        }
        fn apply(&self, i: &ParamInstance) -> ParamInstance {
            self.calls.set(self.calls.get() + 1);
            self.inner.apply(i)
        }
    }

    #[test]
    fn fixpoint_iteration_count_is_bounded_by_size() {
        let kernel = parity_kernel();
        for i in toy_pool() {
            let counting = CountingKernel { inner: &kernel, calls: Cell::new(0) };
            kernel_fixpoint(&i, &counting).unwrap();
            assert!(counting.calls.get() <= i.size() + 1);
        }
    }

    #[test]
    fn bound_violations_are_reported() {
        struct GrowingKernel;
        impl Kernelization for GrowingKernel {
            fn size_bound(&self, _k: usize) -> usize {
                1
            }
            fn apply(&self, i: &ParamInstance) -> ParamInstance {
                let mut x = i.x.clone();
                x.push(b'0');
                ParamInstance::new(x, i.k)
            }
        }
        let err = kernel_fixpoint(&ParamInstance::new(*b"00", 0), &GrowingKernel).unwrap_err();
        assert!(matches!(err, QuasiOrderError::KernelBoundViolated { .. }));
    }

    #[test]
    #[should_panic(expected = "changed the answer")]
    fn checked_kernel_catches_equivalence_violations() {
        struct FlippingKernel;
        impl Kernelization for FlippingKernel {
            fn size_bound(&self, k: usize) -> usize {
                k + 2
            }
            fn apply(&self, _i: &ParamInstance) -> ParamInstance {
                ParamInstance::new(*b"1", 0)
            }
        }
        let checked = CheckedKernel { kernel: FlippingKernel, oracle: ParityOracle };
        checked.apply(&ParamInstance::new(*b"1111111", 0));
    }

    #[test]
    fn kernel_order_is_reflexive_transitive_and_a_lower_ideal() {
        let kernel = parity_kernel();
        let pool = toy_pool();
        let fix: Vec<ParamInstance> =
            pool.iter().map(|i| kernel_fixpoint(i, &kernel).unwrap()).collect();
        let precedes = |a: &ParamInstance, bi: usize| pool[bi] == *a || fix[bi] == *a;
        for (bi, b) in pool.iter().enumerate() {
            assert!(kernel_order_precedes(b, b, &kernel).unwrap());
            // transitivity: anything preceding a fixpoint equals it
            for a in [&pool[bi], &fix[bi]] {
                assert!(kernel_order_precedes(a, b, &kernel).unwrap());
                let deeper = kernel_fixpoint(a, &kernel).unwrap();
                assert!(precedes(&deeper, bi), "transitivity broken");
            }
            // lower ideal
            if ParityOracle.accepts(b) {
                assert!(ParityOracle.accepts(&fix[bi]));
            }
        }
    }

    #[test]
    fn obstruction_set_is_empty_without_no_instances() {
        struct AllYes;
        impl MembershipOracle for AllYes {
            fn accepts(&self, _i: &ParamInstance) -> bool {
                true
            }
        }
        let order = KernelOrder { kernel: parity_kernel() };
        let obs =
            compute_obstruction_set(0, &order, 4, &AllYes, binary_string_instances(0, 4).unwrap());
        assert!(obs.elements.is_empty());
    }

    /// Suffix order: `a` precedes `b` iff `a == b` or `a` is `b` minus its
    /// last byte. Exercises the pairwise minimality fallback.
    struct DropLastOrder;
    impl InstanceOrder for DropLastOrder {
        fn precedes(&self, a: &ParamInstance, b: &ParamInstance) -> bool {
            a == b || (a.k == b.k && !b.x.is_empty() && a.x == b.x[..b.x.len() - 1])
        }
    }

    struct NoOnes;
    impl MembershipOracle for NoOnes {
        fn accepts(&self, i: &ParamInstance) -> bool {
            !i.x.contains(&b'1')
        }
    }

    #[test]
    fn pairwise_minimality_filter() {
        let candidates = vec![
            ParamInstance::new(*b"01", 0),
            ParamInstance::new(*b"011", 0),
            ParamInstance::new(*b"10", 0),
        ];
        let obs = compute_obstruction_set(0, &DropLastOrder, 5, &NoOnes, candidates);
        // "011" is preceded by "01"; "10" survives because "1" is not a candidate
        let expect: BTreeSet<ParamInstance> =
            [ParamInstance::new(*b"01", 0), ParamInstance::new(*b"10", 0)].into_iter().collect();
        assert_eq!(obs.elements, expect);
        // pairwise: no element precedes another
        for a in &obs.elements {
            for b in &obs.elements {
                assert!(a == b || !DropLastOrder.precedes(a, b));
            }
        }
    }

    #[test]
    fn decide_via_obstructions_cases() {
        let order = DropLastOrder;
        let empty = ObstructionSet { k: 0, elements: BTreeSet::new() };
        assert!(decide_via_obstructions(&ParamInstance::new(*b"111", 0), &empty, &order));

        let obs = ObstructionSet {
            k: 0,
            elements: [ParamInstance::new(*b"01", 0)].into_iter().collect(),
        };
        // "011" is strictly above the obstruction "01"
        assert!(!decide_via_obstructions(&ParamInstance::new(*b"011", 0), &obs, &order));
        assert!(decide_via_obstructions(&ParamInstance::new(*b"00", 0), &obs, &order));
    }

    #[test]
    fn decide_agrees_with_oracle_on_the_toy_pool() {
        let kernel = parity_kernel();
        let order = KernelOrder { kernel: parity_kernel() };
        for k in 0..=2 {
            let f_k = kernel.size_bound(k);
            // canonicals live at k = 0, so cover every parameter up to f_k
            let obs = compute_obstruction_set(
                k,
                &order,
                f_k,
                &ParityOracle,
                binary_string_instances_all_params(f_k).unwrap(),
            );
            for i in binary_string_instances(k, 5).unwrap() {
                assert_eq!(
                    decide_via_obstructions(&i, &obs, &order),
                    ParityOracle.accepts(&i),
                    "{i:?}"
                );
            }
        }
    }

    #[test]
    fn enumeration_budget_is_enforced() {
        assert!(binary_string_instances(4, 16).is_ok());
        assert_eq!(
            binary_string_instances(5, 16).unwrap_err(),
            QuasiOrderError::EnumerationBudget { requested: 21, cap: 20 }
        );
        assert_eq!(binary_string_instances(0, 3).unwrap().len(), 15);
    }
}
