//! 3-coloring with component size bounded by the parameter, as a concrete
//! quasi-order with quadratic-size obstructions. Instances are row-major
//! adjacency matrices; the order compares matrices under component
//! restriction, which avoids isomorphism tests entirely.

use crate::encoding::{decode_graph, encode_graph};
use crate::graph::{connected_components, Graph, GraphError};
use crate::quasiorder::{InstanceOrder, MembershipOracle, ParamInstance, QuasiOrderError};

/// Per-component cap for the brute-force coloring search.
pub const COLORING_CAP: usize = 20;

/// The fixed constant-size no-instance `(x_N, k_N)`: K_4 with parameter 4.
pub fn canonical_no_instance() -> ParamInstance {
    ParamInstance::new(encode_graph(&Graph::complete(4).expect("K4")), 4)
}

/// Well-formed: the bytes decode to an adjacency matrix and every connected
/// component has at most `k` vertices.
pub fn is_well_formed(i: &ParamInstance) -> bool {
    match decode_graph(&i.x) {
        None => false,
        Some(g) => connected_components(&g).iter().all(|(c, _)| c.n() <= i.k),
    }
}

/// The restriction of `b`'s matrix to one connected component, in the induced
/// order of the surviving indices.
fn component_restrictions(b: &ParamInstance) -> Vec<Vec<u8>> {
    let Some(g) = decode_graph(&b.x) else {
        return Vec::new();
    };
    let n = g.n();
    connected_components(&g)
        .iter()
        .map(|(_, verts)| {
            let mut m = Vec::with_capacity(verts.len() * verts.len());
            for &u in verts {
                for &v in verts {
                    m.push(b.x[u * n + v]);
                }
            }
            m
        })
        .collect()
}

/// The three-case order: identity; equal parameter plus component
/// restriction of the matrix; or the canonical no-instance below anything
/// that is not well-formed.
pub fn threecol_precedes(a: &ParamInstance, b: &ParamInstance) -> bool {
    if a == b {
        return true;
    }
    if is_well_formed(a) && is_well_formed(b) && a.k == b.k {
        if component_restrictions(b).iter().any(|m| *m == a.x) {
            return true;
        }
    }
    *a == canonical_no_instance() && !is_well_formed(b)
}

/// Brute-force proper 3-coloring test, component by component with pruning.
pub fn is_three_colorable(g: &Graph) -> Result<bool, GraphError> {
    for (comp, _) in connected_components(g) {
        if comp.n() > COLORING_CAP {
            return Err(GraphError::CapExceeded { n: comp.n(), cap: COLORING_CAP });
        }
        if !colorable_with(&comp, 3) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn colorable_with(g: &Graph, colors: usize) -> bool {
    fn go(g: &Graph, colors: usize, assignment: &mut Vec<usize>) -> bool {
        let v = assignment.len();
        if v == g.n() {
            return true;
        }
        // first vertex pinned to color 0 to cut symmetry
        let limit = if v == 0 { 1 } else { colors };
        for c in 0..limit {
            if g.neighbors(v).filter(|&u| u < v).all(|u| assignment[u] != c) {
                assignment.push(c);
                if go(g, colors, assignment) {
                    return true;
                }
                assignment.pop();
            }
        }
        false
    }
    go(g, colors, &mut Vec::with_capacity(g.n()))
}

/// For a no-instance, a preceding no-instance of constant or quadratic size:
/// the canonical no-instance for malformed input, otherwise the restriction
/// to a non-3-colorable component (at most `k^2` matrix bytes).
pub fn threecol_obstruction(i: &ParamInstance) -> Result<ParamInstance, QuasiOrderError> {
    if !is_well_formed(i) {
        return Ok(canonical_no_instance());
    }
    let g = decode_graph(&i.x).expect("well-formed");
    let n = g.n();
    for (comp, verts) in connected_components(&g) {
        if colorable_with(&comp, 3) {
            continue;
        }
        let mut m = Vec::with_capacity(verts.len() * verts.len());
        for &u in &verts {
            for &v in &verts {
                m.push(i.x[u * n + v]);
            }
        }
        return Ok(ParamInstance::new(m, i.k));
    }
    Err(QuasiOrderError::YesInstance)
}

/// Decider: well-formed and properly 3-colorable.
pub struct ThreeColOracle;

impl MembershipOracle for ThreeColOracle {
    fn accepts(&self, i: &ParamInstance) -> bool {
        if !is_well_formed(i) {
            return false;
        }
        let g = decode_graph(&i.x).expect("well-formed");
        is_three_colorable(&g).expect("components within cap")
    }
}

/// `InstanceOrder` view with the complete predecessor list: the instance
/// itself, its component restrictions, and the canonical no-instance when
/// malformed.
pub struct ThreeColOrder;

impl InstanceOrder for ThreeColOrder {
    fn precedes(&self, a: &ParamInstance, b: &ParamInstance) -> bool {
        threecol_precedes(a, b)
    }

    fn predecessor_closure(&self, b: &ParamInstance) -> Option<Vec<ParamInstance>> {
        let mut out = vec![b.clone()];
        if is_well_formed(b) {
            for m in component_restrictions(b) {
                out.push(ParamInstance::new(m, b.k));
            }
        } else {
            out.push(canonical_no_instance());
        }
        Some(out)
    }
}
