//! Byte-level graph encoding shared by the quasi-order machinery: one ASCII
//! `'0'`/`'1'` byte per adjacency-matrix cell in row-major order, with the
//! vertex count inferred as the integer square root of the length. Anything
//! non-square, non-symmetric, with a nonzero diagonal or with foreign bytes
//! is malformed. One byte per bit keeps instances printable and debugging
//! trivial.

use crate::graph::Graph;

pub fn encode_graph(g: &Graph) -> Vec<u8> {
    let n = g.n();
    let mut out = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            out.push(if g.has_edge(u, v) { b'1' } else { b'0' });
        }
    }
    out
}

/// Decodes a row-major matrix; `None` on any malformation, including the
/// empty string (the empty graph is rejected everywhere).
pub fn decode_graph(x: &[u8]) -> Option<Graph> {
    let n = isqrt(x.len());
    if n == 0 || n * n != x.len() {
        return None;
    }
    if x.iter().any(|&b| b != b'0' && b != b'1') {
        return None;
    }
    for u in 0..n {
        if x[u * n + u] != b'0' {
            return None;
        }
        for v in 0..n {
            if x[u * n + v] != x[v * n + u] {
                return None;
            }
        }
    }
    let mut g = Graph::new(n).ok()?;
    for u in 0..n {
        for v in (u + 1)..n {
            if x[u * n + v] == b'1' {
                g.add_edge(u, v).ok()?;
            }
        }
    }
    Some(g)
}

fn isqrt(x: usize) -> usize {
    if x == 0 {
        return 0;
    }
    let mut r = (x as f64).sqrt() as usize;
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    while r * r > x {
        r -= 1;
    }
    r
}
