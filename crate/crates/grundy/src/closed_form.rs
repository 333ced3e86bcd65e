//! Exact values for paths and web graphs.
//!
//! On a path, the maximum legal sequence has length `n` exactly when `C` is
//! a *good configuration* (gconf), a recursive condition that strips two
//! vertices from whichever end lies outside `C`; otherwise the value is
//! `n − 1`. Note the gconf recursion deliberately ignores the no-isolated-
//! vertex rule: subpaths may strand vertices of `V ∖ C`.
//!
//! On a web `W_n^k`, the value is `m_1` when `C = V`, or when some
//! `i ∉ C` leaves `V ∖ N[i]` inducing a path for which `C` is a gconf;
//! otherwise `m_1 − 1`. Whether `V ∖ N[i]` really induces a path is checked
//! on the generated graph: for `k ≥ 2` the candidate segment usually has
//! chords and the case simply never applies.

use std::collections::HashMap;

use crate::bounds::m1_bound;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::instance::Instance;
use crate::io::gen_web;

/// Good-configuration test for a path on `in_c.len()` vertices, 0-based.
///
/// Size 1 requires the vertex in `C`; size 2 requires at least one endpoint
/// outside `C`; larger paths recurse on `{lo+2..hi}` when `lo ∉ C` or on
/// `{lo..hi-2}` when `hi ∉ C`. Intervals are memoized.
fn gconf_interval(in_c: &[bool], lo: usize, hi: usize, memo: &mut HashMap<(usize, usize), bool>) -> bool {
    if let Some(&r) = memo.get(&(lo, hi)) {
        return r;
    }
    let size = hi - lo + 1;
    let r = match size {
        1 => in_c[lo],
        2 => !(in_c[lo] && in_c[hi]),
        _ => {
            (!in_c[lo] && gconf_interval(in_c, lo + 2, hi, memo))
                || (!in_c[hi] && gconf_interval(in_c, lo, hi - 2, memo))
        }
    };
    memo.insert((lo, hi), r);
    r
}

/// Is `cset` a good configuration for the path `P_n`? `cset` holds 0-based
/// path positions.
pub fn is_gconf(n: usize, cset: &VertexSet) -> bool {
    assert!(n >= 1, "gconf is defined for n >= 1");
    let in_c: Vec<bool> = (0..n).map(|i| cset.contains(i)).collect();
    gconf_interval(&in_c, 0, n - 1, &mut HashMap::new())
}

/// Exact value for `P_n` with closed set `cset` (0-based positions):
/// `n` if `cset` is a gconf, `n − 1` otherwise.
pub fn gamma_path(n: usize, cset: &VertexSet) -> Result<usize> {
    if n == 1 && !cset.contains(0) {
        return Err(Error::InvalidInstance(
            "P_1 with C = {} has an isolated vertex outside C".into(),
        ));
    }
    Ok(if is_gconf(n, cset) { n } else { n - 1 })
}

/// If the subgraph of `g` induced by `verts` is a path, returns its vertex
/// order from one endpoint to the other.
fn induced_path_order(g: &Graph, verts: &[Vertex]) -> Option<Vec<Vertex>> {
    let t = verts.len();
    if t == 1 {
        return Some(verts.to_vec());
    }
    let inside = |w: Vertex| verts.binary_search(&w).is_ok();
    let deg = |v: Vertex| g.neighbors(v).iter().filter(|&&w| inside(w)).count();
    let mut edge_count = 0usize;
    let mut endpoints = Vec::new();
    for &v in verts {
        let d = deg(v);
        if d > 2 {
            return None;
        }
        if d == 1 {
            endpoints.push(v);
        }
        edge_count += d;
    }
    if edge_count != 2 * (t - 1) || endpoints.len() != 2 {
        return None;
    }
    // walk the path from one endpoint; failure to reach all vertices means
    // the edges formed a path plus a separate cycle
    let mut order = vec![endpoints[0]];
    let mut prev = None;
    while order.len() < t {
        let cur = *order.last().unwrap();
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| inside(w) && Some(w) != prev)?;
        prev = Some(cur);
        order.push(next);
    }
    Some(order)
}

/// Exact value for the web `W_n^k` with closed set `cset` (vertices
/// `0..n`). `m_1` is `n − 2k` when `C = V` and `n − 2k + 1` otherwise.
pub fn gamma_web(n: usize, k: usize, cset: &VertexSet) -> Result<usize> {
    let g = gen_web(n, k)?;
    let m1 = if cset.count_ones(..) == n {
        return Ok(n - 2 * k);
    } else {
        n - 2 * k + 1
    };
    // search every i outside C for a witness; C breaks rotational symmetry
    for i in 0..n {
        if cset.contains(i) {
            continue;
        }
        let mut verts: Vec<Vertex> = (0..n as Vertex)
            .filter(|&v| v as usize != i && !g.has_edge(i as Vertex, v))
            .collect();
        verts.sort_unstable();
        debug_assert_eq!(verts.len(), n - 2 * k - 1);
        if let Some(order) = induced_path_order(&g, &verts) {
            let mut path_c = crate::graph::vset(order.len());
            for (pos, &v) in order.iter().enumerate() {
                if cset.contains(v as usize) {
                    path_c.insert(pos);
                }
            }
            if is_gconf(order.len(), &path_c) {
                return Ok(m1);
            }
        }
    }
    Ok(m1 - 1)
}

/// `m_1` for arbitrary instances; re-exported here next to the closed forms.
pub fn m1(inst: &Instance) -> usize {
    m1_bound(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{full_set, set_of, vset};

    fn cs(n: usize, vs: &[u32]) -> VertexSet {
        set_of(n, vs.iter().copied())
    }

    #[test]
    fn gconf_base_cases() {
        assert!(is_gconf(1, &cs(1, &[0])));
        assert!(!is_gconf(1, &vset(1)));
        assert!(!is_gconf(2, &cs(2, &[0, 1])));
        assert!(is_gconf(2, &cs(2, &[0])));
        assert!(is_gconf(2, &vset(2)));
    }

    #[test]
    fn gconf_recursion_cases() {
        // third vertex closed: strip from the left, leaving {3} with C = {3}
        assert!(is_gconf(3, &cs(3, &[2])));
        assert!(!is_gconf(3, &cs(3, &[1])));
    }

    #[test]
    fn path_values() {
        assert_eq!(gamma_path(2, &cs(2, &[0, 1])).unwrap(), 1);
        assert_eq!(gamma_path(2, &cs(2, &[0])).unwrap(), 2);
        assert_eq!(gamma_path(7, &vset(7)).unwrap(), 6);
        assert!(gamma_path(1, &vset(1)).is_err());
    }

    #[test]
    fn web_values_from_the_worked_examples() {
        // W_8^1 and W_8^3 with C = {1,2,3,4,5,7} (0-based web labels)
        let c = cs(8, &[1, 2, 3, 4, 5, 7]);
        assert_eq!(gamma_web(8, 1, &c).unwrap(), 6);
        assert_eq!(gamma_web(8, 3, &c).unwrap(), 3);
        assert_eq!(gamma_web(10, 2, &full_set(10)).unwrap(), 6);
    }

    #[test]
    fn web_m1_values() {
        let inst = Instance::new(gen_web(8, 3).unwrap(), cs(8, &[1, 2, 3, 4, 5, 7])).unwrap();
        assert_eq!(m1(&inst), 3);
    }

    #[test]
    fn chordal_segment_is_not_a_path() {
        // V \ N[i] in W_10^2 is five consecutive vertices with chords
        let g = gen_web(10, 2).unwrap();
        let verts: Vec<Vertex> = vec![3, 4, 5, 6, 7];
        assert!(induced_path_order(&g, &verts).is_none());
        // in the cycle W_10^1 the same kind of segment is a path
        let c10 = gen_web(10, 1).unwrap();
        let seg: Vec<Vertex> = vec![2, 3, 4, 5, 6, 7, 8];
        assert_eq!(
            induced_path_order(&c10, &seg).unwrap(),
            vec![2, 3, 4, 5, 6, 7, 8]
        );
    }
}
