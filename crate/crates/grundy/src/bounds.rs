//! Greedy maximalization and the `δ_t`/`m_t` bound family.
//!
//! `δ_t` is the minimum coverage of a legal length-`t` prefix and
//! `m_t = n − δ_t + t` bounds the maximum sequence length from above.
//! The initial-bounds routine sweeps every legal triple to find `δ_3`,
//! greedily maximalizing a triple each time `δ_3` improves, and keeps the
//! longest result as the lower-bound witness.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Vertex, VertexSet};
use crate::instance::Instance;
use crate::sequence::{evaluate, Sequence};

/// Cached `◁` relation: `tri(a, b)` iff `N⟨b⟩ ∖ N⟨a⟩ ≠ ∅`, i.e. `(a, b)`
/// is a legal pair. Stored as a bit matrix up to a size cap, computed on
/// demand beyond it.
pub(crate) struct Triangle {
    rows: Option<Vec<VertexSet>>,
}

const TRIANGLE_MATRIX_MAX: usize = 2048;

impl Triangle {
    pub fn new(inst: &Instance) -> Triangle {
        let n = inst.n();
        if n > TRIANGLE_MATRIX_MAX {
            return Triangle { rows: None };
        }
        let mut rows = Vec::with_capacity(n);
        for a in 0..n as Vertex {
            let mut row = crate::graph::vset(n);
            for b in 0..n as Vertex {
                if inst.triangle(a, b) {
                    row.insert(b as usize);
                }
            }
            rows.push(row);
        }
        Triangle { rows: Some(rows) }
    }

    #[inline]
    pub fn check(&self, inst: &Instance, a: Vertex, b: Vertex) -> bool {
        match &self.rows {
            Some(rows) => rows[a as usize].contains(b as usize),
            None => inst.triangle(a, b),
        }
    }
}

/// Number of vertices `v` would newly footprint on top of `covered`.
#[inline]
fn gain(inst: &Instance, v: Vertex, covered: &VertexSet) -> usize {
    inst.nbr(v).difference_count(covered)
}

/// Greedily extends a legal sequence until it is maximal (and therefore
/// dominating). Each step picks a candidate minimizing the number of newly
/// footprinted vertices, with a fresh uniform draw from `[0,1)` per
/// candidate breaking ties.
pub fn maximalize(inst: &Instance, seed: &Sequence, rng: &mut impl Rng) -> Result<Sequence> {
    let report = evaluate(inst, seed)?;
    if !report.legal {
        return Err(Error::NotLegal {
            position: report.conflicting[0],
        });
    }
    let n = inst.n();
    let mut covered = report.dominated;
    let mut in_seq = vec![false; n];
    let mut out: Vec<Vertex> = seed.vertices().to_vec();
    for &v in &out {
        in_seq[v as usize] = true;
    }
    while covered.count_ones(..) < n {
        let mut best: Option<(f64, Vertex)> = None;
        for v in 0..n as Vertex {
            if in_seq[v as usize] {
                continue;
            }
            let g = gain(inst, v, &covered);
            if g == 0 {
                continue;
            }
            let score = g as f64 + rng.random::<f64>();
            if best.map_or(true, |(s, _)| score < s) {
                best = Some((score, v));
            }
        }
        let (_, v) = best.expect("an uncovered vertex always has an uncovered coverer");
        covered.union_with(inst.nbr(v));
        in_seq[v as usize] = true;
        out.push(v);
    }
    Ok(Sequence::new(out).expect("extension keeps vertices distinct"))
}

/// Exact `δ_t` for `t ∈ {1,2,3}` by exhaustive enumeration of legal
/// prefixes, with the `◁` matrix pruning pairs and triples.
pub fn delta_t(inst: &Instance, t: usize) -> Result<usize> {
    let n = inst.n();
    match t {
        1 => Ok((0..n as Vertex).map(|v| inst.nbr_size(v)).min().unwrap()),
        2 | 3 => {
            let tri = Triangle::new(inst);
            let mut best: Option<usize> = None;
            let mut w12 = crate::graph::vset(n);
            for v1 in 0..n as Vertex {
                for v2 in 0..n as Vertex {
                    if !tri.check(inst, v1, v2) {
                        continue;
                    }
                    if t == 2 {
                        let size = inst.nbr_size(v1) + gain(inst, v2, inst.nbr(v1));
                        if best.map_or(true, |b| size < b) {
                            best = Some(size);
                        }
                        continue;
                    }
                    w12.clone_from(inst.nbr(v1));
                    w12.union_with(inst.nbr(v2));
                    let base = w12.count_ones(..);
                    for v3 in 0..n as Vertex {
                        if !tri.check(inst, v1, v3) || !tri.check(inst, v2, v3) {
                            continue;
                        }
                        let d = gain(inst, v3, &w12);
                        if d == 0 {
                            continue;
                        }
                        let size = base + d;
                        if best.map_or(true, |b| size < b) {
                            best = Some(size);
                        }
                    }
                }
            }
            best.ok_or(Error::NoLegalPrefix(t))
        }
        _ => Err(Error::BadParameters(format!(
            "delta_t supports t in 1..=3, got {t}"
        ))),
    }
}

/// `m_t = n − δ_t + t`.
pub fn m_t(inst: &Instance, t: usize) -> Result<usize> {
    Ok(inst.n() - delta_t(inst, t)? + t)
}

/// `m_1 = n − min_v |N⟨v⟩| + 1`, the linear-time upper bound.
pub fn m1_bound(inst: &Instance) -> usize {
    let d1 = (0..inst.n() as Vertex)
        .map(|v| inst.nbr_size(v))
        .min()
        .expect("instances are nonempty");
    inst.n() - d1 + 1
}

/// Initial lower/upper bounds with a maximal witness.
#[derive(Clone, Debug)]
pub struct Bounds {
    pub lb: usize,
    pub witness: Sequence,
    pub ub: usize,
    pub delta_t: usize,
    pub t: usize,
}

/// Sweeps every legal triple for `δ_3` and maximalizes the triple on each
/// improvement, keeping the longest maximal sequence seen. When no legal
/// triple exists the maximum is at most 2 and an exhaustive search over
/// sequences of length ≤ 2 returns the exact value.
pub fn initial_bounds(inst: &Instance, rng: &mut impl Rng) -> Bounds {
    let n = inst.n();
    let tri = Triangle::new(inst);
    // One above the worst possible coverage, so that the first legal triple
    // found always counts as an improvement and gets maximalized.
    let mut delta3 = n + 1;
    let mut best: Option<Sequence> = None;
    let mut w12 = crate::graph::vset(n);
    for v1 in 0..n as Vertex {
        for v2 in 0..n as Vertex {
            if !tri.check(inst, v1, v2) {
                continue;
            }
            w12.clone_from(inst.nbr(v1));
            w12.union_with(inst.nbr(v2));
            let base = w12.count_ones(..);
            for v3 in 0..n as Vertex {
                if !tri.check(inst, v1, v3) || !tri.check(inst, v2, v3) {
                    continue;
                }
                let d = gain(inst, v3, &w12);
                if d == 0 {
                    continue;
                }
                if base + d < delta3 {
                    delta3 = base + d;
                    let triple = Sequence::new(vec![v1, v2, v3]).unwrap();
                    let t = maximalize(inst, &triple, rng).expect("legal triple");
                    if best.as_ref().map_or(true, |b| t.len() > b.len()) {
                        best = Some(t);
                    }
                }
            }
        }
    }

    match best {
        Some(witness) => Bounds {
            lb: witness.len(),
            ub: n - delta3 + 3,
            delta_t: delta3,
            t: 3,
            witness,
        },
        None => small_gamma_bounds(inst, &tri),
    }
}

/// Exact treatment of instances with maximum length ≤ 2: every maximal
/// sequence then covers all of `V`, so `δ_γ = n` and `m_γ = γ`.
fn small_gamma_bounds(inst: &Instance, tri: &Triangle) -> Bounds {
    let n = inst.n();
    for a in 0..n as Vertex {
        for b in 0..n as Vertex {
            if tri.check(inst, a, b) {
                // legal pair, and no legal triple exists, so it is maximal
                let witness = Sequence::new(vec![a, b]).unwrap();
                return Bounds {
                    lb: 2,
                    witness,
                    ub: 2,
                    delta_t: n,
                    t: 2,
                };
            }
        }
    }
    Bounds {
        lb: 1,
        witness: Sequence::new(vec![0]).unwrap(),
        ub: 1,
        delta_t: n,
        t: 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::five_cycle;
    use crate::sequence::is_maximal;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn rng(seed: u64) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(seed)
    }

    #[test]
    fn five_cycle_deltas() {
        let inst = five_cycle(true);
        assert_eq!(delta_t(&inst, 1).unwrap(), 3);
        assert_eq!(delta_t(&inst, 3).unwrap(), 5);
        assert_eq!(m1_bound(&inst), 3);
    }

    #[test]
    fn maximalize_keeps_a_maximal_seed() {
        let inst = five_cycle(true);
        let seed = Sequence::new(vec![2, 3, 4]).unwrap();
        let out = maximalize(&inst, &seed, &mut rng(7)).unwrap();
        assert_eq!(out.vertices(), &[2, 3, 4]);
    }

    #[test]
    fn maximalize_from_empty_is_maximal_and_dominating() {
        let inst = five_cycle(true);
        for s in 0..5 {
            let out = maximalize(&inst, &Sequence::empty(), &mut rng(s)).unwrap();
            assert!(out.len() >= 2);
            assert!(is_maximal(&inst, &out).unwrap());
            assert!(evaluate(&inst, &out).unwrap().dominating);
        }
    }

    #[test]
    fn maximalize_rejects_illegal_seed() {
        let inst = five_cycle(true);
        let bad = Sequence::new(vec![2, 3, 4, 0]).unwrap();
        assert!(matches!(
            maximalize(&inst, &bad, &mut rng(0)),
            Err(Error::NotLegal { position: 3 })
        ));
    }

    #[test]
    fn maximalize_p4_with_closed_ends() {
        let inst = Instance::build(4, &[(0, 1), (1, 2), (2, 3)], [0, 3]).unwrap();
        for s in 0..5 {
            let out = maximalize(&inst, &Sequence::empty(), &mut rng(s)).unwrap();
            assert!(out.len() <= 3);
            assert!(is_maximal(&inst, &out).unwrap());
        }
    }

    #[test]
    fn five_cycle_initial_bounds_close_the_gap() {
        let inst = five_cycle(true);
        let b = initial_bounds(&inst, &mut rng(1));
        assert_eq!(b.ub, 3);
        assert_eq!(b.lb, 3);
        assert!(is_maximal(&inst, &b.witness).unwrap());
    }

    #[test]
    fn single_vertex_fallback() {
        let inst = Instance::build(1, &[], [0]).unwrap();
        let b = initial_bounds(&inst, &mut rng(0));
        assert_eq!((b.lb, b.ub), (1, 1));
    }

    #[test]
    fn deterministic_under_fixed_seed() {
        let inst = five_cycle(false);
        let a = initial_bounds(&inst, &mut rng(42));
        let b = initial_bounds(&inst, &mut rng(42));
        assert_eq!(a.witness, b.witness);
        assert_eq!((a.lb, a.ub), (b.lb, b.ub));
    }

    #[test]
    fn delta_errors() {
        let inst = Instance::build(1, &[], [0]).unwrap();
        assert!(matches!(delta_t(&inst, 2), Err(Error::NoLegalPrefix(2))));
        assert!(matches!(delta_t(&inst, 4), Err(Error::BadParameters(_))));
    }
}
