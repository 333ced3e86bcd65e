//! Vertex sequences, their footprints and legality.
//!
//! Position `i` of a sequence footprints `W_i = N⟨v_i⟩ ∖ ⋃_{j<i} N⟨v_j⟩`,
//! the vertices newly covered at that step. A sequence is legal when every
//! footprint is nonempty; it is dominating when the footprints cover `V`.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{vset, Vertex, VertexSet};
use crate::instance::Instance;

/// An ordered list of distinct vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sequence(Vec<Vertex>);

impl Sequence {
    pub fn empty() -> Sequence {
        Sequence(Vec::new())
    }

    /// Rejects repeated vertices; range is checked against an instance on use.
    pub fn new(vertices: Vec<Vertex>) -> Result<Sequence> {
        let mut seen = std::collections::HashSet::new();
        for &v in &vertices {
            if !seen.insert(v) {
                return Err(Error::RepeatedVertex(v));
            }
        }
        Ok(Sequence(vertices))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    /// 1-based rendering, the form used in all printed output.
    pub fn one_based(&self) -> Vec<Vertex> {
        self.0.iter().map(|&v| v + 1).collect()
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, ")")
    }
}

impl<'a> IntoIterator for &'a Sequence {
    type Item = Vertex;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Vertex>>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

/// Full footprint/conflict breakdown of a sequence.
#[derive(Clone, Debug)]
pub struct LegalityReport {
    pub legal: bool,
    /// `W_i` per position; empty exactly at conflicting positions.
    pub footprints: Vec<VertexSet>,
    /// 0-based positions with empty footprint.
    pub conflicting: Vec<usize>,
    /// Union of all footprints.
    pub dominated: VertexSet,
    pub dominating: bool,
}

/// Evaluates footprints left to right. All conflicting positions are
/// reported, not just the first one; the tabu search needs the full set.
pub fn evaluate(inst: &Instance, seq: &Sequence) -> Result<LegalityReport> {
    let n = inst.n();
    for v in seq.iter() {
        if v as usize >= n {
            return Err(Error::IndexOutOfRange { v, n });
        }
    }
    let mut covered = vset(n);
    let mut footprints = Vec::with_capacity(seq.len());
    let mut conflicting = Vec::new();
    for (i, v) in seq.iter().enumerate() {
        let mut w = inst.nbr(v).clone();
        w.difference_with(&covered);
        if w.is_clear() {
            conflicting.push(i);
        }
        covered.union_with(inst.nbr(v));
        footprints.push(w);
    }
    let dominating = covered.count_ones(..) == n;
    Ok(LegalityReport {
        legal: conflicting.is_empty(),
        footprints,
        conflicting,
        dominated: covered,
        dominating,
    })
}

/// True iff no vertex can be legally appended. Errors on illegal input.
/// Maximal sequences are always dominating on valid instances.
pub fn is_maximal(inst: &Instance, seq: &Sequence) -> Result<bool> {
    let report = evaluate(inst, seq)?;
    if !report.legal {
        return Err(Error::NotLegal {
            position: report.conflicting[0],
        });
    }
    Ok(!extendable(inst, seq, &report.dominated))
}

pub(crate) fn extendable(inst: &Instance, seq: &Sequence, dominated: &VertexSet) -> bool {
    (0..inst.n() as Vertex).any(|v| !seq.contains(v) && !inst.nbr(v).is_subset(dominated))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::five_cycle;

    fn seq(vs: &[Vertex]) -> Sequence {
        Sequence::new(vs.to_vec()).unwrap()
    }

    #[test]
    fn rejects_repeats() {
        assert!(matches!(
            Sequence::new(vec![1, 2, 1]),
            Err(Error::RepeatedVertex(1))
        ));
    }

    #[test]
    fn five_cycle_footprints() {
        // (3,4,5) in the paper-style 1-based labels
        let inst = five_cycle(true);
        let r = evaluate(&inst, &seq(&[2, 3, 4])).unwrap();
        assert!(r.legal && r.dominating);
        let sets: Vec<Vec<usize>> = r.footprints.iter().map(|w| w.ones().collect()).collect();
        assert_eq!(sets, vec![vec![1, 2, 3], vec![4], vec![0]]);
    }

    #[test]
    fn maximal_but_not_maximum() {
        let inst = five_cycle(true);
        let s = seq(&[4, 2]); // (5,3) 1-based
        let r = evaluate(&inst, &s).unwrap();
        assert!(r.legal && r.dominating);
        assert!(is_maximal(&inst, &s).unwrap());
    }

    #[test]
    fn overlapping_pair_is_still_legal() {
        // (3,2) 1-based: the second vertex still footprints vertex 1
        let inst = five_cycle(true);
        let r = evaluate(&inst, &seq(&[2, 1])).unwrap();
        assert!(r.legal);
        assert_eq!(r.footprints[1].ones().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn maximality_checks() {
        let inst = five_cycle(true);
        assert!(is_maximal(&inst, &seq(&[2, 3, 4])).unwrap());
        assert!(!is_maximal(&inst, &seq(&[2])).unwrap());
        assert!(matches!(
            is_maximal(&inst, &seq(&[2, 3, 4, 0])),
            Err(Error::NotLegal { position: 3 })
        ));
    }

    #[test]
    fn out_of_range_vertex_is_reported() {
        let inst = five_cycle(true);
        assert!(matches!(
            evaluate(&inst, &seq(&[7])),
            Err(Error::IndexOutOfRange { v: 7, n: 5 })
        ));
    }
}
