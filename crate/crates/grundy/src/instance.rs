//! Problem instances: a graph together with the closed-vertex set `C`.
//!
//! The set `C` selects, per vertex, which neighborhood the covering process
//! uses: the closed neighborhood `N[v]` for `v ∈ C` and the open one `N(v)`
//! otherwise. A vertex outside `C` with no neighbors has an empty
//! neighborhood, which makes the problem undefined; such inputs are rejected
//! at construction.

use crate::error::{Error, Result};
use crate::graph::{vset, Graph, Vertex, VertexSet};

#[derive(Clone, Debug)]
pub struct Instance {
    graph: Graph,
    closed: VertexSet,
    nbhd: Vec<VertexSet>,
}

impl Instance {
    pub fn new(graph: Graph, closed: VertexSet) -> Result<Instance> {
        let n = graph.n();
        if closed.len() != n {
            return Err(Error::BadParameters(format!(
                "closed set universe {} does not match n = {}",
                closed.len(),
                n
            )));
        }
        let mut nbhd = Vec::with_capacity(n);
        for v in 0..n {
            let mut s = vset(n);
            for &u in graph.neighbors(v as Vertex) {
                s.insert(u as usize);
            }
            if closed.contains(v) {
                s.insert(v);
            }
            if s.is_clear() {
                return Err(Error::IsolatedOutsideC(v as Vertex));
            }
            nbhd.push(s);
        }
        Ok(Instance {
            graph,
            closed,
            nbhd,
        })
    }

    /// Builds an instance from scratch; `closed_set` holds 0-based ids.
    pub fn build(
        n: usize,
        edges: &[(Vertex, Vertex)],
        closed_set: impl IntoIterator<Item = Vertex>,
    ) -> Result<Instance> {
        let mut closed = vset(n);
        for v in closed_set {
            if v as usize >= n {
                return Err(Error::IndexOutOfRange { v, n });
            }
            closed.insert(v as usize);
        }
        Instance::new(Graph::from_edges(n, edges)?, closed)
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn closed(&self) -> &VertexSet {
        &self.closed
    }

    pub fn is_closed(&self, v: Vertex) -> bool {
        self.closed.contains(v as usize)
    }

    /// The neighborhood `N⟨v⟩`: `N[v]` if `v ∈ C`, else `N(v)`.
    pub fn neighborhood(&self, v: Vertex) -> Result<&VertexSet> {
        if (v as usize) < self.n() {
            Ok(&self.nbhd[v as usize])
        } else {
            Err(Error::IndexOutOfRange { v, n: self.n() })
        }
    }

    /// Unchecked neighborhood access for in-range vertices.
    pub fn nbr(&self, v: Vertex) -> &VertexSet {
        &self.nbhd[v as usize]
    }

    pub fn nbr_size(&self, v: Vertex) -> usize {
        self.nbhd[v as usize].count_ones(..)
    }

    /// `a ◁ b`: `N⟨b⟩ ∖ N⟨a⟩ ≠ ∅`, i.e. the pair `(a, b)` is legal.
    pub fn triangle(&self, a: Vertex, b: Vertex) -> bool {
        !self.nbhd[b as usize].is_subset(&self.nbhd[a as usize])
    }

    /// Deletes one vertex of each twin pair (`N⟨u⟩ = N⟨v⟩`) until none
    /// remain. The higher-indexed twin of the lexicographically first pair
    /// is removed at every round, which makes the reduction deterministic.
    pub fn twin_reduce(&self) -> TwinReduction {
        let mut inst = self.clone();
        // current index -> original id
        let mut orig_of: Vec<Vertex> = (0..self.n() as Vertex).collect();
        // original id -> original id of its surviving representative
        let mut rep: Vec<Vertex> = (0..self.n() as Vertex).collect();

        loop {
            let n = inst.n();
            let mut found = None;
            'scan: for u in 0..n {
                for v in (u + 1)..n {
                    if inst.nbhd[u] == inst.nbhd[v] {
                        found = Some((u as Vertex, v as Vertex));
                        break 'scan;
                    }
                }
            }
            let Some((u, v)) = found else { break };
            let (uo, vo) = (orig_of[u as usize], orig_of[v as usize]);
            for r in rep.iter_mut() {
                if *r == vo {
                    *r = uo;
                }
            }
            orig_of.remove(v as usize);
            inst = inst.delete_vertex(v);
        }

        let mut index_of_orig = vec![0 as Vertex; self.n()];
        for (i, &o) in orig_of.iter().enumerate() {
            index_of_orig[o as usize] = i as Vertex;
        }
        let rep_index = rep.iter().map(|&r| index_of_orig[r as usize]).collect();
        TwinReduction {
            instance: inst,
            kept: orig_of,
            rep_index,
        }
    }

    fn delete_vertex(&self, v: Vertex) -> Instance {
        let n = self.n();
        let shift = |w: Vertex| if w > v { w - 1 } else { w };
        let edges: Vec<(Vertex, Vertex)> = self
            .graph
            .edges()
            .filter(|&(a, b)| a != v && b != v)
            .map(|(a, b)| (shift(a), shift(b)))
            .collect();
        let closed = (0..n as Vertex)
            .filter(|&w| w != v && self.is_closed(w))
            .map(shift);
        Instance::build(n - 1, &edges, closed).expect("twin deletion keeps the instance valid")
    }

    /// Splits the instance into its connected components. The general Grundy
    /// domination number is additive over the parts.
    pub fn components(&self) -> Vec<Component> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut verts = Vec::new();
            seen[start] = true;
            while let Some(v) = stack.pop() {
                verts.push(v as Vertex);
                for &u in self.graph.neighbors(v as Vertex) {
                    if !seen[u as usize] {
                        seen[u as usize] = true;
                        stack.push(u as usize);
                    }
                }
            }
            verts.sort_unstable();
            let local = |w: Vertex| verts.binary_search(&w).unwrap() as Vertex;
            let edges: Vec<(Vertex, Vertex)> = self
                .graph
                .edges()
                .filter(|&(a, _)| verts.binary_search(&a).is_ok())
                .map(|(a, b)| (local(a), local(b)))
                .collect();
            let closed = verts
                .iter()
                .filter(|&&w| self.is_closed(w))
                .map(|&w| local(w));
            let instance = Instance::build(verts.len(), &edges, closed)
                .expect("components of a valid instance are valid");
            out.push(Component {
                instance,
                vertices: verts,
            });
        }
        out
    }
}

/// Outcome of the twin reduction.
pub struct TwinReduction {
    pub instance: Instance,
    /// Reduced index -> original vertex id.
    pub kept: Vec<Vertex>,
    /// Original vertex id -> reduced index of its surviving representative.
    pub rep_index: Vec<Vertex>,
}

/// One connected component, with its local-to-global vertex map.
pub struct Component {
    pub instance: Instance,
    /// Local index -> vertex id in the parent instance.
    pub vertices: Vec<Vertex>,
}

/// Convenience constructor used all over the tests: edges given 1-based,
/// as instance files print them.
pub fn instance_1based(
    n: usize,
    edges_1: &[(Vertex, Vertex)],
    closed_1: impl IntoIterator<Item = Vertex>,
) -> Result<Instance> {
    let edges: Vec<(Vertex, Vertex)> = edges_1.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
    Instance::build(n, &edges, closed_1.into_iter().map(|v| v - 1))
}

/// The five-cycle used as the running example throughout the crate docs.
#[cfg(test)]
pub fn five_cycle(closed_all: bool) -> Instance {
    let closed: Vec<Vertex> = if closed_all { (0..5).collect() } else { vec![] };
    Instance::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], closed).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::full_set;

    #[test]
    fn builds_the_five_cycle() {
        let inst = instance_1based(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)], 1..=5).unwrap();
        // N[3] = {2,3,4} in 1-based labels
        let nb = inst.neighborhood(2).unwrap();
        assert_eq!(nb.ones().collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn single_closed_vertex_is_a_valid_instance() {
        let inst = Instance::build(1, &[], [0]).unwrap();
        assert_eq!(inst.nbr_size(0), 1);
    }

    #[test]
    fn isolated_vertex_outside_c_is_rejected() {
        let err = Instance::build(2, &[], [0]).unwrap_err();
        assert!(matches!(err, Error::IsolatedOutsideC(1)));
    }

    #[test]
    fn open_and_closed_neighborhoods() {
        let c5_open = five_cycle(false);
        assert_eq!(
            c5_open.neighborhood(2).unwrap().ones().collect::<Vec<_>>(),
            vec![1, 3]
        );
        let p3 = Instance::build(3, &[(0, 1), (1, 2)], [1]).unwrap();
        assert_eq!(
            p3.neighborhood(1).unwrap().ones().collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
        assert!(matches!(
            p3.neighborhood(3),
            Err(Error::IndexOutOfRange { v: 3, n: 3 })
        ));
    }

    #[test]
    fn complete_graph_with_c_full_collapses_to_one_vertex() {
        let k3 = Instance::build(3, &[(0, 1), (1, 2), (0, 2)], 0..3).unwrap();
        let red = k3.twin_reduce();
        assert_eq!(red.instance.n(), 1);
        assert_eq!(red.instance.closed(), &full_set(1));
        assert_eq!(red.kept, vec![0]);
        assert_eq!(red.rep_index, vec![0, 0, 0]);
    }

    #[test]
    fn twin_free_instance_is_unchanged() {
        let p4 = Instance::build(4, &[(0, 1), (1, 2), (2, 3)], 0..4).unwrap();
        let red = p4.twin_reduce();
        assert_eq!(red.instance.n(), 4);
        assert_eq!(red.kept, vec![0, 1, 2, 3]);
    }

    #[test]
    fn star_leaves_with_open_neighborhoods_are_twins() {
        // K_{1,3} with C = ∅: every leaf has N⟨leaf⟩ = {center}
        let star = Instance::build(4, &[(0, 1), (0, 2), (0, 3)], []).unwrap();
        let red = star.twin_reduce();
        assert_eq!(red.instance.n(), 2);
        assert_eq!(red.instance.graph().edge_count(), 1);
    }

    #[test]
    fn components_partition_the_graph() {
        let two_edges = Instance::build(4, &[(0, 1), (2, 3)], 0..4).unwrap();
        let comps = two_edges.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].vertices, vec![0, 1]);
        assert_eq!(comps[1].vertices, vec![2, 3]);

        let c5 = five_cycle(true);
        assert_eq!(c5.components().len(), 1);
    }
}
