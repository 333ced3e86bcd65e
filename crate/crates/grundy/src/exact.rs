//! Exact maximum legal sequence length by depth-first search.
//!
//! The search enumerates legal extensions, pruning a prefix of length `t`
//! covering `W` once `t + (n − |W|)` cannot beat the incumbent: every
//! further element must footprint at least one new vertex. Twin reduction
//! and component decomposition run first; an initial greedy bound seeds the
//! incumbent and the `m_3` bound caps the search.
//!
//! `brute_gamma` is the deliberately simple oracle: plain enumeration of
//! every legal sequence with no pruning, capped at 10 vertices. The pruned
//! solver is tested against it.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::bounds::{initial_bounds, m1_bound, maximalize};
use crate::error::{Error, Result};
use crate::graph::{Vertex, VertexSet};
use crate::instance::Instance;
use crate::sequence::{evaluate, Sequence};

#[derive(Clone, Debug)]
pub struct SearchLimits {
    pub max_secs: Option<f64>,
    pub max_nodes: Option<u64>,
    /// Memoize visited `(vertex set, covered set)` states. Off by default;
    /// sound because extension length depends on the prefix only through
    /// that pair.
    pub dominance_cache: bool,
    /// Twin reduction and component decomposition before the search.
    pub use_reductions: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_secs: None,
            max_nodes: None,
            dominance_cache: false,
            use_reductions: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Status {
    Optimal,
    Feasible,
    InfeasibleForBound,
    TimedOut,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub status: Status,
    /// Exact value, present only when `status == Optimal`.
    pub gamma: Option<usize>,
    /// Best (legal, maximal) sequence found; the lower-bound witness.
    pub best: Sequence,
    pub ub: usize,
    pub nodes: u64,
    pub elapsed: Duration,
}

/// Pruning-free enumeration of all legal sequences. The testing oracle.
pub fn brute_gamma(inst: &Instance) -> Result<usize> {
    const LIMIT: usize = 10;
    let n = inst.n();
    if n > LIMIT {
        return Err(Error::TooLarge { n, limit: LIMIT });
    }
    let nb: Vec<u32> = (0..n)
        .map(|v| inst.nbr(v as Vertex).ones().fold(0u32, |m, b| m | 1 << b))
        .collect();
    fn rec(nb: &[u32], used: u32, covered: u32) -> usize {
        let mut best = used.count_ones() as usize;
        for (v, &mask) in nb.iter().enumerate() {
            if used & (1 << v) == 0 && mask & !covered != 0 {
                best = best.max(rec(nb, used | 1 << v, covered | mask));
            }
        }
        best
    }
    Ok(rec(&nb, 0, 0))
}

enum Stop {
    Target,
    Time,
    Nodes,
}

struct Dfs<'a> {
    inst: &'a Instance,
    n: usize,
    seq: Vec<Vertex>,
    in_seq: Vec<bool>,
    best: Vec<Vertex>,
    target: usize,
    nodes: u64,
    deadline: Option<Instant>,
    node_cap: Option<u64>,
    stop: Option<Stop>,
    cache: Option<HashSet<(u64, u64)>>,
}

impl<'a> Dfs<'a> {
    fn hit_limit(&mut self) -> bool {
        if self.stop.is_some() {
            return true;
        }
        if let Some(cap) = self.node_cap {
            if self.nodes >= cap {
                self.stop = Some(Stop::Nodes);
                return true;
            }
        }
        if self.nodes % 1024 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.stop = Some(Stop::Time);
                    return true;
                }
            }
        }
        false
    }

    /// Returns the longest legal sequence length seen in this subtree, used
    /// to assert the prefix bound in debug builds.
    fn run(&mut self, covered: &VertexSet) -> usize {
        self.nodes += 1;
        let t = self.seq.len();
        if self.hit_limit() {
            return t;
        }
        let uncovered = self.n - covered.count_ones(..);
        if t + uncovered <= self.best.len() {
            return t;
        }
        if let Some(cache) = &mut self.cache {
            let key = (
                self.in_seq
                    .iter()
                    .enumerate()
                    .fold(0u64, |m, (i, &b)| if b { m | 1 << i } else { m }),
                covered.ones().fold(0u64, |m, b| m | 1 << b),
            );
            if !cache.insert(key) {
                return t;
            }
        }

        let mut cands: Vec<(usize, Vertex)> = (0..self.n as Vertex)
            .filter(|&v| !self.in_seq[v as usize])
            .filter_map(|v| {
                let g = self.inst.nbr(v).difference_count(covered);
                (g > 0).then_some((g, v))
            })
            .collect();
        if cands.is_empty() {
            // maximal, hence dominating
            if t > self.best.len() {
                self.best = self.seq.clone();
                if self.best.len() >= self.target {
                    self.stop = Some(Stop::Target);
                }
            }
            return t;
        }
        cands.sort_unstable();

        let mut deepest = t;
        for (_, v) in cands {
            if self.stop.is_some() {
                break;
            }
            let mut next = covered.clone();
            next.union_with(self.inst.nbr(v));
            self.seq.push(v);
            self.in_seq[v as usize] = true;
            deepest = deepest.max(self.run(&next));
            self.seq.pop();
            self.in_seq[v as usize] = false;
        }
        debug_assert!(deepest <= t + uncovered, "prefix bound must hold");
        deepest
    }
}

struct ComponentOutcome {
    best: Vec<Vertex>,
    ub: usize,
    optimal: bool,
    nodes: u64,
    timed_out: bool,
}

fn solve_component(
    inst: &Instance,
    hint: &[Vertex],
    extra_ub: Option<usize>,
    limits: &SearchLimits,
    deadline: Option<Instant>,
    comp_index: usize,
) -> ComponentOutcome {
    let n = inst.n();
    let mut rng = ChaCha12Rng::seed_from_u64(0x5eed ^ comp_index as u64);

    let (mut incumbent, mut ub) = if n <= 160 {
        let b = initial_bounds(inst, &mut rng);
        (b.witness.vertices().to_vec(), b.ub)
    } else {
        let w = maximalize(inst, &Sequence::empty(), &mut rng).expect("empty seed is legal");
        (w.vertices().to_vec(), m1_bound(inst))
    };
    if hint.len() > incumbent.len() {
        incumbent = hint.to_vec();
    }
    if let Some(e) = extra_ub {
        ub = ub.min(e);
    }
    if incumbent.len() >= ub {
        return ComponentOutcome {
            best: incumbent,
            ub,
            optimal: true,
            nodes: 0,
            timed_out: false,
        };
    }

    let mut dfs = Dfs {
        inst,
        n,
        seq: Vec::new(),
        in_seq: vec![false; n],
        best: incumbent,
        target: ub,
        nodes: 0,
        deadline,
        node_cap: limits.max_nodes,
        stop: None,
        cache: (limits.dominance_cache && n <= 64).then(HashSet::new),
    };
    let covered = crate::graph::vset(n);
    dfs.run(&covered);

    let optimal = matches!(dfs.stop, None | Some(Stop::Target));
    let timed_out = matches!(dfs.stop, Some(Stop::Time));
    let ub_final = if optimal { dfs.best.len() } else { ub };
    ComponentOutcome {
        best: dfs.best,
        ub: ub_final,
        optimal,
        nodes: dfs.nodes,
        timed_out,
    }
}

/// Exact solve. `ub_hint` must be a valid upper bound when given (it is
/// trusted); `lb_hint` must be a legal sequence and is installed as the
/// first incumbent.
pub fn solve_exact(
    inst: &Instance,
    ub_hint: Option<usize>,
    lb_hint: Option<&Sequence>,
    limits: &SearchLimits,
) -> Result<SolveResult> {
    let t0 = Instant::now();
    if let Some(h) = lb_hint {
        let r = evaluate(inst, h)?;
        if !r.legal {
            return Err(Error::NotLegal {
                position: r.conflicting[0],
            });
        }
    }
    let deadline = limits
        .max_secs
        .map(|s| t0 + Duration::from_secs_f64(s.max(0.0)));

    // Reductions: twins first, then split into components.
    let (work, kept): (Instance, Vec<Vertex>) = if limits.use_reductions {
        let tr = inst.twin_reduce();
        (tr.instance, tr.kept)
    } else {
        (inst.clone(), (0..inst.n() as Vertex).collect())
    };
    let hint_work: Vec<Vertex> = match lb_hint {
        Some(h) if limits.use_reductions => {
            let tr_rep = inst.twin_reduce().rep_index;
            let mut seen = HashSet::new();
            h.iter()
                .map(|v| tr_rep[v as usize])
                .filter(|&v| seen.insert(v))
                .collect()
        }
        Some(h) => h.vertices().to_vec(),
        None => Vec::new(),
    };

    let comps = if limits.use_reductions {
        work.components()
    } else {
        vec![crate::instance::Component {
            vertices: (0..work.n() as Vertex).collect(),
            instance: work.clone(),
        }]
    };
    let single = comps.len() == 1;

    let mut best_global: Vec<Vertex> = Vec::new();
    let mut ub_total = 0usize;
    let mut nodes = 0u64;
    let mut all_optimal = true;
    let mut timed_out = false;

    for (ci, comp) in comps.iter().enumerate() {
        let in_comp: HashSet<Vertex> = comp.vertices.iter().copied().collect();
        let local_hint: Vec<Vertex> = hint_work
            .iter()
            .filter(|v| in_comp.contains(v))
            .map(|&v| comp.vertices.binary_search(&v).unwrap() as Vertex)
            .collect();
        let extra = if single { ub_hint } else { None };
        let out = solve_component(&comp.instance, &local_hint, extra, limits, deadline, ci);
        nodes += out.nodes;
        ub_total += out.ub;
        all_optimal &= out.optimal;
        timed_out |= out.timed_out;
        best_global.extend(
            out.best
                .iter()
                .map(|&lv| kept[comp.vertices[lv as usize] as usize]),
        );
    }

    if let Some(u) = ub_hint {
        ub_total = ub_total.min(u);
    }
    let best = Sequence::new(best_global).expect("component sequences are disjoint");
    debug_assert!(evaluate(inst, &best)?.legal);
    let status = if all_optimal {
        Status::Optimal
    } else if timed_out {
        Status::TimedOut
    } else {
        Status::Feasible
    };
    Ok(SolveResult {
        gamma: (status == Status::Optimal).then_some(best.len()),
        ub: if status == Status::Optimal {
            best.len()
        } else {
            ub_total
        },
        best,
        nodes,
        elapsed: t0.elapsed(),
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::five_cycle;

    #[test]
    fn brute_rejects_large_instances() {
        let web = crate::io::gen_web(12, 1).unwrap();
        let inst = Instance::new(web, crate::graph::full_set(12)).unwrap();
        assert!(matches!(
            brute_gamma(&inst),
            Err(Error::TooLarge { n: 12, limit: 10 })
        ));
    }

    #[test]
    fn brute_small_values() {
        // P4 with both endpoints closed: gamma = m1 = n - 1
        let p4 = Instance::build(4, &[(0, 1), (1, 2), (2, 3)], [0, 3]).unwrap();
        assert_eq!(brute_gamma(&p4).unwrap(), 3);
        let k3 = Instance::build(3, &[(0, 1), (1, 2), (0, 2)], 0..3).unwrap();
        assert_eq!(brute_gamma(&k3).unwrap(), 1);
        let p5 = Instance::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4)], []).unwrap();
        assert_eq!(brute_gamma(&p5).unwrap(), 4);
    }

    #[test]
    fn five_cycle_solves_to_three() {
        let inst = five_cycle(true);
        let r = solve_exact(&inst, None, None, &SearchLimits::default()).unwrap();
        assert_eq!(r.status, Status::Optimal);
        assert_eq!(r.gamma, Some(3));
        assert!(crate::sequence::is_maximal(&inst, &r.best).unwrap());
    }

    #[test]
    fn lb_hint_must_be_legal() {
        let inst = five_cycle(true);
        let bad = Sequence::new(vec![2, 3, 4, 0]).unwrap();
        assert!(solve_exact(&inst, None, Some(&bad), &SearchLimits::default()).is_err());
    }

    #[test]
    fn disjoint_union_adds_up() {
        // P3 ∪ C5 with C = V: 2 + 3
        let edges = [(0, 1), (1, 2), (3, 4), (4, 5), (5, 6), (6, 7), (7, 3)];
        let inst = Instance::build(8, &edges, 0..8).unwrap();
        let r = solve_exact(&inst, None, None, &SearchLimits::default()).unwrap();
        assert_eq!(r.gamma, Some(5));
        assert_eq!(brute_gamma(&inst).unwrap(), 5);
    }

    #[test]
    fn dominance_cache_agrees() {
        let inst = five_cycle(false);
        let base = solve_exact(&inst, None, None, &SearchLimits::default()).unwrap();
        let cached = solve_exact(
            &inst,
            None,
            None,
            &SearchLimits {
                dominance_cache: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(base.gamma, cached.gamma);
    }
}
