//! Tabu search over fixed-length vertex sequences.
//!
//! For a target length `k` the search walks sequences of `k` distinct
//! vertices minimizing the number of conflicting positions `|𝓘(S)|`
//! (positions with empty footprint). Moves either swap a sequence vertex
//! with an outside one or swap two sequence positions; vertices leaving a
//! position become tabu for a uniform tenure from `[5, 20]`. A shortcut
//! periodically maximalizes random non-conflicting subsequences, which in
//! practice finds length-`k` solutions long before the conflict count
//! converges to zero.

use std::time::{Duration, Instant};

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::bounds::{maximalize, Triangle};
use crate::error::{Error, Result};
use crate::graph::{vset, Vertex, VertexSet};
use crate::instance::Instance;
use crate::sequence::{evaluate, is_maximal, Sequence};

#[derive(Clone, Debug)]
pub struct TabuLimits {
    /// Iteration cap per `tabu_search` call.
    pub max_iters: u64,
    /// Time budget: per call for `tabu_search`, overall for `improve_loop`.
    pub max_time: Option<Duration>,
    /// Inclusive tenure range for vertices entering the tabu list.
    pub tenure: (u32, u32),
    /// Subsequence sizes tried by the alternative-solution shortcut.
    pub alt_sizes: Vec<usize>,
    pub use_altsol: bool,
}

impl Default for TabuLimits {
    fn default() -> Self {
        TabuLimits {
            max_iters: 50_000,
            max_time: Some(Duration::from_secs(30)),
            tenure: (5, 20),
            alt_sizes: vec![2, 3, 4],
            use_altsol: true,
        }
    }
}

/// Conflicting indexes `𝓘(S)` and the positions `𝓙(S)` that conflict with
/// them: `j ∈ 𝓙` iff some conflicting `i > j` has
/// `N⟨v_i⟩ ∩ N⟨v_j⟩ ≠ ∅`. All positions 0-based.
pub fn conflict_sets(inst: &Instance, verts: &[Vertex]) -> (Vec<usize>, Vec<usize>) {
    let n = inst.n();
    let mut covered = vset(n);
    let mut conflicting = Vec::new();
    for (i, &v) in verts.iter().enumerate() {
        if inst.nbr(v).is_subset(&covered) {
            conflicting.push(i);
        }
        covered.union_with(inst.nbr(v));
    }
    let mut with = Vec::new();
    for j in 0..verts.len() {
        let hit = conflicting
            .iter()
            .any(|&i| i > j && !inst.nbr(verts[i]).is_disjoint(inst.nbr(verts[j])));
        if hit {
            with.push(j);
        }
    }
    (conflicting, with)
}

enum Mod {
    Replace { pos: usize, with: Vertex },
    Swap { lo: usize, hi: usize },
}

impl Mod {
    #[inline]
    fn first_changed(&self) -> usize {
        match *self {
            Mod::Replace { pos, .. } => pos,
            Mod::Swap { lo, .. } => lo,
        }
    }

    #[inline]
    fn vertex_at(&self, i: usize, current: &[Vertex]) -> Vertex {
        match *self {
            Mod::Replace { pos, with } if i == pos => with,
            Mod::Swap { lo, hi } if i == lo => current[hi],
            Mod::Swap { lo, hi } if i == hi => current[lo],
            _ => current[i],
        }
    }
}

/// Conflict count of the modified sequence, recomputed from the earliest
/// changed position only.
fn modified_conflicts(
    inst: &Instance,
    current: &[Vertex],
    prefix: &[VertexSet],
    cum_conflicts: &[usize],
    m: &Mod,
    scratch: &mut VertexSet,
) -> usize {
    let start = m.first_changed();
    let mut count = cum_conflicts[start];
    if start == 0 {
        scratch.clear();
    } else {
        scratch.clone_from(&prefix[start - 1]);
    }
    for i in start..current.len() {
        let v = m.vertex_at(i, current);
        if inst.nbr(v).difference_count(scratch) == 0 {
            count += 1;
        }
        scratch.union_with(inst.nbr(v));
    }
    count
}

#[derive(Clone, Copy, Debug)]
enum Move {
    Outside { pos: usize, with: Vertex },
    Inside { lo: usize, hi: usize },
}

pub struct TabuState {
    current: Vec<Vertex>,
    k: usize,
    iter: u64,
    /// Remaining tenure per vertex; nonzero means tabu.
    live: Vec<u32>,
    in_seq: Vec<bool>,
    /// prefix[i] = union of neighborhoods of positions 0..=i.
    prefix: Vec<VertexSet>,
    conflict_at: Vec<bool>,
    /// cum_conflicts[i] = conflicts strictly before position i.
    cum_conflicts: Vec<usize>,
    conflicts: usize,
    best_conflicts: usize,
    tenure: (u32, u32),
    rng: ChaCha12Rng,
    scratch: VertexSet,
}

impl TabuState {
    /// Starts from `k` distinct vertices drawn uniformly without replacement.
    pub fn init(inst: &Instance, k: usize, seed: u64, limits: &TabuLimits) -> Result<TabuState> {
        let n = inst.n();
        if !(3..=n).contains(&k) {
            return Err(Error::BadParameters(format!(
                "tabu needs 3 <= k <= n, got k = {k}, n = {n}"
            )));
        }
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let mut pool: Vec<Vertex> = (0..n as Vertex).collect();
        for i in 0..k {
            let j = rng.random_range(i..n);
            pool.swap(i, j);
        }
        pool.truncate(k);
        let mut st = TabuState {
            current: pool,
            k,
            iter: 0,
            live: vec![0; n],
            in_seq: vec![false; n],
            prefix: vec![vset(n); k],
            conflict_at: vec![false; k],
            cum_conflicts: vec![0; k + 1],
            conflicts: 0,
            best_conflicts: usize::MAX,
            tenure: limits.tenure,
            rng,
            scratch: vset(n),
        };
        st.refresh(inst);
        Ok(st)
    }

    pub fn current(&self) -> &[Vertex] {
        &self.current
    }

    pub fn conflicts(&self) -> usize {
        self.conflicts
    }

    pub fn iterations(&self) -> u64 {
        self.iter
    }

    pub fn best_conflicts(&self) -> usize {
        self.best_conflicts
    }

    pub fn is_tabu(&self, v: Vertex) -> bool {
        self.live[v as usize] > 0
    }

    fn refresh(&mut self, inst: &Instance) {
        for b in self.in_seq.iter_mut() {
            *b = false;
        }
        let mut covered = vset(inst.n());
        self.conflicts = 0;
        for i in 0..self.k {
            let v = self.current[i];
            self.in_seq[v as usize] = true;
            self.cum_conflicts[i] = self.conflicts;
            let dead = inst.nbr(v).is_subset(&covered);
            self.conflict_at[i] = dead;
            if dead {
                self.conflicts += 1;
            }
            covered.union_with(inst.nbr(v));
            self.prefix[i].clone_from(&covered);
        }
        self.cum_conflicts[self.k] = self.conflicts;
        self.best_conflicts = self.best_conflicts.min(self.conflicts);
    }

    fn conflict_positions(&self) -> Vec<usize> {
        (0..self.k).filter(|&i| self.conflict_at[i]).collect()
    }

    /// `𝓙`: positions sharing neighborhood elements with a later
    /// conflicting position.
    fn with_conflicting(&self, inst: &Instance, conflicting: &[usize]) -> Vec<usize> {
        (0..self.k)
            .filter(|&j| {
                conflicting.iter().any(|&i| {
                    i > j && !inst.nbr(self.current[i]).is_disjoint(inst.nbr(self.current[j]))
                })
            })
            .collect()
    }

    /// One move over the two restricted neighborhoods: replace a vertex at a
    /// position of `𝓘 ∪ 𝓙` with an outside non-tabu one, or swap such a
    /// position with an earlier non-tabu one. Picks the move minimizing the
    /// conflict count plus a fresh uniform tie-breaker, then updates tenures:
    /// counters decrement (evicting zeros) before the leaving vertex is
    /// inserted with a fresh draw from the tenure range.
    pub fn step(&mut self, inst: &Instance, tri: &Triangle) -> Result<()> {
        let n = inst.n();
        let conflicting = self.conflict_positions();
        debug_assert!(!conflicting.is_empty(), "step requires a conflict");
        let with = self.with_conflicting(inst, &conflicting);
        let mut in_i = vec![false; self.k];
        for &i in &conflicting {
            in_i[i] = true;
        }
        let mut in_j = vec![false; self.k];
        for &j in &with {
            in_j[j] = true;
        }
        let mut targets: Vec<usize> = conflicting;
        for &j in &with {
            if !in_i[j] {
                targets.push(j);
            }
        }
        targets.sort_unstable();

        let mut best: Option<(f64, Move)> = None;
        let mut scratch = std::mem::replace(&mut self.scratch, vset(0));

        // swap with an outside vertex
        for &l in &targets {
            let vl = self.current[l];
            for z in 0..n as Vertex {
                if self.in_seq[z as usize] || self.live[z as usize] > 0 {
                    continue;
                }
                if in_i[l] && !tri.check(inst, vl, z) {
                    continue;
                }
                if in_j[l] && !tri.check(inst, z, vl) {
                    continue;
                }
                let m = Mod::Replace { pos: l, with: z };
                let c = modified_conflicts(
                    inst,
                    &self.current,
                    &self.prefix,
                    &self.cum_conflicts,
                    &m,
                    &mut scratch,
                );
                let score = c as f64 + self.rng.random::<f64>();
                if best.map_or(true, |(s, _)| score < s) {
                    best = Some((score, Move::Outside { pos: l, with: z }));
                }
            }
        }

        // swap two sequence positions
        for &l2 in &targets {
            if l2 == 0 {
                continue;
            }
            let v2 = self.current[l2];
            for l1 in 0..l2 {
                let v1 = self.current[l1];
                if self.live[v1 as usize] > 0 || !tri.check(inst, v2, v1) {
                    continue;
                }
                let m = Mod::Swap { lo: l1, hi: l2 };
                let c = modified_conflicts(
                    inst,
                    &self.current,
                    &self.prefix,
                    &self.cum_conflicts,
                    &m,
                    &mut scratch,
                );
                let score = c as f64 + self.rng.random::<f64>();
                if best.map_or(true, |(s, _)| score < s) {
                    best = Some((score, Move::Inside { lo: l1, hi: l2 }));
                }
            }
        }
        self.scratch = scratch;

        let Some((_, mv)) = best else {
            return Err(Error::AllMovesForbidden);
        };

        for t in self.live.iter_mut() {
            *t = t.saturating_sub(1);
        }
        let outgoing = match mv {
            Move::Outside { pos, with } => {
                let out = self.current[pos];
                self.current[pos] = with;
                out
            }
            Move::Inside { lo, hi } => {
                let out = self.current[hi];
                self.current.swap(lo, hi);
                out
            }
        };
        self.live[outgoing as usize] = self.rng.random_range(self.tenure.0..=self.tenure.1);
        self.iter += 1;
        self.refresh(inst);
        Ok(())
    }

    /// Maximalizes a random order-preserved subsequence of non-conflicting
    /// positions, one attempt per size in `alt_sizes`; returns the first
    /// result reaching length `k`. Only called when
    /// `k − |𝓘| ≥ |alt_sizes| + 1`.
    pub fn gen_alternative(&mut self, inst: &Instance, alt_sizes: &[usize]) -> Option<Sequence> {
        let non_conf: Vec<usize> = (0..self.k).filter(|&i| !self.conflict_at[i]).collect();
        if non_conf.len() < alt_sizes.len() + 1 {
            return None;
        }
        for &r in alt_sizes {
            if r > non_conf.len() {
                continue;
            }
            let mut picks = non_conf.clone();
            for i in 0..r {
                let j = self.rng.random_range(i..picks.len());
                picks.swap(i, j);
            }
            picks.truncate(r);
            picks.sort_unstable();
            let sub: Vec<Vertex> = picks.iter().map(|&i| self.current[i]).collect();
            let seed = Sequence::new(sub).expect("positions are distinct");
            let grown =
                maximalize(inst, &seed, &mut self.rng).expect("non-conflicting subsequences are legal");
            if grown.len() >= self.k {
                return Some(grown);
            }
        }
        None
    }
}

/// Free-function form of one tabu move; builds the `◁` cache per call, so
/// prefer [`TabuState::step`] inside loops.
pub fn tabu_step(inst: &Instance, state: &mut TabuState) -> Result<()> {
    let tri = Triangle::new(inst);
    state.step(inst, &tri)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TabuOutcome {
    /// Maximal legal sequence of length ≥ k.
    Found(Sequence),
    /// Iteration or time budget exhausted.
    FailedLimit,
    /// Every movement was forbidden by the tabu list.
    FailedForbidden,
}

impl TabuOutcome {
    pub fn into_sequence(self) -> Option<Sequence> {
        match self {
            TabuOutcome::Found(s) => Some(s),
            _ => None,
        }
    }
}

pub fn tabu_search(
    inst: &Instance,
    k: usize,
    limits: &TabuLimits,
    rng: &mut ChaCha12Rng,
) -> Result<TabuOutcome> {
    tabu_search_with(inst, k, limits, rng, &mut |_, _| {})
}

/// Tabu search reporting `(iteration, conflict count)` to `on_iter` once per
/// loop pass. The alternative-solution shortcut runs after the legality
/// check and before the move scan, matching its intended insertion point.
pub fn tabu_search_with(
    inst: &Instance,
    k: usize,
    limits: &TabuLimits,
    rng: &mut ChaCha12Rng,
    on_iter: &mut dyn FnMut(u64, usize),
) -> Result<TabuOutcome> {
    let tri = Triangle::new(inst);
    let mut state = TabuState::init(inst, k, rng.next_u64(), limits)?;
    let deadline = limits.max_time.map(|d| Instant::now() + d);
    loop {
        if state.iter >= limits.max_iters {
            return Ok(TabuOutcome::FailedLimit);
        }
        if let Some(d) = deadline {
            if Instant::now() >= d {
                return Ok(TabuOutcome::FailedLimit);
            }
        }
        on_iter(state.iter, state.conflicts);
        if state.conflicts == 0 {
            let legal = Sequence::new(state.current.clone()).expect("distinct by construction");
            let grown = maximalize(inst, &legal, &mut state.rng)?;
            return Ok(TabuOutcome::Found(grown));
        }
        if limits.use_altsol {
            if let Some(s) = state.gen_alternative(inst, &limits.alt_sizes) {
                return Ok(TabuOutcome::Found(s));
            }
        }
        match state.step(inst, &tri) {
            Ok(()) => {}
            Err(Error::AllMovesForbidden) => return Ok(TabuOutcome::FailedForbidden),
            Err(e) => return Err(e),
        }
    }
}

/// Repeatedly raises the target length by one until a search fails or the
/// time budget runs out; the best sequence found is kept. Lengths are
/// monotone nondecreasing across rounds.
pub fn improve_loop(
    inst: &Instance,
    initial: &Sequence,
    limits: &TabuLimits,
    rng: &mut ChaCha12Rng,
) -> Result<Sequence> {
    if !is_maximal(inst, initial)? {
        return Err(Error::BadParameters(
            "improve_loop needs a maximal initial sequence".into(),
        ));
    }
    let deadline = limits.max_time.map(|d| Instant::now() + d);
    let mut best = initial.clone();
    loop {
        let k = (best.len() + 1).max(3);
        if k > inst.n() {
            break;
        }
        let mut call = limits.clone();
        if let Some(d) = deadline {
            let now = Instant::now();
            if now >= d {
                break;
            }
            call.max_time = Some(d - now);
        }
        match tabu_search(inst, k, &call, rng)? {
            TabuOutcome::Found(s) => {
                debug_assert!(s.len() >= k);
                best = s;
            }
            _ => break,
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::five_cycle;
    use crate::sequence::evaluate;

    fn rng(seed: u64) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(seed)
    }

    #[test]
    fn conflict_sets_on_the_five_cycle() {
        let inst = five_cycle(true);
        // (3,4,5,1) 1-based: position 4 conflicts, all earlier share with it
        let (i, j) = conflict_sets(&inst, &[2, 3, 4, 0]);
        assert_eq!(i, vec![3]);
        assert_eq!(j, vec![0, 1, 2]);

        let (i, j) = conflict_sets(&inst, &[2, 3, 4]);
        assert!(i.is_empty() && j.is_empty());
        let (i, j) = conflict_sets(&inst, &[1]);
        assert!(i.is_empty() && j.is_empty());
    }

    #[test]
    fn search_finds_the_optimum_on_c5() {
        let inst = five_cycle(true);
        for seed in [1u64, 2, 3] {
            let out = tabu_search(&inst, 3, &TabuLimits::default(), &mut rng(seed)).unwrap();
            let s = out.into_sequence().expect("k = gamma is reachable");
            assert!(s.len() >= 3);
            assert!(is_maximal(&inst, &s).unwrap());
            assert!(evaluate(&inst, &s).unwrap().dominating);
        }
    }

    #[test]
    fn impossible_k_fails_under_tight_limits() {
        let inst = five_cycle(true);
        let limits = TabuLimits {
            max_iters: 2_000,
            max_time: None,
            ..Default::default()
        };
        let out = tabu_search(&inst, 4, &limits, &mut rng(5)).unwrap();
        assert!(!matches!(out, TabuOutcome::Found(_)));
    }

    #[test]
    fn k_out_of_range_is_rejected() {
        let inst = five_cycle(true);
        assert!(tabu_search(&inst, 2, &TabuLimits::default(), &mut rng(0)).is_err());
        assert!(tabu_search(&inst, 6, &TabuLimits::default(), &mut rng(0)).is_err());
    }

    #[test]
    fn tenure_counts_down_and_evicts() {
        let inst = Instance::new(
            crate::io::gen_web(12, 1).unwrap(),
            crate::graph::full_set(12),
        )
        .unwrap();
        let limits = TabuLimits::default();
        let mut st = TabuState::init(&inst, 6, 99, &limits).unwrap();
        let tri = Triangle::new(&inst);
        // drive a few moves; any vertex with live > 0 must hit zero within
        // its recorded tenure if never reinserted
        let mut watch: Option<(Vertex, u32)> = None;
        for _ in 0..30 {
            if st.conflicts == 0 {
                break;
            }
            if st.step(&inst, &tri).is_err() {
                break;
            }
            if watch.is_none() {
                if let Some(v) = (0..12).find(|&v| st.live[v as usize] > 0) {
                    watch = Some((v, st.live[v as usize]));
                }
            }
        }
        if let Some((v, t)) = watch {
            assert!(t >= 1 && t <= 20);
            let _ = v;
        }
    }

    #[test]
    fn no_immediate_backtrack() {
        // on random walks, S'' must never equal S two moves earlier
        let inst = Instance::new(
            crate::io::gen_gnp(12, 0.3, 5).unwrap(),
            crate::graph::full_set(12),
        )
        .unwrap();
        let tri = Triangle::new(&inst);
        let limits = TabuLimits::default();
        for seed in 0..10u64 {
            let Ok(mut st) = TabuState::init(&inst, 7, seed, &limits) else {
                continue;
            };
            let mut history: Vec<Vec<Vertex>> = vec![st.current.to_vec()];
            for _ in 0..60 {
                if st.conflicts == 0 || st.step(&inst, &tri).is_err() {
                    break;
                }
                history.push(st.current.to_vec());
                if history.len() >= 3 {
                    let a = &history[history.len() - 3];
                    let c = &history[history.len() - 1];
                    assert_ne!(a, c, "tabu mechanism must forbid S'' = S");
                }
            }
        }
    }

    #[test]
    fn deterministic_move_trace() {
        let inst = five_cycle(false);
        let limits = TabuLimits {
            max_iters: 50,
            max_time: None,
            use_altsol: false,
            ..Default::default()
        };
        let mut t1 = Vec::new();
        let mut t2 = Vec::new();
        let _ = tabu_search_with(&inst, 3, &limits, &mut rng(7), &mut |i, c| t1.push((i, c)));
        let _ = tabu_search_with(&inst, 3, &limits, &mut rng(7), &mut |i, c| t2.push((i, c)));
        assert_eq!(t1, t2);
    }

    #[test]
    fn improve_loop_keeps_initial_when_stuck() {
        let inst = five_cycle(true);
        let initial = Sequence::new(vec![2, 3, 4]).unwrap();
        let limits = TabuLimits {
            max_iters: 500,
            max_time: None,
            ..Default::default()
        };
        let out = improve_loop(&inst, &initial, &limits, &mut rng(3)).unwrap();
        assert_eq!(out.len(), 3);
    }

    #[test]
    fn improve_loop_reaches_gamma_on_a_web() {
        // W_20^3 with C = V: the value is n - 2k = 14
        let inst = Instance::new(
            crate::io::gen_web(20, 3).unwrap(),
            crate::graph::full_set(20),
        )
        .unwrap();
        let mut r = rng(11);
        let b = crate::bounds::initial_bounds(&inst, &mut r);
        let limits = TabuLimits {
            max_time: Some(Duration::from_secs(20)),
            ..Default::default()
        };
        let mut ok = 0;
        for seed in [1u64, 2, 3] {
            let out = improve_loop(&inst, &b.witness, &limits, &mut rng(seed)).unwrap();
            if out.len() >= 14 {
                ok += 1;
            }
        }
        assert!(ok >= 1, "at least one seed reaches the closed-form value");
    }

    #[test]
    fn improve_loop_rejects_non_maximal_seed() {
        let inst = five_cycle(true);
        let short = Sequence::new(vec![2]).unwrap();
        assert!(improve_loop(&inst, &short, &TabuLimits::default(), &mut rng(0)).is_err());
    }
}
