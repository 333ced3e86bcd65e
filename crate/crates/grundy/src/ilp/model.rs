//! Slot-array models of legal sequences.
//!
//! A sequence is encoded as an array of `m` slots, each empty or holding a
//! vertex; `y[v][i] = 1` iff slot `i` holds `v`, and `x[u][i] = 1` iff `u`
//! is still available to be footprinted after step `i` (`x[u][0]` is the
//! constant 1 and is folded into right-hand sides, never a variable). The
//! objective maximizes the number of occupied slots.
//!
//! Constraint families, in the names used throughout:
//!
//! - `slot_cap`:   at most one vertex per slot;
//! - `pick_once`:  each vertex used at most once;
//! - `avail_mono`: availability never comes back (`x[u][i] ≤ x[u][i−1]`);
//! - `drop_expl`:  an availability drop needs a footprinting pick
//!   (`Σ_{v∈N⟨u⟩} y[v][i] ≥ x[u][i−1] − x[u][i]`), redundant but
//!   symmetry-breaking;
//! - `covered`:    a pick removes its neighborhood from availability;
//! - `footprint`:  a picked vertex must footprint something new;
//! - `no_gap`:     occupied slots are left-justified (canonical arrays);
//! - `dominated`:  every vertex ends up covered (dominating sequences);
//! - `use_slot`:   forced occupancy of the first `LB` slots.
//!
//! The eight formulations toggle `drop_expl`, `no_gap` and `dominated`;
//! with `no_gap` present, `slot_cap` is kept only for the first slot, and
//! forced slots drop the `slot_cap`/`no_gap` rows they dominate.

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::instance::Instance;
use crate::sequence::{evaluate, Sequence};

use super::cuts::Cut;

/// Exact arithmetic for feasibility and validity checks.
pub type Rat = Ratio<i128>;

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(v as i128)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// `y[v][slot]`, slots 1-based.
    Y { v: Vertex, slot: usize },
    /// `x[v][slot]`, slots 1-based (`slot = 0` is the folded constant).
    X { v: Vertex, slot: usize },
}

impl Var {
    pub fn name(&self) -> String {
        match *self {
            Var::Y { v, slot } => format!("y_{}_{}", v + 1, slot),
            Var::X { v, slot } => format!("x_{}_{}", v + 1, slot),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Row {
    pub name: String,
    pub terms: Vec<(Var, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

impl Row {
    pub fn lhs(&self, a: &Assignment) -> Rat {
        self.terms
            .iter()
            .map(|&(var, c)| a.get(var) * rat(c))
            .sum()
    }

    pub fn satisfied(&self, a: &Assignment) -> bool {
        let lhs = self.lhs(a);
        let rhs = rat(self.rhs);
        match self.sense {
            Sense::Le => lhs <= rhs,
            Sense::Ge => lhs >= rhs,
            Sense::Eq => lhs == rhs,
        }
    }

    pub fn max_slot(&self) -> usize {
        self.terms
            .iter()
            .map(|&(v, _)| match v {
                Var::Y { slot, .. } | Var::X { slot, .. } => slot,
            })
            .max()
            .unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Formulation {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    F8,
}

pub const ALL_FORMULATIONS: [Formulation; 8] = [
    Formulation::F1,
    Formulation::F2,
    Formulation::F3,
    Formulation::F4,
    Formulation::F5,
    Formulation::F6,
    Formulation::F7,
    Formulation::F8,
];

impl Formulation {
    /// Does the formulation carry the redundant drop-explanation rows?
    pub fn has_drop_explanation(self) -> bool {
        matches!(
            self,
            Formulation::F2 | Formulation::F4 | Formulation::F6 | Formulation::F8
        )
    }

    /// Canonical (left-justified) arrays; `slot_cap` kept only for slot 1.
    pub fn has_no_gap(self) -> bool {
        matches!(
            self,
            Formulation::F3 | Formulation::F4 | Formulation::F7 | Formulation::F8
        )
    }

    /// Restricts integer points to dominating sequences.
    pub fn has_dominating(self) -> bool {
        matches!(
            self,
            Formulation::F5 | Formulation::F6 | Formulation::F7 | Formulation::F8
        )
    }
}

impl std::str::FromStr for Formulation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Formulation> {
        let t = s.trim().trim_start_matches(['F', 'f']);
        match t {
            "1" => Ok(Formulation::F1),
            "2" => Ok(Formulation::F2),
            "3" => Ok(Formulation::F3),
            "4" => Ok(Formulation::F4),
            "5" => Ok(Formulation::F5),
            "6" => Ok(Formulation::F6),
            "7" => Ok(Formulation::F7),
            "8" => Ok(Formulation::F8),
            _ => Err(Error::BadParameters(format!("unknown formulation `{s}`"))),
        }
    }
}

impl std::fmt::Display for Formulation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// A materialized formulation over an instance.
pub struct Model<'a> {
    pub inst: &'a Instance,
    pub formulation: Formulation,
    /// Slot count; must be at least the optimum for the model to be exact
    /// (the caller supplies it from an upper bound).
    pub m: usize,
    pub lb_fix: Option<usize>,
    pub rows: Vec<Row>,
    pub cuts: Vec<Cut>,
}

impl<'a> Model<'a> {
    pub fn n(&self) -> usize {
        self.inst.n()
    }

    /// All variables in emission order: every `y`, then every `x`.
    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        let n = self.n() as Vertex;
        let m = self.m;
        (0..n)
            .flat_map(move |v| (1..=m).map(move |slot| Var::Y { v, slot }))
            .chain((0..n).flat_map(move |v| (1..=m).map(move |slot| Var::X { v, slot })))
    }

    pub fn num_vars(&self) -> usize {
        2 * self.n() * self.m
    }

    /// Formulation rows followed by cut rows.
    pub fn all_rows(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().chain(self.cuts.iter().map(|c| &c.row))
    }
}

/// Builds the requested formulation. Constraint presence follows the
/// formulation matrix exactly; forced slots (`lb_fix`) add `use_slot`
/// equalities and drop the `slot_cap`/`no_gap` rows they dominate.
pub fn build_model<'a>(
    inst: &'a Instance,
    formulation: Formulation,
    m: usize,
    lb_fix: Option<usize>,
) -> Result<Model<'a>> {
    if m < 1 {
        return Err(Error::BadParameters("m must be at least 1".into()));
    }
    let lb_fix = lb_fix.filter(|&l| l > 0);
    if let Some(l) = lb_fix {
        if l > m {
            return Err(Error::BadParameters(format!(
                "lb_fix = {l} exceeds m = {m}"
            )));
        }
    }
    let n = inst.n();
    let lb = lb_fix.unwrap_or(0);
    let mut rows = Vec::new();

    // use_slot: forced occupancy of the first LB slots
    for i in 1..=lb {
        rows.push(Row {
            name: format!("use_slot_{i}"),
            terms: (0..n as Vertex).map(|v| (Var::Y { v, slot: i }, 1)).collect(),
            sense: Sense::Eq,
            rhs: 1,
        });
    }

    // slot_cap: at most one vertex per slot
    let cap_slots: Box<dyn Iterator<Item = usize>> = if formulation.has_no_gap() {
        Box::new(std::iter::once(1))
    } else {
        Box::new(1..=m)
    };
    for i in cap_slots {
        if i <= lb {
            continue;
        }
        rows.push(Row {
            name: format!("slot_cap_{i}"),
            terms: (0..n as Vertex).map(|v| (Var::Y { v, slot: i }, 1)).collect(),
            sense: Sense::Le,
            rhs: 1,
        });
    }

    // pick_once
    for v in 0..n as Vertex {
        rows.push(Row {
            name: format!("pick_once_{}", v + 1),
            terms: (1..=m).map(|slot| (Var::Y { v, slot }, 1)).collect(),
            sense: Sense::Le,
            rhs: 1,
        });
    }

    // avail_mono: x[u][i] <= x[u][i-1]
    for u in 0..n as Vertex {
        for i in 2..=m {
            rows.push(Row {
                name: format!("avail_mono_{}_{}", u + 1, i),
                terms: vec![(Var::X { v: u, slot: i }, 1), (Var::X { v: u, slot: i - 1 }, -1)],
                sense: Sense::Le,
                rhs: 0,
            });
        }
    }

    // drop_expl: sum_{v in N<u>} y[v][i] + x[u][i] - x[u][i-1] >= 0
    if formulation.has_drop_explanation() {
        for u in 0..n as Vertex {
            for i in 1..=m {
                let mut terms: Vec<(Var, i64)> = inst
                    .nbr(u)
                    .ones()
                    .map(|v| (Var::Y { v: v as Vertex, slot: i }, 1))
                    .collect();
                terms.push((Var::X { v: u, slot: i }, 1));
                let rhs = if i == 1 {
                    1 // x[u][0] is the constant 1
                } else {
                    terms.push((Var::X { v: u, slot: i - 1 }, -1));
                    0
                };
                rows.push(Row {
                    name: format!("drop_expl_{}_{}", u + 1, i),
                    terms,
                    sense: Sense::Ge,
                    rhs,
                });
            }
        }
    }

    // covered: x[u][i] + sum_{v in N<u>} y[v][i] <= 1
    for u in 0..n as Vertex {
        for i in 1..=m {
            let mut terms = vec![(Var::X { v: u, slot: i }, 1)];
            terms.extend(
                inst.nbr(u)
                    .ones()
                    .map(|v| (Var::Y { v: v as Vertex, slot: i }, 1)),
            );
            rows.push(Row {
                name: format!("covered_{}_{}", u + 1, i),
                terms,
                sense: Sense::Le,
                rhs: 1,
            });
        }
    }

    // footprint: y[v][i] <= sum_{u in N<v>} (x[u][i-1] - x[u][i])
    for v in 0..n as Vertex {
        for i in 2..=m {
            let mut terms = vec![(Var::Y { v, slot: i }, 1)];
            for u in inst.nbr(v).ones() {
                terms.push((Var::X { v: u as Vertex, slot: i - 1 }, -1));
                terms.push((Var::X { v: u as Vertex, slot: i }, 1));
            }
            rows.push(Row {
                name: format!("footprint_{}_{}", v + 1, i),
                terms,
                sense: Sense::Le,
                rhs: 0,
            });
        }
    }

    // no_gap: sum_v y[v][i] <= sum_v y[v][i-1]
    if formulation.has_no_gap() {
        for i in 2..=m {
            if i <= lb {
                continue;
            }
            let mut terms: Vec<(Var, i64)> =
                (0..n as Vertex).map(|v| (Var::Y { v, slot: i }, 1)).collect();
            terms.extend((0..n as Vertex).map(|v| (Var::Y { v, slot: i - 1 }, -1)));
            rows.push(Row {
                name: format!("no_gap_{i}"),
                terms,
                sense: Sense::Le,
                rhs: 0,
            });
        }
    }

    // dominated: sum_i sum_{v in N<u>} y[v][i] >= 1
    if formulation.has_dominating() {
        for u in 0..n as Vertex {
            let mut terms = Vec::new();
            for v in inst.nbr(u).ones() {
                for slot in 1..=m {
                    terms.push((Var::Y { v: v as Vertex, slot }, 1));
                }
            }
            rows.push(Row {
                name: format!("dominated_{}", u + 1),
                terms,
                sense: Sense::Ge,
                rhs: 1,
            });
        }
    }

    Ok(Model {
        inst,
        formulation,
        m,
        lb_fix,
        rows,
        cuts: Vec::new(),
    })
}

/// Variable values, exact rationals in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub n: usize,
    pub m: usize,
    y: Vec<Rat>,
    x: Vec<Rat>,
}

impl Assignment {
    pub fn zeros(n: usize, m: usize) -> Assignment {
        Assignment {
            n,
            m,
            y: vec![Rat::zero(); n * m],
            x: vec![Rat::zero(); n * m],
        }
    }

    #[inline]
    fn idx(&self, v: Vertex, slot: usize) -> usize {
        debug_assert!((1..=self.m).contains(&slot));
        v as usize * self.m + slot - 1
    }

    pub fn get(&self, var: Var) -> Rat {
        match var {
            Var::Y { v, slot } => self.y[self.idx(v, slot)],
            Var::X { v, slot } => self.x[self.idx(v, slot)],
        }
    }

    pub fn set(&mut self, var: Var, value: Rat) {
        match var {
            Var::Y { v, slot } => {
                let i = self.idx(v, slot);
                self.y[i] = value;
            }
            Var::X { v, slot } => {
                let i = self.idx(v, slot);
                self.x[i] = value;
            }
        }
    }

    pub fn y(&self, v: Vertex, slot: usize) -> Rat {
        self.y[self.idx(v, slot)]
    }

    pub fn x(&self, v: Vertex, slot: usize) -> Rat {
        self.x[self.idx(v, slot)]
    }

    /// Objective value `Σ_{v,i} y[v][i]`.
    pub fn objective(&self) -> Rat {
        self.y.iter().copied().sum()
    }

    pub fn is_integral(&self) -> bool {
        self.y.iter().chain(self.x.iter()).all(|r| r.is_integer())
    }

    /// Slot contents when integral: `Some(v)` per occupied slot.
    pub fn slots(&self) -> Vec<Option<Vertex>> {
        (1..=self.m)
            .map(|slot| {
                (0..self.n as Vertex).find(|&v| self.y(v, slot).is_one())
            })
            .collect()
    }

    /// The sequence read off the occupied slots in order.
    pub fn decode_sequence(&self) -> Result<Sequence> {
        Sequence::new(self.slots().into_iter().flatten().collect())
    }
}

/// Canonical embedding of a legal sequence: the sequence occupies the first
/// slots, the rest stay empty, and `x` follows the availability recursion
/// `A_i = A_{i−1} ∖ N⟨s_i⟩`. Feasible in every formulation without
/// `dominated`; feasible in those with it iff the sequence dominates.
pub fn point_from_sequence(model: &Model, seq: &Sequence) -> Result<Assignment> {
    let report = evaluate(model.inst, seq)?;
    if !report.legal {
        return Err(Error::NotLegal {
            position: report.conflicting[0],
        });
    }
    if seq.len() > model.m {
        return Err(Error::TooLong {
            len: seq.len(),
            m: model.m,
        });
    }
    let n = model.n();
    let mut a = Assignment::zeros(n, model.m);
    let mut available = crate::graph::full_set(n);
    for (pos, v) in seq.iter().enumerate() {
        a.set(Var::Y { v, slot: pos + 1 }, Rat::one());
    }
    for slot in 1..=model.m {
        if slot <= seq.len() {
            let v = seq.vertices()[slot - 1];
            available.difference_with(model.inst.nbr(v));
        }
        for u in available.ones() {
            a.set(
                Var::X {
                    v: u as Vertex,
                    slot,
                },
                Rat::one(),
            );
        }
    }
    Ok(a)
}

#[derive(Clone, Debug, Default)]
pub struct FeasReport {
    pub violated_rows: Vec<String>,
    pub out_of_bounds: Vec<String>,
}

impl FeasReport {
    pub fn feasible(&self) -> bool {
        self.violated_rows.is_empty() && self.out_of_bounds.is_empty()
    }
}

/// Exact evaluation of every row (formulation rows and cuts) plus the
/// `[0, 1]` variable bounds. No tolerances.
pub fn check_feasible(model: &Model, a: &Assignment) -> Result<FeasReport> {
    if a.n != model.n() || a.m != model.m {
        return Err(Error::DimensionMismatch);
    }
    let mut report = FeasReport::default();
    for var in model.vars() {
        let v = a.get(var);
        if v < Rat::zero() || v > Rat::one() {
            report.out_of_bounds.push(var.name());
        }
    }
    for row in model.all_rows() {
        if !row.satisfied(a) {
            report.violated_rows.push(row.name.clone());
        }
    }
    Ok(report)
}
