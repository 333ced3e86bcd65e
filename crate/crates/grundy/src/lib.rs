//! Workbench for the general Grundy domination problem.
//!
//! An instance is a simple graph `G` plus a set `C` of *closed* vertices;
//! vertex `v` covers `N[v]` when `v ∈ C` and `N(v)` otherwise. A sequence
//! of distinct vertices is *legal* when every element covers at least one
//! vertex not covered by its predecessors, and the object of interest is
//! the maximum length of a legal sequence. `C = V` gives the classic Grundy
//! domination number, `C = ∅` the total variant.
//!
//! The crate provides:
//!
//! - legality/footprint evaluation and the twin/component reductions
//!   ([`evaluate`], [`Instance::twin_reduce`], [`Instance::components`]);
//! - exact search with pruning ([`solve_exact`]) and a brute-force oracle
//!   ([`brute_gamma`]);
//! - closed forms for paths and webs ([`gamma_path`], [`gamma_web`]);
//! - greedy and tabu heuristics with the `m_t` bound family
//!   ([`maximalize`], [`initial_bounds`], [`tabu_search`], [`improve_loop`]);
//! - eight integer-programming formulations with LP-format output, valid
//!   inequalities and their separation routines, and a root cutting-plane
//!   loop driven through an external solver command ([`ilp`]);
//! - a benchmark pipeline and experiment sweeps ([`pipeline`], [`sweep`]).
//!
//! Every capability has a runnable demo under `examples/`; the `grundy`
//! binary exposes the same machinery as subcommands.

pub mod bounds;
pub mod closed_form;
pub mod error;
pub mod exact;
pub mod graph;
pub mod instance;
pub mod io;
pub mod sequence;
pub mod tabu;

pub use bounds::{delta_t, initial_bounds, m1_bound, m_t, maximalize, Bounds};
pub use closed_form::{gamma_path, gamma_web, is_gconf};
pub use error::{Error, Result};
pub use exact::{brute_gamma, solve_exact, SearchLimits, SolveResult, Status};
pub use graph::{full_set, set_of, vset, Graph, Vertex, VertexSet};
pub use instance::{Component, Instance, TwinReduction};
pub use sequence::{evaluate, is_maximal, LegalityReport, Sequence};
pub use tabu::{conflict_sets, improve_loop, tabu_search, TabuLimits, TabuOutcome, TabuState};
