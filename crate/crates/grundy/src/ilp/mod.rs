//! Integer-programming side of the workbench: the eight formulations,
//! LP-format emission, exact feasibility checking, valid inequalities with
//! their separation routines, and a root cutting-plane loop driven through
//! an external solver command.

pub mod backend;
pub mod cutloop;
pub mod cuts;
pub mod lp;
pub mod model;

pub use backend::{ExternalSolver, BACKEND_ENV};
pub use cutloop::{cutting_plane_root, CutLoopStats, CutSchedule, RoundStat};
pub use cuts::{
    check_cut_validity, make_general_cut, type1_cut, type2_cut, Cut, CutKind, SeparationSets,
};
pub use lp::{emit_lp, parse_solution};
pub use model::{
    build_model, check_feasible, point_from_sequence, Assignment, FeasReport, Formulation, Model,
    Rat, Row, Sense, Var,
};
