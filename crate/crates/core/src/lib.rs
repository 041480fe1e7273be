//! Solver, enumerator and conjecture engine for generalized
//! missionaries-and-cannibals river crossings.
//!
//! Shortest solutions can be found and counted three independent ways:
//! breadth-first path enumeration ([`graph`]), adjacency-matrix powers
//! ([`walks`]) and the polynomial transfer iteration ([`transfer`]).
//! [`family`] turns counts over one-parameter families into recurrences and
//! rational generating functions, and [`strategy`] builds explicit move
//! scripts for the sufficient-condition strategies.

pub mod family;
pub mod graph;
pub mod model;
pub mod poly;
pub mod species;
pub mod strategy;
pub mod transfer;
pub mod walks;

pub use family::{
    conjecture_report, family_counts, fit_linear_recurrence, rational_gf, series_coefficients,
    FamilySpec, FamilyTerm, LinearRecurrence, RationalGf,
};
pub use graph::{
    all_shortest_paths, random_digraph, shortest_distance, solve_mc, Digraph, McSolutions, PathList,
};
pub use model::{
    mc_graph, spell_out, BankState, Direction, McParams, Move, ParamError, SolutionPath,
};
pub use poly::SparsePolynomial;
pub use species::{species_graph, SpeciesPuzzle};
pub use strategy::{applicability, build_strategy, validate_solution, MoveSequence, StrategyName};
pub use transfer::{solve_by_transfer, transfer_trace, TransferOutcome};
pub use walks::{count_shortest_walks, symbolic_shortest_paths, WalkCount};
