//! Single-source shortest paths in two phases: a layered first labeling that
//! yields upper bounds ([`hdm`]), then best-first label correction
//! ([`contest`]) driven by a threaded-BST priority structure ([`lizard`]).
//!
//! [`oracle`] holds the independent baselines, [`generators`] the seeded
//! instance families, and [`bench`] the report plumbing used by the CLI.

pub mod bench;
pub mod contest;
pub mod dimacs;
pub mod generators;
pub mod graph;
pub mod hdm;
pub mod lizard;
pub mod oracle;

pub use contest::{
    contest_run, contest_run_observed, solve_sssp, solve_sssp_observed, ContestObserver,
    OriginMode, RunMetrics, SolveError, SolveOptions,
};
pub use graph::{
    find_all_shorter_arms, Distance, Graph, GraphError, LabelState, Leaf, NodeId, Weight, UNSET,
};
pub use hdm::{collect_origins, hdm_run, hdm_run_with_seeking, HdmOutput, OriginList};
pub use lizard::{LeError, LizardEntity, ReapMode};
