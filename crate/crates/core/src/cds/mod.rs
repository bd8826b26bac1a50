//! Approximation algorithms for connected domination: the spanning case via
//! domination plus a Steiner tree, and LP rounding over a square partition
//! for unit disk graphs.

mod backend;
mod rounding;
mod spanning;
mod steiner;

pub use backend::{
    solve_set_cover, solve_set_cover_greedy, SetCoverBackend, AUTO_EXACT_MAX_VERTICES,
};
pub use rounding::{
    solve_cds_all_roots, solve_cds_rounding, AllRoots, RootPolicy, RoundingChecks, RoundingReport,
    HEURISTIC_ROOTS_MIN_VERTICES,
};
pub use spanning::{domination_lp, solve_cds_spanning_case, SpanningReport};
pub use steiner::steiner_2approx_metric_mst;
