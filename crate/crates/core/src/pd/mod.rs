//! Primal-dual node-weighted Steiner trees and the instrumentation of their
//! charging argument.

mod activation;
mod debt;
mod primal_dual;

pub use activation::{solve_activation_minor_free, MinorFreeRun};
pub use debt::{
    build_debt_graph, check_debt_bounds, DebtGraph, DebtReport, DebtSnapshot, DebtView,
    SPLIT_EDGE_FACTOR,
};
pub use primal_dual::{active_sets, solve_nws_pd, PdEvent, PdResult, PdTrace};
