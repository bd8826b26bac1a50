//! Exhaustive and dynamic-programming solvers for desk-scale instances.

mod activation;
mod cds;
mod nws;
mod set_cover;
pub(crate) mod steiner;
mod vcst;

pub use activation::{solve_activation_exact, ACTIVATION_EXACT_MAX_VECTORS};
pub use cds::{
    check_cds_solution, solve_cds_exact, CdsInstance, CdsSolution, CDS_EXACT_MAX_CANDIDATES,
};
pub use nws::{minimal_steiner_sets, solve_nws_exact, NWS_EXACT_MAX_CANDIDATES};
pub use set_cover::{
    solve_set_cover_exact, SetCoverInstance, SetCoverSolution, SET_COVER_EXACT_MAX_SETS,
};
pub use steiner::{solve_edge_steiner_exact, STEINER_EXACT_MAX_TERMINALS};
pub use vcst::{
    solve_vcst_exact, solve_vcst_exact_crosscheck, CROSSCHECK_MAX_VERTICES,
    VCST_EXACT_MAX_CANDIDATES,
};

/// Bit iterator over a `u128` mask.
pub(crate) fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// Neighborhood masks of a graph with at most 128 vertices.
pub(crate) fn adjacency_masks(g: &crate::graph::Graph) -> Vec<u128> {
    (0..g.n())
        .map(|v| g.neighbors(v).fold(0u128, |m, u| m | 1 << u))
        .collect()
}

/// Vertices reachable from `start` inside `within`.
pub(crate) fn reach_within(adj: &[u128], start: usize, within: u128) -> u128 {
    let mut reach = 1u128 << start;
    let mut frontier = reach;
    while frontier != 0 {
        let mut next = 0;
        for v in bits(frontier) {
            next |= adj[v];
        }
        next &= within & !reach;
        reach |= next;
        frontier = next;
    }
    reach
}
