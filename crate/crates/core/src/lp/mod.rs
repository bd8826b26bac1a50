//! Linear programs for connected domination and their solver.
//!
//! Path-based relaxations are written in arc-flow form: each commodity `v`
//! has a flow on both orientations of every usable edge, conserved at every
//! vertex other than the root and delivering its demand at `v`. A flow
//! decomposes into root-`v` paths and cycles (which can be dropped), and any
//! path family induces such a flow, so the two forms share their optimum.
//! Capacity rows bound each commodity separately by `y(e)`.

mod cds_flow;
mod model;
mod reroute;
mod setcover_lp;
mod solve;
mod steiner_flow;

pub use cds_flow::{build_cds_flow_lp, CdsFlowLp};
pub use model::{Cmp, Constraint, LpModel, VarId, VarTag};
pub use reroute::{reroute_flow, Reroute, REROUTE_TOL};
pub use setcover_lp::{build_setcover_lp, heavy_classes, SetCoverLp, HEAVY_TOL};
pub use solve::{
    solve_lp, solve_lp_certified, LpSolution, LpStatus, FEASIBILITY_TOL, OPTIMALITY_TOL,
};
pub use steiner_flow::{build_steiner_flow_lp, SteinerFlowLp};

use std::collections::VecDeque;

use crate::graph::{Graph, Tree, Vertex};

/// Path from `root` to `target` inside `tree`, as consecutive vertices.
pub(crate) fn tree_path(tree: &Tree, root: Vertex, target: Vertex) -> Option<Vec<Vertex>> {
    let verts = tree.vertices();
    let pos = |v: Vertex| verts.binary_search(&v).ok();
    let mut adj = vec![Vec::new(); verts.len()];
    for &(u, v) in tree.edges() {
        adj[pos(u)?].push(v);
        adj[pos(v)?].push(u);
    }
    let mut prev = vec![usize::MAX; verts.len()];
    let start = pos(root)?;
    prev[start] = start;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &u in &adj[pos(v)?] {
            let pu = pos(u)?;
            if prev[pu] == usize::MAX {
                prev[pu] = pos(v)?;
                queue.push_back(u);
            }
        }
    }
    let mut cur = pos(target)?;
    if prev[cur] == usize::MAX {
        return None;
    }
    let mut path = vec![verts[cur]];
    while cur != start {
        cur = prev[cur];
        path.push(verts[cur]);
    }
    path.reverse();
    Some(path)
}

/// Arc-flow variables and rows for one commodity of demand `demand` at
/// `target`, shipped from `root` on the edges accepted by `usable`.
pub(crate) fn add_commodity(
    model: &mut LpModel,
    g: &Graph,
    y: &[Option<VarId>],
    root: Vertex,
    target: Vertex,
    demand: (Option<VarId>, f64),
) {
    let mut inflow: Vec<Vec<(VarId, f64)>> = vec![Vec::new(); g.n()];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let Some(ye) = y[e] else { continue };
        let ab = model.add_var(
            VarTag::Flow {
                commodity: target,
                from: a,
                to: b,
            },
            0.0,
        );
        let ba = model.add_var(
            VarTag::Flow {
                commodity: target,
                from: b,
                to: a,
            },
            0.0,
        );
        inflow[b].push((ab, 1.0));
        inflow[b].push((ba, -1.0));
        inflow[a].push((ba, 1.0));
        inflow[a].push((ab, -1.0));
        model.add_constraint([(ab, 1.0), (ba, 1.0), (ye, -1.0)], Cmp::Le, 0.0);
    }
    for (u, mut row) in inflow.into_iter().enumerate() {
        if u == root {
            continue;
        }
        let mut rhs = 0.0;
        if u == target {
            match demand {
                (Some(x), _) => row.push((x, -1.0)),
                (None, d) => rhs = d,
            }
        }
        model.add_constraint(row, Cmp::Eq, rhs);
    }
}
