use serde::{Deserialize, Serialize};

use super::{solve_set_cover, steiner_2approx_metric_mst, SetCoverBackend};
use crate::error::{Error, Result};
use crate::exact::{CdsInstance, CdsSolution, SetCoverInstance};
use crate::graph::Vertex;
use crate::lp::{solve_lp_certified, Cmp, LpModel, VarTag};

/// Ratio of the tree step; the metric-MST construction is within twice the
/// Steiner optimum.
const STEINER_RATIO: f64 = 2.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpanningReport {
    pub backend: SetCoverBackend,
    pub domset_weight: f64,
    /// Optimum of the fractional domination LP.
    pub domset_lp: f64,
    /// `w(S) / domset_lp`, at least 1.
    pub beta_cert: f64,
    pub tree_length: f64,
    pub objective: f64,
    /// `beta_cert * (STEINER_RATIO + 1)`; the objective is within this factor
    /// of the optimum.
    pub ratio_bound: f64,
}

/// Fractional domination of the terminals by finite-weight vertices.
pub fn domination_lp(inst: &CdsInstance) -> LpModel {
    let g = inst.graph();
    let mut model = LpModel::new();
    let x: Vec<_> = (0..g.n())
        .map(|v| {
            g.weight(v)
                .finite()
                .map(|w| model.add_var(VarTag::X(v), w.to_f64()))
        })
        .collect();
    for &t in inst.terminals() {
        let row: Vec<_> = g
            .closed_neighborhood(t)
            .into_iter()
            .filter_map(|v| x[v])
            .map(|id| (id, 1.0))
            .collect();
        model.add_constraint(row, Cmp::Ge, 1.0);
    }
    model
}

/// Dominating set first, then a Steiner tree connecting it.
pub fn solve_cds_spanning_case(
    inst: &CdsInstance,
    backend: SetCoverBackend,
) -> Result<(CdsSolution, SpanningReport)> {
    if !inst.is_spanning() {
        return Err(Error::WrongVariant(
            "spanning algorithm needs every vertex as a terminal".into(),
        ));
    }
    let g = inst.graph();
    let backend = backend.resolve(g.n());
    let candidates: Vec<Vertex> = (0..g.n()).filter(|&v| g.weight(v).is_finite()).collect();
    let cover = SetCoverInstance::new(
        g.n(),
        candidates
            .iter()
            .map(|&v| g.closed_neighborhood(v))
            .collect(),
        candidates.iter().map(|&v| g.weight(v)).collect(),
    )?;
    if let Some(e) = cover.uncoverable() {
        return Err(Error::infeasible(format!(
            "vertex {e} has no finite-weight dominator"
        )));
    }
    let chosen = solve_set_cover(&cover, backend)?;
    let domset: Vec<Vertex> = chosen.chosen.iter().map(|&i| candidates[i]).collect();
    let tree = steiner_2approx_metric_mst(g, inst.lengths(), &domset)?;
    let sol = CdsSolution::new(inst, domset, tree);

    let lp = solve_lp_certified(&domination_lp(inst))?;
    if !lp.is_optimal() {
        return Err(Error::Lp(format!("domination LP ended {:?}", lp.status)));
    }
    let domset_weight = chosen.weight.to_f64();
    let beta_cert = if lp.objective > 0.0 {
        (domset_weight / lp.objective).max(1.0)
    } else {
        1.0
    };
    let tree_length = inst.tree_length(&sol.tree).to_f64();
    let report = SpanningReport {
        backend,
        domset_weight,
        domset_lp: lp.objective,
        beta_cert,
        tree_length,
        objective: sol.objective.to_f64(),
        ratio_bound: beta_cert * (STEINER_RATIO + 1.0),
    };
    Ok((sol, report))
}
