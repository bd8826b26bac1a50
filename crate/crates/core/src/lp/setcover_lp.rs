use super::{Cmp, LpModel, VarId, VarTag};
use crate::error::{Error, Result};
use crate::exact::{CdsInstance, SetCoverInstance};
use crate::graph::{SquarePartition, Vertex};

/// Slack on the heavy-class threshold `1/theta`, absorbing solver noise.
pub const HEAVY_TOL: f64 = 1e-9;

/// Domination LP over the vertices of heavy classes.
#[derive(Clone, Debug)]
pub struct SetCoverLp {
    pub model: LpModel,
    /// Indices of heavy classes, ascending.
    pub heavy: Vec<usize>,
    /// Vertices of heavy classes with finite weight, ascending.
    pub candidates: Vec<Vertex>,
    pub x: Vec<Option<VarId>>,
}

/// Classes whose `x*` mass reaches `1/theta`.
pub fn heavy_classes(partition: &SquarePartition, xstar: &[f64], theta: usize) -> Vec<usize> {
    let threshold = 1.0 / theta as f64 - HEAVY_TOL;
    (0..partition.classes.len())
        .filter(|&i| partition.classes[i].iter().map(|&v| xstar[v]).sum::<f64>() >= threshold)
        .collect()
}

pub fn build_setcover_lp(
    inst: &CdsInstance,
    partition: &SquarePartition,
    xstar: &[f64],
    theta: usize,
) -> Result<SetCoverLp> {
    let g = inst.graph();
    if xstar.len() != g.n() || partition.cell_of.len() != g.n() {
        return Err(Error::invalid("x* or partition does not match the graph"));
    }
    let heavy = heavy_classes(partition, xstar, theta);
    let mut candidates: Vec<Vertex> = heavy
        .iter()
        .flat_map(|&i| partition.classes[i].iter().copied())
        .filter(|&v| g.weight(v).is_finite())
        .collect();
    candidates.sort_unstable();
    let mut model = LpModel::new();
    let mut x = vec![None; g.n()];
    for &v in &candidates {
        x[v] = Some(model.add_var(VarTag::X(v), g.weight(v).to_f64()));
    }
    for &t in inst.terminals() {
        let row: Vec<(VarId, f64)> = g
            .closed_neighborhood(t)
            .into_iter()
            .filter_map(|v| x[v])
            .map(|id| (id, 1.0))
            .collect();
        if row.is_empty() {
            return Err(Error::invariant(format!(
                "terminal {t} has no heavy-class vertex in its neighborhood"
            )));
        }
        model.add_constraint(row, Cmp::Ge, 1.0);
    }
    Ok(SetCoverLp {
        model,
        heavy,
        candidates,
        x,
    })
}

impl SetCoverLp {
    /// `theta * x*` restricted to the model's variables.
    pub fn scaled_point(&self, xstar: &[f64], theta: usize) -> Vec<f64> {
        let mut p = vec![0.0; self.model.num_vars()];
        for (v, id) in self.x.iter().enumerate() {
            if let Some(id) = id {
                p[*id] = theta as f64 * xstar[v];
            }
        }
        p
    }

    /// The same covering problem as a set-cover instance: elements are
    /// terminal positions, set `j` is `N[candidates[j]]` among the terminals.
    pub fn as_set_cover(&self, inst: &CdsInstance) -> Result<SetCoverInstance> {
        let g = inst.graph();
        let terms = inst.terminals();
        let sets = self
            .candidates
            .iter()
            .map(|&v| {
                (0..terms.len())
                    .filter(|&j| terms[j] == v || g.has_edge(v, terms[j]))
                    .collect()
            })
            .collect();
        let weights = self.candidates.iter().map(|&v| g.weight(v)).collect();
        SetCoverInstance::new(terms.len(), sets, weights)
    }
}
