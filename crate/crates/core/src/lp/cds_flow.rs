use std::collections::HashMap;

use super::{add_commodity, tree_path, Cmp, LpModel, VarId, VarTag};
use crate::error::{Error, Result};
use crate::exact::CdsInstance;
use crate::graph::{Tree, Vertex};

/// Flow relaxation of the connected dominating set problem for one root.
///
/// `x(v)` exists for finite `w(v)`, `y(e)` for finite `l(e)`; commodity `v`
/// (for `v != root` with an `x` variable) ships `x(v)` from the root to `v`.
#[derive(Clone, Debug)]
pub struct CdsFlowLp {
    pub model: LpModel,
    pub root: Vertex,
    pub x: Vec<Option<VarId>>,
    pub y: Vec<Option<VarId>>,
}

pub fn build_cds_flow_lp(inst: &CdsInstance, root: Vertex) -> Result<CdsFlowLp> {
    let g = inst.graph();
    if root >= g.n() {
        return Err(Error::invalid(format!("root {root} out of range")));
    }
    let mut model = LpModel::new();
    let x: Vec<Option<VarId>> = (0..g.n())
        .map(|v| {
            g.weight(v)
                .finite()
                .map(|w| model.add_var(VarTag::X(v), w.to_f64()))
        })
        .collect();
    let y: Vec<Option<VarId>> = inst
        .lengths()
        .iter()
        .enumerate()
        .map(|(e, l)| l.finite().map(|l| model.add_var(VarTag::Y(e), l.to_f64())))
        .collect();
    for &t in inst.terminals() {
        let row: Vec<(VarId, f64)> = g
            .closed_neighborhood(t)
            .into_iter()
            .filter_map(|v| x[v])
            .map(|id| (id, 1.0))
            .collect();
        model.add_constraint(row, Cmp::Ge, 1.0);
    }
    for v in 0..g.n() {
        if v != root {
            if let Some(xv) = x[v] {
                add_commodity(&mut model, g, &y, root, v, (Some(xv), 0.0));
            }
        }
    }
    Ok(CdsFlowLp { model, root, x, y })
}

impl CdsFlowLp {
    /// `x*` per vertex (0 where no variable exists).
    pub fn xstar(&self, values: &[f64]) -> Vec<f64> {
        self.x
            .iter()
            .map(|id| id.map_or(0.0, |i| values[i]))
            .collect()
    }

    /// `y*` per edge (0 where no variable exists).
    pub fn ystar(&self, values: &[f64]) -> Vec<f64> {
        self.y
            .iter()
            .map(|id| id.map_or(0.0, |i| values[i]))
            .collect()
    }

    /// Arc flows of commodity `v`, keyed by `(from, to)`.
    pub fn flows_of(&self, values: &[f64], commodity: Vertex) -> HashMap<(Vertex, Vertex), f64> {
        (0..self.model.num_vars())
            .filter_map(|id| match self.model.tag(id) {
                VarTag::Flow {
                    commodity: c,
                    from,
                    to,
                } if c == commodity => Some(((from, to), values[id])),
                _ => None,
            })
            .collect()
    }

    /// Indicator point of `(S, F)`: unit flow along the tree path to each
    /// member of `S`. `F` must contain the root.
    pub fn integral_point(
        &self,
        inst: &CdsInstance,
        domset: &[Vertex],
        tree: &Tree,
    ) -> Result<Vec<f64>> {
        let g = inst.graph();
        let mut point = vec![0.0; self.model.num_vars()];
        let span = if tree.is_empty() {
            Tree::singleton(self.root)
        } else {
            tree.clone()
        };
        for &v in domset {
            let xv = self.x[v]
                .ok_or_else(|| Error::invalid(format!("vertex {v} has infinite weight")))?;
            point[xv] = 1.0;
            if v == self.root {
                continue;
            }
            let path = tree_path(&span, self.root, v).ok_or_else(|| {
                Error::invalid(format!("tree does not join root {} and {v}", self.root))
            })?;
            for w in path.windows(2) {
                let id = self
                    .model
                    .var(VarTag::Flow {
                        commodity: v,
                        from: w[0],
                        to: w[1],
                    })
                    .ok_or_else(|| Error::invalid(format!("arc ({}, {}) unusable", w[0], w[1])))?;
                point[id] = 1.0;
            }
        }
        for &(a, b) in span.edges() {
            let e = g
                .edge_id(a, b)
                .ok_or_else(|| Error::invalid(format!("edge ({a}, {b}) not in graph")))?;
            let ye = self.y[e]
                .ok_or_else(|| Error::invalid(format!("edge ({a}, {b}) has infinite length")))?;
            point[ye] = 1.0;
        }
        Ok(point)
    }
}
