use super::{add_commodity, tree_path, LpModel, VarId, VarTag};
use crate::error::{Error, Result};
use crate::graph::{Graph, Tree, Vertex};
use crate::num::Weight;

/// Edge-weighted Steiner relaxation: one unit of flow from the root to each
/// representative, each commodity bounded by `y(e)` on every edge.
#[derive(Clone, Debug)]
pub struct SteinerFlowLp {
    pub model: LpModel,
    pub root: Vertex,
    pub representatives: Vec<Vertex>,
    pub y: Vec<Option<VarId>>,
}

pub fn build_steiner_flow_lp(
    g: &Graph,
    lengths: &[Weight],
    root: Vertex,
    representatives: &[Vertex],
) -> Result<SteinerFlowLp> {
    if root >= g.n() || representatives.iter().any(|&v| v >= g.n()) {
        return Err(Error::invalid("vertex out of range"));
    }
    if lengths.len() != g.m() {
        return Err(Error::invalid("lengths do not match edges"));
    }
    let mut reps = representatives.to_vec();
    reps.sort_unstable();
    if reps.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid("representatives must be distinct"));
    }
    let mut model = LpModel::new();
    let y: Vec<Option<VarId>> = lengths
        .iter()
        .enumerate()
        .map(|(e, l)| l.finite().map(|l| model.add_var(VarTag::Y(e), l.to_f64())))
        .collect();
    for &v in reps.iter().filter(|&&v| v != root) {
        add_commodity(&mut model, g, &y, root, v, (None, 1.0));
    }
    Ok(SteinerFlowLp {
        model,
        root,
        representatives: reps,
        y,
    })
}

impl SteinerFlowLp {
    /// Indicator point of a tree containing the root and every representative.
    pub fn integral_point(&self, g: &Graph, tree: &Tree) -> Result<Vec<f64>> {
        let mut point = vec![0.0; self.model.num_vars()];
        let span = if tree.is_empty() {
            Tree::singleton(self.root)
        } else {
            tree.clone()
        };
        for &(a, b) in span.edges() {
            let e = g
                .edge_id(a, b)
                .ok_or_else(|| Error::invalid(format!("edge ({a}, {b}) not in graph")))?;
            let ye = self.y[e]
                .ok_or_else(|| Error::invalid(format!("edge ({a}, {b}) has infinite length")))?;
            point[ye] = 1.0;
        }
        for &v in self.representatives.iter().filter(|&&v| v != self.root) {
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
        Ok(point)
    }
}
