use std::collections::HashMap;

use super::{CdsFlowLp, SteinerFlowLp, VarTag};
use crate::error::{Error, Result};
use crate::exact::CdsInstance;
use crate::graph::{SquarePartition, Vertex};

/// Residual tolerance for a rerouted point, which inherits the noise of the
/// optimum it was built from amplified by up to `theta`.
pub const REROUTE_TOL: f64 = 1e-7;

/// A point of the Steiner flow LP derived from an optimum of the connected
/// domination flow LP.
#[derive(Clone, Debug)]
pub struct Reroute {
    /// Values for the variables of the target [`SteinerFlowLp`].
    pub point: Vec<f64>,
    pub objective: f64,
    /// `theta * (sum w x* + sum l y*)`.
    pub bound: f64,
    /// Capacity added beyond `theta * (y* + shortcut)` to keep every merged
    /// commodity within its edge capacities.
    pub repair: f64,
    pub max_residual: f64,
}

impl Reroute {
    pub fn is_feasible(&self) -> bool {
        self.max_residual <= REROUTE_TOL
    }

    pub fn within_bound(&self) -> bool {
        self.objective <= self.bound + 1e-6
    }
}

/// Merges the commodities of each heavy class into its representative.
///
/// For `v` in class `i`, every unit of flow reaching `v` continues along the
/// edge `v r_i`; the class total is then normalized to one unit and the
/// capacities are `theta * (y* + shortcut)`, raised where a merged commodity
/// still exceeds them.
#[allow(clippy::too_many_arguments)]
pub fn reroute_flow(
    inst: &CdsInstance,
    lp1: &CdsFlowLp,
    values: &[f64],
    partition: &SquarePartition,
    heavy: &[usize],
    representatives: &[Vertex],
    theta: usize,
    target: &SteinerFlowLp,
) -> Result<Reroute> {
    let g = inst.graph();
    if heavy.len() != representatives.len() {
        return Err(Error::invalid(
            "one representative per heavy class required",
        ));
    }
    let theta = theta as f64;
    let xstar = lp1.xstar(values);
    let ystar = lp1.ystar(values);
    let lengths: Vec<f64> = inst.lengths().iter().map(|l| l.to_f64()).collect();

    let mut per_commodity: HashMap<Vertex, Vec<((Vertex, Vertex), f64)>> = HashMap::new();
    for id in 0..lp1.model.num_vars() {
        if let VarTag::Flow {
            commodity,
            from,
            to,
        } = lp1.model.tag(id)
        {
            if values[id] != 0.0 {
                per_commodity
                    .entry(commodity)
                    .or_default()
                    .push(((from, to), values[id]));
            }
        }
    }

    let mut shortcut = vec![0.0; g.m()];
    let mut merged: Vec<(Vertex, HashMap<(Vertex, Vertex), f64>)> = Vec::new();
    for (&i, &r) in heavy.iter().zip(representatives) {
        let class = &partition.classes[i];
        if !class.contains(&r) {
            return Err(Error::invariant(format!(
                "representative {r} is not in class {i}"
            )));
        }
        let mass: f64 = class.iter().map(|&v| xstar[v]).sum();
        let mut flow: HashMap<(Vertex, Vertex), f64> = HashMap::new();
        for &v in class {
            if v != r && xstar[v] > 0.0 {
                let e = g
                    .edge_id(v, r)
                    .filter(|&e| lp1.y[e].is_some())
                    .ok_or_else(|| {
                        Error::invariant(format!("class {i} lacks usable edge ({v}, {r})"))
                    })?;
                shortcut[e] += xstar[v];
                *flow.entry((v, r)).or_default() += xstar[v];
            }
            for &(arc, f) in per_commodity.get(&v).into_iter().flatten() {
                *flow.entry(arc).or_default() += f;
            }
        }
        if r != lp1.root {
            flow.values_mut().for_each(|f| *f /= mass);
            merged.push((r, flow));
        }
    }

    let mut yprime: Vec<f64> = (0..g.m())
        .map(|e| theta * (ystar[e] + shortcut[e]))
        .collect();
    let mut repair = 0.0;
    for (_, flow) in &merged {
        let mut load: HashMap<(Vertex, Vertex), f64> = HashMap::new();
        for (&(a, b), &f) in flow {
            *load.entry((a.min(b), a.max(b))).or_default() += f;
        }
        for ((a, b), load) in load {
            let e = g
                .edge_id(a, b)
                .ok_or_else(|| Error::invariant(format!("flow on non-edge ({a}, {b})")))?;
            if load > yprime[e] {
                repair += lengths[e] * (load - yprime[e]);
                yprime[e] = load;
            }
        }
    }

    let mut point = vec![0.0; target.model.num_vars()];
    for (e, id) in target.y.iter().enumerate() {
        if let Some(id) = id {
            point[*id] = yprime[e];
        }
    }
    for (r, flow) in &merged {
        for (&(from, to), &f) in flow {
            let id = target
                .model
                .var(VarTag::Flow {
                    commodity: *r,
                    from,
                    to,
                })
                .ok_or_else(|| {
                    Error::invariant(format!("target lacks arc ({from}, {to}) for {r}"))
                })?;
            point[id] = f;
        }
    }
    let w_x: f64 = (0..g.n())
        .filter(|&v| lp1.x[v].is_some())
        .map(|v| g.weight(v).to_f64() * xstar[v])
        .sum();
    let l_y: f64 = (0..g.m()).map(|e| lengths[e] * ystar[e]).sum();
    Ok(Reroute {
        objective: target.model.objective_value(&point),
        bound: theta * (w_x + l_y),
        repair,
        max_residual: target.model.max_residual(&point),
        point,
    })
}
