use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bfs_tree, Tree, Vertex};
use crate::reductions::NwsInstance;

/// One vertex joining `X` during the increase phase.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PdEvent {
    /// Exact dual time, as a reduced fraction.
    pub time: String,
    pub time_f64: f64,
    pub vertex: Vertex,
    /// `|A(X)|` just before and just after the addition.
    pub active_before: usize,
    pub active_after: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PdTrace {
    pub terminals: Vec<Vertex>,
    pub events: Vec<PdEvent>,
    /// Vertices removed by reverse deletion, in removal order.
    pub deleted: Vec<Vertex>,
    /// `X̄`, ascending.
    pub final_set: Vec<Vertex>,
}

impl PdTrace {
    /// `X` after the first `k` additions, ascending.
    pub fn snapshot(&self, k: usize) -> Vec<Vertex> {
        let mut x: Vec<Vertex> = self
            .terminals
            .iter()
            .copied()
            .chain(self.events[..k].iter().map(|e| e.vertex))
            .collect();
        x.sort_unstable();
        x
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }
}

#[derive(Clone, Debug)]
pub struct PdResult {
    pub set: Vec<Vertex>,
    pub tree: Tree,
    pub trace: PdTrace,
}

/// Components of `G[X]` holding a terminal, each ascending, ordered by their
/// lowest vertex.
pub fn active_sets(inst: &NwsInstance, x: &[Vertex]) -> Vec<Vec<Vertex>> {
    let g = inst.graph();
    let mut inside = vec![false; g.n()];
    for &v in x {
        inside[v] = true;
    }
    let (label, count) = g.components(|v| inside[v]);
    let mut comps = vec![Vec::new(); count];
    for v in 0..g.n() {
        if let Some(c) = label[v] {
            comps[c].push(v);
        }
    }
    comps
        .into_iter()
        .filter(|c| c.iter().any(|&v| inst.is_terminal(v)))
        .collect()
}

fn rational(micros: i64) -> BigRational {
    BigRational::new(BigInt::from(micros), BigInt::from(1_000_000))
}

/// Primal-dual growth followed by reverse deletion.
///
/// Every active set raises its dual at unit rate; a vertex outside `X` is
/// charged once per adjacent active set and joins when its charge reaches its
/// weight (lowest index first on ties, infinite weights never). Growth stops
/// when one active set remains; then added vertices are dropped, latest
/// first, whenever the terminals stay connected without them.
pub fn solve_nws_pd(inst: &NwsInstance) -> Result<PdResult> {
    let g = inst.graph();
    let n = g.n();
    let terms = inst.terminals();
    if !g.connects(terms, |v| g.weight(v).is_finite() || inst.is_terminal(v)) {
        return Err(Error::infeasible("terminals are disconnected"));
    }
    let mut inside = vec![false; n];
    for &t in terms {
        inside[t] = true;
    }
    let mut load = vec![BigRational::zero(); n];
    let mut time = BigRational::zero();
    let mut events = Vec::new();
    let mut order = Vec::new();

    loop {
        let (label, _) = g.components(|v| inside[v]);
        let mut active_label = std::collections::BTreeSet::new();
        for &t in terms {
            active_label.insert(label[t].expect("terminals are inside"));
        }
        let active = active_label.len();
        if active <= 1 {
            break;
        }
        // Number of distinct active sets adjacent to each outside vertex.
        let exposure: Vec<usize> = (0..n)
            .map(|v| {
                if inside[v] {
                    return 0;
                }
                let mut seen: Vec<usize> = g
                    .neighbors(v)
                    .filter_map(|u| label[u])
                    .filter(|l| active_label.contains(l))
                    .collect();
                seen.sort_unstable();
                seen.dedup();
                seen.len()
            })
            .collect();
        let mut best: Option<(BigRational, Vertex)> = None;
        for v in 0..n {
            let Some(w) = g.weight(v).micros() else {
                continue;
            };
            if exposure[v] == 0 {
                continue;
            }
            let dt =
                (rational(w) - &load[v]) / BigRational::from_integer(BigInt::from(exposure[v]));
            if best.as_ref().is_none_or(|(b, _)| dt < *b) {
                best = Some((dt, v));
            }
        }
        let (dt, v) =
            best.ok_or_else(|| Error::infeasible("no vertex can join the growing sets"))?;
        if dt.is_negative() {
            return Err(Error::invariant(format!(
                "vertex {v} overloaded before joining"
            )));
        }
        for u in 0..n {
            if exposure[u] > 0 {
                load[u] += &dt * BigRational::from_integer(BigInt::from(exposure[u]));
            }
        }
        time += dt;
        inside[v] = true;
        order.push(v);
        let after = active_sets(inst, &(0..n).filter(|&u| inside[u]).collect::<Vec<_>>()).len();
        events.push(PdEvent {
            time: time.to_string(),
            time_f64: time_to_f64(&time),
            vertex: v,
            active_before: active,
            active_after: after,
        });
    }

    let mut deleted = Vec::new();
    for &v in order.iter().rev() {
        inside[v] = false;
        if g.connects(terms, |u| inside[u]) {
            deleted.push(v);
        } else {
            inside[v] = true;
        }
    }
    let set: Vec<Vertex> = (0..n).filter(|&v| inside[v]).collect();
    let tree = bfs_tree(g, terms[0], |a, b| inside[a] && inside[b]);
    if !inst.is_feasible(&set) || terms.iter().any(|&t| !tree.contains(t)) {
        return Err(Error::invariant(
            "reverse deletion broke terminal connectivity",
        ));
    }
    let trace = PdTrace {
        terminals: terms.to_vec(),
        events,
        deleted,
        final_set: set.clone(),
    };
    Ok(PdResult { set, tree, trace })
}

fn time_to_f64(t: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    t.to_f64().unwrap_or(f64::NAN)
}
