use super::{adjacency_masks, bits, reach_within};
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::num::Weight;
use crate::reductions::NwsInstance;

/// Limit on non-terminal finite-weight vertices for the enumerators here.
pub const NWS_EXACT_MAX_CANDIDATES: usize = 26;

struct Setup {
    adj: Vec<u128>,
    cand: Vec<Vertex>,
    tmask: u128,
    t0: Vertex,
}

fn setup(inst: &NwsInstance) -> Result<Setup> {
    let g = inst.graph();
    if g.n() > 128 {
        return Err(Error::TooLarge(format!("{} vertices (limit 128)", g.n())));
    }
    let tmask = inst.terminals().iter().fold(0u128, |m, &t| m | 1 << t);
    let cand: Vec<Vertex> = (0..g.n())
        .filter(|&v| tmask >> v & 1 == 0 && g.weight(v).is_finite())
        .collect();
    if cand.len() > NWS_EXACT_MAX_CANDIDATES {
        return Err(Error::TooLarge(format!(
            "{} candidate vertices (limit {NWS_EXACT_MAX_CANDIDATES})",
            cand.len()
        )));
    }
    let adj = adjacency_masks(g);
    let t0 = inst.terminals()[0];
    let all = cand.iter().fold(tmask, |m, &v| m | 1 << v);
    if reach_within(&adj, t0, all) & tmask != tmask {
        return Err(Error::infeasible("terminals are disconnected"));
    }
    Ok(Setup {
        adj,
        cand,
        tmask,
        t0,
    })
}

impl Setup {
    fn set_of(&self, mask: u32) -> u128 {
        bits(mask as u128).fold(self.tmask, |m, i| m | 1 << self.cand[i])
    }

    fn feasible(&self, set: u128) -> bool {
        reach_within(&self.adj, self.t0, set) & self.tmask == self.tmask
    }
}

/// Minimum-weight vertex set containing `T` and inducing a connected subgraph.
///
/// Returns the full vertex set (terminals included) and its weight.
pub fn solve_nws_exact(inst: &NwsInstance) -> Result<(Vec<Vertex>, Weight)> {
    let s = setup(inst)?;
    let g = inst.graph();
    let w: Vec<i64> = s
        .cand
        .iter()
        .map(|&v| g.weight(v).micros().expect("finite"))
        .collect();
    let mut best: Option<(i64, u32, u32)> = None;
    for mask in 0u32..(1u32 << s.cand.len()) {
        let weight: i64 = bits(mask as u128).map(|i| w[i]).sum();
        let pc = mask.count_ones();
        if let Some((bw, bp, _)) = best {
            if weight > bw || (weight == bw && pc >= bp) {
                continue;
            }
        }
        if s.feasible(s.set_of(mask)) {
            best = Some((weight, pc, mask));
        }
    }
    let (_, _, mask) = best.expect("setup checked feasibility");
    let set: Vec<Vertex> = bits(s.set_of(mask)).collect();
    let total = g.total_weight(&set);
    Ok((set, total))
}

/// Every inclusion-minimal feasible vertex set, each sorted, in mask order.
pub fn minimal_steiner_sets(inst: &NwsInstance) -> Result<Vec<Vec<Vertex>>> {
    let s = setup(inst)?;
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << s.cand.len()) {
        let set = s.set_of(mask);
        if !s.feasible(set) {
            continue;
        }
        let minimal = bits(mask as u128).all(|i| !s.feasible(set & !(1u128 << s.cand[i])));
        if minimal {
            out.push(bits(set).collect());
        }
    }
    Ok(out)
}
