use serde::{Deserialize, Serialize};

use super::steiner::{solve_edge_steiner_exact, STEINER_EXACT_MAX_TERMINALS};
use crate::error::{Error, Result};
use crate::graph::{Graph, Tree, Vertex};
use crate::num::Weight;

/// Limit on candidate dominators for [`solve_cds_exact`].
pub const CDS_EXACT_MAX_CANDIDATES: usize = 20;

/// Connected dominating set instance: a graph with edge lengths
/// `l(uv) <= min(w(u), w(v))` and a terminal set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdsInstance {
    graph: Graph,
    terminals: Vec<Vertex>,
}

impl CdsInstance {
    pub fn new(graph: Graph, terminals: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        if graph.lengths().is_none() {
            return Err(Error::invalid(
                "connected dominating set instance needs edge lengths",
            ));
        }
        let mut terminals: Vec<Vertex> = terminals.into_iter().collect();
        terminals.sort_unstable();
        terminals.dedup();
        if terminals.is_empty() {
            return Err(Error::invalid("terminal set is empty"));
        }
        if let Some(&t) = terminals.iter().find(|&&t| t >= graph.n()) {
            return Err(Error::invalid(format!("terminal {t} out of range")));
        }
        Ok(CdsInstance { graph, terminals })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn terminals(&self) -> &[Vertex] {
        &self.terminals
    }

    pub fn lengths(&self) -> &[Weight] {
        self.graph.lengths().expect("checked at construction")
    }

    pub fn length(&self, u: Vertex, v: Vertex) -> Option<Weight> {
        self.graph.edge_id(u, v).map(|id| self.lengths()[id])
    }

    pub fn tree_length(&self, tree: &Tree) -> Weight {
        tree.length_in(&self.graph).unwrap_or(Weight::Infinite)
    }

    pub fn is_spanning(&self) -> bool {
        self.terminals.len() == self.graph.n()
    }

    pub fn dominates(&self, set: &[Vertex]) -> bool {
        self.terminals
            .iter()
            .all(|&t| set.contains(&t) || self.graph.neighbors(t).any(|u| set.contains(&u)))
    }
}

/// Dominating set `S` with a tree `F` spanning it; cost `w(S) + l(F)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CdsSolution {
    pub domset: Vec<Vertex>,
    pub tree: Tree,
    pub objective: Weight,
}

impl CdsSolution {
    /// Computes the objective. A lone dominator with an empty tree becomes a
    /// single-vertex tree.
    pub fn new(inst: &CdsInstance, mut domset: Vec<Vertex>, tree: Tree) -> Self {
        domset.sort_unstable();
        domset.dedup();
        let tree = if tree.is_empty() && domset.len() == 1 {
            Tree::singleton(domset[0])
        } else {
            tree
        };
        let objective = inst.graph().total_weight(&domset) + inst.tree_length(&tree);
        CdsSolution {
            domset,
            tree,
            objective,
        }
    }
}

/// Ok iff `S` dominates `T`, `F` is a tree of the graph containing `S`, and
/// the objective is `w(S) + l(F)`.
pub fn check_cds_solution(inst: &CdsInstance, sol: &CdsSolution) -> Result<()> {
    let g = inst.graph();
    if let Some(&v) = sol
        .domset
        .iter()
        .chain(sol.tree.vertices())
        .find(|&&v| v >= g.n())
    {
        return Err(Error::invariant(format!("unknown vertex {v}")));
    }
    if sol.domset.is_empty() {
        return Err(Error::invariant("empty dominating set"));
    }
    if let Some(&t) = inst
        .terminals()
        .iter()
        .find(|&&t| !sol.domset.contains(&t) && !g.neighbors(t).any(|u| sol.domset.contains(&u)))
    {
        return Err(Error::invariant(format!("terminal {t} not dominated")));
    }
    if let Some(&(u, v)) = sol.tree.edges().iter().find(|&&(u, v)| !g.has_edge(u, v)) {
        return Err(Error::invariant(format!("edge ({u}, {v}) not in graph")));
    }
    sol.tree
        .check()
        .map_err(|e| Error::invariant(e.to_string()))?;
    if sol.domset.len() > 1 || !sol.tree.is_empty() {
        if let Some(&v) = sol.domset.iter().find(|&&v| !sol.tree.contains(v)) {
            return Err(Error::invariant(format!("dominator {v} not spanned")));
        }
    }
    if let Some(&v) = sol.domset.iter().find(|&&v| !g.weight(v).is_finite()) {
        return Err(Error::invariant(format!("infinite-weight dominator {v}")));
    }
    let actual = g.total_weight(&sol.domset) + inst.tree_length(&sol.tree);
    if actual != sol.objective {
        return Err(Error::invariant(format!(
            "objective {} but solution costs {actual}",
            sol.objective
        )));
    }
    Ok(())
}

/// Optimal connected dominating set.
///
/// Only inclusion-minimal dominating sets need checking: adding a dominator
/// never lowers `w(S)` nor the Steiner length. Ties go to smaller `|S|`, then
/// the lower mask.
pub fn solve_cds_exact(inst: &CdsInstance) -> Result<CdsSolution> {
    let g = inst.graph();
    let terms = inst.terminals();
    if terms.len() > 64 {
        return Err(Error::TooLarge(format!(
            "{} terminals (limit 64)",
            terms.len()
        )));
    }
    let tbit = |t: Vertex| terms.binary_search(&t).map(|i| 1u64 << i).unwrap_or(0);
    let cand: Vec<Vertex> = (0..g.n())
        .filter(|&v| g.weight(v).is_finite())
        .filter(|&v| tbit(v) != 0 || g.neighbors(v).any(|u| tbit(u) != 0))
        .collect();
    if cand.len() > CDS_EXACT_MAX_CANDIDATES {
        return Err(Error::TooLarge(format!(
            "{} candidate dominators (limit {CDS_EXACT_MAX_CANDIDATES})",
            cand.len()
        )));
    }
    let dom: Vec<u64> = cand
        .iter()
        .map(|&v| {
            g.closed_neighborhood(v)
                .into_iter()
                .fold(0, |m, u| m | tbit(u))
        })
        .collect();
    let w: Vec<Weight> = cand.iter().map(|&v| g.weight(v)).collect();
    let all_terms = if terms.len() == 64 {
        u64::MAX
    } else {
        (1u64 << terms.len()) - 1
    };
    let mut best: Option<(Weight, u32, CdsSolution)> = None;
    let mut steiner_error = None;
    for mask in 1u32..(1u32 << cand.len()) {
        let covered = super::bits(mask as u128).fold(0u64, |m, i| m | dom[i]);
        if covered != all_terms {
            continue;
        }
        let minimal = super::bits(mask as u128).all(|i| {
            let without = super::bits((mask & !(1 << i)) as u128).fold(0u64, |m, j| m | dom[j]);
            without != all_terms
        });
        if !minimal {
            continue;
        }
        let ws: Weight = super::bits(mask as u128).map(|i| w[i]).sum();
        let pc = mask.count_ones();
        if let Some((bo, bp, _)) = &best {
            if ws > *bo || (ws == *bo && pc >= *bp) {
                continue;
            }
        }
        let set: Vec<Vertex> = super::bits(mask as u128).map(|i| cand[i]).collect();
        if set.len() > STEINER_EXACT_MAX_TERMINALS {
            steiner_error = Some(Error::TooLarge(format!(
                "dominating set of size {}",
                set.len()
            )));
            continue;
        }
        let (tree, len) = match solve_edge_steiner_exact(g, inst.lengths(), &set) {
            Ok(r) => r,
            Err(Error::Infeasible(_)) => continue,
            Err(e) => return Err(e),
        };
        let obj = ws + len;
        let better = match &best {
            None => true,
            Some((bo, bp, _)) => obj < *bo || (obj == *bo && pc < *bp),
        };
        if better {
            best = Some((obj, pc, CdsSolution::new(inst, set, tree)));
        }
    }
    match best {
        Some((_, _, sol)) => Ok(sol),
        None => {
            Err(steiner_error.unwrap_or_else(|| Error::infeasible("no connected dominating set")))
        }
    }
}
