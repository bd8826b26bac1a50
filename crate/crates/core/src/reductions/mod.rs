//! Instance transformations between the problem variants, with solution maps.

mod activation;
mod gadgets;
mod vcst_cds;

pub use activation::{
    activation_to_vcst, encode_vcst_as_activation, lift_nws_to_activation,
    reduce_activation_to_nws, reduce_activation_to_nws_full, ActivationInstance,
    ActivationSolution, Lifted, Origin, ReducedActivation, MAX_LEVELS,
};
pub use gadgets::{
    gadget_from_set_cover, gadget_subdivide_grid, GridGadget, GridSteinerInstance, SetCoverGadget,
};
pub use vcst_cds::{lift_cds_to_vcst, reduce_vcst_to_cds};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Node-weighted Steiner tree instance: connect `T` by an induced connected
/// subgraph of minimum vertex weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NwsInstance {
    graph: Graph,
    terminals: Vec<Vertex>,
}

impl NwsInstance {
    pub fn new(graph: Graph, terminals: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let mut terminals: Vec<Vertex> = terminals.into_iter().collect();
        terminals.sort_unstable();
        terminals.dedup();
        if terminals.is_empty() {
            return Err(Error::invalid("terminal set is empty"));
        }
        if let Some(&t) = terminals.iter().find(|&&t| t >= graph.n()) {
            return Err(Error::invalid(format!("terminal {t} out of range")));
        }
        Ok(NwsInstance { graph, terminals })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn terminals(&self) -> &[Vertex] {
        &self.terminals
    }

    pub fn is_terminal(&self, v: Vertex) -> bool {
        self.terminals.binary_search(&v).is_ok()
    }

    /// Whether `set` contains `T` and induces a connected subgraph.
    pub fn is_feasible(&self, set: &[Vertex]) -> bool {
        let mut inside = vec![false; self.graph.n()];
        for &v in set {
            inside[v] = true;
        }
        self.terminals.iter().all(|&t| inside[t]) && self.graph.connects(set, |v| inside[v])
    }

    /// Whether no single non-terminal can be dropped from a feasible `set`.
    pub fn is_minimal(&self, set: &[Vertex]) -> bool {
        self.is_feasible(set)
            && set.iter().filter(|&&v| !self.is_terminal(v)).all(|&v| {
                let rest: Vec<Vertex> = set.iter().copied().filter(|&u| u != v).collect();
                !self.is_feasible(&rest)
            })
    }
}
