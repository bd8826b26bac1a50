use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Graph, Tree, Vertex};
use crate::error::{Error, Result};
use crate::num::Weight;

/// VC-weighted Steiner tree instance. The spanning variant has `T = V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcstInstance {
    graph: Graph,
    terminals: Vec<Vertex>,
}

impl VcstInstance {
    /// Terminals are sorted and deduplicated; they must be nonempty and in range.
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
        Ok(VcstInstance { graph, terminals })
    }

    pub fn spanning(graph: Graph) -> Result<Self> {
        let n = graph.n();
        VcstInstance::new(graph, 0..n)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn terminals(&self) -> &[Vertex] {
        &self.terminals
    }

    pub fn is_spanning(&self) -> bool {
        self.terminals.len() == self.graph.n()
    }
}

/// A Steiner tree `F` with a vertex cover `U` of it; cost is `w(U)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VcstSolution {
    pub tree: Tree,
    pub cover: Vec<Vertex>,
    pub objective: Weight,
}

impl VcstSolution {
    /// Builds a solution with its objective computed from the weights.
    pub fn new(inst: &VcstInstance, tree: Tree, mut cover: Vec<Vertex>) -> Self {
        cover.sort_unstable();
        cover.dedup();
        let objective = inst.graph().total_weight(&cover);
        VcstSolution {
            tree,
            cover,
            objective,
        }
    }
}

/// First violated feasibility condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    UnknownVertex(Vertex),
    MissingEdge(Vertex, Vertex),
    NotATree(String),
    TerminalNotSpanned(Vertex),
    UncoveredEdge(Vertex, Vertex),
    InfiniteWeight(Vertex),
    ObjectiveMismatch { claimed: Weight, actual: Weight },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownVertex(v) => write!(f, "unknown vertex {v}"),
            Violation::MissingEdge(u, v) => write!(f, "edge ({u}, {v}) not in graph"),
            Violation::NotATree(why) => write!(f, "not a tree: {why}"),
            Violation::TerminalNotSpanned(t) => write!(f, "terminal not spanned: {t}"),
            Violation::UncoveredEdge(u, v) => write!(f, "uncovered edge ({u}, {v})"),
            Violation::InfiniteWeight(v) => write!(f, "infinite-weight vertex {v} in cover"),
            Violation::ObjectiveMismatch { claimed, actual } => {
                write!(f, "objective {claimed} but cover weighs {actual}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Violation(Violation),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }

    pub fn into_result(self) -> Result<()> {
        match self {
            Verdict::Ok => Ok(()),
            Verdict::Violation(v) => Err(Error::invariant(v.to_string())),
        }
    }
}

/// Checks that `F` is a tree of the graph spanning `T` and that `U` covers `F`.
pub fn validate_vcst_solution(inst: &VcstInstance, sol: &VcstSolution) -> Verdict {
    let g = inst.graph();
    let fail = |v| Verdict::Violation(v);
    for &v in sol.tree.vertices().iter().chain(&sol.cover) {
        if v >= g.n() {
            return fail(Violation::UnknownVertex(v));
        }
    }
    for &(u, v) in sol.tree.edges() {
        if !g.has_edge(u, v) {
            return fail(Violation::MissingEdge(u, v));
        }
    }
    if let Err(e) = sol.tree.check() {
        return fail(Violation::NotATree(e.to_string()));
    }
    for &t in inst.terminals() {
        if !sol.tree.contains(t) {
            return fail(Violation::TerminalNotSpanned(t));
        }
    }
    let in_cover = |v: Vertex| sol.cover.contains(&v);
    for &(u, v) in sol.tree.edges() {
        if !in_cover(u) && !in_cover(v) {
            return fail(Violation::UncoveredEdge(u, v));
        }
    }
    if let Some(&v) = sol.cover.iter().find(|&&v| !g.weight(v).is_finite()) {
        return fail(Violation::InfiniteWeight(v));
    }
    let mut cover = sol.cover.clone();
    cover.sort_unstable();
    cover.dedup();
    let actual = g.total_weight(&cover);
    if actual != sol.objective {
        return fail(Violation::ObjectiveMismatch {
            claimed: sol.objective,
            actual,
        });
    }
    Verdict::Ok
}
