use serde::{Deserialize, Serialize};

use super::NwsInstance;
use crate::error::{Error, Result};
use crate::graph::{bfs_tree, EdgeId, Graph, VcstInstance, VcstSolution, Vertex};
use crate::num::{Fixed, Weight};

/// Largest accepted level set.
pub const MAX_LEVELS: usize = 64;

/// Steiner tree activation instance.
///
/// `tables[e][i * |W| + j]` tells whether edge `e = (u, v)`, `u < v`, is
/// active when `u` sits at level `levels[i]` and `v` at `levels[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActivationInstance {
    graph: Graph,
    terminals: Vec<Vertex>,
    levels: Vec<Fixed>,
    tables: Vec<Vec<bool>>,
}

impl ActivationInstance {
    /// Validates shapes only; monotonicity is checked by the consumers.
    pub fn new(
        graph: Graph,
        terminals: impl IntoIterator<Item = Vertex>,
        levels: Vec<Fixed>,
        tables: Vec<Vec<bool>>,
    ) -> Result<Self> {
        let mut terminals: Vec<Vertex> = terminals.into_iter().collect();
        terminals.sort_unstable();
        terminals.dedup();
        if terminals.is_empty() {
            return Err(Error::invalid("terminal set is empty"));
        }
        if let Some(&t) = terminals.iter().find(|&&t| t >= graph.n()) {
            return Err(Error::invalid(format!("terminal {t} out of range")));
        }
        if levels.is_empty() {
            return Err(Error::invalid("level set is empty"));
        }
        if levels.len() > MAX_LEVELS {
            return Err(Error::TooLarge(format!(
                "{} levels (limit {MAX_LEVELS})",
                levels.len()
            )));
        }
        if levels.windows(2).any(|w| w[0] >= w[1]) || levels[0].is_negative() {
            return Err(Error::invalid(
                "levels must be nonnegative and strictly increasing",
            ));
        }
        if tables.len() != graph.m() {
            return Err(Error::invalid(format!(
                "{} tables for {} edges",
                tables.len(),
                graph.m()
            )));
        }
        let cells = levels.len() * levels.len();
        if tables.iter().any(|t| t.len() != cells) {
            return Err(Error::invalid(format!("every table needs {cells} entries")));
        }
        Ok(ActivationInstance {
            graph,
            terminals,
            levels,
            tables,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn terminals(&self) -> &[Vertex] {
        &self.terminals
    }

    pub fn levels(&self) -> &[Fixed] {
        &self.levels
    }

    pub fn tables(&self) -> &[Vec<bool>] {
        &self.tables
    }

    /// Whether edge `e` is active with its lower endpoint at level index `i`
    /// and its upper endpoint at `j`.
    pub fn activates(&self, e: EdgeId, i: usize, j: usize) -> bool {
        self.tables[e][i * self.levels.len() + j]
    }

    /// Same query oriented from `a`'s side.
    pub fn activates_from(&self, a: Vertex, la: usize, b: Vertex, lb: usize) -> bool {
        let e = self.graph.edge_id(a, b).expect("edge of the graph");
        if a < b {
            self.activates(e, la, lb)
        } else {
            self.activates(e, lb, la)
        }
    }

    /// First `(edge, i, j)` with `f(i, j)` true but `f(i + 1, j)` or `f(i, j + 1)` false.
    pub fn first_non_monotone(&self) -> Option<(EdgeId, usize, usize)> {
        let l = self.levels.len();
        for e in 0..self.tables.len() {
            for i in 0..l {
                for j in 0..l {
                    if !self.activates(e, i, j) {
                        continue;
                    }
                    if (i + 1 < l && !self.activates(e, i + 1, j))
                        || (j + 1 < l && !self.activates(e, i, j + 1))
                    {
                        return Some((e, i, j));
                    }
                }
            }
        }
        None
    }

    pub fn is_monotone(&self) -> bool {
        self.first_non_monotone().is_none()
    }

    /// Whether the edges activated by level indices `x` connect all terminals.
    pub fn is_feasible(&self, x: &[usize]) -> bool {
        let g = &self.graph;
        let mut seen = vec![false; g.n()];
        let t0 = self.terminals[0];
        seen[t0] = true;
        let mut stack = vec![t0];
        while let Some(v) = stack.pop() {
            for &(u, e) in g.adjacency(v) {
                let active = if v < u {
                    self.activates(e, x[v], x[u])
                } else {
                    self.activates(e, x[u], x[v])
                };
                if active && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        self.terminals.iter().all(|&t| seen[t])
    }
}

/// Level assignment, stored as indices into `W` with their values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActivationSolution {
    pub levels: Vec<usize>,
    pub x: Vec<Fixed>,
    pub objective: Fixed,
}

impl ActivationSolution {
    pub fn new(inst: &ActivationInstance, levels: Vec<usize>) -> Result<Self> {
        if levels.len() != inst.graph.n() {
            return Err(Error::invalid(
                "level vector length differs from vertex count",
            ));
        }
        if levels.iter().any(|&i| i >= inst.levels.len()) {
            return Err(Error::invalid("level index out of range"));
        }
        let x: Vec<Fixed> = levels.iter().map(|&i| inst.levels[i]).collect();
        let objective = x.iter().copied().sum();
        Ok(ActivationSolution {
            levels,
            x,
            objective,
        })
    }
}

/// Encodes VC-weighted costs: `W = {0} ∪ {w(v)}` and edge `uv` is active iff
/// `x(u) >= w(u)` or `x(v) >= w(v)`.
pub fn encode_vcst_as_activation(inst: &VcstInstance) -> Result<ActivationInstance> {
    let g = inst.graph();
    let mut levels: Vec<Fixed> = std::iter::once(Fixed::ZERO)
        .chain(g.weights().iter().filter_map(|w| w.finite()))
        .collect();
    levels.sort_unstable();
    levels.dedup();
    let reaches = |i: usize, v: Vertex| Weight::Finite(levels[i]) >= g.weight(v);
    let l = levels.len();
    let tables = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            (0..l * l)
                .map(|c| reaches(c / l, u) || reaches(c % l, v))
                .collect()
        })
        .collect();
    ActivationInstance::new(g.clone(), inst.terminals().iter().copied(), levels, tables)
}

/// What a vertex of the reduced graph stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Origin {
    Terminal(Vertex),
    Copy { vertex: Vertex, level: usize },
}

/// Node-weighted instance built from an activation instance, with origins.
#[derive(Clone, Debug)]
pub struct ReducedActivation {
    pub nws: NwsInstance,
    pub origin: Vec<Origin>,
    pub source: ActivationInstance,
}

impl ReducedActivation {
    /// Original vertex behind a reduced vertex.
    pub fn original(&self, v: Vertex) -> Vertex {
        match self.origin[v] {
            Origin::Terminal(t) => t,
            Origin::Copy { vertex, .. } => vertex,
        }
    }

    pub fn is_copy(&self, v: Vertex) -> bool {
        matches!(self.origin[v], Origin::Copy { .. })
    }
}

/// Copy-graph reduction: terminal nodes of weight 0, one copy `v_i` of weight
/// `i` per useful level, `u_i v_j` joined iff `f_uv(i, j)`.
///
/// A copy is dropped when its adjacency pattern equals the next lower level's:
/// the lower copy then has the same neighbors and no more weight.
pub fn reduce_activation_to_nws(inst: &ActivationInstance) -> Result<ReducedActivation> {
    reduce(inst, true)
}

/// The reduction with every copy `v_i`, `i ∈ W`, materialized.
pub fn reduce_activation_to_nws_full(inst: &ActivationInstance) -> Result<ReducedActivation> {
    reduce(inst, false)
}

fn reduce(inst: &ActivationInstance, prune: bool) -> Result<ReducedActivation> {
    if let Some((e, i, j)) = inst.first_non_monotone() {
        let (u, v) = inst.graph.edge(e);
        return Err(Error::invalid(format!(
            "activation of edge ({u}, {v}) is not monotone at levels ({i}, {j})"
        )));
    }
    let g = &inst.graph;
    let l = inst.levels.len();
    let signature = |v: Vertex, i: usize| -> Vec<bool> {
        g.neighbors(v)
            .flat_map(|u| (0..l).map(move |j| (u, j)))
            .map(|(u, j)| inst.activates_from(v, i, u, j))
            .collect()
    };
    let mut origin: Vec<Origin> = inst
        .terminals
        .iter()
        .map(|&t| Origin::Terminal(t))
        .collect();
    let mut copy_of = vec![vec![None; l]; g.n()];
    for v in 0..g.n() {
        let mut prev: Option<Vec<bool>> = None;
        for i in 0..l {
            let sig = signature(v, i);
            if !prune || prev.as_ref() != Some(&sig) {
                copy_of[v][i] = Some(origin.len());
                origin.push(Origin::Copy {
                    vertex: v,
                    level: i,
                });
            }
            prev = Some(sig);
        }
    }
    let weights: Vec<Weight> = origin
        .iter()
        .map(|o| match *o {
            Origin::Terminal(_) => Weight::ZERO,
            Origin::Copy { level, .. } => Weight::Finite(inst.levels[level]),
        })
        .collect();
    let mut edges = Vec::new();
    for (k, &t) in inst.terminals.iter().enumerate() {
        edges.extend(copy_of[t].iter().flatten().map(|&c| (k, c)));
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        for i in 0..l {
            for j in 0..l {
                if let (Some(a), Some(b)) = (copy_of[u][i], copy_of[v][j]) {
                    if inst.activates(e, i, j) {
                        edges.push((a, b));
                    }
                }
            }
        }
    }
    let graph = Graph::new(weights, edges)?;
    let nws = NwsInstance::new(graph, 0..inst.terminals.len())?;
    Ok(ReducedActivation {
        nws,
        origin,
        source: inst.clone(),
    })
}

/// Result of mapping a reduced-graph vertex set back to levels.
#[derive(Clone, Debug)]
pub struct Lifted {
    pub solution: ActivationSolution,
    pub set_weight: Weight,
    pub minimal: bool,
    pub warning: Option<String>,
}

/// `x(v)` is the highest level among the copies of `v` in `set`, or the lowest
/// level when `set` has none.
///
/// For an inclusion-minimal feasible `set` with `0 ∈ W`, `x(V)` equals the
/// weight of `set`; otherwise only `x(V) <= w(set)` holds and a warning is set.
pub fn lift_nws_to_activation(reduced: &ReducedActivation, set: &[Vertex]) -> Result<Lifted> {
    let inst = &reduced.source;
    if let Some(&v) = set.iter().find(|&&v| v >= reduced.origin.len()) {
        return Err(Error::invalid(format!(
            "vertex {v} not in the reduced graph"
        )));
    }
    if !reduced.nws.is_feasible(set) {
        return Err(Error::infeasible(
            "vertex set does not connect the terminals",
        ));
    }
    let mut levels = vec![0usize; inst.graph.n()];
    for &v in set {
        if let Origin::Copy { vertex, level } = reduced.origin[v] {
            levels[vertex] = levels[vertex].max(level);
        }
    }
    let solution = ActivationSolution::new(inst, levels)?;
    if !inst.is_feasible(&solution.levels) {
        return Err(Error::invariant(
            "lifted levels do not activate a terminal-spanning subgraph",
        ));
    }
    let set_weight = reduced.nws.graph().total_weight(set);
    let minimal = reduced.nws.is_minimal(set);
    let mut warning = None;
    if !minimal {
        warning = Some(
            "vertex set is not inclusion-minimal; only x(V) <= w(set) is guaranteed".to_string(),
        );
    } else if Weight::Finite(solution.objective) != set_weight {
        warning = Some(format!(
            "x(V) = {} differs from set weight {set_weight}",
            solution.objective
        ));
    }
    Ok(Lifted {
        solution,
        set_weight,
        minimal,
        warning,
    })
}

/// Reads a level vector of the VC encoding as a tree with a cover.
pub fn activation_to_vcst(inst: &VcstInstance, sol: &ActivationSolution) -> Result<VcstSolution> {
    let g = inst.graph();
    if sol.x.len() != g.n() {
        return Err(Error::invalid(
            "level vector length differs from vertex count",
        ));
    }
    let in_cover = |v: Vertex| Weight::Finite(sol.x[v]) >= g.weight(v);
    let t0 = inst.terminals()[0];
    let tree = bfs_tree(g, t0, |a, b| in_cover(a) || in_cover(b))
        .pruned(|v| inst.terminals().binary_search(&v).is_ok());
    if inst.terminals().iter().any(|&t| !tree.contains(t)) {
        return Err(Error::infeasible("levels do not connect the terminals"));
    }
    let cover = tree
        .vertices()
        .iter()
        .copied()
        .filter(|&v| in_cover(v))
        .collect();
    Ok(VcstSolution::new(inst, tree, cover))
}
