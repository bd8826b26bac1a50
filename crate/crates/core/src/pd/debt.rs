use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{active_sets, PdTrace};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::reductions::{NwsInstance, ReducedActivation};

/// Planar bound on debt edges per active set.
pub const SPLIT_EDGE_FACTOR: usize = 11;

/// Planar bound on `|B|` per active set.
const COUNT_FACTOR: usize = 2;

/// A node-weighted instance together with the graph it was derived from.
/// Reduced vertices map to the original vertex they stand for; a plain
/// instance is its own original.
#[derive(Clone, Debug)]
pub struct DebtView<'a> {
    pub inst: &'a NwsInstance,
    pub original_graph: &'a Graph,
    pub original: Vec<Vertex>,
    /// Vertices that stand for a level of their original (not terminal nodes).
    pub is_copy: Vec<bool>,
}

impl<'a> DebtView<'a> {
    pub fn plain(inst: &'a NwsInstance) -> Self {
        let n = inst.graph().n();
        DebtView {
            inst,
            original_graph: inst.graph(),
            original: (0..n).collect(),
            is_copy: vec![true; n],
        }
    }

    /// Terminal nodes map to their terminal, copies to their vertex.
    pub fn reduced(reduced: &'a ReducedActivation) -> Self {
        let n = reduced.origin.len();
        DebtView {
            inst: &reduced.nws,
            original_graph: reduced.source.graph(),
            original: (0..n).map(|v| reduced.original(v)).collect(),
            is_copy: (0..n).map(|v| reduced.is_copy(v)).collect(),
        }
    }
}

/// Bipartite graph between the active sets of a snapshot `X` (side A) and
/// the vertices of `X̄ \ X` adjacent to them (side B).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DebtGraph {
    pub active: Vec<Vec<Vertex>>,
    pub b: Vec<Vertex>,
    /// Members of B whose original vertex also appears in an active set.
    pub b_prime: Vec<Vertex>,
    /// `(active set index, b)`, sorted and without repeats.
    pub edges: Vec<(usize, Vertex)>,
}

/// Contracts each active set of `x` and keeps its edges to `X̄ \ X`.
pub fn build_debt_graph(
    view: &DebtView<'_>,
    x: &[Vertex],
    final_set: &[Vertex],
) -> Result<DebtGraph> {
    let g = view.inst.graph();
    if let Some(&v) = x.iter().chain(final_set).find(|&&v| v >= g.n()) {
        return Err(Error::invalid(format!("vertex {v} out of range")));
    }
    let mut in_x = vec![false; g.n()];
    for &v in x {
        in_x[v] = true;
    }
    if let Some(&t) = view.inst.terminals().iter().find(|&&t| !in_x[t]) {
        return Err(Error::invalid(format!("snapshot misses terminal {t}")));
    }
    let mut in_aug = vec![false; g.n()];
    for &v in final_set.iter().filter(|&&v| !in_x[v]) {
        in_aug[v] = true;
    }
    let active = active_sets(view.inst, x);
    let mut edges = BTreeSet::new();
    for (a, y) in active.iter().enumerate() {
        for &v in y {
            for u in g.neighbors(v).filter(|&u| in_aug[u]) {
                edges.insert((a, u));
            }
        }
    }
    let b: BTreeSet<Vertex> = edges.iter().map(|&(_, u)| u).collect();
    let active_originals: BTreeSet<Vertex> =
        active.iter().flatten().map(|&v| view.original[v]).collect();
    let b_prime = b
        .iter()
        .copied()
        .filter(|&u| active_originals.contains(&view.original[u]))
        .collect();
    Ok(DebtGraph {
        active,
        b: b.into_iter().collect(),
        b_prime,
        edges: edges.into_iter().collect(),
    })
}

/// Counts for one increase-phase snapshot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DebtSnapshot {
    /// Number of additions made before the snapshot.
    pub step: usize,
    pub active: usize,
    pub b: usize,
    pub b_prime: usize,
    pub edges: usize,
    /// Size of the debt graph mapped into the original graph, with active
    /// sets carved around the originals of B'.
    pub split_nodes: usize,
    pub split_edges: usize,
    pub split_cells_connected: bool,
    /// No original vertex has copies in two different active sets.
    pub copy_sets_disjoint: bool,
    pub edge_bound_ok: bool,
    pub count_bound_ok: bool,
    pub split_euler_ok: bool,
}

impl DebtSnapshot {
    fn passed(&self, planar: bool) -> bool {
        self.split_cells_connected
            && self.copy_sets_disjoint
            && (!planar || (self.edge_bound_ok && self.count_bound_ok && self.split_euler_ok))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DebtReport {
    pub planar: bool,
    pub snapshots: Vec<DebtSnapshot>,
    /// `X̄` holds at most one vertex per original vertex among the copies.
    pub final_copies_distinct: bool,
    /// Steps of the snapshots that failed a check.
    pub failures: Vec<usize>,
}

impl DebtReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.final_copies_distinct
    }
}

struct Split {
    nodes: usize,
    edges: usize,
    cells_connected: bool,
}

/// Maps the debt graph into the original graph: each active set becomes the
/// set of its originals, carved by breadth-first search into one connected
/// cell per marked original (the originals of B'); other B vertices stay
/// single nodes. The result is a minor of the original graph.
fn split(view: &DebtView<'_>, d: &DebtGraph) -> Split {
    let og = view.original_graph;
    let marks: BTreeSet<Vertex> = d.b_prime.iter().map(|&b| view.original[b]).collect();
    let mut nodes = 0usize;
    let mut cell: HashMap<(usize, Vertex), usize> = HashMap::new();
    let mut marked_cell: HashMap<Vertex, usize> = HashMap::new();
    let mut cells_connected = true;
    for (a, y) in d.active.iter().enumerate() {
        let ybar: BTreeSet<Vertex> = y.iter().map(|&v| view.original[v]).collect();
        let seeds: Vec<Vertex> = ybar.iter().copied().filter(|v| marks.contains(v)).collect();
        let mut owner: HashMap<Vertex, usize> = HashMap::new();
        if seeds.is_empty() {
            for &v in &ybar {
                owner.insert(v, nodes);
            }
            nodes += 1;
        } else {
            let mut queue = VecDeque::new();
            for &s in &seeds {
                owner.insert(s, nodes);
                marked_cell.entry(s).or_insert(nodes);
                queue.push_back(s);
                nodes += 1;
            }
            while let Some(v) = queue.pop_front() {
                let id = owner[&v];
                for u in og.neighbors(v) {
                    if ybar.contains(&u) && !owner.contains_key(&u) {
                        owner.insert(u, id);
                        queue.push_back(u);
                    }
                }
            }
            for &v in &ybar {
                owner.entry(v).or_insert_with(|| {
                    cells_connected = false;
                    nodes += 1;
                    nodes - 1
                });
            }
        }
        let mut members: HashMap<usize, Vec<Vertex>> = HashMap::new();
        for (&v, &id) in &owner {
            members.entry(id).or_default().push(v);
            cell.insert((a, v), id);
        }
        for part in members.values() {
            let set: BTreeSet<Vertex> = part.iter().copied().collect();
            cells_connected &= og.connects(part, |v| set.contains(&v));
        }
    }
    let mut b_node: HashMap<Vertex, usize> = HashMap::new();
    for &b in &d.b {
        let ob = view.original[b];
        let id = match marked_cell.get(&ob) {
            Some(&id) => id,
            None => *b_node.entry(ob).or_insert_with(|| {
                nodes += 1;
                nodes - 1
            }),
        };
        b_node.insert(ob, id);
    }
    let g = view.inst.graph();
    let mut edges = BTreeSet::new();
    for &(a, b) in &d.edges {
        let nb = b_node[&view.original[b]];
        for &y in d.active[a].iter().filter(|&&y| g.has_edge(y, b)) {
            let ny = cell[&(a, view.original[y])];
            if ny != nb {
                edges.insert((ny.min(nb), ny.max(nb)));
            }
        }
    }
    Split {
        nodes,
        edges: edges.len(),
        cells_connected,
    }
}

fn copy_sets_disjoint(view: &DebtView<'_>, active: &[Vec<Vertex>]) -> bool {
    let mut owner: HashMap<Vertex, usize> = HashMap::new();
    for (a, y) in active.iter().enumerate() {
        for &v in y {
            if *owner.entry(view.original[v]).or_insert(a) != a {
                return false;
            }
        }
    }
    true
}

/// Builds the debt graph at every snapshot of the increase phase and checks
/// its counts. The bounds `edges <= 11 |A|`, `|B| <= 2 |A|` and the Euler
/// bound on the split graph are enforced only when `planar` is set, meaning
/// the original graph is planar.
pub fn check_debt_bounds(view: &DebtView<'_>, trace: &PdTrace, planar: bool) -> Result<DebtReport> {
    let mut snapshots = Vec::new();
    let mut failures = Vec::new();
    for step in 0..=trace.events.len() {
        let x = trace.snapshot(step);
        let d = build_debt_graph(view, &x, &trace.final_set)?;
        let s = split(view, &d);
        let (a, b, e) = (d.active.len(), d.b.len(), d.edges.len());
        let euler_cap = if s.nodes >= 3 {
            3 * s.nodes - 6
        } else {
            s.nodes.saturating_sub(1)
        };
        let snap = DebtSnapshot {
            step,
            active: a,
            b,
            b_prime: d.b_prime.len(),
            edges: e,
            split_nodes: s.nodes,
            split_edges: s.edges,
            split_cells_connected: s.cells_connected,
            copy_sets_disjoint: copy_sets_disjoint(view, &d.active),
            edge_bound_ok: e <= SPLIT_EDGE_FACTOR * a,
            count_bound_ok: b <= COUNT_FACTOR * a,
            split_euler_ok: s.edges <= euler_cap,
        };
        if !snap.passed(planar) {
            failures.push(step);
        }
        snapshots.push(snap);
    }
    let mut seen = BTreeSet::new();
    let final_copies_distinct = trace
        .final_set
        .iter()
        .filter(|&&v| view.is_copy[v])
        .all(|&v| seen.insert(view.original[v]));
    Ok(DebtReport {
        planar,
        snapshots,
        final_copies_distinct,
        failures,
    })
}
