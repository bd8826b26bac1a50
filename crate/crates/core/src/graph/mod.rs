//! Graphs, trees, problem instances and the unit-disk geometry.

mod geometry;
mod instance;
mod tree;

pub use geometry::{
    cell_index, close_pair_witness, packing_bound, square_partition, SquarePartition, CELL_SIDE,
    THETA,
};
pub use instance::{validate_vcst_solution, VcstInstance, VcstSolution, Verdict, Violation};
pub use tree::{bfs_tree, cover_degree, tree_min_vertex_cover, Tree};

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::{Fixed, Weight, SCALE};

pub type Vertex = usize;
pub type EdgeId = usize;

/// Planar point with exact decimal coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: Fixed,
    pub y: Fixed,
}

impl Point {
    pub fn new(x: Fixed, y: Fixed) -> Self {
        Point { x, y }
    }

    pub fn from_micros(x: i64, y: i64) -> Self {
        Point {
            x: Fixed::from_micros(x),
            y: Fixed::from_micros(y),
        }
    }

    /// Squared distance in micro-units squared.
    pub fn dist2_micros(self, other: Point) -> i128 {
        let dx = (self.x.micros() - other.x.micros()) as i128;
        let dy = (self.y.micros() - other.y.micros()) as i128;
        dx * dx + dy * dy
    }

    /// Inclusive unit-distance test, exact.
    pub fn within_unit(self, other: Point) -> bool {
        self.dist2_micros(other) <= (SCALE as i128) * (SCALE as i128)
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.dist2_micros(other) as f64).sqrt() / SCALE as f64
    }
}

/// Undirected simple graph with vertex weights.
///
/// Edges are stored normalized (`u < v`) and sorted, so edge ids are canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    weights: Vec<Weight>,
    edges: Vec<(Vertex, Vertex)>,
    lengths: Option<Vec<Weight>>,
    coords: Option<Vec<Point>>,
    unit_disk: bool,
    adj: Vec<Vec<(Vertex, EdgeId)>>,
}

impl Graph {
    pub fn new(
        weights: Vec<Weight>,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self> {
        let n = weights.len();
        let mut norm: Vec<(Vertex, Vertex)> = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!(
                "parallel edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in norm.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            weights,
            edges: norm,
            lengths: None,
            coords: None,
            unit_disk: false,
            adj,
        })
    }

    /// Attaches edge lengths, indexed by canonical edge id.
    ///
    /// Requires `l(uv) <= min(w(u), w(v))`.
    pub fn with_lengths(mut self, lengths: Vec<Weight>) -> Result<Self> {
        if lengths.len() != self.edges.len() {
            return Err(Error::invalid(format!(
                "{} lengths for {} edges",
                lengths.len(),
                self.edges.len()
            )));
        }
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if lengths[id] > self.weights[u].min(self.weights[v]) {
                return Err(Error::invalid(format!(
                    "length {} of edge ({u}, {v}) exceeds min endpoint weight",
                    lengths[id]
                )));
            }
        }
        self.lengths = Some(lengths);
        Ok(self)
    }

    /// Attaches coordinates. With `unit_disk`, the edge set must match the
    /// inclusive unit-distance rule exactly.
    pub fn with_coords(mut self, coords: Vec<Point>, unit_disk: bool) -> Result<Self> {
        if coords.len() != self.n() {
            return Err(Error::invalid(format!(
                "{} points for {} vertices",
                coords.len(),
                self.n()
            )));
        }
        if unit_disk {
            let expected = unit_disk_edges(&coords);
            if expected != self.edges {
                return Err(Error::invalid("edge set disagrees with the unit-disk rule"));
            }
        }
        self.coords = Some(coords);
        self.unit_disk = unit_disk;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight(&self, v: Vertex) -> Weight {
        self.weights[v]
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> (Vertex, Vertex) {
        self.edges[id]
    }

    pub fn lengths(&self) -> Option<&[Weight]> {
        self.lengths.as_deref()
    }

    pub fn coords(&self) -> Option<&[Point]> {
        self.coords.as_deref()
    }

    pub fn is_unit_disk(&self) -> bool {
        self.unit_disk
    }

    /// Neighbors with connecting edge ids, sorted by neighbor.
    pub fn adjacency(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].iter().map(|&(u, _)| u)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        let list = self.adj.get(u)?;
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// `N[v]` in increasing order.
    pub fn closed_neighborhood(&self, v: Vertex) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.neighbors(v).collect();
        let pos = out.partition_point(|&u| u < v);
        out.insert(pos, v);
        out
    }

    pub fn total_weight<'a>(&self, vertices: impl IntoIterator<Item = &'a Vertex>) -> Weight {
        vertices.into_iter().map(|&v| self.weights[v]).sum()
    }

    /// Component label of every vertex kept by `keep`, plus the label count.
    pub fn components(&self, keep: impl Fn(Vertex) -> bool) -> (Vec<Option<usize>>, usize) {
        let mut label = vec![None; self.n()];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n() {
            if label[s].is_some() || !keep(s) {
                continue;
            }
            label[s] = Some(count);
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for u in self.neighbors(v) {
                    if label[u].is_none() && keep(u) {
                        label[u] = Some(count);
                        queue.push_back(u);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Whether all of `targets` lie in one component of the subgraph induced by `keep`.
    pub fn connects(&self, targets: &[Vertex], keep: impl Fn(Vertex) -> bool) -> bool {
        let Some(&first) = targets.first() else {
            return true;
        };
        if !targets.iter().all(|&t| keep(t)) {
            return false;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![first];
        seen[first] = true;
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if !seen[u] && keep(u) {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        targets.iter().all(|&t| seen[t])
    }

    /// Same graph with different vertex weights; drops lengths.
    pub fn reweighted(&self, weights: Vec<Weight>) -> Result<Graph> {
        if weights.len() != self.n() {
            return Err(Error::invalid("weight vector length mismatch"));
        }
        Ok(Graph {
            weights,
            lengths: None,
            ..self.clone()
        })
    }
}

/// Canonical unit-disk edge list via unit-cell bucketing.
fn unit_disk_edges(points: &[Point]) -> Vec<(Vertex, Vertex)> {
    let cell = |p: Point| {
        (
            p.x.micros().div_euclid(SCALE),
            p.y.micros().div_euclid(SCALE),
        )
    };
    let mut buckets: HashMap<(i64, i64), Vec<Vertex>> = HashMap::new();
    for (i, &p) in points.iter().enumerate() {
        buckets.entry(cell(p)).or_default().push(i);
    }
    let mut edges = Vec::new();
    for (i, &p) in points.iter().enumerate() {
        let (cx, cy) = cell(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(list) = buckets.get(&(cx + dx, cy + dy)) {
                    for &j in list {
                        if j > i && p.within_unit(points[j]) {
                            edges.push((i, j));
                        }
                    }
                }
            }
        }
    }
    edges.sort_unstable();
    edges
}

/// Unit disk graph on `points`: edge iff Euclidean distance is at most 1.
pub fn build_unit_disk_graph(points: &[Point], weights: Vec<Weight>) -> Result<Graph> {
    if points.len() != weights.len() {
        return Err(Error::invalid(format!(
            "{} points but {} weights",
            points.len(),
            weights.len()
        )));
    }
    let edges = unit_disk_edges(points);
    let g = Graph::new(weights, edges)?;
    Ok(Graph {
        coords: Some(points.to_vec()),
        unit_disk: true,
        ..g
    })
}
