use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Graph, Vertex};
use crate::error::{Error, Result};
use crate::num::Weight;

/// A tree given by its vertex set and edge set.
///
/// Keeping the vertex set explicit makes single-vertex trees representable.
/// Both lists are sorted; edges are normalized `(u, v)` with `u < v`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tree {
    vertices: Vec<Vertex>,
    edges: Vec<(Vertex, Vertex)>,
}

impl Tree {
    pub fn empty() -> Self {
        Tree::default()
    }

    pub fn singleton(v: Vertex) -> Self {
        Tree {
            vertices: vec![v],
            edges: Vec::new(),
        }
    }

    /// Vertex set is the union of `vertices` and all edge endpoints.
    /// Not validated; see [`Tree::check`].
    pub fn new(
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Self {
        let edges: BTreeSet<(Vertex, Vertex)> = edges
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        let mut vs: BTreeSet<Vertex> = vertices.into_iter().collect();
        for &(u, v) in &edges {
            vs.insert(u);
            vs.insert(v);
        }
        Tree {
            vertices: vs.into_iter().collect(),
            edges: edges.into_iter().collect(),
        }
    }

    pub fn from_edges(edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        Tree::new([], edges)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn adjacency(&self) -> BTreeMap<Vertex, Vec<Vertex>> {
        let mut adj: BTreeMap<Vertex, Vec<Vertex>> =
            self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for &(u, v) in &self.edges {
            adj.entry(u).or_default().push(v);
            adj.entry(v).or_default().push(u);
        }
        adj
    }

    /// Ok iff the structure is connected and acyclic (the empty tree is a tree).
    pub fn check(&self) -> Result<()> {
        if self.edges.iter().any(|&(u, v)| u == v) {
            return Err(Error::InvalidTree("self-loop".into()));
        }
        if self.vertices.is_empty() {
            return Ok(());
        }
        if self.edges.len() + 1 != self.vertices.len() {
            return Err(Error::InvalidTree(format!(
                "{} edges on {} vertices",
                self.edges.len(),
                self.vertices.len()
            )));
        }
        let adj = self.adjacency();
        let mut seen = BTreeSet::from([self.vertices[0]]);
        let mut stack = vec![self.vertices[0]];
        while let Some(v) = stack.pop() {
            for &u in &adj[&v] {
                if seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        if seen.len() != self.vertices.len() {
            return Err(Error::InvalidTree("disconnected".into()));
        }
        Ok(())
    }

    /// Repeatedly deletes leaves for which `keep` is false.
    pub fn pruned(&self, keep: impl Fn(Vertex) -> bool) -> Tree {
        let mut adj = self.adjacency();
        let mut queue: VecDeque<Vertex> = adj
            .iter()
            .filter(|(v, ns)| ns.len() <= 1 && !keep(**v))
            .map(|(&v, _)| v)
            .collect();
        while let Some(v) = queue.pop_front() {
            let Some(ns) = adj.get(&v) else { continue };
            if ns.len() > 1 {
                continue;
            }
            let ns = adj.remove(&v).unwrap_or_default();
            for u in ns {
                let list = adj.get_mut(&u).expect("adjacency is symmetric");
                list.retain(|&w| w != v);
                if list.len() <= 1 && !keep(u) {
                    queue.push_back(u);
                }
            }
        }
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|(u, v)| adj.contains_key(u) && adj.contains_key(v));
        Tree::new(adj.keys().copied(), edges)
    }

    /// Total length under `length(u, v)`.
    pub fn length_with(&self, length: impl Fn(Vertex, Vertex) -> Weight) -> Weight {
        self.edges.iter().map(|&(u, v)| length(u, v)).sum()
    }

    /// Total length using the graph's edge lengths; `None` if the graph has
    /// none or an edge is missing.
    pub fn length_in(&self, g: &Graph) -> Option<Weight> {
        let lengths = g.lengths()?;
        let mut total = Weight::ZERO;
        for &(u, v) in &self.edges {
            total = total + lengths[g.edge_id(u, v)?];
        }
        Some(total)
    }
}

/// Breadth-first spanning tree of the component of `root` over usable edges.
pub fn bfs_tree(g: &Graph, root: Vertex, usable: impl Fn(Vertex, Vertex) -> bool) -> Tree {
    let mut seen = vec![false; g.n()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    let mut verts = vec![root];
    let mut edges = Vec::new();
    while let Some(v) = queue.pop_front() {
        for u in g.neighbors(v) {
            if !seen[u] && usable(v, u) {
                seen[u] = true;
                verts.push(u);
                edges.push((v, u));
                queue.push_back(u);
            }
        }
    }
    Tree::new(verts, edges)
}

/// Minimum-weight vertex cover of a tree by dynamic programming.
///
/// Rooted at the lowest-index vertex; when including and excluding a vertex
/// cost the same, it is excluded.
pub fn tree_min_vertex_cover(tree: &Tree, weights: &[Weight]) -> Result<(Vec<Vertex>, Weight)> {
    tree.check()?;
    let Some(&root) = tree.vertices.first() else {
        return Ok((Vec::new(), Weight::ZERO));
    };
    let adj = tree.adjacency();
    // Preorder with parents.
    let mut order = Vec::with_capacity(tree.vertices.len());
    let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        order.push(v);
        for &u in &adj[&v] {
            if parent.get(&v) != Some(&u) {
                parent.insert(u, v);
                stack.push(u);
            }
        }
    }
    let mut incl: BTreeMap<Vertex, Weight> = BTreeMap::new();
    let mut excl: BTreeMap<Vertex, Weight> = BTreeMap::new();
    for &v in order.iter().rev() {
        let mut i = weights[v];
        let mut e = Weight::ZERO;
        for &c in &adj[&v] {
            if parent.get(&v) == Some(&c) {
                continue;
            }
            i = i + incl[&c].min(excl[&c]);
            e = e + incl[&c];
        }
        incl.insert(v, i);
        excl.insert(v, e);
    }
    let mut cover = Vec::new();
    let mut stack = vec![(root, excl[&root] > incl[&root])];
    while let Some((v, taken)) = stack.pop() {
        if taken {
            cover.push(v);
        }
        for &c in &adj[&v] {
            if parent.get(&v) == Some(&c) {
                continue;
            }
            let child_taken = !taken || excl[&c] > incl[&c];
            stack.push((c, child_taken));
        }
    }
    cover.sort_unstable();
    let total = incl[&root].min(excl[&root]);
    Ok((cover, total))
}

/// Largest degree of a cover vertex after deleting the leaves outside the cover.
pub fn cover_degree(tree: &Tree, cover: &[Vertex]) -> Result<usize> {
    tree.check()?;
    let in_cover: BTreeSet<Vertex> = cover.iter().copied().collect();
    if let Some(&(u, v)) = tree
        .edges
        .iter()
        .find(|(u, v)| !in_cover.contains(u) && !in_cover.contains(v))
    {
        return Err(Error::InvalidInstance(format!(
            "edge ({u}, {v}) not covered"
        )));
    }
    let adj = tree.adjacency();
    let removed: BTreeSet<Vertex> = adj
        .iter()
        .filter(|(v, ns)| ns.len() == 1 && !in_cover.contains(v))
        .map(|(&v, _)| v)
        .collect();
    Ok(in_cover
        .iter()
        .filter_map(|v| adj.get(v))
        .map(|ns| ns.iter().filter(|u| !removed.contains(u)).count())
        .max()
        .unwrap_or(0))
}
