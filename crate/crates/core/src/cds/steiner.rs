use crate::error::{Error, Result};
use crate::exact::steiner::{tree_from_edge_union, Metric};
use crate::graph::{Graph, Tree, Vertex};
use crate::num::Weight;

/// Steiner tree within twice the optimum: minimum spanning tree of the
/// shortest-path metric on the terminals, expanded into graph paths, made
/// acyclic and pruned to the terminals.
pub fn steiner_2approx_metric_mst(
    g: &Graph,
    lengths: &[Weight],
    terminals: &[Vertex],
) -> Result<Tree> {
    if lengths.len() != g.m() {
        return Err(Error::invalid("length vector does not match edge count"));
    }
    let mut terms = terminals.to_vec();
    terms.sort_unstable();
    terms.dedup();
    if let Some(&t) = terms.iter().find(|&&t| t >= g.n()) {
        return Err(Error::invalid(format!("terminal {t} out of range")));
    }
    match terms.as_slice() {
        [] => return Ok(Tree::empty()),
        [t] => return Ok(Tree::singleton(*t)),
        _ => {}
    }
    let metric = Metric::new(g, lengths);
    if terms.iter().any(|&t| !metric.reachable(terms[0], t)) {
        return Err(Error::infeasible("terminals are disconnected"));
    }
    // Prim over the metric closure; ties go to the lower terminal position.
    let k = terms.len();
    let mut in_tree = vec![false; k];
    let mut best = vec![(i64::MAX, 0usize); k];
    in_tree[0] = true;
    for j in 1..k {
        best[j] = (metric.dist[terms[0]][terms[j]], 0);
    }
    let mut edges = Vec::new();
    for _ in 1..k {
        let j = (0..k)
            .filter(|&j| !in_tree[j])
            .min_by_key(|&j| (best[j].0, j))
            .expect("terminal left");
        in_tree[j] = true;
        metric.path_edges(terms[best[j].1], terms[j], &mut edges);
        for i in 0..k {
            let d = metric.dist[terms[j]][terms[i]];
            if !in_tree[i] && d < best[i].0 {
                best[i] = (d, j);
            }
        }
    }
    let tree = tree_from_edge_union(g, lengths, edges, terms[0], |v| {
        terms.binary_search(&v).is_ok()
    });
    Ok(tree)
}
