use crate::error::{Error, Result};
use crate::exact::{check_cds_solution, CdsInstance, CdsSolution};
use crate::graph::{Tree, VcstInstance, VcstSolution, Vertex};
use crate::num::Weight;

/// Same graph and terminals with `l(uv) = min(w(u), w(v))`.
pub fn reduce_vcst_to_cds(inst: &VcstInstance) -> Result<CdsInstance> {
    let g = inst.graph();
    let lengths: Vec<Weight> = g
        .edges()
        .iter()
        .map(|&(u, v)| g.weight(u).min(g.weight(v)))
        .collect();
    let graph = g.clone().with_lengths(lengths)?;
    CdsInstance::new(graph, inst.terminals().iter().copied())
}

/// Turns a connected dominating set `(S, F)` of the reduced instance into a
/// VC-weighted solution of cost at most `w(S) + l(F)`.
///
/// Unspanned terminals hang off their lowest-index neighbor in `S`; each
/// edge of `F` is covered by an endpoint whose weight equals its length.
pub fn lift_cds_to_vcst(inst: &VcstInstance, sol: &CdsSolution) -> Result<VcstSolution> {
    let cds = reduce_vcst_to_cds(inst)?;
    check_cds_solution(&cds, sol)
        .map_err(|e| Error::infeasible(format!("connected dominating set rejected: {e}")))?;
    let g = inst.graph();
    let mut vertices: Vec<Vertex> = sol.tree.vertices().to_vec();
    vertices.extend(&sol.domset);
    let mut edges: Vec<(Vertex, Vertex)> = sol.tree.edges().to_vec();
    let base = Tree::new(vertices.iter().copied(), edges.iter().copied());
    for &t in inst.terminals() {
        if base.contains(t) {
            continue;
        }
        let s = g
            .neighbors(t)
            .find(|u| sol.domset.binary_search(u).is_ok())
            .ok_or_else(|| Error::invariant(format!("terminal {t} lost its dominator")))?;
        edges.push((t, s));
    }
    let mut cover = sol.domset.clone();
    for &(u, v) in sol.tree.edges() {
        let len = g.weight(u).min(g.weight(v));
        cover.push(if g.weight(u) == len { u } else { v });
    }
    let tree = Tree::new(vertices, edges);
    Ok(VcstSolution::new(inst, tree, cover))
}
