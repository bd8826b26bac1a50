use super::{adjacency_masks, bits};
use crate::error::{Error, Result};
use crate::graph::{bfs_tree, tree_min_vertex_cover, Tree, VcstInstance, VcstSolution, Vertex};
use crate::num::Weight;

/// Limit on finite-weight vertices for [`solve_vcst_exact`].
pub const VCST_EXACT_MAX_CANDIDATES: usize = 24;

/// Limit on vertices for [`solve_vcst_exact_crosscheck`].
pub const CROSSCHECK_MAX_VERTICES: usize = 9;

/// Vertices reachable from `start` using only edges with an endpoint in `cover`.
fn covered_reach(adj: &[u128], cover: u128, start: usize) -> u128 {
    let mut reach = 1u128 << start;
    let mut frontier = reach;
    while frontier != 0 {
        let mut next = 0;
        for v in bits(frontier) {
            next |= if cover >> v & 1 == 1 {
                adj[v]
            } else {
                adj[v] & cover
            };
        }
        next &= !reach;
        reach |= next;
        frontier = next;
    }
    reach
}

/// Minimum-weight VC-weighted Steiner tree by enumerating cover sets.
///
/// A cover `U` extends to a solution iff all terminals share a component of
/// the edges with an endpoint in `U`. Covers are scanned by popcount, then
/// numeric mask; the first minimum wins.
pub fn solve_vcst_exact(inst: &VcstInstance) -> Result<VcstSolution> {
    let g = inst.graph();
    if g.n() > 128 {
        return Err(Error::TooLarge(format!("{} vertices (limit 128)", g.n())));
    }
    let cand: Vec<Vertex> = (0..g.n()).filter(|&v| g.weight(v).is_finite()).collect();
    if cand.len() > VCST_EXACT_MAX_CANDIDATES {
        return Err(Error::TooLarge(format!(
            "{} finite-weight vertices (limit {VCST_EXACT_MAX_CANDIDATES})",
            cand.len()
        )));
    }
    let adj = adjacency_masks(g);
    let terms = inst.terminals();
    let tmask = terms.iter().fold(0u128, |m, &t| m | 1 << t);
    let t0 = terms[0];
    let all = cand.iter().fold(0u128, |m, &v| m | 1 << v);
    if covered_reach(&adj, all, t0) & tmask != tmask {
        return Err(Error::infeasible(
            "terminals cannot be joined by covered edges",
        ));
    }
    let w: Vec<i64> = cand
        .iter()
        .map(|&v| g.weight(v).micros().expect("finite"))
        .collect();
    let k = cand.len();
    let mut best: Option<(i64, u32, u32)> = None;
    for popcount in 0..=k as u32 {
        let mut mask: u32 = if popcount == 0 {
            0
        } else {
            (1u32 << popcount) - 1
        };
        loop {
            if (mask as u64) >= (1u64 << k) {
                break;
            }
            let weight: i64 = bits(mask as u128).map(|i| w[i]).sum();
            let better = match best {
                None => true,
                Some((bw, _, _)) => weight < bw,
            };
            if better {
                let cover = bits(mask as u128).fold(0u128, |m, i| m | 1 << cand[i]);
                if covered_reach(&adj, cover, t0) & tmask == tmask {
                    best = Some((weight, popcount, mask));
                }
            }
            if popcount == 0 {
                break;
            }
            // Next mask with the same popcount (Gosper's hack).
            let c = mask & mask.wrapping_neg();
            let r = mask.wrapping_add(c);
            if r == 0 {
                break;
            }
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    let (_, _, mask) = best.expect("full cover is feasible");
    let cover_mask = bits(mask as u128).fold(0u128, |m, i| m | 1 << cand[i]);
    let in_cover = |v: Vertex| cover_mask >> v & 1 == 1;
    let tree = bfs_tree(g, t0, |a, b| in_cover(a) || in_cover(b)).pruned(|v| tmask >> v & 1 == 1);
    let cover: Vec<Vertex> = tree
        .vertices()
        .iter()
        .copied()
        .filter(|&v| in_cover(v))
        .collect();
    Ok(VcstSolution::new(inst, tree, cover))
}

/// Independent optimum: every connected `V' ⊇ T`, every spanning tree of
/// `G[V']`, minimum tree vertex cover.
pub fn solve_vcst_exact_crosscheck(inst: &VcstInstance) -> Result<Weight> {
    let g = inst.graph();
    let n = g.n();
    if n > CROSSCHECK_MAX_VERTICES {
        return Err(Error::TooLarge(format!(
            "{n} vertices (limit {CROSSCHECK_MAX_VERTICES})"
        )));
    }
    let tmask = inst.terminals().iter().fold(0u32, |m, &t| m | 1 << t);
    let mut best = Weight::Infinite;
    let mut any = false;
    for sub in 0u32..(1 << n) {
        if sub & tmask != tmask {
            continue;
        }
        let verts: Vec<Vertex> = (0..n).filter(|&v| sub >> v & 1 == 1).collect();
        if !g.connects(&verts, |v| sub >> v & 1 == 1) {
            continue;
        }
        any = true;
        let edges: Vec<(Vertex, Vertex)> = g
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| sub >> u & 1 == 1 && sub >> v & 1 == 1)
            .collect();
        let mut parent: Vec<usize> = (0..n).collect();
        let mut chosen = Vec::with_capacity(verts.len());
        spanning_trees(
            &edges,
            0,
            verts.len() - 1,
            &mut parent,
            &mut chosen,
            &mut |tree_edges| {
                let tree = Tree::new(verts.iter().copied(), tree_edges.iter().copied());
                let (_, w) = tree_min_vertex_cover(&tree, g.weights()).expect("enumerated a tree");
                if w < best {
                    best = w;
                }
            },
        );
    }
    if !any || !best.is_finite() {
        return Err(Error::infeasible("no finite-weight Steiner tree"));
    }
    Ok(best)
}

fn find(parent: &[usize], mut v: usize) -> usize {
    while parent[v] != v {
        v = parent[v];
    }
    v
}

fn spanning_trees(
    edges: &[(Vertex, Vertex)],
    idx: usize,
    need: usize,
    parent: &mut Vec<usize>,
    chosen: &mut Vec<(Vertex, Vertex)>,
    emit: &mut dyn FnMut(&[(Vertex, Vertex)]),
) {
    if chosen.len() == need {
        emit(chosen);
        return;
    }
    if edges.len() - idx < need - chosen.len() {
        return;
    }
    let (u, v) = edges[idx];
    let (ru, rv) = (find(parent, u), find(parent, v));
    if ru != rv {
        parent[ru] = rv;
        chosen.push((u, v));
        spanning_trees(edges, idx + 1, need, parent, chosen, emit);
        chosen.pop();
        parent[ru] = ru;
    }
    spanning_trees(edges, idx + 1, need, parent, chosen, emit);
}
