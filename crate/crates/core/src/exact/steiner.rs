use crate::error::{Error, Result};
use crate::graph::{Graph, Tree, Vertex};
use crate::num::Weight;

/// Limit on terminals for [`solve_edge_steiner_exact`].
pub const STEINER_EXACT_MAX_TERMINALS: usize = 12;

const INF: i64 = i64::MAX / 4;

/// All-pairs shortest paths over finite-length edges, with next hops.
pub(crate) struct Metric {
    pub dist: Vec<Vec<i64>>,
    next: Vec<Vec<usize>>,
}

impl Metric {
    pub fn new(g: &Graph, lengths: &[Weight]) -> Metric {
        let n = g.n();
        let mut dist = vec![vec![INF; n]; n];
        let mut next = vec![vec![usize::MAX; n]; n];
        for v in 0..n {
            dist[v][v] = 0;
            next[v][v] = v;
        }
        for (id, &(u, v)) in g.edges().iter().enumerate() {
            if let Some(l) = lengths[id].micros() {
                if l < dist[u][v] {
                    dist[u][v] = l;
                    dist[v][u] = l;
                    next[u][v] = v;
                    next[v][u] = u;
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                if dist[i][k] == INF {
                    continue;
                }
                for j in 0..n {
                    let via = dist[i][k] + dist[k][j];
                    if via < dist[i][j] {
                        dist[i][j] = via;
                        next[i][j] = next[i][k];
                    }
                }
            }
        }
        Metric { dist, next }
    }

    pub fn reachable(&self, u: Vertex, v: Vertex) -> bool {
        self.dist[u][v] < INF
    }

    /// Edges of the stored shortest `u`-`v` path.
    pub fn path_edges(&self, mut u: Vertex, v: Vertex, out: &mut Vec<(Vertex, Vertex)>) {
        while u != v {
            let w = self.next[u][v];
            out.push((u.min(w), u.max(w)));
            u = w;
        }
    }
}

/// Spanning forest of the given edges by increasing length (Kruskal), then
/// pruned down to the minimal subtree over `keep`.
pub(crate) fn tree_from_edge_union(
    g: &Graph,
    lengths: &[Weight],
    mut edges: Vec<(Vertex, Vertex)>,
    anchor: Vertex,
    keep: impl Fn(Vertex) -> bool,
) -> Tree {
    edges.sort_unstable();
    edges.dedup();
    let id = |&(u, v): &(Vertex, Vertex)| g.edge_id(u, v).expect("edge of the graph");
    edges.sort_by_key(|e| (lengths[id(e)], id(e)));
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    let mut chosen = Vec::new();
    for (u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            chosen.push((u, v));
        }
    }
    Tree::new([anchor], chosen).pruned(keep)
}

/// Minimum-length Steiner tree by the Dreyfus-Wagner recurrence.
///
/// Edges of infinite length are unusable.
pub fn solve_edge_steiner_exact(
    g: &Graph,
    lengths: &[Weight],
    terminals: &[Vertex],
) -> Result<(Tree, Weight)> {
    let mut terms = terminals.to_vec();
    terms.sort_unstable();
    terms.dedup();
    if terms.len() > STEINER_EXACT_MAX_TERMINALS {
        return Err(Error::TooLarge(format!(
            "{} terminals (limit {STEINER_EXACT_MAX_TERMINALS})",
            terms.len()
        )));
    }
    if lengths.len() != g.m() {
        return Err(Error::invalid("length vector does not match edge count"));
    }
    match terms.as_slice() {
        [] => return Ok((Tree::empty(), Weight::ZERO)),
        [t] => return Ok((Tree::singleton(*t), Weight::ZERO)),
        _ => {}
    }
    let n = g.n();
    let metric = Metric::new(g, lengths);
    if terms.iter().any(|&t| !metric.reachable(terms[0], t)) {
        return Err(Error::infeasible("terminals are disconnected"));
    }
    let k = terms.len();
    let full = (1usize << k) - 1;
    let mut dp = vec![INF; (full + 1) * n];
    let mut merged = vec![INF; (full + 1) * n];
    let mut split = vec![0usize; (full + 1) * n];
    let mut via = vec![usize::MAX; (full + 1) * n];
    for s in 1..=full {
        let row = s * n;
        if s.count_ones() == 1 {
            merged[row + terms[s.trailing_zeros() as usize]] = 0;
        } else {
            let low = s & s.wrapping_neg();
            for v in 0..n {
                // Subsets holding the lowest bit, so each split is seen once.
                let mut sub = (s - 1) & s;
                while sub > 0 {
                    if sub & low != 0 {
                        let c = dp[sub * n + v] + dp[(s ^ sub) * n + v];
                        if c < merged[row + v] {
                            merged[row + v] = c;
                            split[row + v] = sub;
                        }
                    }
                    sub = (sub - 1) & s;
                }
            }
        }
        for v in 0..n {
            for u in 0..n {
                if merged[row + u] >= INF || !metric.reachable(u, v) {
                    continue;
                }
                let c = merged[row + u] + metric.dist[u][v];
                if c < dp[row + v] {
                    dp[row + v] = c;
                    via[row + v] = u;
                }
            }
        }
    }
    let mut edges = Vec::new();
    let mut stack = vec![(full, terms[0])];
    while let Some((s, v)) = stack.pop() {
        let u = via[s * n + v];
        metric.path_edges(u, v, &mut edges);
        if s.count_ones() > 1 {
            let sub = split[s * n + u];
            stack.push((sub, u));
            stack.push((s ^ sub, u));
        }
    }
    let tree = tree_from_edge_union(g, lengths, edges, terms[0], |v| {
        terms.binary_search(&v).is_ok()
    });
    let total = tree.length_with(|u, v| lengths[g.edge_id(u, v).expect("graph edge")]);
    debug_assert_eq!(total.micros(), Some(dp[full * n + terms[0]]));
    Ok((tree, total))
}
