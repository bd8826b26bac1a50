use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::exact::SetCoverInstance;
use crate::graph::{
    build_unit_disk_graph, validate_vcst_solution, Graph, Point, Tree, VcstInstance, VcstSolution,
    Vertex,
};
use crate::num::{Weight, SCALE};

/// Spanning VC-weighted instance built from a set system.
///
/// Vertices `0..universe` are elements, `universe + i` is set `i`; set
/// vertices form a clique, all weights are 1. Set weights are ignored.
#[derive(Clone, Debug)]
pub struct SetCoverGadget {
    pub instance: VcstInstance,
    pub universe: usize,
    pub family: Vec<Vec<usize>>,
}

pub fn gadget_from_set_cover(sc: &SetCoverInstance) -> Result<SetCoverGadget> {
    if sc.universe == 0 || sc.sets.is_empty() {
        return Err(Error::invalid(
            "gadget needs a nonempty universe and family",
        ));
    }
    let all: Vec<usize> = (0..sc.sets.len()).collect();
    if !sc.is_cover(&all) {
        return Err(Error::infeasible("some element lies in no set"));
    }
    let u = sc.universe;
    let k = sc.sets.len();
    let mut edges = Vec::new();
    for (i, s) in sc.sets.iter().enumerate() {
        edges.extend(s.iter().map(|&e| (e, u + i)));
        edges.extend((i + 1..k).map(|j| (u + i, u + j)));
    }
    let graph = Graph::new(vec![Weight::ONE; u + k], edges)?;
    let instance = VcstInstance::spanning(graph)?;
    Ok(SetCoverGadget {
        instance,
        universe: u,
        family: sc.sets.clone(),
    })
}

impl SetCoverGadget {
    fn set_vertex(&self, i: usize) -> Vertex {
        self.universe + i
    }

    /// Star on the chosen set vertices, elements and unchosen sets hung off
    /// them; the cover is the chosen set vertices.
    pub fn cover_to_solution(&self, chosen: &[usize]) -> Result<VcstSolution> {
        let mut chosen = chosen.to_vec();
        chosen.sort_unstable();
        chosen.dedup();
        if chosen.iter().any(|&i| i >= self.family.len()) {
            return Err(Error::invalid("set index out of range"));
        }
        let hub = *chosen
            .first()
            .ok_or_else(|| Error::infeasible("empty family covers nothing"))?;
        let mut edges = Vec::new();
        for e in 0..self.universe {
            let i = chosen
                .iter()
                .copied()
                .find(|&i| self.family[i].binary_search(&e).is_ok())
                .ok_or_else(|| Error::infeasible(format!("element {e} not covered")))?;
            edges.push((e, self.set_vertex(i)));
        }
        for i in 0..self.family.len() {
            if i != hub {
                edges.push((self.set_vertex(hub), self.set_vertex(i)));
            }
        }
        let cover = chosen.iter().map(|&i| self.set_vertex(i)).collect();
        let sol = VcstSolution::new(&self.instance, Tree::from_edges(edges), cover);
        validate_vcst_solution(&self.instance, &sol).into_result()?;
        Ok(sol)
    }

    /// Moves every element vertex out of the cover onto its first tree
    /// neighbor, rewiring the other neighbors to it; never grows the cover.
    pub fn solution_to_cover(&self, sol: &VcstSolution) -> Result<Vec<usize>> {
        validate_vcst_solution(&self.instance, sol).into_result()?;
        let mut edges: BTreeSet<(Vertex, Vertex)> = sol.tree.edges().iter().copied().collect();
        let mut cover: BTreeSet<Vertex> = sol.cover.iter().copied().collect();
        while let Some(&u) = cover.iter().find(|&&v| v < self.universe) {
            let nbrs: Vec<Vertex> = edges
                .iter()
                .filter_map(|&(a, b)| {
                    if a == u {
                        Some(b)
                    } else if b == u {
                        Some(a)
                    } else {
                        None
                    }
                })
                .collect();
            let (&first, rest) = nbrs
                .split_first()
                .ok_or_else(|| Error::invariant("isolated element in tree"))?;
            for &x in rest {
                edges.remove(&(u.min(x), u.max(x)));
                edges.insert((first.min(x), first.max(x)));
            }
            cover.remove(&u);
            cover.insert(first);
        }
        let rewired = VcstSolution::new(
            &self.instance,
            Tree::new(sol.tree.vertices().iter().copied(), edges),
            cover.iter().copied().collect(),
        );
        validate_vcst_solution(&self.instance, &rewired).into_result()?;
        let chosen: Vec<usize> = cover.iter().map(|&v| v - self.universe).collect();
        let sc = SetCoverInstance::unweighted(self.universe, self.family.clone())?;
        if !sc.is_cover(&chosen) || chosen.len() > sol.cover.len() {
            return Err(Error::invariant("exchange did not yield a no-larger cover"));
        }
        Ok(chosen)
    }
}

/// Edge-weighted Steiner instance on the integer lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSteinerInstance {
    pub points: Vec<(i64, i64)>,
    pub edges: Vec<(usize, usize)>,
    pub weights: Vec<Weight>,
    pub terminals: Vec<Vertex>,
}

impl GridSteinerInstance {
    pub fn new(
        points: Vec<(i64, i64)>,
        edges: Vec<(usize, usize)>,
        weights: Vec<Weight>,
        terminals: Vec<Vertex>,
    ) -> Result<Self> {
        let n = points.len();
        if points.iter().collect::<HashSet<_>>().len() != n {
            return Err(Error::invalid("repeated grid point"));
        }
        if edges.len() != weights.len() {
            return Err(Error::invalid("one weight per grid edge required"));
        }
        let mut seen = HashSet::new();
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u}, {v}) out of range")));
            }
            let (a, b) = (points[u], points[v]);
            if (a.0 - b.0).abs() + (a.1 - b.1).abs() != 1 {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) does not join adjacent grid points"
                )));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::invalid(format!("parallel edge ({u}, {v})")));
            }
        }
        if terminals.is_empty() || terminals.iter().any(|&t| t >= n) {
            return Err(Error::invalid("terminals must be nonempty and in range"));
        }
        Ok(GridSteinerInstance {
            points,
            edges,
            weights,
            terminals,
        })
    }

    /// Grid graph (zero vertex weights) with lengths in canonical edge order.
    pub fn to_graph(&self) -> Result<(Graph, Vec<Weight>)> {
        let g = Graph::new(
            vec![Weight::ZERO; self.points.len()],
            self.edges.iter().copied(),
        )?;
        let mut lengths = vec![Weight::ZERO; g.m()];
        for (&(u, v), &w) in self.edges.iter().zip(&self.weights) {
            lengths[g.edge_id(u, v).expect("edge just added")] = w;
        }
        Ok((g, lengths))
    }
}

/// Unit-disk VC-weighted instance from a grid.
///
/// Grid points are scaled by 4; each edge `uv` gets points `i, j, k` at unit
/// spacing with `w(i) = w(k) = inf`, `w(j) = w'(uv)`, grid points weigh 0.
#[derive(Clone, Debug)]
pub struct GridGadget {
    pub instance: VcstInstance,
    /// `[i, j, k]` per grid edge, in input order.
    pub subdivision: Vec<[Vertex; 3]>,
}

pub fn gadget_subdivide_grid(grid: &GridSteinerInstance) -> Result<GridGadget> {
    let grid = GridSteinerInstance::new(
        grid.points.clone(),
        grid.edges.clone(),
        grid.weights.clone(),
        grid.terminals.clone(),
    )?;
    let at = |x: i64, y: i64| Point::from_micros(x * SCALE, y * SCALE);
    let mut points: Vec<Point> = grid.points.iter().map(|&(x, y)| at(4 * x, 4 * y)).collect();
    let mut weights = vec![Weight::ZERO; points.len()];
    let mut subdivision = Vec::new();
    let mut expected = Vec::new();
    for (&(u, v), &w) in grid.edges.iter().zip(&grid.weights) {
        let (a, b) = (grid.points[u], grid.points[v]);
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        let base = points.len();
        for s in 1..=3 {
            points.push(at(4 * a.0 + s * dx, 4 * a.1 + s * dy));
        }
        weights.extend([Weight::Infinite, w, Weight::Infinite]);
        subdivision.push([base, base + 1, base + 2]);
        for (p, q) in [
            (u, base),
            (base, base + 1),
            (base + 1, base + 2),
            (base + 2, v),
        ] {
            expected.push((p.min(q), p.max(q)));
        }
    }
    let graph = build_unit_disk_graph(&points, weights)?;
    expected.sort_unstable();
    if graph.edges() != expected.as_slice() {
        return Err(Error::invariant(
            "subdivided grid has edges beyond the subdivision paths",
        ));
    }
    let instance = VcstInstance::new(graph, grid.terminals.iter().copied())?;
    Ok(GridGadget {
        instance,
        subdivision,
    })
}
