//! Seeded instance generators. Output depends only on the family, the
//! parameters and the seed.

use std::str::FromStr;

use delaunator::{triangulate, Point as DPoint};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::io::{InstanceFile, Metadata};
use crate::error::{Error, Result};
use crate::exact::{CdsInstance, SetCoverInstance};
use crate::graph::{build_unit_disk_graph, Graph, Point, VcstInstance, Vertex};
use crate::num::{Fixed, Weight, SCALE};
use crate::reductions::{
    gadget_from_set_cover, gadget_subdivide_grid, ActivationInstance, GridSteinerInstance,
};

/// Attempts made to draw a connected unit disk graph before giving up.
pub const CONNECT_ATTEMPTS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    RandomUdg,
    GridGadget,
    SetcoverGadget,
    RandomPlanar,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random-udg" => Ok(Family::RandomUdg),
            "grid-gadget" => Ok(Family::GridGadget),
            "setcover-gadget" => Ok(Family::SetcoverGadget),
            "random-planar" => Ok(Family::RandomPlanar),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::RandomUdg => "random-udg",
            Family::GridGadget => "grid-gadget",
            Family::SetcoverGadget => "setcover-gadget",
            Family::RandomPlanar => "random-planar",
        }
    }
}

/// How vertex weights are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightMode {
    /// Every weight is 1.
    Uniform,
    /// Integers drawn uniformly from `1..=max`.
    Random { max: i64 },
}

fn draw_weights(rng: &mut ChaCha8Rng, n: usize, mode: WeightMode) -> Vec<Weight> {
    match mode {
        WeightMode::Uniform => vec![Weight::ONE; n],
        WeightMode::Random { max } => (0..n)
            .map(|_| Weight::from_int(rng.gen_range(1..=max.max(1))))
            .collect(),
    }
}

/// `count` distinct vertices of `0..n` (all of them when `None`), ascending.
fn draw_terminals(rng: &mut ChaCha8Rng, n: usize, count: Option<usize>) -> Vec<Vertex> {
    let mut all: Vec<Vertex> = (0..n).collect();
    if let Some(k) = count {
        all.shuffle(rng);
        all.truncate(k.clamp(1, n));
        all.sort_unstable();
    }
    all
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Unit disk graph on `n` points uniform in `[0, side]^2` (micro-unit grid).
pub fn random_udg_graph(
    rng: &mut ChaCha8Rng,
    n: usize,
    side: f64,
    weights: WeightMode,
) -> Result<Graph> {
    if n == 0 || !(side > 0.0) {
        return Err(Error::Domain("need n >= 1 and a positive box side".into()));
    }
    let hi = (side * SCALE as f64).round() as i64;
    let points: Vec<Point> = (0..n)
        .map(|_| Point::from_micros(rng.gen_range(0..=hi), rng.gen_range(0..=hi)))
        .collect();
    let w = draw_weights(rng, n, weights);
    build_unit_disk_graph(&points, w)
}

/// Draws until the graph is connected (when asked); reports whether it is.
fn connected_udg(
    rng: &mut ChaCha8Rng,
    n: usize,
    side: f64,
    weights: WeightMode,
    require: bool,
) -> Result<(Graph, bool)> {
    for _ in 0..CONNECT_ATTEMPTS {
        let g = random_udg_graph(rng, n, side, weights)?;
        let connected = g.components(|_| true).1 == 1;
        if connected || !require {
            return Ok((g, connected));
        }
    }
    Err(Error::Domain(format!(
        "no connected unit disk graph after {CONNECT_ATTEMPTS} draws; enlarge n or shrink the box"
    )))
}

/// Random unit disk VC-weighted instance.
pub fn random_udg_vcst(
    seed: u64,
    n: usize,
    side: f64,
    weights: WeightMode,
    terminals: Option<usize>,
    require_connected: bool,
) -> Result<(VcstInstance, bool)> {
    let mut rng = rng_for(seed);
    let (g, connected) = connected_udg(&mut rng, n, side, weights, require_connected)?;
    let t = draw_terminals(&mut rng, n, terminals);
    Ok((VcstInstance::new(g, t)?, connected))
}

/// Random unit disk connected-domination instance; each edge length is an
/// integer multiple of 1/4 drawn from `(0, min(w(u), w(v))]`.
pub fn random_udg_cds(
    seed: u64,
    n: usize,
    side: f64,
    weights: WeightMode,
    terminals: Option<usize>,
    require_connected: bool,
) -> Result<(CdsInstance, bool)> {
    let mut rng = rng_for(seed);
    let (g, connected) = connected_udg(&mut rng, n, side, weights, require_connected)?;
    let lengths = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let cap = g
                .weight(u)
                .min(g.weight(v))
                .micros()
                .expect("finite weights");
            let quarters = (cap / (SCALE / 4)).max(1);
            Weight::from_micros(rng.gen_range(1..=quarters) * (SCALE / 4))
                .min(Weight::from_micros(cap))
        })
        .collect();
    let g = g.with_lengths(lengths)?;
    let t = draw_terminals(&mut rng, n, terminals);
    Ok((CdsInstance::new(g, t)?, connected))
}

/// Random spanning tree plus each remaining pair with probability `p`.
pub fn random_connected_graph(
    rng: &mut ChaCha8Rng,
    n: usize,
    p: f64,
    weights: WeightMode,
) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Domain("need n >= 1".into()));
    }
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    let mut edges: Vec<(Vertex, Vertex)> = (1..n)
        .map(|i| (order[rng.gen_range(0..i)], order[i]))
        .collect();
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v))
                && !edges.contains(&(v, u))
                && rng.gen_bool(p.clamp(0.0, 1.0))
            {
                edges.push((u, v));
            }
        }
    }
    let w = draw_weights(rng, n, weights);
    Graph::new(w, edges)
}

/// Delaunay triangulation of `n` random points in the unit square; planar
/// by construction and connected for `n >= 2` points in general position.
pub fn random_planar_graph(rng: &mut ChaCha8Rng, n: usize, weights: WeightMode) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Domain("need n >= 1".into()));
    }
    let pts: Vec<DPoint> = (0..n)
        .map(|_| DPoint {
            x: rng.gen::<f64>(),
            y: rng.gen::<f64>(),
        })
        .collect();
    let tri = triangulate(&pts);
    let mut edges = Vec::new();
    for (e, &h) in tri.halfedges.iter().enumerate() {
        // Each interior edge appears as two half-edges; keep one.
        if h == delaunator::EMPTY || e < h {
            let a = tri.triangles[e];
            let b = tri.triangles[if e % 3 == 2 { e - 2 } else { e + 1 }];
            edges.push((a, b));
        }
    }
    if n == 2 {
        edges.push((0, 1));
    }
    let w = draw_weights(rng, n, weights);
    let g = Graph::new(w, edges)?;
    if g.components(|_| true).1 != 1 {
        return Err(Error::Domain(
            "degenerate point set; triangulation is disconnected".into(),
        ));
    }
    Ok(g)
}

pub fn random_planar_vcst(
    seed: u64,
    n: usize,
    weights: WeightMode,
    terminals: Option<usize>,
) -> Result<VcstInstance> {
    let mut rng = rng_for(seed);
    let g = random_planar_graph(&mut rng, n, weights)?;
    let t = draw_terminals(&mut rng, n, terminals);
    VcstInstance::new(g, t)
}

/// Full `width x height` lattice with integer edge weights in `1..=max_weight`.
pub fn random_grid(
    seed: u64,
    width: usize,
    height: usize,
    max_weight: i64,
    terminals: usize,
) -> Result<GridSteinerInstance> {
    if width == 0 || height == 0 || width * height < 2 {
        return Err(Error::Domain("grid needs at least two points".into()));
    }
    let mut rng = rng_for(seed);
    let points: Vec<(i64, i64)> = (0..height)
        .flat_map(|y| (0..width).map(move |x| (x as i64, y as i64)))
        .collect();
    let mut edges = Vec::new();
    for y in 0..height {
        for x in 0..width {
            let v = y * width + x;
            if x + 1 < width {
                edges.push((v, v + 1));
            }
            if y + 1 < height {
                edges.push((v, v + width));
            }
        }
    }
    let weights = edges
        .iter()
        .map(|_| Weight::from_int(rng.gen_range(1..=max_weight.max(1))))
        .collect();
    let t = draw_terminals(&mut rng, points.len(), Some(terminals));
    GridSteinerInstance::new(points, edges, weights, t)
}

/// Random set system in which every element lies in at least one set.
pub fn random_set_cover(
    seed: u64,
    universe: usize,
    sets: usize,
    density: f64,
) -> Result<SetCoverInstance> {
    if universe == 0 || sets == 0 {
        return Err(Error::Domain("need a nonempty universe and family".into()));
    }
    let mut rng = rng_for(seed);
    let mut family: Vec<Vec<usize>> = (0..sets)
        .map(|_| {
            (0..universe)
                .filter(|_| rng.gen_bool(density.clamp(0.0, 1.0)))
                .collect()
        })
        .collect();
    for e in 0..universe {
        if !family.iter().any(|s| s.contains(&e)) {
            let i = rng.gen_range(0..sets);
            family[i].push(e);
            family[i].sort_unstable();
        }
    }
    SetCoverInstance::unweighted(universe, family)
}

/// Random monotone activation instance: edge `uv` is active at levels `(i, j)`
/// iff `j >= threshold_i`, with thresholds non-increasing in `i`.
pub fn random_activation(
    rng: &mut ChaCha8Rng,
    g: Graph,
    terminals: Vec<Vertex>,
    levels: Vec<Fixed>,
) -> Result<ActivationInstance> {
    let l = levels.len();
    let tables = (0..g.m())
        .map(|_| {
            let mut thresholds: Vec<usize> = (0..l).map(|_| rng.gen_range(0..=l)).collect();
            thresholds.sort_unstable_by(|a, b| b.cmp(a));
            (0..l * l).map(|k| k % l >= thresholds[k / l]).collect()
        })
        .collect();
    ActivationInstance::new(g, terminals, levels, tables)
}

/// Parameters accepted by [`generate`]; unset fields take family defaults.
#[derive(Clone, Debug, Default)]
pub struct GenerateParams {
    pub n: Option<usize>,
    pub side: Option<f64>,
    pub max_weight: Option<i64>,
    pub terminals: Option<usize>,
    pub connected: bool,
    /// Emit a connected-domination instance instead of a VC-weighted one.
    pub cds: bool,
    pub width: Option<usize>,
    pub height: Option<usize>,
    pub universe: Option<usize>,
    pub sets: Option<usize>,
}

impl GenerateParams {
    fn weight_mode(&self) -> WeightMode {
        match self.max_weight {
            Some(m) if m > 1 => WeightMode::Random { max: m },
            _ => WeightMode::Uniform,
        }
    }
}

pub fn generate(family: Family, params: &GenerateParams, seed: u64) -> Result<InstanceFile> {
    let mut meta = Metadata {
        family: Some(family.name().into()),
        seed: Some(seed),
        ..Metadata::default()
    };
    let mut record = |k: &str, v: String| {
        meta.params.insert(k.to_string(), v);
    };
    let file = match family {
        Family::RandomUdg => {
            let n = params.n.unwrap_or(10);
            let side = params.side.unwrap_or(3.0);
            record("n", n.to_string());
            record("box", side.to_string());
            if let Some(t) = params.terminals {
                record("terminals", t.to_string());
            }
            if let Some(m) = params.max_weight {
                record("max_weight", m.to_string());
            }
            let (file, connected) = if params.cds {
                let (inst, c) = random_udg_cds(
                    seed,
                    n,
                    side,
                    params.weight_mode(),
                    params.terminals,
                    params.connected,
                )?;
                (InstanceFile::from_cds(&inst), c)
            } else {
                let (inst, c) = random_udg_vcst(
                    seed,
                    n,
                    side,
                    params.weight_mode(),
                    params.terminals,
                    params.connected,
                )?;
                (InstanceFile::from_vcst(&inst), c)
            };
            meta.connected = Some(connected);
            file
        }
        Family::RandomPlanar => {
            let n = params.n.unwrap_or(10);
            record("n", n.to_string());
            if let Some(t) = params.terminals {
                record("terminals", t.to_string());
            }
            if let Some(m) = params.max_weight {
                record("max_weight", m.to_string());
            }
            meta.connected = Some(true);
            InstanceFile::from_vcst(&random_planar_vcst(
                seed,
                n,
                params.weight_mode(),
                params.terminals,
            )?)
        }
        Family::GridGadget => {
            let (w, h) = (params.width.unwrap_or(2), params.height.unwrap_or(2));
            let t = params.terminals.unwrap_or(2);
            let max = params.max_weight.unwrap_or(5);
            record("width", w.to_string());
            record("height", h.to_string());
            record("terminals", t.to_string());
            record("max_weight", max.to_string());
            let grid = random_grid(seed, w, h, max, t)?;
            InstanceFile::from_vcst(&gadget_subdivide_grid(&grid)?.instance)
        }
        Family::SetcoverGadget => {
            let (u, k) = (params.universe.unwrap_or(5), params.sets.unwrap_or(4));
            record("universe", u.to_string());
            record("sets", k.to_string());
            let sc = random_set_cover(seed, u, k, 0.4)?;
            InstanceFile::from_vcst(&gadget_from_set_cover(&sc)?.instance)
        }
    };
    Ok(file.with_metadata(meta))
}
