//! Square-grid clique partition of unit disk graphs and the angular packing bound.

use std::collections::HashMap;

use super::{Graph, Vertex};
use crate::error::{Error, Result};
use crate::num::SCALE;

/// Side length of a partition cell.
pub const CELL_SIDE: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Maximum number of cells a closed unit disk meets.
pub const THETA: usize = 14;

/// Partition of the vertices by half-open square cells of side `√2/2`.
///
/// Classes are ordered by their lowest-index member, so `classes[i][0]` is
/// the lowest-index vertex of class `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarePartition {
    pub cell_of: Vec<usize>,
    pub classes: Vec<Vec<Vertex>>,
    pub cells: Vec<(i64, i64)>,
}

impl SquarePartition {
    pub fn side(&self) -> f64 {
        CELL_SIDE
    }

    /// Largest number of classes met by a closed neighborhood.
    pub fn max_classes_per_neighborhood(&self, g: &Graph) -> usize {
        let mut seen = vec![usize::MAX; self.classes.len()];
        let mut best = 0;
        for v in 0..g.n() {
            let mut count = 0;
            for u in g.closed_neighborhood(v) {
                let c = self.cell_of[u];
                if seen[c] != v {
                    seen[c] = v;
                    count += 1;
                }
            }
            best = best.max(count);
        }
        best
    }

    pub fn classes_are_cliques(&self, g: &Graph) -> bool {
        self.classes.iter().all(|c| {
            c.iter()
                .enumerate()
                .all(|(i, &u)| c[i + 1..].iter().all(|&v| g.has_edge(u, v)))
        })
    }
}

fn isqrt(v: u128) -> u128 {
    let mut r = (v as f64).sqrt() as u128;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

/// `floor(p / (√2/2))` for `p` in micro-units, computed exactly.
///
/// `p·√2` is irrational unless `p = 0`, so only the origin lies on a border.
/// Index of the cell containing a coordinate given in micro-units.
pub fn cell_index(micros: i64) -> i64 {
    let m = micros.unsigned_abs() as u128;
    let q = (isqrt(2 * m * m) / SCALE as u128) as i64;
    if micros >= 0 {
        q
    } else {
        -q - 1
    }
}

/// Assigns each vertex to its cell; border points go to the upper-right cell.
pub fn square_partition(g: &Graph) -> Result<SquarePartition> {
    let coords = g
        .coords()
        .ok_or_else(|| Error::invalid("square partition needs coordinates"))?;
    let mut index: HashMap<(i64, i64), usize> = HashMap::new();
    let mut cell_of = Vec::with_capacity(coords.len());
    let mut classes: Vec<Vec<Vertex>> = Vec::new();
    let mut cells = Vec::new();
    for (v, p) in coords.iter().enumerate() {
        let key = (cell_index(p.x.micros()), cell_index(p.y.micros()));
        let c = *index.entry(key).or_insert_with(|| {
            classes.push(Vec::new());
            cells.push(key);
            classes.len() - 1
        });
        classes[c].push(v);
        cell_of.push(c);
    }
    Ok(SquarePartition {
        cell_of,
        classes,
        cells,
    })
}

/// `floor(2π / arccos(α/2 + 3/(8α)))` for `α ∈ (1/2, 3/4]`.
pub fn packing_bound(alpha: f64) -> Result<u32> {
    if !(alpha > 0.5 && alpha <= 0.75) {
        return Err(Error::Domain(format!("alpha = {alpha} outside (1/2, 3/4]")));
    }
    let angle = (alpha / 2.0 + 3.0 / (8.0 * alpha)).acos();
    Ok((2.0 * std::f64::consts::PI / angle).floor() as u32)
}

/// A pair `(j, k)` of `points` with `|p_j p_k| < max(|c p_j|, |c p_k|) / 2`.
pub fn close_pair_witness(center: (f64, f64), points: &[(f64, f64)]) -> Option<(usize, usize)> {
    let d = |a: (f64, f64), b: (f64, f64)| (a.0 - b.0).hypot(a.1 - b.1);
    for j in 0..points.len() {
        for k in j + 1..points.len() {
            let far = d(center, points[j]).max(d(center, points[k]));
            if d(points[j], points[k]) < far / 2.0 {
                return Some((j, k));
            }
        }
    }
    None
}
