//! JSON instance and solution files.
//!
//! Numbers that carry weights, lengths or coordinates are decimal strings so
//! that reading never depends on float parsing. Field order is fixed by the
//! struct layout, which makes reserialization byte-stable.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{CdsInstance, SetCoverInstance};
use crate::graph::{Graph, Point, Tree, VcstInstance, Vertex};
use crate::num::{Fixed, Weight};
use crate::reductions::{ActivationInstance, GridSteinerInstance, NwsInstance};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemKind {
    Vcst,
    Cds,
    Activation,
    Nws,
    SetCover,
    GridSteiner,
}

impl ProblemKind {
    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Vcst => "vcst",
            ProblemKind::Cds => "cds",
            ProblemKind::Activation => "activation",
            ProblemKind::Nws => "nws",
            ProblemKind::SetCover => "set-cover",
            ProblemKind::GridSteiner => "grid-steiner",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexRecord {
    pub weight: Weight,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Fixed>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Fixed>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub u: Vertex,
    pub v: Vertex,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<Weight>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphRecord {
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
    /// Edges are exactly the pairs at distance at most 1.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub unit_disk: bool,
}

/// Level set and one truth table per edge, written as a string of `0`/`1`
/// in row-major order (row = level of the lower endpoint).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActivationRecord {
    pub levels: Vec<Fixed>,
    pub tables: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetCoverRecord {
    pub universe: usize,
    pub sets: Vec<Vec<usize>>,
    pub weights: Vec<Weight>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connected: Option<bool>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub schema: u32,
    pub kind: ProblemKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub terminals: Vec<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub activation: Option<ActivationRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set_cover: Option<SetCoverRecord>,
    #[serde(default)]
    pub metadata: Metadata,
}

fn graph_record(g: &Graph) -> GraphRecord {
    let coords = g.coords();
    let vertices = (0..g.n())
        .map(|v| VertexRecord {
            weight: g.weight(v),
            x: coords.map(|c| c[v].x),
            y: coords.map(|c| c[v].y),
        })
        .collect();
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| EdgeRecord {
            u,
            v,
            length: g.lengths().map(|l| l[e]),
        })
        .collect();
    GraphRecord {
        vertices,
        edges,
        unit_disk: g.is_unit_disk(),
    }
}

fn table_string(t: &[bool]) -> String {
    t.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn parse_table(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::Parse(format!("table entry {c:?} is not 0 or 1"))),
        })
        .collect()
}

impl InstanceFile {
    fn bare(kind: ProblemKind) -> Self {
        InstanceFile {
            schema: SCHEMA_VERSION,
            kind,
            graph: None,
            terminals: Vec::new(),
            activation: None,
            set_cover: None,
            metadata: Metadata::default(),
        }
    }

    pub fn from_vcst(inst: &VcstInstance) -> Self {
        InstanceFile {
            graph: Some(graph_record(inst.graph())),
            terminals: inst.terminals().to_vec(),
            ..InstanceFile::bare(ProblemKind::Vcst)
        }
    }

    pub fn from_cds(inst: &CdsInstance) -> Self {
        InstanceFile {
            graph: Some(graph_record(inst.graph())),
            terminals: inst.terminals().to_vec(),
            ..InstanceFile::bare(ProblemKind::Cds)
        }
    }

    pub fn from_nws(inst: &NwsInstance) -> Self {
        InstanceFile {
            graph: Some(graph_record(inst.graph())),
            terminals: inst.terminals().to_vec(),
            ..InstanceFile::bare(ProblemKind::Nws)
        }
    }

    pub fn from_activation(inst: &ActivationInstance) -> Self {
        InstanceFile {
            graph: Some(graph_record(inst.graph())),
            terminals: inst.terminals().to_vec(),
            activation: Some(ActivationRecord {
                levels: inst.levels().to_vec(),
                tables: inst.tables().iter().map(|t| table_string(t)).collect(),
            }),
            ..InstanceFile::bare(ProblemKind::Activation)
        }
    }

    pub fn from_set_cover(inst: &SetCoverInstance) -> Self {
        InstanceFile {
            set_cover: Some(SetCoverRecord {
                universe: inst.universe,
                sets: inst.sets.clone(),
                weights: inst.weights.clone(),
            }),
            ..InstanceFile::bare(ProblemKind::SetCover)
        }
    }

    /// Grid points become integer coordinates, edge weights become lengths.
    pub fn from_grid(inst: &GridSteinerInstance) -> Self {
        let vertices = inst
            .points
            .iter()
            .map(|&(x, y)| VertexRecord {
                weight: Weight::ZERO,
                x: Some(Fixed::from_int(x)),
                y: Some(Fixed::from_int(y)),
            })
            .collect();
        let edges = inst
            .edges
            .iter()
            .zip(&inst.weights)
            .map(|(&(u, v), &w)| EdgeRecord {
                u,
                v,
                length: Some(w),
            })
            .collect();
        InstanceFile {
            graph: Some(GraphRecord {
                vertices,
                edges,
                unit_disk: false,
            }),
            terminals: inst.terminals.clone(),
            ..InstanceFile::bare(ProblemKind::GridSteiner)
        }
    }

    pub fn with_metadata(mut self, metadata: Metadata) -> Self {
        self.metadata = metadata;
        self
    }

    fn expect_kind(&self, kinds: &[ProblemKind]) -> Result<()> {
        if kinds.contains(&self.kind) {
            Ok(())
        } else {
            Err(Error::WrongVariant(format!(
                "instance kind is {}",
                self.kind
            )))
        }
    }

    fn graph_record(&self) -> Result<&GraphRecord> {
        self.graph
            .as_ref()
            .ok_or_else(|| Error::Parse(format!("{} instance needs a graph", self.kind)))
    }

    /// The graph with lengths and coordinates when every entry has them.
    pub fn to_graph(&self) -> Result<Graph> {
        let rec = self.graph_record()?;
        let weights = rec.vertices.iter().map(|v| v.weight).collect();
        let mut g = Graph::new(weights, rec.edges.iter().map(|e| (e.u, e.v)))?;
        if g.m() != rec.edges.len() {
            return Err(Error::invalid("repeated edge"));
        }
        let with_len = rec.edges.iter().filter(|e| e.length.is_some()).count();
        if with_len == rec.edges.len() && !rec.edges.is_empty() {
            let mut lengths = vec![Weight::ZERO; g.m()];
            for e in &rec.edges {
                lengths[g.edge_id(e.u, e.v).expect("edge exists")] = e.length.expect("counted");
            }
            g = g.with_lengths(lengths)?;
        } else if with_len != 0 {
            return Err(Error::Parse(
                "either every edge has a length or none does".into(),
            ));
        }
        let coords: Vec<Point> = rec
            .vertices
            .iter()
            .filter_map(|v| Some(Point::new(v.x?, v.y?)))
            .collect();
        if coords.len() == rec.vertices.len() && !coords.is_empty() {
            g = g.with_coords(coords, rec.unit_disk)?;
        } else if !coords.is_empty() || rec.unit_disk {
            return Err(Error::Parse(
                "coordinates must be given for every vertex or none".into(),
            ));
        }
        Ok(g)
    }

    pub fn to_vcst(&self) -> Result<VcstInstance> {
        self.expect_kind(&[ProblemKind::Vcst])?;
        VcstInstance::new(self.to_graph()?, self.terminals.iter().copied())
    }

    pub fn to_cds(&self) -> Result<CdsInstance> {
        self.expect_kind(&[ProblemKind::Cds])?;
        CdsInstance::new(self.to_graph()?, self.terminals.iter().copied())
    }

    pub fn to_nws(&self) -> Result<NwsInstance> {
        self.expect_kind(&[ProblemKind::Nws])?;
        NwsInstance::new(self.to_graph()?, self.terminals.iter().copied())
    }

    pub fn to_activation(&self) -> Result<ActivationInstance> {
        self.expect_kind(&[ProblemKind::Activation])?;
        let rec = self
            .activation
            .as_ref()
            .ok_or_else(|| Error::Parse("activation instance needs levels".into()))?;
        let g = self.to_graph()?;
        // Tables follow the file's edge order; the graph stores edges sorted.
        let file_edges = &self.graph_record()?.edges;
        if rec.tables.len() != file_edges.len() {
            return Err(Error::Parse("one table per edge required".into()));
        }
        let mut tables = vec![Vec::new(); g.m()];
        for (e, t) in file_edges.iter().zip(&rec.tables) {
            let mut table = parse_table(t)?;
            if e.u > e.v {
                let l = rec.levels.len();
                if table.len() != l * l {
                    return Err(Error::Parse("table size must be |W|^2".into()));
                }
                table = (0..l * l).map(|k| table[(k % l) * l + k / l]).collect();
            }
            tables[g.edge_id(e.u, e.v).expect("edge exists")] = table;
        }
        ActivationInstance::new(
            g,
            self.terminals.iter().copied(),
            rec.levels.clone(),
            tables,
        )
    }

    pub fn to_set_cover(&self) -> Result<SetCoverInstance> {
        self.expect_kind(&[ProblemKind::SetCover])?;
        let rec = self
            .set_cover
            .as_ref()
            .ok_or_else(|| Error::Parse("set-cover instance needs sets".into()))?;
        SetCoverInstance::new(rec.universe, rec.sets.clone(), rec.weights.clone())
    }

    pub fn to_grid(&self) -> Result<GridSteinerInstance> {
        self.expect_kind(&[ProblemKind::GridSteiner])?;
        let rec = self.graph_record()?;
        let points = rec
            .vertices
            .iter()
            .map(|v| match (v.x, v.y) {
                (Some(x), Some(y))
                    if x.micros() % 1_000_000 == 0 && y.micros() % 1_000_000 == 0 =>
                {
                    Ok((x.micros() / 1_000_000, y.micros() / 1_000_000))
                }
                _ => Err(Error::Parse("grid points need integer coordinates".into())),
            })
            .collect::<Result<_>>()?;
        let edges = rec.edges.iter().map(|e| (e.u, e.v)).collect();
        let weights = rec
            .edges
            .iter()
            .map(|e| {
                e.length
                    .ok_or_else(|| Error::Parse("grid edges need lengths".into()))
            })
            .collect::<Result<_>>()?;
        GridSteinerInstance::new(points, edges, weights, self.terminals.clone())
    }

    /// Checks the payload against the declared kind.
    pub fn validate(&self) -> Result<()> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema version {}",
                self.schema
            )));
        }
        match self.kind {
            ProblemKind::Vcst => self.to_vcst().map(drop),
            ProblemKind::Cds => self.to_cds().map(drop),
            ProblemKind::Nws => self.to_nws().map(drop),
            ProblemKind::Activation => self.to_activation().map(drop),
            ProblemKind::SetCover => self.to_set_cover().map(drop),
            ProblemKind::GridSteiner => self.to_grid().map(drop),
        }
    }

    /// `(n, m)` of the underlying graph, or `(elements, sets)` for set cover.
    pub fn size(&self) -> (usize, usize) {
        match (&self.graph, &self.set_cover) {
            (Some(g), _) => (g.vertices.len(), g.edges.len()),
            (None, Some(s)) => (s.universe, s.sets.len()),
            _ => (0, 0),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serializes");
        s.push('\n');
        s
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        text.parse()
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

impl FromStr for InstanceFile {
    type Err = Error;

    /// Parses and validates.
    fn from_str(s: &str) -> Result<Self> {
        let file: InstanceFile =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        file.validate()?;
        Ok(file)
    }
}

/// Output of `solve`, validated before it is written.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub schema: u32,
    pub kind: ProblemKind,
    pub algorithm: String,
    pub objective: Weight,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree: Option<Tree>,
    /// Vertex cover of the tree (VC-weighted trees).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<Vec<Vertex>>,
    /// Dominating set (connected domination).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domset: Option<Vec<Vertex>>,
    /// Chosen vertex set (node-weighted trees) or set indices (set cover).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chosen: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<Fixed>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub certificates: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<serde_json::Value>,
}

impl SolutionFile {
    pub fn new(kind: ProblemKind, algorithm: &str, objective: Weight) -> Self {
        SolutionFile {
            schema: SCHEMA_VERSION,
            kind,
            algorithm: algorithm.to_string(),
            objective,
            tree: None,
            cover: None,
            domset: None,
            chosen: None,
            levels: None,
            certificates: BTreeMap::new(),
            report: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("solution serializes");
        s.push('\n');
        s
    }
}
