//! Benchmark rows and the CSV sink.

use std::fs::OpenOptions;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::io::InstanceFile;
use super::solve::{solve_instance, SolveOptions, SolveOutcome};
use crate::error::{Error, Result};

/// Environment variable capping the worker count.
pub const WORKERS_ENV: &str = "VCST_WORKERS";

pub const CSV_COLUMNS: [&str; 10] = [
    "instance_id",
    "n",
    "m",
    "kind",
    "algorithm",
    "objective",
    "opt",
    "ratio",
    "certs",
    "wall_ms",
];

/// One CSV row. `ratio` is present exactly when `opt` is.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub instance_id: String,
    pub n: usize,
    pub m: usize,
    pub kind: String,
    pub algorithm: String,
    pub objective: String,
    pub opt: Option<String>,
    pub ratio: Option<f64>,
    /// `passed/total` certificate flags.
    pub certs: String,
    pub wall_ms: f64,
}

impl BenchRow {
    pub fn new(instance_id: &str, file: &InstanceFile, outcome: &SolveOutcome) -> Self {
        let (n, m) = file.size();
        let (passed, total) = outcome.certificates_passed();
        BenchRow {
            instance_id: instance_id.to_string(),
            n,
            m,
            kind: file.kind.name().to_string(),
            algorithm: outcome.solution.algorithm.clone(),
            objective: outcome.solution.objective.to_string(),
            opt: outcome.opt.map(|w| w.to_string()),
            ratio: outcome.ratio(),
            certs: format!("{passed}/{total}"),
            wall_ms: (outcome.wall_ms * 1000.0).round() / 1000.0,
        }
    }
}

/// Appends rows, writing the header only to an empty file.
pub fn append_rows(path: &Path, rows: &[BenchRow]) -> Result<()> {
    let io = |e: std::io::Error| Error::Parse(format!("{}: {e}", path.display()));
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(io)?;
    let empty = file.metadata().map_err(io)?.len() == 0;
    let mut w = csv::WriterBuilder::new()
        .has_headers(empty)
        .from_writer(file);
    for row in rows {
        w.serialize(row).map_err(|e| Error::Parse(e.to_string()))?;
    }
    w.flush().map_err(io)
}

/// Worker count from [`WORKERS_ENV`], defaulting to the available cores.
pub fn worker_count() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs `f` on a pool of [`worker_count`] threads.
pub fn with_workers<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count())
        .build()
        .map_err(|e| Error::invariant(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Solves every instance with every algorithm, fanning out across workers;
/// rows come back in input order. Failed runs are reported, not fatal.
pub fn bench(
    files: &[PathBuf],
    options: &[SolveOptions],
) -> Result<Vec<(PathBuf, String, std::result::Result<BenchRow, Error>)>> {
    let loaded: Vec<(PathBuf, InstanceFile)> = files
        .iter()
        .map(|p| InstanceFile::load(p).map(|f| (p.clone(), f)))
        .collect::<Result<_>>()?;
    let jobs: Vec<(usize, usize)> = (0..loaded.len())
        .flat_map(|i| (0..options.len()).map(move |j| (i, j)))
        .collect();
    with_workers(|| {
        jobs.par_iter()
            .map(|&(i, j)| {
                let (path, file) = &loaded[i];
                let id = path.file_stem().map_or_else(
                    || path.display().to_string(),
                    |s| s.to_string_lossy().into_owned(),
                );
                let row = solve_instance(file, &options[j]).map(|o| BenchRow::new(&id, file, &o));
                (path.clone(), options[j].algorithm.name().to_string(), row)
            })
            .collect()
    })
}
