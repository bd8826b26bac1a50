//! Dispatch from an instance file to an algorithm, with validation of the
//! output and the per-run certificate flags.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use super::io::{InstanceFile, ProblemKind, SolutionFile};
use crate::cds::{
    solve_cds_all_roots, solve_cds_rounding, solve_cds_spanning_case, RootPolicy, RoundingReport,
    SetCoverBackend,
};
use crate::error::{Error, Result};
use crate::exact::{
    check_cds_solution, solve_activation_exact, solve_cds_exact, solve_edge_steiner_exact,
    solve_nws_exact, solve_set_cover_exact, solve_vcst_exact, CdsInstance, CdsSolution,
};
use crate::graph::{validate_vcst_solution, VcstInstance, VcstSolution};
use crate::lp::build_cds_flow_lp;
use crate::num::Weight;
use crate::pd::{check_debt_bounds, solve_activation_minor_free, solve_nws_pd, DebtView};
use crate::reductions::{
    activation_to_vcst, encode_vcst_as_activation, lift_cds_to_vcst, reduce_vcst_to_cds,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Exact,
    CdsLp,
    CdsSpanning,
    PdPlanar,
    ActivationExact,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Exact => "exact",
            Algorithm::CdsLp => "cds-lp",
            Algorithm::CdsSpanning => "cds-spanning",
            Algorithm::PdPlanar => "pd-planar",
            Algorithm::ActivationExact => "activation-exact",
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Algorithm::Exact),
            "cds-lp" => Ok(Algorithm::CdsLp),
            "cds-spanning" => Ok(Algorithm::CdsSpanning),
            "pd-planar" => Ok(Algorithm::PdPlanar),
            "activation-exact" => Ok(Algorithm::ActivationExact),
            _ => Err(Error::Parse(format!("unknown algorithm {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub algorithm: Algorithm,
    pub backend: SetCoverBackend,
    /// Round from every root instead of the lowest terminal.
    pub all_roots: bool,
    pub root_policy: RootPolicy,
    /// Also compute the exact optimum when the oracles accept the instance.
    pub compute_opt: bool,
    /// Write the flow relaxation of the chosen root here (CPLEX LP format).
    pub export_lp: Option<PathBuf>,
    /// Write the primal-dual trace here (JSON).
    pub trace: Option<PathBuf>,
}

impl SolveOptions {
    pub fn new(algorithm: Algorithm) -> Self {
        SolveOptions {
            algorithm,
            backend: SetCoverBackend::Auto,
            all_roots: false,
            root_policy: RootPolicy::All,
            compute_opt: false,
            export_lp: None,
            trace: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub solution: SolutionFile,
    pub opt: Option<Weight>,
    pub wall_ms: f64,
}

impl SolveOutcome {
    /// `objective / opt`, with `0 / 0 = 1`.
    pub fn ratio(&self) -> Option<f64> {
        let opt = self.opt?.to_f64();
        let obj = self.solution.objective.to_f64();
        Some(if opt == 0.0 {
            if obj == 0.0 {
                1.0
            } else {
                f64::INFINITY
            }
        } else {
            obj / opt
        })
    }

    pub fn certificates_passed(&self) -> (usize, usize) {
        let c = &self.solution.certificates;
        (c.values().filter(|&&b| b).count(), c.len())
    }
}

fn usage(kind: ProblemKind, algorithm: Algorithm) -> Error {
    Error::WrongVariant(format!(
        "{} does not apply to {kind} instances",
        algorithm.name()
    ))
}

fn write(path: &PathBuf, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn vcst_solution(
    kind: ProblemKind,
    algorithm: Algorithm,
    inst: &VcstInstance,
    sol: &VcstSolution,
) -> Result<SolutionFile> {
    validate_vcst_solution(inst, sol)
        .into_result()
        .map_err(|e| Error::invariant(format!("output rejected: {e}")))?;
    let mut out = SolutionFile::new(kind, algorithm.name(), sol.objective);
    out.tree = Some(sol.tree.clone());
    out.cover = Some(sol.cover.clone());
    out.certificates.insert("valid".into(), true);
    Ok(out)
}

fn cds_solution(
    kind: ProblemKind,
    algorithm: Algorithm,
    inst: &CdsInstance,
    sol: &CdsSolution,
) -> Result<SolutionFile> {
    check_cds_solution(inst, sol).map_err(|e| Error::invariant(format!("output rejected: {e}")))?;
    let mut out = SolutionFile::new(kind, algorithm.name(), sol.objective);
    out.tree = Some(sol.tree.clone());
    out.domset = Some(sol.domset.clone());
    out.certificates.insert("valid".into(), true);
    Ok(out)
}

fn rounding_certificates(out: &mut SolutionFile, reports: &[&RoundingReport]) {
    let all = |f: fn(&RoundingReport) -> bool| reports.iter().all(|r| f(r));
    let c = &mut out.certificates;
    c.insert(
        "scaled-cover-feasible".into(),
        all(|r| r.checks.scaled_cover_feasible && r.checks.cover_lp_within_theta),
    );
    c.insert(
        "reroute-feasible".into(),
        all(|r| r.checks.reroute_feasible && r.checks.reroute_within_bound),
    );
    c.insert(
        "steiner-within-twice-lp".into(),
        all(|r| r.checks.steiner_within_twice_lp),
    );
    c.insert(
        "pendants-within-cover".into(),
        all(|r| r.checks.pendants_within_cover_weight),
    );
    c.insert("chain-bound".into(), all(|r| r.checks.chain_bound));
}

/// Connected domination by LP rounding, from one root or all of them.
fn run_cds_lp(
    inst: &CdsInstance,
    opts: &SolveOptions,
) -> Result<(CdsSolution, Vec<RoundingReport>, usize)> {
    if opts.all_roots {
        let all = solve_cds_all_roots(inst, opts.backend, opts.root_policy)?;
        Ok((all.solution, all.reports, all.best_root))
    } else {
        let root = inst.terminals()[0];
        let (sol, report) = solve_cds_rounding(inst, root, opts.backend)?;
        Ok((sol, vec![report], root))
    }
}

fn exact_optimum(file: &InstanceFile) -> Result<Option<Weight>> {
    let res = match file.kind {
        ProblemKind::Vcst => solve_vcst_exact(&file.to_vcst()?).map(|s| s.objective),
        ProblemKind::Cds => solve_cds_exact(&file.to_cds()?).map(|s| s.objective),
        ProblemKind::Nws => solve_nws_exact(&file.to_nws()?).map(|s| s.1),
        ProblemKind::Activation => {
            solve_activation_exact(&file.to_activation()?).map(|s| Weight::Finite(s.objective))
        }
        ProblemKind::SetCover => solve_set_cover_exact(&file.to_set_cover()?).map(|s| s.weight),
        ProblemKind::GridSteiner => {
            let grid = file.to_grid()?;
            let (g, lengths) = grid.to_graph()?;
            solve_edge_steiner_exact(&g, &lengths, &grid.terminals).map(|s| s.1)
        }
    };
    match res {
        Ok(w) => Ok(Some(w)),
        Err(Error::TooLarge(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Whether the instance's graph is planar by construction.
fn planar_family(file: &InstanceFile) -> bool {
    matches!(
        file.metadata.family.as_deref(),
        Some("random-planar" | "grid-gadget")
    )
}

pub fn solve_instance(file: &InstanceFile, opts: &SolveOptions) -> Result<SolveOutcome> {
    let start = Instant::now();
    let kind = file.kind;
    let algorithm = opts.algorithm;
    let mut out = match (algorithm, kind) {
        (Algorithm::Exact, ProblemKind::Vcst) => {
            let inst = file.to_vcst()?;
            vcst_solution(kind, algorithm, &inst, &solve_vcst_exact(&inst)?)?
        }
        (Algorithm::Exact, ProblemKind::Cds) => {
            let inst = file.to_cds()?;
            cds_solution(kind, algorithm, &inst, &solve_cds_exact(&inst)?)?
        }
        (Algorithm::Exact, ProblemKind::Nws) => {
            let inst = file.to_nws()?;
            let (set, w) = solve_nws_exact(&inst)?;
            if !inst.is_feasible(&set) {
                return Err(Error::invariant("exact node-weighted set is infeasible"));
            }
            let mut out = SolutionFile::new(kind, algorithm.name(), w);
            out.chosen = Some(set);
            out.certificates.insert("valid".into(), true);
            out
        }
        (Algorithm::Exact, ProblemKind::SetCover) => {
            let inst = file.to_set_cover()?;
            let sol = solve_set_cover_exact(&inst)?;
            if !inst.is_cover(&sol.chosen) {
                return Err(Error::invariant("exact cover misses an element"));
            }
            let mut out = SolutionFile::new(kind, algorithm.name(), sol.weight);
            out.chosen = Some(sol.chosen);
            out.certificates.insert("valid".into(), true);
            out
        }
        (Algorithm::Exact, ProblemKind::GridSteiner) => {
            let grid = file.to_grid()?;
            let (g, lengths) = grid.to_graph()?;
            let (tree, w) = solve_edge_steiner_exact(&g, &lengths, &grid.terminals)?;
            if tree.check().is_err() || grid.terminals.iter().any(|&t| !tree.contains(t)) {
                return Err(Error::invariant(
                    "exact Steiner tree does not span the terminals",
                ));
            }
            let mut out = SolutionFile::new(kind, algorithm.name(), w);
            out.tree = Some(tree);
            out.certificates.insert("valid".into(), true);
            out
        }
        (Algorithm::Exact | Algorithm::ActivationExact, ProblemKind::Activation) => {
            let inst = file.to_activation()?;
            let sol = solve_activation_exact(&inst)?;
            if !inst.is_feasible(&sol.levels) {
                return Err(Error::invariant("exact level vector is infeasible"));
            }
            let mut out = SolutionFile::new(kind, algorithm.name(), Weight::Finite(sol.objective));
            out.levels = Some(sol.x);
            out.certificates.insert("valid".into(), true);
            out
        }
        (Algorithm::ActivationExact, ProblemKind::Vcst) => {
            let inst = file.to_vcst()?;
            let act = encode_vcst_as_activation(&inst)?;
            let sol = solve_activation_exact(&act)?;
            let mut out = vcst_solution(kind, algorithm, &inst, &activation_to_vcst(&inst, &sol)?)?;
            out.levels = Some(sol.x);
            out
        }
        (Algorithm::CdsLp, ProblemKind::Cds) => {
            let inst = file.to_cds()?;
            let (sol, reports, root) = run_cds_lp(&inst, opts)?;
            if let Some(path) = &opts.export_lp {
                write(path, &build_cds_flow_lp(&inst, root)?.model.to_lp_format())?;
            }
            let mut out = cds_solution(kind, algorithm, &inst, &sol)?;
            let best: Vec<&RoundingReport> = reports.iter().filter(|r| r.root == root).collect();
            rounding_certificates(&mut out, &best);
            out.report = Some(serde_json::to_value(&reports).expect("reports serialize"));
            out
        }
        (Algorithm::CdsLp, ProblemKind::Vcst) => {
            let inst = file.to_vcst()?;
            let cds = reduce_vcst_to_cds(&inst)?;
            let (sol, reports, root) = run_cds_lp(&cds, opts)?;
            if let Some(path) = &opts.export_lp {
                write(path, &build_cds_flow_lp(&cds, root)?.model.to_lp_format())?;
            }
            let lifted = lift_cds_to_vcst(&inst, &sol)?;
            let mut out = vcst_solution(kind, algorithm, &inst, &lifted)?;
            out.certificates
                .insert("lift-within-cds".into(), lifted.objective <= sol.objective);
            let best: Vec<&RoundingReport> = reports.iter().filter(|r| r.root == root).collect();
            rounding_certificates(&mut out, &best);
            out.report = Some(serde_json::to_value(&reports).expect("reports serialize"));
            out
        }
        (Algorithm::CdsSpanning, ProblemKind::Cds) => {
            let inst = file.to_cds()?;
            let (sol, report) = solve_cds_spanning_case(&inst, opts.backend)?;
            let mut out = cds_solution(kind, algorithm, &inst, &sol)?;
            out.report = Some(serde_json::to_value(&report).expect("report serializes"));
            out
        }
        (Algorithm::PdPlanar, ProblemKind::Vcst) => {
            let inst = file.to_vcst()?;
            let act = encode_vcst_as_activation(&inst)?;
            let run = solve_activation_minor_free(&act)?;
            let sol = activation_to_vcst(&inst, &run.solution)?;
            let mut out = vcst_solution(kind, algorithm, &inst, &sol)?;
            let debt = check_debt_bounds(
                &DebtView::reduced(&run.reduced),
                &run.pd.trace,
                planar_family(file),
            )?;
            out.certificates.insert("debt-bounds".into(), debt.passed());
            out.levels = Some(run.solution.x);
            if let Some(path) = &opts.trace {
                write(path, &run.pd.trace.to_json())?;
            }
            out
        }
        (Algorithm::PdPlanar, ProblemKind::Activation) => {
            let inst = file.to_activation()?;
            let run = solve_activation_minor_free(&inst)?;
            if !inst.is_feasible(&run.solution.levels) {
                return Err(Error::invariant("lifted level vector is infeasible"));
            }
            let mut out = SolutionFile::new(
                kind,
                algorithm.name(),
                Weight::Finite(run.solution.objective),
            );
            let debt = check_debt_bounds(
                &DebtView::reduced(&run.reduced),
                &run.pd.trace,
                planar_family(file),
            )?;
            out.certificates.insert("valid".into(), true);
            out.certificates.insert("debt-bounds".into(), debt.passed());
            out.levels = Some(run.solution.x);
            if let Some(path) = &opts.trace {
                write(path, &run.pd.trace.to_json())?;
            }
            out
        }
        (Algorithm::PdPlanar, ProblemKind::Nws) => {
            let inst = file.to_nws()?;
            let pd = solve_nws_pd(&inst)?;
            if !inst.is_minimal(&pd.set) {
                return Err(Error::invariant("primal-dual set is not minimal"));
            }
            let w = inst.graph().total_weight(&pd.set);
            let mut out = SolutionFile::new(kind, algorithm.name(), w);
            let debt = check_debt_bounds(&DebtView::plain(&inst), &pd.trace, planar_family(file))?;
            out.certificates.insert("valid".into(), true);
            out.certificates.insert("debt-bounds".into(), debt.passed());
            out.tree = Some(pd.tree);
            out.chosen = Some(pd.set);
            if let Some(path) = &opts.trace {
                write(path, &pd.trace.to_json())?;
            }
            out
        }
        _ => return Err(usage(kind, algorithm)),
    };
    let opt = if opts.compute_opt {
        exact_optimum(file)?
    } else {
        None
    };
    if let Some(opt) = opt {
        out.certificates
            .insert("at-least-optimum".into(), out.objective >= opt);
        if let Some(r) = out
            .report
            .as_ref()
            .and_then(|r| r.get("ratio_bound"))
            .and_then(|v| v.as_f64())
        {
            out.certificates.insert(
                "ratio-within-bound".into(),
                out.objective.to_f64() <= r * opt.to_f64() + 1e-6,
            );
        }
    }
    Ok(SolveOutcome {
        solution: out,
        opt,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Solution-file certificates as `name=bool` pairs in key order.
pub fn certificate_summary(c: &BTreeMap<String, bool>) -> String {
    c.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}
