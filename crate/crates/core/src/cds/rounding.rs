use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{solve_set_cover, steiner_2approx_metric_mst, SetCoverBackend};
use crate::error::{Error, Result};
use crate::exact::{check_cds_solution, CdsInstance, CdsSolution};
use crate::graph::{square_partition, Tree, Vertex, THETA};
use crate::lp::{
    build_cds_flow_lp, build_setcover_lp, build_steiner_flow_lp, reroute_flow, solve_lp_certified,
    LpSolution, LpStatus, FEASIBILITY_TOL,
};

/// Slack for inequalities comparing floating-point LP values.
const BOUND_TOL: f64 = 1e-6;

/// `RootPolicy::Restricted` only narrows the roots above this many vertices.
pub const HEURISTIC_ROOTS_MIN_VERTICES: usize = 40;

/// Individually checked links of the approximation chain.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundingChecks {
    /// `theta * x*` satisfies the heavy-class cover LP.
    pub scaled_cover_feasible: bool,
    /// Cover LP optimum is at most `theta * sum w x*`.
    pub cover_lp_within_theta: bool,
    /// The rerouted flow satisfies the Steiner flow LP.
    pub reroute_feasible: bool,
    /// The rerouted flow costs at most `theta * LP1`.
    pub reroute_within_bound: bool,
    /// `l(F) <= 2 * LP3`.
    pub steiner_within_twice_lp: bool,
    /// `l(F') <= w(S)`.
    pub pendants_within_cover_weight: bool,
    /// Objective at most `2 (gamma + 1) theta * LP1`.
    pub chain_bound: bool,
}

impl RoundingChecks {
    pub fn all(&self) -> bool {
        self.scaled_cover_feasible
            && self.cover_lp_within_theta
            && self.reroute_feasible
            && self.reroute_within_bound
            && self.steiner_within_twice_lp
            && self.pendants_within_cover_weight
            && self.chain_bound
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundingReport {
    pub root: Vertex,
    pub backend: SetCoverBackend,
    pub theta: usize,
    pub lp1_objective: f64,
    /// `sum w(v) x*(v)`.
    pub wx_star: f64,
    /// `sum l(e) y*(e)`.
    pub ly_star: f64,
    pub heavy_classes: Vec<usize>,
    pub heavy_vertices: Vec<Vertex>,
    pub cover_lp_objective: f64,
    pub cover_weight: f64,
    /// `w(S) / cover LP optimum`.
    pub gamma_cert: f64,
    pub representatives: Vec<Vertex>,
    pub steiner_lp_objective: f64,
    pub steiner_length: f64,
    pub pendant_length: f64,
    pub objective: f64,
    pub reroute_objective: f64,
    pub reroute_bound: f64,
    pub reroute_repair: f64,
    pub reroute_residual: f64,
    /// `2 (gamma_cert + 1) theta * lp1_objective`.
    pub chain_bound: f64,
    pub checks: RoundingChecks,
}

fn optimal(sol: LpSolution, what: &str) -> Result<LpSolution> {
    match sol.status {
        LpStatus::Optimal => Ok(sol),
        LpStatus::Infeasible => Err(Error::infeasible(format!("{what} is infeasible"))),
        LpStatus::Unbounded => Err(Error::Lp(format!("{what} is unbounded"))),
    }
}

/// LP rounding for one root. The root is always part of the tree.
pub fn solve_cds_rounding(
    inst: &CdsInstance,
    root: Vertex,
    backend: SetCoverBackend,
) -> Result<(CdsSolution, RoundingReport)> {
    let g = inst.graph();
    let lengths = inst.lengths();
    let backend = backend.resolve(g.n());
    let partition = square_partition(g)?;

    let lp1 = build_cds_flow_lp(inst, root)?;
    let sol1 = optimal(solve_lp_certified(&lp1.model)?, "flow relaxation")?;
    let xstar = lp1.xstar(&sol1.values);
    let ystar = lp1.ystar(&sol1.values);
    let wx_star: f64 = (0..g.n())
        .filter(|&v| lp1.x[v].is_some())
        .map(|v| g.weight(v).to_f64() * xstar[v])
        .sum();
    let ly_star: f64 = (0..g.m())
        .filter(|&e| lp1.y[e].is_some())
        .map(|e| lengths[e].to_f64() * ystar[e])
        .sum();

    let lp2 = build_setcover_lp(inst, &partition, &xstar, THETA)?;
    let sol2 = optimal(solve_lp_certified(&lp2.model)?, "cover relaxation")?;
    let scaled = lp2.scaled_point(&xstar, THETA);
    let cover = lp2.as_set_cover(inst)?;
    let chosen = solve_set_cover(&cover, backend)?;
    let domset: Vec<Vertex> = chosen.chosen.iter().map(|&j| lp2.candidates[j]).collect();
    let cover_weight = chosen.weight.to_f64();
    let gamma_cert = if sol2.objective > 0.0 {
        (cover_weight / sol2.objective).max(1.0)
    } else {
        1.0
    };

    // Lowest finite-weight member; heavy classes carry x* mass, so one exists.
    let representatives: Vec<Vertex> = lp2
        .heavy
        .iter()
        .map(|&i| {
            partition.classes[i]
                .iter()
                .copied()
                .find(|&v| g.weight(v).is_finite())
                .ok_or_else(|| {
                    Error::invariant(format!("heavy class {i} has no finite-weight vertex"))
                })
        })
        .collect::<Result<_>>()?;
    let mut spanned: Vec<Vertex> = representatives.clone();
    spanned.push(root);
    spanned.sort_unstable();
    spanned.dedup();

    let lp3 = build_steiner_flow_lp(g, lengths, root, &representatives)?;
    let sol3 = optimal(solve_lp_certified(&lp3.model)?, "steiner relaxation")?;
    let reroute = reroute_flow(
        inst,
        &lp1,
        &sol1.values,
        &partition,
        &lp2.heavy,
        &representatives,
        THETA,
        &lp3,
    )?;

    let steiner = steiner_2approx_metric_mst(g, lengths, &spanned)?;
    let steiner = if steiner.is_empty() {
        Tree::singleton(root)
    } else {
        steiner
    };
    let mut pendants = Vec::new();
    for &v in &domset {
        if steiner.contains(v) {
            continue;
        }
        let class = partition.cell_of[v];
        let k = lp2
            .heavy
            .binary_search(&class)
            .map_err(|_| Error::invariant(format!("{v} outside heavy classes")))?;
        let r = representatives[k];
        if !g.has_edge(v, r) {
            return Err(Error::invariant(format!(
                "class {class} is not a clique: missing ({v}, {r})"
            )));
        }
        pendants.push((v, r));
    }
    let steiner_length = inst.tree_length(&steiner).to_f64();
    let pendant_length: f64 = pendants
        .iter()
        .map(|&(u, v)| inst.length(u, v).map_or(f64::INFINITY, |l| l.to_f64()))
        .sum();
    let tree = Tree::new(
        steiner.vertices().iter().copied(),
        steiner.edges().iter().copied().chain(pendants),
    );
    let sol = CdsSolution::new(inst, domset, tree);
    check_cds_solution(inst, &sol)?;

    let objective = sol.objective.to_f64();
    let chain_bound = 2.0 * (gamma_cert + 1.0) * THETA as f64 * sol1.objective;
    let checks = RoundingChecks {
        scaled_cover_feasible: lp2.model.max_residual(&scaled) <= FEASIBILITY_TOL,
        cover_lp_within_theta: sol2.objective <= THETA as f64 * wx_star + BOUND_TOL,
        reroute_feasible: reroute.is_feasible(),
        reroute_within_bound: reroute.within_bound(),
        steiner_within_twice_lp: steiner_length <= 2.0 * sol3.objective + BOUND_TOL,
        pendants_within_cover_weight: pendant_length <= cover_weight + BOUND_TOL,
        chain_bound: objective <= chain_bound + BOUND_TOL,
    };
    let report = RoundingReport {
        root,
        backend,
        theta: THETA,
        lp1_objective: sol1.objective,
        wx_star,
        ly_star,
        heavy_classes: lp2.heavy.clone(),
        heavy_vertices: lp2.candidates.clone(),
        cover_lp_objective: sol2.objective,
        cover_weight,
        gamma_cert,
        representatives,
        steiner_lp_objective: sol3.objective,
        steiner_length,
        pendant_length,
        objective,
        reroute_objective: reroute.objective,
        reroute_bound: reroute.bound,
        reroute_repair: reroute.repair,
        reroute_residual: reroute.max_residual,
        chain_bound,
        checks,
    };
    Ok((sol, report))
}

/// Which roots [`solve_cds_all_roots`] tries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootPolicy {
    /// Every vertex.
    #[default]
    All,
    /// Above [`HEURISTIC_ROOTS_MIN_VERTICES`] vertices: the terminals plus
    /// the heavy-class vertices found from the lowest terminal.
    Restricted,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AllRoots {
    pub solution: CdsSolution,
    pub best_root: Vertex,
    /// One report per root that produced a solution, by root.
    pub reports: Vec<RoundingReport>,
    /// Roots whose relaxation was infeasible (no dominator reachable).
    pub skipped: Vec<Vertex>,
}

/// Best rounding over the chosen roots; ties go to the lowest root. Roots run
/// on the current rayon pool.
pub fn solve_cds_all_roots(
    inst: &CdsInstance,
    backend: SetCoverBackend,
    policy: RootPolicy,
) -> Result<AllRoots> {
    let g = inst.graph();
    let mut roots: Vec<Vertex> = (0..g.n()).collect();
    let mut seeded = Vec::new();
    if policy == RootPolicy::Restricted && g.n() > HEURISTIC_ROOTS_MIN_VERTICES {
        let first = inst.terminals()[0];
        let run = solve_cds_rounding(inst, first, backend);
        roots = inst.terminals().to_vec();
        if let Ok((_, report)) = &run {
            roots.extend(report.heavy_vertices.iter().copied());
        }
        roots.sort_unstable();
        roots.dedup();
        seeded.push((first, run));
    }
    let mut runs: Vec<(Vertex, Result<(CdsSolution, RoundingReport)>)> = roots
        .par_iter()
        .filter(|r| !seeded.iter().any(|(s, _)| s == *r))
        .map(|&r| (r, solve_cds_rounding(inst, r, backend)))
        .collect();
    runs.extend(seeded);
    runs.sort_by_key(|(r, _)| *r);

    let mut best: Option<(CdsSolution, Vertex)> = None;
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for (r, run) in runs {
        match run {
            Ok((sol, report)) => {
                if best
                    .as_ref()
                    .is_none_or(|(b, _)| sol.objective < b.objective)
                {
                    best = Some((sol, r));
                }
                reports.push(report);
            }
            Err(Error::Infeasible(_)) => skipped.push(r),
            Err(e) => return Err(e),
        }
    }
    let (solution, best_root) =
        best.ok_or_else(|| Error::infeasible("no root admits a connected dominating set"))?;
    Ok(AllRoots {
        solution,
        best_root,
        reports,
        skipped,
    })
}
