//! Deterministic property checks grouped into suites.
//!
//! Every check draws its instances from fixed seeds, so two runs report the
//! same numbers. The LP checks share one sweep of instances.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::generate::{
    random_activation, random_connected_graph, random_grid, random_planar_vcst, random_set_cover,
    random_udg_cds, random_udg_graph, random_udg_vcst, rng_for, WeightMode,
};
use crate::cds::{
    solve_cds_all_roots, steiner_2approx_metric_mst, AllRoots, RootPolicy, SetCoverBackend,
};
use crate::error::{Error, Result};
use crate::exact::{
    solve_activation_exact, solve_cds_exact, solve_edge_steiner_exact, solve_nws_exact,
    solve_set_cover_exact, solve_vcst_exact, solve_vcst_exact_crosscheck, CdsInstance, CdsSolution,
};
use crate::graph::{
    close_pair_witness, packing_bound, square_partition, validate_vcst_solution, VcstInstance,
    THETA,
};
use crate::lp::{build_steiner_flow_lp, solve_lp_certified, LpStatus};
use crate::num::{Fixed, Weight};
use crate::pd::{check_debt_bounds, solve_activation_minor_free, DebtView};
use crate::reductions::{
    activation_to_vcst, encode_vcst_as_activation, gadget_from_set_cover, gadget_subdivide_grid,
    lift_cds_to_vcst, lift_nws_to_activation, reduce_activation_to_nws,
    reduce_activation_to_nws_full, reduce_vcst_to_cds, ActivationInstance,
};

/// Slack for LP objectives compared against exact values.
pub const LP_COMPARE_TOL: f64 = 1e-7;
/// Slack for the rounding bounds.
pub const BOUND_TOL: f64 = 1e-6;
/// Budget for the oracle agreement check.
pub const ORACLE_BUDGET_MS: f64 = 60_000.0;
/// Budget for the whole verification run.
pub const FULL_RUN_BUDGET_MS: f64 = 300_000.0;

pub const ORACLE_INSTANCES: u64 = 200;
pub const PARTITION_INSTANCES: u64 = 1000;
pub const CLOSE_PAIR_CONFIGS: u64 = 500;
pub const CLOSE_PAIR_ALPHAS: [f64; 4] = [0.55, 0.6, 0.709, 0.75];
pub const LP_INSTANCES: u64 = 100;
pub const STEINER_INSTANCES: u64 = 100;
pub const LIFT_INSTANCES: u64 = 100;
pub const ACTIVATION_INSTANCES: u64 = 150;
pub const PLANAR_INSTANCES: u64 = 100;
pub const SET_COVER_GADGETS: u64 = 50;
pub const GRID_GADGETS: u64 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Geometry,
    Lp,
    Reductions,
    Debt,
    Oracles,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Oracles,
        Suite::Geometry,
        Suite::Lp,
        Suite::Reductions,
        Suite::Debt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Geometry => "geometry",
            Suite::Lp => "lp",
            Suite::Reductions => "reductions",
            Suite::Debt => "debt",
            Suite::Oracles => "oracles",
        }
    }

    /// Checks of this suite, in run order.
    pub fn checks(self) -> &'static [(&'static str, fn() -> Result<Outcome>)] {
        match self {
            Suite::Oracles => &[("oracle-agreement", oracle_agreement)],
            Suite::Geometry => &[
                ("packing-constants", packing_constants),
                ("partition-theta", partition_theta),
                ("close-pair-property", close_pair_property),
            ],
            Suite::Lp => &[
                ("lp-relaxation-soundness", lp_relaxation_soundness),
                ("scaled-cover-feasibility", scaled_cover_feasibility),
                ("reroute-feasibility", reroute_feasibility),
                ("steiner-two-approx", steiner_two_approx),
                ("rounding-chain", rounding_chain),
            ],
            Suite::Reductions => &[
                ("cds-lift", cds_lift),
                ("activation-round-trip", activation_round_trip),
                ("gadget-equalities", gadget_equalities),
            ],
            Suite::Debt => &[("planar-primal-dual", planar_primal_dual)],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown suite {s:?} (geometry, lp, reductions, debt, oracles)"
                ))
            })
    }
}

/// What a check observed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: f64,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {}/{} ({:.0} ms): {}",
            self.suite, self.name, self.elapsed_ms, self.detail
        )
    }
}

fn run_check(suite: Suite, name: &'static str, check: fn() -> Result<Outcome>) -> CheckResult {
    let start = Instant::now();
    let outcome = check().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
    CheckResult {
        suite,
        name,
        passed: outcome.passed,
        detail: outcome.detail,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

pub fn run_suite(suite: Suite) -> Vec<CheckResult> {
    suite
        .checks()
        .iter()
        .map(|&(name, check)| run_check(suite, name, check))
        .collect()
}

/// Runs one check by name.
pub fn run_named(name: &str) -> Option<CheckResult> {
    Suite::ALL.into_iter().find_map(|suite| {
        suite
            .checks()
            .iter()
            .find(|(n, _)| *n == name)
            .map(|&(n, check)| run_check(suite, n, check))
    })
}

pub fn run_all() -> Vec<CheckResult> {
    Suite::ALL.into_iter().flat_map(run_suite).collect()
}

/// Collects per-instance failures; keeps the first few for the report.
#[derive(Default)]
struct Failures {
    count: usize,
    examples: Vec<String>,
}

impl Failures {
    fn push(&mut self, what: String) {
        self.count += 1;
        if self.examples.len() < 3 {
            self.examples.push(what);
        }
    }

    fn from_results(results: Vec<std::result::Result<(), String>>) -> Self {
        let mut f = Failures::default();
        for r in results {
            if let Err(e) = r {
                f.push(e);
            }
        }
        f
    }

    fn outcome(&self, total: u64, summary: impl fmt::Display) -> Outcome {
        if self.count == 0 {
            Outcome::new(true, format!("{total} instances; {summary}"))
        } else {
            Outcome::new(
                false,
                format!(
                    "{}/{total} failed ({}); {summary}",
                    self.count,
                    self.examples.join("; ")
                ),
            )
        }
    }
}

fn median(mut xs: Vec<f64>) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

fn max_of(xs: &[f64]) -> f64 {
    xs.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

// Oracles.

fn oracle_agreement() -> Result<Outcome> {
    let start = Instant::now();
    let results: Vec<_> = (0..ORACLE_INSTANCES)
        .into_par_iter()
        .map(|seed| -> std::result::Result<(), String> {
            let mut rng = rng_for(10_000 + seed);
            let n = 3 + (seed % 6) as usize;
            let mode = if seed % 2 == 0 {
                WeightMode::Uniform
            } else {
                WeightMode::Random { max: 6 }
            };
            let g = random_connected_graph(&mut rng, n, 0.35, mode).map_err(|e| e.to_string())?;
            let k = rng.gen_range(1..=n);
            let terms = rand::seq::index::sample(&mut rng, n, k).into_vec();
            let inst = VcstInstance::new(g, terms).map_err(|e| e.to_string())?;
            let a = solve_vcst_exact(&inst).map_err(|e| e.to_string())?;
            let b = solve_vcst_exact_crosscheck(&inst).map_err(|e| e.to_string())?;
            if a.objective != b {
                return Err(format!(
                    "seed {seed}: cover enumeration {} vs tree enumeration {b}",
                    a.objective
                ));
            }
            validate_vcst_solution(&inst, &a)
                .into_result()
                .map_err(|e| format!("seed {seed}: {e}"))
        })
        .collect();
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let mut f = Failures::from_results(results);
    if ms >= ORACLE_BUDGET_MS {
        f.push(format!("took {ms:.0} ms, budget {ORACLE_BUDGET_MS:.0} ms"));
    }
    Ok(f.outcome(ORACLE_INSTANCES, format!("{ms:.0} ms")))
}

// Geometry.

fn packing_constants() -> Result<Outcome> {
    let a = packing_bound(1.0 / 1.41)?;
    let b = packing_bound(1.41 / 2.0)?;
    Ok(Outcome::new(
        a == 12 && b == 12,
        format!("bound(1/1.41) = {a}, bound(1.41/2) = {b}"),
    ))
}

fn partition_theta() -> Result<Outcome> {
    let results: Vec<Result<(usize, bool)>> = (0..PARTITION_INSTANCES)
        .into_par_iter()
        .map(|seed| {
            let g = random_udg_graph(&mut rng_for(20_000 + seed), 300, 3.0, WeightMode::Uniform)?;
            let p = square_partition(&g)?;
            Ok((
                p.max_classes_per_neighborhood(&g),
                p.classes_are_cliques(&g),
            ))
        })
        .collect();
    let results: Vec<(usize, bool)> = results.into_iter().collect::<Result<_>>()?;
    let worst = results.iter().map(|r| r.0).max().unwrap_or(0);
    let hits = results.iter().filter(|r| r.0 == THETA).count();
    let cliques = results.iter().all(|r| r.1);
    let passed = worst <= THETA && hits > 0 && cliques;
    Ok(Outcome::new(
        passed,
        format!("{PARTITION_INSTANCES} graphs; max classes per neighborhood {worst}, reached {THETA} in {hits}; classes are cliques: {cliques}"),
    ))
}

/// `count` points around the origin whose distances to it lie in `[1, 1/alpha)`,
/// so every distance ratio is inside `(alpha, 1/alpha]`. Odd configurations
/// spread the angles evenly with jitter, which is the hard case.
fn ratio_window_points(
    rng: &mut impl Rng,
    alpha: f64,
    count: usize,
    spread: bool,
) -> Vec<(f64, f64)> {
    let hi = 1.0 / alpha;
    (0..count)
        .map(|i| {
            let r = rng.gen_range(1.0..hi);
            let phi = if spread {
                let step = std::f64::consts::TAU / count as f64;
                i as f64 * step + rng.gen_range(-0.25..0.25) * step
            } else {
                rng.gen_range(0.0..std::f64::consts::TAU)
            };
            (r * phi.cos(), r * phi.sin())
        })
        .collect()
}

fn close_pair_property() -> Result<Outcome> {
    let mut rng = rng_for(30_000);
    let mut f = Failures::default();
    let mut sizes = Vec::new();
    for alpha in CLOSE_PAIR_ALPHAS {
        let size = packing_bound(alpha)? as usize + 1;
        sizes.push(format!("{alpha}: {size}"));
        for c in 0..CLOSE_PAIR_CONFIGS {
            let pts = ratio_window_points(&mut rng, alpha, size, c % 2 == 1);
            if close_pair_witness((0.0, 0.0), &pts).is_none() {
                f.push(format!("alpha {alpha} configuration {c}"));
            }
        }
    }
    let total = CLOSE_PAIR_ALPHAS.len() as u64 * CLOSE_PAIR_CONFIGS;
    Ok(f.outcome(total, format!("sizes {}", sizes.join(", "))))
}

// LP rounding.

struct LpCase {
    seed: u64,
    exact: CdsSolution,
    rounding: AllRoots,
}

fn lp_instance(seed: u64) -> Result<CdsInstance> {
    let n = 5 + (seed % 6) as usize;
    let terminals = 2 + (seed as usize * 7) % (n - 1);
    Ok(random_udg_cds(
        40_000 + seed,
        n,
        1.8,
        WeightMode::Random { max: 8 },
        Some(terminals),
        true,
    )?
    .0)
}

fn lp_cases() -> std::result::Result<&'static [LpCase], String> {
    static CASES: OnceLock<std::result::Result<Vec<LpCase>, String>> = OnceLock::new();
    let cases = CASES.get_or_init(|| {
        let cases: Result<Vec<LpCase>> = (0..LP_INSTANCES)
            .into_par_iter()
            .map(|seed| {
                let inst = lp_instance(seed)?;
                let exact = solve_cds_exact(&inst)?;
                let rounding = solve_cds_all_roots(&inst, SetCoverBackend::Exact, RootPolicy::All)?;
                Ok(LpCase {
                    seed,
                    exact,
                    rounding,
                })
            })
            .collect();
        cases.map_err(|e| e.to_string())
    });
    cases.as_deref().map_err(Clone::clone)
}

fn lp_relaxation_soundness() -> Result<Outcome> {
    let cases = lp_cases().map_err(Error::invariant)?;
    let mut f = Failures::default();
    let mut gaps = Vec::new();
    for c in cases {
        let opt = c.exact.objective.to_f64();
        // The relaxation for root r only covers solutions whose tree holds r.
        let root = c.exact.tree.vertices()[0];
        let Some(report) = c.rounding.reports.iter().find(|r| r.root == root) else {
            f.push(format!("seed {}: no relaxation for root {root}", c.seed));
            continue;
        };
        if report.lp1_objective > opt + LP_COMPARE_TOL {
            f.push(format!(
                "seed {}: relaxation {} above optimum {opt}",
                c.seed, report.lp1_objective
            ));
        }
        let best = c
            .rounding
            .reports
            .iter()
            .map(|r| r.lp1_objective)
            .fold(f64::INFINITY, f64::min);
        if best > opt + LP_COMPARE_TOL {
            f.push(format!(
                "seed {}: best relaxation {best} above optimum {opt}",
                c.seed
            ));
        }
        gaps.push(opt / report.lp1_objective.max(f64::MIN_POSITIVE));
    }
    Ok(f.outcome(
        LP_INSTANCES,
        format!(
            "median optimum/relaxation {:.3}, max {:.3}",
            median(gaps.clone()),
            max_of(&gaps)
        ),
    ))
}

fn scaled_cover_feasibility() -> Result<Outcome> {
    let cases = lp_cases().map_err(Error::invariant)?;
    let mut f = Failures::default();
    let mut roots = 0;
    for c in cases {
        for r in &c.rounding.reports {
            roots += 1;
            if !r.checks.scaled_cover_feasible || !r.checks.cover_lp_within_theta {
                f.push(format!("seed {} root {}", c.seed, r.root));
            }
        }
    }
    Ok(f.outcome(LP_INSTANCES, format!("{roots} roots")))
}

fn reroute_feasibility() -> Result<Outcome> {
    let cases = lp_cases().map_err(Error::invariant)?;
    let mut f = Failures::default();
    let (mut roots, mut repaired, mut worst) = (0, 0, 0.0f64);
    for c in cases {
        for r in &c.rounding.reports {
            roots += 1;
            if r.reroute_repair > 0.0 {
                repaired += 1;
            }
            worst = worst.max(r.reroute_residual);
            if !r.checks.reroute_feasible || !r.checks.reroute_within_bound {
                f.push(format!(
                    "seed {} root {}: objective {} bound {} residual {:e}",
                    c.seed, r.root, r.reroute_objective, r.reroute_bound, r.reroute_residual
                ));
            }
        }
    }
    Ok(f.outcome(
        LP_INSTANCES,
        format!("{roots} roots, {repaired} needed capacity repair, max residual {worst:e}"),
    ))
}

fn steiner_two_approx() -> Result<Outcome> {
    let results: Vec<_> = (0..STEINER_INSTANCES)
        .into_par_iter()
        .map(|seed| -> std::result::Result<f64, String> {
            let n = 8 + (seed % 7) as usize;
            let k = 2 + (seed as usize * 5) % 9;
            let (inst, _) = random_udg_cds(
                50_000 + seed,
                n,
                2.2,
                WeightMode::Random { max: 6 },
                Some(k.min(n)),
                true,
            )
            .map_err(|e| e.to_string())?;
            let g = inst.graph();
            let terms = inst.terminals();
            let lp = build_steiner_flow_lp(g, inst.lengths(), terms[0], &terms[1..])
                .map_err(|e| e.to_string())?;
            let sol = solve_lp_certified(&lp.model).map_err(|e| e.to_string())?;
            if sol.status != LpStatus::Optimal {
                return Err(format!("seed {seed}: relaxation {:?}", sol.status));
            }
            let tree =
                steiner_2approx_metric_mst(g, inst.lengths(), terms).map_err(|e| e.to_string())?;
            let len = inst.tree_length(&tree).to_f64();
            let (_, opt) =
                solve_edge_steiner_exact(g, inst.lengths(), terms).map_err(|e| e.to_string())?;
            let opt = opt.to_f64();
            if len > 2.0 * sol.objective + BOUND_TOL {
                return Err(format!(
                    "seed {seed}: length {len} above twice the relaxation {}",
                    sol.objective
                ));
            }
            if len > 2.0 * opt {
                return Err(format!(
                    "seed {seed}: length {len} above twice the optimum {opt}"
                ));
            }
            if sol.objective > opt + LP_COMPARE_TOL {
                return Err(format!(
                    "seed {seed}: relaxation {} above optimum {opt}",
                    sol.objective
                ));
            }
            Ok(if opt > 0.0 { len / opt } else { 1.0 })
        })
        .collect();
    let ratios: Vec<f64> = results
        .iter()
        .filter_map(|r| r.as_ref().ok().copied())
        .collect();
    let f = Failures::from_results(results.into_iter().map(|r| r.map(|_| ())).collect());
    Ok(f.outcome(
        STEINER_INSTANCES,
        format!(
            "length/optimum median {:.3}, max {:.3}",
            median(ratios.clone()),
            max_of(&ratios)
        ),
    ))
}

fn rounding_chain() -> Result<Outcome> {
    let cases = lp_cases().map_err(Error::invariant)?;
    let mut f = Failures::default();
    let mut ratios = Vec::new();
    for c in cases {
        let sol = &c.rounding.solution;
        let obj = sol.objective.to_f64();
        let Some(report) = c
            .rounding
            .reports
            .iter()
            .find(|r| r.root == c.rounding.best_root)
        else {
            f.push(format!("seed {}: no report for the best root", c.seed));
            continue;
        };
        let chain = 2.0 * (report.gamma_cert + 1.0) * THETA as f64 * report.lp1_objective;
        if obj > chain + BOUND_TOL {
            f.push(format!(
                "seed {}: objective {obj} above chain bound {chain}",
                c.seed
            ));
        }
        if sol.objective < c.exact.objective {
            f.push(format!(
                "seed {}: objective {obj} below the optimum {}",
                c.seed, c.exact.objective
            ));
        }
        ratios.push(obj / c.exact.objective.to_f64());
    }
    Ok(f.outcome(
        LP_INSTANCES,
        format!(
            "objective/optimum median {:.3}, max {:.3}",
            median(ratios.clone()),
            max_of(&ratios)
        ),
    ))
}

// Reductions.

fn cds_lift() -> Result<Outcome> {
    let results: Vec<_> = (0..LIFT_INSTANCES)
        .into_par_iter()
        .map(|seed| -> std::result::Result<f64, String> {
            let n = 5 + (seed % 6) as usize;
            let k = 1 + (seed as usize * 3) % n;
            let (inst, _) = random_udg_vcst(
                60_000 + seed,
                n,
                2.0,
                WeightMode::Random { max: 9 },
                Some(k),
                true,
            )
            .map_err(|e| e.to_string())?;
            let cds = reduce_vcst_to_cds(&inst).map_err(|e| e.to_string())?;
            let run = solve_cds_all_roots(&cds, SetCoverBackend::Exact, RootPolicy::All)
                .map_err(|e| e.to_string())?;
            let lifted = lift_cds_to_vcst(&inst, &run.solution).map_err(|e| e.to_string())?;
            validate_vcst_solution(&inst, &lifted)
                .into_result()
                .map_err(|e| format!("seed {seed}: {e}"))?;
            if lifted.objective > run.solution.objective {
                return Err(format!(
                    "seed {seed}: lifted {} above {}",
                    lifted.objective, run.solution.objective
                ));
            }
            let opt = solve_vcst_exact(&inst)
                .map_err(|e| e.to_string())?
                .objective;
            if lifted.objective < opt {
                return Err(format!(
                    "seed {seed}: lifted {} below the optimum {opt}",
                    lifted.objective
                ));
            }
            Ok(if opt.to_f64() > 0.0 {
                lifted.objective.to_f64() / opt.to_f64()
            } else {
                1.0
            })
        })
        .collect();
    let ratios: Vec<f64> = results
        .iter()
        .filter_map(|r| r.as_ref().ok().copied())
        .collect();
    let f = Failures::from_results(results.into_iter().map(|r| r.map(|_| ())).collect());
    Ok(f.outcome(
        LIFT_INSTANCES,
        format!(
            "lifted/optimum median {:.3}, max {:.3}",
            median(ratios.clone()),
            max_of(&ratios)
        ),
    ))
}

fn small_activation(seed: u64) -> Result<ActivationInstance> {
    let mut rng = rng_for(70_000 + seed);
    let n = 2 + (seed % 5) as usize;
    let g = random_connected_graph(&mut rng, n, 0.4, WeightMode::Uniform)?;
    let mut levels = vec![0i64];
    let extra = rng.gen_range(0..=2);
    while levels.len() < 1 + extra {
        let l = rng.gen_range(1..=5);
        if !levels.contains(&l) {
            levels.push(l);
        }
    }
    levels.sort_unstable();
    let k = rng.gen_range(1..=n);
    let terms = rand::seq::index::sample(&mut rng, n, k).into_vec();
    let levels: Vec<Fixed> = levels.into_iter().map(Fixed::from_int).collect();
    // Redraw tables until the top level connects the terminals.
    loop {
        let inst = random_activation(&mut rng, g.clone(), terms.clone(), levels.clone())?;
        if inst.is_feasible(&vec![levels.len() - 1; n]) {
            return Ok(inst);
        }
    }
}

fn activation_round_trip() -> Result<Outcome> {
    let results: Vec<_> = (0..ACTIVATION_INSTANCES)
        .into_par_iter()
        .map(|seed| -> std::result::Result<(), String> {
            let inst = small_activation(seed).map_err(|e| e.to_string())?;
            let brute = solve_activation_exact(&inst).map_err(|e| e.to_string())?;
            for (label, reduced) in [
                ("full", reduce_activation_to_nws_full(&inst)),
                ("pruned", reduce_activation_to_nws(&inst)),
            ] {
                let reduced = reduced.map_err(|e| e.to_string())?;
                let (set, weight) = solve_nws_exact(&reduced.nws).map_err(|e| e.to_string())?;
                let lifted = lift_nws_to_activation(&reduced, &set).map_err(|e| e.to_string())?;
                if Weight::Finite(lifted.solution.objective) != weight {
                    return Err(format!(
                        "seed {seed} ({label}): lifted {} vs set weight {weight}",
                        lifted.solution.objective
                    ));
                }
                if lifted.solution.objective != brute.objective {
                    return Err(format!(
                        "seed {seed} ({label}): pipeline {} vs brute force {}",
                        lifted.solution.objective, brute.objective
                    ));
                }
            }
            Ok(())
        })
        .collect();
    Ok(Failures::from_results(results).outcome(
        ACTIVATION_INSTANCES,
        "n <= 6, |W| <= 3, full and pruned reductions",
    ))
}

fn gadget_equalities() -> Result<Outcome> {
    let covers: Vec<_> = (0..SET_COVER_GADGETS)
        .into_par_iter()
        .map(|seed| -> std::result::Result<(), String> {
            let universe = 3 + (seed % 5) as usize;
            let sets = 2 + (seed as usize * 3) % 5;
            let sc =
                random_set_cover(80_000 + seed, universe, sets, 0.35).map_err(|e| e.to_string())?;
            let gadget = gadget_from_set_cover(&sc).map_err(|e| e.to_string())?;
            let opt = solve_vcst_exact(&gadget.instance)
                .map_err(|e| e.to_string())?
                .objective;
            let cover = solve_set_cover_exact(&sc)
                .map_err(|e| e.to_string())?
                .weight;
            if opt != cover {
                return Err(format!(
                    "set cover seed {seed}: gadget {opt} vs cover {cover}"
                ));
            }
            Ok(())
        })
        .collect();
    const SHAPES: [(usize, usize); 5] = [(2, 2), (3, 2), (2, 3), (3, 3), (4, 2)];
    let grids: Vec<_> = (0..GRID_GADGETS)
        .into_par_iter()
        .map(|seed| -> std::result::Result<(), String> {
            let (w, h) = SHAPES[seed as usize % SHAPES.len()];
            let k = 2 + (seed as usize % 3);
            let grid = random_grid(90_000 + seed, w, h, 5, k).map_err(|e| e.to_string())?;
            let gadget = gadget_subdivide_grid(&grid).map_err(|e| e.to_string())?;
            let opt = solve_vcst_exact(&gadget.instance)
                .map_err(|e| e.to_string())?
                .objective;
            let (g, lengths) = grid.to_graph().map_err(|e| e.to_string())?;
            let (_, steiner) = solve_edge_steiner_exact(&g, &lengths, &grid.terminals)
                .map_err(|e| e.to_string())?;
            if opt != steiner {
                return Err(format!(
                    "grid seed {seed}: gadget {opt} vs Steiner {steiner}"
                ));
            }
            Ok(())
        })
        .collect();
    let f = Failures::from_results(covers.into_iter().chain(grids).collect());
    Ok(f.outcome(
        SET_COVER_GADGETS + GRID_GADGETS,
        format!("{SET_COVER_GADGETS} set systems, {GRID_GADGETS} grids"),
    ))
}

// Primal-dual on planar graphs.

fn planar_primal_dual() -> Result<Outcome> {
    let results: Vec<_> = (0..PLANAR_INSTANCES)
        .into_par_iter()
        .map(|seed| -> std::result::Result<(f64, usize), String> {
            let n = 4 + (seed % 9) as usize;
            let k = 2 + (seed as usize * 5) % (n - 1);
            let inst =
                random_planar_vcst(100_000 + seed, n, WeightMode::Random { max: 10 }, Some(k))
                    .map_err(|e| e.to_string())?;
            let act = encode_vcst_as_activation(&inst).map_err(|e| e.to_string())?;
            let run = solve_activation_minor_free(&act).map_err(|e| e.to_string())?;
            let sol = activation_to_vcst(&inst, &run.solution).map_err(|e| e.to_string())?;
            validate_vcst_solution(&inst, &sol)
                .into_result()
                .map_err(|e| format!("seed {seed}: {e}"))?;
            let opt = solve_vcst_exact(&inst)
                .map_err(|e| e.to_string())?
                .objective;
            let got = Weight::Finite(run.solution.objective);
            let ratio = if opt == Weight::ZERO {
                if got != Weight::ZERO {
                    return Err(format!("seed {seed}: objective {got} but the optimum is 0"));
                }
                1.0
            } else {
                got.to_f64() / opt.to_f64()
            };
            if ratio > 11.0 {
                return Err(format!("seed {seed}: ratio {ratio:.3}"));
            }
            let report = check_debt_bounds(&DebtView::reduced(&run.reduced), &run.pd.trace, true)
                .map_err(|e| e.to_string())?;
            if !report.passed() {
                return Err(format!(
                    "seed {seed}: debt bounds fail at snapshots {:?}",
                    report.failures
                ));
            }
            Ok((ratio, report.snapshots.len()))
        })
        .collect();
    let ratios: Vec<f64> = results
        .iter()
        .filter_map(|r| r.as_ref().ok().map(|x| x.0))
        .collect();
    let snaps: usize = results
        .iter()
        .filter_map(|r| r.as_ref().ok().map(|x| x.1))
        .sum();
    let f = Failures::from_results(results.into_iter().map(|r| r.map(|_| ())).collect());
    Ok(f.outcome(
        PLANAR_INSTANCES,
        format!(
            "{snaps} snapshots; objective/optimum median {:.3}, max {:.3}",
            median(ratios.clone()),
            max_of(&ratios)
        ),
    ))
}
