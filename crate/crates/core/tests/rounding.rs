use vcst_core::cds::{solve_cds_all_roots, solve_cds_rounding, RootPolicy, SetCoverBackend};
use vcst_core::exact::{check_cds_solution, solve_cds_exact, CdsInstance};
use vcst_core::graph::{build_unit_disk_graph, Point};
use vcst_core::harness::generate::{random_udg_cds, WeightMode};
use vcst_core::num::Weight;

/// Root `r` needed for a pendant terminal, a heavy three-edge path to a cell
/// holding `k` cheap dominators of a far terminal. The relaxation spreads one
/// unit of domination over the cell and pays `1/k` of the path; a unit flow to
/// any single representative pays the whole path.
fn spread_cell(k: usize) -> CdsInstance {
    let mut pts = vec![(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0)];
    let mut w = vec![1, 1000, 1000, 1000];
    let side = (k as f64).sqrt().ceil() as usize;
    for j in 0..k {
        let (a, b) = ((j % side) as f64, (j / side) as f64);
        pts.push((3.6 + 0.2 * a / side as f64, 0.05 + 0.35 * b / side as f64));
        w.push(1);
    }
    pts.extend([(4.3, 0.2), (-1.0, 0.0)]);
    w.extend([1_000_000, 1_000_000]);
    let points: Vec<Point> = pts
        .iter()
        .map(|&(x, y)| Point::from_micros((x * 1e6) as i64, (y * 1e6) as i64))
        .collect();
    let weights: Vec<Weight> = w.into_iter().map(Weight::from_int).collect();
    let g = build_unit_disk_graph(&points, weights).unwrap();
    let lengths = g
        .edges()
        .iter()
        .map(|&(u, v)| g.weight(u).min(g.weight(v)))
        .collect();
    let g = g.with_lengths(lengths).unwrap();
    let n = g.n();
    CdsInstance::new(g, [n - 2, n - 1]).unwrap()
}

#[test]
fn merged_class_flow_can_exceed_the_theta_bound() {
    let inst = spread_cell(16);
    let (sol, report) = solve_cds_rounding(&inst, 0, SetCoverBackend::Exact).unwrap();
    check_cds_solution(&inst, &sol).unwrap();
    // The Steiner relaxation alone already exceeds theta times the flow relaxation.
    assert!(
        report.steiner_lp_objective > report.reroute_bound,
        "{report:?}"
    );
    assert!(!report.checks.reroute_within_bound);
    assert!(
        report.checks.reroute_feasible,
        "the repaired point stays feasible"
    );
    assert!(report.reroute_repair > 0.0);
    assert!(report.checks.scaled_cover_feasible);
    assert!(report.checks.steiner_within_twice_lp);
}

fn small(seed: u64) -> CdsInstance {
    let n = 6 + (seed % 4) as usize;
    random_udg_cds(seed, n, 1.6, WeightMode::Random { max: 5 }, Some(3), true)
        .unwrap()
        .0
}

#[test]
fn rounding_is_feasible_from_every_root() {
    for seed in 0..10 {
        let inst = small(seed);
        let opt = solve_cds_exact(&inst).unwrap();
        let all = solve_cds_all_roots(&inst, SetCoverBackend::Exact, RootPolicy::All).unwrap();
        check_cds_solution(&inst, &all.solution).unwrap();
        assert!(all.solution.objective >= opt.objective);
        assert_eq!(all.reports.len() + all.skipped.len(), inst.graph().n());
        for r in &all.reports {
            assert!(r.objective + 1e-9 >= opt.objective.to_f64());
            assert!(r.checks.chain_bound, "seed {seed} root {}", r.root);
        }
    }
}

#[test]
fn greedy_backend_stays_valid() {
    for seed in 20..26 {
        let inst = small(seed);
        let all = solve_cds_all_roots(&inst, SetCoverBackend::Greedy, RootPolicy::All).unwrap();
        check_cds_solution(&inst, &all.solution).unwrap();
        assert!(all
            .reports
            .iter()
            .all(|r| r.backend == SetCoverBackend::Greedy));
    }
}

#[test]
fn best_root_ties_go_low() {
    let inst = small(3);
    let all = solve_cds_all_roots(&inst, SetCoverBackend::Exact, RootPolicy::All).unwrap();
    let best = all
        .reports
        .iter()
        .map(|r| r.objective)
        .fold(f64::INFINITY, f64::min);
    let first = all
        .reports
        .iter()
        .find(|r| r.objective == best)
        .unwrap()
        .root;
    assert_eq!(all.best_root, first);
}

#[test]
fn restricted_policy_matches_all_on_small_graphs() {
    let inst = small(5);
    let a = solve_cds_all_roots(&inst, SetCoverBackend::Exact, RootPolicy::All).unwrap();
    let b = solve_cds_all_roots(&inst, SetCoverBackend::Exact, RootPolicy::Restricted).unwrap();
    assert_eq!(a.solution, b.solution);
}
