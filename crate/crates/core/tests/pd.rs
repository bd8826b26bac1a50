mod activation {
    use vcst_core::graph::{Graph, VcstInstance};
    use vcst_core::num::{Fixed, Weight};
    use vcst_core::pd::*;
    use vcst_core::pd::{check_debt_bounds, DebtView};
    use vcst_core::reductions::encode_vcst_as_activation;

    #[test]
    fn single_terminal_is_free() {
        let g = Graph::new(vec![Weight::from_int(3); 3], [(0, 1), (1, 2)]).unwrap();
        let act = encode_vcst_as_activation(&VcstInstance::new(g, [1]).unwrap()).unwrap();
        let run = solve_activation_minor_free(&act).unwrap();
        assert_eq!(run.solution.objective, Fixed::from_int(0));
        assert!(run.solution.x.iter().all(|&x| x == Fixed::from_int(0)));
    }

    #[test]
    fn path_is_covered_in_the_middle() {
        let g = Graph::new(vec![Weight::ONE; 3], [(0, 1), (1, 2)]).unwrap();
        let act = encode_vcst_as_activation(&VcstInstance::new(g, [0, 2]).unwrap()).unwrap();
        let run = solve_activation_minor_free(&act).unwrap();
        assert!(act.is_feasible(&run.solution.levels));
        assert_eq!(run.solution.objective, Fixed::from_int(1));
        let report =
            check_debt_bounds(&DebtView::reduced(&run.reduced), &run.pd.trace, true).unwrap();
        assert!(report.passed(), "{report:?}");
    }
}

mod debt {
    use vcst_core::graph::Graph;
    use vcst_core::num::Weight;
    use vcst_core::pd::solve_nws_pd;
    use vcst_core::pd::*;
    use vcst_core::reductions::NwsInstance;

    /// Three terminals around a hub, each behind its own connector.
    fn spider() -> NwsInstance {
        let w = [0, 0, 0, 3, 1, 1, 1].map(Weight::from_int).to_vec();
        let g = Graph::new(w, [(0, 4), (1, 5), (2, 6), (3, 4), (3, 5), (3, 6)]).unwrap();
        NwsInstance::new(g, [0, 1, 2]).unwrap()
    }

    #[test]
    fn three_active_sets_by_hand() {
        let inst = spider();
        let view = DebtView::plain(&inst);
        let d = build_debt_graph(&view, &[0, 1, 2], &[0, 1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(d.active, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(d.b, vec![4, 5, 6]);
        assert!(d.b_prime.is_empty());
        assert_eq!(d.edges, vec![(0, 4), (1, 5), (2, 6)]);
        let d = build_debt_graph(&view, &[0, 1, 2, 4, 5, 6], &[0, 1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(d.b, vec![3]);
        assert_eq!(d.edges.len(), 3);
    }

    #[test]
    fn edge_count_matches_neighborhood_scan() {
        let inst = spider();
        let pd = solve_nws_pd(&inst).unwrap();
        let view = DebtView::plain(&inst);
        for step in 0..=pd.trace.events.len() {
            let x = pd.trace.snapshot(step);
            let d = build_debt_graph(&view, &x, &pd.trace.final_set).unwrap();
            let recount: usize = active_sets(&inst, &x)
                .iter()
                .map(|y| {
                    pd.trace
                        .final_set
                        .iter()
                        .filter(|&&v| {
                            !x.contains(&v) && y.iter().any(|&u| inst.graph().has_edge(u, v))
                        })
                        .count()
                })
                .sum();
            assert_eq!(d.edges.len(), recount);
        }
        let report = check_debt_bounds(&view, &pd.trace, true).unwrap();
        assert!(report.passed());
        assert_eq!(report.snapshots.last().unwrap().active, 1);
    }

    #[test]
    fn snapshot_must_hold_terminals() {
        let inst = spider();
        assert!(build_debt_graph(&DebtView::plain(&inst), &[0, 1], &[0, 1, 2]).is_err());
    }
}

mod primal_dual {
    use vcst_core::graph::Graph;
    use vcst_core::num::Weight;
    use vcst_core::pd::*;
    use vcst_core::reductions::NwsInstance;
    use vcst_core::Error;

    #[test]
    fn single_terminal() {
        let g = Graph::new(vec![Weight::ONE; 2], [(0, 1)]).unwrap();
        let r = solve_nws_pd(&NwsInstance::new(g, [1]).unwrap()).unwrap();
        assert_eq!(r.set, vec![1]);
        assert!(r.trace.events.is_empty());
    }

    #[test]
    fn path_through_middle() {
        let g = Graph::new([0, 5, 0].map(Weight::from_int).to_vec(), [(0, 1), (1, 2)]).unwrap();
        let r = solve_nws_pd(&NwsInstance::new(g, [0, 2]).unwrap()).unwrap();
        assert_eq!(r.set, vec![0, 1, 2]);
        assert_eq!(r.trace.events.len(), 1);
        assert_eq!(r.trace.events[0].time, "5/2");
    }

    #[test]
    fn reverse_deletion_drops_detour() {
        // 0 - 1 - 2 and 0 - 3 - 4 - 2; growth reaches 3 before 1 is tight.
        let w = [0, 10, 0, 3, 3].map(Weight::from_int).to_vec();
        let g = Graph::new(w, [(0, 1), (1, 2), (0, 3), (3, 4), (4, 2)]).unwrap();
        let r = solve_nws_pd(&NwsInstance::new(g, [0, 2]).unwrap()).unwrap();
        assert_eq!(r.set, vec![0, 2, 3, 4]);
        assert!(r.trace.deleted.is_empty());
    }

    #[test]
    fn dead_end_is_deleted() {
        let w = [0, 4, 0, 1].map(Weight::from_int).to_vec();
        let g = Graph::new(w, [(0, 1), (1, 2), (0, 3)]).unwrap();
        let r = solve_nws_pd(&NwsInstance::new(g, [0, 2]).unwrap()).unwrap();
        let added: Vec<_> = r.trace.events.iter().map(|e| e.vertex).collect();
        assert_eq!(added, vec![3, 1]);
        assert_eq!(r.trace.deleted, vec![3]);
        assert_eq!(r.set, vec![0, 1, 2]);
    }

    #[test]
    fn disconnected() {
        let g = Graph::new(vec![Weight::ONE; 3], [(0, 1)]).unwrap();
        assert!(matches!(
            solve_nws_pd(&NwsInstance::new(g, [0, 2]).unwrap()),
            Err(Error::Infeasible(_))
        ));
    }
}
