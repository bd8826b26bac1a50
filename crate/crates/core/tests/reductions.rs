mod activation {
    use vcst_core::graph::Graph;
    use vcst_core::graph::VcstInstance;
    use vcst_core::graph::Vertex;
    use vcst_core::num::Fixed;
    use vcst_core::num::Weight;
    use vcst_core::reductions::*;
    use vcst_core::Error;

    fn edge_instance(levels: &[i64], table: Vec<bool>) -> ActivationInstance {
        let g = Graph::new(vec![Weight::ZERO; 2], [(0, 1)]).unwrap();
        ActivationInstance::new(
            g,
            [0, 1],
            levels.iter().map(|&l| Fixed::from_int(l)).collect(),
            vec![table],
        )
        .unwrap()
    }

    #[test]
    fn uniform_encoding_table() {
        let g = Graph::new(vec![Weight::ONE; 3], [(0, 1), (1, 2)]).unwrap();
        let inst = VcstInstance::new(g, [0, 2]).unwrap();
        let act = encode_vcst_as_activation(&inst).unwrap();
        assert_eq!(act.levels(), &[Fixed::ZERO, Fixed::ONE]);
        for e in 0..2 {
            assert!(!act.activates(e, 0, 0));
            assert!(act.activates(e, 0, 1) && act.activates(e, 1, 0) && act.activates(e, 1, 1));
        }
        assert!(act.is_monotone());
    }

    #[test]
    fn full_reduction_on_one_edge() {
        let act = edge_instance(&[0, 1], vec![false, true, true, true]);
        let red = reduce_activation_to_nws_full(&act).unwrap();
        let g = red.nws.graph();
        assert_eq!(g.n(), 6);
        for (v, o) in red.origin.iter().enumerate() {
            match *o {
                Origin::Terminal(_) => assert_eq!(g.weight(v), Weight::ZERO),
                Origin::Copy { level, .. } => {
                    assert_eq!(g.weight(v), Weight::Finite(act.levels()[level]))
                }
            }
        }
        // Terminal nodes see all their copies; copies 0_0 and 1_0 stay apart.
        assert_eq!(g.degree(0), 2);
        assert_eq!(g.degree(1), 2);
        assert!(!g.has_edge(2, 4));
        assert!(g.has_edge(3, 4) && g.has_edge(2, 5) && g.has_edge(3, 5));
    }

    #[test]
    fn single_level_is_identity_up_to_copies() {
        let act = edge_instance(&[0], vec![true]);
        let red = reduce_activation_to_nws(&act).unwrap();
        assert_eq!(red.nws.graph().n(), 4);
        assert!(red.nws.graph().has_edge(2, 3));
    }

    #[test]
    fn rejects_non_monotone_tables() {
        let act = edge_instance(&[0, 1], vec![true, false, true, true]);
        assert!(!act.is_monotone());
        assert!(matches!(
            reduce_activation_to_nws(&act),
            Err(Error::InvalidInstance(_))
        ));
    }

    #[test]
    fn lift_takes_highest_copy() {
        let g = Graph::new(vec![Weight::ZERO; 3], [(0, 1), (1, 2)]).unwrap();
        let levels: Vec<Fixed> = [0, 2, 3].iter().map(|&l| Fixed::from_int(l)).collect();
        let all = vec![true; 9];
        let act = ActivationInstance::new(g, [0], levels, vec![all.clone(), all]).unwrap();
        let red = reduce_activation_to_nws_full(&act).unwrap();
        let idx = |v: Vertex, level: usize| {
            red.origin
                .iter()
                .position(|&o| o == Origin::Copy { vertex: v, level })
                .unwrap()
        };
        let set = vec![0, idx(0, 0), idx(0, 2), idx(1, 1)];
        let lifted = lift_nws_to_activation(&red, &set).unwrap();
        assert_eq!(
            lifted.solution.x,
            vec![Fixed::from_int(3), Fixed::from_int(2), Fixed::ZERO]
        );
        assert!(!lifted.minimal);
        assert!(lifted.warning.is_some());
        assert!(
            !lift_nws_to_activation(&red, &[0, idx(0, 0)])
                .unwrap()
                .minimal
        );
        let lifted = lift_nws_to_activation(&red, &[0]).unwrap();
        assert!(lifted.minimal);
        assert_eq!(lifted.solution.objective, Fixed::ZERO);
    }
}

mod gadgets {
    use vcst_core::exact::SetCoverInstance;
    use vcst_core::exact::{solve_edge_steiner_exact, solve_set_cover_exact, solve_vcst_exact};
    use vcst_core::num::Weight;
    use vcst_core::reductions::*;

    #[test]
    fn set_cover_gadget_shape() {
        let sc = SetCoverInstance::unweighted(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let gad = gadget_from_set_cover(&sc).unwrap();
        let g = gad.instance.graph();
        assert_eq!(g.n(), 5);
        assert!(g.has_edge(3, 4));
        assert_eq!(g.m(), 4 + 1);
    }

    #[test]
    fn set_cover_gadget_optimum_and_maps() {
        let sc =
            SetCoverInstance::unweighted(4, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]])
                .unwrap();
        let gad = gadget_from_set_cover(&sc).unwrap();
        let opt = solve_vcst_exact(&gad.instance).unwrap();
        let cover = solve_set_cover_exact(&sc).unwrap();
        assert_eq!(opt.objective, cover.weight);
        let sol = gad.cover_to_solution(&cover.chosen).unwrap();
        assert_eq!(sol.objective, cover.weight);
        let back = gad.solution_to_cover(&opt).unwrap();
        assert!(back.len() as i64 * 1_000_000 <= opt.objective.micros().unwrap());
    }

    #[test]
    fn uncoverable_element_rejected() {
        let sc = SetCoverInstance::unweighted(2, vec![vec![0]]).unwrap();
        assert!(gadget_from_set_cover(&sc).is_err());
    }

    #[test]
    fn one_grid_edge_becomes_unit_path() {
        let grid = GridSteinerInstance::new(
            vec![(0, 0), (1, 0)],
            vec![(0, 1)],
            vec![Weight::from_int(7)],
            vec![0, 1],
        )
        .unwrap();
        let gad = gadget_subdivide_grid(&grid).unwrap();
        let g = gad.instance.graph();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edges(), &[(0, 2), (1, 4), (2, 3), (3, 4)]);
        let sol = solve_vcst_exact(&gad.instance).unwrap();
        assert_eq!(sol.objective, Weight::from_int(7));
        assert!(sol.cover.contains(&3));
        assert!(!sol.cover.contains(&2) && !sol.cover.contains(&4));
    }

    #[test]
    fn square_grid_gadget_matches_steiner() {
        let pts = vec![(0, 0), (1, 0), (0, 1), (1, 1)];
        let edges = vec![(0, 1), (0, 2), (1, 3), (2, 3)];
        let w: Vec<Weight> = [3, 1, 1, 2].iter().map(|&x| Weight::from_int(x)).collect();
        let grid = GridSteinerInstance::new(pts, edges, w, vec![0, 1, 3]).unwrap();
        let gad = gadget_subdivide_grid(&grid).unwrap();
        assert_eq!(gad.instance.graph().n(), 4 + 3 * 4);
        let (g, l) = grid.to_graph().unwrap();
        let (_, st) = solve_edge_steiner_exact(&g, &l, &grid.terminals).unwrap();
        assert_eq!(solve_vcst_exact(&gad.instance).unwrap().objective, st);
    }

    #[test]
    fn rejects_non_grid_edges() {
        let r = GridSteinerInstance::new(
            vec![(0, 0), (1, 1)],
            vec![(0, 1)],
            vec![Weight::ONE],
            vec![0],
        );
        assert!(r.is_err());
    }
}

mod vcst_cds {
    use vcst_core::exact::CdsSolution;
    use vcst_core::graph::Tree;
    use vcst_core::graph::VcstInstance;
    use vcst_core::graph::{validate_vcst_solution, Graph};
    use vcst_core::num::Weight;
    use vcst_core::reductions::*;

    #[test]
    fn lengths_follow_min_rule() {
        let g = Graph::new(vec![Weight::from_int(3), Weight::from_int(5)], [(0, 1)]).unwrap();
        let cds = reduce_vcst_to_cds(&VcstInstance::new(g, [0, 1]).unwrap()).unwrap();
        assert_eq!(cds.lengths(), &[Weight::from_int(3)]);
    }

    #[test]
    fn lift_attaches_pendants() {
        // Path 0-1-2-3-4, T = {0, 4}, S = {1, 3}, F = 1-2-3.
        let g = Graph::new(vec![Weight::ONE; 5], [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let inst = VcstInstance::new(g, [0, 4]).unwrap();
        let cds = reduce_vcst_to_cds(&inst).unwrap();
        let sol = CdsSolution::new(&cds, vec![1, 3], Tree::from_edges([(1, 2), (2, 3)]));
        let lifted = lift_cds_to_vcst(&inst, &sol).unwrap();
        assert!(validate_vcst_solution(&inst, &lifted).is_ok());
        assert_eq!(lifted.tree.edges().len(), 4);
        assert!(lifted.objective <= sol.objective);
    }

    #[test]
    fn spanned_terminals_need_no_pendants() {
        let g = Graph::new(vec![Weight::ONE; 3], [(0, 1), (1, 2)]).unwrap();
        let inst = VcstInstance::new(g, [0, 2]).unwrap();
        let cds = reduce_vcst_to_cds(&inst).unwrap();
        let sol = CdsSolution::new(&cds, vec![0, 2], Tree::from_edges([(0, 1), (1, 2)]));
        let lifted = lift_cds_to_vcst(&inst, &sol).unwrap();
        assert_eq!(lifted.tree, sol.tree);
        // Equal-weight edges are covered by their lower endpoint.
        assert_eq!(lifted.cover, vec![0, 1, 2]);
        assert!(lifted.objective <= sol.objective);
    }

    #[test]
    fn rejects_infeasible_input() {
        let g = Graph::new(vec![Weight::ONE; 3], [(0, 1), (1, 2)]).unwrap();
        let inst = VcstInstance::new(g, [0, 2]).unwrap();
        let cds = reduce_vcst_to_cds(&inst).unwrap();
        let sol = CdsSolution::new(&cds, vec![0], Tree::singleton(0));
        assert!(lift_cds_to_vcst(&inst, &sol).is_err());
    }
}
