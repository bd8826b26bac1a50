mod cds {
    use vcst_core::exact::*;
    use vcst_core::graph::Graph;
    use vcst_core::graph::Tree;
    use vcst_core::num::Weight;

    fn with_min_lengths(weights: Vec<Weight>, edges: &[(usize, usize)]) -> Graph {
        let g = Graph::new(weights, edges.iter().copied()).unwrap();
        let l = g
            .edges()
            .iter()
            .map(|&(u, v)| g.weight(u).min(g.weight(v)))
            .collect();
        g.with_lengths(l).unwrap()
    }

    #[test]
    fn single_terminal_picks_itself() {
        let g = with_min_lengths(vec![Weight::ONE, Weight::from_int(5)], &[(0, 1)]);
        let inst = CdsInstance::new(g, [0]).unwrap();
        let sol = solve_cds_exact(&inst).unwrap();
        assert_eq!(sol.domset, vec![0]);
        assert!(sol.tree.edges().is_empty());
        assert_eq!(sol.objective, Weight::ONE);
        check_cds_solution(&inst, &sol).unwrap();
    }

    #[test]
    fn cheap_center_dominates_star() {
        let mut w = vec![Weight::from_int(10); 5];
        w[0] = Weight::ONE;
        let g = with_min_lengths(w, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let inst = CdsInstance::new(g, [1, 2, 3, 4]).unwrap();
        let sol = solve_cds_exact(&inst).unwrap();
        assert_eq!(sol.domset, vec![0]);
        assert_eq!(sol.objective, Weight::ONE);
    }

    #[test]
    fn pays_for_connection() {
        // Path 0-1-2-3-4, T = {0, 4}: {1, 3} plus the path 1-2-3 beats {0, 4}.
        let g = with_min_lengths(vec![Weight::ONE; 5], &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let inst = CdsInstance::new(g, [0, 4]).unwrap();
        let sol = solve_cds_exact(&inst).unwrap();
        assert_eq!(sol.objective, Weight::from_int(4));
        check_cds_solution(&inst, &sol).unwrap();
    }

    #[test]
    fn detects_undominated_terminal() {
        let g = with_min_lengths(vec![Weight::ONE; 3], &[(0, 1)]);
        let inst = CdsInstance::new(g, [0, 2]).unwrap();
        let sol = CdsSolution::new(&inst, vec![0], Tree::singleton(0));
        assert!(check_cds_solution(&inst, &sol).is_err());
        assert!(solve_cds_exact(&inst).is_err());
    }
}

mod nws {
    use vcst_core::exact::*;
    use vcst_core::graph::Graph;
    use vcst_core::num::Weight;
    use vcst_core::reductions::NwsInstance;
    use vcst_core::Error;

    #[test]
    fn picks_cheaper_route() {
        // 0 - 1 - 3 and 0 - 2 - 3 with w(1) = 5, w(2) = 2.
        let w = vec![
            Weight::ZERO,
            Weight::from_int(5),
            Weight::from_int(2),
            Weight::ZERO,
        ];
        let g = Graph::new(w, [(0, 1), (1, 3), (0, 2), (2, 3)]).unwrap();
        let inst = NwsInstance::new(g, [0, 3]).unwrap();
        assert_eq!(
            solve_nws_exact(&inst).unwrap(),
            (vec![0, 2, 3], Weight::from_int(2))
        );
        assert_eq!(
            minimal_steiner_sets(&inst).unwrap(),
            vec![vec![0, 1, 3], vec![0, 2, 3]]
        );
    }

    #[test]
    fn disconnected() {
        let g = Graph::new(vec![Weight::ZERO; 2], []).unwrap();
        let inst = NwsInstance::new(g, [0, 1]).unwrap();
        assert!(matches!(solve_nws_exact(&inst), Err(Error::Infeasible(_))));
    }
}

mod set_cover {
    use vcst_core::exact::*;
    use vcst_core::num::Weight;
    use vcst_core::Error;

    fn brute(inst: &SetCoverInstance) -> Weight {
        let k = inst.sets.len();
        (0u32..1 << k)
            .map(|m| (0..k).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|c| inst.is_cover(c))
            .map(|c| inst.weight_of(&c))
            .min()
            .unwrap_or(Weight::Infinite)
    }

    #[test]
    fn small_examples() {
        let one = SetCoverInstance::new(1, vec![vec![0]], vec![Weight::from_int(3)]).unwrap();
        assert_eq!(
            solve_set_cover_exact(&one).unwrap().weight,
            Weight::from_int(3)
        );
        let two = SetCoverInstance::new(
            2,
            vec![vec![0], vec![1], vec![0, 1]],
            vec![Weight::ONE, Weight::ONE, "1.5".parse().unwrap()],
        )
        .unwrap();
        let sol = solve_set_cover_exact(&two).unwrap();
        assert_eq!(sol.chosen, vec![2]);
        assert_eq!(sol.weight.to_string(), "1.5");
        let empty = SetCoverInstance::unweighted(0, vec![vec![]]).unwrap();
        assert_eq!(
            solve_set_cover_exact(&empty).unwrap(),
            SetCoverSolution {
                chosen: vec![],
                weight: Weight::ZERO
            }
        );
    }

    #[test]
    fn uncoverable_element() {
        let inst = SetCoverInstance::unweighted(2, vec![vec![0]]).unwrap();
        assert!(matches!(
            solve_set_cover_exact(&inst),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn agrees_with_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let u = rng.gen_range(1..10);
            let k = rng.gen_range(1..12);
            let mut sets: Vec<Vec<usize>> = (0..k)
                .map(|_| (0..u).filter(|_| rng.gen_bool(0.3)).collect())
                .collect();
            sets.push((0..u).collect());
            let weights = (0..=k)
                .map(|_| Weight::from_int(rng.gen_range(1..8)))
                .collect();
            let inst = SetCoverInstance::new(u, sets, weights).unwrap();
            let sol = solve_set_cover_exact(&inst).unwrap();
            assert!(inst.is_cover(&sol.chosen));
            assert_eq!(sol.weight, brute(&inst));
        }
    }
}

mod steiner {
    use vcst_core::exact::*;
    use vcst_core::graph::Graph;
    use vcst_core::num::Weight;
    use vcst_core::Error;

    fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(vec![Weight::ZERO; n], edges).unwrap()
    }

    #[test]
    fn two_terminals_give_shortest_path() {
        let g = Graph::new(vec![Weight::ZERO; 4], [(0, 1), (1, 2), (0, 3), (3, 2)]).unwrap();
        let l: Vec<Weight> = [1, 1, 5, 5].iter().map(|&x| Weight::from_int(x)).collect();
        // Canonical edge order: (0,1), (0,3), (1,2), (2,3).
        let l = vec![l[0], l[2], l[1], l[3]];
        let (tree, w) = solve_edge_steiner_exact(&g, &l, &[0, 2]).unwrap();
        assert_eq!(w, Weight::from_int(2));
        assert_eq!(tree.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn k4_three_terminals() {
        let g = complete(4);
        let l = vec![Weight::ONE; g.m()];
        let (tree, w) = solve_edge_steiner_exact(&g, &l, &[0, 1, 2]).unwrap();
        assert_eq!(w, Weight::from_int(2));
        tree.check().unwrap();
    }

    #[test]
    fn star_center_used_as_steiner_point() {
        let g = Graph::new(
            vec![Weight::ZERO; 5],
            [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (1, 3), (0, 4)],
        )
        .unwrap();
        let mut l = vec![Weight::from_int(4); g.m()];
        for (id, &(u, _)) in g.edges().iter().enumerate() {
            if u == 0 {
                l[id] = Weight::from_int(2);
            }
        }
        let (tree, w) = solve_edge_steiner_exact(&g, &l, &[1, 2, 3]).unwrap();
        assert_eq!(w, Weight::from_int(6));
        assert!(tree.contains(0) && !tree.contains(4));
    }

    #[test]
    fn disconnected_terminals() {
        let g = Graph::new(vec![Weight::ZERO; 3], [(0, 1)]).unwrap();
        let r = solve_edge_steiner_exact(&g, &[Weight::ONE], &[0, 2]);
        assert!(matches!(r, Err(Error::Infeasible(_))));
        let r = solve_edge_steiner_exact(&g, &[Weight::Infinite], &[0, 1]);
        assert!(matches!(r, Err(Error::Infeasible(_))));
    }
}

mod vcst {
    use vcst_core::exact::*;
    use vcst_core::graph::VcstInstance;
    use vcst_core::graph::{validate_vcst_solution, Graph};
    use vcst_core::num::Weight;
    use vcst_core::Error;

    fn uniform(n: usize, edges: &[(usize, usize)], terms: &[usize]) -> VcstInstance {
        let g = Graph::new(vec![Weight::ONE; n], edges.iter().copied()).unwrap();
        VcstInstance::new(g, terms.iter().copied()).unwrap()
    }

    #[test]
    fn path_five_spanning() {
        let inst = uniform(5, &[(0, 1), (1, 2), (2, 3), (3, 4)], &[0, 1, 2, 3, 4]);
        let sol = solve_vcst_exact(&inst).unwrap();
        assert_eq!(sol.objective, Weight::from_int(2));
        assert!(validate_vcst_solution(&inst, &sol).is_ok());
        assert_eq!(
            solve_vcst_exact_crosscheck(&inst).unwrap(),
            Weight::from_int(2)
        );
    }

    #[test]
    fn single_terminal_costs_nothing() {
        let inst = uniform(3, &[(0, 1), (1, 2)], &[1]);
        let sol = solve_vcst_exact(&inst).unwrap();
        assert_eq!(sol.objective, Weight::ZERO);
        assert!(sol.tree.edges().is_empty());
        assert!(sol.cover.is_empty());
    }

    #[test]
    fn star_with_leaf_terminals() {
        let inst = uniform(5, &[(0, 1), (0, 2), (0, 3), (0, 4)], &[1, 2, 3, 4]);
        assert_eq!(solve_vcst_exact(&inst).unwrap().cover, vec![0]);
        assert_eq!(solve_vcst_exact_crosscheck(&inst).unwrap(), Weight::ONE);
        let p3 = uniform(3, &[(0, 1), (1, 2)], &[0, 2]);
        assert_eq!(solve_vcst_exact_crosscheck(&p3).unwrap(), Weight::ONE);
    }

    #[test]
    fn disconnected_terminals_are_infeasible() {
        let inst = uniform(4, &[(0, 1), (2, 3)], &[0, 3]);
        assert!(matches!(solve_vcst_exact(&inst), Err(Error::Infeasible(_))));
        assert!(matches!(
            solve_vcst_exact_crosscheck(&inst),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn infinite_weights_are_never_covers() {
        let g = Graph::new(
            vec![Weight::Infinite, Weight::ONE, Weight::Infinite],
            [(0, 1), (1, 2)],
        )
        .unwrap();
        let inst = VcstInstance::new(g, [0, 2]).unwrap();
        let sol = solve_vcst_exact(&inst).unwrap();
        assert_eq!(sol.cover, vec![1]);
    }
}
