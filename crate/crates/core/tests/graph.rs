mod geometry {
    use vcst_core::graph::*;
    use vcst_core::graph::{build_unit_disk_graph, Point};
    use vcst_core::num::Weight;

    #[test]
    fn packing_bound_values() {
        assert_eq!(packing_bound(1.0 / 1.41).unwrap(), 12);
        assert_eq!(packing_bound(1.41 / 2.0).unwrap(), 12);
        assert_eq!(packing_bound(0.55).unwrap(), 21);
        assert!(packing_bound(0.4).is_err());
        assert!(packing_bound(0.5).is_err());
        assert!(packing_bound(0.76).is_err());
    }

    #[test]
    fn packing_bound_is_non_increasing() {
        let mut prev = u32::MAX;
        for i in 1..=250 {
            let a = 0.5 + i as f64 * 0.001;
            let b = packing_bound(a).unwrap();
            assert!(b <= prev);
            prev = b;
        }
    }

    #[test]
    fn cell_index_is_exact() {
        assert_eq!(cell_index(0), 0);
        assert_eq!(cell_index(-1), -1);
        // √2/2 ≈ 0.7071067811
        assert_eq!(cell_index(707_106), 0);
        assert_eq!(cell_index(707_107), 1);
        assert_eq!(cell_index(-707_106), -1);
        assert_eq!(cell_index(-707_107), -2);
        for m in [-5_000_000i64, -123_456, 1, 999_999, 3_535_534] {
            assert_eq!(
                cell_index(m),
                (m as f64 / 1e6 / CELL_SIDE).floor() as i64,
                "{m}"
            );
        }
    }

    #[test]
    fn corner_goes_up_right() {
        let pts = [
            Point::from_micros(0, 0),
            Point::from_micros(1, 1),
            Point::from_micros(-1, -1),
        ];
        let g = build_unit_disk_graph(&pts, vec![Weight::ONE; 3]).unwrap();
        let p = square_partition(&g).unwrap();
        assert_eq!(p.cell_of[0], p.cell_of[1]);
        assert_ne!(p.cell_of[0], p.cell_of[2]);
        assert_eq!(p.cells[p.cell_of[0]], (0, 0));
    }

    #[test]
    fn same_square_means_adjacent() {
        let pts = [
            Point::from_micros(100_000, 100_000),
            Point::from_micros(700_000, 700_000),
        ];
        let g = build_unit_disk_graph(&pts, vec![Weight::ONE; 2]).unwrap();
        let p = square_partition(&g).unwrap();
        assert_eq!(p.classes.len(), 1);
        assert!(p.classes_are_cliques(&g));
    }

    #[test]
    fn witness_found_for_close_pair() {
        let pts = [(1.0, 0.0), (1.0, 0.1), (-1.0, 0.0)];
        assert_eq!(close_pair_witness((0.0, 0.0), &pts), Some((0, 1)));
        assert_eq!(
            close_pair_witness((0.0, 0.0), &[(1.0, 0.0), (-1.0, 0.0)]),
            None
        );
    }
}

mod instance {
    use vcst_core::graph::*;
    use vcst_core::num::Weight;

    fn path3() -> VcstInstance {
        let g = Graph::new(vec![Weight::ONE; 3], [(0, 1), (1, 2)]).unwrap();
        VcstInstance::new(g, [0, 2]).unwrap()
    }

    #[test]
    fn accepts_covered_path() {
        let inst = path3();
        let sol = VcstSolution::new(&inst, Tree::from_edges([(0, 1), (1, 2)]), vec![1]);
        assert_eq!(validate_vcst_solution(&inst, &sol), Verdict::Ok);
    }

    #[test]
    fn names_the_violation() {
        let inst = path3();
        let sol = VcstSolution::new(&inst, Tree::from_edges([(0, 1), (1, 2)]), vec![]);
        assert_eq!(
            validate_vcst_solution(&inst, &sol),
            Verdict::Violation(Violation::UncoveredEdge(0, 1))
        );
        let sol = VcstSolution::new(&inst, Tree::from_edges([(0, 1)]), vec![1]);
        assert_eq!(
            validate_vcst_solution(&inst, &sol),
            Verdict::Violation(Violation::TerminalNotSpanned(2))
        );
        let sol = VcstSolution::new(&inst, Tree::from_edges([(0, 2)]), vec![0]);
        assert_eq!(
            validate_vcst_solution(&inst, &sol),
            Verdict::Violation(Violation::MissingEdge(0, 2))
        );
    }

    #[test]
    fn rejects_empty_terminal_set() {
        let g = Graph::new(vec![Weight::ONE], []).unwrap();
        assert!(VcstInstance::new(g, []).is_err());
    }
}

mod basics {
    use vcst_core::graph::*;
    use vcst_core::num::Weight;

    fn p(x: &str, y: &str) -> Point {
        Point::new(x.parse().unwrap(), y.parse().unwrap())
    }

    #[test]
    fn unit_disk_threshold_is_inclusive() {
        let w = vec![Weight::ONE; 2];
        let g = build_unit_disk_graph(&[p("0", "0"), p("0.9", "0")], w.clone()).unwrap();
        assert_eq!(g.m(), 1);
        let g = build_unit_disk_graph(&[p("0", "0"), p("0.6", "0.8")], w.clone()).unwrap();
        assert_eq!(g.m(), 1);
        let g = build_unit_disk_graph(&[p("0", "0"), p("1.01", "0")], w).unwrap();
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn rejects_loops_and_parallel_edges() {
        let w = vec![Weight::ONE; 3];
        assert!(Graph::new(w.clone(), [(0, 0)]).is_err());
        assert!(Graph::new(w.clone(), [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(w, [(0, 3)]).is_err());
    }

    #[test]
    fn lengths_must_not_exceed_endpoint_weights() {
        let g = Graph::new(vec![Weight::from_int(3), Weight::from_int(5)], [(0, 1)]).unwrap();
        assert!(g.clone().with_lengths(vec![Weight::from_int(3)]).is_ok());
        assert!(g.with_lengths(vec![Weight::from_int(4)]).is_err());
    }

    #[test]
    fn coords_checked_against_rule() {
        let pts = vec![p("0", "0"), p("1", "0"), p("3", "0")];
        let g = Graph::new(vec![Weight::ONE; 3], [(0, 1)]).unwrap();
        assert!(g.clone().with_coords(pts.clone(), true).is_ok());
        let bad = Graph::new(vec![Weight::ONE; 3], [(0, 2)]).unwrap();
        assert!(bad.with_coords(pts, true).is_err());
    }

    #[test]
    fn adjacency_queries() {
        let g = Graph::new(vec![Weight::ONE; 4], [(2, 1), (0, 1), (3, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (1, 3)]);
        assert_eq!(g.edge_id(2, 1), Some(1));
        assert_eq!(g.closed_neighborhood(1), vec![0, 1, 2, 3]);
        assert!(g.connects(&[0, 3], |_| true));
        assert!(!g.connects(&[0, 3], |v| v != 1));
    }
}

mod tree {
    use vcst_core::graph::*;
    use vcst_core::num::Weight;

    fn path(n: usize) -> Tree {
        Tree::from_edges((1..n).map(|i| (i - 1, i)))
    }

    fn brute_cover(tree: &Tree, w: &[Weight]) -> Weight {
        let vs = tree.vertices();
        let mut best = Weight::Infinite;
        for mask in 0u32..(1 << vs.len()) {
            let has = |v: Vertex| mask >> vs.binary_search(&v).unwrap() & 1 == 1;
            if tree.edges().iter().all(|&(u, v)| has(u) || has(v)) {
                let s: Weight = vs.iter().filter(|&&v| has(v)).map(|&v| w[v]).sum();
                best = best.min(s);
            }
        }
        best
    }

    #[test]
    fn path_and_star_covers() {
        let w = vec![Weight::ONE; 5];
        let (c, total) = tree_min_vertex_cover(&path(5), &w).unwrap();
        assert_eq!(total, Weight::from_int(2));
        assert_eq!(c, vec![1, 3]);
        let star = Tree::from_edges([(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(
            tree_min_vertex_cover(&star, &w).unwrap(),
            (vec![0], Weight::ONE)
        );
        assert_eq!(
            tree_min_vertex_cover(&Tree::singleton(2), &w).unwrap(),
            (vec![], Weight::ZERO)
        );
    }

    #[test]
    fn ties_exclude_the_root() {
        let w = vec![Weight::ONE; 2];
        let (c, _) = tree_min_vertex_cover(&path(2), &w).unwrap();
        assert_eq!(c, vec![1]);
    }

    #[test]
    fn rejects_non_trees() {
        let cyc = Tree::from_edges([(0, 1), (1, 2), (0, 2)]);
        assert!(tree_min_vertex_cover(&cyc, &[Weight::ONE; 3]).is_err());
        let split = Tree::from_edges([(0, 1), (2, 3)]);
        assert!(split.check().is_err());
    }

    #[test]
    fn dp_matches_exhaustive_search() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=12);
            let edges: Vec<_> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
            let tree = Tree::new(0..n, edges);
            let w: Vec<Weight> = (0..n)
                .map(|_| Weight::from_int(rng.gen_range(0..6)))
                .collect();
            let (cover, total) = tree_min_vertex_cover(&tree, &w).unwrap();
            assert_eq!(total, brute_cover(&tree, &w));
            assert_eq!(cover.iter().map(|&v| w[v]).sum::<Weight>(), total);
        }
    }

    #[test]
    fn cover_degree_examples() {
        let star = Tree::from_edges([(0, 1), (0, 2), (0, 3)]);
        assert_eq!(cover_degree(&star, &[0]).unwrap(), 0);
        assert_eq!(cover_degree(&path(5), &[1, 3]).unwrap(), 1);
        assert_eq!(cover_degree(&path(3), &[1]).unwrap(), 0);
        assert!(cover_degree(&path(3), &[0]).is_err());
    }

    #[test]
    fn pruning_keeps_minimal_subtree() {
        let t = Tree::from_edges([(0, 1), (1, 2), (2, 3), (1, 4)]);
        let p = t.pruned(|v| v == 0 || v == 2);
        assert_eq!(p.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(t.pruned(|v| v == 3).vertices(), &[3]);
    }
}
