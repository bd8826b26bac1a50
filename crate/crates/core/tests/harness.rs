mod generate {
    use vcst_core::graph::Graph;
    use vcst_core::harness::generate::*;
    use vcst_core::num::Fixed;
    use vcst_core::num::Weight;

    #[test]
    fn same_seed_same_file() {
        let p = GenerateParams {
            n: Some(12),
            connected: true,
            max_weight: Some(5),
            ..Default::default()
        };
        let a = generate(Family::RandomUdg, &p, 7).unwrap().to_json();
        let b = generate(Family::RandomUdg, &p, 7).unwrap().to_json();
        assert_eq!(a, b);
        assert_ne!(a, generate(Family::RandomUdg, &p, 8).unwrap().to_json());
    }

    #[test]
    fn grid_gadget_size() {
        let p = GenerateParams {
            width: Some(2),
            height: Some(2),
            ..Default::default()
        };
        let f = generate(Family::GridGadget, &p, 1).unwrap();
        assert_eq!(f.size().0, 4 + 3 * 4);
    }

    #[test]
    fn planar_graph_is_triangulated() {
        let mut rng = rng_for(3);
        let g = random_planar_graph(&mut rng, 12, WeightMode::Uniform).unwrap();
        assert!(g.m() <= 3 * 12 - 6);
        assert!(g.m() >= 12 - 1);
    }

    #[test]
    fn activation_tables_are_monotone() {
        let mut rng = rng_for(5);
        let g = Graph::new(vec![Weight::ZERO; 3], [(0, 1), (1, 2)]).unwrap();
        let levels = [0, 1, 3].map(Fixed::from_int).to_vec();
        let inst = random_activation(&mut rng, g, vec![0, 2], levels).unwrap();
        assert!(inst.is_monotone());
    }
}

mod io {
    use vcst_core::exact::SetCoverInstance;
    use vcst_core::graph::Graph;
    use vcst_core::harness::generate::{
        generate, random_activation, random_grid, rng_for, Family, GenerateParams,
    };
    use vcst_core::harness::io::{InstanceFile, ProblemKind};
    use vcst_core::num::{Fixed, Weight};
    use vcst_core::reductions::NwsInstance;
    use vcst_core::Error;

    fn round_trip(file: &InstanceFile) {
        let text = file.to_json();
        let back: InstanceFile = text.parse().unwrap();
        assert_eq!(&back, file);
        assert_eq!(back.to_json(), text, "reserialization is byte-stable");
    }

    #[test]
    fn generated_families_round_trip() {
        let p = GenerateParams {
            n: Some(9),
            side: Some(2.0),
            max_weight: Some(4),
            terminals: Some(3),
            connected: true,
            ..Default::default()
        };
        for family in [
            Family::RandomUdg,
            Family::RandomPlanar,
            Family::GridGadget,
            Family::SetcoverGadget,
        ] {
            round_trip(&generate(family, &p, 5).unwrap());
        }
        let cds = GenerateParams { cds: true, ..p };
        let f = generate(Family::RandomUdg, &cds, 5).unwrap();
        assert_eq!(f.kind, ProblemKind::Cds);
        round_trip(&f);
    }

    #[test]
    fn other_kinds_round_trip() {
        let g = Graph::new(
            vec![
                Weight::ZERO,
                Weight::from_int(2),
                Weight::Infinite,
                Weight::ZERO,
            ],
            [(0, 1), (1, 3), (0, 2), (2, 3)],
        )
        .unwrap();
        let nws = InstanceFile::from_nws(&NwsInstance::new(g.clone(), [0, 3]).unwrap());
        round_trip(&nws);
        assert_eq!(nws.to_nws().unwrap().graph().weight(2), Weight::Infinite);

        let act = random_activation(
            &mut rng_for(1),
            g,
            vec![0, 3],
            vec![Fixed::from_int(0), Fixed::from_int(2)],
        )
        .unwrap();
        let f = InstanceFile::from_activation(&act);
        round_trip(&f);
        assert_eq!(f.to_activation().unwrap(), act);

        let sc = SetCoverInstance::new(
            3,
            vec![vec![0, 1], vec![2]],
            vec![Weight::from_int(2), Weight::ONE],
        )
        .unwrap();
        let f = InstanceFile::from_set_cover(&sc);
        round_trip(&f);
        assert_eq!(f.to_set_cover().unwrap(), sc);

        let grid = random_grid(3, 3, 2, 4, 2).unwrap();
        let f = InstanceFile::from_grid(&grid);
        round_trip(&f);
        assert_eq!(f.to_grid().unwrap(), grid);
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("i.json");
        let f = generate(Family::RandomPlanar, &GenerateParams::default(), 2).unwrap();
        f.save(&path).unwrap();
        let once = InstanceFile::load(&path).unwrap();
        once.save(&path).unwrap();
        assert_eq!(InstanceFile::load(&path).unwrap(), once);
        assert_eq!(once, f);
    }

    #[test]
    fn malformed_files_are_rejected() {
        let good = generate(Family::RandomPlanar, &GenerateParams::default(), 2)
            .unwrap()
            .to_json();
        let cases = [
            good.replace("\"schema\": 1", "\"schema\": 9"),
            good.replace("\"kind\"", "\"extra\": 1, \"kind\""),
            good.replace("\"weight\": \"", "\"weight\": \"-"),
            "{".to_string(),
        ];
        for text in cases {
            assert!(
                matches!(
                    text.parse::<InstanceFile>(),
                    Err(Error::Parse(_) | Error::InvalidInstance(_))
                ),
                "{text}"
            );
        }
        let bad_terminal = good.replacen("\"terminals\": [", "\"terminals\": [99, ", 1);
        assert!(bad_terminal.parse::<InstanceFile>().is_err());
    }

    #[test]
    fn kind_mismatch_is_reported() {
        let f = generate(Family::RandomPlanar, &GenerateParams::default(), 2).unwrap();
        assert!(f.to_cds().is_err());
        assert!(f.to_set_cover().is_err());
    }
}

mod solve {
    use vcst_core::harness::generate::{generate, Family, GenerateParams};
    use vcst_core::harness::solve::{solve_instance, Algorithm, SolveOptions};
    use vcst_core::Error;

    fn planar() -> vcst_core::harness::io::InstanceFile {
        let p = GenerateParams {
            n: Some(8),
            max_weight: Some(5),
            terminals: Some(3),
            ..Default::default()
        };
        generate(Family::RandomPlanar, &p, 11).unwrap()
    }

    fn udg() -> vcst_core::harness::io::InstanceFile {
        let p = GenerateParams {
            n: Some(9),
            side: Some(2.0),
            max_weight: Some(5),
            terminals: Some(3),
            connected: true,
            ..Default::default()
        };
        generate(Family::RandomUdg, &p, 11).unwrap()
    }

    #[test]
    fn every_applicable_algorithm_certifies() {
        let f = udg();
        for alg in [
            Algorithm::Exact,
            Algorithm::CdsLp,
            Algorithm::PdPlanar,
            Algorithm::ActivationExact,
        ] {
            let mut o = SolveOptions::new(alg);
            o.compute_opt = true;
            let out = solve_instance(&f, &o).unwrap();
            let (passed, total) = out.certificates_passed();
            assert_eq!(passed, total, "{alg:?}: {:?}", out.solution.certificates);
            assert!(out.ratio().unwrap() >= 1.0);
        }
    }

    #[test]
    fn exact_ratio_is_one() {
        let mut o = SolveOptions::new(Algorithm::Exact);
        o.compute_opt = true;
        assert_eq!(solve_instance(&planar(), &o).unwrap().ratio(), Some(1.0));
    }

    #[test]
    fn inapplicable_pairs_are_wrong_variant() {
        let r = solve_instance(&planar(), &SolveOptions::new(Algorithm::CdsSpanning));
        assert!(matches!(r, Err(Error::WrongVariant(_))));
    }

    #[test]
    fn exports_lp_and_trace() {
        let dir = tempfile::tempdir().unwrap();
        let mut o = SolveOptions::new(Algorithm::CdsLp);
        o.export_lp = Some(dir.path().join("m.lp"));
        solve_instance(&udg(), &o).unwrap();
        let lp = std::fs::read_to_string(dir.path().join("m.lp")).unwrap();
        assert!(
            lp.contains("Minimize") && lp.contains("Subject To") && lp.trim_end().ends_with("End")
        );

        let mut o = SolveOptions::new(Algorithm::PdPlanar);
        o.trace = Some(dir.path().join("t.json"));
        solve_instance(&planar(), &o).unwrap();
        let trace: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(dir.path().join("t.json")).unwrap())
                .unwrap();
        assert!(trace.get("events").is_some());
    }
}

mod bench {
    use vcst_core::harness::bench::{append_rows, bench, BenchRow, CSV_COLUMNS};
    use vcst_core::harness::generate::{generate, Family, GenerateParams};
    use vcst_core::harness::solve::{Algorithm, SolveOptions};

    #[test]
    fn rows_follow_input_order_and_header_is_written_once() {
        let dir = tempfile::tempdir().unwrap();
        let p = GenerateParams {
            n: Some(7),
            max_weight: Some(3),
            terminals: Some(3),
            ..Default::default()
        };
        let files: Vec<_> = (0..3)
            .map(|s| {
                let path = dir.path().join(format!("p{s}.json"));
                generate(Family::RandomPlanar, &p, s)
                    .unwrap()
                    .save(&path)
                    .unwrap();
                path
            })
            .collect();
        let opts = [
            SolveOptions::new(Algorithm::Exact),
            SolveOptions::new(Algorithm::PdPlanar),
        ];
        let runs = bench(&files, &opts).unwrap();
        assert_eq!(runs.len(), 6);
        let ids: Vec<String> = runs
            .iter()
            .map(|(_, a, r)| format!("{}:{a}", r.as_ref().unwrap().instance_id))
            .collect();
        assert_eq!(
            ids[..2],
            ["p0:exact".to_string(), "p0:pd-planar".to_string()]
        );
        let rows: Vec<BenchRow> = runs.into_iter().map(|(_, _, r)| r.unwrap()).collect();
        let csv = dir.path().join("out.csv");
        append_rows(&csv, &rows).unwrap();
        append_rows(&csv, &rows).unwrap();
        let text = std::fs::read_to_string(&csv).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_COLUMNS.join(","));
        assert_eq!(lines.len(), 1 + 12);
        assert_eq!(
            lines
                .iter()
                .filter(|l| l.starts_with("instance_id"))
                .count(),
            1
        );
    }
}

mod verify {
    use vcst_core::harness::verify::{run_named, Suite};

    #[test]
    fn suites_parse_and_name_their_checks() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert!(!s.checks().is_empty());
        }
        assert!("nope".parse::<Suite>().is_err());
        assert!(run_named("nope").is_none());
    }

    #[test]
    fn quick_checks_pass() {
        for name in [
            "packing-constants",
            "close-pair-property",
            "gadget-equalities",
        ] {
            let r = run_named(name).unwrap();
            assert!(r.passed, "{r}");
        }
    }
}
