use std::path::Path;
use std::process::{Command, Output};

fn vcst(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vcst"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn generate_solve_bench_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let gen = vcst(
        d,
        &[
            "generate",
            "--family",
            "random-udg",
            "--seed",
            "4",
            "--n",
            "9",
            "--box",
            "2",
            "--max-weight",
            "4",
            "--terminals",
            "3",
            "--connected",
            "-o",
            "a.json",
        ],
    );
    assert_eq!(code(&gen), 0, "{}", String::from_utf8_lossy(&gen.stderr));

    let solve = vcst(
        d,
        &[
            "solve",
            "a.json",
            "--algorithm",
            "cds-lp",
            "--all-roots",
            "--backend",
            "exact",
            "--opt",
            "--export-lp",
            "a.lp",
            "--bench",
            "runs.csv",
        ],
    );
    assert_eq!(
        code(&solve),
        0,
        "{}",
        String::from_utf8_lossy(&solve.stderr)
    );
    let sol: serde_json::Value = serde_json::from_slice(&solve.stdout).unwrap();
    assert_eq!(sol["algorithm"], "cds-lp");
    assert!(sol["certificates"]
        .as_object()
        .unwrap()
        .values()
        .all(|v| v == true));
    assert!(d.join("a.lp").exists());

    let gen = vcst(
        d,
        &[
            "generate",
            "--family",
            "random-planar",
            "--seed",
            "1",
            "--count",
            "3",
            "--n",
            "8",
            "--max-weight",
            "5",
            "--terminals",
            "3",
            "-o",
            "planar",
        ],
    );
    assert_eq!(code(&gen), 0);
    let bench = vcst(
        d,
        &[
            "bench",
            "planar/random-planar-1.json",
            "planar/random-planar-2.json",
            "planar/random-planar-3.json",
            "--algorithm",
            "exact",
            "--algorithm",
            "pd-planar",
            "--opt",
            "--bench",
            "runs.csv",
        ],
    );
    assert_eq!(
        code(&bench),
        0,
        "{}",
        String::from_utf8_lossy(&bench.stderr)
    );
    let csv = std::fs::read_to_string(d.join("runs.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "instance_id,n,m,kind,algorithm,objective,opt,ratio,certs,wall_ms"
    );
    assert_eq!(lines.len(), 1 + 1 + 6);
}

#[test]
fn trace_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(
        code(&vcst(
            d,
            &[
                "generate",
                "--family",
                "random-planar",
                "--seed",
                "2",
                "--n",
                "9",
                "-o",
                "p.json",
                "--terminals",
                "4"
            ]
        )),
        0
    );
    let o = vcst(
        d,
        &[
            "solve",
            "p.json",
            "--algorithm",
            "pd-planar",
            "--trace",
            "t.json",
            "-o",
            "s.json",
        ],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let t: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(d.join("t.json")).unwrap()).unwrap();
    assert!(t["events"].is_array());
    assert!(d.join("s.json").exists());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&vcst(d, &["solve", "missing.json"])), 2);
    assert_eq!(code(&vcst(d, &["solve"])), 2);
    assert_eq!(code(&vcst(d, &["frobnicate"])), 2);

    // Terminals 0 and 2 with no path between them.
    let disconnected = r#"{"schema": 1, "kind": "vcst", "graph": {"vertices": [{"weight": "1"}, {"weight": "1"}, {"weight": "1"}], "edges": [{"u": 0, "v": 1}]}, "terminals": [0, 2]}"#;
    std::fs::write(d.join("d.json"), disconnected).unwrap();
    let o = vcst(d, &["solve", "d.json"]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));

    assert_eq!(
        code(&vcst(
            d,
            &["generate", "--family", "random-planar", "-o", "p.json"]
        )),
        0
    );
    assert_eq!(
        code(&vcst(
            d,
            &["solve", "p.json", "--algorithm", "cds-spanning"]
        )),
        2
    );
    assert_eq!(
        code(&vcst(d, &["solve", "p.json", "--algorithm", "nope"])),
        2
    );
}

#[test]
fn verify_single_check() {
    let dir = tempfile::tempdir().unwrap();
    let o = vcst(dir.path(), &["verify", "--check", "packing-constants"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("PASS geometry/packing-constants"));
    let o = vcst(dir.path(), &["verify", "--suite", "geometry", "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().count(), 3);
    assert_eq!(code(&vcst(dir.path(), &["verify", "--check", "nope"])), 2);
}

#[test]
fn workers_env_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(
        code(&vcst(
            d,
            &[
                "generate",
                "--family",
                "grid-gadget",
                "--seed",
                "3",
                "-o",
                "g.json"
            ]
        )),
        0
    );
    let o = Command::new(env!("CARGO_BIN_EXE_vcst"))
        .current_dir(d)
        .env("VCST_WORKERS", "1")
        .args([
            "bench",
            "g.json",
            "--algorithm",
            "exact",
            "--bench",
            "b.csv",
        ])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
}
