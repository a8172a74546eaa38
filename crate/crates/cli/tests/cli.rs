use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn sparsenet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sparsenet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn generate_build_measure_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let (p, g) = (path(dir.path(), "p.txt"), path(dir.path(), "g.txt"));
    assert!(sparsenet(&["generate", "circle", "--n", "4", "--out", &p])
        .status
        .success());
    assert_eq!(fs::read_to_string(&p).unwrap().lines().next(), Some("2 4"));

    let o = sparsenet(&[
        "build", "--algo", "sparse2d", "--k", "0", "--points", &p, "--out", &g,
    ]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&g).unwrap(), "4 3\n0 1\n0 3\n1 2\n");

    let o = sparsenet(&["measure", "--points", &p, "--graph", &g]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o);
    let value: f64 = line
        .strip_prefix("dilation=")
        .unwrap()
        .split(' ')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!((value - 3.0).abs() < 1e-9, "{line}");
    assert!(line.trim_end().ends_with("pair=(2,3) edges=3"), "{line}");
}

#[test]
fn every_family_and_builder() {
    let dir = tempfile::tempdir().unwrap();
    let p = path(dir.path(), "p.txt");
    for args in [
        vec!["circle", "--n", "12"],
        vec!["multicircle", "--n", "30", "--k", "2"],
        vec!["convexrect", "--n", "22"],
        vec!["gridsquares", "--r", "8", "--m", "2", "--n", "40"],
        vec!["random", "--n", "25", "--dim", "2", "--seed", "9"],
    ] {
        let mut full = vec!["generate"];
        full.extend(&args);
        full.extend(["--out", &p]);
        assert!(sparsenet(&full).status.success(), "{args:?}");
        for algo in ["sparse2d", "highd", "spread"] {
            let o = sparsenet(&["build", "--algo", algo, "--k", "3", "--points", &p]);
            assert!(o.status.success(), "{algo} on {args:?}");
            let text = stdout(&o);
            let header: Vec<usize> = text
                .lines()
                .next()
                .unwrap()
                .split(' ')
                .map(|v| v.parse().unwrap())
                .collect();
            assert!(header[1] + 1 >= header[0] && header[1] <= header[0] + 2);
        }
    }
}

#[test]
fn generation_is_reproducible() {
    let a = sparsenet(&[
        "generate", "random", "--n", "50", "--dim", "3", "--seed", "5",
    ]);
    let b = sparsenet(&[
        "--workers",
        "4",
        "generate",
        "random",
        "--n",
        "50",
        "--dim",
        "3",
        "--seed",
        "5",
    ]);
    assert_eq!(a.stdout, b.stdout);
    let c = sparsenet(&["generate", "random", "--n", "50", "--dim", "3"]);
    let d = sparsenet(&[
        "generate", "random", "--n", "50", "--dim", "3", "--seed", "0",
    ]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn measure_is_worker_independent() {
    let dir = tempfile::tempdir().unwrap();
    let (p, g) = (path(dir.path(), "p.txt"), path(dir.path(), "g.txt"));
    sparsenet(&[
        "generate", "random", "--n", "120", "--seed", "2", "--out", &p,
    ]);
    sparsenet(&[
        "build", "--algo", "highd", "--k", "7", "--points", &p, "--out", &g,
    ]);
    let one = sparsenet(&["--workers", "1", "measure", "--points", &p, "--graph", &g]);
    let four = sparsenet(&["--workers", "4", "measure", "--points", &p, "--graph", &g]);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn usage_and_format_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let (p, bad) = (path(dir.path(), "p.txt"), path(dir.path(), "bad.txt"));
    sparsenet(&["generate", "random", "--n", "10", "--out", &p]);
    fs::write(&bad, "10 1\n0 0\n").unwrap();
    assert_eq!(
        sparsenet(&["measure", "--points", &p, "--graph", &bad])
            .status
            .code(),
        Some(2)
    );
    fs::write(&bad, "2 2\n0 0\n1\n").unwrap();
    assert_eq!(
        sparsenet(&["build", "--algo", "highd", "--points", &bad])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        sparsenet(&["build", "--algo", "sparse2d", "--k", "99", "--points", &p])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(sparsenet(&["generate", "hexagon"]).status.code(), Some(2));
    assert_eq!(
        sparsenet(&["measure", "--points", "/nonexistent", "--graph", &p])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(sparsenet(&[]).status.code(), Some(2));
}

#[test]
fn disconnected_graph_is_an_invariant_violation() {
    let dir = tempfile::tempdir().unwrap();
    let (p, g) = (path(dir.path(), "p.txt"), path(dir.path(), "g.txt"));
    sparsenet(&["generate", "circle", "--n", "5", "--out", &p]);
    fs::write(&g, "5 2\n0 1\n2 3\n").unwrap();
    let o = sparsenet(&["measure", "--points", &p, "--graph", &g]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("dilation=inf"));
}

#[test]
fn bench_csv() {
    let o = sparsenet(&[
        "bench",
        "--n",
        "20,30",
        "--k",
        "0,2",
        "--algo",
        "sparse2d,spread",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n,k,algo,edges,max_degree,dilation,seconds")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 8);
    assert!(rows[0].starts_with("20,0,sparse2d,19,"));
    for r in rows {
        assert_eq!(r.split(',').count(), 7);
    }
    let three_d = sparsenet(&["bench", "--n", "20", "--k", "1", "--dim", "3"]);
    assert_eq!(
        stdout(&three_d).lines().count(),
        3,
        "planar builder skipped in 3D"
    );
}

#[test]
fn svg_export() {
    let dir = tempfile::tempdir().unwrap();
    let (p, g, s) = (
        path(dir.path(), "p.txt"),
        path(dir.path(), "g.txt"),
        path(dir.path(), "out.svg"),
    );
    sparsenet(&["generate", "circle", "--n", "6", "--out", &p]);
    sparsenet(&["build", "--algo", "spread", "--points", &p, "--out", &g]);
    assert!(
        sparsenet(&["export-svg", "--points", &p, "--graph", &g, "--out", &s])
            .status
            .success()
    );
    let svg = fs::read_to_string(&s).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<circle").count(), 6 + 2);
    assert_eq!(svg.matches("<line").count(), 5 + 1);
    assert!(svg.contains("stroke=\"red\""));

    sparsenet(&["generate", "random", "--n", "6", "--dim", "3", "--out", &p]);
    sparsenet(&["build", "--algo", "highd", "--points", &p, "--out", &g]);
    assert_eq!(
        sparsenet(&["export-svg", "--points", &p, "--graph", &g])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_lemmas_table() {
    let o = sparsenet(&["verify", "--suite", "lemmas"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    let header = text.lines().next().unwrap();
    for col in ["kind", "params", "analytic", "measured", "result"] {
        assert!(header.contains(col));
    }
    assert!(text.contains("[pass]  9 inscribed triangle"));
    assert!(!text.contains("FAIL"));
}
