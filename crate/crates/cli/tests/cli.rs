use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symsplit::apps::graph::{AdjacencyMatrix, ConjugationAction};
use symsplit::{verify, GroupAction, Permutation};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symsplit"))
        .args(args)
        .output()
        .expect("spawn symsplit")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_graph(dir: &Path, name: &str, g: &AdjacencyMatrix) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, g.to_edge_list()).unwrap();
    path
}

#[test]
fn plan_examples() {
    let o = run(&["plan", "--n", "7"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(
        text.contains("k=4 ell=3 |A|=70 |B|=72 ratio=1.01419"),
        "{text}"
    );

    let o = run(&["plan", "--n", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["ratio"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-12);

    let o = run(&["plan", "--n", "28", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["ratio"].as_f64().unwrap() - 1.2883).abs() < 1e-3);
    assert_eq!(v["kind"], "subgroup_transversal");
}

#[test]
fn invalid_arguments_exit_with_usage() {
    for args in [
        &["plan", "--n", "0"][..],
        &["plan"][..],
        &["enum", "--n", "3", "--limit", "0"][..],
        &["enum", "--n", "3", "--which", "cosets"][..],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(3), "{args:?}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains("Usage"), "{err}");
    }
}

#[test]
fn enum_examples() {
    let o = run(&["enum", "--n", "3", "--which", "transversal"]);
    assert_eq!(stdout(&o), "1 2 3\n1 3 2\n3 1 2\n");
    let o = run(&["enum", "--n", "4", "--which", "subgroup"]);
    assert_eq!(stdout(&o).lines().count(), 4);
    let o = run(&["enum", "--n", "1"]);
    assert_eq!(stdout(&o), "1\n");
    let o = run(&["enum", "--n", "12", "--limit", "5"]);
    assert_eq!(stdout(&o).lines().count(), 5);
}

#[test]
fn table_rows() {
    let o = run(&["table", "--max-n", "30", "--json"]);
    let rows: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows.len(), 30);
    assert!((rows[1]["ratio"].as_f64().unwrap() - std::f64::consts::SQRT_2).abs() < 1e-12);
    assert!((rows[27]["ratio"].as_f64().unwrap() - 1.2883).abs() < 1e-3);
    assert!((rows[29]["running_mean"].as_f64().unwrap() - 1.1201).abs() < 1e-3);
    let text = stdout(&run(&["table"]));
    assert!(text.contains("average over n=1..30: 1.1201"), "{text}");
}

#[test]
fn gi_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write_graph(dir.path(), "p4", &AdjacencyMatrix::path(4));
    let o = run(&["gi", p4.to_str().unwrap(), p4.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("1 2 3 4\nVERIFIED\n"), "{text}");

    let k3 = write_graph(dir.path(), "k3", &AdjacencyMatrix::complete(3));
    let p3 = write_graph(dir.path(), "p3", &AdjacencyMatrix::path(3));
    let o = run(&["gi", k3.to_str().unwrap(), p3.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("non-isomorphic"));

    let c5 = write_graph(dir.path(), "c5", &AdjacencyMatrix::cycle(5));
    let p5 = write_graph(dir.path(), "p5", &AdjacencyMatrix::path(5));
    let o = run(&[
        "gi",
        c5.to_str().unwrap(),
        p5.to_str().unwrap(),
        "--randomized",
        "3",
        "--seed",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("unknown"));

    let bad = dir.path().join("bad");
    std::fs::write(&bad, "3\n1 2\n2 x\n").unwrap();
    let o = run(&["gi", bad.to_str().unwrap(), p3.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    let o = run(&[
        "gi",
        p4.to_str().unwrap(),
        p4.to_str().unwrap(),
        "--budget-bytes",
        "16",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn gi_scrambled_pair_is_verified_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let m = AdjacencyMatrix::random(7, 0.5, &mut rng);
    let mut images: Vec<usize> = (0..7).collect();
    images.shuffle(&mut rng);
    let g = Permutation::from_images(images).unwrap();
    let act = ConjugationAction::new(7);
    let n = act.apply(&g, &m);
    let mp = write_graph(dir.path(), "m", &m);
    let np = write_graph(dir.path(), "n", &n);
    let args = [mp.to_str().unwrap(), np.to_str().unwrap()];

    let o = run(&["gi", args[0], args[1]]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    let w: Permutation = lines.next().unwrap().parse().unwrap();
    assert_eq!(lines.next(), Some("VERIFIED"));
    assert!(verify(&act, &m, &n, &w));

    let again = run(&["gi", args[0], args[1]]);
    assert_eq!(o.stdout, again.stdout);

    let j1 = run(&["gi", args[0], args[1], "--json", "--threads", "1"]);
    let j4 = run(&["gi", args[0], args[1], "--json", "--threads", "4"]);
    assert_eq!(j1.stdout, j4.stdout);
    let v: serde_json::Value = serde_json::from_slice(&j1.stdout).unwrap();
    assert_eq!(v["verdict"], "found");
    assert_eq!(v["verified"], true);

    let o = run(&["gi", args[0], args[1], "--entries", "24"]);
    assert_eq!(o.status.code(), Some(0));
}
