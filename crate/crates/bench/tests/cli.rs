use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn warmstart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_warmstart"))
        .args(args)
        .env_remove("WARMSTART_SEED")
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_matching_prints_cost_and_counters() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "m.txt",
        "p bipartite 2 2 4\ne 1 1 1\ne 1 2 2\ne 2 1 2\ne 2 2 1\n",
    );
    let o = warmstart(&["solve-matching", "--input", &f]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("s 2\n"), "{s}");
    assert!(s.contains("m 1 1\n") && s.contains("m 2 2\n"));
    assert!(s.contains("c while_iterations"));

    let p = write(dir.path(), "p.txt", "h 1 1\nh 2 1\n");
    let o = warmstart(&["solve-matching", "--input", &f, "--prediction", &p]);
    assert!(stdout(&o).contains("c while_iterations 0\n"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let none = write(dir.path(), "n.txt", "p bipartite 2 2 2\ne 1 1 1\ne 2 1 1\n");
    assert_eq!(
        warmstart(&["solve-matching", "--input", &none])
            .status
            .code(),
        Some(1)
    );
    let cyc = write(dir.path(), "c.txt", "p sp 2 2\na 1 2 -1\na 2 1 -1\n");
    assert_eq!(warmstart(&["sssp", "--input", &cyc]).status.code(), Some(1));
    assert_eq!(
        warmstart(&["reduce", "sp", "--input", &cyc]).status.code(),
        Some(1)
    );
    let bad = write(dir.path(), "b.txt", "p sp 2 1\nq 1 2 3\n");
    let o = warmstart(&["apsp", "--input", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(
        warmstart(&["apsp", "--input", "/no/such/file"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        warmstart(&["bench", "--kind", "matching", "--n", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(warmstart(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn shortest_path_commands() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(
        dir.path(),
        "g.txt",
        "p sp 3 3\na 1 2 -2\na 2 3 3\na 3 1 4\n",
    );
    assert_eq!(
        stdout(&warmstart(&["sssp", "--input", &g]))
            .lines()
            .take(3)
            .collect::<Vec<_>>(),
        ["d 1 0", "d 2 -2", "d 3 1"]
    );
    assert_eq!(stdout(&warmstart(&["diameter", "--input", &g])), "7\n");
    let table = stdout(&warmstart(&["apsp", "--input", &g]));
    assert!(table.starts_with("0 -2 1\n"));
    let rounded = stdout(&warmstart(&["round-duals", "--input", &g]));
    assert!(rounded.contains("h 2 -2\n"));
}

#[test]
fn maxflow_and_reductions() {
    let dir = tempfile::tempdir().unwrap();
    let net = write(
        dir.path(),
        "f.txt",
        "p max 4 5 1 4\na 1 2 1 2\na 2 4 1 2\na 1 3 1 1\na 3 4 1 1\na 2 3 1 0\n",
    );
    let o = stdout(&warmstart(&["maxflow", "--input", &net]));
    assert!(o.starts_with("s 2\n"), "{o}");
    let pre = write(dir.path(), "pf.txt", "f 1 2 1\nf 2 4 1\n");
    assert!(stdout(&warmstart(&[
        "maxflow",
        "--input",
        &net,
        "--prediction",
        &pre
    ]))
    .starts_with("s 2\n"));

    let target = dir.path().join("target.txt");
    let o = warmstart(&[
        "reduce",
        "flow01",
        "--input",
        &net,
        "--value",
        "1",
        "--emit-target",
        target.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("s 2\n"));
    assert!(fs::read_to_string(&target)
        .unwrap()
        .starts_with("p bipartite"));
    assert_eq!(
        warmstart(&["reduce", "flow01", "--input", &net])
            .status
            .code(),
        Some(2)
    );

    let b = write(
        dir.path(),
        "b.txt",
        "p bmatch 2 2 3\ne 1 1 5\ne 1 2 1\ne 2 2 3\nd 1 1\nd 2 1\nd 3 1\nd 4 1\n",
    );
    let o = stdout(&warmstart(&["reduce", "dcs", "--input", &b]));
    assert!(o.starts_with("s 8\n"), "{o}");
    let o = stdout(&warmstart(&["solve-bmatching", "--input", &b]));
    assert!(o.starts_with("s 8\n"), "{o}");
}

#[test]
fn verify_command() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "m.txt",
        "p bipartite 2 2 4\ne 1 1 1\ne 1 2 2\ne 2 1 2\ne 2 2 1\n",
    );
    let o = warmstart(&["verify", "--input", &m]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("agree"));
    assert_eq!(
        warmstart(&["verify", "--input", &m, "--oracle", "edmonds-karp"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn gen_writes_parseable_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fam");
    let o = warmstart(&[
        "gen",
        "--kind",
        "sp",
        "--n",
        "5",
        "--steps",
        "3",
        "--sigma",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    for k in 1..=3 {
        let text = fs::read_to_string(out.join(format!("step-{k:03}.txt"))).unwrap();
        assert!(warmstart_bench::parse_instance(&text).is_ok());
    }
}

#[test]
fn bench_csv_is_deterministic_and_seed_env_applies() {
    let args = [
        "bench", "--kind", "matching", "--n", "5", "--steps", "3", "--sigma", "1",
    ];
    let a = warmstart(&args);
    let b = warmstart(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let csv = stdout(&a);
    assert!(csv.starts_with("instance_id,kind,n,m,predictor_name,l0,l1,linf,"));
    assert!(csv.contains("matching-s1-seed1-t1,matching,5,25,none,,,,"));

    let env = Command::new(env!("CARGO_BIN_EXE_warmstart"))
        .args(args)
        .env("WARMSTART_SEED", "7")
        .output()
        .unwrap();
    assert!(String::from_utf8(env.stdout)
        .unwrap()
        .contains("matching-s1-seed7-t1"));

    let only = stdout(&warmstart(&[
        "bench",
        "--kind",
        "flow",
        "--n",
        "5",
        "--steps",
        "2",
        "--predictor",
        "none",
    ]));
    assert_eq!(only.lines().count(), 3);
}
