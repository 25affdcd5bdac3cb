use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use centerkit::{AnyInstance, SupplierInstance};
use centerkit_cli::report::{RunReport, STATUS_PARSE_ERROR};

fn centerkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_centerkit")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(stdout(out).trim()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_is_deterministic() {
    let a = centerkit(&["gen", "line", "--seed", "1", "--n", "6"]);
    let b = centerkit(&["gen", "line", "--seed", "1", "--n", "6"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(matches!(AnyInstance::from_json(&stdout(&a)).unwrap(), AnyInstance::Line(_)));
}

#[test]
fn gen_supplier_is_schema_valid() {
    let out = centerkit(&["gen", "supplier", "--seed", "2", "--clients", "8", "--facilities", "5", "--dim", "2"]);
    let inst = SupplierInstance::from_json(&stdout(&out)).unwrap();
    assert_eq!((inst.clients().len(), inst.facilities().len(), inst.dim()), (8, 5, 2));
}

#[test]
fn gen_rejects_empty_line() {
    let out = centerkit(&["gen", "line", "--seed", "1", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solvers_report_exact_radii() {
    let dir = tempfile::tempdir().unwrap();
    let line = dir.path().join("line.json");
    fs::write(&line, r#"{"points":["0","0.5","1.5","2"],"matroid":{"type":"uniform","rank":1}}"#).unwrap();
    let v = json(&centerkit(&["solve-line", "--instance", path(&line)]));
    assert_eq!(v["status"], "solved");
    assert_eq!(v["candidate_radius"], "1");
    let v = json(&centerkit(&["oracle", "--instance", path(&line)]));
    assert_eq!(v["opt_sq"], "9/4");
    let v = json(&centerkit(&["solve-line", "--instance", path(&line), "--radius", "1/4"]));
    assert_eq!(v["status"], "infeasible_at_radius");

    let sup = dir.path().join("sup.json");
    fs::write(&sup, r#"{"dim":2,"clients":[["0","0"],["10","0"]],"facilities":[["1","0"]],"k":1,"p":1}"#).unwrap();
    let v = json(&centerkit(&["solve-supplier", "--instance", path(&sup)]));
    assert_eq!(v["status"], "solved");
    assert_eq!(v["sq_radius"], "1");
    assert_eq!(v["covered"], 1);
    let v = json(&centerkit(&["solve-baseline", "--algo", "ksupplier", "--instance", path(&sup)]));
    assert_eq!(v["sq_radius"], "81");
    let v = json(&centerkit(&["solve-supplier", "--instance", path(&sup), "--sq-radius", "1/2"]));
    assert_eq!(v["status"], "infeasible_at_radius");
}

#[test]
fn iteration_cap_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let sup = dir.path().join("sup.json");
    fs::write(&sup, r#"{"dim":1,"clients":[["0"]],"facilities":[["0"]],"k":1,"p":1}"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_centerkit"))
        .args(["solve-supplier", "--instance", path(&sup)])
        .env("CENTERKIT_MAX_ITERS", "0")
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap of 0"));
}

#[test]
fn edge_cover_with_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    fs::write(&g, r#"{"vertices":[{"w":2},{"w":5},{"w":1},{"w":4}],"edges":[[0,1],[1,1],[2,3],[3,3]]}"#).unwrap();
    let v = json(&centerkit(&["edge-cover", "--graph", path(&g), "--k", "2", "--oracle"]));
    assert_eq!(v["weight"], 12);
    assert_eq!(v["agree"], true);
}

#[test]
fn bench_empty_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let out = centerkit(&["bench", "--corpus", path(dir.path())]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
}

#[test]
fn bench_line_corpus_with_oracle() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..10 {
        let out = centerkit(&["gen", "line", "--seed", &seed.to_string(), "--n", "7"]);
        fs::write(dir.path().join(format!("l{seed:02}.json")), out.stdout).unwrap();
    }
    fs::write(dir.path().join("zz-broken.json"), "{ not json").unwrap();
    let out = centerkit(&["bench", "--corpus", path(dir.path()), "--algos", "line25,chen3,oracle"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let reports: Vec<RunReport> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    for (line, r) in text.lines().zip(&reports) {
        assert_eq!(r.to_json_line(), line);
    }
    let solvers: Vec<_> = reports.iter().filter(|r| r.algorithm == "line25" || r.algorithm == "chen3").collect();
    assert_eq!(solvers.len(), 20);
    assert!(solvers.iter().all(|r| r.ratio_bound_satisfied == Some(true)));
    assert_eq!(reports.iter().filter(|r| r.algorithm == "oracle").count(), 10);
    assert_eq!(reports.last().unwrap().status, STATUS_PARSE_ERROR);
    let ids: Vec<&str> = reports.iter().map(|r| r.instance.as_str()).collect();
    assert!(ids.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn verify_standard_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let out = centerkit(&["gen", "corpus", "--dir", path(dir.path()), "--line", "5", "--supplier", "5", "--gadget", "3"]);
    assert!(out.status.success());
    let out = centerkit(&["verify", "--corpus", path(dir.path())]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert_eq!(stdout(&out).lines().filter(|l| l.ends_with(')') && l.contains(": ok")).count(), 13);
}
