//! Runs solvers over a corpus directory and compares them with the oracles.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use centerkit::baselines::{
    chen_matroid_center, hs_k_center, hs_k_supplier, line_sq_table, sq_dist_table,
};
use centerkit::line_center::solve_with_radius;
use centerkit::oracles::{opt_k_center, opt_matroid_center_line, opt_robust_supplier};
use centerkit::scalar::approx_sqrt;
use centerkit::supplier::solve_robust_supplier_with;
use centerkit::{AnyInstance, Error, LineInstance, Rational, Solution, SupplierInstance};

use crate::report::*;

pub const ALGORITHMS: [&str; 6] = [
    "line25",
    "chen3",
    "rsupplier",
    "ksupplier3",
    "kcenter2",
    "oracle",
];

pub fn parse_algorithms(list: &str) -> Result<Vec<String>> {
    let algos: Vec<String> = list
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    for a in &algos {
        if !ALGORITHMS.contains(&a.as_str()) {
            bail!(
                "unknown algorithm {a:?}; expected one of {}",
                ALGORITHMS.join(", ")
            );
        }
    }
    Ok(algos)
}

/// The oracle quantity an algorithm is compared against, and its guarantee.
fn bound_of(algorithm: &str) -> Bound {
    match algorithm {
        "line25" => Bound::Factor(5, 2),
        "chen3" | "ksupplier3" => Bound::Factor(3, 1),
        "kcenter2" => Bound::Factor(2, 1),
        _ => Bound::OnePlusSqrt3,
    }
}

fn applies(algorithm: &str, inst: &AnyInstance) -> bool {
    match inst {
        AnyInstance::Line(_) => matches!(algorithm, "line25" | "chen3"),
        AnyInstance::Supplier(_) => matches!(algorithm, "rsupplier" | "ksupplier3" | "kcenter2"),
    }
}

fn status_of(e: &Error) -> &'static str {
    match e {
        Error::Unsolvable => STATUS_UNSOLVABLE,
        Error::Refused(_) => STATUS_REFUSED,
        Error::Input(_) | Error::NoPerfectMatching => STATUS_INPUT_ERROR,
        Error::Internal(_) => STATUS_INTERNAL_ERROR,
    }
}

pub fn max_iters() -> usize {
    centerkit::supplier::max_iters_from_env()
}

fn run_solver(algorithm: &str, inst: &AnyInstance) -> centerkit::Result<Solution<Rational>> {
    match (algorithm, inst) {
        ("line25", AnyInstance::Line(l)) => solve_with_radius(l).map(|(s, _)| s),
        ("chen3", AnyInstance::Line(l)) => {
            chen_matroid_center(&line_sq_table(l.points()), l.matroid())
        }
        ("rsupplier", AnyInstance::Supplier(s)) => {
            solve_robust_supplier_with(s, max_iters()).map(|r| r.solution)
        }
        ("ksupplier3", AnyInstance::Supplier(s)) => {
            hs_k_supplier(s.clients(), s.facilities(), s.k())
        }
        ("kcenter2", AnyInstance::Supplier(s)) => hs_k_center(&sq_dist_table(s.clients()), s.k()),
        _ => unreachable!("applies() filters combinations"),
    }
}

/// Non-robust view of a supplier instance: every client must be served.
fn all_clients(s: &SupplierInstance<Rational>) -> centerkit::Result<SupplierInstance<Rational>> {
    SupplierInstance::new(
        s.dim(),
        s.clients().to_vec(),
        s.facilities().to_vec(),
        s.k(),
        s.clients().len(),
    )
}

fn line_opt_sq(l: &LineInstance<Rational>) -> centerkit::Result<(Rational, Vec<usize>)> {
    opt_matroid_center_line(l).map(|o| (&o.value * &o.value, o.witness))
}

/// Exact squared optimum for the problem `algorithm` solves.
fn oracle_for(algorithm: &str, inst: &AnyInstance) -> centerkit::Result<(Rational, Vec<usize>)> {
    let unwrap = |o: centerkit::oracles::Optimum<Rational>| (o.value, o.witness);
    match (algorithm, inst) {
        (_, AnyInstance::Line(l)) => line_opt_sq(l),
        ("ksupplier3", AnyInstance::Supplier(s)) => {
            opt_robust_supplier(&all_clients(s)?).map(unwrap)
        }
        ("kcenter2", AnyInstance::Supplier(s)) => {
            opt_k_center(&sq_dist_table(s.clients()), s.k()).map(unwrap)
        }
        (_, AnyInstance::Supplier(s)) => opt_robust_supplier(s).map(unwrap),
    }
}

/// Runs every applicable algorithm on one parsed instance.
pub fn run_instance(id: &str, inst: &AnyInstance, algorithms: &[String]) -> Vec<RunReport> {
    let with_oracle = algorithms.iter().any(|a| a == "oracle");
    let mut out = Vec::new();
    for algorithm in algorithms.iter().filter(|a| applies(a, inst)) {
        let start = Instant::now();
        let result = run_solver(algorithm, inst);
        let wall_time_ms = start.elapsed().as_millis() as u64;
        let mut report = match result {
            Ok(sol) => RunReport {
                instance: id.to_string(),
                algorithm: algorithm.clone(),
                status: STATUS_OK.to_string(),
                sq_radius: Some(fmt(&sol.achieved_sq_radius)),
                radius_approx: Some(approx_sqrt(&sol.achieved_sq_radius)),
                centers: sol.centers.clone(),
                covered: sol.covered.len(),
                oracle_sq: None,
                ratio_bound_satisfied: None,
                detail: None,
                wall_time_ms,
            },
            Err(e) => RunReport {
                wall_time_ms,
                ..RunReport::failed(id, algorithm, status_of(&e), e.to_string())
            },
        };
        if with_oracle {
            match (oracle_for(algorithm, inst), &report.sq_radius) {
                (Ok((opt, _)), Some(sq)) => {
                    let sq = centerkit::scalar::parse_rational(sq).expect("own formatting");
                    report.ratio_bound_satisfied = Some(bound_of(algorithm).holds(&sq, &opt));
                    report.oracle_sq = Some(fmt(&opt));
                }
                (Ok((opt, _)), None) => {
                    // A solver failure on a solvable instance breaks the guarantee.
                    report.ratio_bound_satisfied = Some(false);
                    report.oracle_sq = Some(fmt(&opt));
                }
                (Err(Error::Unsolvable), _) => {
                    report.ratio_bound_satisfied = Some(report.status == STATUS_UNSOLVABLE);
                }
                (Err(_), _) => {}
            }
        }
        out.push(report);
    }
    if with_oracle {
        let start = Instant::now();
        let primary = match inst {
            AnyInstance::Line(_) => "line25",
            AnyInstance::Supplier(_) => "rsupplier",
        };
        let result = oracle_for(primary, inst);
        let wall_time_ms = start.elapsed().as_millis() as u64;
        out.push(match result {
            Ok((opt, witness)) => RunReport {
                instance: id.to_string(),
                algorithm: "oracle".to_string(),
                status: STATUS_OK.to_string(),
                sq_radius: Some(fmt(&opt)),
                radius_approx: Some(approx_sqrt(&opt)),
                centers: witness,
                covered: 0,
                oracle_sq: Some(fmt(&opt)),
                ratio_bound_satisfied: None,
                detail: None,
                wall_time_ms,
            },
            Err(e) => RunReport {
                wall_time_ms,
                ..RunReport::failed(id, "oracle", status_of(&e), e.to_string())
            },
        });
    }
    out
}

/// Instance files of a corpus directory as `(id, path)`, sorted by id.
pub fn corpus_files(dir: &Path) -> Result<Vec<(String, std::path::PathBuf)>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e == "json") {
            let id = path
                .file_stem()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned();
            files.push((id, path));
        }
    }
    files.sort();
    Ok(files)
}

/// One report per applicable (instance, algorithm), ordered by instance id.
/// Unreadable or malformed files yield a `parse_error` report and the run
/// continues.
pub fn run_bench(dir: &Path, algorithms: &[String]) -> Result<Vec<RunReport>> {
    let mut reports = Vec::new();
    for (id, path) in corpus_files(dir)? {
        let parsed = fs::read_to_string(&path)
            .map_err(|e| e.to_string())
            .and_then(|text| AnyInstance::from_json(&text).map_err(|e| e.to_string()));
        match parsed {
            Ok(inst) => reports.extend(run_instance(&id, &inst, algorithms)),
            Err(msg) => reports.push(RunReport::failed(&id, "-", STATUS_PARSE_ERROR, msg)),
        }
    }
    Ok(reports)
}

#[derive(Debug, Default, Clone, PartialEq)]
pub struct AlgoSummary {
    pub runs: usize,
    pub ok: usize,
    pub bound_checked: usize,
    pub bound_violated: usize,
    pub max_ratio: Option<f64>,
}

pub fn summarize(reports: &[RunReport]) -> BTreeMap<String, AlgoSummary> {
    let mut table: BTreeMap<String, AlgoSummary> = BTreeMap::new();
    for r in reports {
        let s = table.entry(r.algorithm.clone()).or_default();
        s.runs += 1;
        s.ok += usize::from(r.status == STATUS_OK);
        if let Some(ok) = r.ratio_bound_satisfied {
            s.bound_checked += 1;
            s.bound_violated += usize::from(!ok);
        }
        if r.algorithm != "oracle" {
            if let Some(ratio) = r.observed_ratio() {
                s.max_ratio = Some(s.max_ratio.map_or(ratio, |m| m.max(ratio)));
            }
        }
    }
    table
}

pub fn summary_table(reports: &[RunReport]) -> String {
    let mut out = format!(
        "{:<12} {:>5} {:>5} {:>8} {:>9} {:>10}\n",
        "algorithm", "runs", "ok", "checked", "violated", "max_ratio"
    );
    for (name, s) in summarize(reports) {
        let ratio = s.max_ratio.map_or("-".to_string(), |r| format!("{r:.4}"));
        out += &format!(
            "{name:<12} {:>5} {:>5} {:>8} {:>9} {:>10}\n",
            s.runs, s.ok, s.bound_checked, s.bound_violated, ratio
        );
    }
    out
}
