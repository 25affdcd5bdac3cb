use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use centerkit::baselines::{
    chen_matroid_center, hs_k_center, hs_k_supplier, line_sq_table, sq_dist_table,
};
use centerkit::gen::{LineParams, SupplierParams};
use centerkit::line_center::{either_or_line, solve_with_radius};
use centerkit::matching::brute_force_edge_cover;
use centerkit::oracles::{opt_matroid_center_line, opt_robust_supplier};
use centerkit::scalar::{approx_sqrt, parse_rational};
use centerkit::supplier::{
    round_or_cut, solve_robust_supplier_with, DEFAULT_MAX_ITERS, MAX_ITERS_ENV,
};
use centerkit::{
    solve_max_k_edge_cover, AnyInstance, EitherOr, LineInstance, MatroidSpec, SqRadius,
    SupplierInstance,
};
use centerkit_cli::report::fmt;
use centerkit_cli::{bench, corpus, graph, verify};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "centerkit",
    version,
    about = "Exact matroid-center and robust k-supplier approximations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate seeded instances.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// 2.5-approximate Matroid Center on the line.
    SolveLine {
        #[arg(long)]
        instance: PathBuf,
        /// Run a single threshold test at this radius instead of the full search.
        #[arg(long)]
        radius: Option<String>,
    },
    /// (1+sqrt 3)-approximate Robust k-Supplier.
    SolveSupplier {
        #[arg(long)]
        instance: PathBuf,
        /// Run a single round-or-cut at this squared radius.
        #[arg(long)]
        sq_radius: Option<String>,
        #[arg(long, env = MAX_ITERS_ENV, default_value_t = DEFAULT_MAX_ITERS)]
        max_iters: usize,
    },
    /// Reference algorithms.
    SolveBaseline {
        #[arg(long, value_enum)]
        algo: Baseline,
        #[arg(long)]
        instance: PathBuf,
        /// k for k-center on a line instance (defaults to a uniform matroid's rank).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Max k-Edge Cover on a vertex-weighted multigraph.
    EdgeCover {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        /// Also run the brute-force solver and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Exact optimum by exhaustive search.
    Oracle {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Run algorithms over every `*.json` in a directory and emit JSON lines.
    Bench {
        #[arg(long)]
        corpus: PathBuf,
        /// Comma-separated subset of line25, chen3, rsupplier, ksupplier3, kcenter2, oracle.
        #[arg(
            long,
            default_value = "line25,chen3,rsupplier,ksupplier3,kcenter2,oracle"
        )]
        algos: String,
        /// Write reports here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the invariant suite over a corpus.
    Verify {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, env = MAX_ITERS_ENV, default_value_t = DEFAULT_MAX_ITERS)]
        max_iters: usize,
    },
}

#[derive(Subcommand)]
enum GenKind {
    Line {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        max_coord: i64,
        /// Coordinates are multiples of 1/denominator.
        #[arg(long, default_value_t = 2)]
        denominator: i64,
    },
    Supplier {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        clients: usize,
        #[arg(long)]
        facilities: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Defaults to a seeded draw from 0..=clients.
        #[arg(long)]
        p: Option<usize>,
        #[arg(long, default_value_t = 20)]
        max_coord: i64,
    },
    /// The standard benchmark corpus.
    Corpus {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        line: usize,
        #[arg(long, default_value_t = 20)]
        supplier: usize,
        #[arg(long, default_value_t = 5)]
        gadget: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Baseline {
    Kcenter,
    Ksupplier,
    Chen,
}

fn read_instance(path: &Path) -> Result<AnyInstance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(AnyInstance::from_json(&text)?)
}

fn read_line(path: &Path) -> Result<LineInstance<centerkit::Rational>> {
    match read_instance(path)? {
        AnyInstance::Line(l) => Ok(l),
        AnyInstance::Supplier(_) => bail!(
            "{} is a supplier instance, expected a line instance",
            path.display()
        ),
    }
}

fn read_supplier(path: &Path) -> Result<SupplierInstance<centerkit::Rational>> {
    match read_instance(path)? {
        AnyInstance::Supplier(s) => Ok(s),
        AnyInstance::Line(_) => bail!(
            "{} is a line instance, expected a supplier instance",
            path.display()
        ),
    }
}

fn print(value: serde_json::Value) {
    println!("{value}");
}

fn solution_json(sol: &centerkit::RationalSolution) -> serde_json::Value {
    json!({
        "status": "solved",
        "sq_radius": fmt(&sol.achieved_sq_radius),
        "radius_approx": approx_sqrt(&sol.achieved_sq_radius),
        "centers": sol.centers,
        "covered": sol.covered.len(),
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen { kind } => gen(kind).or_else(|e| {
            eprintln!("usage error: {e:#}");
            Ok(ExitCode::from(2))
        }),
        command => solve(command),
    }
}

fn gen(kind: GenKind) -> Result<ExitCode> {
    match kind {
        GenKind::Line {
            seed,
            n,
            max_coord,
            denominator,
        } => {
            println!(
                "{}",
                corpus::line_json(
                    seed,
                    LineParams {
                        n,
                        max_coord,
                        denominator
                    }
                )?
            );
        }
        GenKind::Supplier {
            seed,
            clients,
            facilities,
            dim,
            k,
            p,
            max_coord,
        } => {
            let params = SupplierParams {
                clients,
                facilities,
                dim,
                max_coord,
                k,
                p,
            };
            println!("{}", corpus::supplier_json(seed, params)?);
        }
        GenKind::Corpus {
            dir,
            seed,
            line,
            supplier,
            gadget,
        } => {
            let names = corpus::write_corpus(
                &dir,
                corpus::CorpusSpec {
                    seed,
                    line,
                    supplier,
                    gadget,
                },
            )?;
            eprintln!("wrote {} instances to {}", names.len(), dir.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn solve(command: Command) -> Result<ExitCode> {
    match command {
        Command::Gen { .. } => unreachable!("handled in run"),
        Command::SolveLine { instance, radius } => {
            let inst = read_line(&instance)?;
            match radius {
                Some(r) => match either_or_line(&inst, &parse_rational(&r)?)? {
                    EitherOr::Solved(sol) => print(solution_json(&sol)),
                    EitherOr::InfeasibleAtRadius => {
                        print(json!({ "status": "infeasible_at_radius", "radius": r }))
                    }
                },
                None => match solve_with_radius(&inst) {
                    Ok((sol, r)) => {
                        let mut v = solution_json(&sol);
                        v["candidate_radius"] = json!(fmt(&r));
                        print(v);
                    }
                    Err(centerkit::Error::Unsolvable) => print(json!({ "status": "unsolvable" })),
                    Err(e) => return Err(e.into()),
                },
            }
        }
        Command::SolveSupplier {
            instance,
            sq_radius,
            max_iters,
        } => {
            let inst = read_supplier(&instance)?;
            match sq_radius {
                Some(r2) => {
                    let r2 = SqRadius::new(parse_rational(&r2)?)?;
                    let run = round_or_cut(&inst, &r2, max_iters)?;
                    let mut v = match run.outcome {
                        EitherOr::Solved(sol) => solution_json(&sol),
                        EitherOr::InfeasibleAtRadius => {
                            json!({ "status": "infeasible_at_radius", "sq_radius": fmt(r2.value()) })
                        }
                    };
                    v["iterations"] = json!(run.iterations);
                    v["cuts_emitted"] = json!(run.cuts.len());
                    print(v);
                }
                None => match solve_robust_supplier_with(&inst, max_iters) {
                    Ok(run) => {
                        let mut v = solution_json(&run.solution);
                        v["candidate_sq_radius"] = json!(fmt(&run.sq_radius));
                        v["iterations"] = json!(run.iterations);
                        v["cuts_emitted"] = json!(run.cuts_emitted);
                        print(v);
                    }
                    Err(centerkit::Error::Unsolvable) => print(json!({ "status": "unsolvable" })),
                    Err(e) => return Err(e.into()),
                },
            }
        }
        Command::SolveBaseline { algo, instance, k } => {
            let inst = read_instance(&instance)?;
            let result = match (algo, &inst) {
                (Baseline::Kcenter, AnyInstance::Line(l)) => {
                    let k = match (k, l.matroid()) {
                        (Some(k), _) => k,
                        (None, MatroidSpec::Uniform { rank }) => *rank,
                        (None, _) => {
                            bail!("--k is required for k-center on a partition-matroid instance")
                        }
                    };
                    hs_k_center(&line_sq_table(l.points()), k)
                }
                (Baseline::Kcenter, AnyInstance::Supplier(s)) => {
                    hs_k_center(&sq_dist_table(s.clients()), k.unwrap_or(s.k()))
                }
                (Baseline::Ksupplier, AnyInstance::Supplier(s)) => {
                    hs_k_supplier(s.clients(), s.facilities(), k.unwrap_or(s.k()))
                }
                (Baseline::Chen, AnyInstance::Line(l)) => {
                    chen_matroid_center(&line_sq_table(l.points()), l.matroid())
                }
                (Baseline::Ksupplier, AnyInstance::Line(_)) => {
                    bail!("ksupplier needs a supplier instance")
                }
                (Baseline::Chen, AnyInstance::Supplier(_)) => bail!("chen needs a line instance"),
            };
            match result {
                Ok(sol) => print(solution_json(&sol)),
                Err(centerkit::Error::Unsolvable) => print(json!({ "status": "unsolvable" })),
                Err(e) => return Err(e.into()),
            }
        }
        Command::EdgeCover {
            graph: path,
            k,
            oracle,
        } => {
            let text =
                fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let g = graph::parse_graph(&text)?;
            let cover = solve_max_k_edge_cover(&g, k)?;
            let mut v = json!({ "weight": cover.weight, "edges": cover.edges });
            if oracle {
                let best = brute_force_edge_cover(&g, k)?;
                v["oracle_weight"] = json!(best);
                v["agree"] = json!(best == cover.weight);
                print(v);
                if best != cover.weight {
                    return Ok(ExitCode::FAILURE);
                }
            } else {
                print(v);
            }
        }
        Command::Oracle { instance } => match read_instance(&instance)? {
            AnyInstance::Line(l) => {
                let opt = opt_matroid_center_line(&l)?;
                print(
                    json!({ "opt_sq": fmt(&(&opt.value * &opt.value)), "opt": fmt(&opt.value), "witness": opt.witness }),
                );
            }
            AnyInstance::Supplier(s) => {
                let opt = opt_robust_supplier(&s)?;
                print(json!({ "opt_sq": fmt(&opt.value), "witness": opt.witness }));
            }
        },
        Command::Bench {
            corpus: dir,
            algos,
            out,
        } => {
            let algos = bench::parse_algorithms(&algos)?;
            let reports = bench::run_bench(&dir, &algos)?;
            let mut text = String::new();
            for r in &reports {
                text += &r.to_json_line();
                text.push('\n');
            }
            match out {
                Some(path) => {
                    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
                }
                None => std::io::stdout().write_all(text.as_bytes())?,
            }
            eprint!("{}", bench::summary_table(&reports));
            if reports.iter().any(|r| r.is_failure()) {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Verify {
            corpus: dir,
            max_iters,
        } => {
            let mut failures = 0;
            for (id, path) in bench::corpus_files(&dir)? {
                let outcome = fs::read_to_string(&path)
                    .map_err(|e| e.to_string())
                    .and_then(|t| AnyInstance::from_json(&t).map_err(|e| e.to_string()))
                    .and_then(|inst| verify::verify_instance(&inst, max_iters));
                match outcome {
                    Ok(stats) => println!(
                        "{id}: ok (lp solves {}, cuts {})",
                        stats.lp_solves, stats.cuts
                    ),
                    Err(msg) => {
                        failures += 1;
                        println!("{id}: FAIL {msg}");
                    }
                }
            }
            if failures > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
