//! (1+√3)-approximation for Robust Euclidean k-Supplier by round-or-cut.
//!
//! For a radius `r` the LP relaxation has a variable `x(u)` per client (is
//! `u` served) and `y(f)` per facility (is `f` open). A point of the
//! relaxation is clustered greedily by decreasing `x`; cluster
//! representatives are more than `√3 r` apart, so every facility lies within
//! `r` of at most two of them and the facilities become edges of a graph on
//! the representatives. A Max k-Edge Cover of weight `>= p` opens a solution
//! of radius `(1+√3) r`. Otherwise `Σ |X_c| x(c) <= p - 1` holds for every
//! integral solution but not for the current point, and is added as a cut.

use std::collections::HashSet;

use crate::error::{internal, Result};
use crate::geometry::{candidate_radii_supplier, sq_dist_unchecked, SqRadius};
use crate::instance::{Solution, SupplierInstance};
use crate::line_center::EitherOr;
use crate::lp::{feasible_point, Feasibility, LinearSystem, Relation};
use crate::matching::{solve_max_k_edge_cover, CoverEdge, CoverGraph};
use crate::scalar::{within_one_plus_sqrt3, ExactField};

pub const DEFAULT_MAX_ITERS: usize = 1000;

/// Environment variable overriding [`DEFAULT_MAX_ITERS`].
pub const MAX_ITERS_ENV: &str = "CENTERKIT_MAX_ITERS";

/// The iteration cap from the environment, or the default.
pub fn max_iters_from_env() -> usize {
    std::env::var(MAX_ITERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ITERS)
}

/// The relaxation at squared radius `r2`. Variables are `x` over clients
/// followed by `y` over facilities, all in `[0, 1]`.
pub fn build_polytope<T: ExactField>(
    inst: &SupplierInstance<T>,
    r2: &SqRadius<T>,
) -> LinearSystem<T> {
    let nx = inst.clients().len();
    let nf = inst.facilities().len();
    let mut sys = LinearSystem::new(nx + nf, T::zero(), T::one());
    let push = |sys: &mut LinearSystem<T>, coeffs, rel, rhs| {
        sys.add_row(coeffs, rel, rhs)
            .expect("row width matches variable count");
    };

    let mut budget = vec![T::zero(); nx + nf];
    for c in &mut budget[nx..] {
        *c = T::one();
    }
    push(&mut sys, budget, Relation::Le, T::of_usize(inst.k()));

    for (u, client) in inst.clients().iter().enumerate() {
        let mut row = vec![T::zero(); nx + nf];
        row[u] = -T::one();
        for (f, fac) in inst.facilities().iter().enumerate() {
            if sq_dist_unchecked(client, fac) <= *r2.value() {
                row[nx + f] = T::one();
            }
        }
        push(&mut sys, row, Relation::Ge, T::zero());
    }

    let mut cover = vec![T::zero(); nx + nf];
    for c in &mut cover[..nx] {
        *c = T::one();
    }
    push(&mut sys, cover, Relation::Ge, T::of_usize(inst.p()));
    sys
}

/// Greedy clustering of the clients with `x(u) > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clustering {
    /// Representatives in pick order.
    pub reps: Vec<usize>,
    /// `clusters[i]` is `X_c` for `c = reps[i]`, sorted.
    pub clusters: Vec<Vec<usize>>,
}

impl Clustering {
    pub fn weights(&self) -> Vec<u64> {
        self.clusters.iter().map(|c| c.len() as u64).collect()
    }

    /// Checks every structural invariant against the LP point `x`.
    pub fn check<T: ExactField>(
        &self,
        x: &[T],
        inst: &SupplierInstance<T>,
        r2: &SqRadius<T>,
    ) -> Result<()> {
        let clients = inst.clients();
        let three_r2 = T::of_usize(3) * r2.value().clone();
        let mut owner = vec![None; clients.len()];
        for (i, (&c, cluster)) in self.reps.iter().zip(&self.clusters).enumerate() {
            if !cluster.contains(&c) {
                return Err(internal(format!(
                    "representative {c} not in its own cluster"
                )));
            }
            for &v in cluster {
                if owner[v].replace(i).is_some() {
                    return Err(internal(format!("client {v} lies in two clusters")));
                }
                if x[v] > x[c] {
                    return Err(internal(format!(
                        "client {v} has larger x than its representative {c}"
                    )));
                }
            }
            for &d in &self.reps[..i] {
                if sq_dist_unchecked(&clients[c], &clients[d]) <= three_r2 {
                    return Err(internal(format!(
                        "representatives {d} and {c} within sqrt(3) r"
                    )));
                }
            }
        }
        for (u, xu) in x.iter().take(clients.len()).enumerate() {
            if xu.is_positive() != owner[u].is_some() {
                return Err(internal(format!(
                    "client {u} clustered iff x(u) > 0 violated"
                )));
            }
        }
        Ok(())
    }
}

/// Repeatedly takes the client of largest `x` (lowest index on ties) among
/// the remaining ones with `x > 0` and removes its `√3 r` ball.
pub fn greedy_cluster<T: ExactField>(
    x: &[T],
    inst: &SupplierInstance<T>,
    r2: &SqRadius<T>,
) -> Clustering {
    let clients = inst.clients();
    let three_r2 = T::of_usize(3) * r2.value().clone();
    let mut alive: Vec<bool> = (0..clients.len()).map(|u| x[u].is_positive()).collect();
    let mut reps = Vec::new();
    let mut clusters = Vec::new();
    loop {
        let mut best: Option<usize> = None;
        for u in (0..clients.len()).filter(|&u| alive[u]) {
            if best.is_none_or(|b| x[u] > x[b]) {
                best = Some(u);
            }
        }
        let Some(c) = best else { break };
        let cluster: Vec<usize> = (0..clients.len())
            .filter(|&v| alive[v] && sq_dist_unchecked(&clients[c], &clients[v]) <= three_r2)
            .collect();
        for &v in &cluster {
            alive[v] = false;
        }
        reps.push(c);
        clusters.push(cluster);
    }
    Clustering { reps, clusters }
}

/// Graph on the representatives (vertex `i` is `reps[i]`, weighted `|X_c|`)
/// with one edge per facility within `r` of one or two of them.
pub fn build_cover_graph<T: ExactField>(
    clustering: &Clustering,
    inst: &SupplierInstance<T>,
    r2: &SqRadius<T>,
) -> Result<CoverGraph> {
    let clients = inst.clients();
    let mut edges = Vec::new();
    for (f, fac) in inst.facilities().iter().enumerate() {
        let near: Vec<usize> = (0..clustering.reps.len())
            .filter(|&i| sq_dist_unchecked(&clients[clustering.reps[i]], fac) <= *r2.value())
            .collect();
        match near[..] {
            [] => {}
            [a] => edges.push(CoverEdge::tagged(a, a, f)),
            [a, b] => edges.push(CoverEdge::tagged(a, b, f)),
            _ => {
                return Err(internal(format!(
                    "facility {f} is within r of {} representatives {:?}",
                    near.len(),
                    near.iter().map(|&i| clustering.reps[i]).collect::<Vec<_>>()
                )))
            }
        }
    }
    CoverGraph::new(clustering.weights(), edges)
}

/// `Σ_i weights[i] x(reps[i]) <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub reps: Vec<usize>,
    pub weights: Vec<u64>,
    pub rhs: u64,
}

impl Cut {
    fn from_clustering(c: &Clustering, p: usize) -> Self {
        Cut {
            reps: c.reps.clone(),
            weights: c.weights(),
            rhs: p as u64 - 1,
        }
    }

    /// Left-hand side at an integral point given by its served clients.
    pub fn lhs_integral(&self, served: &[bool]) -> u64 {
        self.reps
            .iter()
            .zip(&self.weights)
            .filter(|(&c, _)| served[c])
            .map(|(_, w)| w)
            .sum()
    }

    pub fn lhs<T: ExactField>(&self, x: &[T]) -> T {
        self.reps
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&c, &w)| {
                acc + T::of_usize(w as usize) * x[c].clone()
            })
    }

    fn row<T: ExactField>(&self, num_vars: usize) -> Vec<T> {
        let mut row = vec![T::zero(); num_vars];
        for (&c, &w) in self.reps.iter().zip(&self.weights) {
            row[c] = T::of_usize(w as usize);
        }
        row
    }
}

/// Trace of one [`round_or_cut`] run.
#[derive(Debug, Clone)]
pub struct RoundOrCut<T> {
    pub outcome: EitherOr<T>,
    /// LP solves performed.
    pub iterations: usize,
    /// Cuts in emission order, each with the clustering that produced it.
    pub cuts: Vec<(Cut, Clustering)>,
}

/// Either a solution of radius at most `(1+√3) r` or a certificate that no
/// solution of radius `r` exists.
pub fn round_or_cut<T: ExactField>(
    inst: &SupplierInstance<T>,
    r2: &SqRadius<T>,
    max_iters: usize,
) -> Result<RoundOrCut<T>> {
    let p = inst.p();
    if p == 0 {
        let empty = Solution {
            centers: Vec::new(),
            achieved_sq_radius: T::zero(),
            covered: Vec::new(),
        };
        return Ok(RoundOrCut {
            outcome: EitherOr::Solved(empty),
            iterations: 0,
            cuts: Vec::new(),
        });
    }
    let nx = inst.clients().len();
    let mut sys = build_polytope(inst, r2);
    let mut cuts: Vec<(Cut, Clustering)> = Vec::new();
    let mut seen: HashSet<Clustering> = HashSet::new();

    for iteration in 1..=max_iters {
        let point = match feasible_point(&sys)? {
            Feasibility::Infeasible => {
                return Ok(RoundOrCut {
                    outcome: EitherOr::InfeasibleAtRadius,
                    iterations: iteration,
                    cuts,
                });
            }
            Feasibility::Feasible(point) => point,
        };
        let x = &point[..nx];
        let clustering = greedy_cluster(x, inst, r2);
        clustering.check(x, inst, r2)?;
        let cut = Cut::from_clustering(&clustering, p);
        if cut.lhs(x) < T::of_usize(p) {
            return Err(internal(format!(
                "LP point has cluster mass {} below p = {p}",
                cut.lhs(x)
            )));
        }

        let graph = build_cover_graph(&clustering, inst, r2)?;
        let cover = solve_max_k_edge_cover(&graph, inst.k())?;
        if cover.weight >= p as u64 {
            let solution = open_facilities(inst, r2, &clustering, &graph, &cover.edges)?;
            return Ok(RoundOrCut {
                outcome: EitherOr::Solved(solution),
                iterations: iteration,
                cuts,
            });
        }

        if !seen.insert(clustering.clone()) {
            return Err(internal(format!(
                "clustering {:?} recurred at iteration {iteration}",
                clustering.reps
            )));
        }
        sys.add_row(cut.row(sys.num_vars()), Relation::Le, T::of_usize(p - 1))?;
        cuts.push((cut, clustering));
    }
    Err(internal(format!(
        "round-or-cut hit the cap of {max_iters} iterations at r^2 = {} after {} cuts",
        r2.value(),
        cuts.len()
    )))
}

fn open_facilities<T: ExactField>(
    inst: &SupplierInstance<T>,
    r2: &SqRadius<T>,
    clustering: &Clustering,
    graph: &CoverGraph,
    chosen: &[usize],
) -> Result<Solution<T>> {
    let clients = inst.clients();
    let facilities = inst.facilities();
    let three_r2 = T::of_usize(3) * r2.value().clone();
    let mut centers = Vec::new();
    let mut covered = Vec::new();
    let mut done = vec![false; clustering.reps.len()];
    for &e in chosen {
        let edge = graph.edges()[e];
        let f = edge
            .facility
            .ok_or_else(|| internal("cover edge without a facility"))?;
        centers.push(f);
        for v in [edge.u, edge.v] {
            if std::mem::replace(&mut done[v], true) {
                continue;
            }
            let c = clustering.reps[v];
            if sq_dist_unchecked(&clients[c], &facilities[f]) > *r2.value() {
                return Err(internal(format!(
                    "facility {f} farther than r from representative {c}"
                )));
            }
            for &u in &clustering.clusters[v] {
                if sq_dist_unchecked(&clients[u], &clients[c]) > three_r2 {
                    return Err(internal(format!(
                        "client {u} farther than sqrt(3) r from representative {c}"
                    )));
                }
                covered.push(u);
            }
        }
    }
    centers.sort_unstable();
    centers.dedup();
    covered.sort_unstable();
    if centers.len() > inst.k() || covered.len() < inst.p() {
        return Err(internal(format!(
            "rounded solution opens {} facilities and serves {} clients",
            centers.len(),
            covered.len()
        )));
    }
    let achieved = served_sq_radius(inst, &centers, &covered);
    if !within_one_plus_sqrt3(&achieved, r2.value()) {
        return Err(internal(format!(
            "achieved squared radius {achieved} exceeds ((1+sqrt 3) r)^2"
        )));
    }
    Ok(Solution {
        centers,
        achieved_sq_radius: achieved,
        covered,
    })
}

/// `max_{u in covered} min_{f in centers} |u - f|^2`; zero when nothing is covered.
pub fn served_sq_radius<T: ExactField>(
    inst: &SupplierInstance<T>,
    centers: &[usize],
    covered: &[usize],
) -> T {
    covered
        .iter()
        .map(|&u| {
            centers
                .iter()
                .map(|&f| sq_dist_unchecked(&inst.clients()[u], &inst.facilities()[f]))
                .min()
                .expect("non-empty center set when clients are covered")
        })
        .max()
        .unwrap_or_else(T::zero)
}

/// Outcome of the outer threshold loop.
#[derive(Debug, Clone)]
pub struct SupplierRun<T> {
    pub solution: Solution<T>,
    /// The candidate squared radius that succeeded.
    pub sq_radius: T,
    /// LP solves summed over all attempted radii.
    pub iterations: usize,
    pub cuts_emitted: usize,
}

/// Tries the candidate squared radii in ascending order and keeps the first
/// success. The cap comes from [`max_iters_from_env`].
pub fn solve_robust_supplier<T: ExactField>(inst: &SupplierInstance<T>) -> Result<Solution<T>> {
    solve_robust_supplier_with(inst, max_iters_from_env()).map(|run| run.solution)
}

pub fn solve_robust_supplier_with<T: ExactField>(
    inst: &SupplierInstance<T>,
    max_iters: usize,
) -> Result<SupplierRun<T>> {
    let mut iterations = 0;
    let mut cuts_emitted = 0;
    let mut radii = candidate_radii_supplier(inst);
    if inst.p() == 0 {
        radii = vec![SqRadius::new(T::zero())?];
    }
    for r2 in radii {
        let run = round_or_cut(inst, &r2, max_iters)?;
        iterations += run.iterations;
        cuts_emitted += run.cuts.len();
        if let EitherOr::Solved(solution) = run.outcome {
            return Ok(SupplierRun {
                solution,
                sq_radius: r2.into_inner(),
                iterations,
                cuts_emitted,
            });
        }
    }
    Err(crate::error::Error::Unsolvable)
}
