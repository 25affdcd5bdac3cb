//! Invariant suite over a corpus: every check the solvers promise, recomputed
//! from scratch against the oracles.

use std::collections::HashSet;

use centerkit::geometry::candidate_radii_supplier;
use centerkit::line_center::{
    either_or_line, segment_points, select_representatives, solve_with_radius,
};
use centerkit::oracles::{integral_solutions, opt_matroid_center_line, opt_robust_supplier};
use centerkit::scalar::within_one_plus_sqrt3;
use centerkit::supplier::round_or_cut;
use centerkit::{AnyInstance, EitherOr, Error, LineInstance, Rational, SqRadius, SupplierInstance};
use num_traits::Signed;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Representatives at radius `r` are pairwise `> 2r` apart and cover within `1.5 r`.
pub fn check_representatives(points: &[Rational], r: &Rational) -> Result<(), String> {
    for seg in segment_points(points, r) {
        let local = &points[seg.indices()];
        let reps = select_representatives(local, r).map_err(|e| e.to_string())?;
        for (a, &i) in reps.iter().enumerate() {
            for &j in &reps[a + 1..] {
                if (&local[i] - &local[j]).abs() <= r * q(2, 1) {
                    return Err(format!("representatives {i} and {j} within 2r at r = {r}"));
                }
            }
        }
        if let Some(x) = local
            .iter()
            .find(|x| reps.iter().all(|&s| (*x - &local[s]).abs() > r * q(3, 2)))
        {
            return Err(format!(
                "point {x} farther than 1.5r from every representative at r = {r}"
            ));
        }
    }
    Ok(())
}

pub fn verify_line(inst: &LineInstance<Rational>) -> Result<(), String> {
    for r in centerkit::geometry::candidate_radii_line(inst) {
        check_representatives(inst.points(), &r)?;
    }
    let opt = match opt_matroid_center_line(inst) {
        Ok(opt) => opt,
        Err(Error::Unsolvable) => {
            return match solve_with_radius(inst) {
                Err(Error::Unsolvable) => Ok(()),
                other => Err(format!("oracle says unsolvable, solver says {other:?}")),
            };
        }
        Err(Error::Refused(_)) => return Ok(()),
        Err(e) => return Err(e.to_string()),
    };
    let (sol, _) = solve_with_radius(inst).map_err(|e| e.to_string())?;
    let bound = &opt.value * q(5, 2);
    if sol.achieved_sq_radius > &bound * &bound {
        return Err(format!(
            "radius^2 {} exceeds (2.5 OPT)^2 with OPT = {}",
            sol.achieved_sq_radius, opt.value
        ));
    }
    match either_or_line(inst, &opt.value).map_err(|e| e.to_string())? {
        EitherOr::Solved(_) => Ok(()),
        EitherOr::InfeasibleAtRadius => Err(format!("threshold test rejected OPT = {}", opt.value)),
    }
}

/// Counters across a supplier verification.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct SupplierStats {
    pub lp_solves: usize,
    pub cuts: usize,
    pub max_iterations: usize,
}

pub fn verify_supplier(
    inst: &SupplierInstance<Rational>,
    max_iters: usize,
) -> Result<SupplierStats, String> {
    let mut stats = SupplierStats::default();
    let opt = match opt_robust_supplier(inst) {
        Ok(opt) => opt,
        Err(Error::Refused(_)) => return Ok(stats),
        Err(e) => return Err(e.to_string()),
    };
    let mut radii: Vec<SqRadius<Rational>> = candidate_radii_supplier(inst)
        .into_iter()
        .filter(|r2| *r2.value() <= opt.value)
        .collect();
    if radii.last().map(|r| r.value()) != Some(&opt.value) {
        radii.push(SqRadius::new(opt.value.clone()).map_err(|e| e.to_string())?);
    }
    let mut first_success = None;
    for r2 in &radii {
        let run = round_or_cut(inst, r2, max_iters).map_err(|e| e.to_string())?;
        stats.lp_solves += run.iterations;
        stats.cuts += run.cuts.len();
        stats.max_iterations = stats.max_iterations.max(run.iterations);
        let integral = integral_solutions(inst, r2).map_err(|e| e.to_string())?;
        let mut seen = HashSet::new();
        for (cut, clustering) in &run.cuts {
            if !seen.insert(clustering) {
                return Err("clustering repeated within one run".into());
            }
            if let Some(s) = integral
                .iter()
                .find(|s| cut.lhs_integral(&s.served) > cut.rhs)
            {
                return Err(format!(
                    "cut {cut:?} excludes integral solution {:?} at r^2 = {}",
                    s.facilities,
                    r2.value()
                ));
            }
        }
        if let EitherOr::Solved(sol) = run.outcome {
            if sol.centers.len() > inst.k() || sol.covered.len() < inst.p() {
                return Err("rounded solution violates k or p".into());
            }
            first_success.get_or_insert(sol);
        } else if *r2.value() == opt.value {
            return Err(format!("round-or-cut rejected OPT^2 = {}", opt.value));
        }
    }
    let sol = first_success.ok_or("no radius up to OPT succeeded")?;
    if !within_one_plus_sqrt3(&sol.achieved_sq_radius, &opt.value) {
        return Err(format!(
            "radius^2 {} exceeds ((1+sqrt 3) OPT)^2 with OPT^2 = {}",
            sol.achieved_sq_radius, opt.value
        ));
    }
    Ok(stats)
}

pub fn verify_instance(inst: &AnyInstance, max_iters: usize) -> Result<SupplierStats, String> {
    match inst {
        AnyInstance::Line(l) => verify_line(l).map(|_| SupplierStats::default()),
        AnyInstance::Supplier(s) => verify_supplier(s, max_iters),
    }
}
