//! Exhaustive optimum solvers used as ground truth. Each one refuses inputs
//! past a hard size guard instead of running for hours.

use itertools::Itertools;

use crate::baselines::table_sq_radius;
use crate::error::{input, Error, Result};
use crate::geometry::{sq_dist_unchecked, SqRadius};
use crate::instance::{LineInstance, SupplierInstance};
use crate::matroid::{IndependenceOracle, MatroidSpec};
use crate::scalar::ExactField;

/// Largest point count for the subset-enumerating matroid center oracle.
pub const LINE_ORACLE_LIMIT: usize = 14;
/// Largest number of facility subsets the supplier and k-center oracles enumerate.
pub const SUBSET_LIMIT: u128 = 100_000;

/// An optimum value with the lexicographically smallest witness attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum<T> {
    pub value: T,
    pub witness: Vec<usize>,
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn keep_best<T: ExactField>(best: &mut Option<Optimum<T>>, value: T, witness: Vec<usize>) {
    let better = match best {
        None => true,
        Some(b) => value < b.value || (value == b.value && witness < b.witness),
    };
    if better {
        *best = Some(Optimum { value, witness });
    }
}

/// Optimum Matroid Center over a squared-distance table; `value` is squared.
pub fn opt_matroid_center_table<T: ExactField>(
    table: &[Vec<T>],
    matroid: &MatroidSpec,
) -> Result<Optimum<T>> {
    let n = table.len();
    if n > LINE_ORACLE_LIMIT {
        return Err(Error::Refused(format!(
            "{n} points exceed the oracle limit of {LINE_ORACLE_LIMIT}"
        )));
    }
    let oracle = matroid.oracle(n)?;
    let mut best = None;
    for set in (0..n).powerset().filter(|s| !s.is_empty()) {
        if !oracle.is_independent(&set) {
            continue;
        }
        let value = table_sq_radius(table, &set).expect("non-empty set");
        keep_best(&mut best, value, set);
    }
    best.ok_or(Error::Unsolvable)
}

/// Optimum Matroid Center on the line; `value` is a distance, not squared.
pub fn opt_matroid_center_line<T: ExactField>(inst: &LineInstance<T>) -> Result<Optimum<T>> {
    let pts = inst.points();
    let n = pts.len();
    if n > LINE_ORACLE_LIMIT {
        return Err(Error::Refused(format!(
            "{n} points exceed the oracle limit of {LINE_ORACLE_LIMIT}"
        )));
    }
    let oracle = inst.matroid().oracle(n)?;
    let mut best = None;
    for set in (0..n).powerset().filter(|s| !s.is_empty()) {
        if !oracle.is_independent(&set) {
            continue;
        }
        let value = pts
            .iter()
            .map(|x| {
                set.iter()
                    .map(|&c| (x.clone() - pts[c].clone()).abs())
                    .min()
                    .expect("non-empty")
            })
            .max()
            .expect("non-empty instance");
        keep_best(&mut best, value, set);
    }
    best.ok_or(Error::Unsolvable)
}

/// Optimum k-Center over a squared-distance table.
pub fn opt_k_center<T: ExactField>(table: &[Vec<T>], k: usize) -> Result<Optimum<T>> {
    let n = table.len();
    if n == 0 || k == 0 {
        return Err(input("k-center oracle needs points and k >= 1"));
    }
    let size = k.min(n);
    if binomial(n, size) > SUBSET_LIMIT {
        return Err(Error::Refused(format!(
            "C({n}, {size}) subsets exceed {SUBSET_LIMIT}"
        )));
    }
    let mut best = None;
    for set in (0..n).combinations(size) {
        let value = table_sq_radius(table, &set).expect("non-empty set");
        keep_best(&mut best, value, set);
    }
    best.ok_or_else(|| input("no subsets"))
}

/// `p`-th smallest (1-based) of the client distances to the nearest facility
/// in `set`; zero for `p = 0`.
fn pth_distance<T: ExactField>(inst: &SupplierInstance<T>, set: &[usize]) -> Option<T> {
    let p = inst.p();
    if p == 0 {
        return Some(T::zero());
    }
    let mut d: Vec<T> = inst
        .clients()
        .iter()
        .map(|u| {
            set.iter()
                .map(|&f| sq_dist_unchecked(u, &inst.facilities()[f]))
                .min()
        })
        .collect::<Option<_>>()?;
    d.sort();
    Some(d[p - 1].clone())
}

/// Optimum Robust k-Supplier; `value` is the squared radius.
pub fn opt_robust_supplier<T: ExactField>(inst: &SupplierInstance<T>) -> Result<Optimum<T>> {
    if inst.p() == 0 {
        return Ok(Optimum {
            value: T::zero(),
            witness: Vec::new(),
        });
    }
    let nf = inst.facilities().len();
    let size = inst.k().min(nf);
    if binomial(nf, size) > SUBSET_LIMIT {
        return Err(Error::Refused(format!(
            "C({nf}, {size}) subsets exceed {SUBSET_LIMIT}"
        )));
    }
    let mut best = None;
    for set in (0..nf).combinations(size) {
        if let Some(value) = pth_distance(inst, &set) {
            keep_best(&mut best, value, set);
        }
    }
    best.ok_or(Error::Unsolvable)
}

/// An integral solution at a fixed radius: open facilities and every client
/// they serve within that radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralSolution {
    pub facilities: Vec<usize>,
    pub served: Vec<bool>,
}

/// Every facility set of size at most `k` that serves at least `p` clients
/// within squared radius `r2`.
pub fn integral_solutions<T: ExactField>(
    inst: &SupplierInstance<T>,
    r2: &SqRadius<T>,
) -> Result<Vec<IntegralSolution>> {
    let nf = inst.facilities().len();
    let top = inst.k().min(nf);
    let total: u128 = (0..=top).map(|j| binomial(nf, j)).sum();
    if total > SUBSET_LIMIT {
        return Err(Error::Refused(format!(
            "{total} facility subsets exceed {SUBSET_LIMIT}"
        )));
    }
    let near: Vec<Vec<bool>> = inst
        .clients()
        .iter()
        .map(|u| {
            inst.facilities()
                .iter()
                .map(|f| sq_dist_unchecked(u, f) <= *r2.value())
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for size in 0..=top {
        for set in (0..nf).combinations(size) {
            let served: Vec<bool> = near.iter().map(|row| set.iter().any(|&f| row[f])).collect();
            if served.iter().filter(|&&s| s).count() >= inst.p() {
                out.push(IntegralSolution {
                    facilities: set,
                    served,
                });
            }
        }
    }
    Ok(out)
}
