//! Reference threshold algorithms: 2-approximate k-Center, 3-approximate
//! k-Supplier, and the 3-approximate Matroid Center for arbitrary finite
//! metrics. All of them work on exact squared distances.

use crate::error::{input, internal, Error, Result};
use crate::geometry::{distinct_table_values, sq_dist_unchecked};
use crate::instance::Solution;
use crate::line_center::{intersect_with_balls, partition_from_balls};
use crate::matroid::MatroidSpec;
use crate::scalar::ExactField;

/// Pairwise squared distances of points in `R^d`.
pub fn sq_dist_table<T: ExactField>(points: &[Vec<T>]) -> Vec<Vec<T>> {
    points
        .iter()
        .map(|a| points.iter().map(|b| sq_dist_unchecked(a, b)).collect())
        .collect()
}

/// Pairwise squared distances of points on the line.
pub fn line_sq_table<T: ExactField>(points: &[T]) -> Vec<Vec<T>> {
    points
        .iter()
        .map(|a| {
            points
                .iter()
                .map(|b| (a.clone() - b.clone()).square())
                .collect()
        })
        .collect()
}

fn check_table<T: ExactField>(table: &[Vec<T>]) -> Result<()> {
    if table.is_empty() {
        return Err(input("empty distance table"));
    }
    if table.iter().any(|row| row.len() != table.len()) {
        return Err(input("distance table must be square"));
    }
    Ok(())
}

/// Radius of serving every point from `centers`, as a squared distance.
pub fn table_sq_radius<T: ExactField>(table: &[Vec<T>], centers: &[usize]) -> Option<T> {
    table
        .iter()
        .map(|row| centers.iter().map(|&c| row[c].clone()).min())
        .try_fold(T::zero(), |acc, d| d.map(|d| acc.max(d)))
}

/// Lowest-index-first greedy: pick an unremoved point, remove every point
/// within squared distance `reach`. The picks are pairwise farther apart
/// than `reach`.
fn greedy_reps<T: ExactField>(table: &[Vec<T>], reach: &T) -> Vec<usize> {
    let mut removed = vec![false; table.len()];
    let mut reps = Vec::new();
    for i in 0..table.len() {
        if removed[i] {
            continue;
        }
        reps.push(i);
        for (j, d) in table[i].iter().enumerate() {
            if d <= reach {
                removed[j] = true;
            }
        }
    }
    debug_assert!(reps
        .iter()
        .all(|&a| reps.iter().all(|&b| a == b || table[a][b] > *reach)));
    reps
}

/// 2-approximate k-Center over a symmetric squared-distance table.
pub fn hs_k_center<T: ExactField>(table: &[Vec<T>], k: usize) -> Result<Solution<T>> {
    check_table(table)?;
    if k == 0 {
        return Err(input("k-center needs k >= 1"));
    }
    let four = T::of_usize(4);
    for r2 in distinct_table_values(table) {
        let centers = greedy_reps(table, &(four.clone() * r2.clone()));
        if centers.len() <= k {
            let achieved =
                table_sq_radius(table, &centers).ok_or_else(|| internal("no centers"))?;
            if achieved > four * r2 {
                return Err(internal("greedy k-center exceeded 2r"));
            }
            return Ok(Solution {
                centers,
                achieved_sq_radius: achieved,
                covered: (0..table.len()).collect(),
            });
        }
    }
    Err(internal("k-center threshold loop found no radius"))
}

/// 3-approximate (non-robust) k-Supplier: greedy `2r` clustering of the
/// clients, then each representative moves to its lowest-index facility
/// within `r`.
pub fn hs_k_supplier<T: ExactField>(
    clients: &[Vec<T>],
    facilities: &[Vec<T>],
    k: usize,
) -> Result<Solution<T>> {
    if clients.is_empty() || facilities.is_empty() {
        return Err(input("need at least one client and one facility"));
    }
    let table = sq_dist_table(clients);
    let cross: Vec<Vec<T>> = clients
        .iter()
        .map(|c| facilities.iter().map(|f| sq_dist_unchecked(c, f)).collect())
        .collect();
    let mut radii: Vec<T> = cross.iter().flatten().cloned().collect();
    radii.sort();
    radii.dedup();
    let four = T::of_usize(4);
    for r2 in radii {
        let reps = greedy_reps(&table, &(four.clone() * r2.clone()));
        if reps.len() > k {
            continue;
        }
        let shifted: Option<Vec<usize>> = reps
            .iter()
            .map(|&c| cross[c].iter().position(|d| *d <= r2))
            .collect();
        let Some(mut centers) = shifted else { continue };
        centers.sort_unstable();
        centers.dedup();
        let achieved = cross
            .iter()
            .map(|row| {
                centers
                    .iter()
                    .map(|&f| row[f].clone())
                    .min()
                    .expect("non-empty")
            })
            .max()
            .expect("non-empty");
        if achieved > T::of_usize(9) * r2 {
            return Err(internal("greedy k-supplier exceeded 3r"));
        }
        return Ok(Solution {
            centers,
            achieved_sq_radius: achieved,
            covered: (0..clients.len()).collect(),
        });
    }
    Err(Error::Unsolvable)
}

/// 3-approximate Matroid Center for a finite metric: greedy `2r`
/// representatives, balls of radius `r` around them as a partition matroid,
/// and matroid intersection with the input matroid.
pub fn chen_matroid_center<T: ExactField>(
    table: &[Vec<T>],
    matroid: &MatroidSpec,
) -> Result<Solution<T>> {
    check_table(table)?;
    let n = table.len();
    let oracle = matroid.oracle(n)?;
    let four = T::of_usize(4);
    for r2 in distinct_table_values(table) {
        let reps = greedy_reps(table, &(four.clone() * r2.clone()));
        let partition = partition_from_balls(n, &reps, |s, x| table[s][x] <= r2)?;
        let Some(centers) = intersect_with_balls(&oracle, &partition, reps.len())? else {
            continue;
        };
        let achieved =
            table_sq_radius(table, &centers).ok_or_else(|| internal("empty center set"))?;
        if achieved > T::of_usize(9) * r2 {
            return Err(internal("matroid center baseline exceeded 3r"));
        }
        return Ok(Solution {
            centers,
            achieved_sq_radius: achieved,
            covered: (0..n).collect(),
        });
    }
    Err(Error::Unsolvable)
}
