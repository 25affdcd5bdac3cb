//! Exact distance primitives and candidate-radius enumeration.

use crate::error::{input, Result};
use crate::instance::{LineInstance, SupplierInstance};
use crate::scalar::ExactField;

/// A squared Euclidean radius `r^2`, always non-negative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SqRadius<T>(T);

impl<T: ExactField> SqRadius<T> {
    pub fn new(value: T) -> Result<Self> {
        if value.is_negative() {
            return Err(input(format!("squared radius {value} is negative")));
        }
        Ok(SqRadius(value))
    }

    pub fn value(&self) -> &T {
        &self.0
    }

    pub fn into_inner(self) -> T {
        self.0
    }
}

/// Squared Euclidean distance, exact.
pub fn sq_dist<T: ExactField>(a: &[T], b: &[T]) -> Result<T> {
    if a.len() != b.len() {
        return Err(input(format!(
            "vectors of length {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(sq_dist_unchecked(a, b))
}

pub(crate) fn sq_dist_unchecked<T: ExactField>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| {
        acc + (x.clone() - y.clone()).square()
    })
}

/// All pairwise distances `|x - x'|` (including 0), sorted and deduplicated.
pub fn candidate_radii_line<T: ExactField>(inst: &LineInstance<T>) -> Vec<T> {
    let pts = inst.points();
    let mut radii: Vec<T> = Vec::with_capacity(pts.len() * (pts.len() + 1) / 2);
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i..] {
            radii.push((b.clone() - a.clone()).abs());
        }
    }
    radii.sort();
    radii.dedup();
    radii
}

/// All squared client-facility distances, sorted and deduplicated.
pub fn candidate_radii_supplier<T: ExactField>(inst: &SupplierInstance<T>) -> Vec<SqRadius<T>> {
    let mut radii: Vec<T> = inst
        .clients()
        .iter()
        .flat_map(|x| {
            inst.facilities()
                .iter()
                .map(move |f| sq_dist_unchecked(x, f))
        })
        .collect();
    radii.sort();
    radii.dedup();
    radii.into_iter().map(SqRadius).collect()
}

/// Distinct squared distances of a symmetric table, sorted (includes 0).
pub(crate) fn distinct_table_values<T: ExactField>(table: &[Vec<T>]) -> Vec<T> {
    let mut values: Vec<T> = table.iter().flatten().cloned().collect();
    values.sort();
    values.dedup();
    values
}
