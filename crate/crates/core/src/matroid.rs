//! Independence oracles, the shipped concrete matroids, and unweighted
//! matroid intersection by shortest augmenting paths in the exchange graph.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};

/// Concrete matroid descriptions accepted in instance files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum MatroidSpec {
    /// Every set of at most `rank` elements is independent.
    Uniform { rank: usize },
    /// At most `capacities[j]` elements may be taken from `parts[j]`.
    Partition {
        parts: Vec<Vec<usize>>,
        capacities: Vec<usize>,
    },
}

impl MatroidSpec {
    /// Checks the structural invariants against a ground set `{0..ground_size}`.
    pub fn validate(&self, ground_size: usize) -> Result<()> {
        match self {
            MatroidSpec::Uniform { .. } => Ok(()),
            MatroidSpec::Partition { parts, capacities } => {
                if parts.len() != capacities.len() {
                    return Err(input(format!(
                        "partition matroid has {} parts but {} capacities",
                        parts.len(),
                        capacities.len()
                    )));
                }
                let mut seen = vec![false; ground_size];
                for &e in parts.iter().flatten() {
                    if e >= ground_size {
                        return Err(input(format!(
                            "partition element {e} outside ground set of size {ground_size}"
                        )));
                    }
                    if std::mem::replace(&mut seen[e], true) {
                        return Err(input(format!("element {e} appears in two partition parts")));
                    }
                }
                if let Some(missing) = seen.iter().position(|&s| !s) {
                    return Err(input(format!(
                        "element {missing} is not covered by any partition part"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Binds the description to a ground set, validating it.
    pub fn oracle(&self, ground_size: usize) -> Result<SpecOracle<'_>> {
        self.validate(ground_size)?;
        let part_of = match self {
            MatroidSpec::Uniform { .. } => Vec::new(),
            MatroidSpec::Partition { parts, .. } => {
                let mut part_of = vec![0; ground_size];
                for (j, part) in parts.iter().enumerate() {
                    for &e in part {
                        part_of[e] = j;
                    }
                }
                part_of
            }
        };
        Ok(SpecOracle {
            spec: self,
            ground_size,
            part_of,
        })
    }
}

/// Membership test for the independent sets of a matroid on `{0..ground_size}`.
pub trait IndependenceOracle {
    fn ground_size(&self) -> usize;

    /// `set` holds distinct indices below `ground_size`.
    fn is_independent(&self, set: &[usize]) -> bool;
}

/// A [`MatroidSpec`] bound to a concrete ground set.
#[derive(Debug, Clone)]
pub struct SpecOracle<'a> {
    spec: &'a MatroidSpec,
    ground_size: usize,
    part_of: Vec<usize>,
}

impl IndependenceOracle for SpecOracle<'_> {
    fn ground_size(&self) -> usize {
        self.ground_size
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        match self.spec {
            MatroidSpec::Uniform { rank } => set.len() <= *rank,
            MatroidSpec::Partition { capacities, .. } => {
                let mut used = vec![0usize; capacities.len()];
                set.iter().all(|&e| {
                    let j = self.part_of[e];
                    used[j] += 1;
                    used[j] <= capacities[j]
                })
            }
        }
    }
}

/// Wraps an arbitrary membership closure.
pub struct FnOracle<F> {
    ground_size: usize,
    test: F,
}

impl<F: Fn(&[usize]) -> bool> FnOracle<F> {
    pub fn new(ground_size: usize, test: F) -> Self {
        FnOracle { ground_size, test }
    }
}

impl<F: Fn(&[usize]) -> bool> IndependenceOracle for FnOracle<F> {
    fn ground_size(&self) -> usize {
        self.ground_size
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        (self.test)(set)
    }
}

/// Evaluates membership of `set` in the independent sets of `spec`.
pub fn is_independent(spec: &MatroidSpec, ground_size: usize, set: &[usize]) -> Result<bool> {
    if let Some(&bad) = set.iter().find(|&&e| e >= ground_size) {
        return Err(input(format!(
            "index {bad} outside ground set of size {ground_size}"
        )));
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(input("index set contains duplicates"));
    }
    Ok(spec.oracle(ground_size)?.is_independent(set))
}

/// Maximum-cardinality common independent set of two matroids.
///
/// Repeatedly augments along a shortest path of the exchange graph. Sources are
/// scanned and neighbours expanded in ascending index order, so the result is
/// deterministic. The returned set is sorted.
pub fn matroid_intersection_max<A, B>(m1: &A, m2: &B) -> Result<Vec<usize>>
where
    A: IndependenceOracle + ?Sized,
    B: IndependenceOracle + ?Sized,
{
    let n = m1.ground_size();
    if n != m2.ground_size() {
        return Err(input(format!(
            "ground sizes differ: {} vs {}",
            n,
            m2.ground_size()
        )));
    }
    let mut in_set = vec![false; n];
    loop {
        let current: Vec<usize> = (0..n).filter(|&e| in_set[e]).collect();
        match shortest_augmenting_path(m1, m2, &current, &in_set) {
            Some(path) => {
                for e in path {
                    in_set[e] = !in_set[e];
                }
            }
            None => return Ok(current),
        }
    }
}

fn with_element(set: &[usize], add: usize) -> Vec<usize> {
    let mut s = set.to_vec();
    s.push(add);
    s
}

fn exchanged(set: &[usize], remove: usize, add: usize) -> Vec<usize> {
    set.iter()
        .map(|&e| if e == remove { add } else { e })
        .collect()
}

fn shortest_augmenting_path<A, B>(
    m1: &A,
    m2: &B,
    current: &[usize],
    in_set: &[bool],
) -> Option<Vec<usize>>
where
    A: IndependenceOracle + ?Sized,
    B: IndependenceOracle + ?Sized,
{
    let n = in_set.len();
    let outside: Vec<usize> = (0..n).filter(|&e| !in_set[e]).collect();
    let sinks: Vec<bool> = {
        let mut sinks = vec![false; n];
        for &x in &outside {
            sinks[x] = m2.is_independent(&with_element(current, x));
        }
        sinks
    };

    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut visited = vec![false; n];
    let mut queue = VecDeque::new();
    for &x in &outside {
        if m1.is_independent(&with_element(current, x)) {
            visited[x] = true;
            queue.push_back(x);
        }
    }

    while let Some(v) = queue.pop_front() {
        if !in_set[v] && sinks[v] {
            let mut path = vec![v];
            let mut cur = v;
            while let Some(p) = parent[cur] {
                path.push(p);
                cur = p;
            }
            return Some(path);
        }
        for w in 0..n {
            if visited[w] || in_set[w] == in_set[v] {
                continue;
            }
            // outside x -> inside y when I - y + x is independent in m2;
            // inside y -> outside x when I - y + x is independent in m1.
            let arc = if in_set[v] {
                m1.is_independent(&exchanged(current, v, w))
            } else {
                m2.is_independent(&exchanged(current, w, v))
            };
            if arc {
                visited[w] = true;
                parent[w] = Some(v);
                queue.push_back(w);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn partition(parts: Vec<Vec<usize>>, capacities: Vec<usize>) -> MatroidSpec {
        MatroidSpec::Partition { parts, capacities }
    }

    #[test]
    fn uniform_membership() {
        let m = MatroidSpec::Uniform { rank: 2 };
        assert!(is_independent(&m, 3, &[0, 1]).unwrap());
        assert!(!is_independent(&m, 3, &[0, 1, 2]).unwrap());
        assert!(is_independent(&m, 3, &[]).unwrap());
    }

    #[test]
    fn partition_membership() {
        let m = partition(vec![vec![0, 1], vec![2]], vec![1, 0]);
        assert!(!is_independent(&m, 3, &[0, 2]).unwrap());
        assert!(is_independent(&m, 3, &[1]).unwrap());
        assert!(!is_independent(&m, 3, &[0, 1]).unwrap());
    }

    #[test]
    fn out_of_range_is_an_input_error() {
        let m = MatroidSpec::Uniform { rank: 2 };
        assert!(matches!(
            is_independent(&m, 3, &[3]),
            Err(crate::Error::Input(_))
        ));
    }

    #[test]
    fn malformed_partitions_rejected() {
        assert!(partition(vec![vec![0], vec![0, 1]], vec![1, 1])
            .validate(2)
            .is_err());
        assert!(partition(vec![vec![0]], vec![1]).validate(2).is_err());
        assert!(partition(vec![vec![0, 1]], vec![1, 1]).validate(2).is_err());
        assert!(partition(vec![vec![0, 1]], vec![1]).validate(2).is_ok());
    }

    #[test]
    fn uniform_meets_partition() {
        let u = MatroidSpec::Uniform { rank: 2 };
        let p = partition(vec![vec![0, 1], vec![2]], vec![1, 1]);
        let got = matroid_intersection_max(&u.oracle(3).unwrap(), &p.oracle(3).unwrap()).unwrap();
        assert_eq!(got, vec![0, 2]);
    }

    #[test]
    fn rank_zero_forces_empty() {
        let u = MatroidSpec::Uniform { rank: 0 };
        let p = partition(vec![vec![0, 1, 2]], vec![3]);
        let got = matroid_intersection_max(&p.oracle(3).unwrap(), &u.oracle(3).unwrap()).unwrap();
        assert!(got.is_empty());
    }

    #[test]
    fn two_uniforms_give_min_rank() {
        let a = MatroidSpec::Uniform { rank: 3 };
        let b = MatroidSpec::Uniform { rank: 1 };
        let got = matroid_intersection_max(&a.oracle(3).unwrap(), &b.oracle(3).unwrap()).unwrap();
        assert_eq!(got.len(), 1);
    }

    #[test]
    fn needs_an_exchange() {
        // Greedy would take 0 and get stuck; the optimum {1, 2} requires augmenting.
        let a = partition(vec![vec![0, 1], vec![2]], vec![1, 1]);
        let b = partition(vec![vec![0, 2], vec![1]], vec![1, 1]);
        let got = matroid_intersection_max(&a.oracle(3).unwrap(), &b.oracle(3).unwrap()).unwrap();
        assert_eq!(got.len(), 2);
    }

    #[test]
    fn closure_oracles_work() {
        let evens_only = FnOracle::new(4, |s: &[usize]| s.iter().all(|e| e % 2 == 0));
        let u = MatroidSpec::Uniform { rank: 4 };
        let got = matroid_intersection_max(&evens_only, &u.oracle(4).unwrap()).unwrap();
        assert_eq!(got, vec![0, 2]);
    }

    #[test]
    fn ground_mismatch_rejected() {
        let u = MatroidSpec::Uniform { rank: 1 };
        let r = matroid_intersection_max(&u.oracle(2).unwrap(), &u.oracle(3).unwrap());
        assert!(r.is_err());
    }

    #[test]
    fn json_schema() {
        let m: MatroidSpec = serde_json::from_str(r#"{"type":"uniform","rank":2}"#).unwrap();
        assert_eq!(m, MatroidSpec::Uniform { rank: 2 });
        let m: MatroidSpec =
            serde_json::from_str(r#"{"type":"partition","parts":[[0],[1,2]],"capacities":[1,0]}"#)
                .unwrap();
        assert_eq!(m, partition(vec![vec![0], vec![1, 2]], vec![1, 0]));
        assert!(
            serde_json::from_str::<MatroidSpec>(r#"{"type":"uniform","rank":2,"x":1}"#).is_err()
        );
    }
}
