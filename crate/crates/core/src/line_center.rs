//! 2.5-approximation for Matroid Center on the real line.
//!
//! Per candidate radius `r` the points are cut into segments at gaps larger
//! than `r`. Inside each segment a set of representatives is chosen that is
//! pairwise more than `2r` apart yet covers the segment within `1.5r`; those
//! come from a source-to-sink path in [`RepDag`]. Balls of radius `r` around
//! the representatives become the parts of a partition matroid, and a maximum
//! common independent set with the input matroid either hits every ball (a
//! `2.5r` solution) or proves that no radius-`r` solution exists.

use std::collections::VecDeque;

use crate::error::{input, internal, Error, Result};
use crate::geometry::candidate_radii_line;
use crate::instance::{LineInstance, Solution};
use crate::matroid::{matroid_intersection_max, IndependenceOracle, MatroidSpec};
use crate::scalar::ExactField;

/// Inclusive index range of a maximal run of points with gaps `<= r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
}

impl Segment {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<usize> {
        self.start..=self.end
    }
}

/// Result of one threshold test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EitherOr<T> {
    Solved(Solution<T>),
    /// Certificate that no solution of the tested radius exists.
    InfeasibleAtRadius,
}

impl<T> EitherOr<T> {
    pub fn solution(self) -> Option<Solution<T>> {
        match self {
            EitherOr::Solved(s) => Some(s),
            EitherOr::InfeasibleAtRadius => None,
        }
    }
}

/// Splits sorted points wherever consecutive points are more than `r` apart.
pub fn segment_points<T: ExactField>(points: &[T], r: &T) -> Vec<Segment> {
    let mut segments = Vec::new();
    if points.is_empty() {
        return segments;
    }
    let mut start = 0;
    for i in 1..points.len() {
        if points[i].clone() - points[i - 1].clone() > *r {
            segments.push(Segment { start, end: i - 1 });
            start = i;
        }
    }
    segments.push(Segment {
        start,
        end: points.len() - 1,
    });
    segments
}

/// Vertex of [`RepDag`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DagNode {
    Source,
    Point(usize),
    Sink,
}

/// Directed acyclic graph on `{source} ∪ points ∪ {sink}` over coordinates
/// scaled by `1/r`, whose source-sink paths are valid representative sets.
///
/// * source -> i   iff `y_i - y_0 <= 3/2`
/// * i -> sink     iff `y_last - y_i <= 3/2`
/// * i -> j (i<j)  iff `y_j - y_i > 2` and every `l` strictly between is
///   within `3/2` of `y_i` or `y_j`
#[derive(Debug, Clone)]
pub struct RepDag {
    from_source: Vec<usize>,
    to_sink: Vec<bool>,
    successors: Vec<Vec<usize>>,
}

impl RepDag {
    /// Builds the graph for a segment (consecutive gaps `<= r`, `r > 0`).
    pub fn build<T: ExactField>(points: &[T], r: &T) -> Result<Self> {
        if !r.is_positive() {
            return Err(input("representative graph needs a positive radius"));
        }
        let n = points.len();
        if n == 0 {
            return Err(input("empty segment"));
        }
        let scaled: Vec<T> = points.iter().map(|x| x.clone() / r.clone()).collect();
        let one_and_half = T::from_ratio(3, 2);
        let two = T::of_usize(2);
        let first = &scaled[0];
        let last = &scaled[n - 1];

        let from_source = (0..n)
            .filter(|&i| scaled[i].clone() - first.clone() <= one_and_half)
            .collect();
        let to_sink = (0..n)
            .map(|i| last.clone() - scaled[i].clone() <= one_and_half)
            .collect();
        let mut successors = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                if scaled[j].clone() - scaled[i].clone() <= two {
                    continue;
                }
                let covered = (i + 1..j).all(|l| {
                    scaled[l].clone() - scaled[i].clone() <= one_and_half
                        || scaled[j].clone() - scaled[l].clone() <= one_and_half
                });
                if covered {
                    successors[i].push(j);
                }
            }
        }
        Ok(RepDag {
            from_source,
            to_sink,
            successors,
        })
    }

    pub fn len(&self) -> usize {
        self.successors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.successors.is_empty()
    }

    /// Out-neighbours in ascending coordinate order (the sink comes last).
    pub fn out_neighbors(&self, node: DagNode) -> Vec<DagNode> {
        match node {
            DagNode::Source => self
                .from_source
                .iter()
                .map(|&i| DagNode::Point(i))
                .collect(),
            DagNode::Point(i) => {
                let mut out: Vec<DagNode> = self.successors[i]
                    .iter()
                    .map(|&j| DagNode::Point(j))
                    .collect();
                if self.to_sink[i] {
                    out.push(DagNode::Sink);
                }
                out
            }
            DagNode::Sink => Vec::new(),
        }
    }

    /// Interior vertices of the first source-sink path found by breadth-first
    /// search, or `None` if the sink is unreachable.
    pub fn first_path(&self) -> Option<Vec<usize>> {
        let n = self.len();
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for &i in &self.from_source {
            seen[i] = true;
            queue.push_back(i);
        }
        while let Some(i) = queue.pop_front() {
            for next in self.out_neighbors(DagNode::Point(i)) {
                match next {
                    DagNode::Sink => {
                        let mut path = vec![i];
                        let mut cur = i;
                        while let Some(p) = parent[cur] {
                            path.push(p);
                            cur = p;
                        }
                        path.reverse();
                        return Some(path);
                    }
                    DagNode::Point(j) if !seen[j] => {
                        seen[j] = true;
                        parent[j] = Some(i);
                        queue.push_back(j);
                    }
                    _ => {}
                }
            }
        }
        None
    }
}

/// Picks representatives `S` of a segment with `|s - s'| > 2r` for distinct
/// `s, s'` and every point within `1.5r` of `S`. Indices are local to `points`.
pub fn select_representatives<T: ExactField>(points: &[T], r: &T) -> Result<Vec<usize>> {
    if r.is_negative() {
        return Err(input("radius must be non-negative"));
    }
    if points.is_empty() {
        return Ok(Vec::new());
    }
    for w in points.windows(2) {
        if w[0] > w[1] || w[1].clone() - w[0].clone() > *r {
            return Err(input("segment must be sorted with consecutive gaps <= r"));
        }
    }
    if r.is_zero() {
        // All points coincide.
        return Ok(vec![0]);
    }
    RepDag::build(points, r)?
        .first_path()
        .ok_or_else(|| internal("no source-sink path in the representative graph"))
}

/// One capacity-1 part per ball `B(s, r)` and a capacity-0 remainder part
/// (omitted when empty). `reps` are global indices grouped by segment.
pub fn build_partition_matroid<T: ExactField>(
    reps: &[Vec<usize>],
    points: &[T],
    r: &T,
) -> Result<MatroidSpec> {
    let centers: Vec<usize> = reps.iter().flatten().copied().collect();
    partition_from_balls(points.len(), &centers, |s, x| {
        (points[s].clone() - points[x].clone()).abs() <= *r
    })
}

pub(crate) fn partition_from_balls(
    n: usize,
    centers: &[usize],
    in_ball: impl Fn(usize, usize) -> bool,
) -> Result<MatroidSpec> {
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut parts = Vec::with_capacity(centers.len() + 1);
    for (b, &s) in centers.iter().enumerate() {
        let ball: Vec<usize> = (0..n).filter(|&x| in_ball(s, x)).collect();
        for &x in &ball {
            if let Some(other) = owner[x] {
                return Err(internal(format!(
                    "balls around representatives {} and {s} overlap at {x}",
                    centers[other]
                )));
            }
            owner[x] = Some(b);
        }
        parts.push(ball);
    }
    let mut capacities = vec![1; parts.len()];
    let rest: Vec<usize> = (0..n).filter(|&x| owner[x].is_none()).collect();
    if !rest.is_empty() {
        parts.push(rest);
        capacities.push(0);
    }
    Ok(MatroidSpec::Partition { parts, capacities })
}

/// Intersects `matroid` with the ball partition and reports whether every
/// ball received a center.
pub(crate) fn intersect_with_balls(
    matroid: &dyn IndependenceOracle,
    partition: &MatroidSpec,
    balls: usize,
) -> Result<Option<Vec<usize>>> {
    let balls_oracle = partition.oracle(matroid.ground_size())?;
    let chosen = matroid_intersection_max(matroid, &balls_oracle)?;
    Ok((chosen.len() == balls).then_some(chosen))
}

/// `max_x min_{c in centers} (x - c)^2`.
pub fn line_sq_radius<T: ExactField>(points: &[T], centers: &[usize]) -> Option<T> {
    points
        .iter()
        .map(|x| {
            centers
                .iter()
                .map(|&c| (x.clone() - points[c].clone()).square())
                .min()
        })
        .try_fold(T::zero(), |acc, d| d.map(|d| acc.max(d)))
}

/// Either a solution of radius at most `2.5 r`, or a certificate that radius
/// `r` is infeasible.
pub fn either_or_line<T: ExactField>(inst: &LineInstance<T>, r: &T) -> Result<EitherOr<T>> {
    if r.is_negative() {
        return Err(input("radius must be non-negative"));
    }
    let points = inst.points();
    let mut reps = Vec::new();
    for seg in segment_points(points, r) {
        let local = select_representatives(&points[seg.indices()], r)?;
        reps.push(local.into_iter().map(|i| i + seg.start).collect::<Vec<_>>());
    }
    let balls: usize = reps.iter().map(Vec::len).sum();
    let partition = build_partition_matroid(&reps, points, r)?;
    let oracle = inst.matroid().oracle(points.len())?;
    let Some(centers) = intersect_with_balls(&oracle, &partition, balls)? else {
        return Ok(EitherOr::InfeasibleAtRadius);
    };
    let achieved = line_sq_radius(points, &centers).ok_or_else(|| internal("empty center set"))?;
    let bound = (T::from_ratio(5, 2) * r.clone()).square();
    if achieved > bound {
        return Err(internal(format!(
            "achieved squared radius {achieved} exceeds (2.5 r)^2 = {bound}"
        )));
    }
    Ok(EitherOr::Solved(Solution {
        centers,
        achieved_sq_radius: achieved,
        covered: (0..points.len()).collect(),
    }))
}

/// Runs [`either_or_line`] over the candidate radii in ascending order and
/// returns the first success.
pub fn solve_matroid_center_line<T: ExactField>(inst: &LineInstance<T>) -> Result<Solution<T>> {
    solve_with_radius(inst).map(|(s, _)| s)
}

/// Like [`solve_matroid_center_line`] but also returns the radius that succeeded.
pub fn solve_with_radius<T: ExactField>(inst: &LineInstance<T>) -> Result<(Solution<T>, T)> {
    for r in candidate_radii_line(inst) {
        if let EitherOr::Solved(sol) = either_or_line(inst, &r)? {
            return Ok((sol, r));
        }
    }
    Err(Error::Unsolvable)
}
