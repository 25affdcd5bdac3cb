//! Seeded random instance generators shared by tests, benchmarks and the CLI.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{input, Result};
use crate::instance::{LineInstance, SupplierInstance};
use crate::matching::{CoverEdge, CoverGraph, WeightedGraph};
use crate::matroid::MatroidSpec;
use crate::scalar::Rational;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineParams {
    pub n: usize,
    /// Coordinates are multiples of `1/denominator` in `[0, max_coord]`.
    pub max_coord: i64,
    pub denominator: i64,
}

impl Default for LineParams {
    fn default() -> Self {
        LineParams {
            n: 8,
            max_coord: 20,
            denominator: 2,
        }
    }
}

/// A random matroid on `n` elements: uniform or partition, half the time
/// each. At least one partition part has positive capacity.
pub fn random_matroid<R: Rng>(rng: &mut R, n: usize) -> MatroidSpec {
    if n == 0 || rng.gen_bool(0.5) {
        return MatroidSpec::Uniform {
            rank: rng.gen_range(1..=n.max(1)),
        };
    }
    let num_parts = rng.gen_range(1..=n.min(4));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut parts = vec![Vec::new(); num_parts];
    for (i, &e) in order.iter().enumerate() {
        // The first `num_parts` elements seed the parts so none is empty.
        let j = if i < num_parts {
            i
        } else {
            rng.gen_range(0..num_parts)
        };
        parts[j].push(e);
    }
    for part in &mut parts {
        part.sort_unstable();
    }
    let mut capacities: Vec<usize> = parts
        .iter()
        .map(|p| rng.gen_range(0..=p.len().min(2)))
        .collect();
    if capacities.iter().all(|&c| c == 0) {
        capacities[0] = 1;
    }
    MatroidSpec::Partition { parts, capacities }
}

pub fn random_line_instance<R: Rng>(
    rng: &mut R,
    params: LineParams,
) -> Result<LineInstance<Rational>> {
    if params.n == 0 {
        return Err(input("line instance needs n >= 1"));
    }
    if params.denominator <= 0 || params.max_coord < 0 {
        return Err(input("coordinate box must be non-empty"));
    }
    let hi = params.max_coord * params.denominator;
    let mut raw: Vec<i64> = (0..params.n).map(|_| rng.gen_range(0..=hi)).collect();
    raw.sort_unstable();
    let points = raw.into_iter().map(|v| q(v, params.denominator)).collect();
    LineInstance::new(points, random_matroid(rng, params.n))
}

/// Sorted points whose consecutive gaps are multiples of `r/4` in `[0, r]`.
pub fn random_segment<R: Rng>(rng: &mut R, n: usize, r: &Rational) -> Vec<Rational> {
    let mut x = Rational::from_integer(rng.gen_range(-5..=5).into());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        if i > 0 {
            x += r * q(rng.gen_range(0..=4), 4);
        }
        out.push(x.clone());
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupplierParams {
    pub clients: usize,
    pub facilities: usize,
    pub dim: usize,
    /// Integer coordinates in `[0, max_coord]`.
    pub max_coord: i64,
    pub k: usize,
    /// `None` draws `p` uniformly from `0..=clients`.
    pub p: Option<usize>,
}

impl Default for SupplierParams {
    fn default() -> Self {
        SupplierParams {
            clients: 8,
            facilities: 5,
            dim: 2,
            max_coord: 20,
            k: 2,
            p: None,
        }
    }
}

pub fn random_supplier_instance<R: Rng>(
    rng: &mut R,
    params: SupplierParams,
) -> Result<SupplierInstance<Rational>> {
    if params.clients == 0 || params.facilities == 0 || params.dim == 0 {
        return Err(input("clients, facilities and dim must be positive"));
    }
    if params.max_coord < 0 {
        return Err(input("coordinate box must be non-empty"));
    }
    let point = |rng: &mut R| -> Vec<Rational> {
        (0..params.dim)
            .map(|_| Rational::from_integer(rng.gen_range(0..=params.max_coord).into()))
            .collect()
    };
    let clients: Vec<_> = (0..params.clients).map(|_| point(rng)).collect();
    let facilities: Vec<_> = (0..params.facilities).map(|_| point(rng)).collect();
    let p = match params.p {
        Some(p) => p,
        None => rng.gen_range(0..=params.clients),
    };
    SupplierInstance::new(params.dim, clients, facilities, params.k, p)
}

/// Two far-apart client triangles with a facility at each edge midpoint,
/// plus up to `noise` random clients; `k = 3`. The relaxation is feasible
/// at the midpoint radius with `y = 1/2` everywhere, yet three facilities
/// serve at most five triangle clients, so high `p` forces cuts.
pub fn triangle_gadget_supplier<R: Rng>(
    rng: &mut R,
    noise: usize,
) -> Result<SupplierInstance<Rational>> {
    let z = |v: i64| Rational::from_integer(v.into());
    let mut clients = Vec::new();
    let mut facilities = Vec::new();
    for t in 0..2 {
        let (dx, dy) = (t * 60 + rng.gen_range(0..=10), rng.gen_range(0..=10));
        let s = rng.gen_range(1..=2);
        for (x, y) in [(0, 0), (8, 0), (4, 6)] {
            clients.push(vec![z(dx + s * x), z(dy + s * y)]);
        }
        for (x, y) in [(4, 0), (2, 3), (6, 3)] {
            facilities.push(vec![z(dx + s * x), z(dy + s * y)]);
        }
    }
    for _ in 0..rng.gen_range(0..=noise) {
        clients.push(vec![z(rng.gen_range(0..=80)), z(rng.gen_range(0..=20))]);
    }
    let p = rng.gen_range(5..=clients.len());
    SupplierInstance::new(2, clients, facilities, 3, p)
}

/// Random multigraph with loops, vertex weights in `1..=max_weight`.
pub fn random_cover_graph<R: Rng>(
    rng: &mut R,
    vertices: usize,
    edges: usize,
    max_weight: u64,
) -> Result<CoverGraph> {
    if vertices == 0 && edges > 0 {
        return Err(input("edges need vertices"));
    }
    let weights = (0..vertices)
        .map(|_| rng.gen_range(1..=max_weight.max(1)))
        .collect();
    let list = (0..edges)
        .map(|_| CoverEdge::new(rng.gen_range(0..vertices), rng.gen_range(0..vertices)))
        .collect();
    CoverGraph::new(weights, list)
}

/// Random simple graph, each pair present with probability `density`.
pub fn random_weighted_graph<R: Rng>(
    rng: &mut R,
    vertices: usize,
    density: f64,
    max_weight: u64,
) -> Result<WeightedGraph> {
    let mut edges = Vec::new();
    for u in 0..vertices {
        for v in u + 1..vertices {
            if rng.gen_bool(density) {
                edges.push((u, v, rng.gen_range(0..=max_weight)));
            }
        }
    }
    WeightedGraph::new(vertices, edges)
}
