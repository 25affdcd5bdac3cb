//! Max k-Edge Cover, solved exactly by reduction to maximum-weight perfect
//! matching.
//!
//! The chain is: drop parallel edges, duplicate self-loops and isolated
//! vertices ([`preprocess_cover_instance`]); turn the cover problem into a
//! cardinality-constrained matching problem on `V ∪ V̄`
//! ([`cover_to_kmatching`]); pad that with `2k` budget vertices so every
//! perfect matching uses at most `k` original edges ([`kmatching_to_mwpm`]);
//! solve with the blossom algorithm ([`solve_mwpm`]); then read a cover back
//! off the matching.

mod blossom;
pub mod exhaustive;

use std::collections::{BTreeSet, HashMap};

use crate::error::{input, internal, Error, Result};

/// Edge of a [`CoverGraph`]; `u == v` is a self-loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverEdge {
    pub u: usize,
    pub v: usize,
    /// Facility that realises this edge, when built from a supplier instance.
    pub facility: Option<usize>,
}

impl CoverEdge {
    pub fn new(u: usize, v: usize) -> Self {
        CoverEdge {
            u,
            v,
            facility: None,
        }
    }

    pub fn tagged(u: usize, v: usize, facility: usize) -> Self {
        CoverEdge {
            u,
            v,
            facility: Some(facility),
        }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    fn key(&self) -> (usize, usize) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

/// Vertex-weighted multigraph (parallel edges and self-loops allowed).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoverGraph {
    weights: Vec<u64>,
    edges: Vec<CoverEdge>,
}

impl CoverGraph {
    pub fn new(weights: Vec<u64>, edges: Vec<CoverEdge>) -> Result<Self> {
        if let Some(e) = edges
            .iter()
            .find(|e| e.u >= weights.len() || e.v >= weights.len())
        {
            return Err(input(format!(
                "edge ({}, {}) outside vertex range 0..{}",
                e.u,
                e.v,
                weights.len()
            )));
        }
        Ok(CoverGraph { weights, edges })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn edges(&self) -> &[CoverEdge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.weights.len()
    }

    /// `w(V(S))` for the edge subset `s` (indices into [`Self::edges`]).
    pub fn covered_weight(&self, s: &[usize]) -> u64 {
        let mut hit = vec![false; self.weights.len()];
        for &e in s {
            let edge = self.edges[e];
            hit[edge.u] = true;
            hit[edge.v] = true;
        }
        hit.iter()
            .zip(&self.weights)
            .filter(|(h, _)| **h)
            .map(|(_, w)| w)
            .sum()
    }

    fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.weights.len()];
        for e in &self.edges {
            deg[e.u] += 1;
            if !e.is_loop() {
                deg[e.v] += 1;
            }
        }
        deg
    }
}

/// A simplified cover graph with maps back to the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preprocessed {
    pub graph: CoverGraph,
    /// New vertex index -> original vertex index.
    pub vertex_map: Vec<usize>,
    /// New edge index -> original edge index.
    pub edge_map: Vec<usize>,
}

/// Keeps the lowest-indexed edge among parallels and among the self-loops of
/// a vertex, then drops isolated vertices. The optimum is unchanged.
pub fn preprocess_cover_instance(g: &CoverGraph) -> Preprocessed {
    let mut seen = BTreeSet::new();
    let kept: Vec<usize> = (0..g.edges.len())
        .filter(|&i| seen.insert(g.edges[i].key()))
        .collect();
    let mut used = vec![false; g.num_vertices()];
    for &i in &kept {
        used[g.edges[i].u] = true;
        used[g.edges[i].v] = true;
    }
    let vertex_map: Vec<usize> = (0..g.num_vertices()).filter(|&v| used[v]).collect();
    let mut new_index = vec![usize::MAX; g.num_vertices()];
    for (new, &old) in vertex_map.iter().enumerate() {
        new_index[old] = new;
    }
    let edges = kept
        .iter()
        .map(|&i| {
            let e = g.edges[i];
            CoverEdge {
                u: new_index[e.u],
                v: new_index[e.v],
                facility: e.facility,
            }
        })
        .collect();
    let weights = vertex_map.iter().map(|&v| g.weights[v]).collect();
    Preprocessed {
        graph: CoverGraph { weights, edges },
        vertex_map,
        edge_map: kept,
    }
}

/// Simple undirected graph with non-negative integer edge weights.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightedGraph {
    num_vertices: usize,
    edges: Vec<(usize, usize, u64)>,
}

impl WeightedGraph {
    /// Rejects self-loops, parallel edges and out-of-range endpoints.
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize, u64)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(u, v, _) in &edges {
            if u >= num_vertices || v >= num_vertices {
                return Err(input(format!(
                    "edge ({u}, {v}) outside vertex range 0..{num_vertices}"
                )));
            }
            if u == v {
                return Err(input(format!("self-loop at {u} in a simple graph")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(input(format!("parallel edge ({u}, {v}) in a simple graph")));
            }
        }
        Ok(WeightedGraph {
            num_vertices,
            edges,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[(usize, usize, u64)] {
        &self.edges
    }
}

/// Where an edge of the k-matching graph came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KEdgeOrigin {
    /// A non-loop edge of the (preprocessed) cover graph.
    Cover(usize),
    /// The copy edge `(u, ū)` of vertex `u`.
    Copy(usize),
}

/// Max Weight k-Matching instance `H_G` on `V ∪ V̄` (vertex `u` has copy `n + u`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KMatchingInstance {
    pub graph: WeightedGraph,
    pub origins: Vec<KEdgeOrigin>,
    pub k: usize,
}

/// Builds `H_G`: every non-loop edge `(u, v)` with weight `w(u) + w(v)` and a
/// copy edge `(u, ū)` with weight `w(u)` per vertex. Self-loops vanish; the
/// copy edges stand in for them.
pub fn cover_to_kmatching(g: &CoverGraph, k: usize) -> Result<KMatchingInstance> {
    let n = g.num_vertices();
    let mut loops = vec![0; n];
    let mut seen = BTreeSet::new();
    for e in &g.edges {
        if e.is_loop() {
            loops[e.u] += 1;
        } else if !seen.insert(e.key()) {
            return Err(input("cover graph has parallel edges; preprocess it first"));
        }
    }
    if loops.iter().any(|&c| c > 1) {
        return Err(input(
            "cover graph has repeated self-loops; preprocess it first",
        ));
    }
    if g.degrees().contains(&0) {
        return Err(input(
            "cover graph has isolated vertices; preprocess it first",
        ));
    }
    let mut edges = Vec::new();
    let mut origins = Vec::new();
    for (i, e) in g.edges.iter().enumerate().filter(|(_, e)| !e.is_loop()) {
        edges.push((e.u, e.v, g.weights[e.u] + g.weights[e.v]));
        origins.push(KEdgeOrigin::Cover(i));
    }
    for u in 0..n {
        edges.push((u, n + u, g.weights[u]));
        origins.push(KEdgeOrigin::Copy(u));
    }
    Ok(KMatchingInstance {
        graph: WeightedGraph {
            num_vertices: 2 * n,
            edges,
        },
        origins,
        k,
    })
}

/// MWPM instance on `V ∪ V̄ ∪ K` with `|K| = 2k`.
///
/// Vertex layout: `V = 0..m`, `V̄ = m..2m`, `K = 2m..2m+2k`. The first
/// `num_original_edges` edges are the k-matching edges, in input order; all
/// added edges have weight 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MwpmInstance {
    pub graph: WeightedGraph,
    pub num_original_edges: usize,
    pub k: usize,
}

pub fn kmatching_to_mwpm(g: &WeightedGraph, k: usize) -> MwpmInstance {
    let m = g.num_vertices();
    let mut edges = g.edges.clone();
    edges.extend((0..m).map(|v| (v, m + v, 0)));
    let budget = 2 * m..2 * m + 2 * k;
    for c in budget.clone() {
        edges.extend((c + 1..budget.end).map(|d| (c, d, 0)));
    }
    for v in m..2 * m {
        edges.extend(budget.clone().map(|c| (v, c, 0)));
    }
    MwpmInstance {
        graph: WeightedGraph {
            num_vertices: 2 * m + 2 * k,
            edges,
        },
        num_original_edges: g.edges.len(),
        k,
    }
}

/// A perfect matching as sorted edge indices plus its total weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectMatching {
    pub edges: Vec<usize>,
    pub weight: u64,
}

/// Maximum-weight perfect matching via the blossom algorithm.
pub fn solve_mwpm(g: &WeightedGraph) -> Result<PerfectMatching> {
    let n = g.num_vertices;
    if n % 2 == 1 {
        return Err(Error::NoPerfectMatching);
    }
    let signed: Vec<(usize, usize, i64)> = g
        .edges
        .iter()
        .map(|&(u, v, w)| i64::try_from(w).map(|w| (u, v, w)))
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| input("edge weight too large"))?;
    let mate = blossom::Blossom::new(n, &signed, true).solve();
    let index: HashMap<(usize, usize), usize> = g
        .edges
        .iter()
        .enumerate()
        .map(|(i, &(u, v, _))| ((u.min(v), u.max(v)), i))
        .collect();
    let mut edges = Vec::with_capacity(n / 2);
    for (u, m) in mate.iter().enumerate() {
        let v = m.ok_or(Error::NoPerfectMatching)?;
        if u < v {
            edges.push(index[&(u, v)]);
        }
    }
    edges.sort_unstable();
    let weight = edges.iter().map(|&e| g.edges[e].2).sum();
    Ok(PerfectMatching { edges, weight })
}

/// Optimal Max k-Edge Cover: edge indices into the input graph, sorted, with
/// the covered vertex weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCover {
    pub edges: Vec<usize>,
    pub weight: u64,
}

/// Solves Max k-Edge Cover exactly through the matching reductions.
pub fn solve_max_k_edge_cover(g: &CoverGraph, k: usize) -> Result<EdgeCover> {
    let k = k.min(g.edges.len());
    if k == 0 {
        return Ok(EdgeCover {
            edges: Vec::new(),
            weight: 0,
        });
    }
    let pre = preprocess_cover_instance(g);
    let kmatching = cover_to_kmatching(&pre.graph, k)?;
    let mwpm = kmatching_to_mwpm(&kmatching.graph, k);
    let matching = solve_mwpm(&mwpm.graph).map_err(|e| {
        internal(format!(
            "padded matching instance must have a perfect matching: {e}"
        ))
    })?;
    let used: Vec<usize> = matching
        .edges
        .iter()
        .copied()
        .filter(|&e| e < mwpm.num_original_edges)
        .collect();
    if used.len() > k {
        return Err(internal(format!(
            "perfect matching used {} > k = {k} budgeted edges",
            used.len()
        )));
    }

    // Keep matched cover edges; cover each copy-matched vertex by its
    // lowest-indexed incident edge.
    let mut chosen = BTreeSet::new();
    for e in used {
        match kmatching.origins[e] {
            KEdgeOrigin::Cover(i) => {
                chosen.insert(i);
            }
            KEdgeOrigin::Copy(u) => {
                let incident = pre
                    .graph
                    .edges
                    .iter()
                    .position(|edge| edge.u == u || edge.v == u)
                    .ok_or_else(|| internal("preprocessed vertex without incident edge"))?;
                chosen.insert(incident);
            }
        }
    }
    let edges: Vec<usize> = chosen.iter().map(|&i| pre.edge_map[i]).collect();
    let weight = g.covered_weight(&edges);
    if weight < matching.weight {
        return Err(internal(format!(
            "extracted cover weight {weight} below matching weight {}",
            matching.weight
        )));
    }
    Ok(EdgeCover { edges, weight })
}

/// Largest edge count [`brute_force_edge_cover`] will enumerate.
pub const BRUTE_FORCE_EDGE_LIMIT: usize = 22;

/// Exhaustive Max k-Edge Cover value over all edge subsets of size `<= k`.
pub fn brute_force_edge_cover(g: &CoverGraph, k: usize) -> Result<u64> {
    let m = g.edges.len();
    if m > BRUTE_FORCE_EDGE_LIMIT {
        return Err(Error::Refused(format!(
            "{m} edges exceed the brute-force limit of {BRUTE_FORCE_EDGE_LIMIT}"
        )));
    }
    let masks: Vec<u64> = g
        .edges
        .iter()
        .map(|e| (1u64 << e.u) | (1u64 << e.v))
        .collect();
    if g.num_vertices() > 64 {
        return Err(Error::Refused("more than 64 vertices".into()));
    }
    let mut best = 0;
    for subset in 0u32..(1u32 << m) {
        if subset.count_ones() as usize > k {
            continue;
        }
        let covered = (0..m)
            .filter(|&i| subset >> i & 1 == 1)
            .fold(0u64, |acc, i| acc | masks[i]);
        let weight = (0..g.num_vertices())
            .filter(|&v| covered >> v & 1 == 1)
            .map(|v| g.weights[v])
            .sum();
        best = best.max(weight);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(weights: &[u64], edges: &[(usize, usize)]) -> CoverGraph {
        CoverGraph::new(
            weights.to_vec(),
            edges.iter().map(|&(u, v)| CoverEdge::new(u, v)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn parallel_edges_keep_lowest_index() {
        let g = graph(&[1, 1], &[(0, 1), (1, 0)]);
        let pre = preprocess_cover_instance(&g);
        assert_eq!(pre.edge_map, vec![0]);
        assert_eq!(pre.graph.edges().len(), 1);
    }

    #[test]
    fn duplicate_loops_collapse() {
        let g = graph(&[5], &[(0, 0), (0, 0)]);
        let pre = preprocess_cover_instance(&g);
        assert_eq!(pre.edge_map, vec![0]);
    }

    #[test]
    fn isolated_vertices_dropped_optimum_kept() {
        let g = graph(&[3, 9, 2], &[(0, 2)]);
        let pre = preprocess_cover_instance(&g);
        assert_eq!(pre.vertex_map, vec![0, 2]);
        assert_eq!(pre.graph.weights(), &[3, 2]);
        for k in 0..3 {
            assert_eq!(
                brute_force_edge_cover(&g, k).unwrap(),
                brute_force_edge_cover(&pre.graph, k).unwrap()
            );
        }
    }

    #[test]
    fn kmatching_from_self_loop() {
        let g = graph(&[7], &[(0, 0)]);
        let km = cover_to_kmatching(&g, 1).unwrap();
        assert_eq!(km.graph.edges(), &[(0, 1, 7)]);
        assert_eq!(km.graph.num_vertices(), 2);
    }

    #[test]
    fn kmatching_from_edge() {
        let g = graph(&[3, 2], &[(0, 1)]);
        let km = cover_to_kmatching(&g, 1).unwrap();
        assert_eq!(km.graph.edges(), &[(0, 1, 5), (0, 2, 3), (1, 3, 2)]);
    }

    #[test]
    fn kmatching_of_empty_graph() {
        let km = cover_to_kmatching(&CoverGraph::default(), 2).unwrap();
        assert_eq!(km.graph.num_vertices(), 0);
        assert!(km.graph.edges().is_empty());
    }

    #[test]
    fn kmatching_rejects_unpreprocessed() {
        assert!(cover_to_kmatching(&graph(&[1, 1], &[(0, 1), (0, 1)]), 1).is_err());
        assert!(cover_to_kmatching(&graph(&[1], &[(0, 0), (0, 0)]), 1).is_err());
        assert!(cover_to_kmatching(&graph(&[1, 1], &[(0, 0)]), 1).is_err());
    }

    #[test]
    fn mwpm_of_single_edge_with_budget() {
        let g = WeightedGraph::new(2, vec![(0, 1, 5)]).unwrap();
        let h = kmatching_to_mwpm(&g, 1);
        assert_eq!(h.graph.num_vertices(), 6);
        let pm = solve_mwpm(&h.graph).unwrap();
        assert_eq!(pm.weight, 5);
        assert!(pm.edges.contains(&0));
        assert_eq!(exhaustive::brute_force_mwpm(&h.graph).unwrap().weight, 5);
    }

    #[test]
    fn zero_budget_forbids_original_edges() {
        let g = WeightedGraph::new(2, vec![(0, 1, 5)]).unwrap();
        let h = kmatching_to_mwpm(&g, 0);
        let pm = solve_mwpm(&h.graph).unwrap();
        assert_eq!(pm.weight, 0);
        assert!(!pm.edges.contains(&0));
    }

    #[test]
    fn empty_edge_set_has_weight_zero() {
        let g = WeightedGraph::new(3, vec![]).unwrap();
        assert_eq!(
            solve_mwpm(&kmatching_to_mwpm(&g, 2).graph).unwrap().weight,
            0
        );
    }

    #[test]
    fn triangle_has_no_perfect_matching() {
        let g = WeightedGraph::new(3, vec![(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        assert_eq!(solve_mwpm(&g), Err(Error::NoPerfectMatching));
        let path = WeightedGraph::new(4, vec![(0, 1, 1), (0, 2, 1), (0, 3, 1)]).unwrap();
        assert_eq!(solve_mwpm(&path), Err(Error::NoPerfectMatching));
    }

    #[test]
    fn single_edge_matching() {
        let g = WeightedGraph::new(2, vec![(0, 1, 42)]).unwrap();
        assert_eq!(
            solve_mwpm(&g).unwrap(),
            PerfectMatching {
                edges: vec![0],
                weight: 42
            }
        );
        assert_eq!(solve_mwpm(&WeightedGraph::default()).unwrap().weight, 0);
    }

    #[test]
    fn perfect_beats_heavier_partial() {
        // Max-weight matching would take the heavy middle edge; a perfect one cannot.
        let g = WeightedGraph::new(4, vec![(0, 1, 1), (1, 2, 10), (2, 3, 1)]).unwrap();
        assert_eq!(solve_mwpm(&g).unwrap().weight, 2);
    }

    #[test]
    fn simple_graph_validation() {
        assert!(WeightedGraph::new(2, vec![(0, 0, 1)]).is_err());
        assert!(WeightedGraph::new(2, vec![(0, 1, 1), (1, 0, 2)]).is_err());
        assert!(WeightedGraph::new(2, vec![(0, 2, 1)]).is_err());
    }

    #[test]
    fn path_cover_examples() {
        let g = graph(&[3, 2, 1], &[(0, 1), (1, 2)]);
        assert_eq!(brute_force_edge_cover(&g, 1).unwrap(), 5);
        let cover = solve_max_k_edge_cover(&g, 1).unwrap();
        assert_eq!(
            cover,
            EdgeCover {
                edges: vec![0],
                weight: 5
            }
        );
        assert_eq!(
            solve_max_k_edge_cover(&g, 0).unwrap(),
            EdgeCover {
                edges: vec![],
                weight: 0
            }
        );
        assert_eq!(brute_force_edge_cover(&g, 0).unwrap(), 0);
    }

    #[test]
    fn large_budget_covers_everything_non_isolated() {
        let g = graph(&[3, 2, 1, 100, 4], &[(0, 1), (1, 2), (4, 4)]);
        let cover = solve_max_k_edge_cover(&g, 5).unwrap();
        assert_eq!(cover.weight, 10);
        assert_eq!(brute_force_edge_cover(&g, 5).unwrap(), 10);
    }

    #[test]
    fn self_loop_brute_force() {
        let g = graph(&[4], &[(0, 0)]);
        assert_eq!(brute_force_edge_cover(&g, 3).unwrap(), 4);
        assert_eq!(solve_max_k_edge_cover(&g, 3).unwrap().weight, 4);
    }

    #[test]
    fn facility_tags_survive_extraction() {
        let edges = vec![
            CoverEdge::tagged(0, 1, 7),
            CoverEdge::tagged(0, 1, 3),
            CoverEdge::tagged(2, 2, 9),
        ];
        let g = CoverGraph::new(vec![1, 1, 5], edges).unwrap();
        let cover = solve_max_k_edge_cover(&g, 1).unwrap();
        assert_eq!(cover.edges, vec![2]);
        assert_eq!(g.edges()[cover.edges[0]].facility, Some(9));
    }

    #[test]
    fn brute_force_guard() {
        let edges: Vec<(usize, usize)> = (0..23).map(|_| (0, 1)).collect();
        assert!(matches!(
            brute_force_edge_cover(&graph(&[1, 1], &edges), 2),
            Err(Error::Refused(_))
        ));
    }
}
