//! Exponential perfect-matching enumeration, the correctness oracle for the
//! blossom solver.

use super::{PerfectMatching, WeightedGraph};
use crate::error::{Error, Result};

/// Largest vertex count the enumerator accepts.
pub const EXHAUSTIVE_VERTEX_LIMIT: usize = 16;

/// Calls `visit` with the (sorted) edge indices of every perfect matching.
pub fn enumerate_perfect_matchings(
    g: &WeightedGraph,
    mut visit: impl FnMut(&[usize]),
) -> Result<()> {
    let n = g.num_vertices();
    if n > EXHAUSTIVE_VERTEX_LIMIT {
        return Err(Error::Refused(format!(
            "{n} vertices exceed the enumeration limit of {EXHAUSTIVE_VERTEX_LIMIT}"
        )));
    }
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &(u, v, _)) in g.edges().iter().enumerate() {
        incident[u].push((v, i));
        incident[v].push((u, i));
    }
    let mut matched = vec![false; n];
    let mut chosen = Vec::new();
    recurse(&incident, &mut matched, &mut chosen, &mut visit);
    Ok(())
}

fn recurse(
    incident: &[Vec<(usize, usize)>],
    matched: &mut [bool],
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    let Some(u) = matched.iter().position(|m| !m) else {
        let mut sorted = chosen.clone();
        sorted.sort_unstable();
        visit(&sorted);
        return;
    };
    matched[u] = true;
    for &(v, e) in &incident[u] {
        if !matched[v] {
            matched[v] = true;
            chosen.push(e);
            recurse(incident, matched, chosen, visit);
            chosen.pop();
            matched[v] = false;
        }
    }
    matched[u] = false;
}

/// Best perfect matching by enumeration; ties go to the first one found.
pub fn brute_force_mwpm(g: &WeightedGraph) -> Result<PerfectMatching> {
    let mut best: Option<PerfectMatching> = None;
    enumerate_perfect_matchings(g, |edges| {
        let weight = edges.iter().map(|&e| g.edges()[e].2).sum();
        if best.as_ref().is_none_or(|b| weight > b.weight) {
            best = Some(PerfectMatching {
                edges: edges.to_vec(),
                weight,
            });
        }
    })?;
    best.ok_or(Error::NoPerfectMatching)
}
