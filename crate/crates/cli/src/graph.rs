//! Edge-cover graph files: `{"vertices": [{"w": 3}, ...], "edges": [[0, 1], [2, 2]]}`.

use anyhow::{bail, Result};
use centerkit::{CoverEdge, CoverGraph};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Vertex {
    w: u64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    vertices: Vec<Vertex>,
    edges: Vec<Vec<usize>>,
}

pub fn parse_graph(text: &str) -> Result<CoverGraph> {
    let raw: GraphJson = serde_json::from_str(text)?;
    let mut edges = Vec::with_capacity(raw.edges.len());
    for e in &raw.edges {
        match e[..] {
            [u, v] => edges.push(CoverEdge::new(u, v)),
            _ => bail!("edge {e:?} must have exactly two endpoints"),
        }
    }
    Ok(CoverGraph::new(
        raw.vertices.iter().map(|v| v.w).collect(),
        edges,
    )?)
}

pub fn graph_json(g: &CoverGraph) -> String {
    let raw = GraphJson {
        vertices: g.weights().iter().map(|&w| Vertex { w }).collect(),
        edges: g.edges().iter().map(|e| vec![e.u, e.v]).collect(),
    };
    serde_json::to_string(&raw).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_loops_and_round_trips() {
        let text = r#"{"vertices":[{"w":2},{"w":5}],"edges":[[0,1],[1,1]]}"#;
        let g = parse_graph(text).unwrap();
        assert!(g.edges()[1].is_loop());
        assert_eq!(graph_json(&g), text);
    }

    #[test]
    fn rejects_hyperedges() {
        assert!(parse_graph(r#"{"vertices":[{"w":1}],"edges":[[0,0,0]]}"#).is_err());
    }
}
