use std::fmt::Write;
use std::hash::Hasher;

use fnv::FnvHasher;
use serde::Serialize;

use super::FlipGraph;
use crate::tiling::DominoTiling;

/// FNV-1a hash of the tiling's sorted words joined by commas. Stable across
/// runs and platforms.
pub fn tiling_hash(t: &DominoTiling) -> u64 {
    let mut h = FnvHasher::default();
    let text: Vec<String> = t.words().iter().map(|w| w.to_string()).collect();
    h.write(text.join(",").as_bytes());
    h.finish()
}

/// DOT text: nodes labelled by hash, edges by their flip axes (1-based).
pub fn to_dot(g: &FlipGraph) -> String {
    let mut out = String::from("graph flips {\n");
    for (i, t) in g.nodes.iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{:016x}\"];", tiling_hash(t)).unwrap();
    }
    for (a, b, f) in &g.edges {
        writeln!(out, "  n{a} -- n{b} [label=\"{}->{}\"];", f.removed.axis + 1, f.inserted.axis + 1).unwrap();
    }
    if g.truncated {
        out.push_str("  // truncated\n");
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct JsonGraph {
    nodes: Vec<Vec<String>>,
    edges: Vec<JsonEdge>,
    truncated: bool,
}

#[derive(Serialize)]
struct JsonEdge {
    from: usize,
    to: usize,
    axes: [usize; 2],
    removed: [String; 2],
    inserted: [String; 2],
}

/// JSON with full words; axes are 1-based.
pub fn to_json(g: &FlipGraph) -> String {
    let graph = JsonGraph {
        nodes: g.nodes.iter().map(|t| t.words().iter().map(|w| w.to_string()).collect()).collect(),
        edges: g
            .edges
            .iter()
            .map(|(a, b, f)| JsonEdge {
                from: *a,
                to: *b,
                axes: [f.removed.axis + 1, f.inserted.axis + 1],
                removed: f.removed.words.map(|w| w.to_string()),
                inserted: f.inserted.words.map(|w| w.to_string()),
            })
            .collect(),
        truncated: g.truncated,
    };
    serde_json::to_string_pretty(&graph).expect("plain data serializes")
}
