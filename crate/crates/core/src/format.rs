//! Line-oriented text formats for graphs and embeddings.
//!
//! ```text
//! c any comment
//! p <n> <m>          vertex-id space and live edge count, first non-comment line
//! d <v>              vertex v is deleted (tombstoned)
//! e <u> <v>          an edge, 0-based ids
//! r <v> <w1> <w2> .. clockwise neighbor order at v (embeddings only)
//! o <u> <v>          the face left of dart u->v is outer (embeddings only)
//! ```
//!
//! Serialization is canonical: header, then `d` lines ascending, `e` lines
//! with `u < v` in lexicographic order, then `r` lines for every live vertex
//! and one `o` line per component with edges.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::plane::{Dart, PlaneGraph};

struct Raw {
    graph: Graph,
    rotations: Vec<Option<Vec<Vertex>>>,
    outer: Vec<Dart>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_raw(text: &str) -> Result<Raw> {
    let mut header: Option<(usize, usize)> = None;
    let mut deleted = Vec::new();
    let mut edges = Vec::new();
    let mut rot_lines = Vec::new();
    let mut outer = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let mut toks = line.split_whitespace();
        let Some(tag) = toks.next() else { continue };
        if tag == "c" {
            continue;
        }
        let nums: Vec<usize> = toks
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| parse_err(lineno, format!("bad integer {t:?}")))
            })
            .collect::<Result<_>>()?;
        match (tag, header.is_some()) {
            ("p", false) => {
                if nums.len() != 2 {
                    return Err(parse_err(lineno, "expected `p <n> <m>`"));
                }
                header = Some((nums[0], nums[1]));
            }
            ("p", true) => return Err(parse_err(lineno, "duplicate header")),
            (_, false) => return Err(parse_err(lineno, "expected `p <n> <m>` header first")),
            ("d", true) => {
                if nums.len() != 1 {
                    return Err(parse_err(lineno, "expected `d <v>`"));
                }
                deleted.push((lineno, nums[0]));
            }
            ("e", true) => {
                if nums.len() != 2 {
                    return Err(parse_err(lineno, "expected `e <u> <v>`"));
                }
                edges.push((lineno, nums[0], nums[1]));
            }
            ("r", true) => {
                if nums.is_empty() {
                    return Err(parse_err(lineno, "expected `r <v> <w>...`"));
                }
                rot_lines.push((lineno, nums));
            }
            ("o", true) => {
                if nums.len() != 2 {
                    return Err(parse_err(lineno, "expected `o <u> <v>`"));
                }
                outer.push((nums[0], nums[1]));
            }
            (other, true) => return Err(parse_err(lineno, format!("unknown line tag {other:?}"))),
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(0, "missing `p` header"))?;
    let mut graph = Graph::new(n);
    for &(lineno, v) in &deleted {
        if !graph.is_live(v) {
            return Err(parse_err(lineno, format!("cannot delete vertex {v}")));
        }
        graph.tombstone(v);
    }
    for &(lineno, u, v) in &edges {
        graph.insert_edge(u, v).map_err(|e| parse_err(lineno, e.to_string()))?;
    }
    if graph.edge_count() != m {
        return Err(parse_err(
            0,
            format!("header announces {m} edges, found {}", graph.edge_count()),
        ));
    }
    let mut rotations = vec![None; n];
    for (lineno, nums) in rot_lines {
        let v = nums[0];
        if v >= n {
            return Err(parse_err(lineno, format!("rotation for unknown vertex {v}")));
        }
        if rotations[v].is_some() {
            return Err(parse_err(lineno, format!("duplicate rotation for vertex {v}")));
        }
        rotations[v] = Some(nums[1..].to_vec());
    }
    Ok(Raw {
        graph,
        rotations,
        outer,
    })
}

/// Parses the edge-list format. Rotation and outer-face lines are accepted
/// and ignored, so embedding files can be read as plain graphs.
pub fn parse_graph(text: &str) -> Result<Graph> {
    Ok(parse_raw(text)?.graph)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p {} {}", g.capacity(), g.edge_count()).unwrap();
    for v in g.deleted() {
        writeln!(out, "d {v}").unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

/// Parses an embedding file. Every live vertex with edges needs an `r` line.
pub fn parse_embedding(text: &str) -> Result<PlaneGraph> {
    let raw = parse_raw(text)?;
    let mut rotation = Vec::with_capacity(raw.graph.capacity());
    for (v, r) in raw.rotations.into_iter().enumerate() {
        match r {
            Some(r) => rotation.push(r),
            None if raw.graph.is_live(v) && !raw.graph.adj(v).is_empty() => {
                return Err(Error::InvalidEmbedding(format!("missing rotation for vertex {v}")))
            }
            None => rotation.push(Vec::new()),
        }
    }
    PlaneGraph::with_outer_darts(raw.graph, rotation, &raw.outer)
}

pub fn write_embedding(pg: &PlaneGraph) -> String {
    let g = pg.graph();
    let mut out = write_graph(g);
    for v in g.vertices() {
        out.push_str(&format!("r {v}"));
        for w in pg.rotation(v) {
            write!(out, " {w}").unwrap();
        }
        out.push('\n');
    }
    for f in pg.outer_faces() {
        let (a, b) = pg.canonical_dart(f);
        writeln!(out, "o {a} {b}").unwrap();
    }
    out
}
