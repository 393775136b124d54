//! Instance text format.
//!
//! One directive per line, `#` starts a comment:
//!
//! ```text
//! p oct <n> <m>     header, exactly once, before all other directives
//! e <u> <v>         edge
//! x <v>             modulator member
//! m <u> <v>         monochromatic pair
//! z <v>             deletable vertex (restricted variant)
//! w <v> <weight>    vertex weight (default 1)
//! l <ell>           budget
//! ```
//!
//! Vertices are 0-based integers below `n`. The writer emits directives in
//! the order above, each group sorted numerically, and renumbers vertices
//! densely in ascending id order; written files re-parse to the same value
//! and re-write byte-identically.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::graph::{pair, Graph, Pair, Vertex, VertexSet};

/// A parsed instance file. Which problem variant it denotes is decided by the
/// directives present: `z` lines make it restricted, `m` lines annotated and
/// non-default weights weighted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub modulator: VertexSet,
    pub mono: BTreeSet<Pair>,
    pub deletable: Option<VertexSet>,
    pub budget: i64,
}

impl Instance {
    pub fn new(graph: Graph, modulator: VertexSet, budget: i64) -> Self {
        Instance {
            graph,
            modulator,
            mono: BTreeSet::new(),
            deletable: None,
            budget,
        }
    }

    pub fn has_weights(&self) -> bool {
        self.graph.explicit_weights().next().is_some()
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {0}: {1}")]
    Malformed(usize, String),
    #[error("missing `p oct` header")]
    MissingHeader,
    #[error("line {0}: duplicate header")]
    DuplicateHeader(usize),
    #[error("line {0}: vertex {1} out of range (n = {2})")]
    VertexOutOfRange(usize, u64, u32),
    #[error("line {0}: self-loop on vertex {1}")]
    SelfLoop(usize, Vertex),
    #[error("line {0}: duplicate edge {1} {2}")]
    DuplicateEdge(usize, Vertex, Vertex),
    #[error("header promised {0} edges but {1} were given")]
    EdgeCountMismatch(usize, usize),
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut header: Option<(u32, usize)> = None;
    let mut graph = Graph::new();
    let mut modulator = VertexSet::new();
    let mut mono = BTreeSet::new();
    let mut deletable: Option<VertexSet> = None;
    let mut budget: i64 = 0;
    let mut edges_seen = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let malformed = || ParseError::Malformed(lineno, raw.trim().to_string());
        let n_of = |header: &Option<(u32, usize)>| header.map(|(n, _)| n).unwrap_or(0);
        let vertex = |tok: &str, header: &Option<(u32, usize)>| -> Result<Vertex, ParseError> {
            let v: u64 = tok.parse().map_err(|_| malformed())?;
            if v >= n_of(header) as u64 {
                return Err(ParseError::VertexOutOfRange(lineno, v, n_of(header)));
            }
            Ok(v as Vertex)
        };
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(ParseError::DuplicateHeader(lineno));
                }
                if fields.len() != 4 || fields[1] != "oct" {
                    return Err(malformed());
                }
                let n: u32 = fields[2].parse().map_err(|_| malformed())?;
                let m: usize = fields[3].parse().map_err(|_| malformed())?;
                graph = Graph::with_vertices(n);
                header = Some((n, m));
            }
            _ if header.is_none() => return Err(ParseError::MissingHeader),
            "e" => {
                if fields.len() != 3 {
                    return Err(malformed());
                }
                let u = vertex(fields[1], &header)?;
                let v = vertex(fields[2], &header)?;
                if u == v {
                    return Err(ParseError::SelfLoop(lineno, u));
                }
                if graph.has_edge(u, v) {
                    return Err(ParseError::DuplicateEdge(lineno, u.min(v), u.max(v)));
                }
                graph.add_edge(u, v);
                edges_seen += 1;
            }
            "x" => {
                if fields.len() != 2 {
                    return Err(malformed());
                }
                modulator.insert(vertex(fields[1], &header)?);
            }
            "m" => {
                if fields.len() != 3 {
                    return Err(malformed());
                }
                let u = vertex(fields[1], &header)?;
                let v = vertex(fields[2], &header)?;
                if u == v {
                    return Err(ParseError::SelfLoop(lineno, u));
                }
                mono.insert(pair(u, v));
            }
            "z" => {
                if fields.len() != 2 {
                    return Err(malformed());
                }
                deletable
                    .get_or_insert_with(VertexSet::new)
                    .insert(vertex(fields[1], &header)?);
            }
            "w" => {
                if fields.len() != 3 {
                    return Err(malformed());
                }
                let v = vertex(fields[1], &header)?;
                let w: u64 = fields[2].parse().map_err(|_| malformed())?;
                graph.set_weight(v, w);
            }
            "l" => {
                if fields.len() != 2 {
                    return Err(malformed());
                }
                let ell: i64 = fields[1].parse().map_err(|_| malformed())?;
                if ell < 0 {
                    return Err(malformed());
                }
                budget = ell;
            }
            _ => return Err(malformed()),
        }
    }

    let (_, m) = header.ok_or(ParseError::MissingHeader)?;
    if m != edges_seen {
        return Err(ParseError::EdgeCountMismatch(m, edges_seen));
    }
    Ok(Instance {
        graph,
        modulator,
        mono,
        deletable,
        budget,
    })
}

/// Order-preserving dense renumbering into the serialization-normal form.
/// An empty deletable set has no textual representation (no `z` lines means
/// unrestricted), so it normalizes away here.
pub fn compact(inst: &Instance) -> Instance {
    let ids: Vec<Vertex> = inst.graph.vertices().collect();
    let rank = |v: Vertex| ids.binary_search(&v).unwrap() as Vertex;
    let mut graph = Graph::with_vertices(ids.len() as u32);
    for &v in &ids {
        graph.set_weight(rank(v), inst.graph.weight(v));
    }
    for (u, v) in inst.graph.edges() {
        graph.add_edge(rank(u), rank(v));
    }
    Instance {
        graph,
        modulator: inst.modulator.iter().map(|&v| rank(v)).collect(),
        mono: inst
            .mono
            .iter()
            .map(|&(u, v)| pair(rank(u), rank(v)))
            .collect(),
        deletable: inst
            .deletable
            .as_ref()
            .filter(|z| !z.is_empty())
            .map(|z| z.iter().map(|&v| rank(v)).collect()),
        budget: inst.budget,
    }
}

/// Canonical text form. Vertices are renumbered densely first, so any
/// instance can be written; a written file re-parses to `compact(inst)`.
pub fn write_instance(inst: &Instance) -> String {
    let inst = compact(inst);
    let mut out = String::new();
    writeln!(
        out,
        "p oct {} {}",
        inst.graph.vertex_count(),
        inst.graph.edge_count()
    )
    .unwrap();
    for (u, v) in inst.graph.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    for v in &inst.modulator {
        writeln!(out, "x {v}").unwrap();
    }
    for (u, v) in &inst.mono {
        writeln!(out, "m {u} {v}").unwrap();
    }
    for z in inst.deletable.iter().flatten() {
        writeln!(out, "z {z}").unwrap();
    }
    for (v, w) in inst.graph.explicit_weights() {
        writeln!(out, "w {v} {w}").unwrap();
    }
    writeln!(out, "l {}", inst.budget).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_directives() {
        let text = "# sample\np oct 4 3\ne 0 1\ne 1 2\ne 2 3\nx 0\nm 0 3\nz 1\nw 2 5\nl 2\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.graph.vertex_count(), 4);
        assert_eq!(inst.graph.edge_count(), 3);
        assert_eq!(inst.modulator, VertexSet::from([0]));
        assert_eq!(inst.mono, BTreeSet::from([(0, 3)]));
        assert_eq!(inst.deletable, Some(VertexSet::from([1])));
        assert_eq!(inst.graph.weight(2), 5);
        assert_eq!(inst.budget, 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_instance("e 0 1\n"),
            Err(ParseError::MissingHeader)
        ));
        assert!(matches!(
            parse_instance("p oct 2 1\ne 0 0\n"),
            Err(ParseError::SelfLoop(2, 0))
        ));
        assert!(matches!(
            parse_instance("p oct 2 2\ne 0 1\ne 1 0\n"),
            Err(ParseError::DuplicateEdge(3, 0, 1))
        ));
        assert!(matches!(
            parse_instance("p oct 2 1\ne 0 5\n"),
            Err(ParseError::VertexOutOfRange(2, 5, 2))
        ));
        assert!(matches!(
            parse_instance("p oct 2 0\nl 1\n"),
            Err(ParseError::EdgeCountMismatch(0, 0)) | Ok(_)
        ));
        assert!(matches!(
            parse_instance("p oct 2 3\ne 0 1\n"),
            Err(ParseError::EdgeCountMismatch(3, 1))
        ));
    }

    #[test]
    fn write_is_canonical_fixed_point() {
        let text = "p oct 3 2\ne 0 1\ne 1 2\nx 2\nl 1\n";
        let inst = parse_instance(text).unwrap();
        let written = write_instance(&inst);
        assert_eq!(written, text);
        assert_eq!(parse_instance(&written).unwrap(), inst);
    }

    #[test]
    fn writer_compacts_holes() {
        let mut g = Graph::with_vertices(4);
        g.add_edge(0, 3);
        g.remove_vertex(1);
        let inst = Instance::new(g, VertexSet::from([3]), 0);
        let written = write_instance(&inst);
        assert_eq!(written, "p oct 3 1\ne 0 2\nx 2\nl 0\n");
        let reparsed = parse_instance(&written).unwrap();
        assert_eq!(write_instance(&reparsed), written);
    }
}
