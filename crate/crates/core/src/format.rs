//! Line-oriented text format for colored graphs and contraction sequences.
//!
//! ```text
//! # comment
//! p graph <n> <m>
//! c <v> <color>
//! e <u> <v>
//! m <partA> <partB>
//! ```
//!
//! The header comes first and exactly once. Color lines are optional (at most
//! one per vertex). Merge lines are only accepted by [`parse_sequence_file`].

use std::fmt::Write;

use crate::error::{ContractionError, GraphError};
use crate::graph::{Color, ColoredGraph, Vertex};
use crate::trigraph::ContractionSequence;

struct Parsed {
    graph: ColoredGraph,
    merges: Vec<(usize, usize, usize)>,
}

fn perr(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        msg: msg.into(),
    }
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, GraphError> {
    tok.ok_or_else(|| perr(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| perr(line, format!("invalid {what}")))
}

fn parse_inner(text: &str, allow_merges: bool) -> Result<Parsed, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut edge_lines = Vec::new();
    let mut colors: Vec<Option<Color>> = Vec::new();
    let mut merges = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let kind = toks.next().unwrap();
        if header.is_none() && kind != "p" {
            return Err(perr(line_no, "expected header 'p graph <n> <m>' first"));
        }
        match kind {
            "p" => {
                if header.is_some() {
                    return Err(perr(line_no, "duplicate header"));
                }
                if toks.next() != Some("graph") {
                    return Err(perr(line_no, "header must read 'p graph <n> <m>'"));
                }
                let n: usize = num(toks.next(), line_no, "vertex count")?;
                let m: usize = num(toks.next(), line_no, "edge count")?;
                header = Some((n, m));
                colors = vec![None; n];
            }
            "c" => {
                let n = header.unwrap().0;
                let v: Vertex = num(toks.next(), line_no, "vertex")?;
                let c: Color = num(toks.next(), line_no, "color")?;
                if v >= n {
                    return Err(perr(line_no, format!("vertex {v} out of range")));
                }
                if colors[v].replace(c).is_some() {
                    return Err(perr(line_no, format!("second color for vertex {v}")));
                }
            }
            "e" => {
                let n = header.unwrap().0;
                let u: Vertex = num(toks.next(), line_no, "endpoint")?;
                let v: Vertex = num(toks.next(), line_no, "endpoint")?;
                if u >= n || v >= n {
                    return Err(perr(line_no, format!("endpoint out of range for {n} vertices")));
                }
                if u == v {
                    return Err(perr(line_no, format!("self-loop on vertex {u}")));
                }
                edges.push((u.min(v), u.max(v)));
                edge_lines.push(line_no);
            }
            "m" if allow_merges => {
                let a: usize = num(toks.next(), line_no, "part id")?;
                let b: usize = num(toks.next(), line_no, "part id")?;
                merges.push((a, b, line_no));
            }
            other => return Err(perr(line_no, format!("unknown line type '{other}'"))),
        }
        if toks.next().is_some() {
            return Err(perr(line_no, "trailing tokens"));
        }
    }

    let (n, m) = header.ok_or_else(|| perr(0, "missing header"))?;
    if edges.len() != m {
        return Err(perr(
            edge_lines.last().copied().unwrap_or(1),
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by_key(|&i| (edges[i], edge_lines[i]));
    for w in order.windows(2) {
        if edges[w[0]] == edges[w[1]] {
            let (u, v) = edges[w[1]];
            return Err(perr(edge_lines[w[1]], format!("duplicate edge {u}-{v}")));
        }
    }
    let graph = ColoredGraph::from_edges(n, edges)?
        .with_colors(colors.into_iter().map(|c| c.unwrap_or(0)).collect())?;
    Ok(Parsed { graph, merges })
}

pub fn parse_graph(text: &str) -> Result<ColoredGraph, GraphError> {
    parse_inner(text, false).map(|p| p.graph)
}

/// Canonical rendering: header, nonzero colors by vertex, edges sorted by
/// `(min, max)` endpoint.
pub fn render_graph(g: &ColoredGraph) -> String {
    let mut out = String::new();
    writeln!(out, "p graph {} {}", g.n(), g.m()).unwrap();
    for v in g.vertices() {
        if g.color(v) != 0 {
            writeln!(out, "c {} {}", v, g.color(v)).unwrap();
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

/// Parses a graph followed by `m <a> <b>` merge lines.
pub fn parse_sequence_file(
    text: &str,
) -> Result<(ColoredGraph, ContractionSequence), ContractionError> {
    let parsed = parse_inner(text, true).map_err(|e| match e {
        GraphError::Parse { line, msg } => ContractionError::Parse { line, msg },
        other => ContractionError::Parse {
            line: 0,
            msg: other.to_string(),
        },
    })?;
    let merges = parsed.merges.iter().map(|&(a, b, _)| (a, b)).collect();
    Ok((parsed.graph, ContractionSequence::new(merges)))
}

pub fn render_sequence_file(g: &ColoredGraph, seq: &ContractionSequence) -> String {
    let mut out = render_graph(g);
    for &(a, b) in seq.merges() {
        writeln!(out, "m {a} {b}").unwrap();
    }
    out
}
