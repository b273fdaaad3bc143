//! Text formats for instances.
//!
//! The canonical format is line based:
//!
//! ```text
//! # comment
//! ecc <num_nodes> <num_edges> <num_colors>
//! <color> <weight> <node> <node> ...
//! ```
//!
//! Node ids are 0-based. The benchmark format is the two-file layout used by
//! the public edge-colored hypergraph datasets: one comma or whitespace
//! separated list of 1-based node ids per line, and a parallel file with one
//! integer edge label per line.

use std::fmt::Write as _;

use crate::error::{EccError, Result};
use crate::hypergraph::{Edge, EdgeColoredHypergraph, NodeColoring};

fn parse_err(line: usize, message: impl Into<String>) -> EccError {
    EccError::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_token<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("bad {what} token '{tok}'")))
}

pub fn parse_canonical(text: &str) -> Result<EdgeColoredHypergraph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "ecc" {
        return Err(parse_err(
            hline,
            "malformed header, expected 'ecc <nodes> <edges> <colors>'",
        ));
    }
    let num_nodes: usize = parse_token(toks[1], hline, "node count")?;
    let num_edges: usize = parse_token(toks[2], hline, "edge count")?;
    let num_colors: u32 = parse_token(toks[3], hline, "color count")?;
    if num_colors == 0 {
        return Err(parse_err(hline, "number of colors must be at least 1"));
    }

    let mut edges = Vec::with_capacity(num_edges);
    let mut last_line = hline;
    for (ln, line) in lines {
        last_line = ln;
        if edges.len() == num_edges {
            return Err(parse_err(
                ln,
                format!("more edge lines than the {num_edges} declared in the header"),
            ));
        }
        let mut toks = line.split_whitespace();
        let color: u32 = parse_token(toks.next().unwrap_or(""), ln, "color")?;
        if color == 0 || color > num_colors {
            return Err(parse_err(
                ln,
                format!("color {color} outside [1, {num_colors}]"),
            ));
        }
        let weight: f64 = toks
            .next()
            .ok_or_else(|| parse_err(ln, "missing weight"))
            .and_then(|t| parse_token(t, ln, "weight"))?;
        if !(weight >= 0.0) || !weight.is_finite() {
            return Err(parse_err(
                ln,
                format!("weight {weight} must be finite and >= 0"),
            ));
        }
        let mut members = Vec::new();
        for t in toks {
            let v: usize = parse_token(t, ln, "node id")?;
            if v >= num_nodes {
                return Err(parse_err(
                    ln,
                    format!("node id {v} outside [0, {num_nodes})"),
                ));
            }
            members.push(v);
        }
        if members.is_empty() {
            return Err(parse_err(ln, "edge has no members"));
        }
        edges.push(Edge::new(members, color, weight));
    }
    if edges.len() < num_edges {
        return Err(parse_err(
            last_line,
            format!(
                "header declares {num_edges} edges but only {} were found ({} missing)",
                edges.len(),
                num_edges - edges.len()
            ),
        ));
    }
    EdgeColoredHypergraph::new(num_nodes, num_colors, edges)
}

pub fn write_canonical(h: &EdgeColoredHypergraph) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "ecc {} {} {}",
        h.num_nodes(),
        h.num_edges(),
        h.num_colors()
    );
    for e in h.edges() {
        let _ = write!(out, "{} {}", e.color(), e.weight());
        for v in e.members() {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}

/// One node color per line, 1-based colors.
pub fn parse_coloring(text: &str, num_colors: u32) -> Result<NodeColoring> {
    let mut colors = Vec::new();
    for (ln, line) in content_lines(text) {
        colors.push(parse_token::<u32>(line, ln, "color")?);
    }
    NodeColoring::new(colors, num_colors)
}

pub fn write_coloring(y: &NodeColoring) -> String {
    let mut out = String::new();
    for c in y.as_slice() {
        let _ = writeln!(out, "{c}");
    }
    out
}

/// Instance parsed from the benchmark two-file format.
#[derive(Debug, Clone)]
pub struct BenchmarkInstance {
    pub hypergraph: EdgeColoredHypergraph,
    pub truth: Option<NodeColoring>,
}

/// Parses the benchmark edge list and label files, plus an optional
/// ground-truth node label file. Ids are 1-based in the files and 0-based in
/// the result; all edges get unit weight.
pub fn parse_benchmark(
    edges_text: &str,
    labels_text: &str,
    node_labels_text: Option<&str>,
) -> Result<BenchmarkInstance> {
    let edge_lines: Vec<(usize, &str)> = edges_text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let label_lines: Vec<(usize, &str)> = labels_text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    if edge_lines.len() != label_lines.len() {
        return Err(parse_err(
            edge_lines.len().min(label_lines.len()) + 1,
            format!(
                "edges file has {} lines but labels file has {}",
                edge_lines.len(),
                label_lines.len()
            ),
        ));
    }

    let mut max_id = 0usize;
    let mut max_label = 0u32;
    let mut raw = Vec::with_capacity(edge_lines.len());
    for (&(eln, eline), &(lln, lline)) in edge_lines.iter().zip(&label_lines) {
        let mut members = Vec::new();
        for tok in eline
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let id: usize = parse_token(tok, eln, "node id")?;
            if id == 0 {
                return Err(parse_err(eln, "node ids are 1-based; found 0"));
            }
            max_id = max_id.max(id);
            members.push(id - 1);
        }
        if members.is_empty() {
            return Err(parse_err(eln, "edge has no members"));
        }
        let label: u32 = parse_token(lline, lln, "label")?;
        if label == 0 {
            return Err(parse_err(lln, "labels are 1-based; found 0"));
        }
        max_label = max_label.max(label);
        raw.push((members, label));
    }

    let mut truth_raw = None;
    if let Some(text) = node_labels_text {
        let mut labels = Vec::new();
        for (ln, line) in text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty())
        {
            let c: u32 = parse_token(line, ln, "node label")?;
            if c == 0 {
                return Err(parse_err(ln, "labels are 1-based; found 0"));
            }
            max_label = max_label.max(c);
            labels.push(c);
        }
        truth_raw = Some(labels);
    }

    let mut num_nodes = max_id;
    if let Some(t) = &truth_raw {
        num_nodes = num_nodes.max(t.len());
    }
    let num_colors = max_label.max(1);
    let edges = raw.into_iter().map(|(m, c)| Edge::unit(m, c)).collect();
    let hypergraph = EdgeColoredHypergraph::new(num_nodes, num_colors, edges)?;
    let truth = match truth_raw {
        None => None,
        Some(mut t) => {
            if t.len() < num_nodes {
                return Err(parse_err(
                    t.len() + 1,
                    format!(
                        "node label file has {} lines but the edges reference {} nodes",
                        t.len(),
                        num_nodes
                    ),
                ));
            }
            t.truncate(num_nodes);
            Some(NodeColoring::new(t, num_colors)?)
        }
    };
    Ok(BenchmarkInstance { hypergraph, truth })
}
