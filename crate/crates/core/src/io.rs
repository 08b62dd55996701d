//! Text formats for graphs, tournaments and list-coloring instances.
//!
//! All formats use 1-based vertex ids. Blank lines and comments are skipped:
//! `#` starts a comment in every format, and DIMACS also uses `c` lines.
//!
//! * `edge_list`: optional first line holding only `n`, then `u v` per line.
//!   Without the header, `n` is the largest id.
//! * `dimacs`: `p edge n m`, then `e u v` lines.
//! * `tournament`: `n`, then one `u v` line per arc `u -> v`.
//! * `listcoloring`: `n`, then `n` lines with the colors of vertex 1..n
//!   (`-` for an empty list), then `u v` edge lines.

use std::fmt::{self, Write as _};
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::fast::{Arc, Tournament};
use crate::graph::{Edge, Graph};
use crate::ilc::Color;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    EdgeList,
    Dimacs,
    Tournament,
    ListColoring,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "edge_list" | "edgelist" | "edges" => Ok(Format::EdgeList),
            "dimacs" => Ok(Format::Dimacs),
            "tournament" => Ok(Format::Tournament),
            "listcoloring" | "list_coloring" => Ok(Format::ListColoring),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::EdgeList => "edge_list",
            Format::Dimacs => "dimacs",
            Format::Tournament => "tournament",
            Format::ListColoring => "listcoloring",
        })
    }
}

impl Format {
    /// Guess from the file extension: `.dimacs`/`.col`, `.tour`, `.lc`;
    /// anything else is an edge list.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
            Some("dimacs" | "col") => Format::Dimacs,
            Some("tour" | "tournament") => Format::Tournament,
            Some("lc") => Format::ListColoring,
            _ => Format::EdgeList,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Malformed { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, column: usize, vertex: usize },
    #[error("line {line}: {message}")]
    Invalid { line: usize, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

/// Non-fatal issue found while parsing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParseWarning {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Graph(Graph),
    Tournament(Tournament),
    ListColoring { graph: Graph, lists: Vec<Vec<Color>> },
}

#[derive(Clone, Debug)]
pub struct Parsed {
    pub instance: Instance,
    pub warnings: Vec<ParseWarning>,
}

/// A non-comment line split into tokens with their 1-based columns.
struct Line<'a> {
    number: usize,
    tokens: Vec<(usize, &'a str)>,
}

fn lines(text: &str, dimacs: bool) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push((s + 1, &content[s..pos]));
                    start = None;
                }
                _ => {}
            }
        }
        if tokens.is_empty() || (dimacs && tokens[0].1 == "c") {
            continue;
        }
        out.push(Line { number: i + 1, tokens });
    }
    out
}

fn number(line: &Line, idx: usize) -> Result<usize, ParseError> {
    let (column, tok) = line.tokens[idx];
    tok.parse().map_err(|_| ParseError::Malformed { line: line.number, column, message: format!("expected a non-negative integer, found `{tok}`") })
}

fn expect_len(line: &Line, len: usize, what: &str) -> Result<(), ParseError> {
    if line.tokens.len() != len {
        let column = line.tokens.get(len).map_or(line.tokens[0].0, |t| t.0);
        return Err(ParseError::Malformed { line: line.number, column, message: format!("expected {what}") });
    }
    Ok(())
}

/// Parses a 1-based `u v` pair into 0-based ids, rejecting 0 and `> n`.
fn pair(line: &Line, first: usize, n: Option<usize>) -> Result<(usize, usize), ParseError> {
    let mut ids = [0; 2];
    for (k, id) in ids.iter_mut().enumerate() {
        let v = number(line, first + k)?;
        let column = line.tokens[first + k].0;
        if v == 0 || n.is_some_and(|n| v > n) {
            return Err(ParseError::Malformed { line: line.number, column, message: format!("vertex id {v} out of range") });
        }
        *id = v - 1;
    }
    if ids[0] == ids[1] {
        return Err(ParseError::SelfLoop { line: line.number, column: line.tokens[first].0, vertex: ids[0] + 1 });
    }
    Ok((ids[0], ids[1]))
}

fn build_graph(n: usize, edges: Vec<(usize, Edge)>, warnings: &mut Vec<ParseWarning>) -> Graph {
    let mut seen = std::collections::BTreeSet::new();
    let mut unique = Vec::new();
    for (line, e) in edges {
        if seen.insert(e) {
            unique.push(e);
        } else {
            warnings.push(ParseWarning { line, message: format!("duplicate edge {}-{} ignored", e.lo() + 1, e.hi() + 1) });
        }
    }
    Graph::from_edges(n, unique).expect("ids checked while parsing")
}

pub fn parse_edge_list(text: &str) -> Result<Parsed, ParseError> {
    let all = lines(text, false);
    let mut body = &all[..];
    let mut n = None;
    if let Some(first) = all.first() {
        if first.tokens.len() == 1 {
            n = Some(number(first, 0)?);
            body = &all[1..];
        }
    }
    let mut edges = Vec::new();
    let mut max_id = 0;
    for line in body {
        expect_len(line, 2, "two vertex ids")?;
        let (u, v) = pair(line, 0, n)?;
        max_id = max_id.max(u.max(v) + 1);
        edges.push((line.number, Edge::new(u, v)));
    }
    let mut warnings = Vec::new();
    let g = build_graph(n.unwrap_or(max_id), edges, &mut warnings);
    Ok(Parsed { instance: Instance::Graph(g), warnings })
}

pub fn parse_dimacs(text: &str) -> Result<Parsed, ParseError> {
    let mut n = None;
    let mut declared = 0;
    let mut edges = Vec::new();
    let mut warnings = Vec::new();
    for line in lines(text, true) {
        match line.tokens[0].1 {
            "p" => {
                expect_len(&line, 4, "`p edge <n> <m>`")?;
                if n.is_some() {
                    return Err(ParseError::Invalid { line: line.number, message: "second problem line".into() });
                }
                n = Some(number(&line, 2)?);
                declared = number(&line, 3)?;
            }
            "e" => {
                if n.is_none() {
                    return Err(ParseError::Invalid { line: line.number, message: "edge before the problem line".into() });
                }
                expect_len(&line, 3, "`e <u> <v>`")?;
                let (u, v) = pair(&line, 1, n)?;
                edges.push((line.number, Edge::new(u, v)));
            }
            other => {
                return Err(ParseError::Malformed {
                    line: line.number,
                    column: line.tokens[0].0,
                    message: format!("unknown line type `{other}`"),
                })
            }
        }
    }
    let n = n.ok_or(ParseError::Invalid { line: 0, message: "missing problem line".into() })?;
    if edges.len() != declared {
        warnings.push(ParseWarning { line: 0, message: format!("problem line declares {declared} edges, found {}", edges.len()) });
    }
    let g = build_graph(n, edges, &mut warnings);
    Ok(Parsed { instance: Instance::Graph(g), warnings })
}

fn header(all: &[Line]) -> Result<usize, ParseError> {
    let first = all.first().ok_or(ParseError::Invalid { line: 0, message: "empty input".into() })?;
    expect_len(first, 1, "the vertex count alone")?;
    number(first, 0)
}

pub fn parse_tournament(text: &str) -> Result<Parsed, ParseError> {
    let all = lines(text, false);
    let n = header(&all)?;
    let mut arcs: Vec<Arc> = Vec::new();
    let mut last_line = all[0].number;
    for line in &all[1..] {
        expect_len(line, 2, "an arc `u v`")?;
        arcs.push(pair(line, 0, Some(n))?);
        last_line = line.number;
    }
    let t = Tournament::from_arcs(n, &arcs).map_err(|e| ParseError::Invalid { line: last_line, message: e.to_string() })?;
    Ok(Parsed { instance: Instance::Tournament(t), warnings: Vec::new() })
}

pub fn parse_listcoloring(text: &str) -> Result<Parsed, ParseError> {
    let all = lines(text, false);
    let n = header(&all)?;
    if all.len() < n + 1 {
        return Err(ParseError::Invalid { line: all.last().map_or(0, |l| l.number), message: format!("expected {n} color lists") });
    }
    let mut lists = Vec::with_capacity(n);
    for line in &all[1..=n] {
        if line.tokens.len() == 1 && line.tokens[0].1 == "-" {
            lists.push(Vec::new());
            continue;
        }
        let mut list = Vec::new();
        for idx in 0..line.tokens.len() {
            let c = number(line, idx)?;
            list.push(Color::try_from(c).map_err(|_| ParseError::Malformed {
                line: line.number,
                column: line.tokens[idx].0,
                message: "color too large".into(),
            })?);
        }
        lists.push(list);
    }
    let mut edges = Vec::new();
    for line in &all[n + 1..] {
        expect_len(line, 2, "two vertex ids")?;
        let (u, v) = pair(line, 0, Some(n))?;
        edges.push((line.number, Edge::new(u, v)));
    }
    let mut warnings = Vec::new();
    let graph = build_graph(n, edges, &mut warnings);
    Ok(Parsed { instance: Instance::ListColoring { graph, lists }, warnings })
}

pub fn parse_str(text: &str, format: Format) -> Result<Parsed, ParseError> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Dimacs => parse_dimacs(text),
        Format::Tournament => parse_tournament(text),
        Format::ListColoring => parse_listcoloring(text),
    }
}

/// Reads and parses a file; `format` defaults to a guess from the extension.
pub fn parse_instance(path: &Path, format: Option<Format>) -> Result<Parsed, ParseError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ParseError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_str(&text, format.unwrap_or_else(|| Format::from_path(path)))
}

fn push_edges(out: &mut String, g: &Graph, prefix: &str) {
    for e in g.edges() {
        writeln!(out, "{prefix}{} {}", e.lo() + 1, e.hi() + 1).expect("writing to a String");
    }
}

/// Always writes the header so isolated vertices survive a round trip.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    push_edges(&mut out, g, "");
    out
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    push_edges(&mut out, g, "e ");
    out
}

pub fn write_tournament(t: &Tournament) -> String {
    let mut out = format!("{}\n", t.n());
    for (u, v) in t.arcs() {
        writeln!(out, "{} {}", u + 1, v + 1).expect("writing to a String");
    }
    out
}

pub fn write_listcoloring(g: &Graph, lists: &[Vec<Color>]) -> String {
    let mut out = format!("{}\n", g.n());
    for list in lists {
        if list.is_empty() {
            out.push_str("-\n");
        } else {
            let words: Vec<String> = list.iter().map(Color::to_string).collect();
            writeln!(out, "{}", words.join(" ")).expect("writing to a String");
        }
    }
    push_edges(&mut out, g, "");
    out
}

pub fn write_instance(inst: &Instance, format: Format) -> Option<String> {
    match (inst, format) {
        (Instance::Graph(g), Format::EdgeList) => Some(write_edge_list(g)),
        (Instance::Graph(g), Format::Dimacs) => Some(write_dimacs(g)),
        (Instance::Tournament(t), Format::Tournament) => Some(write_tournament(t)),
        (Instance::ListColoring { graph, lists }, Format::ListColoring) => Some(write_listcoloring(graph, lists)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(p: Parsed) -> Graph {
        match p.instance {
            Instance::Graph(g) => g,
            other => panic!("expected a graph, got {other:?}"),
        }
    }

    #[test]
    fn edge_list_and_dimacs_agree() {
        let a = graph(parse_edge_list("1 2\n2 3").unwrap());
        let b = graph(parse_dimacs("c a path\np edge 3 2\ne 1 2\ne 2 3\n").unwrap());
        assert_eq!(a, b);
        assert_eq!((a.n(), a.m()), (3, 2));
    }

    #[test]
    fn self_loop_is_an_error() {
        assert_eq!(parse_edge_list("1 1").unwrap_err(), ParseError::SelfLoop { line: 1, column: 1, vertex: 1 });
    }

    #[test]
    fn malformed_token_reports_column() {
        let err = parse_edge_list("# header\n1 2\n2   x\n").unwrap_err();
        assert!(matches!(err, ParseError::Malformed { line: 3, column: 5, .. }), "{err:?}");
    }

    #[test]
    fn duplicate_edges_warn() {
        let p = parse_edge_list("1 2\n2 1 # again\n").unwrap();
        assert_eq!(p.warnings.len(), 1);
        assert_eq!(graph(p).m(), 1);
    }

    #[test]
    fn header_keeps_isolated_vertices() {
        let g = graph(parse_edge_list("5\n1 2\n").unwrap());
        assert_eq!(g.n(), 5);
        assert!(parse_edge_list("2\n1 3\n").is_err());
    }

    #[test]
    fn tournament_and_listcoloring() {
        let p = parse_tournament("3\n1 2\n2 3\n3 1\n").unwrap();
        assert!(matches!(p.instance, Instance::Tournament(ref t) if t.n() == 3));
        assert!(parse_tournament("3\n1 2\n2 3\n").is_err());
        let p = parse_listcoloring("3\n1 2\n-\n2 3\n1 2\n").unwrap();
        match p.instance {
            Instance::ListColoring { graph, lists } => {
                assert_eq!(lists, vec![vec![1, 2], vec![], vec![2, 3]]);
                assert_eq!(graph.m(), 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn formats_from_names_and_paths() {
        assert_eq!("edge-list".parse::<Format>().unwrap(), Format::EdgeList);
        assert_eq!(Format::from_path(Path::new("x.lc")), Format::ListColoring);
        assert_eq!(Format::from_path(Path::new("x.txt")), Format::EdgeList);
    }
}
