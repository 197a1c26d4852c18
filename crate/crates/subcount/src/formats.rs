//! Graph file formats: the edge-list text format (read and write) and
//! graph6 (read only).
//!
//! Edge list: a header line `N M`, then `M` lines `u v` with 0-based node
//! indices. Blank lines are ignored. The canonical form lists each edge once
//! as `u v` with `u < v`, sorted.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use subcount_core::{Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Format {
    Edgelist,
    Graph6,
}

impl Format {
    /// `.g6` and `.graph6` files are graph6, everything else is an edge list.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("g6" | "graph6") => Format::Graph6,
            _ => Format::Edgelist,
        }
    }
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

fn two_numbers(line_no: usize, line: &str) -> Result<(usize, usize), FormatError> {
    let mut it = line.split_whitespace();
    let mut next = |what: &str| {
        let tok = it
            .next()
            .ok_or_else(|| parse_err(line_no, format!("missing {what}")))?;
        tok.parse::<usize>()
            .map_err(|_| parse_err(line_no, format!("bad {what} `{tok}`")))
    };
    let a = next("first value")?;
    let b = next("second value")?;
    if it.next().is_some() {
        return Err(parse_err(line_no, "expected exactly two values"));
    }
    Ok((a, b))
}

pub fn parse_edgelist(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, header) = lines.next().ok_or_else(|| parse_err(1, "missing `N M` header"))?;
    let (n, m) = two_numbers(line, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        if edges.len() == m {
            return Err(parse_err(line, format!("more than the {m} declared edges")));
        }
        edges.push(two_numbers(line, l)?);
    }
    if edges.len() != m {
        return Err(parse_err(
            text.lines().count().max(1),
            format!("expected {m} edges, found {}", edges.len()),
        ));
    }
    Ok(Graph::from_edges(n, &edges)?)
}

pub fn write_edgelist(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.node_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

fn graph6_size(bytes: &[u8]) -> Result<(usize, &[u8]), String> {
    let val = |b: u8| -> Result<usize, String> {
        if (63..=126).contains(&b) {
            Ok((b - 63) as usize)
        } else {
            Err(format!("byte {b} outside the graph6 range"))
        }
    };
    let gather = |chunk: &[u8]| chunk.iter().try_fold(0usize, |acc, &b| Ok::<_, String>(acc << 6 | val(b)?));
    match bytes {
        [126, 126, rest @ ..] if rest.len() >= 6 => Ok((gather(&rest[..6])?, &rest[6..])),
        [126, rest @ ..] if rest.len() >= 3 && rest[0] != 126 => Ok((gather(&rest[..3])?, &rest[3..])),
        [b, rest @ ..] if *b != 126 => Ok((val(*b)?, rest)),
        _ => Err("truncated size field".into()),
    }
}

/// Parses one graph6 string (no trailing newline).
pub fn parse_graph6_line(line: &str) -> Result<Graph, String> {
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    if line.starts_with(':') || line.starts_with('&') {
        return Err("sparse6 and digraph6 are not supported".into());
    }
    let (n, body) = graph6_size(line.as_bytes())?;
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() != need {
        return Err(format!("expected {need} adjacency bytes for {n} nodes, found {}", body.len()));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6];
            if !(63..=126).contains(&byte) {
                return Err(format!("byte {byte} outside the graph6 range"));
            }
            if (byte - 63) >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges).map_err(|e| e.to_string())
}

/// Parses every non-empty line of a graph6 file.
pub fn parse_graph6(text: &str) -> Result<Vec<Graph>, FormatError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, l)| parse_graph6_line(l.trim()).map_err(|m| parse_err(n + 1, m)))
        .collect()
}

fn read(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Loads every graph in a file; an edge list always holds exactly one.
pub fn load_graphs(path: &Path, format: Format) -> Result<Vec<Graph>, FormatError> {
    let text = read(path)?;
    match format {
        Format::Edgelist => Ok(vec![parse_edgelist(&text)?]),
        Format::Graph6 => parse_graph6(&text),
    }
}

/// Loads a single graph; graph6 files must hold exactly one.
pub fn load_graph(path: &Path, format: Format) -> Result<Graph, FormatError> {
    let mut graphs = load_graphs(path, format)?;
    if graphs.len() != 1 {
        return Err(parse_err(0, format!("expected one graph, found {}", graphs.len())));
    }
    Ok(graphs.pop().expect("one graph"))
}

pub fn save_edgelist(path: &Path, g: &Graph) -> Result<(), FormatError> {
    fs::write(path, write_edgelist(g)).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}
