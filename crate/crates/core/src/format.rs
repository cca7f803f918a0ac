//! Text formats for graphs: a plain edge list and graph6.
//!
//! Edge list: `#` starts a comment line, the first data line is `n m`, and
//! `m` lines `u v` follow. graph6 is the usual printable encoding, one graph
//! per line, with an optional `>>graph6<<` header.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("no graph found in the input")]
    NoGraph,
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parses the edge-list format.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(syntax(i + 1, "expected two integers"));
        }
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| syntax(i + 1, format!("{s:?} is not a non-negative integer")))
        };
        let (a, b) = (parse(fields[0])?, parse(fields[1])?);
        match header {
            None => header = Some((a, b)),
            Some(_) => edges.push((a, b)),
        }
    }
    let (n, m) = header.ok_or(FormatError::NoGraph)?;
    if edges.len() != m {
        return Err(FormatError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    Ok(Graph::new(n, &edges)?)
}

/// Canonical edge list: header, then edges `u < v` in lexicographic order.
pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Decodes one graph6 line.
pub fn parse_graph6(line: &str) -> Result<Graph, FormatError> {
    let s = line.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s).as_bytes();
    if s.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(FormatError::Graph6("byte outside the printable range".into()));
    }
    let (n, rest) = match s {
        [] => return Err(FormatError::Graph6("empty line".into())),
        [126, 126, ..] => {
            if s.len() < 8 {
                return Err(FormatError::Graph6("truncated size".into()));
            }
            let n = s[2..8].iter().fold(0usize, |a, &b| (a << 6) | (b - 63) as usize);
            (n, &s[8..])
        }
        [126, ..] => {
            if s.len() < 4 {
                return Err(FormatError::Graph6("truncated size".into()));
            }
            let n = s[1..4].iter().fold(0usize, |a, &b| (a << 6) | (b - 63) as usize);
            (n, &s[4..])
        }
        [b, ..] => ((b - 63) as usize, &s[1..]),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    if rest.len() != needed {
        return Err(FormatError::Graph6(format!(
            "expected {needed} data bytes for {n} vertices, found {}",
            rest.len()
        )));
    }
    let bit = |i: usize| (rest[i / 6] - 63) >> (5 - i % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut i = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(i) {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Ok(Graph::new(n, &edges)?)
}

/// Encodes a graph as one graph6 line, without a trailing newline.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Parses every non-empty, non-comment line as graph6.
pub fn parse_graph6_list(text: &str) -> Result<Vec<Graph>, FormatError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(parse_graph6(line).map_err(|e| syntax(i + 1, e.to_string()))?);
    }
    Ok(out)
}

/// Reads either format: edge list when the first data line holds two
/// integers, graph6 otherwise.
pub fn parse_any(text: &str) -> Result<Vec<Graph>, FormatError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or(FormatError::NoGraph)?;
    let fields: Vec<&str> = first.split_whitespace().collect();
    if fields.len() == 2 && fields.iter().all(|f| f.parse::<usize>().is_ok()) {
        Ok(vec![parse_edge_list(text)?])
    } else {
        parse_graph6_list(text)
    }
}
