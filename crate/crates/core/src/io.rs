//! Graph text formats: graph6 and a plain edge list.
//!
//! The edge list is an `n <order>` line followed by one `u v` line per edge,
//! 0-indexed. Blank lines and `#` comments are ignored.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("invalid graph6 character {ch:?} at position {position}")]
    InvalidChar { ch: char, position: usize },
    #[error("graph6 payload truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("graph6 payload has {0} trailing bytes")]
    Trailing(usize),
    #[error("order {0} is not supported by graph6")]
    UnsupportedOrder(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Encodes in graph6: the order as `63 + n` (or `~` and three 6-bit groups
/// for `63 <= n <= 258047`), then the upper triangle in column order packed
/// into 6-bit groups, each offset by 63.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::new();
    if n <= 62 {
        out.push((63 + n as u8) as char);
    } else {
        assert!(n <= 258_047, "graph6 supports orders up to 258047");
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((63 + ((n >> shift) & 0x3f) as u8) as char);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    out
}

/// Decodes a graph6 string (an optional `>>graph6<<` header and surrounding
/// whitespace are accepted).
pub fn decode_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let mut values = Vec::with_capacity(bytes.len());
    for (position, ch) in text.chars().enumerate() {
        if !('?'..='~').contains(&ch) {
            return Err(Graph6Error::InvalidChar { ch, position });
        }
        values.push(ch as u8 - 63);
    }
    let (n, body) = if values[0] < 63 {
        (values[0] as usize, &values[1..])
    } else {
        if values.len() < 4 {
            return Err(Graph6Error::Truncated { expected: 4, found: values.len() });
        }
        if values[1] == 63 {
            return Err(Graph6Error::UnsupportedOrder(usize::MAX));
        }
        let n = (values[1] as usize) << 12 | (values[2] as usize) << 6 | values[3] as usize;
        (n, &values[4..])
    };
    if n == 0 {
        return Err(Graph6Error::UnsupportedOrder(0));
    }
    let bits = n * (n - 1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() < expected {
        return Err(Graph6Error::Truncated { expected, found: body.len() });
    }
    if body.len() > expected {
        return Err(Graph6Error::Trailing(body.len() - expected));
    }
    let mut edges = Vec::new();
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            if body[bit / 6] >> (5 - bit % 6) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Ok(Graph::new(n, &edges)?)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct EdgeListError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut order: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<(usize, &str)> = content
            .split_whitespace()
            .map(|t| (content[..t.as_ptr() as usize - content.as_ptr() as usize].chars().count() + 1, t))
            .collect();
        if tokens.is_empty() {
            continue;
        }
        let err = |column: usize, message: String| EdgeListError { line, column, message };
        let number = |(col, tok): (usize, &str)| {
            tok.parse::<usize>().map_err(|_| err(col, format!("expected a non-negative integer, found `{tok}`")))
        };
        if order.is_none() {
            if tokens[0].1 != "n" || tokens.len() != 2 {
                return Err(err(tokens[0].0, "expected `n <order>` header".into()));
            }
            let n = number(tokens[1])?;
            if n == 0 {
                return Err(err(tokens[1].0, "order must be at least 1".into()));
            }
            order = Some((n, line));
            continue;
        }
        if tokens.len() != 2 {
            return Err(err(tokens[0].0, format!("expected `u v`, found {} fields", tokens.len())));
        }
        let (u, v) = (number(tokens[0])?, number(tokens[1])?);
        edges.push((u, v));
        lines.push((line, tokens[0].0));
    }
    let Some((n, header_line)) = order else {
        return Err(EdgeListError { line: 1, column: 1, message: "missing `n <order>` header".into() });
    };
    Graph::new(n, &edges).map_err(|e| {
        // Point at the first edge line that triggers the error.
        let at = match &e {
            GraphError::Loop(u, v) | GraphError::DuplicateEdge(u, v) | GraphError::OutOfRange { u, v, .. } => {
                let bad = |&(a, b): &(usize, usize)| match &e {
                    GraphError::Loop(..) => a == b,
                    GraphError::OutOfRange { .. } => a >= n || b >= n,
                    _ => (a.min(b), a.max(b)) == (*u.min(v), *u.max(v)),
                };
                let hits: Vec<usize> = edges.iter().enumerate().filter(|(_, e)| bad(e)).map(|(i, _)| i).collect();
                let i = if matches!(e, GraphError::DuplicateEdge(..)) { hits.get(1) } else { hits.first() };
                i.map(|&i| lines[i]).unwrap_or((header_line, 1))
            }
            GraphError::EmptyOrder => (header_line, 1),
        };
        EdgeListError { line: at.0, column: at.1, message: e.to_string() }
    })
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.order());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphInputError {
    #[error("invalid edge list")]
    EdgeList(#[from] EdgeListError),
    #[error("invalid graph6")]
    Graph6(#[from] Graph6Error),
}

/// Reads either format: text whose first token is `n` is an edge list,
/// anything else is a single graph6 string.
pub fn parse_graph(text: &str) -> Result<Graph, GraphInputError> {
    let first = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).find(|l| !l.is_empty()).unwrap_or("");
    if first.split_whitespace().next() == Some("n") {
        Ok(parse_edge_list(text)?)
    } else {
        Ok(decode_graph6(first)?)
    }
}
