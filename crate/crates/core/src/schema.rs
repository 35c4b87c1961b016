//! Reduced templates for graphs with few extra edges.
//!
//! A schema is a boundary cycle through `k` attachment positions. Consecutive
//! positions are joined by arcs whose lengths are variables; chords join two
//! positions directly, and an optional hub vertex off the cycle is joined to
//! some positions (its feet) by chordettes. Choosing a length for every arc
//! turns a schema into a concrete graph.
//!
//! # Text format
//!
//! ```text
//! # comment
//! 2                # optional leading integer: default multiplicity r
//! schema P2C1-0
//! arc 0 1
//! arc 1 0
//! chord 0 1
//! foot 0           # chordette from the hub to position 0
//! ```
//!
//! Position labels are arbitrary integers; their cyclic order is recovered by
//! walking the arcs starting from the first arc as written. A record without
//! any arc, chord or foot lines is the bare cycle.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycles::{for_each_cycle, EdgeAdjacency};
use crate::graph::{CycleSpectrum, Graph};

/// Arc counts are kept in a `u32` mask.
pub const MAX_POSITIONS: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemaError {
    #[error("schema name `{0}` must be a single non-empty token")]
    InvalidName(String),
    #[error("schema `{name}`: a boundary needs 0 or at least 2 positions, got {positions}")]
    BadPositionCount { name: String, positions: usize },
    #[error("schema `{name}`: position {position} is out of range 0..{positions}")]
    PositionOutOfRange { name: String, position: usize, positions: usize },
    #[error("schema `{name}`: chord ({p}, {p}) is a loop")]
    LoopChord { name: String, p: usize },
    #[error("schema `{name}`: chord ({p}, {q}) is repeated")]
    DuplicateChord { name: String, p: usize, q: usize },
    #[error("schema `{name}`: foot {p} is repeated")]
    DuplicateFoot { name: String, p: usize },
    #[error("schema `{name}`: a hub needs at least 2 feet, got {feet}")]
    TooFewFeet { name: String, feet: usize },
    #[error("assignment has {got} values but schema has {expected} arcs")]
    WrongArity { expected: usize, got: usize },
    #[error("arc {arc} has length {value}, below its minimum {min}")]
    ArcTooShort { arc: usize, value: u32, min: u32 },
    #[error("boundary cycle would have length {0}, need at least 3")]
    BoundaryTooShort(u64),
}

/// See the module documentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Schema {
    name: String,
    positions: usize,
    chords: Vec<(usize, usize)>,
    feet: Vec<usize>,
}

impl Schema {
    /// Validates and normalises a schema: chords become `(p, q)` with
    /// `p < q`, and chords and feet are sorted.
    pub fn new(
        name: impl Into<String>,
        positions: usize,
        chords: &[(usize, usize)],
        feet: &[usize],
    ) -> Result<Schema, SchemaError> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(SchemaError::InvalidName(name));
        }
        if positions == 1 || positions > MAX_POSITIONS || (positions == 0 && !(chords.is_empty() && feet.is_empty())) {
            return Err(SchemaError::BadPositionCount { name, positions });
        }
        let in_range = |p: usize| -> Result<(), SchemaError> {
            if p < positions {
                Ok(())
            } else {
                Err(SchemaError::PositionOutOfRange { name: name.clone(), position: p, positions })
            }
        };
        let mut norm = Vec::with_capacity(chords.len());
        for &(p, q) in chords {
            in_range(p)?;
            in_range(q)?;
            if p == q {
                return Err(SchemaError::LoopChord { name, p });
            }
            norm.push((p.min(q), p.max(q)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            let (p, q) = w[0];
            return Err(SchemaError::DuplicateChord { name, p, q });
        }
        let mut feet = feet.to_vec();
        for &p in &feet {
            in_range(p)?;
        }
        feet.sort_unstable();
        if let Some(w) = feet.windows(2).find(|w| w[0] == w[1]) {
            return Err(SchemaError::DuplicateFoot { name, p: w[0] });
        }
        if feet.len() == 1 {
            return Err(SchemaError::TooFewFeet { name, feet: 1 });
        }
        Ok(Schema { name, positions, chords: norm, feet })
    }

    /// The schema with no chords: a single arc closing on itself.
    pub fn bare_cycle(name: impl Into<String>) -> Schema {
        Schema::new(name, 0, &[], &[]).expect("bare cycle is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Result<Schema, SchemaError> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(SchemaError::InvalidName(name));
        }
        self.name = name;
        Ok(self)
    }

    /// Number of boundary attachment positions `k`.
    pub fn positions(&self) -> usize {
        self.positions
    }

    pub fn chords(&self) -> &[(usize, usize)] {
        &self.chords
    }

    pub fn feet(&self) -> &[usize] {
        &self.feet
    }

    pub fn has_hub(&self) -> bool {
        !self.feet.is_empty()
    }

    /// Edges beyond the boundary cycle: chords plus chordettes.
    pub fn edge_excess(&self) -> usize {
        self.chords.len() + self.feet.len()
    }

    /// Number of arc variables: `k`, or 1 for the bare cycle.
    pub fn arc_count(&self) -> usize {
        self.positions.max(1)
    }

    /// Endpoints of arc `i`, which runs from position `i` to `i + 1 mod k`.
    pub fn arc_endpoints(&self, i: usize) -> (usize, usize) {
        (i, (i + 1) % self.positions)
    }

    /// Smallest admissible value of each arc: 2 where a chord runs parallel
    /// to the arc, otherwise 1.
    pub fn lower_bounds(&self) -> Vec<u32> {
        let mut lb = vec![1u32; self.arc_count()];
        if self.positions == 0 {
            lb[0] = 3;
            return lb;
        }
        for (i, bound) in lb.iter_mut().enumerate() {
            let (a, b) = self.arc_endpoints(i);
            let pair = (a.min(b), a.max(b));
            if self.chords.binary_search(&pair).is_ok() {
                *bound = 2;
            }
        }
        lb
    }

    /// The reduced multigraph: positions `0..k`, then the hub. Edge ids are
    /// arcs, then chords, then chordettes.
    fn multigraph(&self) -> EdgeAdjacency {
        let k = self.positions;
        let n = k + usize::from(self.has_hub());
        let mut adj = vec![Vec::new(); n];
        let mut id = 0;
        let mut push = |a: usize, b: usize, adj: &mut EdgeAdjacency| {
            adj[a].push((b, id));
            adj[b].push((a, id));
            id += 1;
        };
        for i in 0..k {
            let (a, b) = self.arc_endpoints(i);
            push(a, b, &mut adj);
        }
        for &(p, q) in &self.chords {
            push(p, q, &mut adj);
        }
        for &p in &self.feet {
            push(k, p, &mut adj);
        }
        adj
    }

    /// Every simple cycle of the reduced multigraph as a linear form in the
    /// arc lengths. Sorted by `(arc_mask, unit_edges)`.
    pub fn symbolic_cycles(&self) -> Vec<SymbolicCycle> {
        if self.positions == 0 {
            return vec![SymbolicCycle { arc_mask: 1, unit_edges: 0 }];
        }
        let k = self.positions;
        let mut out = Vec::new();
        for_each_cycle(&self.multigraph(), |edges| {
            let mut arc_mask = 0u32;
            let mut unit_edges = 0u32;
            for &e in edges {
                if e < k {
                    arc_mask |= 1 << e;
                } else {
                    unit_edges += 1;
                }
            }
            out.push(SymbolicCycle { arc_mask, unit_edges });
        });
        out.sort_unstable();
        out
    }

    /// Checks `assignment` against this schema's arc bounds.
    pub fn check_assignment(&self, assignment: &Assignment) -> Result<(), SchemaError> {
        let values = assignment.values();
        if values.len() != self.arc_count() {
            return Err(SchemaError::WrongArity { expected: self.arc_count(), got: values.len() });
        }
        for (arc, (&value, min)) in values.iter().zip(self.lower_bounds()).enumerate() {
            if value < min {
                return Err(SchemaError::ArcTooShort { arc, value, min });
            }
        }
        let boundary = assignment.total();
        if boundary < 3 {
            return Err(SchemaError::BoundaryTooShort(boundary));
        }
        Ok(())
    }

    /// Replaces each arc by a path with the assigned number of edges.
    ///
    /// Position `i` becomes vertex `x_0 + ... + x_{i-1}`, the interior
    /// vertices of arc `i` follow it, and the hub (if any) is the last vertex.
    pub fn instantiate(&self, assignment: &Assignment) -> Result<Graph, SchemaError> {
        self.check_assignment(assignment)?;
        let values = assignment.values();
        let boundary = assignment.total() as usize;
        let order = boundary + usize::from(self.has_hub());
        let mut edges: Vec<(usize, usize)> = (0..boundary).map(|i| (i, (i + 1) % boundary)).collect();
        let mut vertex_of = Vec::with_capacity(self.positions);
        let mut at = 0usize;
        for &x in values.iter().take(self.positions) {
            vertex_of.push(at);
            at += x as usize;
        }
        for &(p, q) in &self.chords {
            edges.push((vertex_of[p], vertex_of[q]));
        }
        for &p in &self.feet {
            edges.push((boundary, vertex_of[p]));
        }
        Ok(Graph::new(order, &edges).expect("assignment bounds guarantee a simple graph"))
    }
}

/// A cycle of a schema: it runs through the full path of every arc in
/// `arc_mask` plus `unit_edges` chords and chordettes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolicCycle {
    pub arc_mask: u32,
    pub unit_edges: u32,
}

impl SymbolicCycle {
    pub fn length(&self, values: &[u32]) -> u64 {
        let arcs: u64 =
            values.iter().enumerate().filter(|(i, _)| self.arc_mask >> i & 1 == 1).map(|(_, &x)| u64::from(x)).sum();
        arcs + u64::from(self.unit_edges)
    }

    pub fn contains_arc(&self, arc: usize) -> bool {
        self.arc_mask >> arc & 1 == 1
    }
}

/// Spectrum predicted by a schema's symbolic cycles under `values`.
pub fn symbolic_spectrum(cycles: &[SymbolicCycle], values: &[u32]) -> CycleSpectrum {
    CycleSpectrum::from_lengths(cycles.iter().map(|c| c.length(values) as usize))
}

/// One length per arc variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment(pub Vec<u32>);

impl Assignment {
    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&x| u64::from(x)).sum()
    }
}

impl From<Vec<u32>> for Assignment {
    fn from(v: Vec<u32>) -> Self {
        Assignment(v)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}{}: {message}", .schema.as_ref().map(|s| format!(" (schema `{s}`)")).unwrap_or_default())]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub schema: Option<String>,
    pub message: String,
}

/// Contents of a schema file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaFile {
    /// Multiplicity given by a leading bare integer, if present.
    pub default_r: Option<u32>,
    pub schemas: Vec<Schema>,
}

struct Item {
    line: usize,
    column: usize,
    a: i64,
    b: Option<i64>,
}

struct Record {
    name: String,
    line: usize,
    arcs: Vec<Item>,
    chords: Vec<Item>,
    feet: Vec<Item>,
}

impl Record {
    fn error(&self, line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line, column, schema: Some(self.name.clone()), message: message.into() }
    }

    fn finish(self) -> Result<Schema, ParseError> {
        if self.arcs.is_empty() {
            if let Some(item) = self.chords.first().or(self.feet.first()) {
                return Err(self.error(item.line, item.column, "position referenced but the schema has no arcs"));
            }
            return Ok(Schema::bare_cycle(self.name));
        }
        for arc in &self.arcs {
            if Some(arc.a) == arc.b {
                return Err(self.error(arc.line, arc.column, format!("arc ({}, {}) is a loop", arc.a, arc.a)));
            }
        }
        // Every label must sit on exactly two arc ends, and the arcs must form one cycle.
        let mut incident: HashMap<i64, Vec<usize>> = HashMap::new();
        for (i, arc) in self.arcs.iter().enumerate() {
            incident.entry(arc.a).or_default().push(i);
            incident.entry(arc.b.unwrap()).or_default().push(i);
        }
        if let Some((label, _)) = incident.iter().find(|(_, arcs)| arcs.len() != 2) {
            return Err(self.error(
                self.line,
                1,
                format!("position {label} is not on exactly two arcs; arcs must form a single cycle"),
            ));
        }
        let start = self.arcs[0].a;
        let mut order = vec![start];
        let mut used = vec![false; self.arcs.len()];
        used[0] = true;
        let mut at = self.arcs[0].b.unwrap();
        let mut prev_arc = 0;
        while at != start {
            order.push(at);
            let next = incident[&at].iter().copied().find(|&i| i != prev_arc && !used[i]);
            let Some(next) = next else {
                return Err(self.error(self.line, 1, "arcs do not form a single cycle"));
            };
            used[next] = true;
            prev_arc = next;
            let arc = &self.arcs[next];
            at = if arc.a == at { arc.b.unwrap() } else { arc.a };
        }
        if used.iter().any(|u| !u) {
            return Err(self.error(self.line, 1, "arcs do not form a single cycle"));
        }
        if order.len() > MAX_POSITIONS {
            return Err(self.error(self.line, 1, format!("more than {MAX_POSITIONS} positions")));
        }
        let index: HashMap<i64, usize> = order.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let lookup = |item: &Item, label: i64| {
            index.get(&label).copied().ok_or_else(|| {
                self.error(item.line, item.column, format!("position {label} is not on the boundary cycle"))
            })
        };
        let mut chords = Vec::new();
        let mut seen = HashMap::new();
        for item in &self.chords {
            let (a, b) = (item.a, item.b.unwrap());
            if a == b {
                return Err(self.error(item.line, item.column, format!("chord ({a}, {b}) is a loop")));
            }
            let (p, q) = (lookup(item, a)?, lookup(item, b)?);
            if seen.insert((p.min(q), p.max(q)), ()).is_some() {
                return Err(self.error(item.line, item.column, format!("chord ({a}, {b}) is repeated")));
            }
            chords.push((p, q));
        }
        let mut feet = Vec::new();
        for item in &self.feet {
            let p = lookup(item, item.a)?;
            if feet.contains(&p) {
                return Err(self.error(item.line, item.column, format!("foot {} is repeated", item.a)));
            }
            feet.push(p);
        }
        Schema::new(self.name.clone(), order.len(), &chords, &feet).map_err(|e| self.error(self.line, 1, e.to_string()))
    }
}

/// Parses a schema file, including an optional leading multiplicity.
pub fn parse_schema_file(text: &str) -> Result<SchemaFile, ParseError> {
    let mut default_r = None;
    let mut schemas = Vec::new();
    let mut current: Option<Record> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<(usize, &str)> = tokenize(content);
        let Some(&(col, keyword)) = tokens.first() else {
            continue;
        };
        let err = |column: usize, message: String, schema: Option<&Record>| ParseError {
            line,
            column,
            schema: schema.map(|r| r.name.clone()),
            message,
        };
        let int = |i: usize| -> Result<i64, ParseError> {
            let (c, tok) = tokens[i];
            tok.parse::<i64>().map_err(|_| err(c, format!("expected an integer, found `{tok}`"), current.as_ref()))
        };
        let expect_args = |n: usize| -> Result<(), ParseError> {
            if tokens.len() == n + 1 {
                Ok(())
            } else {
                Err(err(
                    col,
                    format!("`{keyword}` takes {n} argument(s), found {}", tokens.len() - 1),
                    current.as_ref(),
                ))
            }
        };
        match keyword {
            "schema" => {
                expect_args(1)?;
                if let Some(done) = current.take() {
                    schemas.push(done.finish()?);
                }
                current = Some(Record {
                    name: tokens[1].1.to_string(),
                    line,
                    arcs: Vec::new(),
                    chords: Vec::new(),
                    feet: Vec::new(),
                });
            }
            "arc" | "chord" | "foot" => {
                let n = if keyword == "foot" { 1 } else { 2 };
                expect_args(n)?;
                let a = int(1)?;
                let b = if n == 2 { Some(int(2)?) } else { None };
                let Some(rec) = current.as_mut() else {
                    return Err(err(col, format!("`{keyword}` outside of a schema record"), None));
                };
                let item = Item { line, column: col, a, b };
                match keyword {
                    "arc" => rec.arcs.push(item),
                    "chord" => rec.chords.push(item),
                    _ => rec.feet.push(item),
                }
            }
            _ if current.is_none() && schemas.is_empty() && default_r.is_none() && tokens.len() == 1 => {
                let r = keyword
                    .parse::<u32>()
                    .ok()
                    .filter(|&r| r >= 1)
                    .ok_or_else(|| err(col, format!("unknown keyword `{keyword}`"), None))?;
                default_r = Some(r);
            }
            _ => return Err(err(col, format!("unknown keyword `{keyword}`"), current.as_ref())),
        }
    }
    if let Some(done) = current.take() {
        schemas.push(done.finish()?);
    }
    Ok(SchemaFile { default_r, schemas })
}

/// Parses every schema in `text`.
pub fn parse_schemas(text: &str) -> Result<Vec<Schema>, ParseError> {
    parse_schema_file(text).map(|f| f.schemas)
}

fn tokenize(content: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &content[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &content[s..]));
    }
    // 1-based character columns
    out.into_iter().map(|(b, t)| (content[..b].chars().count() + 1, t)).collect()
}

/// Canonical text of one schema record.
pub fn serialize_schema(s: &Schema) -> String {
    let mut out = format!("schema {}\n", s.name);
    let k = s.positions;
    for i in 0..k {
        let (a, b) = s.arc_endpoints(i);
        writeln!(out, "arc {a} {b}").unwrap();
    }
    for &(p, q) in &s.chords {
        writeln!(out, "chord {p} {q}").unwrap();
    }
    for &p in &s.feet {
        writeln!(out, "foot {p}").unwrap();
    }
    out
}

/// Records separated by blank lines.
pub fn serialize_schemas(schemas: &[Schema]) -> String {
    schemas.iter().map(serialize_schema).collect::<Vec<_>>().join("\n")
}
