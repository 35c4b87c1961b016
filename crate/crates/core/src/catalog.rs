//! Whole sweeps: schemas to solutions to a deduplicated, audited catalog.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{canonical_graph, CanonError};
use crate::generate::{enumerate_schemas, excess_range, GenerateError};
use crate::graph::{CycleSpectrum, Graph};
use crate::io::encode_graph6;
use crate::schema::{Assignment, Schema, SymbolicCycle};
use crate::solver::{ParityClass, Problem, SearchTarget, SolveOptions};
use crate::target::{target_spectrum, Family, TargetError};

/// Which multiplicities a sweep covers. Open ranges stop at each schema's
/// cycle count, since `r` cannot exceed it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MultiplicityRange {
    Exact(u32),
    Between(u32, u32),
    AtLeast(u32),
}

impl MultiplicityRange {
    pub fn contains(&self, r: u32) -> bool {
        match *self {
            MultiplicityRange::Exact(x) => r == x,
            MultiplicityRange::Between(lo, hi) => lo <= r && r <= hi,
            MultiplicityRange::AtLeast(lo) => r >= lo,
        }
    }

    /// Multiplicities to try for a schema with `n_cyc` cycles.
    pub fn for_cycles(&self, n_cyc: usize) -> impl Iterator<Item = u32> {
        let cap = n_cyc as u32;
        let (lo, hi) = match *self {
            MultiplicityRange::Exact(x) => (x, x),
            MultiplicityRange::Between(lo, hi) => (lo, hi),
            MultiplicityRange::AtLeast(lo) => (lo, cap),
        };
        lo.max(1)..=hi.min(cap)
    }
}

impl fmt::Display for MultiplicityRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MultiplicityRange::Exact(x) => write!(f, "{x}"),
            MultiplicityRange::Between(lo, hi) => write!(f, "{lo}-{hi}"),
            MultiplicityRange::AtLeast(lo) => write!(f, "{lo}-"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid multiplicity range `{0}` (use N, A-B, A- or all)")]
pub struct RangeParseError(String);

impl FromStr for MultiplicityRange {
    type Err = RangeParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RangeParseError(s.to_string());
        let num = |t: &str| t.trim().parse::<u32>().ok().filter(|&r| r >= 1).ok_or_else(bad);
        let s = s.trim();
        if s == "all" {
            return Ok(MultiplicityRange::AtLeast(1));
        }
        match s.split_once('-') {
            None => Ok(MultiplicityRange::Exact(num(s)?)),
            Some((lo, "")) => Ok(MultiplicityRange::AtLeast(num(lo)?)),
            Some((lo, hi)) => {
                let (lo, hi) = (num(lo)?, num(hi)?);
                if lo > hi {
                    return Err(bad());
                }
                Ok(MultiplicityRange::Between(lo, hi))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub family: Family,
    pub r: MultiplicityRange,
    pub min_excess: usize,
    pub max_excess: usize,
    /// Schemas to search instead of the generated ones.
    pub schemas: Option<Vec<Schema>>,
    pub options: SolveOptions,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
}

impl SearchConfig {
    pub fn new(family: Family, r: MultiplicityRange, max_excess: usize) -> SearchConfig {
        SearchConfig { family, r, min_excess: 0, max_excess, schemas: None, options: SolveOptions::default(), jobs: 0 }
    }
}

/// One isomorphism class of solutions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub family: Family,
    pub r: u32,
    /// Edges beyond the boundary cycle.
    pub m: usize,
    pub order: usize,
    /// Schema and arc lengths of the first solution found in this class.
    pub schema: String,
    pub assignment: Assignment,
    /// Canonical form as hex.
    pub canonical: String,
    /// graph6 of the canonically relabelled graph.
    pub graph6: String,
    pub spectrum: CycleSpectrum,
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error("schema `{name}` does not fit a {family} search: {reason}")]
    SchemaMismatch { name: String, family: Family, reason: String },
    #[error("could not start worker pool: {0}")]
    Pool(String),
    #[error("schema `{schema}` with arcs {assignment:?} was emitted for r={r} but fails the graph oracle")]
    OracleDisagrees { schema: String, assignment: Vec<u32>, r: u32 },
}

type Found = BTreeMap<(u32, usize, Vec<u8>), (usize, Assignment, Graph)>;

struct Unit {
    schema: usize,
    r: u32,
    class: Option<ParityClass>,
}

/// Schemas a configuration sweeps, with their symbolic cycles.
pub fn sweep_schemas(cfg: &SearchConfig) -> Result<Vec<(Schema, Vec<SymbolicCycle>)>, SearchError> {
    let wanted = |m: usize| cfg.min_excess <= m && m <= cfg.max_excess;
    let schemas: Vec<Schema> = match &cfg.schemas {
        Some(list) => {
            for s in list {
                if s.has_hub() != cfg.family.has_hub() {
                    let reason = if s.has_hub() { "it has a hub" } else { "it has no hub" };
                    return Err(SearchError::SchemaMismatch {
                        name: s.name().to_string(),
                        family: cfg.family,
                        reason: reason.to_string(),
                    });
                }
            }
            list.iter().filter(|s| wanted(s.edge_excess())).cloned().collect()
        }
        None => {
            let mut all = Vec::new();
            for m in excess_range(cfg.family).filter(|&m| wanted(m)) {
                all.extend(enumerate_schemas(cfg.family, m)?);
            }
            all
        }
    };
    Ok(schemas
        .into_iter()
        .map(|s| {
            let cycles = s.symbolic_cycles();
            (s, cycles)
        })
        .collect())
}

/// Runs a sweep and returns the catalog sorted by `(r, order, canonical form)`.
///
/// Every solution is re-checked on its instantiated graph with the
/// brute-force cycle oracle before it enters the catalog.
pub fn search(cfg: &SearchConfig) -> Result<Vec<CatalogEntry>, SearchError> {
    let schemas = sweep_schemas(cfg)?;
    let mut units = Vec::new();
    for (idx, (schema, cycles)) in schemas.iter().enumerate() {
        for r in cfg.r.for_cycles(cycles.len()) {
            let target = SearchTarget::new(cfg.family, r);
            if let Some(problem) = Problem::with_cycles(schema, cycles.clone(), target, cfg.options) {
                units.extend(problem.units().into_iter().map(|class| Unit { schema: idx, r, class }));
            }
        }
    }
    let solve = |u: &Unit| -> Vec<Assignment> {
        let (schema, cycles) = &schemas[u.schema];
        let target = SearchTarget::new(cfg.family, u.r);
        Problem::with_cycles(schema, cycles.clone(), target, cfg.options)
            .expect("unit was built from a valid problem")
            .solve_unit(u.class)
    };
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build().map_err(|e| SearchError::Pool(e.to_string()))?;
    let results: Vec<Vec<Assignment>> = pool.install(|| units.par_iter().map(solve).collect());

    // Merge in unit order; keep the smallest (schema, assignment) per class.
    let mut found = Found::new();
    for (unit, assignments) in units.iter().zip(results) {
        let schema = &schemas[unit.schema].0;
        for assignment in assignments {
            let graph = schema.instantiate(&assignment).expect("solver respects arc bounds");
            if graph.check_target(cfg.family, unit.r) != Ok(true) {
                return Err(SearchError::OracleDisagrees {
                    schema: schema.name().to_string(),
                    assignment: assignment.0,
                    r: unit.r,
                });
            }
            let (canon, form) = canonical_graph(&graph)?;
            let key = (unit.r, graph.order(), form.as_bytes().to_vec());
            let candidate = (unit.schema, assignment, canon);
            match found.get(&key) {
                Some(existing) if (existing.0, &existing.1) <= (candidate.0, &candidate.1) => {}
                _ => {
                    found.insert(key, candidate);
                }
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|((r, order, form), (schema_idx, assignment, canon))| {
            let schema = &schemas[schema_idx].0;
            CatalogEntry {
                family: cfg.family,
                r,
                m: schema.edge_excess(),
                order,
                schema: schema.name().to_string(),
                assignment,
                canonical: form.iter().map(|b| format!("{b:02x}")).collect(),
                graph6: encode_graph6(&canon),
                spectrum: canon.cycle_spectrum(),
            }
        })
        .collect())
}

/// One JSON object per line, fields in declaration order.
pub fn to_jsonl(entries: &[CatalogEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        out.push_str(&serde_json::to_string(e).expect("catalog entries serialize"));
        out.push('\n');
    }
    out
}

/// Number of catalog entries per `(r, order)`.
pub fn counts_by_order(entries: &[CatalogEntry]) -> BTreeMap<(u32, usize), usize> {
    let mut counts = BTreeMap::new();
    for e in entries {
        *counts.entry((e.r, e.order)).or_insert(0) += 1;
    }
    counts
}

/// Outcome of checking one graph against a target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub family: Family,
    pub r: u32,
    pub order: usize,
    pub pass: bool,
    pub observed: CycleSpectrum,
    pub target: Option<CycleSpectrum>,
    /// `(length, observed, target)` where they differ.
    pub diff: Vec<(usize, u64, u64)>,
    pub problems: Vec<String>,
}

pub fn verify(g: &Graph, family: Family, r: u32) -> Result<Verdict, TargetError> {
    if r == 0 {
        return Err(TargetError::ZeroMultiplicity);
    }
    let observed = g.cycle_spectrum();
    let mut problems = Vec::new();
    let target = match target_spectrum(family, r, g.order()) {
        Ok(t) => Some(t),
        Err(e) => {
            problems.push(e.to_string());
            None
        }
    };
    if family.is_bipartite() && !g.is_bipartite() {
        problems.push("graph is not bipartite".to_string());
    }
    if family == Family::OddlyBipancyclic && g.min_degree() < 2 {
        problems.push(format!("minimum degree is {}, need at least 2", g.min_degree()));
    }
    let diff = target.as_ref().map(|t| observed.diff(t)).unwrap_or_default();
    let pass = target.is_some() && problems.is_empty() && diff.is_empty();
    Ok(Verdict { family, r, order: g.order(), pass, observed, target, diff, problems })
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        writeln!(f, "{status}: {} r={} order={}", self.family, self.r, self.order)?;
        let spectrum = |s: &CycleSpectrum| s.iter().map(|(l, c)| format!("{l}:{c}")).collect::<Vec<_>>().join(" ");
        writeln!(f, "observed: {{{}}}", spectrum(&self.observed))?;
        if let Some(t) = &self.target {
            writeln!(f, "target:   {{{}}}", spectrum(t))?;
        }
        for p in &self.problems {
            writeln!(f, "problem: {p}")?;
        }
        for &(len, obs, want) in &self.diff {
            let what = if obs < want { "missing" } else { "extra" };
            writeln!(f, "length {len}: observed {obs}, target {want} ({what} {})", obs.abs_diff(want))?;
        }
        Ok(())
    }
}
