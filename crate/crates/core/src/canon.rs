//! Canonical labelling by colour refinement and individualisation.
//!
//! Vertices start in one cell. Refinement splits cells by the sorted colours
//! of their neighbours until stable; when cells remain non-trivial the first
//! one is split by individualising each of its vertices in turn. Every
//! discrete colouring reached is a labelling, and the canonical form is the
//! smallest upper-triangle adjacency bit string among them.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::graph::Graph;

pub const MAX_CANON_ORDER: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CanonError {
    #[error("order {0} exceeds the canonical labelling bound of {MAX_CANON_ORDER}")]
    OrderTooLarge(usize),
}

/// Order byte followed by the upper triangle `(0,1), (0,2), (1,2), (0,3), ...`
/// of the canonically relabelled adjacency matrix, packed most significant
/// bit first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

struct Canonizer {
    n: usize,
    rows: Vec<u64>,
    best: Option<(Vec<u8>, Vec<usize>)>,
    sig: Vec<u32>,
    idx: Vec<usize>,
}

impl Canonizer {
    fn new(g: &Graph) -> Canonizer {
        let n = g.order();
        let rows = (0..n).map(|u| g.row(u)[0]).collect();
        Canonizer { n, rows, best: None, sig: Vec::new(), idx: Vec::new() }
    }

    /// Refines `colors` (cell-start indices) to the coarsest stable colouring.
    fn refine(&mut self, colors: &mut [u32]) {
        let n = self.n;
        let mut cells = distinct(colors);
        loop {
            // sig[v*n..] holds v's colour followed by its sorted neighbour colours.
            self.sig.clear();
            let mut offsets = Vec::with_capacity(n + 1);
            for v in 0..n {
                offsets.push(self.sig.len());
                self.sig.push(colors[v]);
                let start = self.sig.len();
                let mut bits = self.rows[v];
                while bits != 0 {
                    let w = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    self.sig.push(colors[w]);
                }
                self.sig[start..].sort_unstable();
            }
            offsets.push(self.sig.len());
            let sig = &self.sig;
            let key = |v: usize| &sig[offsets[v]..offsets[v + 1]];
            self.idx.clear();
            self.idx.extend(0..n);
            self.idx.sort_by(|&a, &b| key(a).cmp(key(b)));
            let mut next = vec![0u32; n];
            let mut start = 0;
            for i in 1..=n {
                if i == n || key(self.idx[i]) != key(self.idx[start]) {
                    for &v in &self.idx[start..i] {
                        next[v] = start as u32;
                    }
                    start = i;
                }
            }
            colors.copy_from_slice(&next);
            let now = distinct(colors);
            if now == cells {
                return;
            }
            cells = now;
        }
    }

    fn search(&mut self, mut colors: Vec<u32>) {
        self.refine(&mut colors);
        let n = self.n;
        // First non-singleton cell: the smallest colour shared by two vertices.
        let mut size = vec![0u32; n];
        for &c in &colors {
            size[c as usize] += 1;
        }
        let Some(target) = (0..n).find(|&c| size[c] > 1) else {
            self.leaf(&colors);
            return;
        };
        let members: Vec<usize> = (0..n).filter(|&v| colors[v] as usize == target).collect();
        for &w in &members {
            let mut child = colors.clone();
            for &u in &members {
                if u != w {
                    child[u] = target as u32 + 1;
                }
            }
            self.search(child);
        }
    }

    fn leaf(&mut self, colors: &[u32]) {
        let n = self.n;
        let mut inv = vec![0usize; n];
        for (v, &c) in colors.iter().enumerate() {
            inv[c as usize] = v;
        }
        let bits = n * n.saturating_sub(1) / 2;
        let mut form = vec![0u8; 1 + bits.div_ceil(8)];
        form[0] = n as u8;
        let mut bit = 0;
        for j in 1..n {
            let row = self.rows[inv[j]];
            for &vi in &inv[..j] {
                if row >> vi & 1 == 1 {
                    form[1 + bit / 8] |= 0x80 >> (bit % 8);
                }
                bit += 1;
            }
        }
        if self.best.as_ref().is_none_or(|(b, _)| form < *b) {
            let perm = colors.iter().map(|&c| c as usize).collect();
            self.best = Some((form, perm));
        }
    }
}

fn distinct(colors: &[u32]) -> usize {
    let mut seen = 0u64;
    for &c in colors {
        seen |= 1 << c;
    }
    seen.count_ones() as usize
}

fn run(g: &Graph) -> Result<(Vec<u8>, Vec<usize>), CanonError> {
    if g.order() > MAX_CANON_ORDER {
        return Err(CanonError::OrderTooLarge(g.order()));
    }
    let mut c = Canonizer::new(g);
    c.search(vec![0; g.order()]);
    Ok(c.best.expect("search visits at least one leaf"))
}

/// Canonical relabelling: `perm[old] = new`.
pub fn canonical_labeling(g: &Graph) -> Result<Vec<usize>, CanonError> {
    run(g).map(|(_, perm)| perm)
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, CanonError> {
    run(g).map(|(form, _)| CanonicalForm(form))
}

/// `g` relabelled canonically, with its form.
pub fn canonical_graph(g: &Graph) -> Result<(Graph, CanonicalForm), CanonError> {
    let (form, perm) = run(g)?;
    Ok((g.relabel(&perm), CanonicalForm(form)))
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool, CanonError> {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(g)? == canonical_form(h)?)
}

/// One graph per isomorphism class (the first seen), ordered by canonical form.
pub fn dedup(graphs: Vec<Graph>) -> Result<Vec<Graph>, CanonError> {
    let mut classes = BTreeMap::new();
    for g in graphs {
        let form = canonical_form(&g)?;
        classes.entry(form).or_insert(g);
    }
    Ok(classes.into_values().collect())
}
