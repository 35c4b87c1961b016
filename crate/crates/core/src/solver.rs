//! Arc-length search for one schema and one target.
//!
//! The number of cycles of a schema does not depend on the arc lengths, so a
//! target `(family, r)` fixes the order of any solution. Inside that order the
//! search fixes the parity of every arc first, keeping only parity classes
//! whose odd/even cycle counts match the target, and then enumerates arc
//! lengths depth-first. After each assignment every cycle whose length is
//! already fixed is booked against the target, and the cycles still open are
//! checked for a perfect matching of their feasible length intervals onto the
//! remaining target slots.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::schema::{Assignment, Schema, SymbolicCycle};
use crate::target::Family;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SearchTarget {
    pub family: Family,
    pub r: u32,
}

impl SearchTarget {
    pub fn new(family: Family, r: u32) -> SearchTarget {
        assert!(r >= 1, "multiplicity must be at least 1");
        SearchTarget { family, r }
    }
}

/// Bit `i` set means arc `i` has odd length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParityClass(pub u32);

impl ParityClass {
    pub fn is_odd(self, arc: usize) -> bool {
        self.0 >> arc & 1 == 1
    }

    pub fn cycle_parity(self, c: &SymbolicCycle) -> u32 {
        ((self.0 & c.arc_mask).count_ones() + c.unit_edges) % 2
    }
}

/// The only order a `(family, r)` graph with `n_cyc` cycles can have.
pub fn forced_order(n_cyc: usize, family: Family, r: u32) -> Option<usize> {
    let r = r as usize;
    if r == 0 || n_cyc == 0 || !n_cyc.is_multiple_of(r) {
        return None;
    }
    let lengths = n_cyc / r;
    Some(match family {
        Family::Pancyclic => lengths + 2,
        Family::Bipancyclic => 2 * lengths + 2,
        Family::OddlyBipancyclic => 2 * lengths + 3,
    })
}

/// Parity classes whose cycle parities can meet the target at `order`.
pub fn feasible_parity_classes(
    cycles: &[SymbolicCycle],
    arc_count: usize,
    target: SearchTarget,
    order: usize,
) -> Vec<ParityClass> {
    let boundary = target.family.boundary_length(order);
    let (mut odd_need, mut even_need) = (0usize, 0usize);
    for len in target.family.required_lengths(order) {
        if len % 2 == 1 {
            odd_need += target.r as usize;
        } else {
            even_need += target.r as usize;
        }
    }
    (0..1u32 << arc_count)
        .map(ParityClass)
        .filter(|class| class.0.count_ones() as usize % 2 == boundary % 2)
        .filter(|class| {
            let odd = cycles.iter().filter(|c| class.cycle_parity(c) == 1).count();
            odd == odd_need && cycles.len() - odd == even_need
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SolveOptions {
    /// Split the search by arc parity and skip infeasible classes.
    pub parity_prune: bool,
    /// Book cycle lengths as soon as they are fixed and check the open
    /// cycles; without it only complete assignments are checked.
    pub incremental_prune: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { parity_prune: true, incremental_prune: true }
    }
}

impl SolveOptions {
    pub const UNPRUNED: SolveOptions = SolveOptions { parity_prune: false, incremental_prune: false };
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub assignment: Assignment,
    pub graph: Graph,
}

/// A schema paired with a target whose forced order exists.
#[derive(Clone, Debug)]
pub struct Problem<'a> {
    schema: &'a Schema,
    target: SearchTarget,
    cycles: Vec<SymbolicCycle>,
    order: usize,
    boundary: i64,
    lower: Vec<u32>,
    options: SolveOptions,
}

impl<'a> Problem<'a> {
    /// `None` when the target admits no order for this schema, or when the
    /// schema's hub does not match the family.
    pub fn new(schema: &'a Schema, target: SearchTarget, options: SolveOptions) -> Option<Problem<'a>> {
        Problem::with_cycles(schema, schema.symbolic_cycles(), target, options)
    }

    /// As [`Problem::new`] with precomputed symbolic cycles.
    pub fn with_cycles(
        schema: &'a Schema,
        cycles: Vec<SymbolicCycle>,
        target: SearchTarget,
        options: SolveOptions,
    ) -> Option<Problem<'a>> {
        if schema.has_hub() != target.family.has_hub() {
            return None;
        }
        let order = forced_order(cycles.len(), target.family, target.r)?;
        if order < target.family.min_order() {
            return None;
        }
        let boundary = target.family.boundary_length(order) as i64;
        let lower = schema.lower_bounds();
        if lower.iter().map(|&b| i64::from(b)).sum::<i64>() > boundary {
            return None;
        }
        Some(Problem { schema, target, cycles, order, boundary, lower, options })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cycles(&self) -> &[SymbolicCycle] {
        &self.cycles
    }

    pub fn schema(&self) -> &Schema {
        self.schema
    }

    /// Independent work units: the feasible parity classes, or a single
    /// unconstrained unit when parity pruning is off.
    pub fn units(&self) -> Vec<Option<ParityClass>> {
        if self.options.parity_prune {
            feasible_parity_classes(&self.cycles, self.schema.arc_count(), self.target, self.order)
                .into_iter()
                .map(Some)
                .collect()
        } else {
            vec![None]
        }
    }

    /// All solutions inside one unit, in lexicographic order of the search.
    pub fn solve_unit(&self, class: Option<ParityClass>) -> Vec<Assignment> {
        let mut dfs = Dfs::new(self, class);
        dfs.run();
        dfs.out
    }

    /// All solutions, sorted.
    pub fn solve(&self) -> Vec<Assignment> {
        let mut all: Vec<Assignment> = self.units().into_iter().flat_map(|u| self.solve_unit(u)).collect();
        all.sort_unstable();
        all
    }
}

/// Every assignment of `s` whose instantiation meets `target`, with the
/// instantiated graphs.
pub fn solve_schema(s: &Schema, target: SearchTarget) -> Vec<Solution> {
    solve_schema_with(s, target, SolveOptions::default())
}

pub fn solve_schema_with(s: &Schema, target: SearchTarget, options: SolveOptions) -> Vec<Solution> {
    let Some(problem) = Problem::new(s, target, options) else {
        return Vec::new();
    };
    problem
        .solve()
        .into_iter()
        .map(|assignment| {
            let graph = s.instantiate(&assignment).expect("solver respects arc bounds");
            Solution { assignment, graph }
        })
        .collect()
}

/// Per-depth bookkeeping: after `depth` arcs are assigned.
struct Level {
    /// Cycles whose length becomes fixed at this depth.
    newly: Vec<usize>,
    /// Cycles still open at this depth.
    open: Vec<usize>,
    /// Per cycle: minimal total of the unassigned arcs inside / outside it.
    min_in: Vec<i64>,
    min_out: Vec<i64>,
    /// Minimal total of all unassigned arcs.
    rest_min: i64,
    /// Unassigned arcs as a mask.
    unassigned: u32,
    /// Open cycles grouped by the unassigned arcs they contain.
    bundles: Vec<Bundle>,
}

/// Open cycles whose unassigned part is `key` or its complement. Their
/// lengths all move with the single unknown `T`, the total of the arcs in
/// `key`: members with `plus` set grow with `T`, the others shrink.
struct Bundle {
    t_min: i64,
    /// Minimal total of the unassigned arcs outside `key`.
    rest_min: i64,
    members: Vec<(usize, bool)>,
}

struct Dfs<'p> {
    cycles: &'p [SymbolicCycle],
    r: u32,
    boundary: i64,
    arc_order: Vec<usize>,
    min: Vec<i64>,
    step: Vec<i64>,
    /// Required cycle lengths split by parity (both lists combined when the
    /// parity is unknown).
    lengths: [Vec<i64>; 2],
    /// Per cycle: index into `lengths`.
    group: Vec<usize>,
    groups: usize,
    required: Vec<bool>,
    counts: Vec<u32>,
    levels: Vec<Level>,
    inside: Vec<i64>,
    outside: Vec<i64>,
    x: Vec<i64>,
    incremental: bool,
    out: Vec<Assignment>,
    t_step: i64,
    intervals: [Vec<(i64, i64)>; 2],
    heap: BinaryHeap<Reverse<i64>>,
    stamp: Vec<u32>,
    touched: Vec<usize>,
}

impl<'p> Dfs<'p> {
    fn new(p: &'p Problem<'_>, class: Option<ParityClass>) -> Dfs<'p> {
        let k = p.schema.arc_count();
        let family = p.target.family;
        let mut min = Vec::with_capacity(k);
        let mut step = Vec::with_capacity(k);
        for (arc, &lb) in p.lower.iter().enumerate() {
            let lb = i64::from(lb);
            match class {
                Some(c) => {
                    let want = i64::from(c.is_odd(arc));
                    min.push(if lb % 2 == want { lb } else { lb + 1 });
                    step.push(2);
                }
                None => {
                    min.push(lb);
                    step.push(1);
                }
            }
        }
        let mut required = vec![false; p.boundary as usize + 1];
        for len in family.required_lengths(p.order) {
            required[len] = true;
        }
        let all: Vec<i64> = family.required_lengths(p.order).map(|l| l as i64).collect();
        let (lengths, group, groups) = match class {
            Some(c) => {
                let by_parity = [0, 1].map(|par| all.iter().copied().filter(|l| l % 2 == par).collect::<Vec<_>>());
                let group = p.cycles.iter().map(|cy| c.cycle_parity(cy) as usize).collect();
                (by_parity, group, 2)
            }
            None => ([all, Vec::new()], vec![0; p.cycles.len()], 1),
        };
        let arc_order = choose_arc_order(p.cycles.as_slice(), k);
        let levels = build_levels(p.cycles.as_slice(), &arc_order, &min);
        Dfs {
            cycles: &p.cycles,
            r: p.target.r,
            boundary: p.boundary,
            arc_order,
            min,
            step,
            lengths,
            group,
            groups,
            counts: vec![0; required.len()],
            required,
            levels,
            inside: vec![0; p.cycles.len()],
            outside: vec![0; p.cycles.len()],
            x: vec![0; k],
            incremental: p.options.incremental_prune,
            out: Vec::new(),
            t_step: if class.is_some() { 2 } else { 1 },
            intervals: [Vec::with_capacity(p.cycles.len()), Vec::with_capacity(p.cycles.len())],
            heap: BinaryHeap::with_capacity(p.cycles.len()),
            stamp: vec![0; p.boundary as usize + 1],
            touched: Vec::new(),
        }
    }

    fn run(&mut self) {
        if self.incremental {
            let Some(booked) = self.book(0) else {
                return;
            };
            if self.matchable(0, self.boundary) {
                self.descend(0, self.boundary);
            }
            self.unbook(0, booked);
        } else {
            self.descend(0, self.boundary);
        }
    }

    /// Length of a cycle that is fixed at `depth`.
    fn fixed_length(&self, c: usize, depth: usize) -> i64 {
        let cy = &self.cycles[c];
        if cy.arc_mask & self.levels[depth].unassigned == 0 {
            i64::from(cy.unit_edges) + self.inside[c]
        } else {
            i64::from(cy.unit_edges) + self.boundary - self.outside[c]
        }
    }

    /// Books the cycles fixed at `depth`. On failure nothing stays booked.
    fn book(&mut self, depth: usize) -> Option<usize> {
        let n = self.levels[depth].newly.len();
        for i in 0..n {
            let c = self.levels[depth].newly[i];
            let len = self.fixed_length(c, depth);
            let ok = len >= 0
                && (len as usize) < self.required.len()
                && self.required[len as usize]
                && self.counts[len as usize] < self.r;
            if !ok {
                self.unbook(depth, i);
                return None;
            }
            self.counts[len as usize] += 1;
        }
        Some(n)
    }

    fn unbook(&mut self, depth: usize, booked: usize) {
        for i in 0..booked {
            let c = self.levels[depth].newly[i];
            let len = self.fixed_length(c, depth);
            self.counts[len as usize] -= 1;
        }
    }

    /// Whether bundle member lengths at `t` all land on free target slots.
    fn fits(&mut self, depth: usize, bundle: usize, t: i64) -> bool {
        let mut ok = true;
        for &(c, plus) in &self.levels[depth].bundles[bundle].members {
            let unit = i64::from(self.cycles[c].unit_edges);
            let len = if plus { unit + self.inside[c] + t } else { unit + self.boundary - self.outside[c] - t };
            if len < 0 || len as usize >= self.required.len() || !self.required[len as usize] {
                ok = false;
                break;
            }
            let len = len as usize;
            if self.counts[len] + self.stamp[len] >= self.r {
                ok = false;
                break;
            }
            self.stamp[len] += 1;
            self.touched.push(len);
        }
        for len in self.touched.drain(..) {
            self.stamp[len] = 0;
        }
        ok
    }

    /// Whether the open cycles at `depth` can still be matched onto the
    /// unfilled target slots.
    ///
    /// Each bundle's feasible range of `T` narrows its members' length
    /// intervals; the intervals must then admit a perfect matching onto the
    /// slots, checked greedily by earliest deadline.
    fn matchable(&mut self, depth: usize, remaining: i64) -> bool {
        if self.levels[depth].open.is_empty() {
            return true;
        }
        self.intervals[0].clear();
        self.intervals[1].clear();
        for b in 0..self.levels[depth].bundles.len() {
            let bundle = &self.levels[depth].bundles[b];
            let (t_lo, t_hi) = (bundle.t_min, remaining - bundle.rest_min);
            let mut first = t_lo;
            while first <= t_hi && !self.fits(depth, b, first) {
                first += self.t_step;
            }
            if first > t_hi {
                return false;
            }
            let mut last = t_lo + (t_hi - t_lo) / self.t_step * self.t_step;
            while last > first && !self.fits(depth, b, last) {
                last -= self.t_step;
            }
            for &(c, plus) in &self.levels[depth].bundles[b].members {
                let unit = i64::from(self.cycles[c].unit_edges);
                let interval = if plus {
                    let base = unit + self.inside[c];
                    (base + first, base + last)
                } else {
                    let base = unit + self.boundary - self.outside[c];
                    (base - last, base - first)
                };
                self.intervals[self.group[c]].push(interval);
            }
        }
        for g in 0..self.groups {
            let intervals = &mut self.intervals[g];
            intervals.sort_unstable();
            self.heap.clear();
            let mut next = 0;
            for &len in &self.lengths[g] {
                while next < intervals.len() && intervals[next].0 <= len {
                    self.heap.push(Reverse(intervals[next].1));
                    next += 1;
                }
                let need = self.r - self.counts[len as usize];
                for _ in 0..need {
                    match self.heap.pop() {
                        Some(Reverse(hi)) if hi >= len => {}
                        _ => return false,
                    }
                }
            }
            if next < intervals.len() || !self.heap.is_empty() {
                return false;
            }
        }
        true
    }

    /// Largest value arc `order[depth]` may take without pushing an open
    /// cycle's interval out of the target range.
    fn value_cap(&self, depth: usize, remaining: i64) -> i64 {
        let arc = self.arc_order[depth];
        let next = &self.levels[depth + 1];
        let mut cap = remaining - next.rest_min;
        if !self.incremental {
            return cap;
        }
        for &c in &self.levels[depth].open {
            let cy = &self.cycles[c];
            let unit = i64::from(cy.unit_edges);
            let lens = &self.lengths[self.group[c]];
            let (Some(&shortest), Some(&longest)) = (lens.first(), lens.last()) else {
                return -1;
            };
            let bound = if cy.contains_arc(arc) {
                longest - (unit + self.inside[c] + next.min_in[c])
            } else {
                unit + self.boundary - self.outside[c] - next.min_out[c] - shortest
            };
            cap = cap.min(bound);
        }
        cap
    }

    fn assign(&mut self, depth: usize, value: i64) {
        let arc = self.arc_order[depth];
        self.x[arc] = value;
        for &c in &self.levels[depth].open {
            if self.cycles[c].contains_arc(arc) {
                self.inside[c] += value;
            } else {
                self.outside[c] += value;
            }
        }
    }

    fn unassign(&mut self, depth: usize) {
        let arc = self.arc_order[depth];
        let value = self.x[arc];
        for &c in &self.levels[depth].open {
            if self.cycles[c].contains_arc(arc) {
                self.inside[c] -= value;
            } else {
                self.outside[c] -= value;
            }
        }
        self.x[arc] = 0;
    }

    fn descend(&mut self, depth: usize, remaining: i64) {
        let k = self.arc_order.len();
        let arc = self.arc_order[depth];
        if depth + 1 == k {
            // The last arc is forced by the boundary length.
            let (lo, step) = (self.min[arc], self.step[arc]);
            if remaining < lo || (remaining - lo) % step != 0 {
                return;
            }
            self.x[arc] = remaining;
            if self.incremental || self.complete_ok() {
                debug_assert!(self.complete_ok());
                self.out.push(Assignment(self.x.iter().map(|&v| v as u32).collect()));
            }
            self.x[arc] = 0;
            return;
        }
        let cap = self.value_cap(depth, remaining);
        let mut value = self.min[arc];
        while value <= cap {
            self.assign(depth, value);
            if !self.incremental {
                self.descend(depth + 1, remaining - value);
            } else if let Some(booked) = self.book(depth + 1) {
                if self.matchable(depth + 1, remaining - value) {
                    self.descend(depth + 1, remaining - value);
                }
                self.unbook(depth + 1, booked);
            }
            self.unassign(depth);
            value += self.step[arc];
        }
    }

    /// Full check of a complete assignment.
    fn complete_ok(&self) -> bool {
        let mut counts = vec![0u32; self.required.len()];
        let values: Vec<u32> = self.x.iter().map(|&v| v as u32).collect();
        for c in self.cycles {
            let len = c.length(&values) as usize;
            if len >= counts.len() || !self.required[len] {
                return false;
            }
            counts[len] += 1;
        }
        counts.iter().zip(&self.required).all(|(&n, &req)| if req { n == self.r } else { n == 0 })
    }
}

/// Greedy arc order: at each step take the arc that fixes the most cycles.
fn choose_arc_order(cycles: &[SymbolicCycle], k: usize) -> Vec<usize> {
    let full = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
    let mut assigned = 0u32;
    let mut order = Vec::with_capacity(k);
    for _ in 0..k {
        let best = (0..k)
            .filter(|&a| assigned >> a & 1 == 0)
            .max_by_key(|&a| {
                let with = assigned | 1 << a;
                let fixed = cycles.iter().filter(|c| is_fixed(c.arc_mask, with, full)).count();
                let touched = cycles.iter().filter(|c| c.arc_mask & with != 0).count();
                (fixed, touched, Reverse(a))
            })
            .expect("an unassigned arc remains");
        assigned |= 1 << best;
        order.push(best);
    }
    order
}

fn is_fixed(mask: u32, assigned: u32, full: u32) -> bool {
    let unassigned = full & !assigned;
    mask & unassigned == 0 || mask & unassigned == unassigned
}

fn build_levels(cycles: &[SymbolicCycle], arc_order: &[usize], min: &[i64]) -> Vec<Level> {
    let k = arc_order.len();
    let full = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
    let mut levels = Vec::with_capacity(k + 1);
    let mut assigned = 0u32;
    let mut fixed = vec![false; cycles.len()];
    for depth in 0..=k {
        if depth > 0 {
            assigned |= 1 << arc_order[depth - 1];
        }
        let unassigned = full & !assigned;
        let mut newly = Vec::new();
        let mut open = Vec::new();
        let mut min_in = vec![0; cycles.len()];
        let mut min_out = vec![0; cycles.len()];
        for (c, cy) in cycles.iter().enumerate() {
            if fixed[c] {
                continue;
            }
            if is_fixed(cy.arc_mask, assigned, full) {
                fixed[c] = true;
                newly.push(c);
            } else {
                open.push(c);
            }
            for (arc, &lo) in min.iter().enumerate().take(k) {
                if unassigned >> arc & 1 == 1 {
                    if cy.contains_arc(arc) {
                        min_in[c] += lo;
                    } else {
                        min_out[c] += lo;
                    }
                }
            }
        }
        let rest_min = (0..k).filter(|&a| unassigned >> a & 1 == 1).map(|a| min[a]).sum();
        let mask_min = |mask: u32| -> i64 { (0..k).filter(|&a| mask >> a & 1 == 1).map(|a| min[a]).sum() };
        let mut bundles: Vec<(u32, Bundle)> = Vec::new();
        for &c in &open {
            let part = cycles[c].arc_mask & unassigned;
            let key = part.min(unassigned ^ part);
            let member = (c, part == key);
            match bundles.iter_mut().find(|(k, _)| *k == key) {
                Some((_, b)) => b.members.push(member),
                None => bundles.push((
                    key,
                    Bundle { t_min: mask_min(key), rest_min: mask_min(unassigned ^ key), members: vec![member] },
                )),
            }
        }
        let bundles = bundles.into_iter().map(|(_, b)| b).collect();
        levels.push(Level { newly, open, min_in, min_out, rest_min, unassigned, bundles });
    }
    levels
}
