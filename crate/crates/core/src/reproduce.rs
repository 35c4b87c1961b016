//! Published catalog sizes and the sweeps that reproduce them.
//!
//! Each row fixes a family, a multiplicity range, an edge-excess range and an
//! order range, and lists the expected number of non-isomorphic graphs per
//! order inside that slice. Orders absent from the list must be empty.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use crate::catalog::{search, CatalogEntry, MultiplicityRange, SearchConfig, SearchError};
use crate::generate::MAX_EXCESS;
use crate::target::Family;

/// Where an expected count comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    /// Stated in the literature.
    Reference,
    /// Recorded from an earlier run that was checked independently.
    Golden,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Reference => "reference",
            Source::Golden => "golden",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub family: Family,
    pub r: MultiplicityRange,
    pub excess: RangeInclusive<usize>,
    pub orders: RangeInclusive<usize>,
    pub expected: BTreeMap<usize, usize>,
    pub source: Source,
}

impl Row {
    fn new(
        family: Family,
        r: MultiplicityRange,
        excess: RangeInclusive<usize>,
        expected: &[(usize, usize)],
        source: Source,
    ) -> Row {
        Row { family, r, excess, orders: 0..=usize::MAX, expected: expected.iter().copied().collect(), source }
    }

    fn orders(mut self, orders: RangeInclusive<usize>) -> Row {
        self.orders = orders;
        self
    }

    pub fn label(&self) -> String {
        let mut label = format!("{} r={} m={}..{}", self.family, self.r, self.excess.start(), self.excess.end());
        if *self.orders.start() > 0 {
            label.push_str(&format!(" v>={}", self.orders.start()));
        }
        if *self.orders.end() < usize::MAX {
            label.push_str(&format!(" v<={}", self.orders.end()));
        }
        label
    }

    pub fn selects(&self, e: &CatalogEntry) -> bool {
        e.family == self.family && self.r.contains(e.r) && self.excess.contains(&e.m) && self.orders.contains(&e.order)
    }

    /// Counts per order among the selected entries.
    pub fn observe(&self, catalog: &[CatalogEntry]) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for e in catalog.iter().filter(|e| self.selects(e)) {
            *counts.entry(e.order).or_insert(0) += 1;
        }
        counts
    }
}

/// The expected catalog sizes checked by [`reproduce`].
pub fn reference_rows() -> Vec<Row> {
    use Family::*;
    use MultiplicityRange::{AtLeast, Exact};
    use Source::{Golden, Reference};
    vec![
        Row::new(Pancyclic, Exact(1), 0..=3, &[(3, 1), (5, 1), (8, 2), (14, 3)], Golden),
        Row::new(Pancyclic, Exact(1), 4..=5, &[], Reference),
        Row::new(Pancyclic, Exact(2), 0..=5, &[(8, 2), (11, 4), (13, 2), (17, 6), (19, 3)], Reference),
        Row::new(Pancyclic, AtLeast(3), 0..=5, &[], Reference),
        Row::new(Bipancyclic, Exact(1), 0..=5, &[(44, 6)], Reference).orders(32..=usize::MAX),
        Row::new(Bipancyclic, Exact(1), 0..=5, &[(4, 1), (8, 1), (14, 4), (26, 6)], Golden).orders(0..=31),
        Row::new(Bipancyclic, Exact(2), 0..=5, &[(14, 3), (22, 10)], Reference),
        Row::new(Bipancyclic, Exact(2), 5..=5, &[], Reference),
        Row::new(Bipancyclic, AtLeast(3), 0..=5, &[], Reference),
        Row::new(OddlyBipancyclic, Exact(1), 2..=5, &[(15, 2), (23, 22), (41, 84)], Reference),
        Row::new(OddlyBipancyclic, Exact(2), 2..=5, &[(9, 2), (15, 3), (21, 8), (25, 4)], Reference),
        Row::new(OddlyBipancyclic, Exact(3), 2..=5, &[(5, 1), (17, 2)], Reference),
        Row::new(OddlyBipancyclic, Exact(4), 2..=5, &[(9, 2), (13, 5)], Reference),
        Row::new(OddlyBipancyclic, AtLeast(5), 2..=5, &[], Reference),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
    /// The row needs a larger edge excess than was swept.
    Skipped,
}

#[derive(Clone, Debug)]
pub struct RowResult {
    pub row: Row,
    pub observed: BTreeMap<usize, usize>,
    pub status: Status,
}

impl RowResult {
    /// `(order, found, expected)` for every order where they differ.
    pub fn diff(&self) -> Vec<(usize, usize, usize)> {
        let orders: std::collections::BTreeSet<usize> =
            self.row.expected.keys().chain(self.observed.keys()).copied().collect();
        orders
            .into_iter()
            .filter_map(|v| {
                let found = self.observed.get(&v).copied().unwrap_or(0);
                let expected = self.row.expected.get(&v).copied().unwrap_or(0);
                (found != expected).then_some((v, found, expected))
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub max_excess: usize,
    pub rows: Vec<RowResult>,
    pub catalogs: BTreeMap<Family, Vec<CatalogEntry>>,
}

impl Report {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.status != Status::Mismatch)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &RowResult> {
        self.rows.iter().filter(|r| r.status == Status::Mismatch)
    }
}

fn format_counts(counts: &BTreeMap<usize, usize>) -> String {
    if counts.is_empty() {
        return "{}".to_string();
    }
    let parts: Vec<String> = counts.iter().map(|(v, n)| format!("{v}:{n}")).collect();
    format!("{{{}}}", parts.join(", "))
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<42} {:<10} {:<28} {:<28} status", "slice", "source", "found", "expected")?;
        for result in &self.rows {
            let status = match result.status {
                Status::Match => "ok",
                Status::Mismatch => "MISMATCH",
                Status::Skipped => "skipped",
            };
            writeln!(
                f,
                "{:<42} {:<10} {:<28} {:<28} {status}",
                result.row.label(),
                result.row.source.to_string(),
                format_counts(&result.observed),
                format_counts(&result.row.expected),
            )?;
            if result.status == Status::Mismatch {
                for (v, found, expected) in result.diff() {
                    writeln!(f, "    order {v}: found {found}, expected {expected}")?;
                }
            }
        }
        Ok(())
    }
}

/// Sweeps every family over all multiplicities up to `max_excess` and
/// compares the catalogs with [`reference_rows`].
pub fn reproduce(max_excess: usize, jobs: usize) -> Result<Report, SearchError> {
    let max_excess = max_excess.min(MAX_EXCESS);
    let mut catalogs = BTreeMap::new();
    for family in Family::ALL {
        let mut cfg = SearchConfig::new(family, MultiplicityRange::AtLeast(1), max_excess);
        cfg.jobs = jobs;
        catalogs.insert(family, search(&cfg)?);
    }
    let rows = reference_rows()
        .into_iter()
        .map(|row| {
            let observed = row.observe(&catalogs[&row.family]);
            let status = if *row.excess.end() > max_excess {
                Status::Skipped
            } else if observed == row.expected {
                Status::Match
            } else {
                Status::Mismatch
            };
            RowResult { row, observed, status }
        })
        .collect();
    Ok(Report { max_excess, rows, catalogs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_matches_or_skips() {
        let report = reproduce(3, 1).unwrap();
        assert!(report.all_match(), "{report}");
        let checked = report.rows.iter().filter(|r| r.status == Status::Match).count();
        assert_eq!(checked, 1);
    }

    #[test]
    fn diff_lists_missing_and_extra_orders() {
        let row = Row::new(Family::Pancyclic, MultiplicityRange::Exact(1), 0..=3, &[(5, 1), (8, 2)], Source::Golden);
        let observed = [(5, 1), (8, 1), (9, 1)].into_iter().collect();
        let result = RowResult { row, observed, status: Status::Mismatch };
        assert_eq!(result.diff(), vec![(8, 1, 2), (9, 1, 0)]);
    }
}
