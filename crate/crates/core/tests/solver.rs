use pancyclic::generate::{enumerate_schemas, excess_range};
use pancyclic::schema::{symbolic_spectrum, Assignment, Schema};
use pancyclic::solver::{feasible_parity_classes, forced_order, ParityClass, Problem, SearchTarget, SolveOptions};
use pancyclic::{target_spectrum, Family};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const MODES: [SolveOptions; 3] = [
    SolveOptions { parity_prune: true, incremental_prune: false },
    SolveOptions { parity_prune: false, incremental_prune: true },
    SolveOptions::UNPRUNED,
];

fn small_schemas(max_excess: usize) -> Vec<(Family, Schema)> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for m in excess_range(family).filter(|&m| m <= max_excess) {
            out.extend(enumerate_schemas(family, m).unwrap().into_iter().map(|s| (family, s)));
        }
    }
    out
}

/// Every composition of `total` into parts bounded below by `lower`.
fn compositions(lower: &[u32], total: u32, visit: &mut impl FnMut(&[u32])) {
    fn go(lower: &[u32], left: u32, prefix: &mut Vec<u32>, visit: &mut impl FnMut(&[u32])) {
        let i = prefix.len();
        if i + 1 == lower.len() {
            if left >= lower[i] {
                prefix.push(left);
                visit(prefix);
                prefix.pop();
            }
            return;
        }
        let rest: u32 = lower[i + 1..].iter().sum();
        for x in lower[i]..=left.saturating_sub(rest) {
            prefix.push(x);
            go(lower, left - x, prefix, visit);
            prefix.pop();
        }
    }
    go(lower, total, &mut Vec::new(), visit);
}

fn brute_force(s: &Schema, family: Family, r: u32) -> Vec<Assignment> {
    let cycles = s.symbolic_cycles();
    let Some(order) = forced_order(cycles.len(), family, r) else { return Vec::new() };
    let Ok(target) = target_spectrum(family, r, order) else { return Vec::new() };
    let mut found = Vec::new();
    compositions(&s.lower_bounds(), family.boundary_length(order) as u32, &mut |x| {
        if symbolic_spectrum(&cycles, x) == target {
            found.push(Assignment(x.to_vec()));
        }
    });
    found.sort();
    found
}

#[test]
fn pruning_modes_agree_up_to_three_chords() {
    let mut problems = 0;
    for (family, s) in small_schemas(3) {
        let n_cyc = s.symbolic_cycles().len() as u32;
        for r in 1..=n_cyc {
            let target = SearchTarget::new(family, r);
            let Some(default) = Problem::new(&s, target, SolveOptions::default()) else { continue };
            let expected = default.solve();
            for mode in MODES {
                let got = Problem::new(&s, target, mode).unwrap().solve();
                assert_eq!(got, expected, "{} r={r} {mode:?}", s.name());
            }
            problems += 1;
        }
    }
    assert!(problems > 20);
}

#[test]
fn solver_matches_composition_scan_up_to_three_chords() {
    let mut solutions = 0;
    for (family, s) in small_schemas(3) {
        let n_cyc = s.symbolic_cycles().len() as u32;
        for r in 1..=n_cyc {
            let expected = brute_force(&s, family, r);
            let got = Problem::new(&s, SearchTarget::new(family, r), SolveOptions::default())
                .map(|p| p.solve())
                .unwrap_or_default();
            assert_eq!(got, expected, "{} {family} r={r}", s.name());
            solutions += got.len();
        }
    }
    assert!(solutions > 0);
}

#[test]
fn solutions_satisfy_oracle_and_forced_order() {
    for (family, s) in small_schemas(4) {
        let n_cyc = s.symbolic_cycles().len();
        for r in 1..=n_cyc as u32 {
            let Some(p) = Problem::new(&s, SearchTarget::new(family, r), SolveOptions::default()) else { continue };
            for a in p.solve() {
                let g = s.instantiate(&a).unwrap();
                assert_eq!(g.check_target(family, r), Ok(true), "{} {a:?}", s.name());
                assert_eq!(Some(g.order()), forced_order(n_cyc, family, r));
                assert_eq!(a.total() as usize, family.boundary_length(g.order()));
            }
        }
    }
}

#[test]
fn rejected_assignments_fail_oracle() {
    let mut rng = StdRng::seed_from_u64(5);
    let mut rejected = 0;
    for (family, s) in small_schemas(3) {
        let cycles = s.symbolic_cycles();
        for r in 1..=cycles.len() as u32 {
            let Some(p) = Problem::new(&s, SearchTarget::new(family, r), SolveOptions::default()) else { continue };
            let accepted = p.solve();
            let boundary = family.boundary_length(p.order()) as u32;
            let mut all = Vec::new();
            compositions(&s.lower_bounds(), boundary, &mut |x| all.push(Assignment(x.to_vec())));
            for _ in 0..20 {
                let a = &all[rng.gen_range(0..all.len())];
                if accepted.contains(a) {
                    continue;
                }
                let Ok(g) = s.instantiate(a) else { continue };
                assert_ne!(g.check_target(family, r), Ok(true), "{} {a:?}", s.name());
                rejected += 1;
            }
        }
    }
    assert!(rejected > 100);
}

#[test]
fn parity_classes_for_small_examples() {
    let one_chord = Schema::new("one", 2, &[(0, 1)], &[]).unwrap();
    let cycles = one_chord.symbolic_cycles();
    let mut classes = feasible_parity_classes(&cycles, 2, SearchTarget::new(Family::Pancyclic, 1), 5);
    classes.sort();
    assert_eq!(classes, vec![ParityClass(0b01), ParityClass(0b10)]);

    let hub = Schema::new("hub", 2, &[], &[0, 1]).unwrap();
    let cycles = hub.symbolic_cycles();
    let classes = feasible_parity_classes(&cycles, 2, SearchTarget::new(Family::OddlyBipancyclic, 3), 5);
    assert_eq!(classes, vec![ParityClass(0)]);

    assert_eq!(forced_order(3, Family::Pancyclic, 1), Some(5));
    assert_eq!(forced_order(3, Family::Pancyclic, 2), None);
    assert_eq!(forced_order(3, Family::OddlyBipancyclic, 3), Some(5));
}

#[test]
fn bipartite_classes_leave_no_odd_cycle() {
    for (family, s) in small_schemas(3).into_iter().filter(|(f, _)| f.is_bipartite()) {
        let cycles = s.symbolic_cycles();
        for r in 1..=cycles.len() as u32 {
            let Some(order) = forced_order(cycles.len(), family, r) else { continue };
            for class in feasible_parity_classes(&cycles, s.arc_count(), SearchTarget::new(family, r), order) {
                assert!(cycles.iter().all(|c| class.cycle_parity(c) == 0));
            }
        }
    }
}
