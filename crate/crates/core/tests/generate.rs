use std::collections::BTreeSet;

use pancyclic::generate::{canonical_relabel, enumerate_schemas, excess_range};
use pancyclic::schema::parse_schemas;
use pancyclic::{schema_canonical_key, Family, Schema};

type Config = (usize, Vec<(usize, usize)>, Vec<usize>);

fn subsets<T: Clone>(items: &[T], size: usize) -> Vec<Vec<T>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, item) in items.iter().enumerate() {
        for mut rest in subsets(&items[i + 1..], size - 1) {
            rest.insert(0, item.clone());
            out.push(rest);
        }
    }
    out
}

/// Every labelled configuration with `chords` chords and `feet` feet in
/// which each of the `k` positions carries at least one attachment.
fn labelled(chords: usize, feet: usize) -> Vec<Config> {
    let mut out = Vec::new();
    if chords + feet == 0 {
        out.push((0, Vec::new(), Vec::new()));
        return out;
    }
    for k in 2..=2 * chords + feet {
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|q| (0..q).map(move |p| (p, q))).collect();
        let points: Vec<usize> = (0..k).collect();
        for cs in subsets(&pairs, chords) {
            for fs in subsets(&points, feet) {
                let covered: BTreeSet<usize> = cs.iter().flat_map(|&(p, q)| [p, q]).chain(fs.iter().copied()).collect();
                if covered.len() == k {
                    out.push((k, cs.clone(), fs));
                }
            }
        }
    }
    out
}

fn image(c: &Config, map: impl Fn(usize) -> usize) -> (BTreeSet<(usize, usize)>, BTreeSet<usize>) {
    let chords = c.1.iter().map(|&(p, q)| (map(p).min(map(q)), map(p).max(map(q)))).collect();
    let feet = c.2.iter().map(|&p| map(p)).collect();
    (chords, feet)
}

fn equivalent(a: &Config, b: &Config) -> bool {
    if a.0 != b.0 || a.1.len() != b.1.len() || a.2.len() != b.2.len() {
        return false;
    }
    let k = a.0;
    if k == 0 {
        return true;
    }
    let target = image(b, |p| p);
    (0..k).any(|s| image(a, |p| (p + s) % k) == target || image(a, |p| (s + k - p) % k) == target)
}

fn class_count(configs: &[Config]) -> usize {
    let mut reps: Vec<&Config> = Vec::new();
    for c in configs {
        if !reps.iter().any(|r| equivalent(r, c)) {
            reps.push(c);
        }
    }
    reps.len()
}

fn config_of(s: &Schema) -> Config {
    (s.positions(), s.chords().to_vec(), s.feet().to_vec())
}

#[test]
fn generator_matches_labelled_brute_force() {
    for family in Family::ALL {
        for m in excess_range(family).filter(|&m| m <= 3) {
            let feet_options: Vec<usize> = if family.has_hub() { (2..=m).collect() } else { vec![0] };
            let mut expected = 0;
            let mut configs = Vec::new();
            for d in feet_options {
                let cs = labelled(m - d, d);
                expected += class_count(&cs);
                configs.extend(cs);
            }
            let emitted = enumerate_schemas(family, m).unwrap();
            assert_eq!(emitted.len(), expected, "{family} m={m}");
            // Each emitted schema is one labelled configuration, and no two are equivalent.
            for (i, s) in emitted.iter().enumerate() {
                let c = config_of(s);
                assert!(configs.iter().any(|x| equivalent(x, &c)));
                for t in &emitted[..i] {
                    assert!(!equivalent(&config_of(t), &c), "{} ~ {}", t.name(), s.name());
                }
            }
        }
    }
}

#[test]
fn known_small_counts() {
    assert_eq!(enumerate_schemas(Family::Pancyclic, 0).unwrap().len(), 1);
    assert_eq!(enumerate_schemas(Family::Pancyclic, 1).unwrap().len(), 1);
    assert_eq!(enumerate_schemas(Family::OddlyBipancyclic, 2).unwrap().len(), 1);
    assert!(enumerate_schemas(Family::OddlyBipancyclic, 1).is_err());
    assert!(enumerate_schemas(Family::Pancyclic, 6).is_err());
}

#[test]
fn keys_are_distinct_and_stable_under_relabelling() {
    for family in Family::ALL {
        for m in excess_range(family) {
            let schemas = enumerate_schemas(family, m).unwrap();
            let keys: BTreeSet<Vec<u8>> = schemas.iter().map(schema_canonical_key).collect();
            assert_eq!(keys.len(), schemas.len(), "{family} m={m}");
            for s in &schemas {
                assert_eq!(schema_canonical_key(&canonical_relabel(s)), schema_canonical_key(s));
                assert_eq!(s.edge_excess(), m);
                assert_eq!(s.has_hub(), family.has_hub());
            }
        }
    }
}

#[test]
fn key_examples() {
    let one = Schema::new("a", 2, &[(0, 1)], &[]).unwrap();
    let reflected = Schema::new("b", 2, &[(1, 0)], &[]).unwrap();
    assert_eq!(schema_canonical_key(&one), schema_canonical_key(&reflected));

    let crossing = Schema::new("x", 4, &[(0, 2), (1, 3)], &[]).unwrap();
    let nested = Schema::new("n", 4, &[(0, 3), (1, 2)], &[]).unwrap();
    assert_ne!(schema_canonical_key(&crossing), schema_canonical_key(&nested));

    let hub = Schema::new("h", 2, &[], &[0, 1]).unwrap();
    let hub2 = Schema::new("h2", 2, &[], &[1, 0]).unwrap();
    assert_eq!(schema_canonical_key(&hub), schema_canonical_key(&hub2));
}

#[test]
fn hand_written_schemas_are_emitted_exactly_once() {
    let text = "
schema one-chord
arc 0 1
arc 1 0
chord 0 1

schema crossing
arc 0 1
arc 1 2
arc 2 3
arc 3 0
chord 0 2
chord 1 3

schema shared-end
arc 0 1
arc 1 2
arc 2 0
chord 0 1
chord 0 2

schema three-crossing
arc 0 1
arc 1 2
arc 2 3
arc 3 4
arc 4 5
arc 5 0
chord 0 3
chord 1 4
chord 2 5
";
    let mut all = Vec::new();
    for m in 0..=3 {
        all.extend(enumerate_schemas(Family::Pancyclic, m).unwrap());
    }
    for s in parse_schemas(text).unwrap() {
        let key = schema_canonical_key(&s);
        let hits = all.iter().filter(|t| schema_canonical_key(t) == key).count();
        assert_eq!(hits, 1, "{}", s.name());
    }
}

#[test]
fn every_position_is_attached() {
    for family in Family::ALL {
        for m in excess_range(family).filter(|&m| m >= 1) {
            for s in enumerate_schemas(family, m).unwrap() {
                let mut used = vec![false; s.positions()];
                for &(p, q) in s.chords() {
                    used[p] = true;
                    used[q] = true;
                }
                for &p in s.feet() {
                    used[p] = true;
                }
                assert!(used.iter().all(|&u| u), "{}", s.name());
            }
        }
    }
}
