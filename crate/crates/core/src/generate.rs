//! Isomorph-free generation of schemas up to the dihedral symmetry of the
//! boundary cycle.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::schema::Schema;
use crate::target::Family;

/// Largest edge excess the generator supports.
pub const MAX_EXCESS: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("edge excess {m} is outside the supported range {min}..={max} for {family}")]
    ExcessOutOfRange { family: Family, m: usize, min: usize, max: usize },
}

/// Supported excess range for a family.
pub fn excess_range(family: Family) -> std::ops::RangeInclusive<usize> {
    if family.has_hub() {
        2..=MAX_EXCESS
    } else {
        0..=MAX_EXCESS
    }
}

type Image = (Vec<(usize, usize)>, Vec<usize>);

fn image(k: usize, chords: &[(usize, usize)], feet: &[usize], map: impl Fn(usize) -> usize) -> Image {
    let mut c: Vec<_> = chords
        .iter()
        .map(|&(p, q)| {
            let (a, b) = (map(p), map(q));
            (a.min(b), a.max(b))
        })
        .collect();
    c.sort_unstable();
    let mut f: Vec<_> = feet.iter().map(|&p| map(p)).collect();
    f.sort_unstable();
    debug_assert!(c.iter().all(|&(_, b)| b < k));
    (c, f)
}

/// The lexicographically smallest image of the chords and feet under the
/// `2k` rotations and reflections of the positions.
fn canonical_image(s: &Schema) -> Image {
    let k = s.positions();
    if k == 0 {
        return (Vec::new(), Vec::new());
    }
    let mut best: Option<Image> = None;
    for shift in 0..k {
        for reflect in [false, true] {
            let img = image(k, s.chords(), s.feet(), |p| if reflect { (shift + k - p) % k } else { (p + shift) % k });
            if best.as_ref().is_none_or(|b| img < *b) {
                best = Some(img);
            }
        }
    }
    best.unwrap()
}

/// Key identifying a schema's dihedral equivalence class.
pub fn schema_canonical_key(s: &Schema) -> Vec<u8> {
    let (chords, feet) = canonical_image(s);
    let mut key = vec![s.positions() as u8, chords.len() as u8, feet.len() as u8];
    for (p, q) in chords {
        key.push(p as u8);
        key.push(q as u8);
    }
    key.extend(feet.iter().map(|&p| p as u8));
    key
}

/// Relabels `s` to its canonical image, keeping its name.
pub fn canonical_relabel(s: &Schema) -> Schema {
    let (chords, feet) = canonical_image(s);
    Schema::new(s.name(), s.positions(), &chords, &feet).expect("image of a valid schema is valid")
}

fn for_each_subset<T: Copy>(items: &[T], size: usize, f: &mut impl FnMut(&[T])) {
    fn go<T: Copy>(items: &[T], size: usize, from: usize, acc: &mut Vec<T>, f: &mut impl FnMut(&[T])) {
        if acc.len() == size {
            f(acc);
            return;
        }
        let need = size - acc.len();
        for i in from..items.len() {
            if items.len() - i < need {
                break;
            }
            acc.push(items[i]);
            go(items, size, i + 1, acc, f);
            acc.pop();
        }
    }
    let mut acc = Vec::with_capacity(size);
    go(items, size, 0, &mut acc, f);
}

/// Chords and feet of one labelled schema.
type Placement = (Vec<(usize, usize)>, Vec<usize>);

fn schemas_with(chords: usize, feet: usize) -> Vec<Schema> {
    if chords == 0 && feet == 0 {
        return vec![Schema::bare_cycle("P0C0-0")];
    }
    let mut out = Vec::new();
    for k in 2..=2 * chords + feet {
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|q| (0..q).map(move |p| (p, q))).collect();
        let positions: Vec<usize> = (0..k).collect();
        let mut classes: BTreeMap<Vec<u8>, Placement> = BTreeMap::new();
        for_each_subset(&positions, feet, &mut |fs: &[usize]| {
            for_each_subset(&pairs, chords, &mut |cs: &[(usize, usize)]| {
                let mut covered = 0u64;
                for &(p, q) in cs {
                    covered |= 1 << p | 1 << q;
                }
                for &p in fs {
                    covered |= 1 << p;
                }
                if covered.count_ones() as usize != k {
                    return;
                }
                let s = Schema::new("tmp", k, cs, fs).expect("generated schema is valid");
                let key = schema_canonical_key(&s);
                classes.entry(key).or_insert_with(|| canonical_image(&s));
            });
        });
        for (idx, (chords_img, feet_img)) in classes.into_values().enumerate() {
            let name = if feet == 0 { format!("P{k}C{chords}-{idx}") } else { format!("P{k}C{chords}F{feet}-{idx}") };
            out.push(Schema::new(name, k, &chords_img, &feet_img).expect("canonical image is valid"));
        }
    }
    out
}

/// One canonical schema per dihedral class with edge excess exactly `m`.
///
/// Pancyclic and bipancyclic schemas use `m` chords. Oddly-bipancyclic
/// schemas have a hub with `d` feet, `2 <= d <= m`, and `m - d` chords.
/// Positions may carry several chord ends and feet.
pub fn enumerate_schemas(family: Family, m: usize) -> Result<Vec<Schema>, GenerateError> {
    let range = excess_range(family);
    if !range.contains(&m) {
        return Err(GenerateError::ExcessOutOfRange { family, m, min: *range.start(), max: *range.end() });
    }
    if !family.has_hub() {
        return Ok(schemas_with(m, 0));
    }
    Ok((2..=m).flat_map(|d| schemas_with(m - d, d)).collect())
}
