#![allow(dead_code)]

use std::collections::BTreeMap;

use pancyclic::schema::Schema;
use pancyclic::Graph;
use rand::Rng;

/// Cycle counts by length via subset dynamic programming: for each vertex
/// set, count Hamiltonian cycles of the induced subgraph through its lowest
/// vertex. Independent of the library's DFS.
pub fn subset_spectrum(g: &Graph) -> BTreeMap<usize, u64> {
    let n = g.order();
    assert!(n <= 16);
    let adj: Vec<u32> = (0..n).map(|u| (0..n).filter(|&v| g.has_edge(u, v)).map(|v| 1 << v).sum()).collect();
    // paths[mask][v]: paths from the lowest vertex of `mask` covering `mask` and ending at v.
    let mut paths = vec![vec![0u64; n]; 1 << n];
    for s in 0..n {
        paths[1 << s][s] = 1;
    }
    let mut counts = BTreeMap::new();
    for mask in 1usize..1 << n {
        let low = mask.trailing_zeros() as usize;
        for v in 0..n {
            let p = paths[mask][v];
            if p == 0 {
                continue;
            }
            for w in low + 1..n {
                if mask >> w & 1 == 0 && adj[v] >> w & 1 == 1 {
                    paths[mask | 1 << w][w] += p;
                }
            }
        }
        let size = mask.count_ones() as usize;
        if size >= 3 {
            let closing: u64 = (0..n).filter(|&v| adj[v] >> low & 1 == 1).map(|v| paths[mask][v]).sum();
            if closing > 0 {
                *counts.entry(size).or_insert(0) += closing / 2;
            }
        }
    }
    counts
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, density: f64) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if rng.gen_bool(density) {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// A random valid schema on `k` positions with `chords` distinct chords and
/// `feet` hub feet.
pub fn random_schema<R: Rng>(rng: &mut R, k: usize, chords: usize, feet: usize) -> Schema {
    let mut pairs = Vec::new();
    for j in 1..k {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    use rand::seq::SliceRandom;
    let chosen: Vec<(usize, usize)> = pairs.choose_multiple(rng, chords.min(pairs.len())).copied().collect();
    let positions: Vec<usize> = (0..k).collect();
    let feet: Vec<usize> = positions.choose_multiple(rng, feet.min(k)).copied().collect();
    Schema::new("random", k, &chosen, &feet).unwrap()
}
