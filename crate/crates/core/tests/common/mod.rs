#![allow(dead_code)]

use middle_cube::graph::Graph;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Random connected graph on `n` vertices: a random spanning tree plus each
/// remaining pair with probability `p`.
pub fn random_connected(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Connected, non-bipartite, `3..=max_n` vertices.
pub fn random_connected_odd(rng: &mut StdRng, max_n: usize) -> Graph {
    loop {
        let n = rng.random_range(3..=max_n);
        let p = rng.random_range(0.1..0.7);
        let g = random_connected(rng, n, p);
        if !g.is_bipartite() {
            return g;
        }
    }
}

/// `count` connected graphs on `1..=max_n` vertices from a fixed seed.
pub fn connected_corpus(seed: u64, count: usize, max_n: usize) -> Vec<Graph> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(1..=max_n);
            let p = rng.random_range(0.0..0.8);
            random_connected(&mut rng, n, p)
        })
        .collect()
}

pub fn non_bipartite_corpus(seed: u64, count: usize, max_n: usize) -> Vec<Graph> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count).map(|_| random_connected_odd(&mut rng, max_n)).collect()
}

pub fn seeded(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
