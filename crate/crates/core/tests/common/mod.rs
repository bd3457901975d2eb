#![allow(dead_code)]

use occwalk::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random labelled tree plus independent extra edges with probability `p`.
/// Always connected.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new();
    g.add_node("v0").unwrap();
    for i in 1..n {
        let j = rng.random_range(0..i);
        g.add_edge(&format!("v{i}"), &format!("v{j}"), 1.0).unwrap();
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (format!("v{i}"), format!("v{j}"));
            if g.weight(&a, &b).is_none() && rng.random_bool(p) {
                g.add_edge(&a, &b, 1.0).unwrap();
            }
        }
    }
    g
}

pub fn complete(n: usize) -> Graph {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i.to_string(), j.to_string()));
        }
    }
    Graph::from_pairs(&pairs).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let pairs: Vec<_> = (0..n).map(|i| (i.to_string(), ((i + 1) % n).to_string())).collect();
    Graph::from_pairs(&pairs).unwrap()
}

pub fn path(n: usize) -> Graph {
    let pairs: Vec<_> = (1..n).map(|i| ((i - 1).to_string(), i.to_string())).collect();
    Graph::from_pairs(&pairs).unwrap()
}

/// Star with hub "c" and leaves "l1".."l{leaves}".
pub fn star(leaves: usize) -> Graph {
    let pairs: Vec<_> = (1..=leaves).map(|i| ("c".to_owned(), format!("l{i}"))).collect();
    Graph::from_pairs(&pairs).unwrap()
}

pub fn inf_norm(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
