#![allow(dead_code)]

use mcmp::factors::FactorGraph;
use mcmp::{MulticutInstance, Partition};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random graph on `n` nodes: each pair becomes an edge with probability
/// `density`, costs uniform in `[-1, 1)`.
pub fn random_instance(rng: &mut ChaCha8Rng, n: usize, density: f64) -> MulticutInstance {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v, rng.gen_range(-1.0..1.0)));
            }
        }
    }
    MulticutInstance::from_edges(n, edges).unwrap()
}

pub fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> Partition {
    let k = rng.gen_range(1..=n.max(1));
    Partition::from_labels((0..n).map(|_| rng.gen_range(0..k)).collect())
}

/// Attaches up to `triangles` random triangles and `lollipops` random
/// lollipops (chords are added as needed).
pub fn random_attachments(
    rng: &mut ChaCha8Rng,
    state: &mut FactorGraph,
    triangles: usize,
    lollipops: usize,
) {
    let n = state.graph().node_count();
    let mut nodes: Vec<usize> = (0..n).collect();
    if n >= 3 {
        for _ in 0..triangles {
            nodes.shuffle(rng);
            state.attach_triangle(nodes[0], nodes[1], nodes[2]);
        }
    }
    if n >= 4 {
        for _ in 0..lollipops {
            nodes.shuffle(rng);
            state
                .attach_lollipop(nodes[0], nodes[1], nodes[2], nodes[3])
                .unwrap();
        }
    }
}

pub fn k4_wheel() -> MulticutInstance {
    MulticutInstance::from_edges(
        4,
        [
            (0, 1, 1.0),
            (0, 2, 1.0),
            (0, 3, 1.0),
            (1, 2, -1.0),
            (1, 3, -1.0),
            (2, 3, -1.0),
        ],
    )
    .unwrap()
}

pub fn triangle() -> MulticutInstance {
    MulticutInstance::from_edges(3, [(0, 1, -2.0), (0, 2, 1.0), (1, 2, 1.0)]).unwrap()
}

/// Wheel with center 0 and rim `1..=k`.
pub fn wheel(k: usize, spoke: f64, rim: f64) -> MulticutInstance {
    let mut edges = Vec::new();
    for i in 1..=k {
        edges.push((0, i, spoke));
        edges.push((i, i % k + 1, rim));
    }
    MulticutInstance::from_edges(k + 1, edges).unwrap()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}
