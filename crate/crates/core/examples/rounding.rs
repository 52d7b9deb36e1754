//! Greedy contraction, then Kernighan-Lin with joins, compared with the exact
//! optimum on a small random instance.

use mcmp::oracle::exact_optimum;
use mcmp::rounding::{gaec, klj};
use mcmp::MulticutInstance;
use rand::{Rng, SeedableRng};

fn main() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let n = 10;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                edges.push((u, v, rng.gen_range(-1.0..1.0)));
            }
        }
    }
    let instance = MulticutInstance::from_edges(n, edges).unwrap();
    let g = gaec(&instance);
    let k = klj(&instance, &g);
    let (opt, best) = exact_optimum(&instance).unwrap();
    println!(
        "gaec: {:.4} with {} clusters",
        instance.partition_cost(&g),
        g.component_count()
    );
    println!(
        "klj:  {:.4} with {} clusters",
        instance.partition_cost(&k),
        k.component_count()
    );
    println!("opt:  {:.4} with {} clusters", opt, best.component_count());
    println!("components {:?}", k.labels());
}
