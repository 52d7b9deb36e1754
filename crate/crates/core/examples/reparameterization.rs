//! Message passing moves cost between subproblems without changing the cost
//! of any multicut, while the sum of subproblem minima only goes up.

use mcmp::message_passing::{compute_factor_order, run_iteration};
use mcmp::oracle::{exact_optimum, PartitionEnumerator};
use mcmp::{FactorGraph, MulticutInstance};

fn main() {
    let instance = MulticutInstance::from_edges(
        5,
        [
            (0, 1, 0.9),
            (0, 2, -0.4),
            (1, 2, 0.7),
            (1, 3, -0.8),
            (2, 3, 0.5),
            (2, 4, 0.6),
            (3, 4, -0.3),
            (0, 4, 0.2),
        ],
    )
    .unwrap();
    let mut state = FactorGraph::new(instance.clone());
    for (u, v, w) in [(0, 1, 2), (1, 2, 3), (2, 3, 4), (0, 2, 4)] {
        state.attach_triangle(u, v, w);
    }
    state.attach_lollipop(2, 0, 4, 1).unwrap();

    let order = compute_factor_order(&state);
    let mut bounds = vec![state.dual_lower_bound()];
    for _ in 0..20 {
        bounds.push(run_iteration(&mut state, &order));
    }
    let (opt, _) = exact_optimum(&instance).unwrap();
    println!("bounds: {:.4?}", &bounds[..6]);
    println!("final bound {:.6}, optimum {:.6}", bounds[20], opt);

    let mut worst = 0.0f64;
    for p in PartitionEnumerator::new(instance.node_count()) {
        let x = instance.partition_to_labeling(&p).unwrap();
        let original = instance.labeling_cost(&x).unwrap();
        worst = worst.max((state.reparameterized_cost(&x).unwrap() - original).abs());
    }
    println!("largest cost change over all 52 multicuts: {worst:.2e}");
}
