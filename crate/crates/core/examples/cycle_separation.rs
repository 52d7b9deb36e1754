//! A single violated cycle: separation finds it, the fan triangulation adds
//! it as triangle subproblems, and message passing lifts the bound.

use mcmp::message_passing::{compute_factor_order, run_iteration};
use mcmp::separation::{separate_cycles, triangulate_cycle};
use mcmp::{FactorGraph, MulticutInstance};

fn main() {
    // a 5-cycle with one repulsive edge
    let instance = MulticutInstance::from_edges(
        5,
        [
            (0, 1, 1.0),
            (1, 2, 0.8),
            (2, 3, 1.2),
            (3, 4, 0.6),
            (0, 4, -1.5),
        ],
    )
    .unwrap();
    let mut state = FactorGraph::new(instance);
    println!("edge-only bound: {}", state.dual_lower_bound());

    let cycles = separate_cycles(&state, 1e-4);
    for c in &cycles {
        println!(
            "cycle {:?}, repair edge {}, guaranteed increase {}",
            c.nodes, c.repair_edge, c.guaranteed_increase
        );
    }
    for c in &cycles {
        let triangles = triangulate_cycle(&mut state, c);
        println!(
            "{} triangles, graph now has {} edges",
            triangles.len(),
            state.edge_count()
        );
    }

    let order = compute_factor_order(&state);
    for it in 1..=5 {
        println!(
            "iteration {it}: bound {:.6}",
            run_iteration(&mut state, &order)
        );
    }
}
