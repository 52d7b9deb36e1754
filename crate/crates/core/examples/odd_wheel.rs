//! K4 with attractive spokes and repulsive rim edges. Cycle subproblems stop
//! at the fractional bound -1.5; the odd wheel around node 0 closes the gap
//! to the integral optimum -1.

use mcmp::{solve, MulticutInstance, SolveConfig, Tighten};

fn main() {
    let k4 = MulticutInstance::from_edges(
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
    .unwrap();
    for tighten in [Tighten::Cycles, Tighten::CyclesAndOddWheels] {
        let config = SolveConfig {
            tighten,
            max_iterations: 200,
            ..SolveConfig::default()
        };
        let r = solve(&k4, &config).unwrap();
        println!(
            "{tighten}: LB={} UB={} status={}",
            r.lower_bound, r.upper_bound, r.status
        );
        for round in r
            .separation_rounds
            .iter()
            .filter(|s| s.cycles + s.wheels > 0)
        {
            println!(
                "  iteration {}: {} cycles, {} wheels, +{} triangles, +{} lollipops, bound {} -> {}",
                round.iteration,
                round.cycles,
                round.wheels,
                round.triangles_added,
                round.lollipops_added,
                round.lower_bound_before,
                round.lower_bound_after
            );
        }
    }
}
