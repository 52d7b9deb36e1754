//! Solves an instance file, or a built-in 3-node example when no path is given.
//!
//! ```text
//! cargo run --example solve_instance -- path/to/instance.txt
//! ```

use std::fs::File;
use std::io::BufReader;

use mcmp::{solve, MulticutInstance, SolveConfig};

const EXAMPLE: &str = "\
# one repulsive edge closing two attractive ones
MULTICUT 3 3
0 1 -2
0 2 1
1 2 1
";

fn main() -> Result<(), mcmp::Error> {
    let instance = match std::env::args().nth(1) {
        Some(path) => MulticutInstance::parse(BufReader::new(File::open(path)?))?,
        None => EXAMPLE.parse()?,
    };
    let result = solve(&instance, &SolveConfig::default())?;
    println!(
        "{} nodes, {} edges: LB={} UB={} status={} after {} iterations",
        instance.node_count(),
        instance.edge_count(),
        result.lower_bound,
        result.upper_bound,
        result.status,
        result.iterations
    );
    print!("{}", instance.format_solution(&result.labeling)?);
    Ok(())
}
