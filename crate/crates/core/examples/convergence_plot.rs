//! Solves a 4x4 grid with random costs and writes the convergence log and
//! plot into the given directory (default: the current one).

use std::path::PathBuf;

use mcmp::report::{write_csv, write_svg};
use mcmp::{solve, MulticutInstance, SolveConfig};
use rand::{Rng, SeedableRng};

fn main() -> Result<(), mcmp::Error> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let side = 4;
    let id = |r: usize, c: usize| r * side + c;
    let mut edges = Vec::new();
    for r in 0..side {
        for c in 0..side {
            if c + 1 < side {
                edges.push((id(r, c), id(r, c + 1), rng.gen_range(-1.0..1.0)));
            }
            if r + 1 < side {
                edges.push((id(r, c), id(r + 1, c), rng.gen_range(-1.0..1.0)));
            }
            if r + 1 < side && c + 1 < side {
                edges.push((id(r, c), id(r + 1, c + 1), rng.gen_range(-1.0..1.0)));
            }
        }
    }
    let instance = MulticutInstance::from_edges(side * side, edges)?;
    let config = SolveConfig {
        rounding_interval: 20,
        ..SolveConfig::default()
    };
    let result = solve(&instance, &config)?;
    let (csv, svg) = (dir.join("convergence.csv"), dir.join("convergence.svg"));
    write_csv(&result.records, &csv)?;
    write_svg(&result.records, &svg)?;
    println!(
        "LB={} UB={} status={}; wrote {} and {}",
        result.lower_bound,
        result.upper_bound,
        result.status,
        csv.display(),
        svg.display()
    );
    Ok(())
}
