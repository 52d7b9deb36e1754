//! Brute-force reference: enumerate all partitions, and check a fractional
//! point against every cycle inequality.

use mcmp::oracle::{check_cycle_point, exact_optimum, simple_cycles, PartitionEnumerator};
use mcmp::MulticutInstance;

fn main() {
    for n in 1..=8 {
        print!("{} ", PartitionEnumerator::new(n).count());
    }
    println!("partitions of 1..=8 nodes");

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
    let (opt, p) = exact_optimum(&k4).unwrap();
    println!("K4 optimum {opt} with components {:?}", p.labels());

    let x = [0.5, 0.5, 0.5, 1.0, 1.0, 1.0];
    let cost: f64 = k4.costs().iter().zip(x).map(|(c, v)| c * v).sum();
    println!(
        "point {x:?} satisfies all {} cycles: {}, cost {cost}",
        simple_cycles(&k4).unwrap().len(),
        check_cycle_point(&k4, &x).unwrap()
    );
}
