//! Exhaustive reference routines for small instances. Tests compare the
//! solver against these; the solve path never calls them.

use crate::error::{Error, Result};
use crate::instance::{EdgeLabeling, MulticutInstance, Partition};

pub const ORACLE_NODE_LIMIT: usize = 12;
pub const CYCLE_NODE_LIMIT: usize = 8;

/// Tolerance for cycle inequalities on fractional points.
const POINT_TOLERANCE: f64 = 1e-9;

/// Restricted growth strings `a` with `a[0] = 0` and
/// `a[i] <= 1 + max(a[..i])`, in lexicographic order.
#[derive(Clone, Debug)]
struct GrowthString {
    labels: Vec<usize>,
    // prefix maxima: max_before[i] = max(labels[..i]), 0 for i = 0
    max_before: Vec<usize>,
}

impl GrowthString {
    fn new(n: usize) -> Self {
        GrowthString {
            labels: vec![0; n],
            max_before: vec![0; n],
        }
    }

    fn advance(&mut self) -> bool {
        let n = self.labels.len();
        for i in (1..n).rev() {
            if self.labels[i] <= self.max_before[i] {
                self.labels[i] += 1;
                let top = self.max_before[i].max(self.labels[i]);
                for j in i + 1..n {
                    self.labels[j] = 0;
                    self.max_before[j] = top;
                }
                return true;
            }
        }
        false
    }
}

/// Every set partition of `0..n` exactly once.
#[derive(Clone, Debug)]
pub struct PartitionEnumerator {
    state: GrowthString,
    done: bool,
}

impl PartitionEnumerator {
    pub fn new(n: usize) -> Self {
        PartitionEnumerator {
            state: GrowthString::new(n),
            done: false,
        }
    }
}

impl Iterator for PartitionEnumerator {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let out = Partition::from_labels(self.state.labels.clone());
        self.done = !self.state.advance();
        Some(out)
    }
}

fn ensure_size(instance: &MulticutInstance, limit: usize) -> Result<()> {
    if instance.node_count() > limit {
        return Err(Error::TooLarge {
            node_count: instance.node_count(),
            limit,
        });
    }
    Ok(())
}

/// Minimum multicut cost by enumeration, with the first minimizing
/// partition in enumeration order.
pub fn exact_optimum(instance: &MulticutInstance) -> Result<(f64, Partition)> {
    ensure_size(instance, ORACLE_NODE_LIMIT)?;
    let edges = instance.edges();
    let mut state = GrowthString::new(instance.node_count());
    let mut best = f64::INFINITY;
    let mut witness = state.labels.clone();
    loop {
        let l = &state.labels;
        let cost: f64 = edges
            .iter()
            .filter(|e| l[e.u] != l[e.v])
            .map(|e| e.cost)
            .sum();
        if cost < best {
            best = cost;
            witness.clone_from(l);
        }
        if !state.advance() {
            break;
        }
    }
    Ok((best, Partition::from_labels(witness)))
}

/// Simple cycles of the graph as node sequences. Each cycle appears once:
/// it starts at its smallest node and its second node is smaller than its
/// last.
pub fn simple_cycles(instance: &MulticutInstance) -> Result<Vec<Vec<usize>>> {
    ensure_size(instance, CYCLE_NODE_LIMIT)?;
    let adj = instance.adjacency();
    let n = instance.node_count();
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    for start in 0..n {
        let mut path = vec![start];
        on_path[start] = true;
        extend_cycles(&adj, start, &mut path, &mut on_path, &mut out);
        on_path[start] = false;
    }
    Ok(out)
}

fn extend_cycles(
    adj: &[Vec<(usize, usize)>],
    start: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let last = *path.last().expect("path starts non-empty");
    for &(w, _) in &adj[last] {
        if w == start && path.len() >= 3 && path[1] < last {
            out.push(path.clone());
        }
        if w > start && !on_path[w] {
            on_path[w] = true;
            path.push(w);
            extend_cycles(adj, start, path, on_path, out);
            path.pop();
            on_path[w] = false;
        }
    }
}

fn cycle_edges(instance: &MulticutInstance, cycle: &[usize]) -> Vec<usize> {
    (0..cycle.len())
        .map(|i| {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            instance
                .edge_index(a, b)
                .expect("consecutive cycle nodes are adjacent")
        })
        .collect()
}

/// Every simple cycle with exactly one edge of cost `<= -epsilon` and all
/// other edges of cost `>= epsilon`, each as a sorted list of edge indices.
pub fn all_qualifying_cycles(
    instance: &MulticutInstance,
    costs: &[f64],
    epsilon: f64,
) -> Result<Vec<Vec<usize>>> {
    if costs.len() != instance.edge_count() {
        return Err(Error::LengthMismatch {
            expected: instance.edge_count(),
            actual: costs.len(),
        });
    }
    let mut out = Vec::new();
    for cycle in simple_cycles(instance)? {
        let mut edges = cycle_edges(instance, &cycle);
        let negative = edges.iter().filter(|&&e| costs[e] <= -epsilon).count();
        let positive = edges.iter().filter(|&&e| costs[e] >= epsilon).count();
        if negative == 1 && positive == edges.len() - 1 {
            edges.sort_unstable();
            out.push(edges);
        }
    }
    out.sort();
    Ok(out)
}

/// Whether `x` satisfies every cycle inequality `x_e <= sum of the other
/// cycle edges` up to a tolerance of 1e-9.
pub fn check_cycle_point(instance: &MulticutInstance, x: &[f64]) -> Result<bool> {
    if x.len() != instance.edge_count() {
        return Err(Error::LengthMismatch {
            expected: instance.edge_count(),
            actual: x.len(),
        });
    }
    if let Some((edge, &value)) = x
        .iter()
        .enumerate()
        .find(|(_, v)| !(0.0..=1.0).contains(*v))
    {
        return Err(Error::OutOfUnitInterval { edge, value });
    }
    for cycle in simple_cycles(instance)? {
        let edges = cycle_edges(instance, &cycle);
        let total: f64 = edges.iter().map(|&e| x[e]).sum();
        if edges.iter().any(|&e| 2.0 * x[e] > total + POINT_TOLERANCE) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Integral points as `0.0`/`1.0` vectors, for feeding labelings to
/// [`check_cycle_point`].
pub fn labeling_point(labeling: &EdgeLabeling) -> Vec<f64> {
    labeling
        .labels()
        .iter()
        .map(|&b| if b { 1.0 } else { 0.0 })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn triangle() -> MulticutInstance {
        MulticutInstance::from_edges(3, [(0, 1, -2.0), (0, 2, 1.0), (1, 2, 1.0)]).unwrap()
    }

    fn k4() -> MulticutInstance {
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

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..=6)
            .map(|n| PartitionEnumerator::new(n).count())
            .collect();
        assert_eq!(counts, [1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn partitions_are_distinct() {
        let all: std::collections::HashSet<_> = PartitionEnumerator::new(5).collect();
        assert_eq!(all.len(), 52);
    }

    #[test]
    fn triangle_optimum() {
        let (cost, p) = exact_optimum(&triangle()).unwrap();
        assert_eq!(cost, -1.0);
        assert_eq!(triangle().partition_cost(&p), -1.0);
    }

    #[test]
    fn k4_optimum() {
        let (cost, _) = exact_optimum(&k4()).unwrap();
        assert_eq!(cost, -1.0);
        let witness = Partition::from_labels(vec![0, 1, 0, 0]);
        assert_eq!(k4().partition_cost(&witness), -1.0);
    }

    #[test]
    fn positive_costs_single_cluster() {
        let inst = MulticutInstance::from_edges(3, [(0, 1, 1.0), (1, 2, 2.0)]).unwrap();
        let (cost, p) = exact_optimum(&inst).unwrap();
        assert_eq!(cost, 0.0);
        assert_eq!(p.component_count(), 1);
    }

    #[test]
    fn size_cap() {
        let inst = MulticutInstance::new(13);
        assert!(matches!(exact_optimum(&inst), Err(Error::TooLarge { .. })));
        assert!(matches!(
            simple_cycles(&MulticutInstance::new(9)),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn k4_has_seven_cycles() {
        assert_eq!(simple_cycles(&k4()).unwrap().len(), 7);
    }

    #[test]
    fn qualifying_cycles_examples() {
        let t = triangle();
        assert_eq!(
            all_qualifying_cycles(&t, &t.costs(), 1.0).unwrap(),
            vec![vec![0, 1, 2]]
        );
        let pos = MulticutInstance::from_edges(3, [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)]).unwrap();
        assert!(all_qualifying_cycles(&pos, &pos.costs(), 1e-4)
            .unwrap()
            .is_empty());
        let c4 =
            MulticutInstance::from_edges(4, [(0, 1, -1.0), (1, 2, 0.5), (2, 3, 0.5), (0, 3, 0.5)])
                .unwrap();
        assert!(all_qualifying_cycles(&c4, &c4.costs(), 0.6)
            .unwrap()
            .is_empty());
        assert_eq!(
            all_qualifying_cycles(&c4, &c4.costs(), 0.5).unwrap().len(),
            1
        );
    }

    #[test]
    fn cycle_points() {
        let t = triangle();
        assert!(!check_cycle_point(&t, &[1.0, 0.0, 0.0]).unwrap());
        assert!(check_cycle_point(&t, &[1.0, 1.0, 0.0]).unwrap());
        assert!(check_cycle_point(&t, &[0.5, 0.5, 0.5]).unwrap());
        assert!(check_cycle_point(&t, &[1.5, 0.0, 0.0]).is_err());

        let k = k4();
        let x = [0.5, 0.5, 0.5, 1.0, 1.0, 1.0];
        assert!(check_cycle_point(&k, &x).unwrap());
        let cost: f64 = k.costs().iter().zip(&x).map(|(c, v)| c * v).sum();
        assert_eq!(cost, -1.5);
    }

    fn small_instance() -> impl Strategy<Value = MulticutInstance> {
        (2usize..=7).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            let m = pairs.len();
            proptest::collection::vec(proptest::option::of(-1.0f64..1.0), m).prop_map(move |cs| {
                let edges = pairs
                    .iter()
                    .zip(cs)
                    .filter_map(|(&(u, v), c)| c.map(|c| (u, v, c)));
                MulticutInstance::from_edges(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn optimum_is_a_lower_bound(inst in small_instance(), raw in proptest::collection::vec(0usize..7, 7)) {
            let (best, _) = exact_optimum(&inst).unwrap();
            let p = Partition::from_labels(raw[..inst.node_count()].to_vec());
            prop_assert!(best <= inst.partition_cost(&p) + 1e-12);
        }

        #[test]
        fn multicuts_satisfy_cycle_inequalities(inst in small_instance(), raw in proptest::collection::vec(0usize..7, 7)) {
            let p = Partition::from_labels(raw[..inst.node_count()].to_vec());
            let x = inst.partition_to_labeling(&p).unwrap();
            prop_assert!(check_cycle_point(&inst, &labeling_point(&x)).unwrap());
        }

        #[test]
        fn optimum_invariant_under_relabeling(inst in small_instance(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let n = inst.node_count();
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let relabeled = MulticutInstance::from_edges(
                n,
                inst.edges().iter().map(|e| (perm[e.u], perm[e.v], e.cost)),
            ).unwrap();
            let (a, _) = exact_optimum(&inst).unwrap();
            let (b, _) = exact_optimum(&relabeled).unwrap();
            prop_assert!((a - b).abs() <= 1e-9);
        }
    }
}
