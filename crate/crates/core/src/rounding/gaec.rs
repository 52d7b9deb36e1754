use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};

use crate::disjoint_set::DisjointSet;
use crate::instance::{MulticutInstance, Partition};

#[derive(Clone, Copy, Debug)]
struct Candidate {
    weight: f64,
    a: usize,
    b: usize,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    // max-heap on weight; equal weights pop the smaller (a, b) pair first
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .total_cmp(&other.weight)
            .then_with(|| (other.a, other.b).cmp(&(self.a, self.b)))
    }
}

/// Greedy additive edge contraction: repeatedly merges the pair of adjacent
/// clusters with the largest positive summed edge cost.
pub fn gaec(instance: &MulticutInstance) -> Partition {
    gaec_from(instance, &Partition::singletons(instance.node_count()))
}

/// [`gaec`] starting from the clusters of `initial` instead of singletons.
/// Cluster representatives are the smallest member nodes.
pub fn gaec_from(instance: &MulticutInstance, initial: &Partition) -> Partition {
    let n = instance.node_count();
    let mut rep = vec![usize::MAX; initial.component_count()];
    for v in 0..n {
        let c = initial.component(v);
        rep[c] = rep[c].min(v);
    }
    let mut ds = DisjointSet::new(n);
    for v in 0..n {
        ds.union(rep[initial.component(v)], v);
    }
    let mut alive: Vec<bool> = (0..n).map(|v| rep[initial.component(v)] == v).collect();
    let mut adj: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); n];
    for e in instance.edges() {
        let (a, b) = (rep[initial.component(e.u)], rep[initial.component(e.v)]);
        if a != b {
            *adj[a].entry(b).or_insert(0.0) += e.cost;
            *adj[b].entry(a).or_insert(0.0) += e.cost;
        }
    }
    let mut heap = BinaryHeap::new();
    for (a, row) in adj.iter().enumerate() {
        for (&b, &weight) in row.range(a + 1..) {
            if weight > 0.0 {
                heap.push(Candidate { weight, a, b });
            }
        }
    }
    while let Some(Candidate { weight, a, b }) = heap.pop() {
        if weight <= 0.0 {
            break;
        }
        if !alive[a] || !alive[b] || adj[a].get(&b).map(|w| w.to_bits()) != Some(weight.to_bits()) {
            continue;
        }
        let (keep, gone) = if adj[b].len() > adj[a].len() {
            (b, a)
        } else {
            (a, b)
        };
        let moved = std::mem::take(&mut adj[gone]);
        alive[gone] = false;
        adj[keep].remove(&gone);
        ds.union(keep, gone);
        for (c, w) in moved {
            if c == keep {
                continue;
            }
            adj[c].remove(&gone);
            let merged = {
                let slot = adj[keep].entry(c).or_insert(0.0);
                *slot += w;
                *slot
            };
            adj[c].insert(keep, merged);
            if merged > 0.0 {
                heap.push(Candidate {
                    weight: merged,
                    a: keep.min(c),
                    b: keep.max(c),
                });
            }
        }
    }
    Partition::from_labels((0..n).map(|i| ds.find(i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_costs_keep_singletons() {
        let inst =
            MulticutInstance::from_edges(3, [(0, 1, -1.0), (0, 2, -0.5), (1, 2, -2.0)]).unwrap();
        assert_eq!(gaec(&inst).component_count(), 3);
    }

    #[test]
    fn positive_costs_collapse() {
        let inst =
            MulticutInstance::from_edges(4, [(0, 1, 1.0), (1, 2, 0.5), (2, 3, 2.0)]).unwrap();
        let p = gaec(&inst);
        assert_eq!(p.component_count(), 1);
        assert_eq!(inst.partition_cost(&p), 0.0);
    }

    #[test]
    fn triangle_trace() {
        // contract 0-2 (weight 1, smaller pair than 1-2), leaving -2 + 1 = -1
        let inst =
            MulticutInstance::from_edges(3, [(0, 1, -2.0), (0, 2, 1.0), (1, 2, 1.0)]).unwrap();
        let p = gaec(&inst);
        assert_eq!(p.labels(), &[0, 1, 0]);
        assert_eq!(inst.partition_cost(&p), -1.0);
    }

    #[test]
    fn continues_from_a_partition() {
        // {0, 1} is given; the cluster reaches 2 with 0.4 - 0.3 > 0
        let inst = MulticutInstance::from_edges(
            4,
            [(0, 1, -5.0), (0, 2, 0.4), (1, 2, -0.3), (2, 3, -1.0)],
        )
        .unwrap();
        let p = gaec_from(&inst, &Partition::from_labels(vec![0, 0, 1, 2]));
        assert_eq!(p.labels(), &[0, 0, 0, 1]);
        assert_eq!(gaec_from(&inst, &Partition::singletons(4)), gaec(&inst));
    }

    #[test]
    fn merges_parallel_cluster_edges() {
        // after the 0-1 merge the cluster reaches 2 with weight 0.6 + 0.6
        let inst = MulticutInstance::from_edges(
            4,
            [
                (0, 1, 5.0),
                (0, 2, 0.6),
                (1, 2, 0.6),
                (2, 3, -1.0),
                (1, 3, -1.0),
            ],
        )
        .unwrap();
        let p = gaec(&inst);
        assert_eq!(p.component(0), p.component(2));
        assert_ne!(p.component(0), p.component(3));
    }
}
