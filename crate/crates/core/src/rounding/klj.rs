//! Kernighan–Lin local search with joins.
//!
//! One outer pass visits every pair of adjacent components and tries two
//! transformations, keeping the better one if it strictly lowers the cost:
//! a Kernighan–Lin exchange sequence (each node of the pair moves at most
//! once, the best prefix of the sequence is kept) and joining the pair.
//! Afterwards every component tries to split off nodes into a fresh
//! component with the same exchange procedure. Passes repeat until none
//! improves, at most [`MAX_OUTER_PASSES`] times.

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap};

use crate::instance::{MulticutInstance, Partition};

pub const MAX_OUTER_PASSES: usize = 25;

/// Smallest cost decrease accepted as an improvement.
const MIN_GAIN: f64 = 1e-9;

#[derive(Clone, Copy)]
struct Move {
    gain: f64,
    node: usize,
}

impl PartialEq for Move {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Move {}

impl PartialOrd for Move {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Move {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gain
            .total_cmp(&other.gain)
            .then_with(|| other.node.cmp(&self.node))
    }
}

struct Search {
    adj: Vec<Vec<(usize, f64)>>,
    label: Vec<usize>,
    members: Vec<Vec<usize>>,
    // scratch, indexed by node: 0 outside the pair, 1 first set, 2 second set
    side: Vec<u8>,
    gain: Vec<f64>,
    moved: Vec<bool>,
}

impl Search {
    fn new(instance: &MulticutInstance, initial: &Partition) -> Self {
        let n = instance.node_count();
        let mut adj = vec![Vec::new(); n];
        for e in instance.edges() {
            adj[e.u].push((e.v, e.cost));
            adj[e.v].push((e.u, e.cost));
        }
        Search {
            adj,
            label: initial.labels().to_vec(),
            members: initial.members(),
            side: vec![0; n],
            gain: vec![0.0; n],
            moved: vec![false; n],
        }
    }

    fn adjacent_pairs(&self) -> BTreeSet<(usize, usize)> {
        let mut pairs = BTreeSet::new();
        for (u, row) in self.adj.iter().enumerate() {
            for &(v, _) in row {
                let (a, b) = (self.label[u], self.label[v]);
                if a < b {
                    pairs.insert((a, b));
                }
            }
        }
        pairs
    }

    /// Tries an exchange sequence between components `a` and `b` (a fresh,
    /// empty component when `None`) and, for two existing components, a join.
    /// Applies the better transformation if it strictly lowers the cost.
    fn improve_pair(&mut self, a: usize, b: Option<usize>) -> bool {
        let empty = Vec::new();
        let b_members = b.map_or(&empty, |b| &self.members[b]);
        let nodes: Vec<usize> = self.members[a].iter().chain(b_members).copied().collect();
        for &v in &self.members[a] {
            self.side[v] = 1;
        }
        for &v in b_members {
            self.side[v] = 2;
        }

        let mut join_gain = 0.0;
        let mut heap = BinaryHeap::with_capacity(nodes.len());
        for &v in &nodes {
            let mut g = 0.0;
            for &(w, c) in &self.adj[v] {
                match self.side[w] {
                    0 => {}
                    s if s == self.side[v] => g -= c,
                    _ => {
                        g += c;
                        if self.side[v] == 1 {
                            join_gain += c;
                        }
                    }
                }
            }
            self.gain[v] = g;
            heap.push(Move { gain: g, node: v });
        }

        let mut sequence = Vec::new();
        let (mut total, mut best, mut best_len) = (0.0, 0.0, 0);
        while let Some(Move { gain, node }) = heap.pop() {
            if self.moved[node] || self.gain[node].to_bits() != gain.to_bits() {
                continue;
            }
            self.moved[node] = true;
            sequence.push(node);
            total += gain;
            if total > best {
                best = total;
                best_len = sequence.len();
            }
            let from = self.side[node];
            self.side[node] = 3 - from;
            for k in 0..self.adj[node].len() {
                let (w, c) = self.adj[node][k];
                if self.side[w] == 0 || self.moved[w] {
                    continue;
                }
                self.gain[w] += if self.side[w] == from {
                    2.0 * c
                } else {
                    -2.0 * c
                };
                heap.push(Move {
                    gain: self.gain[w],
                    node: w,
                });
            }
        }

        for &v in &nodes {
            self.side[v] = 0;
            self.moved[v] = false;
        }

        let join_gain = if b.is_some() {
            join_gain
        } else {
            f64::NEG_INFINITY
        };
        if best <= MIN_GAIN && join_gain <= MIN_GAIN {
            return false;
        }
        let b = match b {
            Some(b) => b,
            None => {
                self.members.push(Vec::new());
                self.members.len() - 1
            }
        };
        if join_gain > best {
            let moved = std::mem::take(&mut self.members[b]);
            for &v in &moved {
                self.label[v] = a;
            }
            self.members[a].extend(moved);
        } else {
            for &v in &sequence[..best_len] {
                self.label[v] = if self.label[v] == a { b } else { a };
            }
            let (mut in_a, mut in_b) = (Vec::new(), Vec::new());
            for &v in &nodes {
                if self.label[v] == a {
                    in_a.push(v);
                } else {
                    in_b.push(v);
                }
            }
            self.members[a] = in_a;
            self.members[b] = in_b;
        }
        true
    }
}

/// Improves `initial` by Kernighan–Lin moves and joins; never returns a
/// partition of higher cost. Components of the result are connected.
pub fn klj(instance: &MulticutInstance, initial: &Partition) -> Partition {
    let mut search = Search::new(instance, initial);
    for _ in 0..MAX_OUTER_PASSES {
        let mut improved = false;
        for (a, b) in search.adjacent_pairs() {
            if search.members[a].is_empty() || search.members[b].is_empty() {
                continue;
            }
            improved |= search.improve_pair(a, Some(b));
        }
        for a in 0..search.members.len() {
            if search.members[a].len() > 1 {
                improved |= search.improve_pair(a, None);
            }
        }
        if !improved {
            break;
        }
    }
    let partition = Partition::from_labels(search.label);
    let labeling = instance
        .partition_to_labeling(&partition)
        .expect("partition covers all nodes");
    instance
        .components_of_uncut(&labeling)
        .expect("labeling matches the instance")
}
