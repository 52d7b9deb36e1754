//! Dual cutting planes.
//!
//! Instead of looking for inequalities violated by a fractional primal point,
//! these routines look at the current reparameterized costs and return cycles
//! and odd wheels whose subproblems are guaranteed to raise the dual lower
//! bound by at least `epsilon`.

use std::collections::{HashSet, VecDeque};

use crate::disjoint_set::DisjointSet;
use crate::factors::{triangle_mask, FactorGraph, LollipopId, TriangleId};

/// A cycle with a single strongly repulsive edge and strongly attractive
/// remaining edges.
#[derive(Clone, Debug, PartialEq)]
pub struct ViolatedCycle {
    /// `v_1, …, v_k`; consecutive nodes are adjacent, and the repair edge
    /// closes the cycle from `v_k` back to `v_1`.
    pub nodes: Vec<usize>,
    /// Edge with cost `<= -epsilon`.
    pub repair_edge: usize,
    /// `min(-θ_repair, min over the path of θ)`.
    pub guaranteed_increase: f64,
}

impl ViolatedCycle {
    /// Edge indices around the cycle, repair edge last.
    pub fn edges(&self, state: &FactorGraph) -> Vec<usize> {
        let g = state.graph();
        let mut out: Vec<usize> = self
            .nodes
            .windows(2)
            .map(|w| g.edge_index(w[0], w[1]).expect("cycle path edge"))
            .collect();
        out.push(self.repair_edge);
        out
    }
}

/// Union nodes over edges with cost `>= epsilon`; every edge with cost
/// `<= -epsilon` inside one set closes a cycle with the shortest (fewest
/// edges) attractive path between its endpoints. Sorted by guaranteed
/// increase, largest first.
pub fn separate_cycles(state: &FactorGraph, epsilon: f64) -> Vec<ViolatedCycle> {
    let g = state.graph();
    let n = g.node_count();
    let costs = state.edge_costs();
    let mut ds = DisjointSet::new(n);
    let mut attractive: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (e, edge) in g.edges().iter().enumerate() {
        if costs[e] >= epsilon {
            ds.union(edge.u, edge.v);
            attractive[edge.u].push((edge.v, e));
            attractive[edge.v].push((edge.u, e));
        }
    }
    let mut out = Vec::new();
    let mut pred = vec![usize::MAX; n];
    for (e, edge) in g.edges().iter().enumerate() {
        if costs[e] > -epsilon || !ds.same(edge.u, edge.v) {
            continue;
        }
        let Some(path) = bfs_path(&attractive, edge.u, edge.v, e, &mut pred) else {
            continue;
        };
        let path_min = path
            .windows(2)
            .map(|w| costs[g.edge_index(w[0], w[1]).unwrap()])
            .fold(f64::INFINITY, f64::min);
        out.push(ViolatedCycle {
            nodes: path,
            repair_edge: e,
            guaranteed_increase: path_min.min(-costs[e]),
        });
    }
    out.sort_by(|a, b| b.guaranteed_increase.total_cmp(&a.guaranteed_increase));
    out
}

/// Shortest path from `from` to `to` by edge count, never using `skip`.
fn bfs_path(
    adj: &[Vec<(usize, usize)>],
    from: usize,
    to: usize,
    skip: usize,
    pred: &mut [usize],
) -> Option<Vec<usize>> {
    let mut touched = vec![from];
    pred[from] = from;
    let mut queue = VecDeque::from([from]);
    let mut found = false;
    while let Some(x) = queue.pop_front() {
        if x == to {
            found = true;
            break;
        }
        for &(y, e) in &adj[x] {
            if e != skip && pred[y] == usize::MAX {
                pred[y] = x;
                touched.push(y);
                queue.push_back(y);
            }
        }
    }
    let path = found.then(|| {
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = pred[cur];
            path.push(cur);
        }
        path.reverse();
        path
    });
    for x in touched {
        pred[x] = usize::MAX;
    }
    path
}

/// Fan triangulation from `v_1`: triangles `v_1 v_j v_{j+1}` for
/// `j = 2..k-1`, adding zero-cost chords as needed.
pub fn triangulate_cycle(state: &mut FactorGraph, cycle: &ViolatedCycle) -> Vec<TriangleId> {
    triangulate_nodes(state, &cycle.nodes)
}

pub fn triangulate_nodes(state: &mut FactorGraph, nodes: &[usize]) -> Vec<TriangleId> {
    assert!(nodes.len() >= 3, "a cycle needs at least three nodes");
    let v1 = nodes[0];
    nodes[1..]
        .windows(2)
        .map(|w| state.attach_triangle(v1, w[0], w[1]))
        .collect()
}

/// Minimum triangle cost with exactly one spoke of `center` cut, and the
/// minimum over the remaining states.
fn spoke_split_minima(state: &FactorGraph, triangle: TriangleId, center: usize) -> (f64, f64) {
    let t = state.triangle(triangle);
    let [a, b] = t
        .spoke_positions(center)
        .expect("center must be a node of the triangle");
    let (mut one, mut other) = (f64::INFINITY, f64::INFINITY);
    for (s, &c) in t.costs().iter().enumerate() {
        let m = triangle_mask(s);
        if ((m >> a) & 1) + ((m >> b) & 1) == 1 {
            one = one.min(c);
        } else {
            other = other.min(c);
        }
    }
    (one, other)
}

/// Positive when the triangle prefers cutting exactly one spoke of `center`.
pub fn wheel_margin(state: &FactorGraph, triangle: TriangleId, center: usize) -> f64 {
    let (one, other) = spoke_split_minima(state, triangle, center);
    other - one
}

/// Whether the one-spoke-cut minimum undercuts all other states by `epsilon`.
pub fn triangle_wheel_test(
    state: &FactorGraph,
    triangle: TriangleId,
    center: usize,
    epsilon: f64,
) -> bool {
    let (one, other) = spoke_split_minima(state, triangle, center);
    one + epsilon <= other
}

/// Two copies `v`, `v'` of every rim node; each passing triangle `u v w`
/// contributes the edges `v w'` and `v' w`.
#[derive(Clone, Debug)]
pub struct DoubledBipartiteGraph {
    pub center: usize,
    /// Original node for each rim slot; slot `i` owns local nodes `2i`
    /// (plain copy) and `2i + 1` (primed copy).
    pub rim_nodes: Vec<usize>,
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl DoubledBipartiteGraph {
    pub fn build(state: &FactorGraph, center: usize, epsilon: f64) -> Self {
        let triangles: Vec<TriangleId> = state
            .triangle_ids()
            .filter(|&t| state.triangle(t).nodes().contains(&center))
            .collect();
        Self::from_triangles(state, center, epsilon, &triangles)
    }

    fn from_triangles(
        state: &FactorGraph,
        center: usize,
        epsilon: f64,
        triangles: &[TriangleId],
    ) -> Self {
        let mut rim_nodes: Vec<usize> = Vec::new();
        let mut slot = std::collections::HashMap::new();
        let mut pairs = Vec::new();
        for &t in triangles {
            if !triangle_wheel_test(state, t, center, epsilon) {
                continue;
            }
            let nodes = state.triangle(t).nodes();
            let mut others = nodes.iter().copied().filter(|&x| x != center);
            let (v, w) = (others.next().unwrap(), others.next().unwrap());
            let mut slot_of = |x: usize| {
                *slot.entry(x).or_insert_with(|| {
                    rim_nodes.push(x);
                    rim_nodes.len() - 1
                })
            };
            let (sv, sw) = (slot_of(v), slot_of(w));
            pairs.push((sv, sw));
        }
        let mut adjacency = vec![Vec::new(); 2 * rim_nodes.len()];
        for &(sv, sw) in &pairs {
            adjacency[2 * sv].push(2 * sw + 1);
            adjacency[2 * sw + 1].push(2 * sv);
            adjacency[2 * sv + 1].push(2 * sw);
            adjacency[2 * sw].push(2 * sv + 1);
        }
        DoubledBipartiteGraph {
            center,
            rim_nodes,
            adjacency,
            edge_count: 2 * pairs.len(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, local: usize) -> &[usize] {
        &self.adjacency[local]
    }

    /// Shortest path from the plain to the primed copy of rim slot `i`, as
    /// local node ids.
    pub fn copy_path(&self, i: usize) -> Option<Vec<usize>> {
        let (from, to) = (2 * i, 2 * i + 1);
        let mut pred = vec![usize::MAX; self.adjacency.len()];
        pred[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = pred[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &y in &self.adjacency[x] {
                if pred[y] == usize::MAX {
                    pred[y] = x;
                    queue.push_back(y);
                }
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ViolatedOddWheel {
    pub center: usize,
    /// Rim `v_1, …, v_k`, `k` odd.
    pub rim: Vec<usize>,
    /// Smallest [`wheel_margin`] over the rim triangles.
    pub guaranteed_increase: f64,
}

/// For every center node, searches the doubled graph of its passing
/// triangles for odd rims that map back to simple cycles. Keeps at most
/// `max_per_center` wheels per center, best margin first.
pub fn separate_odd_wheels(
    state: &FactorGraph,
    epsilon: f64,
    max_per_center: usize,
) -> Vec<ViolatedOddWheel> {
    let n = state.graph().node_count();
    let mut by_node: Vec<Vec<TriangleId>> = vec![Vec::new(); n];
    for t in state.triangle_ids() {
        for v in state.triangle(t).nodes() {
            by_node[v].push(t);
        }
    }
    let mut out = Vec::new();
    for (center, triangles) in by_node.iter().enumerate() {
        if triangles.is_empty() {
            continue;
        }
        let g = DoubledBipartiteGraph::from_triangles(state, center, epsilon, triangles);
        let mut ds = DisjointSet::new(g.node_count());
        for x in 0..g.node_count() {
            for &y in g.neighbors(x) {
                ds.union(x, y);
            }
        }
        let mut seen = HashSet::new();
        let mut found = Vec::new();
        for i in 0..g.rim_nodes.len() {
            if !ds.same(2 * i, 2 * i + 1) {
                continue;
            }
            let Some(path) = g.copy_path(i) else { continue };
            let rim: Vec<usize> = path[..path.len() - 1]
                .iter()
                .map(|&x| g.rim_nodes[x / 2])
                .collect();
            let mut distinct = rim.clone();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.len() != rim.len() || rim.len() < 3 {
                continue;
            }
            let rim = canonical_rim(rim);
            if !seen.insert(rim.clone()) {
                continue;
            }
            let margin = (0..rim.len())
                .map(|j| {
                    let t = state
                        .find_triangle(center, rim[j], rim[(j + 1) % rim.len()])
                        .expect("rim triangle exists");
                    wheel_margin(state, t, center)
                })
                .fold(f64::INFINITY, f64::min);
            found.push(ViolatedOddWheel {
                center,
                rim,
                guaranteed_increase: margin,
            });
        }
        found.sort_by(|a, b| b.guaranteed_increase.total_cmp(&a.guaranteed_increase));
        found.truncate(max_per_center);
        out.extend(found);
    }
    out
}

/// Rotates the smallest node to the front and orients toward the smaller
/// neighbor.
fn canonical_rim(mut rim: Vec<usize>) -> Vec<usize> {
    let start = (0..rim.len()).min_by_key(|&i| rim[i]).unwrap();
    rim.rotate_left(start);
    if rim.len() > 2 && rim[rim.len() - 1] < rim[1] {
        rim[1..].reverse();
    }
    rim
}

/// Triangles `u v_1 v_j` for `j = 2..k` and lollipops `(u v_j v_{j+1}, v_1)`
/// for `j = 2..k-1`.
pub fn attach_odd_wheel(
    state: &mut FactorGraph,
    wheel: &ViolatedOddWheel,
) -> (Vec<TriangleId>, Vec<LollipopId>) {
    let u = wheel.center;
    let rim = &wheel.rim;
    let k = rim.len();
    let triangles = (1..k)
        .map(|j| state.attach_triangle(u, rim[0], rim[j]))
        .collect();
    let lollipops = (1..k - 1)
        .map(|j| {
            state
                .attach_lollipop(u, rim[j], rim[j + 1], rim[0])
                .expect("wheel nodes are distinct")
        })
        .collect();
    (triangles, lollipops)
}
