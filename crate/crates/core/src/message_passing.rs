//! Block-coordinate dual ascent over the factor graph.
//!
//! Every update moves cost between two coupled factors: what one factor gains
//! on some shared-edge assignment the other loses on the same assignment, so
//! the total cost of every multicut is preserved while the dual lower bound
//! never decreases.

use crate::error::{Error, Result};
use crate::factors::{lollipop_mask, triangle_mask, FactorGraph, TriangleId, LOLLIPOP_STATE_COUNT};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderItem {
    Edge(usize),
    Triangle(TriangleId),
}

/// Visiting order for one forward sweep; the backward sweep reverses it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorOrder {
    items: Vec<OrderItem>,
}

impl FactorOrder {
    pub fn items(&self) -> &[OrderItem] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Checks that edges appear lexicographically and every triangle sits
    /// strictly between its smallest and largest edge.
    pub fn validate(&self, state: &FactorGraph) -> Result<()> {
        let m = state.edge_count();
        let t = state.triangle_count();
        if self.items.len() != m + t {
            return Err(Error::Internal(format!(
                "factor order has {} items, expected {}",
                self.items.len(),
                m + t
            )));
        }
        let mut edge_pos = vec![usize::MAX; m];
        let mut tri_pos = vec![usize::MAX; t];
        for (pos, item) in self.items.iter().enumerate() {
            match *item {
                OrderItem::Edge(e) => edge_pos[e] = pos,
                OrderItem::Triangle(id) => tri_pos[id.0] = pos,
            }
        }
        if edge_pos.contains(&usize::MAX) || tri_pos.contains(&usize::MAX) {
            return Err(Error::Internal("factor order misses a factor".into()));
        }
        let graph = state.graph();
        let key = |e: usize| (graph.edge(e).u, graph.edge(e).v);
        let mut by_position: Vec<usize> = (0..m).collect();
        by_position.sort_by_key(|&e| edge_pos[e]);
        if by_position.windows(2).any(|w| key(w[0]) > key(w[1])) {
            return Err(Error::Internal("edges not in lexicographic order".into()));
        }
        for id in state.triangle_ids() {
            let edges = state.triangle(id).edges();
            let first = edges.iter().copied().min_by_key(|&e| key(e)).unwrap();
            let last = edges.iter().copied().max_by_key(|&e| key(e)).unwrap();
            let p = tri_pos[id.0];
            if !(edge_pos[first] < p && p < edge_pos[last]) {
                return Err(Error::Internal(format!(
                    "triangle {:?} violates its ordering constraint",
                    state.triangle(id).nodes()
                )));
            }
        }
        Ok(())
    }
}

// (smallest edge, kind: edge 0 / triangle 1, node triple)
type SortKey = ((usize, usize), u8, [usize; 3]);

/// Lexicographic edge order with each triangle placed right after its
/// smallest edge; ties among triangles are broken by node triple.
pub fn compute_factor_order(state: &FactorGraph) -> FactorOrder {
    let graph = state.graph();
    let key = |e: usize| (graph.edge(e).u, graph.edge(e).v);
    let mut keyed: Vec<(SortKey, OrderItem)> = (0..state.edge_count())
        .map(|e| ((key(e), 0, [0; 3]), OrderItem::Edge(e)))
        .collect();
    for id in state.triangle_ids() {
        let t = state.triangle(id);
        let first = t.edges().iter().map(|&e| key(e)).min().unwrap();
        keyed.push(((first, 1, t.nodes()), OrderItem::Triangle(id)));
    }
    keyed.sort_by_key(|k| k.0);
    FactorOrder {
        items: keyed.into_iter().map(|k| k.1).collect(),
    }
}

/// Pulls the `x_uv` min-marginal difference of every coupled triangle onto
/// the edge, leaving each triangle indifferent to `x_uv`.
pub fn edge_receive(state: &mut FactorGraph, e: usize) {
    for k in 0..state.edge_triangles[e].len() {
        let (t, pos) = state.edge_triangles[e][k];
        let bit = 1u8 << pos;
        let costs = &mut state.triangles[t.0].costs;
        let (mut on, mut off) = (f64::INFINITY, f64::INFINITY);
        for (s, &c) in costs.iter().enumerate() {
            if triangle_mask(s) & bit != 0 {
                on = on.min(c);
            } else {
                off = off.min(c);
            }
        }
        let delta = on - off;
        for (s, c) in costs.iter_mut().enumerate() {
            if triangle_mask(s) & bit != 0 {
                *c -= delta;
            }
        }
        state.edge_costs[e] += delta;
    }
}

/// Splits the edge cost evenly over its coupled triangles; no-op without any.
pub fn edge_send(state: &mut FactorGraph, e: usize) {
    let d = state.edge_triangles[e].len();
    if d == 0 {
        return;
    }
    let delta = state.edge_costs[e] / d as f64;
    state.edge_costs[e] = 0.0;
    for k in 0..d {
        let (t, pos) = state.edge_triangles[e][k];
        let bit = 1u8 << pos;
        for (s, c) in state.triangles[t.0].costs.iter_mut().enumerate() {
            if triangle_mask(s) & bit != 0 {
                *c += delta;
            }
        }
    }
}

/// Min-marginals of a factor table over the shared-edge assignments of a link.
fn shared_min<const N: usize>(
    costs: &[f64; N],
    mask: impl Fn(usize) -> u8,
    project: impl Fn(u8) -> usize,
) -> [f64; 8] {
    let mut delta = [f64::INFINITY; 8];
    for (s, &c) in costs.iter().enumerate() {
        let i = project(mask(s));
        delta[i] = delta[i].min(c);
    }
    delta
}

/// Moves each coupled lollipop's min-marginals over the shared edges into the
/// triangle, leaving the lollipop with no preference on those edges.
pub fn triangle_receive(state: &mut FactorGraph, t: TriangleId) {
    for k in 0..state.triangles[t.0].links.len() {
        let link = &state.links[state.triangles[t.0].links[k]];
        let l = link.lollipop;
        let delta = shared_min(&state.lollipops[l.0].costs, lollipop_mask, |m| {
            link.project_lollipop(m)
        });
        for (s, c) in state.lollipops[l.0].costs.iter_mut().enumerate() {
            *c -= delta[link.project_lollipop(lollipop_mask(s))];
        }
        for (s, c) in state.triangles[t.0].costs.iter_mut().enumerate() {
            let d = delta[link.project_triangle(triangle_mask(s))];
            debug_assert!(d.is_finite());
            *c += d;
        }
    }
}

/// Sends `1/α` of the triangle's min-marginals to each of its `α` coupled
/// lollipops. All messages are computed from the table before any is applied.
pub fn triangle_send(state: &mut FactorGraph, t: TriangleId) {
    let alpha = state.triangles[t.0].links.len();
    if alpha == 0 {
        return;
    }
    let weight = 1.0 / alpha as f64;
    let messages: Vec<(usize, [f64; 8])> = state.triangles[t.0]
        .links
        .iter()
        .map(|&k| {
            let link = &state.links[k];
            let delta = shared_min(&state.triangles[t.0].costs, triangle_mask, |m| {
                link.project_triangle(m)
            });
            (k, delta)
        })
        .collect();
    for (k, delta) in &messages {
        let link = &state.links[*k];
        let costs = &mut state.lollipops[link.lollipop.0].costs;
        for s in 0..LOLLIPOP_STATE_COUNT {
            let d = delta[link.project_lollipop(lollipop_mask(s))];
            debug_assert!(d.is_finite());
            costs[s] += weight * d;
        }
    }
    for (k, delta) in &messages {
        let link = &state.links[*k];
        for (s, c) in state.triangles[t.0].costs.iter_mut().enumerate() {
            *c -= weight * delta[link.project_triangle(triangle_mask(s))];
        }
    }
}

pub fn visit(state: &mut FactorGraph, item: OrderItem) {
    match item {
        OrderItem::Edge(e) => {
            edge_receive(state, e);
            edge_send(state, e);
        }
        OrderItem::Triangle(t) => {
            triangle_receive(state, t);
            triangle_send(state, t);
        }
    }
}

/// One forward sweep followed by one backward sweep. Returns the new bound.
pub fn run_iteration(state: &mut FactorGraph, order: &FactorOrder) -> f64 {
    for &item in &order.items {
        visit(state, item);
    }
    for &item in order.items.iter().rev() {
        visit(state, item);
    }
    state.dual_lower_bound()
}

/// `edge_receive` on every edge, in index order.
pub fn edge_receive_sweep(state: &mut FactorGraph) {
    for e in 0..state.edge_count() {
        edge_receive(state, e);
    }
}

/// `edge_send` on every edge, in index order.
pub fn edge_send_sweep(state: &mut FactorGraph) {
    for e in 0..state.edge_count() {
        edge_send(state, e);
    }
}
