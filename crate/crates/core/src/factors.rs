//! Edge, triangle and lollipop subproblems of the multicut decomposition.
//!
//! Every subproblem is a small binary factor over graph edges. Coupled factors
//! agree on the marginals of the edges they share; the coupling matrices are
//! never stored because they are plain marginalization maps over shared edges.
//!
//! State conventions:
//!
//! * edge factor: `x_e ∈ {0, 1}`, only `x_e = 1` carries a cost;
//! * triangle on sorted nodes `p < q < r`: coordinates `(x_pq, x_pr, x_qr)`,
//!   states in [`TRIANGLE_STATES`] order;
//! * lollipop: the triangle's three coordinates followed by the spoke edge;
//!   state index `2 * triangle_state + spoke_label`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::instance::{EdgeLabeling, MulticutInstance};

/// The five multicuts of a triangle, as `(x_pq, x_pr, x_qr)`.
pub const TRIANGLE_STATES: [[u8; 3]; 5] = [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0], [1, 1, 1]];

/// Bitmask form of [`TRIANGLE_STATES`], bit `i` set when coordinate `i` is cut.
const TRIANGLE_MASKS: [u8; 5] = [0b000, 0b110, 0b101, 0b011, 0b111];

pub const LOLLIPOP_STATE_COUNT: usize = 10;

pub fn triangle_states() -> [[u8; 3]; 5] {
    TRIANGLE_STATES
}

pub(crate) fn triangle_mask(state: usize) -> u8 {
    TRIANGLE_MASKS[state]
}

pub(crate) fn lollipop_mask(state: usize) -> u8 {
    TRIANGLE_MASKS[state / 2] | (((state % 2) as u8) << 3)
}

/// Triangle state index for a cut pattern, `None` if the pattern violates a
/// cycle inequality.
pub fn triangle_state_index(mask: u8) -> Option<usize> {
    TRIANGLE_MASKS.iter().position(|&m| m == mask)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangleId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LollipopId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorRef {
    Edge(usize),
    Triangle(TriangleId),
    Lollipop(LollipopId),
}

#[derive(Clone, Debug)]
pub struct TriangleFactor {
    pub(crate) nodes: [usize; 3],
    pub(crate) edges: [usize; 3],
    pub(crate) costs: [f64; 5],
    pub(crate) links: Vec<usize>,
}

impl TriangleFactor {
    pub fn nodes(&self) -> [usize; 3] {
        self.nodes
    }

    /// Edge indices for `(pq, pr, qr)`.
    pub fn edges(&self) -> [usize; 3] {
        self.edges
    }

    pub fn costs(&self) -> &[f64; 5] {
        &self.costs
    }

    pub fn position(&self, edge: usize) -> Option<usize> {
        self.edges.iter().position(|&e| e == edge)
    }

    pub fn min_cost(&self) -> f64 {
        self.costs.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Coordinate positions of the two edges incident to `node`.
    pub fn spoke_positions(&self, node: usize) -> Option<[usize; 2]> {
        match self.nodes.iter().position(|&n| n == node)? {
            0 => Some([0, 1]),
            1 => Some([0, 2]),
            _ => Some([1, 2]),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LollipopFactor {
    pub(crate) center: usize,
    pub(crate) rim: [usize; 2],
    pub(crate) spoke_target: usize,
    pub(crate) triangle_nodes: [usize; 3],
    pub(crate) edges: [usize; 4],
    pub(crate) costs: [f64; LOLLIPOP_STATE_COUNT],
    pub(crate) links: Vec<usize>,
}

impl LollipopFactor {
    pub fn center(&self) -> usize {
        self.center
    }

    pub fn rim(&self) -> [usize; 2] {
        self.rim
    }

    pub fn spoke_target(&self) -> usize {
        self.spoke_target
    }

    pub fn triangle_nodes(&self) -> [usize; 3] {
        self.triangle_nodes
    }

    /// Triangle edges in canonical order, then the spoke edge.
    pub fn edges(&self) -> [usize; 4] {
        self.edges
    }

    pub fn costs(&self) -> &[f64; LOLLIPOP_STATE_COUNT] {
        &self.costs
    }

    pub fn min_cost(&self) -> f64 {
        self.costs.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Shared-edge coupling between a triangle and a lollipop.
#[derive(Clone, Debug)]
pub struct CouplingLink {
    pub(crate) triangle: TriangleId,
    pub(crate) lollipop: LollipopId,
    /// `(triangle coordinate, lollipop coordinate)` for each shared edge.
    pub(crate) shared: Vec<(u8, u8)>,
}

impl CouplingLink {
    pub fn triangle(&self) -> TriangleId {
        self.triangle
    }

    pub fn lollipop(&self) -> LollipopId {
        self.lollipop
    }

    pub fn shared_edge_count(&self) -> usize {
        self.shared.len()
    }

    /// Index of the shared-edge assignment of a triangle state mask.
    pub(crate) fn project_triangle(&self, mask: u8) -> usize {
        self.shared
            .iter()
            .enumerate()
            .map(|(i, &(t, _))| (((mask >> t) & 1) as usize) << i)
            .sum()
    }

    pub(crate) fn project_lollipop(&self, mask: u8) -> usize {
        self.shared
            .iter()
            .enumerate()
            .map(|(i, &(_, l))| (((mask >> l) & 1) as usize) << i)
            .sum()
    }
}

/// Solver state: the decomposition together with its current costs.
///
/// The underlying graph starts as a copy of the input instance and grows by
/// zero-cost chords; `graph()` keeps the original costs, `edge_costs()` the
/// reparameterized ones.
#[derive(Clone, Debug)]
pub struct FactorGraph {
    original: MulticutInstance,
    pub(crate) graph: MulticutInstance,
    pub(crate) edge_costs: Vec<f64>,
    pub(crate) edge_triangles: Vec<Vec<(TriangleId, u8)>>,
    edge_lollipops: Vec<Vec<LollipopId>>,
    pub(crate) triangles: Vec<TriangleFactor>,
    triangle_index: HashMap<[usize; 3], TriangleId>,
    pub(crate) lollipops: Vec<LollipopFactor>,
    lollipop_index: HashMap<([usize; 3], usize, usize), LollipopId>,
    pub(crate) links: Vec<CouplingLink>,
}

impl FactorGraph {
    pub fn new(instance: MulticutInstance) -> Self {
        let m = instance.edge_count();
        FactorGraph {
            edge_costs: instance.costs(),
            edge_triangles: vec![Vec::new(); m],
            edge_lollipops: vec![Vec::new(); m],
            graph: instance.clone(),
            original: instance,
            triangles: Vec::new(),
            triangle_index: HashMap::new(),
            lollipops: Vec::new(),
            lollipop_index: HashMap::new(),
            links: Vec::new(),
        }
    }

    /// The instance as given, without chords.
    pub fn original(&self) -> &MulticutInstance {
        &self.original
    }

    /// The instance including chords, with original costs (chords cost 0).
    pub fn graph(&self) -> &MulticutInstance {
        &self.graph
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn edge_cost(&self, e: usize) -> f64 {
        self.edge_costs[e]
    }

    pub fn edge_costs(&self) -> &[f64] {
        &self.edge_costs
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn lollipop_count(&self) -> usize {
        self.lollipops.len()
    }

    pub fn triangle(&self, id: TriangleId) -> &TriangleFactor {
        &self.triangles[id.0]
    }

    pub fn lollipop(&self, id: LollipopId) -> &LollipopFactor {
        &self.lollipops[id.0]
    }

    pub fn link(&self, id: usize) -> &CouplingLink {
        &self.links[id]
    }

    pub fn triangle_ids(&self) -> impl Iterator<Item = TriangleId> {
        (0..self.triangles.len()).map(TriangleId)
    }

    pub fn lollipop_ids(&self) -> impl Iterator<Item = LollipopId> {
        (0..self.lollipops.len()).map(LollipopId)
    }

    pub fn find_triangle(&self, u: usize, v: usize, w: usize) -> Option<TriangleId> {
        self.triangle_index.get(&sorted3(u, v, w)).copied()
    }

    pub fn find_lollipop(&self, u: usize, a: usize, b: usize, s: usize) -> Option<LollipopId> {
        self.lollipop_index.get(&(sorted3(u, a, b), u, s)).copied()
    }

    /// Triangles coupled to edge `e`, in attachment order.
    pub fn edge_triangles(&self, e: usize) -> Vec<TriangleId> {
        self.edge_triangles[e].iter().map(|&(t, _)| t).collect()
    }

    /// Lollipops coupled to triangle `t`, one per link, in link order.
    pub fn triangle_lollipops(&self, t: TriangleId) -> Vec<LollipopId> {
        self.triangles[t.0]
            .links
            .iter()
            .map(|&l| self.links[l].lollipop)
            .collect()
    }

    pub fn lollipop_triangles(&self, l: LollipopId) -> Vec<TriangleId> {
        self.lollipops[l.0]
            .links
            .iter()
            .map(|&k| self.links[k].triangle)
            .collect()
    }

    /// Direct access to a triangle table. Writing through it bypasses the
    /// cost-preserving updates, so totals no longer match the instance.
    pub fn triangle_costs_mut(&mut self, id: TriangleId) -> &mut [f64; 5] {
        &mut self.triangles[id.0].costs
    }

    /// See [`FactorGraph::triangle_costs_mut`].
    pub fn lollipop_costs_mut(&mut self, id: LollipopId) -> &mut [f64; LOLLIPOP_STATE_COUNT] {
        &mut self.lollipops[id.0].costs
    }

    /// See [`FactorGraph::triangle_costs_mut`].
    pub fn set_edge_cost(&mut self, e: usize, cost: f64) {
        self.edge_costs[e] = cost;
    }

    fn ensure_edge(&mut self, u: usize, v: usize) -> usize {
        let e = self.graph.ensure_edge(u, v);
        if e == self.edge_costs.len() {
            self.edge_costs.push(0.0);
            self.edge_triangles.push(Vec::new());
            self.edge_lollipops.push(Vec::new());
        }
        e
    }

    fn check_node(&self, node: usize) -> Result<()> {
        if node >= self.graph.node_count() {
            return Err(Error::NodeOutOfRange {
                node,
                node_count: self.graph.node_count(),
            });
        }
        Ok(())
    }

    /// Adds a zero-cost triangle subproblem on `{u, v, w}`, appending missing
    /// edges with cost zero. Re-attaching returns the existing id.
    ///
    /// Panics if the nodes are not distinct or out of range.
    pub fn attach_triangle(&mut self, u: usize, v: usize, w: usize) -> TriangleId {
        let nodes = sorted3(u, v, w);
        assert!(
            nodes[0] != nodes[1] && nodes[1] != nodes[2],
            "triangle nodes must be distinct: {nodes:?}"
        );
        if let Some(&id) = self.triangle_index.get(&nodes) {
            return id;
        }
        let [p, q, r] = nodes;
        let edges = [
            self.ensure_edge(p, q),
            self.ensure_edge(p, r),
            self.ensure_edge(q, r),
        ];
        let id = TriangleId(self.triangles.len());
        self.triangles.push(TriangleFactor {
            nodes,
            edges,
            costs: [0.0; 5],
            links: Vec::new(),
        });
        self.triangle_index.insert(nodes, id);
        for (pos, &e) in edges.iter().enumerate() {
            self.edge_triangles[e].push((id, pos as u8));
        }
        let mut lollipops: Vec<LollipopId> = edges
            .iter()
            .flat_map(|&e| self.edge_lollipops[e].iter().copied())
            .collect();
        lollipops.sort_unstable();
        lollipops.dedup();
        for l in lollipops {
            self.connect(id, l);
        }
        id
    }

    /// Adds a zero-cost lollipop: triangle `{u, a, b}` plus spoke `us`, with
    /// missing edges appended at cost zero. The lollipop is coupled to every
    /// triangle subproblem sharing an edge with it, including ones attached
    /// later; its own triangle is not created.
    pub fn attach_lollipop(
        &mut self,
        u: usize,
        a: usize,
        b: usize,
        s: usize,
    ) -> Result<LollipopId> {
        for node in [u, a, b, s] {
            self.check_node(node)?;
        }
        let distinct = u != a && u != b && a != b && s != u && s != a && s != b;
        if !distinct {
            return Err(Error::DegenerateLollipop { u, a, b, s });
        }
        let triangle_nodes = sorted3(u, a, b);
        if let Some(&id) = self.lollipop_index.get(&(triangle_nodes, u, s)) {
            return Ok(id);
        }
        let [p, q, r] = triangle_nodes;
        let edges = [
            self.ensure_edge(p, q),
            self.ensure_edge(p, r),
            self.ensure_edge(q, r),
            self.ensure_edge(u, s),
        ];
        let id = LollipopId(self.lollipops.len());
        self.lollipops.push(LollipopFactor {
            center: u,
            rim: [a.min(b), a.max(b)],
            spoke_target: s,
            triangle_nodes,
            edges,
            costs: [0.0; LOLLIPOP_STATE_COUNT],
            links: Vec::new(),
        });
        self.lollipop_index.insert((triangle_nodes, u, s), id);
        for &e in &edges {
            self.edge_lollipops[e].push(id);
        }
        let mut triangles: Vec<TriangleId> = edges
            .iter()
            .flat_map(|&e| self.edge_triangles[e].iter().map(|&(t, _)| t))
            .collect();
        triangles.sort_unstable();
        triangles.dedup();
        for t in triangles {
            self.connect(t, id);
        }
        Ok(id)
    }

    fn connect(&mut self, t: TriangleId, l: LollipopId) {
        let tri_edges = self.triangles[t.0].edges;
        let lol_edges = self.lollipops[l.0].edges;
        let shared: Vec<(u8, u8)> = tri_edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| {
                lol_edges
                    .iter()
                    .position(|f| f == e)
                    .map(|j| (i as u8, j as u8))
            })
            .collect();
        debug_assert!(!shared.is_empty());
        let id = self.links.len();
        self.links.push(CouplingLink {
            triangle: t,
            lollipop: l,
            shared,
        });
        self.triangles[t.0].links.push(id);
        self.lollipops[l.0].links.push(id);
    }

    /// Edge variables of a factor, in coordinate order.
    pub fn factor_edges(&self, factor: FactorRef) -> Vec<usize> {
        match factor {
            FactorRef::Edge(e) => vec![e],
            FactorRef::Triangle(t) => self.triangles[t.0].edges.to_vec(),
            FactorRef::Lollipop(l) => self.lollipops[l.0].edges.to_vec(),
        }
    }

    /// `(state mask, cost)` for every feasible state of a factor.
    pub(crate) fn factor_states(&self, factor: FactorRef) -> Vec<(u8, f64)> {
        match factor {
            FactorRef::Edge(e) => vec![(0, 0.0), (1, self.edge_costs[e])],
            FactorRef::Triangle(t) => {
                let costs = &self.triangles[t.0].costs;
                (0..5).map(|s| (triangle_mask(s), costs[s])).collect()
            }
            FactorRef::Lollipop(l) => {
                let costs = &self.lollipops[l.0].costs;
                (0..LOLLIPOP_STATE_COUNT)
                    .map(|s| (lollipop_mask(s), costs[s]))
                    .collect()
            }
        }
    }

    /// Minimum factor cost over the states consistent with `fixed`
    /// (`(edge, cut)` pairs); `+inf` when no state is consistent.
    pub fn marginal_min(&self, factor: FactorRef, fixed: &[(usize, bool)]) -> Result<f64> {
        let edges = self.factor_edges(factor);
        let mut care = 0u8;
        let mut want = 0u8;
        for &(e, cut) in fixed {
            let pos = edges
                .iter()
                .position(|&f| f == e)
                .ok_or(Error::UnknownEdgeVariable(e))?;
            let bit = 1u8 << pos;
            if care & bit != 0 && (want & bit != 0) != cut {
                return Ok(f64::INFINITY);
            }
            care |= bit;
            if cut {
                want |= bit;
            }
        }
        Ok(self
            .factor_states(factor)
            .into_iter()
            .filter(|&(mask, _)| mask & care == want)
            .map(|(_, c)| c)
            .fold(f64::INFINITY, f64::min))
    }

    /// Sum over all subproblems of their minimal state cost.
    pub fn dual_lower_bound(&self) -> f64 {
        let edges: f64 = self.edge_costs.iter().map(|&c| c.min(0.0)).sum();
        let triangles: f64 = self.triangles.iter().map(TriangleFactor::min_cost).sum();
        let lollipops: f64 = self.lollipops.iter().map(LollipopFactor::min_cost).sum();
        edges + triangles + lollipops
    }

    /// Extends a labeling of the original instance to the chorded graph by
    /// way of its uncut components. Full-length labelings pass through.
    pub fn extend_labeling(&self, labeling: &EdgeLabeling) -> Result<EdgeLabeling> {
        if labeling.len() == self.graph.edge_count() {
            return Ok(labeling.clone());
        }
        let partition = self.original.components_of_uncut(labeling)?;
        self.graph.partition_to_labeling(&partition)
    }

    /// Total reparameterized cost `Σ_j ⟨θ_j, x_j⟩` of a labeling; `+inf` if
    /// some triangle or lollipop sees an infeasible pattern.
    pub fn reparameterized_cost(&self, labeling: &EdgeLabeling) -> Result<f64> {
        let x = self.extend_labeling(labeling)?;
        let x = x.labels();
        let mut total: f64 = self
            .edge_costs
            .iter()
            .zip(x)
            .filter(|(_, &cut)| cut)
            .map(|(c, _)| c)
            .sum();
        for t in &self.triangles {
            let mask = pattern(x, &t.edges);
            match triangle_state_index(mask) {
                Some(s) => total += t.costs[s],
                None => return Ok(f64::INFINITY),
            }
        }
        for l in &self.lollipops {
            let mask = pattern(x, &l.edges[..3]);
            match triangle_state_index(mask) {
                Some(s) => total += l.costs[2 * s + usize::from(x[l.edges[3]])],
                None => return Ok(f64::INFINITY),
            }
        }
        Ok(total)
    }
}

fn pattern(x: &[bool], edges: &[usize]) -> u8 {
    edges
        .iter()
        .enumerate()
        .map(|(i, &e)| u8::from(x[e]) << i)
        .sum()
}

pub(crate) fn sorted3(a: usize, b: usize, c: usize) -> [usize; 3] {
    let mut n = [a, b, c];
    n.sort_unstable();
    n
}
