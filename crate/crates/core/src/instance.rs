//! Multicut instances, edge labelings and node partitions.
//!
//! An instance is an undirected simple graph with a real cost per edge; the
//! cost is paid when the edge is cut. Edges are stored with `u < v` and keep
//! the index of their first appearance, so labelings indexed by edge stay
//! valid when the graph later grows (new edges are always appended).

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::BufRead;
use std::str::FromStr;

use crate::disjoint_set::DisjointSet;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub cost: f64,
}

#[derive(Clone, Debug, Default)]
pub struct MulticutInstance {
    node_count: usize,
    edges: Vec<Edge>,
    index: HashMap<(usize, usize), usize>,
}

impl MulticutInstance {
    pub fn new(node_count: usize) -> Self {
        MulticutInstance {
            node_count,
            edges: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Builds an instance from `(u, v, cost)` triples, merging parallel edges.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut instance = MulticutInstance::new(node_count);
        for (u, v, cost) in edges {
            instance.add_edge(u, v, cost)?;
        }
        Ok(instance)
    }

    /// Adds `cost` to edge `uv`, creating it at the end of the edge list if
    /// it does not exist yet. Returns the edge index.
    pub fn add_edge(&mut self, u: usize, v: usize, cost: f64) -> Result<usize> {
        for node in [u, v] {
            if node >= self.node_count {
                return Err(Error::NodeOutOfRange {
                    node,
                    node_count: self.node_count,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if !cost.is_finite() {
            return Err(Error::NonFiniteCost { u, v, cost });
        }
        let (a, b) = (u.min(v), u.max(v));
        if let Some(&e) = self.index.get(&(a, b)) {
            self.edges[e].cost += cost;
            Ok(e)
        } else {
            let e = self.edges.len();
            self.edges.push(Edge { u: a, v: b, cost });
            self.index.insert((a, b), e);
            Ok(e)
        }
    }

    /// Index of `uv`, appending a zero-cost edge when missing.
    ///
    /// Panics on out-of-range nodes or `u == v`.
    pub(crate) fn ensure_edge(&mut self, u: usize, v: usize) -> usize {
        match self.edge_index(u, v) {
            Some(e) => e,
            None => self
                .add_edge(u, v, 0.0)
                .expect("chord endpoints must be distinct in-range nodes"),
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Edge {
        self.edges[e]
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn costs(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.cost).collect()
    }

    /// Same graph with every edge cost replaced.
    pub fn with_costs(&self, costs: &[f64]) -> Result<Self> {
        self.check_len(costs.len())?;
        let mut out = self.clone();
        for (edge, &c) in out.edges.iter_mut().zip(costs) {
            edge.cost = c;
        }
        Ok(out)
    }

    /// Neighbor lists as `(neighbor, edge index)`, in edge order.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.node_count];
        for (e, edge) in self.edges.iter().enumerate() {
            adj[edge.u].push((edge.v, e));
            adj[edge.v].push((edge.u, e));
        }
        adj
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.edges.len() {
            return Err(Error::LengthMismatch {
                expected: self.edges.len(),
                actual: len,
            });
        }
        Ok(())
    }

    /// Reads the `MULTICUT <n> <m>` text format.
    pub fn parse<R: BufRead>(reader: R) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut instance = MulticutInstance::new(0);
        let mut seen = 0;
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = lineno + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: lineno,
                message,
            };
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            match header {
                None => {
                    if tokens.len() != 3 || tokens[0] != "MULTICUT" {
                        return Err(parse_err(format!(
                            "expected header `MULTICUT <n> <m>`, found `{trimmed}`"
                        )));
                    }
                    let n = tokens[1]
                        .parse::<usize>()
                        .map_err(|e| parse_err(format!("node count: {e}")))?;
                    let m = tokens[2]
                        .parse::<usize>()
                        .map_err(|e| parse_err(format!("edge count: {e}")))?;
                    header = Some((n, m));
                    instance = MulticutInstance::new(n);
                }
                Some((_, m)) => {
                    if seen == m {
                        return Err(parse_err(format!("more than the declared {m} edges")));
                    }
                    if tokens.len() != 3 {
                        return Err(parse_err(format!(
                            "expected `<u> <v> <cost>`, found `{trimmed}`"
                        )));
                    }
                    let u = tokens[0]
                        .parse::<usize>()
                        .map_err(|e| parse_err(format!("node `{}`: {e}", tokens[0])))?;
                    let v = tokens[1]
                        .parse::<usize>()
                        .map_err(|e| parse_err(format!("node `{}`: {e}", tokens[1])))?;
                    let cost = tokens[2]
                        .parse::<f64>()
                        .map_err(|e| parse_err(format!("cost `{}`: {e}", tokens[2])))?;
                    instance.add_edge(u, v, cost)?;
                    seen += 1;
                }
            }
        }
        match header {
            None => Err(Error::Parse {
                line: 0,
                message: "missing `MULTICUT` header".into(),
            }),
            Some((_, m)) if seen != m => Err(Error::Parse {
                line: 0,
                message: format!("declared {m} edges, found {seen}"),
            }),
            Some(_) => Ok(instance),
        }
    }

    /// Serializes to the text format (parallel edges are already merged).
    pub fn to_text(&self) -> String {
        let mut out = format!("MULTICUT {} {}\n", self.node_count, self.edges.len());
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", e.u, e.v, e.cost);
        }
        out
    }

    /// Sum of the costs of the edges labeled 1.
    pub fn labeling_cost(&self, labeling: &EdgeLabeling) -> Result<f64> {
        self.check_len(labeling.len())?;
        Ok(self
            .edges
            .iter()
            .zip(labeling.labels())
            .filter(|(_, &cut)| cut)
            .map(|(e, _)| e.cost)
            .sum())
    }

    /// Cost of the multicut induced by `partition`.
    pub fn partition_cost(&self, partition: &Partition) -> f64 {
        self.edges
            .iter()
            .filter(|e| partition.component(e.u) != partition.component(e.v))
            .map(|e| e.cost)
            .sum()
    }

    /// Connected components of the subgraph of uncut edges.
    pub fn components_of_uncut(&self, labeling: &EdgeLabeling) -> Result<Partition> {
        self.check_len(labeling.len())?;
        let mut ds = DisjointSet::new(self.node_count);
        for (e, &cut) in self.edges.iter().zip(labeling.labels()) {
            if !cut {
                ds.union(e.u, e.v);
            }
        }
        Ok(Partition::from_labels(
            (0..self.node_count).map(|i| ds.find(i)).collect(),
        ))
    }

    /// Whether the cut edges form a multicut, i.e. satisfy every cycle inequality.
    pub fn is_multicut(&self, labeling: &EdgeLabeling) -> Result<bool> {
        let partition = self.components_of_uncut(labeling)?;
        Ok(self
            .edges
            .iter()
            .zip(labeling.labels())
            .all(|(e, &cut)| cut == (partition.component(e.u) != partition.component(e.v))))
    }

    /// Labels 1 exactly the edges whose endpoints lie in distinct components.
    pub fn partition_to_labeling(&self, partition: &Partition) -> Result<EdgeLabeling> {
        if partition.len() != self.node_count {
            return Err(Error::LengthMismatch {
                expected: self.node_count,
                actual: partition.len(),
            });
        }
        Ok(EdgeLabeling::new(
            self.edges
                .iter()
                .map(|e| partition.component(e.u) != partition.component(e.v))
                .collect(),
        ))
    }

    /// Solution file body: one `<u> <v> <label>` line per edge, then one
    /// `<node> <component>` line per node.
    pub fn format_solution(&self, labeling: &EdgeLabeling) -> Result<String> {
        let partition = self.components_of_uncut(labeling)?;
        let mut out = String::new();
        for (e, &cut) in self.edges.iter().zip(labeling.labels()) {
            let _ = writeln!(out, "{} {} {}", e.u, e.v, u8::from(cut));
        }
        for (node, c) in partition.labels().iter().enumerate() {
            let _ = writeln!(out, "{node} {c}");
        }
        Ok(out)
    }
}

impl FromStr for MulticutInstance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MulticutInstance::parse(s.as_bytes())
    }
}

/// 01-vector over edges; `true` means cut.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeLabeling(Vec<bool>);

impl EdgeLabeling {
    pub fn new(labels: Vec<bool>) -> Self {
        EdgeLabeling(labels)
    }

    pub fn uncut(edge_count: usize) -> Self {
        EdgeLabeling(vec![false; edge_count])
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        EdgeLabeling(bits.iter().map(|&b| b != 0).collect())
    }

    pub fn labels(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_cut(&self, e: usize) -> bool {
        self.0[e]
    }

    pub fn cut_count(&self) -> usize {
        self.0.iter().filter(|&&c| c).count()
    }
}

/// Node-indexed component ids, always contiguous `0..k` in order of first
/// appearance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    component_id: Vec<usize>,
    count: usize,
}

impl Partition {
    /// Relabels arbitrary ids to contiguous ones.
    pub fn from_labels(raw: Vec<usize>) -> Self {
        let mut map = HashMap::new();
        let component_id: Vec<usize> = raw
            .into_iter()
            .map(|r| {
                let next = map.len();
                *map.entry(r).or_insert(next)
            })
            .collect();
        Partition {
            count: map.len(),
            component_id,
        }
    }

    pub fn single_cluster(node_count: usize) -> Self {
        Partition::from_labels(vec![0; node_count])
    }

    pub fn singletons(node_count: usize) -> Self {
        Partition::from_labels((0..node_count).collect())
    }

    pub fn component(&self, node: usize) -> usize {
        self.component_id[node]
    }

    pub fn labels(&self) -> &[usize] {
        &self.component_id
    }

    pub fn len(&self) -> usize {
        self.component_id.len()
    }

    pub fn is_empty(&self) -> bool {
        self.component_id.is_empty()
    }

    pub fn component_count(&self) -> usize {
        self.count
    }

    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (node, &c) in self.component_id.iter().enumerate() {
            out[c].push(node);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn triangle() -> MulticutInstance {
        "MULTICUT 3 3\n0 1 -2\n0 2 1\n1 2 1\n".parse().unwrap()
    }

    #[test]
    fn parses_triangle() {
        let inst = triangle();
        assert_eq!(inst.node_count(), 3);
        assert_eq!(inst.costs(), vec![-2.0, 1.0, 1.0]);
        assert_eq!((inst.edge(2).u, inst.edge(2).v), (1, 2));
    }

    #[test]
    fn merges_parallel_edges() {
        let inst: MulticutInstance = "MULTICUT 2 2\n0 1 0.5\n1 0 0.25\n".parse().unwrap();
        assert_eq!(inst.edge_count(), 1);
        assert_eq!(
            inst.edge(0),
            Edge {
                u: 0,
                v: 1,
                cost: 0.75
            }
        );
    }

    #[test]
    fn rejects_bad_input() {
        let bad = |s: &str| s.parse::<MulticutInstance>().unwrap_err();
        assert!(matches!(bad("MULTICUT 2 1\n0 0 1\n"), Error::SelfLoop(0)));
        assert!(matches!(
            bad("MULTICUT 2 1\n0 2 1\n"),
            Error::NodeOutOfRange { node: 2, .. }
        ));
        assert!(matches!(
            bad("MULTICUT 2 1\n0 1 inf\n"),
            Error::NonFiniteCost { .. }
        ));
        assert!(matches!(
            bad("MULTICUT 2 1\n0 1 NaN\n"),
            Error::NonFiniteCost { .. }
        ));
        assert!(matches!(
            bad("MULTI 2 1\n0 1 1\n"),
            Error::Parse { line: 1, .. }
        ));
        assert!(matches!(bad("MULTICUT 2 2\n0 1 1\n"), Error::Parse { .. }));
        assert!(matches!(
            bad("MULTICUT 3 1\n0 1 1\n1 2 1\n"),
            Error::Parse { line: 3, .. }
        ));
        assert!(matches!(bad(""), Error::Parse { .. }));
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let inst: MulticutInstance = "# header\nMULTICUT 3 1\n\n# edge\n0 2 1.5\n"
            .parse()
            .unwrap();
        assert_eq!(inst.edge_count(), 1);
        assert_eq!(inst.edge_index(2, 0), Some(0));
    }

    #[test]
    fn labeling_costs() {
        let inst = triangle();
        let cost = |bits: &[u8]| inst.labeling_cost(&EdgeLabeling::from_bits(bits)).unwrap();
        assert_eq!(cost(&[1, 1, 0]), -1.0);
        assert_eq!(cost(&[0, 0, 0]), 0.0);
        assert_eq!(cost(&[1, 1, 1]), 0.0);
        assert!(inst.labeling_cost(&EdgeLabeling::uncut(2)).is_err());
    }

    #[test]
    fn uncut_components() {
        let inst = triangle();
        let parts = |bits: &[u8]| {
            inst.components_of_uncut(&EdgeLabeling::from_bits(bits))
                .unwrap()
                .component_count()
        };
        assert_eq!(parts(&[1, 1, 1]), 3);
        assert_eq!(parts(&[0, 0, 0]), 1);

        let path =
            MulticutInstance::from_edges(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]).unwrap();
        let p = path
            .components_of_uncut(&EdgeLabeling::from_bits(&[0, 1, 0]))
            .unwrap();
        assert_eq!(p.members(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn multicut_feasibility() {
        let inst = triangle();
        let ok = |bits: &[u8]| inst.is_multicut(&EdgeLabeling::from_bits(bits)).unwrap();
        assert!(!ok(&[1, 0, 0]));
        assert!(ok(&[1, 1, 0]));
        assert!(ok(&[1, 1, 1]));
        assert!(ok(&[0, 0, 0]));
    }

    #[test]
    fn partitions_to_labelings() {
        let inst = triangle();
        let lab = |p: Partition| inst.partition_to_labeling(&p).unwrap();
        assert_eq!(
            lab(Partition::single_cluster(3)),
            EdgeLabeling::from_bits(&[0, 0, 0])
        );
        assert_eq!(
            lab(Partition::singletons(3)),
            EdgeLabeling::from_bits(&[1, 1, 1])
        );
        assert_eq!(
            lab(Partition::from_labels(vec![0, 1, 1])),
            EdgeLabeling::from_bits(&[1, 1, 0])
        );
    }

    #[test]
    fn isolated_nodes_are_singletons() {
        let inst = MulticutInstance::from_edges(4, [(0, 1, 1.0)]).unwrap();
        let p = inst.components_of_uncut(&EdgeLabeling::uncut(1)).unwrap();
        assert_eq!(p.component_count(), 3);
    }

    #[test]
    fn solution_format() {
        let inst = triangle();
        let text = inst
            .format_solution(&EdgeLabeling::from_bits(&[1, 1, 0]))
            .unwrap();
        assert_eq!(text, "0 1 1\n0 2 1\n1 2 0\n0 0\n1 1\n2 1\n");
    }

    fn small_graph() -> impl Strategy<Value = (MulticutInstance, Vec<bool>, Vec<bool>)> {
        (2usize..7)
            .prop_flat_map(|n| {
                let pairs: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .collect();
                let m = pairs.len();
                (
                    Just(n),
                    Just(pairs),
                    prop::collection::vec(any::<bool>(), m),
                    prop::collection::vec(-5i32..5, m),
                    prop::collection::vec(any::<bool>(), m),
                    prop::collection::vec(any::<bool>(), m),
                )
            })
            .prop_map(|(n, pairs, keep, costs, x, y)| {
                let mut inst = MulticutInstance::new(n);
                let (mut xs, mut ys) = (Vec::new(), Vec::new());
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    if keep[i] {
                        inst.add_edge(u, v, costs[i] as f64 * 0.5).unwrap();
                        xs.push(x[i]);
                        ys.push(y[i]);
                    }
                }
                (inst, xs, ys)
            })
    }

    proptest! {
        #[test]
        fn multicut_iff_partition_induced((inst, x, _) in small_graph()) {
            let x = EdgeLabeling::new(x);
            let induced = inst.partition_to_labeling(&inst.components_of_uncut(&x).unwrap()).unwrap();
            prop_assert_eq!(inst.is_multicut(&x).unwrap(), x == induced);
            prop_assert!(inst.is_multicut(&induced).unwrap());
            let again = inst.partition_to_labeling(&inst.components_of_uncut(&induced).unwrap()).unwrap();
            prop_assert_eq!(again, induced);
        }

        #[test]
        fn cost_is_modular((inst, x, y) in small_graph()) {
            let or: Vec<bool> = x.iter().zip(&y).map(|(a, b)| *a || *b).collect();
            let and: Vec<bool> = x.iter().zip(&y).map(|(a, b)| *a && *b).collect();
            let c = |v: &Vec<bool>| inst.labeling_cost(&EdgeLabeling::new(v.clone())).unwrap();
            prop_assert!((c(&x) + c(&y) - c(&or) - c(&and)).abs() < 1e-12);
        }

        #[test]
        fn text_format_round_trips((inst, _, _) in small_graph()) {
            let back: MulticutInstance = inst.to_text().parse().unwrap();
            prop_assert_eq!(back.edges(), inst.edges());
        }
    }
}
