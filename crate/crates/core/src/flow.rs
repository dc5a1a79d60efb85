//! Exact-rational maximum flow / minimum cut, and the maximum modular
//! excess oracle `max over U of y(E(U)) - kappa * |U|` used for
//! spanning-tree-polytope separation and peel-fraction search.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{EdgeVector, Graph, Vertex, VertexSet};
use crate::rational::Rational;

/// Arc capacity: a nonnegative rational or unbounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Capacity {
    Finite(Rational),
    Infinite,
}

impl Capacity {
    fn is_positive(&self) -> bool {
        match self {
            Capacity::Finite(q) => !q.is_zero(),
            Capacity::Infinite => true,
        }
    }

    /// Residual decrease by a finite amount; infinite stays infinite.
    fn reduce(&mut self, amount: &Rational) {
        if let Capacity::Finite(q) = self {
            *q -= amount;
            debug_assert!(*q >= Rational::zero());
        }
    }

    fn increase(&mut self, amount: &Rational) {
        if let Capacity::Finite(q) = self {
            *q += amount;
        }
    }
}

/// A directed flow network with designated source and sink. The source
/// has no in-arcs and the sink no out-arcs.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    node_count: usize,
    source: usize,
    sink: usize,
    // Forward arcs at even indices, their residual reverses at odd ones.
    arcs: Vec<Arc>,
    adjacency: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    residual: Capacity,
    original: Option<Capacity>, // None on reverse arcs
}

/// Exact min-cut value together with the canonical minimal source side
/// (the nodes reachable from the source in the residual network).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    pub value: Rational,
    pub source_side: VertexSet,
}

impl FlowNetwork {
    pub fn new(node_count: usize, source: usize, sink: usize) -> Result<Self> {
        if source >= node_count || sink >= node_count || source == sink {
            return Err(Error::Input(
                "flow network needs distinct in-range source and sink".into(),
            ));
        }
        Ok(FlowNetwork {
            node_count,
            source,
            sink,
            arcs: Vec::new(),
            adjacency: vec![Vec::new(); node_count],
        })
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    /// Adds a directed arc. Arcs into the source or out of the sink are
    /// rejected; capacities must be nonnegative.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: Capacity) -> Result<()> {
        if from >= self.node_count || to >= self.node_count || from == to {
            return Err(Error::Input(format!("bad arc ({from}, {to})")));
        }
        if to == self.source || from == self.sink {
            return Err(Error::Input(
                "arcs into the source or out of the sink are not allowed".into(),
            ));
        }
        if let Capacity::Finite(q) = &cap {
            if q < &Rational::zero() {
                return Err(Error::Input("negative capacity".into()));
            }
        }
        let idx = self.arcs.len();
        self.arcs.push(Arc {
            to,
            residual: cap.clone(),
            original: Some(cap),
        });
        self.arcs.push(Arc {
            to: from,
            residual: Capacity::Finite(Rational::zero()),
            original: None,
        });
        self.adjacency[from].push(idx);
        self.adjacency[to].push(idx + 1);
        Ok(())
    }

    /// Computes an exact maximum flow by shortest augmenting paths and
    /// returns the minimum cut. Errors when no finite cut exists.
    pub fn max_flow_min_cut(&self) -> Result<CutResult> {
        let mut net = self.clone();
        let mut total = Rational::zero();
        loop {
            match net.augmenting_path() {
                None => break,
                Some(path) => {
                    let mut bottleneck: Option<Rational> = None;
                    for &arc in &path {
                        if let Capacity::Finite(q) = &net.arcs[arc].residual {
                            match &bottleneck {
                                Some(b) if q >= b => {}
                                _ => bottleneck = Some(q.clone()),
                            }
                        }
                    }
                    let Some(push) = bottleneck else {
                        // An all-infinite augmenting path: the flow is unbounded.
                        return Err(Error::UnboundedFlow);
                    };
                    debug_assert!(!push.is_zero());
                    for &arc in &path {
                        net.arcs[arc].residual.reduce(&push);
                        net.arcs[arc ^ 1].residual.increase(&push);
                    }
                    total += push;
                }
            }
        }

        let reachable = net.residual_reachable();
        // Strong duality: the capacity across the residual-reachable
        // side must equal the flow value exactly.
        let mut cut_value = Rational::zero();
        for from in 0..self.node_count {
            if !reachable[from] {
                continue;
            }
            for &idx in &self.adjacency[from] {
                if idx % 2 != 0 {
                    continue;
                }
                let arc = &self.arcs[idx];
                if reachable[arc.to] {
                    continue;
                }
                match arc.original.as_ref().expect("forward arc") {
                    Capacity::Finite(q) => cut_value += q,
                    Capacity::Infinite => {
                        return Err(Error::TheoryViolation(
                            "infinite arc crosses the minimum cut".into(),
                        ))
                    }
                }
            }
        }
        if cut_value != total {
            return Err(Error::TheoryViolation(
                "max-flow / min-cut duality check failed".into(),
            ));
        }

        let source_side = (0..self.node_count).filter(|&v| reachable[v]).collect();
        Ok(CutResult {
            value: total,
            source_side,
        })
    }

    /// BFS over positive-residual arcs; returns the arc indices of a
    /// shortest source-sink path.
    fn augmenting_path(&self) -> Option<Vec<usize>> {
        let mut pred: Vec<Option<usize>> = vec![None; self.node_count];
        let mut seen = vec![false; self.node_count];
        seen[self.source] = true;
        let mut queue = alloc::collections::VecDeque::new();
        queue.push_back(self.source);
        while let Some(v) = queue.pop_front() {
            if v == self.sink {
                break;
            }
            for &idx in &self.adjacency[v] {
                let arc = &self.arcs[idx];
                if !seen[arc.to] && arc.residual.is_positive() {
                    seen[arc.to] = true;
                    pred[arc.to] = Some(idx);
                    queue.push_back(arc.to);
                }
            }
        }
        if !seen[self.sink] {
            return None;
        }
        let mut path = Vec::new();
        let mut v = self.sink;
        while v != self.source {
            let idx = pred[v].expect("predecessor on path");
            path.push(idx);
            v = if idx.is_multiple_of(2) {
                // forward arc idx leaves arcs[idx^1].to
                self.arcs[idx ^ 1].to
            } else {
                self.arcs[idx ^ 1].to
            };
        }
        path.reverse();
        Some(path)
    }

    fn residual_reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.node_count];
        seen[self.source] = true;
        let mut queue = alloc::collections::VecDeque::new();
        queue.push_back(self.source);
        while let Some(v) = queue.pop_front() {
            for &idx in &self.adjacency[v] {
                let arc = &self.arcs[idx];
                if !seen[arc.to] && arc.residual.is_positive() {
                    seen[arc.to] = true;
                    queue.push_back(arc.to);
                }
            }
        }
        seen
    }
}

/// Minimum over vertex sets `A` with `sources ⊆ A` and `sinks ∩ A = ∅`
/// of `x(δ(A))`, on the undirected graph with edge capacities `x`.
/// Used pairwise during chain derivation.
pub fn min_cut_separating(
    graph: &Graph,
    x: &EdgeVector,
    sources: &VertexSet,
    sinks: &VertexSet,
) -> Result<Rational> {
    if sources.is_empty() || sinks.is_empty() || sources.intersection(sinks).next().is_some() {
        return Err(Error::Input(
            "separating cut needs disjoint nonempty source and sink sets".into(),
        ));
    }
    // Contract the source set into node 0 and the sink set into node 1.
    let mut id_of: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut next = 2;
    for v in graph.vertices() {
        let id = if sources.contains(&v) {
            0
        } else if sinks.contains(&v) {
            1
        } else {
            next += 1;
            next - 1
        };
        id_of.insert(v, id);
    }
    let mut net = FlowNetwork::new(next, 0, 1)?;
    for (e, (u, v)) in graph.edges() {
        let q = x.get(e);
        if q.is_zero() {
            continue;
        }
        let (a, b) = (id_of[&u], id_of[&v]);
        if a == b {
            continue;
        }
        // An undirected edge becomes antiparallel arcs, skipping the
        // directions a flow can never use.
        if b != 0 && a != 1 {
            net.add_arc(a, b, Capacity::Finite(q.clone()))?;
        }
        if a != 0 && b != 1 {
            net.add_arc(b, a, Capacity::Finite(q))?;
        }
    }
    Ok(net.max_flow_min_cut()?.value)
}

/// Result of the modular-excess maximization: the exact optimum and a
/// canonical minimal maximizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularExcess {
    pub value: Rational,
    pub argmax: VertexSet,
}

/// Maximizes `y(E(U)) - kappa * |U|` over nonempty vertex sets `U`
/// (containing `forced` when given), returning a minimal maximizer.
///
/// The reduction: a source feeds each support edge with capacity `y_e`,
/// each edge node feeds its endpoints with infinite capacity, and each
/// vertex drains into the sink with capacity `kappa`; a forced vertex is
/// pinned to the source side by an infinite source arc. The optimum is
/// `y(E) - mincut` and the minimal source side realizes the minimal
/// maximizer.
pub fn max_modular_excess(
    graph: &Graph,
    y: &EdgeVector,
    kappa: &Rational,
    forced: Option<Vertex>,
) -> Result<ModularExcess> {
    if kappa < &Rational::zero() {
        return Err(Error::Input("kappa must be nonnegative".into()));
    }
    if let Some(w) = forced {
        if w >= graph.vertex_count() {
            return Err(Error::Input(format!("forced vertex {w} out of range")));
        }
        return modular_excess_run(graph, y, kappa, Some(w));
    }
    let free = modular_excess_run(graph, y, kappa, None)?;
    if !free.argmax.is_empty() {
        return Ok(free);
    }
    // The unconstrained optimum is attained only by the empty set; the
    // best nonempty maximizer is found by pinning each vertex in turn.
    let mut best: Option<ModularExcess> = None;
    for w in graph.vertices() {
        let run = modular_excess_run(graph, y, kappa, Some(w))?;
        match &best {
            Some(b) if run.value <= b.value => {}
            _ => best = Some(run),
        }
    }
    Ok(best.expect("graph has at least one vertex"))
}

fn modular_excess_run(
    graph: &Graph,
    y: &EdgeVector,
    kappa: &Rational,
    forced: Option<Vertex>,
) -> Result<ModularExcess> {
    let support: Vec<_> = y.iter().map(|(e, q)| (e, q.clone())).collect();
    let m = support.len();
    let n = graph.vertex_count();
    // Nodes: 0 source, 1 sink, 2..2+m edge nodes, 2+m..2+m+n vertices.
    let edge_node = |i: usize| 2 + i;
    let vertex_node = |v: Vertex| 2 + m + v;
    let mut net = FlowNetwork::new(2 + m + n, 0, 1)?;
    let mut total = Rational::zero();
    for (i, (e, q)) in support.iter().enumerate() {
        total += q;
        net.add_arc(0, edge_node(i), Capacity::Finite(q.clone()))?;
        let (u, v) = graph.endpoints(*e);
        net.add_arc(edge_node(i), vertex_node(u), Capacity::Infinite)?;
        net.add_arc(edge_node(i), vertex_node(v), Capacity::Infinite)?;
    }
    for v in graph.vertices() {
        net.add_arc(vertex_node(v), 1, Capacity::Finite(kappa.clone()))?;
    }
    if let Some(w) = forced {
        net.add_arc(0, vertex_node(w), Capacity::Infinite)?;
    }
    let cut = net.max_flow_min_cut()?;
    let argmax: VertexSet = graph
        .vertices()
        .filter(|&v| cut.source_side.contains(&vertex_node(v)))
        .collect();
    Ok(ModularExcess {
        value: total - cut.value,
        argmax,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture_c;
    use crate::rational::{frac, rat};

    #[test]
    fn single_arc() {
        let mut net = FlowNetwork::new(2, 0, 1).unwrap();
        net.add_arc(0, 1, Capacity::Finite(frac(3, 2))).unwrap();
        let cut = net.max_flow_min_cut().unwrap();
        assert_eq!(cut.value, frac(3, 2));
        assert_eq!(cut.source_side, [0].into_iter().collect());
    }

    #[test]
    fn two_parallel_paths() {
        // Two length-2 paths with per-arc capacities 1/3 and 1/4.
        let mut net = FlowNetwork::new(4, 0, 3).unwrap();
        net.add_arc(0, 1, Capacity::Finite(frac(1, 3))).unwrap();
        net.add_arc(1, 3, Capacity::Finite(frac(1, 3))).unwrap();
        net.add_arc(0, 2, Capacity::Finite(frac(1, 4))).unwrap();
        net.add_arc(2, 3, Capacity::Finite(frac(1, 4))).unwrap();
        assert_eq!(net.max_flow_min_cut().unwrap().value, frac(7, 12));
    }

    #[test]
    fn unbounded_flow_detected() {
        let mut net = FlowNetwork::new(3, 0, 2).unwrap();
        net.add_arc(0, 1, Capacity::Infinite).unwrap();
        net.add_arc(1, 2, Capacity::Infinite).unwrap();
        assert_eq!(net.max_flow_min_cut(), Err(Error::UnboundedFlow));
    }

    #[test]
    fn source_sink_arc_rules() {
        let mut net = FlowNetwork::new(3, 0, 2).unwrap();
        assert!(net.add_arc(1, 0, Capacity::Infinite).is_err());
        assert!(net.add_arc(2, 1, Capacity::Infinite).is_err());
        assert!(net.add_arc(0, 1, Capacity::Finite(rat(-1))).is_err());
    }

    #[test]
    fn modular_excess_on_tree_indicator() {
        let (g, _) = fixture_c();
        let tree = EdgeVector::from_entries([(0, rat(1)), (2, rat(1)), (4, rat(1))]).unwrap();
        let res = max_modular_excess(&g, &tree, &rat(1), None).unwrap();
        assert_eq!(res.value, rat(-1));
        // Minimal maximizer with the first pinned vertex.
        assert_eq!(res.argmax, [0].into_iter().collect());
    }

    #[test]
    fn modular_excess_fixture_c() {
        let (g, x) = fixture_c();
        let res = max_modular_excess(&g, &x, &rat(1), None).unwrap();
        assert_eq!(res.value, rat(-1));
        // {a, b} attains the max too: x(E({a,b})) - 2 = -1.
        let ab: VertexSet = [1, 2].into_iter().collect();
        assert_eq!(x.sum_over(&g.induced_edges(&ab)) - rat(2), rat(-1));
    }

    #[test]
    fn modular_excess_zero_vector() {
        let (g, _) = fixture_c();
        let res = max_modular_excess(&g, &EdgeVector::new(), &rat(1), None).unwrap();
        assert_eq!(res.value, rat(-1));
        assert_eq!(res.argmax.len(), 1);
    }

    #[test]
    fn forced_vertex_is_respected() {
        let (g, x) = fixture_c();
        for w in g.vertices() {
            let res = max_modular_excess(&g, &x, &rat(1), Some(w)).unwrap();
            assert!(res.argmax.contains(&w));
        }
    }

    #[test]
    fn separating_cut_values() {
        let (g, x) = fixture_c();
        let s: VertexSet = [0].into_iter().collect();
        let t: VertexSet = [3].into_iter().collect();
        assert_eq!(min_cut_separating(&g, &x, &s, &t).unwrap(), rat(1));
        let sa: VertexSet = [0, 1].into_iter().collect();
        assert_eq!(min_cut_separating(&g, &x, &sa, &t).unwrap(), rat(1));
    }
}
