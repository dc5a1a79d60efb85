//! Undirected simple graphs, edge vectors over exact rationals, and the
//! elementary cut/induced-edge/component queries everything else builds on.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Vertex = usize;
pub type EdgeId = usize;
pub type VertexSet = BTreeSet<Vertex>;
pub type EdgeSet = BTreeSet<EdgeId>;

/// An undirected simple graph. Vertices are `0..n`; edges get stable
/// identifiers in insertion order, which downstream code uses for
/// deterministic tie-breaking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Input("graph must have at least one vertex".into()));
        }
        let mut seen: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::Input(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{vertex_count}"
                )));
            }
            if u == v {
                return Err(Error::Input(format!("self-loop at vertex {u}")));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::Input(format!(
                    "parallel edge ({}, {})",
                    key.0, key.1
                )));
            }
            normalized.push(key);
        }
        Ok(Graph {
            vertex_count,
            edges: normalized,
        })
    }

    /// Complete graph on `n` vertices, edges in lexicographic order.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).expect("complete graph is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, (Vertex, Vertex))> + '_ {
        self.edges.iter().copied().enumerate()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        0..self.edges.len()
    }

    pub fn all_edges(&self) -> EdgeSet {
        self.edge_ids().collect()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.vertex_count
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().collect()
    }

    /// Looks up the identifier of the edge `{u, v}`.
    pub fn edge_between(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        let key = (u.min(v), u.max(v));
        self.edges.iter().position(|&e| e == key)
    }

    /// All edges with exactly one endpoint in `S`. Errors when `S` is
    /// empty or all of `V`, for which no cut exists.
    pub fn cut(&self, s: &VertexSet) -> Result<EdgeSet> {
        if s.is_empty() || s.len() >= self.vertex_count {
            return Err(Error::Input(
                "cut requires a nonempty proper vertex subset".into(),
            ));
        }
        Ok(self
            .edges()
            .filter(|&(_, (u, v))| s.contains(&u) != s.contains(&v))
            .map(|(id, _)| id)
            .collect())
    }

    /// Edges with both endpoints in `U`.
    pub fn induced_edges(&self, u: &VertexSet) -> EdgeSet {
        self.edges()
            .filter(|&(_, (a, b))| u.contains(&a) && u.contains(&b))
            .map(|(id, _)| id)
            .collect()
    }

    /// Edges with one endpoint in `a` and the other in `b`.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> EdgeSet {
        self.edges()
            .filter(|&(_, (u, v))| {
                (a.contains(&u) && b.contains(&v)) || (a.contains(&v) && b.contains(&u))
            })
            .map(|(id, _)| id)
            .collect()
    }

    /// Connected components of the subgraph `(vertices, X)`, sorted by
    /// smallest member.
    pub fn components(&self, vertices: &VertexSet, x: &EdgeSet) -> Vec<VertexSet> {
        let mut dsu = Dsu::new(self.vertex_count);
        for &e in x {
            let (u, v) = self.endpoints(e);
            dsu.union(u, v);
        }
        let mut by_root: BTreeMap<usize, VertexSet> = BTreeMap::new();
        for &v in vertices {
            by_root.entry(dsu.find(v)).or_default().insert(v);
        }
        let mut comps: Vec<VertexSet> = by_root.into_values().collect();
        comps.sort_by_key(|c| *c.first().expect("components are nonempty"));
        comps
    }

    /// `true` iff `T` has `|V|-1` edges and `(V, T)` is connected.
    pub fn is_spanning_tree(&self, t: &EdgeSet) -> bool {
        if t.len() + 1 != self.vertex_count {
            return false;
        }
        let all = self.vertex_set();
        self.components(&all, t).len() == 1
    }
}

/// A spanning tree of a fixed graph, validated on construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Tree {
    edges: EdgeSet,
}

impl Tree {
    pub fn new(graph: &Graph, edges: EdgeSet) -> Result<Self> {
        if !graph.is_spanning_tree(&edges) {
            return Err(Error::Input(format!("{edges:?} is not a spanning tree")));
        }
        Ok(Tree { edges })
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// The edge vector with value 1 on the tree edges.
    pub fn indicator(&self) -> EdgeVector {
        let mut x = EdgeVector::new();
        for &e in &self.edges {
            x.set(e, Rational::from_integer(1.into()));
        }
        x
    }
}

/// A sparse nonnegative rational vector indexed by edge identifiers.
/// Absent edges have value zero; zero values are never stored, so the
/// stored key set is exactly the support.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeVector {
    entries: BTreeMap<EdgeId, Rational>,
}

impl EdgeVector {
    pub fn new() -> Self {
        EdgeVector {
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries<I: IntoIterator<Item = (EdgeId, Rational)>>(entries: I) -> Result<Self> {
        let mut x = EdgeVector::new();
        for (e, q) in entries {
            if q < Rational::zero() {
                return Err(Error::Input(format!("negative value on edge {e}")));
            }
            if x.entries.contains_key(&e) {
                return Err(Error::Input(format!("duplicate entry for edge {e}")));
            }
            if !q.is_zero() {
                x.entries.insert(e, q);
            }
        }
        Ok(x)
    }

    /// Sets the value on `e`; zero removes the entry. Panics on negative
    /// values, which the type never holds.
    pub fn set(&mut self, e: EdgeId, q: Rational) {
        assert!(q >= Rational::zero(), "edge vectors are nonnegative");
        if q.is_zero() {
            self.entries.remove(&e);
        } else {
            self.entries.insert(e, q);
        }
    }

    pub fn get(&self, e: EdgeId) -> Rational {
        self.entries.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> EdgeSet {
        self.entries.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, &Rational)> {
        self.entries.iter().map(|(&e, q)| (e, q))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Exact sum of the vector over `F`. Unknown edges (identifiers not
    /// present in the graph) are the caller's input error; here absent
    /// entries simply contribute zero.
    pub fn sum_over(&self, f: &EdgeSet) -> Rational {
        let mut total = Rational::zero();
        for e in f {
            if let Some(q) = self.entries.get(e) {
                total += q;
            }
        }
        total
    }

    pub fn total(&self) -> Rational {
        self.entries.values().fold(Rational::zero(), |a, q| a + q)
    }

    /// Sum of the values on edges incident to `v`.
    pub fn degree(&self, graph: &Graph, v: Vertex) -> Rational {
        let mut total = Rational::zero();
        for (e, (a, b)) in graph.edges() {
            if a == v || b == v {
                total += self.get(e);
            }
        }
        total
    }

    pub fn scale(&self, factor: &Rational) -> Result<Self> {
        if factor < &Rational::zero() {
            return Err(Error::Input("negative scale factor".into()));
        }
        EdgeVector::from_entries(self.iter().map(|(e, q)| (e, q * factor)))
    }

    /// The rescaled remainder `(x - lambda * T) / (1 - lambda)`.
    /// Requires `lambda < 1` and `lambda <= x_e` on every tree edge.
    pub fn peel(&self, tree: &Tree, lambda: &Rational) -> Result<Self> {
        let one = Rational::from_integer(1.into());
        if lambda >= &one {
            return Err(Error::Input("peel fraction must be below 1".into()));
        }
        let rest = one - lambda;
        let mut out = EdgeVector::new();
        for (e, q) in self.iter() {
            let reduced = if tree.contains(e) {
                q - lambda
            } else {
                q.clone()
            };
            if reduced < Rational::zero() {
                return Err(Error::Input(format!("peel would make edge {e} negative")));
            }
            out.set(e, reduced / &rest);
        }
        Ok(out)
    }

    /// `true` when the vector is the indicator of `tree`.
    pub fn is_indicator_of(&self, tree: &Tree) -> bool {
        self.support() == *tree.edges() && self.iter().all(|(_, q)| q.is_one())
    }
}

/// Plain union-find with path halving, used for forests and components.
#[derive(Debug, Clone)]
pub struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Merges the classes of `a` and `b`; `false` if already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Smaller root wins so the representative is reproducible.
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}
