//! Chains of nested vertex sets, their level partitions, Gao-edges,
//! chain-point validation, narrow-cut derivation and layer thresholds.
//!
//! A point x is a chain-point for a chain V_0 ⊊ … ⊊ V_k when it lies in
//! the spanning-tree polytope, the end cuts have size exactly one with
//! interior cuts strictly below two, and every interior level's degree
//! sum equals twice its cardinality.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::decompose::{sp_membership, SpCheck};
use crate::error::{Error, Result};
use crate::flow::min_cut_separating;
use crate::graph::{EdgeSet, EdgeVector, Graph, Tree, Vertex, VertexSet};
use crate::rational::{rat, Rational};

/// A strictly increasing sequence of vertex sets
/// ∅ ≠ V_0 ⊊ V_1 ⊊ … ⊊ V_k ⊊ V, validated on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    sets: Vec<VertexSet>,
    vertex_count: usize,
}

impl Chain {
    pub fn new(sets: Vec<VertexSet>, vertex_count: usize) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::InvalidChain(
                "chain must contain at least one set".into(),
            ));
        }
        for (i, set) in sets.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::InvalidChain(format!("member {i} is empty")));
            }
            if set.iter().any(|&v| v >= vertex_count) {
                return Err(Error::InvalidChain(format!(
                    "member {i} has an out-of-range vertex"
                )));
            }
            if set.len() >= vertex_count {
                return Err(Error::InvalidChain(format!(
                    "member {i} is the whole vertex set"
                )));
            }
            if i > 0 {
                let prev = &sets[i - 1];
                if !(prev.is_subset(set) && prev.len() < set.len()) {
                    return Err(Error::InvalidChain(format!(
                        "member {i} does not strictly contain member {}",
                        i - 1
                    )));
                }
            }
        }
        Ok(Chain { sets, vertex_count })
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    /// Chains are never empty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// The cut edge sets δ(V_0), …, δ(V_k).
    pub fn cuts(&self, graph: &Graph) -> Result<Vec<EdgeSet>> {
        self.sets.iter().map(|s| graph.cut(s)).collect()
    }

    /// Exact cut sizes x(δ(V_i)) in chain order.
    pub fn cut_sizes(&self, graph: &Graph, x: &EdgeVector) -> Result<Vec<Rational>> {
        Ok(self.cuts(graph)?.iter().map(|c| x.sum_over(c)).collect())
    }

    /// The subsequence of members whose cut size does not exceed
    /// `threshold`; errors when none qualifies.
    pub fn subchain_at(
        &self,
        graph: &Graph,
        x: &EdgeVector,
        threshold: &Rational,
    ) -> Result<Chain> {
        let sizes = self.cut_sizes(graph, x)?;
        let sets: Vec<VertexSet> = self
            .sets
            .iter()
            .zip(&sizes)
            .filter(|(_, size)| *size <= threshold)
            .map(|(s, _)| s.clone())
            .collect();
        if sets.is_empty() {
            return Err(Error::InvalidChain(format!(
                "no chain cut has size at most {threshold}"
            )));
        }
        Chain::new(sets, self.vertex_count)
    }
}

/// The level partition L_0, …, L_{k+1} induced by a chain: successive
/// differences with L_{k+1} = V ∖ V_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Levels {
    levels: Vec<VertexSet>,
    level_of: Vec<usize>,
}

impl Levels {
    pub fn of_chain(chain: &Chain) -> Self {
        let n = chain.vertex_count();
        let mut levels: Vec<VertexSet> = Vec::with_capacity(chain.len() + 1);
        let mut prev = VertexSet::new();
        for set in chain.sets() {
            levels.push(set.difference(&prev).copied().collect());
            prev = set.clone();
        }
        let top: VertexSet = (0..n).filter(|v| !prev.contains(v)).collect();
        levels.push(top);
        let mut level_of = alloc::vec![usize::MAX; n];
        for (i, level) in levels.iter().enumerate() {
            for &v in level {
                level_of[v] = i;
            }
        }
        debug_assert!(levels.iter().all(|l| !l.is_empty()));
        Levels { levels, level_of }
    }

    pub fn levels(&self) -> &[VertexSet] {
        &self.levels
    }

    pub fn count(&self) -> usize {
        self.levels.len()
    }

    pub fn level_of(&self, v: Vertex) -> usize {
        self.level_of[v]
    }

    /// Chain cuts crossed by the edge `{u, v}`: the interval of cut
    /// indices between the two endpoint levels.
    pub fn cuts_crossed(&self, u: Vertex, v: Vertex) -> usize {
        self.level_of(u).abs_diff(self.level_of(v))
    }
}

/// The level partition of `chain` on `graph`'s vertex set.
pub fn levels_of(chain: &Chain, graph: &Graph) -> Result<Levels> {
    if chain.vertex_count() != graph.vertex_count() {
        return Err(Error::InvalidChain(
            "chain and graph disagree on the vertex count".into(),
        ));
    }
    Ok(Levels::of_chain(chain))
}

/// Gao-edges of cut `q`: the edges of δ(V_q) joining the two adjacent
/// levels, i.e. lying in no other chain cut.
pub fn gao_edges(chain: &Chain, graph: &Graph, q: usize) -> Result<EdgeSet> {
    if q >= chain.len() {
        return Err(Error::Input(format!("cut index {q} out of range")));
    }
    let levels = levels_of(chain, graph)?;
    Ok(graph
        .edges()
        .filter(|&(_, (u, v))| {
            let (lo, hi) = (
                levels.level_of(u).min(levels.level_of(v)),
                levels.level_of(u).max(levels.level_of(v)),
            );
            lo == q && hi == q + 1
        })
        .map(|(id, _)| id)
        .collect())
}

/// `true` iff the tree crosses every chain cut exactly once.
pub fn is_gao_tree(tree: &Tree, chain: &Chain, graph: &Graph) -> Result<bool> {
    for cut in chain.cuts(graph)? {
        if cut.intersection(tree.edges()).count() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One violated chain-point condition, with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainPointViolation {
    /// Condition (i): not in the spanning-tree polytope.
    NotInPolytope(SpCheck),
    /// Condition (ii): an end cut differs from one.
    EndCutSize { index: usize, size: Rational },
    /// Condition (ii): an interior cut reaches two.
    InteriorCutSize { index: usize, size: Rational },
    /// Condition (iii): an interior level's degree sum is off.
    LevelDegreeSum {
        level: usize,
        actual: Rational,
        expected: Rational,
    },
}

impl ChainPointViolation {
    pub fn describe(&self) -> String {
        match self {
            ChainPointViolation::NotInPolytope(check) => {
                format!("point is outside the spanning-tree polytope: {check:?}")
            }
            ChainPointViolation::EndCutSize { index, size } => {
                format!("end cut {index} has size {size}, expected 1")
            }
            ChainPointViolation::InteriorCutSize { index, size } => {
                format!("interior cut {index} has size {size}, expected < 2")
            }
            ChainPointViolation::LevelDegreeSum {
                level,
                actual,
                expected,
            } => {
                format!("level {level} degree sum is {actual}, expected {expected}")
            }
        }
    }
}

/// Outcome of validating conditions (i)-(iii); empty = chain-point.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChainPointReport {
    pub violations: Vec<ChainPointViolation>,
}

impl ChainPointReport {
    pub fn is_chain_point(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks conditions (i)-(iii) of the chain-point definition and
/// reports every violation found.
pub fn validate_chain_point(
    x: &EdgeVector,
    chain: &Chain,
    graph: &Graph,
) -> Result<ChainPointReport> {
    let mut report = ChainPointReport::default();

    let membership = sp_membership(graph, x)?;
    if !membership.is_member() {
        report
            .violations
            .push(ChainPointViolation::NotInPolytope(membership));
    }

    let sizes = chain.cut_sizes(graph, x)?;
    let last = chain.len() - 1;
    for (i, size) in sizes.iter().enumerate() {
        if i == 0 || i == last {
            if *size != rat(1) {
                report.violations.push(ChainPointViolation::EndCutSize {
                    index: i,
                    size: size.clone(),
                });
            }
        } else if *size >= rat(2) {
            report
                .violations
                .push(ChainPointViolation::InteriorCutSize {
                    index: i,
                    size: size.clone(),
                });
        }
    }

    let levels = levels_of(chain, graph)?;
    // Interior levels only: L_1 .. L_k.
    for i in 1..=chain.len() - 1 {
        let level = &levels.levels()[i];
        let actual: Rational = level
            .iter()
            .fold(Rational::zero(), |acc, &v| acc + x.degree(graph, v));
        let expected = rat(2 * level.len() as i64);
        if actual != expected {
            report.violations.push(ChainPointViolation::LevelDegreeSum {
                level: i,
                actual,
                expected,
            });
        }
    }
    Ok(report)
}

/// Derives the full chain of narrow cuts
/// `{A ⊆ V∖{t} : s ∈ A, x(δ(A)) < 2}` of an s-t degree-constrained
/// point, by pairwise minimum-cut queries: two vertices share a level
/// exactly when no cut of value below two separates them.
pub fn derive_chain(x: &EdgeVector, graph: &Graph, s: Vertex, t: Vertex) -> Result<Chain> {
    let n = graph.vertex_count();
    if s >= n || t >= n || s == t {
        return Err(Error::Input(
            "source and sink must be distinct in-range vertices".into(),
        ));
    }
    for v in graph.vertices() {
        let expected = if v == s || v == t { rat(1) } else { rat(2) };
        let deg = x.degree(graph, v);
        if deg != expected {
            return Err(Error::Input(format!(
                "degree constraint violated at vertex {v}: x(δ(v)) = {deg}, expected {expected}"
            )));
        }
    }

    let two = rat(2);
    // separated[u][v]: some narrow cut has u inside and v outside.
    let mut separated = alloc::vec![alloc::vec![false; n]; n];
    for u in graph.vertices() {
        if u == t {
            continue; // every narrow cut excludes t
        }
        for v in graph.vertices() {
            if v == u || v == s {
                continue; // every narrow cut contains s
            }
            let sources: VertexSet = [s, u].into_iter().collect();
            let sinks: VertexSet = [v, t].into_iter().collect();
            separated[u][v] = min_cut_separating(graph, x, &sources, &sinks)? < two;
        }
    }

    // Group vertices into levels and order the levels.
    let mut assigned = alloc::vec![false; n];
    let mut levels: Vec<VertexSet> = Vec::new();
    for u in graph.vertices() {
        if assigned[u] {
            continue;
        }
        let class: VertexSet = graph
            .vertices()
            .filter(|&v| v == u || (!separated[u][v] && !separated[v][u]))
            .collect();
        for &v in &class {
            if assigned[v] {
                return Err(Error::Inconsistency(
                    "level classes overlap; the narrow cuts do not form a chain".into(),
                ));
            }
            assigned[v] = true;
        }
        levels.push(class);
    }
    levels.sort_by(|a, b| {
        let (&u, &v) = (a.first().expect("nonempty"), b.first().expect("nonempty"));
        if u == v {
            core::cmp::Ordering::Equal
        } else if separated[u][v] {
            core::cmp::Ordering::Less
        } else {
            core::cmp::Ordering::Greater
        }
    });

    // The order must be consistent for every representative pair.
    for (i, a) in levels.iter().enumerate() {
        for b in levels.iter().skip(i + 1) {
            for &u in a {
                for &v in b {
                    if !separated[u][v] || separated[v][u] {
                        return Err(Error::Inconsistency(
                            "separation relation is not a total order on levels".into(),
                        ));
                    }
                }
            }
        }
    }

    if levels.first().map(|l| l.len() != 1 || !l.contains(&s)) != Some(false)
        || levels.last().map(|l| l.len() != 1 || !l.contains(&t)) != Some(false)
    {
        return Err(Error::Inconsistency(
            "chain must run from {s} to V ∖ {t}".into(),
        ));
    }

    // Prefixes of the level order are exactly the narrow cuts.
    let mut sets = Vec::with_capacity(levels.len() - 1);
    let mut prefix = VertexSet::new();
    for level in &levels[..levels.len() - 1] {
        prefix.extend(level.iter().copied());
        sets.push(prefix.clone());
    }
    let chain = Chain::new(sets, n)?;
    for (i, size) in chain.cut_sizes(graph, x)?.into_iter().enumerate() {
        if size >= two {
            return Err(Error::Inconsistency(format!(
                "derived prefix {i} has cut size {size}, not a narrow cut"
            )));
        }
    }
    Ok(chain)
}

/// The distinct narrow-cut sizes in decreasing order together with the
/// layer gaps λ_1, …, λ_ℓ satisfying 2 − λ_1 − … − λ_j = (j-th size).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerThresholds {
    sizes: Vec<Rational>,
    lambdas: Vec<Rational>,
}

impl LayerThresholds {
    /// Rebuilds thresholds from the layer gaps alone (as stored in
    /// decomposition files): all must be positive and sum to one.
    pub fn from_lambdas(lambdas: Vec<Rational>) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(Error::Input("at least one layer is required".into()));
        }
        let mut sizes = Vec::with_capacity(lambdas.len());
        let mut acc = rat(2);
        for (i, l) in lambdas.iter().enumerate() {
            if *l <= Rational::zero() {
                return Err(Error::Input(format!("layer gap {} is not positive", i + 1)));
            }
            acc -= l;
            sizes.push(acc.clone());
        }
        if acc != rat(1) {
            return Err(Error::Input("layer gaps must sum to one".into()));
        }
        Ok(LayerThresholds { sizes, lambdas })
    }

    pub fn layer_count(&self) -> usize {
        self.lambdas.len()
    }

    /// Distinct cut sizes, decreasing.
    pub fn sizes(&self) -> &[Rational] {
        &self.sizes
    }

    pub fn lambdas(&self) -> &[Rational] {
        &self.lambdas
    }

    /// λ_1 + … + λ_j for j = 1..ℓ; the last prefix is exactly 1.
    pub fn prefix_sums(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.lambdas.len());
        let mut acc = Rational::zero();
        for l in &self.lambdas {
            acc += l;
            out.push(acc.clone());
        }
        out
    }

    /// The size threshold 2 − λ_1 − … − λ_j of layer `j` (1-based):
    /// layer j admits the chain cuts of size at most this value.
    pub fn threshold(&self, j: usize) -> Rational {
        self.sizes[j - 1].clone()
    }

    /// The 1-based layer whose mass interval contains `mu`, i.e. the
    /// smallest j with λ_1 + … + λ_j > mu.
    pub fn layer_of_mass(&self, mu: &Rational) -> Option<usize> {
        let mut acc = Rational::zero();
        for (j, l) in self.lambdas.iter().enumerate() {
            acc += l;
            if &acc > mu {
                return Some(j + 1);
            }
        }
        None
    }
}

/// Computes the layer thresholds of a validated chain-point: distinct
/// cut sizes in decreasing order, with the smallest exactly one.
pub fn layer_thresholds(x: &EdgeVector, chain: &Chain, graph: &Graph) -> Result<LayerThresholds> {
    let mut sizes = chain.cut_sizes(graph, x)?;
    sizes.sort();
    sizes.dedup();
    sizes.reverse();
    match sizes.last() {
        Some(min) if *min == rat(1) => {}
        _ => {
            return Err(Error::Inconsistency(
                "smallest narrow cut size must be exactly 1".into(),
            ))
        }
    }
    if sizes.iter().any(|s| *s >= rat(2)) {
        return Err(Error::Inconsistency(
            "narrow cut sizes must stay below 2".into(),
        ));
    }
    let mut lambdas = Vec::with_capacity(sizes.len());
    let mut prev = rat(2);
    for size in &sizes {
        lambdas.push(&prev - size);
        prev = size.clone();
    }
    Ok(LayerThresholds { sizes, lambdas })
}

/// Convenience constructor: the chain on a path-like vertex order whose
/// members are the prefixes of `order` except the full set.
pub fn prefix_chain(order: &[Vertex], vertex_count: usize) -> Result<Chain> {
    let mut sets = Vec::new();
    let mut prefix = BTreeSet::new();
    for &v in &order[..order.len() - 1] {
        prefix.insert(v);
        sets.push(prefix.clone());
    }
    Chain::new(sets, vertex_count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fixture_b, fixture_c};
    use crate::rational::frac;
    use alloc::vec;

    fn vs(vals: &[Vertex]) -> VertexSet {
        vals.iter().copied().collect()
    }

    fn fixture_c_chain() -> Chain {
        Chain::new(vec![vs(&[0]), vs(&[0, 1]), vs(&[0, 1, 2])], 4).unwrap()
    }

    #[test]
    fn chain_construction_rules() {
        assert!(Chain::new(vec![], 4).is_err());
        assert!(Chain::new(vec![vs(&[0, 1, 2, 3])], 4).is_err());
        assert!(Chain::new(vec![vs(&[0, 1]), vs(&[0])], 4).is_err());
        assert!(Chain::new(vec![vs(&[0]), vs(&[1, 2])], 4).is_err());
        assert!(Chain::new(vec![vs(&[0]), vs(&[0, 4])], 4).is_err());
    }

    #[test]
    fn levels_examples() {
        let (g, _) = fixture_b();
        let chain = Chain::new(vec![vs(&[0]), vs(&[0, 1, 2])], 4).unwrap();
        let levels = levels_of(&chain, &g).unwrap();
        assert_eq!(levels.levels(), &[vs(&[0]), vs(&[1, 2]), vs(&[3])]);

        let (g, _) = fixture_c();
        let levels = levels_of(&fixture_c_chain(), &g).unwrap();
        assert_eq!(levels.levels(), &[vs(&[0]), vs(&[1]), vs(&[2]), vs(&[3])]);

        let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let chain = Chain::new(vec![vs(&[0])], 3).unwrap();
        let levels = levels_of(&chain, &path).unwrap();
        assert_eq!(levels.levels(), &[vs(&[0]), vs(&[1, 2])]);
    }

    #[test]
    fn gao_edges_examples() {
        let (g, _) = fixture_c();
        let chain = fixture_c_chain();
        assert_eq!(gao_edges(&chain, &g, 0).unwrap(), [0].into_iter().collect());
        assert_eq!(gao_edges(&chain, &g, 1).unwrap(), [2].into_iter().collect());
        assert_eq!(gao_edges(&chain, &g, 2).unwrap(), [4].into_iter().collect());

        // Single-cut chain on a triangle: both edges at the tip are
        // Gao-edges of its only cut.
        let tri = Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let chain = Chain::new(vec![vs(&[0])], 3).unwrap();
        assert_eq!(
            gao_edges(&chain, &tri, 0).unwrap(),
            [0, 1].into_iter().collect()
        );
    }

    #[test]
    fn gao_tree_examples() {
        let (g, _) = fixture_c();
        let chain = fixture_c_chain();
        let t1 = Tree::new(&g, [0, 2, 4].into_iter().collect()).unwrap();
        assert!(is_gao_tree(&t1, &chain, &g).unwrap());
        let t2 = Tree::new(&g, [1, 2, 3].into_iter().collect()).unwrap();
        assert!(!is_gao_tree(&t2, &chain, &g).unwrap());
        // For the single-layer subchain {V_0, V_2} it is one.
        let sub = Chain::new(vec![vs(&[0]), vs(&[0, 1, 2])], 4).unwrap();
        assert!(is_gao_tree(&t2, &sub, &g).unwrap());
    }

    #[test]
    fn validate_fixture_c() {
        let (g, x) = fixture_c();
        let report = validate_chain_point(&x, &fixture_c_chain(), &g).unwrap();
        assert!(report.is_chain_point(), "{:?}", report);
    }

    #[test]
    fn validate_rejects_wrong_end_cut() {
        let (g, x) = fixture_c();
        let chain = Chain::new(vec![vs(&[0, 1])], 4).unwrap();
        let report = validate_chain_point(&x, &chain, &g).unwrap();
        assert_eq!(
            report.violations,
            vec![ChainPointViolation::EndCutSize {
                index: 0,
                size: frac(3, 2)
            }]
        );
    }

    #[test]
    fn validate_tree_indicator() {
        let (g, x) = crate::fixtures::fixture_a();
        let chain = Chain::new(vec![vs(&[0])], 4).unwrap();
        assert!(validate_chain_point(&x, &chain, &g)
            .unwrap()
            .is_chain_point());
    }

    #[test]
    fn derive_chain_examples() {
        let (g, x) = fixture_b();
        let chain = derive_chain(&x, &g, 0, 3).unwrap();
        assert_eq!(chain.sets(), &[vs(&[0]), vs(&[0, 1, 2])]);

        let (g, x) = fixture_c();
        let chain = derive_chain(&x, &g, 0, 3).unwrap();
        assert_eq!(chain.sets(), &[vs(&[0]), vs(&[0, 1]), vs(&[0, 1, 2])]);
        assert_eq!(
            chain.cut_sizes(&g, &x).unwrap(),
            vec![rat(1), frac(3, 2), rat(1)]
        );

        let (g, x) = crate::fixtures::fixture_a();
        let chain = derive_chain(&x, &g, 0, 3).unwrap();
        assert_eq!(chain.sets(), &[vs(&[0]), vs(&[0, 1]), vs(&[0, 1, 2])]);
    }

    #[test]
    fn derive_chain_rejects_bad_degrees() {
        let (g, _) = fixture_c();
        let y = EdgeVector::from_entries([(0, rat(1)), (1, rat(1))]).unwrap();
        assert!(matches!(derive_chain(&y, &g, 0, 3), Err(Error::Input(_))));
    }

    #[test]
    fn thresholds_examples() {
        let (g, x) = fixture_c();
        let th = layer_thresholds(&x, &fixture_c_chain(), &g).unwrap();
        assert_eq!(th.sizes(), &[frac(3, 2), rat(1)]);
        assert_eq!(th.lambdas(), &[frac(1, 2), frac(1, 2)]);
        assert_eq!(th.layer_count(), 2);
        assert_eq!(th.prefix_sums(), vec![frac(1, 2), rat(1)]);
        assert_eq!(th.layer_of_mass(&rat(0)), Some(1));
        assert_eq!(th.layer_of_mass(&frac(1, 2)), Some(2));
        assert_eq!(th.layer_of_mass(&frac(3, 4)), Some(2));
        assert_eq!(th.layer_of_mass(&rat(1)), None);

        let (g, x) = fixture_b();
        let chain = derive_chain(&x, &g, 0, 3).unwrap();
        let th = layer_thresholds(&x, &chain, &g).unwrap();
        assert_eq!(th.sizes(), &[rat(1)]);
        assert_eq!(th.lambdas(), &[rat(1)]);
    }

    #[test]
    fn subchain_examples() {
        let (g, x) = fixture_c();
        let chain = fixture_c_chain();
        let sub = chain.subchain_at(&g, &x, &rat(1)).unwrap();
        assert_eq!(sub.sets(), &[vs(&[0]), vs(&[0, 1, 2])]);
        let full = chain.subchain_at(&g, &x, &frac(3, 2)).unwrap();
        assert_eq!(full.sets(), chain.sets());
    }
}
