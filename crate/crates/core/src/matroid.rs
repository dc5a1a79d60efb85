//! The two matroids of the decomposition: the graphic matroid of the
//! host graph and the Gao-tree matroid of a chain: the direct sum of
//! the cycle matroids of the level sets and one-element uniform
//! matroids on each cut's Gao-edges. Edges crossing two or more cuts
//! are loops of the latter.
//!
//! Also home to the two Gao-tree builders: the greedy maximum-weight
//! base and the constructive builder that additionally spans every
//! member of a laminar family of tight sets.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::chain::{levels_of, Chain, Levels};
use crate::decompose::LaminarFamily;
use crate::error::{Error, Result};
use crate::graph::{Dsu, EdgeId, EdgeSet, EdgeVector, Graph, Tree, VertexSet};
use crate::rational::Rational;

/// Where an edge sits relative to the chain's level partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeClass {
    /// Both endpoints in level `i`: element of that level's cycle matroid.
    Intra(usize),
    /// Joins consecutive levels `q` and `q+1`: Gao-edge of cut `q`.
    Gao(usize),
    /// Crosses two or more cuts: a loop, independent in nothing.
    Loop,
}

/// The Gao-tree matroid of a chain, instantiated on a ground edge set
/// (the support of the current point, or all edges).
#[derive(Debug, Clone)]
pub struct GaoMatroid {
    levels: Levels,
    class: Vec<EdgeClass>,
    ground: EdgeSet,
    cut_count: usize,
}

impl GaoMatroid {
    pub fn new(graph: &Graph, chain: &Chain, ground: EdgeSet) -> Result<Self> {
        let levels = levels_of(chain, graph)?;
        let mut class = Vec::with_capacity(graph.edge_count());
        for (_, (u, v)) in graph.edges() {
            let lo = levels.level_of(u).min(levels.level_of(v));
            class.push(match levels.cuts_crossed(u, v) {
                0 => EdgeClass::Intra(lo),
                1 => EdgeClass::Gao(lo),
                _ => EdgeClass::Loop,
            });
        }
        for &e in &ground {
            if e >= graph.edge_count() {
                return Err(Error::Input(format!("ground edge {e} not in the graph")));
            }
        }
        Ok(GaoMatroid {
            levels,
            class,
            ground,
            cut_count: chain.len(),
        })
    }

    pub fn ground(&self) -> &EdgeSet {
        &self.ground
    }

    pub fn levels(&self) -> &Levels {
        &self.levels
    }

    pub fn cut_count(&self) -> usize {
        self.cut_count
    }

    pub fn class_of(&self, e: EdgeId) -> EdgeClass {
        self.class[e]
    }

    /// Gao-edges of cut `q` within the ground set, ascending.
    pub fn ground_gao_edges(&self, q: usize) -> impl Iterator<Item = EdgeId> + '_ {
        self.ground
            .iter()
            .copied()
            .filter(move |&e| self.class[e] == EdgeClass::Gao(q))
    }

    /// Rank in the direct sum: per-level forest ranks plus the number
    /// of cuts whose Gao-edges are hit; loops contribute nothing.
    pub fn rank(&self, graph: &Graph, x: &EdgeSet) -> usize {
        let mut cuts_hit = BTreeSet::new();
        let mut per_level: BTreeMap<usize, EdgeSet> = BTreeMap::new();
        for &e in x {
            match self.class[e] {
                EdgeClass::Intra(i) => {
                    per_level.entry(i).or_default().insert(e);
                }
                EdgeClass::Gao(q) => {
                    cuts_hit.insert(q);
                }
                EdgeClass::Loop => {}
            }
        }
        let forest_rank: usize = per_level
            .values()
            .map(|edges| rank_graphic(graph, edges))
            .sum();
        forest_rank + cuts_hit.len()
    }

    /// Independent iff loop-free, a forest within every level, and at
    /// most one Gao-edge per cut.
    pub fn is_independent(&self, graph: &Graph, x: &EdgeSet) -> bool {
        let mut dsu = Dsu::new(graph.vertex_count());
        let mut cuts_used = BTreeSet::new();
        for &e in x {
            match self.class[e] {
                EdgeClass::Loop => return false,
                EdgeClass::Gao(q) => {
                    if !cuts_used.insert(q) {
                        return false;
                    }
                }
                EdgeClass::Intra(_) => {
                    let (u, v) = graph.endpoints(e);
                    if !dsu.union(u, v) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Graphic-matroid rank: over the vertices covered by `X`, the covered
/// count minus the number of connected components.
pub fn rank_graphic(graph: &Graph, x: &EdgeSet) -> usize {
    let mut covered = VertexSet::new();
    for &e in x {
        let (u, v) = graph.endpoints(e);
        covered.insert(u);
        covered.insert(v);
    }
    if covered.is_empty() {
        return 0;
    }
    let components = graph.components(&covered, x).len();
    covered.len() - components
}

/// Greedy maximum-weight base of the Gao-tree matroid over its ground
/// set, ties broken by smallest edge identifier. Errors when the ground
/// set has no base of full rank |V| - 1.
pub fn max_weight_gao_base(
    matroid: &GaoMatroid,
    graph: &Graph,
    weights: &BTreeMap<EdgeId, Rational>,
) -> Result<Tree> {
    let zero = Rational::from_integer(0.into());
    let mut order: Vec<EdgeId> = matroid.ground().iter().copied().collect();
    order.sort_by(|a, b| {
        let (wa, wb) = (
            weights.get(a).unwrap_or(&zero),
            weights.get(b).unwrap_or(&zero),
        );
        wb.cmp(wa).then(a.cmp(b))
    });

    let mut chosen = EdgeSet::new();
    let mut dsu = Dsu::new(graph.vertex_count());
    let mut cuts_used = alloc::vec![false; matroid.cut_count()];
    for e in order {
        match matroid.class_of(e) {
            EdgeClass::Loop => {}
            EdgeClass::Gao(q) => {
                if !cuts_used[q] {
                    cuts_used[q] = true;
                    chosen.insert(e);
                }
            }
            EdgeClass::Intra(_) => {
                let (u, v) = graph.endpoints(e);
                if dsu.union(u, v) {
                    chosen.insert(e);
                }
            }
        }
    }
    if chosen.len() + 1 != graph.vertex_count() {
        return Err(Error::NoGaoTree);
    }
    Tree::new(graph, chosen)
}

/// Builds a Gao-tree inside the support of `x` that spans every member
/// of the laminar family: `|T ∩ E(U)| = |U| - 1` for each tight `U`.
///
/// Members are processed smallest first. Inside a member, each level
/// piece is connected by intra-level support edges (connectivity of the
/// pieces is guaranteed for tight sets), then one Gao-edge joins every
/// pair of consecutive occupied levels whose cut no selected edge
/// crosses yet. Edges are always tried in ascending identifier order.
pub fn gao_tree_spanning_laminar(
    graph: &Graph,
    x: &EdgeVector,
    chain: &Chain,
    family: &LaminarFamily,
) -> Result<Tree> {
    family.check_tight(graph, x)?;
    let support = x.support();
    let matroid = GaoMatroid::new(graph, chain, support.clone())?;
    let levels = matroid.levels();

    // Support edges grouped for the member loops below.
    let mut intra_by_level: BTreeMap<usize, Vec<EdgeId>> = BTreeMap::new();
    let mut gao_by_cut: BTreeMap<usize, Vec<EdgeId>> = BTreeMap::new();
    for &e in &support {
        match matroid.class_of(e) {
            EdgeClass::Intra(i) => intra_by_level.entry(i).or_default().push(e),
            EdgeClass::Gao(q) => gao_by_cut.entry(q).or_default().push(e),
            EdgeClass::Loop => {}
        }
    }

    let mut members: Vec<&VertexSet> = family.members().iter().collect();
    members.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));

    let mut chosen = EdgeSet::new();
    let mut dsu = Dsu::new(graph.vertex_count());
    let mut cut_used = alloc::vec![false; matroid.cut_count()];

    for member in members {
        // Occupied levels must form a contiguous interval.
        let occupied: Vec<usize> = (0..levels.count())
            .filter(|&i| levels.levels()[i].iter().any(|v| member.contains(v)))
            .collect();
        let lo = occupied[0];
        let hi = *occupied.last().expect("member is nonempty");
        if occupied.len() != hi - lo + 1 {
            return Err(Error::TheoryViolation(format!(
                "levels meeting {member:?} do not form an interval; the set cannot be tight"
            )));
        }

        // Connect each level piece with intra-level support edges.
        for &i in &occupied {
            if let Some(edges) = intra_by_level.get(&i) {
                for &e in edges {
                    let (u, v) = graph.endpoints(e);
                    if member.contains(&u) && member.contains(&v) && dsu.union(u, v) {
                        chosen.insert(e);
                    }
                }
            }
            // The whole piece must now sit in one component.
            let piece: Vec<_> = levels.levels()[i]
                .iter()
                .filter(|v| member.contains(v))
                .collect();
            let root = dsu.find(*piece[0]);
            if piece.iter().any(|&&v| dsu.find(v) != root) {
                return Err(Error::TheoryViolation(format!(
                    "level {i} restricted to {member:?} is disconnected in the support"
                )));
            }
        }

        // One Gao-edge per consecutive occupied level pair, unless an
        // earlier member already crossed that cut.
        for &i in &occupied[..occupied.len() - 1] {
            if cut_used[i] {
                let (a, b) = (&levels.levels()[i], &levels.levels()[i + 1]);
                let u = *a
                    .iter()
                    .find(|v| member.contains(v))
                    .expect("occupied level");
                let v = *b
                    .iter()
                    .find(|v| member.contains(v))
                    .expect("occupied level");
                if !dsu.same(u, v) {
                    return Err(Error::TheoryViolation(format!(
                        "cut {i} is already crossed outside {member:?}; disjoint tight sets cannot share a narrow cut"
                    )));
                }
                continue;
            }
            let candidates = gao_by_cut.get(&i).map(Vec::as_slice).unwrap_or(&[]);
            let edge = candidates.iter().copied().find(|&e| {
                let (u, v) = graph.endpoints(e);
                member.contains(&u) && member.contains(&v)
            });
            match edge {
                Some(e) => {
                    let (u, v) = graph.endpoints(e);
                    let merged = dsu.union(u, v);
                    debug_assert!(merged, "an unused cut cannot be crossed yet");
                    cut_used[i] = true;
                    chosen.insert(e);
                }
                None => {
                    return Err(Error::TheoryViolation(format!(
                        "no support Gao-edge joins levels {i} and {} inside {member:?}",
                        i + 1
                    )))
                }
            }
        }
    }

    debug_assert!(
        cut_used.iter().all(|&u| u),
        "the family contains V, so all cuts are crossed"
    );
    Tree::new(graph, chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::Chain;
    use crate::fixtures::{fixture_b, fixture_c};
    use crate::rational::rat;
    use alloc::vec;

    fn vs(vals: &[usize]) -> VertexSet {
        vals.iter().copied().collect()
    }

    fn fixture_c_chain() -> Chain {
        Chain::new(vec![vs(&[0]), vs(&[0, 1]), vs(&[0, 1, 2])], 4).unwrap()
    }

    fn c_matroid_on_support() -> (Graph, EdgeVector, GaoMatroid) {
        let (g, x) = fixture_c();
        let m = GaoMatroid::new(&g, &fixture_c_chain(), x.support()).unwrap();
        (g, x, m)
    }

    #[test]
    fn edge_classification() {
        let (_, _, m) = c_matroid_on_support();
        assert_eq!(m.class_of(0), EdgeClass::Gao(0)); // sa
        assert_eq!(m.class_of(1), EdgeClass::Loop); // sb spans two cuts
        assert_eq!(m.class_of(2), EdgeClass::Gao(1)); // ab
        assert_eq!(m.class_of(3), EdgeClass::Loop); // at
        assert_eq!(m.class_of(4), EdgeClass::Gao(2)); // bt
        assert_eq!(m.class_of(5), EdgeClass::Loop); // st spans all three
    }

    #[test]
    fn rank_graphic_examples() {
        let (g, _) = fixture_c();
        assert_eq!(rank_graphic(&g, &[0, 2, 4].into_iter().collect()), 3);
        // Triangle s-a-b: one cycle.
        assert_eq!(rank_graphic(&g, &[0, 1, 2].into_iter().collect()), 2);
        // Spec example: {sa, sb, ab, at} covers everything, one cycle.
        assert_eq!(rank_graphic(&g, &[0, 1, 2, 3].into_iter().collect()), 3);
        assert_eq!(rank_graphic(&g, &EdgeSet::new()), 0);
    }

    #[test]
    fn rank_gao_examples() {
        let (g, _, m) = c_matroid_on_support();
        assert_eq!(m.rank(&g, &[0, 2, 4].into_iter().collect()), 3);
        assert_eq!(m.rank(&g, &[1].into_iter().collect()), 0);
        assert_eq!(m.rank(&g, &[0, 2].into_iter().collect()), 2);
        assert_eq!(rank_graphic(&g, &[1].into_iter().collect()), 1);
    }

    #[test]
    fn independence_examples() {
        let (g, _, m) = c_matroid_on_support();
        assert!(m.is_independent(&g, &EdgeSet::new()));
        assert!(m.is_independent(&g, &[0, 2, 4].into_iter().collect()));
        assert!(!m.is_independent(&g, &[0, 5].into_iter().collect()));
        assert!(!m.is_independent(&g, &[1, 3].into_iter().collect()));
    }

    #[test]
    fn max_weight_base_fixture_c() {
        let (g, _, m) = c_matroid_on_support();
        let tree = max_weight_gao_base(&m, &g, &BTreeMap::new()).unwrap();
        assert_eq!(*tree.edges(), [0, 2, 4].into_iter().collect::<EdgeSet>());

        // Huge weight pins a specific Gao-tree.
        let weights: BTreeMap<EdgeId, Rational> = [(0, rat(10)), (2, rat(10)), (4, rat(10))]
            .into_iter()
            .collect();
        let tree = max_weight_gao_base(&m, &g, &weights).unwrap();
        assert_eq!(*tree.edges(), [0, 2, 4].into_iter().collect::<EdgeSet>());
    }

    #[test]
    fn max_weight_base_rank_deficient() {
        let (g, _) = fixture_c();
        // Drop the only Gao-edge of cut 0 from the ground set.
        let ground: EdgeSet = [1, 2, 3, 4].into_iter().collect();
        let m = GaoMatroid::new(&g, &fixture_c_chain(), ground).unwrap();
        assert_eq!(
            max_weight_gao_base(&m, &g, &BTreeMap::new()),
            Err(Error::NoGaoTree)
        );
    }

    #[test]
    fn laminar_builder_fixture_c() {
        let (g, x) = fixture_c();
        let chain = fixture_c_chain();
        let mut family = LaminarFamily::new(g.vertex_count());
        let tree = gao_tree_spanning_laminar(&g, &x, &chain, &family).unwrap();
        assert_eq!(*tree.edges(), [0, 2, 4].into_iter().collect::<EdgeSet>());

        // Singletons impose nothing.
        for v in g.vertices() {
            family = crate::decompose::uncross_insert(&family, &vs(&[v]), &g, &x).unwrap();
        }
        let tree = gao_tree_spanning_laminar(&g, &x, &chain, &family).unwrap();
        assert_eq!(*tree.edges(), [0, 2, 4].into_iter().collect::<EdgeSet>());
    }

    #[test]
    fn laminar_builder_fixture_b() {
        let (g, x) = fixture_b();
        let chain = Chain::new(vec![vs(&[0]), vs(&[0, 1, 2])], 4).unwrap();
        let family = LaminarFamily::new(g.vertex_count());
        let family = crate::decompose::uncross_insert(&family, &vs(&[1, 2]), &g, &x).unwrap();
        let tree = gao_tree_spanning_laminar(&g, &x, &chain, &family).unwrap();
        // Must contain ab (edge 2) since {a, b} is tight.
        assert!(tree.contains(2));
        assert!(is_gao_tree_checked(&g, &chain, &tree));
        // Smallest-identifier ties: sa for the first cut, at for the second.
        assert_eq!(*tree.edges(), [0, 2, 3].into_iter().collect::<EdgeSet>());
    }

    fn is_gao_tree_checked(g: &Graph, chain: &Chain, tree: &Tree) -> bool {
        crate::chain::is_gao_tree(tree, chain, g).unwrap()
    }
}
