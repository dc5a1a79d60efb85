//! Independent brute-force implementations of the structural claims,
//! usable as ground truth on small instances, plus the seeded corpus of
//! random chain-points the test suites sweep over.
//!
//! Everything here is definitional: subset enumeration, exhaustive
//! independence search, and a determinant-based tree count that
//! cross-checks the enumeration.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::chain::{layer_thresholds, validate_chain_point, Chain};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, EdgeVector, Graph, Tree, Vertex, VertexSet};
use crate::matroid::{rank_graphic, GaoMatroid};
use crate::rational::{rat, Rational};

/// Caps on the exhaustive procedures; they refuse larger inputs.
#[derive(Debug, Clone, Copy)]
pub struct SizeGuard {
    pub max_vertices: usize,
    pub max_edges_for_subset_enum: usize,
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard {
            max_vertices: 8,
            max_edges_for_subset_enum: 18,
        }
    }
}

impl SizeGuard {
    fn check_vertices(&self, n: usize) -> Result<()> {
        if n > self.max_vertices {
            return Err(Error::GuardExceeded {
                limit: self.max_vertices,
                requested: n,
            });
        }
        Ok(())
    }

    fn check_edges(&self, m: usize) -> Result<()> {
        if m > self.max_edges_for_subset_enum {
            return Err(Error::GuardExceeded {
                limit: self.max_edges_for_subset_enum,
                requested: m,
            });
        }
        Ok(())
    }
}

/// All spanning trees, in lexicographic order of their sorted edge-id
/// tuples.
pub fn enumerate_spanning_trees(graph: &Graph, guard: &SizeGuard) -> Result<Vec<Tree>> {
    guard.check_vertices(graph.vertex_count())?;
    guard.check_edges(graph.edge_count())?;
    let n = graph.vertex_count();
    let m = graph.edge_count();
    // n = 1 falls through: the empty edge set is its one spanning tree.
    let k = n - 1;
    if m < k {
        return Ok(alloc::vec![]);
    }
    let mut trees = Vec::new();
    // Lexicographic k-combinations of 0..m.
    let mut pick: Vec<usize> = (0..k).collect();
    loop {
        let edges: EdgeSet = pick.iter().copied().collect();
        if graph.is_spanning_tree(&edges) {
            trees.push(Tree::new(graph, edges)?);
        }
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(trees);
            }
            i -= 1;
            if pick[i] != i + m - k {
                break;
            }
        }
        pick[i] += 1;
        for j in i + 1..k {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

/// Spanning-tree count via the Laplacian minor determinant, evaluated
/// with exact rational elimination. A second, independent tree counter.
#[allow(clippy::needless_range_loop)] // two rows of one matrix in flight
pub fn matrix_tree_count(graph: &Graph, guard: &SizeGuard) -> Result<Rational> {
    guard.check_vertices(graph.vertex_count())?;
    let n = graph.vertex_count();
    if n == 1 {
        return Ok(rat(1));
    }
    let dim = n - 1;
    let mut a = alloc::vec![alloc::vec![Rational::zero(); dim]; dim];
    for (_, (u, v)) in graph.edges() {
        // Laplacian with row/column 0 deleted.
        if u > 0 {
            a[u - 1][u - 1] += rat(1);
        }
        if v > 0 {
            a[v - 1][v - 1] += rat(1);
        }
        if u > 0 && v > 0 {
            a[u - 1][v - 1] -= rat(1);
            a[v - 1][u - 1] -= rat(1);
        }
    }
    let mut det = Rational::one();
    for col in 0..dim {
        let pivot = (col..dim).find(|&r| !a[r][col].is_zero());
        let Some(pivot) = pivot else {
            return Ok(Rational::zero());
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= &a[col][col];
        let inv = a[col][col].clone();
        for r in col + 1..dim {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &inv;
            for c in col..dim {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    debug_assert!(det.is_integer() && !det.is_negative());
    Ok(det)
}

/// Membership in Sp(G) checked directly against every subset.
pub fn sp_membership_bf(graph: &Graph, y: &EdgeVector, guard: &SizeGuard) -> Result<bool> {
    guard.check_vertices(graph.vertex_count())?;
    if y.total() != rat(graph.vertex_count() as i64 - 1) {
        return Ok(false);
    }
    for u in nonempty_subsets(graph.vertex_count()) {
        if y.sum_over(&graph.induced_edges(&u)) > rat(u.len() as i64 - 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exhaustive matroid rank: the largest subset of `x` satisfying the
/// independence predicate.
pub fn rank_bf<F: Fn(&EdgeSet) -> bool>(
    is_independent: F,
    x: &EdgeSet,
    guard: &SizeGuard,
) -> Result<usize> {
    guard.check_edges(x.len())?;
    let ids: Vec<EdgeId> = x.iter().copied().collect();
    let mut best = 0;
    for mask in 0u32..(1u32 << ids.len()) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let subset: EdgeSet = ids
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        if is_independent(&subset) {
            best = size;
        }
    }
    Ok(best)
}

/// Minimizes `lambda * p(X) + (1 - lambda) * r(X) - x(X)` over all
/// X ⊆ E; the condition holds iff the minimum is nonnegative. Returns
/// the verdict and a minimizing subset.
pub fn lemma3_condition_bf(
    graph: &Graph,
    chain: &Chain,
    x: &EdgeVector,
    lambda: &Rational,
    guard: &SizeGuard,
) -> Result<(bool, EdgeSet)> {
    guard.check_edges(graph.edge_count())?;
    let matroid = GaoMatroid::new(graph, chain, graph.all_edges())?;
    let m = graph.edge_count();
    let one_minus = rat(1) - lambda;

    let mut worst_value: Option<Rational> = None;
    let mut worst_set = EdgeSet::new();
    for mask in 0u32..(1u32 << m) {
        let subset: EdgeSet = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let p = rat(matroid.rank(graph, &subset) as i64);
        let r = rat(rank_graphic(graph, &subset) as i64);
        let value = lambda * p + &one_minus * r - x.sum_over(&subset);
        match &worst_value {
            Some(w) if &value >= w => {}
            _ => {
                worst_value = Some(value);
                worst_set = subset;
            }
        }
    }
    let worst = worst_value.expect("the empty set is always enumerated");
    Ok((worst >= Rational::zero(), worst_set))
}

/// The chain of narrow cuts by direct enumeration of all candidate
/// sets A with s ∈ A, t ∉ A and x(δ(A)) < 2. Errors when they fail to
/// be pairwise nested.
pub fn derive_chain_bf(
    graph: &Graph,
    x: &EdgeVector,
    s: Vertex,
    t: Vertex,
    guard: &SizeGuard,
) -> Result<Chain> {
    guard.check_vertices(graph.vertex_count())?;
    let two = rat(2);
    let mut narrow: Vec<VertexSet> = Vec::new();
    for u in nonempty_subsets(graph.vertex_count()) {
        if !u.contains(&s) || u.contains(&t) {
            continue;
        }
        if x.sum_over(&graph.cut(&u)?) < two {
            narrow.push(u);
        }
    }
    narrow.sort_by_key(|u| u.len());
    for pair in narrow.windows(2) {
        if !pair[0].is_subset(&pair[1]) {
            return Err(Error::Inconsistency(
                "narrow cuts are not pairwise nested; x is not a valid point".into(),
            ));
        }
    }
    Chain::new(narrow, graph.vertex_count())
}

/// Every nonempty tight set: x(E(U)) = |U| - 1.
pub fn tight_sets_bf(graph: &Graph, x: &EdgeVector, guard: &SizeGuard) -> Result<Vec<VertexSet>> {
    guard.check_vertices(graph.vertex_count())?;
    Ok(nonempty_subsets(graph.vertex_count())
        .filter(|u| x.sum_over(&graph.induced_edges(u)) == rat(u.len() as i64 - 1))
        .collect())
}

/// Modular-excess maximization by enumeration: the exact optimum over
/// nonempty sets (containing `forced` if given) and every maximizer.
pub fn modular_excess_bf(
    graph: &Graph,
    y: &EdgeVector,
    kappa: &Rational,
    forced: Option<Vertex>,
    guard: &SizeGuard,
) -> Result<(Rational, Vec<VertexSet>)> {
    guard.check_vertices(graph.vertex_count())?;
    let mut best: Option<Rational> = None;
    let mut maximizers = Vec::new();
    for u in nonempty_subsets(graph.vertex_count()) {
        if let Some(w) = forced {
            if !u.contains(&w) {
                continue;
            }
        }
        let value = y.sum_over(&graph.induced_edges(&u)) - kappa * rat(u.len() as i64);
        match &best {
            Some(b) if &value < b => {}
            Some(b) if &value == b => maximizers.push(u),
            _ => {
                best = Some(value);
                maximizers = alloc::vec![u];
            }
        }
    }
    Ok((best.expect("some nonempty subset exists"), maximizers))
}

/// The exact largest peel fraction by constraint enumeration: the
/// minimum of the tree-edge values and of every set constraint's
/// slack ratio.
pub fn lambda_max_bf(
    graph: &Graph,
    x: &EdgeVector,
    tree: &Tree,
    guard: &SizeGuard,
) -> Result<Rational> {
    guard.check_vertices(graph.vertex_count())?;
    if x.is_indicator_of(tree) {
        return Ok(rat(1));
    }
    let mut best = tree
        .edges()
        .iter()
        .map(|&e| x.get(e))
        .min()
        .expect("tree is nonempty");
    for u in nonempty_subsets(graph.vertex_count()) {
        let inside = graph.induced_edges(&u);
        let size = rat(u.len() as i64 - 1);
        let slope = &size - rat(inside.intersection(tree.edges()).count() as i64);
        if slope <= Rational::zero() {
            continue;
        }
        let room = &size - x.sum_over(&inside);
        let bound = room / slope;
        if bound < best {
            best = bound;
        }
    }
    Ok(best)
}

fn nonempty_subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    (1u32..(1u32 << n)).map(move |mask| (0..n).filter(|v| mask >> v & 1 == 1).collect())
}

/// Exhaustively checks the structural facts a chain-point must satisfy,
/// over every tight set U and every union S of consecutive levels:
///
/// - the levels meeting a tight U form a contiguous interval;
/// - the support subgraph induced on S ∩ U is connected when nonempty;
/// - |S| - 2 < x(E(S)) ≤ |S| - 1;
/// - on the support, the Gao-matroid and graphic ranks of E(U) both
///   equal |U| - 1, and the laminar builder run with {V, U} returns a
///   Gao-tree with exactly |U| - 1 edges inside U;
/// - the Gao-matroid rank never exceeds the graphic rank.
pub fn check_structural_claims(
    graph: &Graph,
    x: &EdgeVector,
    chain: &Chain,
    guard: &SizeGuard,
) -> Result<()> {
    guard.check_vertices(graph.vertex_count())?;
    let support = x.support();
    let levels = crate::chain::levels_of(chain, graph)?;
    let matroid = GaoMatroid::new(graph, chain, support.clone())?;
    let claim = |ok: bool, msg: alloc::string::String| -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::TheoryViolation(msg))
        }
    };

    // Unions of consecutive levels, including single levels and V.
    let mut unions: Vec<VertexSet> = Vec::new();
    for a in 0..levels.count() {
        let mut s = VertexSet::new();
        for b in a..levels.count() {
            s.extend(levels.levels()[b].iter().copied());
            unions.push(s.clone());
        }
    }

    for s in &unions {
        let value = x.sum_over(&graph.induced_edges(s));
        let size = rat(s.len() as i64);
        claim(
            value > &size - rat(2) && value <= &size - rat(1),
            alloc::format!("x(E(S)) = {value} outside (|S|-2, |S|-1] for S = {s:?}"),
        )?;
    }

    let tight = tight_sets_bf(graph, x, guard)?;
    for u in &tight {
        let occupied: Vec<usize> = (0..levels.count())
            .filter(|&i| levels.levels()[i].iter().any(|v| u.contains(v)))
            .collect();
        claim(
            occupied.windows(2).all(|w| w[1] - w[0] == 1),
            alloc::format!("levels meeting tight {u:?} are not an interval"),
        )?;

        for s in &unions {
            let piece: VertexSet = s.intersection(u).copied().collect();
            if piece.is_empty() {
                continue;
            }
            let inside: EdgeSet = graph
                .induced_edges(&piece)
                .intersection(&support)
                .copied()
                .collect();
            claim(
                graph.components(&piece, &inside).len() == 1,
                alloc::format!("support on S ∩ U = {piece:?} is disconnected"),
            )?;
        }

        let inside: EdgeSet = graph
            .induced_edges(u)
            .intersection(&support)
            .copied()
            .collect();
        let expected = u.len() - 1;
        let p = matroid.rank(graph, &inside);
        let r = rank_graphic(graph, &inside);
        claim(
            p == expected && r == expected,
            alloc::format!("ranks of E(U) for tight {u:?}: p = {p}, r = {r}, expected {expected}"),
        )?;

        let family = crate::decompose::uncross_insert(
            &crate::decompose::LaminarFamily::new(graph.vertex_count()),
            u,
            graph,
            x,
        )?;
        let tree = crate::matroid::gao_tree_spanning_laminar(graph, x, chain, &family)?;
        claim(
            crate::chain::is_gao_tree(&tree, chain, graph)?,
            alloc::format!("builder output is not a Gao-tree for tight {u:?}"),
        )?;
        claim(
            tree.edges().intersection(&graph.induced_edges(u)).count() == expected,
            alloc::format!("builder tree does not span tight {u:?}"),
        )?;
    }

    // p ≤ r on every support subset when small enough, else on the
    // tight-set edge sets checked above.
    if support.len() <= 12 {
        let ids: Vec<EdgeId> = support.iter().copied().collect();
        for mask in 0u32..(1u32 << ids.len()) {
            let subset: EdgeSet = ids
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let p = matroid.rank(graph, &subset);
            let r = rank_graphic(graph, &subset);
            claim(
                p <= r,
                alloc::format!("p(X) = {p} > r(X) = {r} for X = {subset:?}"),
            )?;
        }
    }
    Ok(())
}

/// Deterministic splitmix64; the corpus and every randomized sweep
/// draw from it so runs with equal seeds are identical.
#[derive(Debug, Clone)]
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            items.swap(i, self.below(i + 1));
        }
    }
}

/// One random chain-point: the instance graph carries only the support
/// edges; `source_sink` is present when the point satisfies the s-t
/// degree constraints and its chain was derived rather than prescribed.
#[derive(Debug, Clone)]
pub struct CorpusInstance {
    pub graph: Graph,
    pub x: EdgeVector,
    pub chain: Chain,
    pub source_sink: Option<(Vertex, Vertex)>,
    pub layer_count: usize,
}

/// Per-bucket quotas for the corpus: (vertex count, layer count, how
/// many). Only combinations a chain on that many vertices can realize
/// appear.
const BUCKETS: &[(usize, usize, usize)] = &[
    (3, 1, 12),
    (4, 1, 30),
    (4, 2, 35),
    (5, 1, 25),
    (5, 2, 35),
    (5, 3, 12),
    (6, 1, 20),
    (6, 2, 30),
    (6, 3, 12),
];

/// Generates the seeded corpus: rejection sampling over random convex
/// combinations of source-sink Hamiltonian paths (whose degree
/// equalities make them subtour-LP solutions) and of Gao-trees for
/// random chains with multi-vertex levels (chain-points that are not
/// LP solutions). Every sample passes `validate_chain_point` before it
/// is kept.
pub fn generate_corpus(seed: u64, guard: &SizeGuard) -> Result<Vec<CorpusInstance>> {
    let mut rng = SplitMix64::new(seed);
    let mut corpus = Vec::new();
    for &(n, layers, want) in BUCKETS {
        guard.check_vertices(n)?;
        let mut got = 0;
        let mut attempts = 0;
        // Alternate the two generators; Gao-tree mixes only ever
        // produce single-layer points.
        while got < want {
            attempts += 1;
            if attempts > 40_000 {
                return Err(Error::InternalLimit(alloc::format!(
                    "could not fill corpus bucket n={n}, layers={layers}"
                )));
            }
            let candidate = if layers == 1 && attempts % 3 == 0 {
                sample_gao_mix(n, &mut rng, guard)?
            } else {
                sample_path_mix(n, &mut rng, guard)?
            };
            let Some(instance) = candidate else { continue };
            if instance.layer_count != layers {
                continue;
            }
            corpus.push(instance);
            got += 1;
        }
    }
    Ok(corpus)
}

/// A random convex combination of Hamiltonian 0..n-1 paths of the
/// complete graph, restricted to its support.
fn sample_path_mix(
    n: usize,
    rng: &mut SplitMix64,
    guard: &SizeGuard,
) -> Result<Option<CorpusInstance>> {
    let k = 1 + rng.below(4);
    let mut orders: Vec<Vec<Vertex>> = Vec::with_capacity(k);
    for _ in 0..k {
        let mut middle: Vec<Vertex> = (1..n - 1).collect();
        rng.shuffle(&mut middle);
        let mut order = alloc::vec![0];
        order.extend(middle);
        order.push(n - 1);
        if !orders.contains(&order) {
            orders.push(order);
        }
    }
    let weights: Vec<u64> = (0..orders.len()).map(|_| 1 + rng.below(8) as u64).collect();
    let total: u64 = weights.iter().sum();

    // Accumulate on vertex pairs, then renumber to a support-only graph.
    let mut on_pairs: BTreeMap<(Vertex, Vertex), Rational> = BTreeMap::new();
    for (order, w) in orders.iter().zip(&weights) {
        let coefficient = Rational::new((*w).into(), total.into());
        for pair in order.windows(2) {
            let key = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            *on_pairs.entry(key).or_insert_with(Rational::zero) += &coefficient;
        }
    }
    let pairs: Vec<(Vertex, Vertex)> = on_pairs.keys().copied().collect();
    let graph = Graph::new(n, &pairs)?;
    let x = EdgeVector::from_entries(on_pairs.into_values().enumerate())?;

    let (s, t) = (0, n - 1);
    let Ok(chain) = derive_chain_bf(&graph, &x, s, t, guard) else {
        return Ok(None);
    };
    if !validate_chain_point(&x, &chain, &graph)?.is_chain_point() {
        return Ok(None);
    }
    let layer_count = layer_thresholds(&x, &chain, &graph)?.layer_count();
    Ok(Some(CorpusInstance {
        graph,
        x,
        chain,
        source_sink: Some((s, t)),
        layer_count,
    }))
}

/// A random convex combination of Gao-trees for a random chain with at
/// least one multi-vertex level: a chain-point (all narrow cuts have
/// size one) that usually violates the s-t degree constraints.
fn sample_gao_mix(
    n: usize,
    rng: &mut SplitMix64,
    guard: &SizeGuard,
) -> Result<Option<CorpusInstance>> {
    // Random ordered partition of a shuffled vertex list into at least
    // three parts, at least one of size two or more.
    let mut verts: Vec<Vertex> = (0..n).collect();
    rng.shuffle(&mut verts);
    let parts = 3 + rng.below(n - 2);
    if parts > n {
        return Ok(None);
    }
    let mut cuts: Vec<usize> = (1..n).collect();
    rng.shuffle(&mut cuts);
    let mut cut_positions: Vec<usize> = cuts.into_iter().take(parts - 1).collect();
    cut_positions.sort_unstable();
    if cut_positions.windows(2).all(|w| w[1] - w[0] == 1) && cut_positions[0] == 1 && parts == n {
        // All levels singletons: degree-constrained anyway; still fine,
        // but prefer a genuinely coarser partition.
        return Ok(None);
    }

    let mut sets = Vec::new();
    let mut prefix = VertexSet::new();
    let mut last = 0;
    for &pos in &cut_positions {
        prefix.extend(verts[last..pos].iter().copied());
        sets.push(prefix.clone());
        last = pos;
    }
    let chain = Chain::new(sets, n)?;

    let host = Graph::complete(n);
    let trees = enumerate_spanning_trees(&host, guard)?;
    let mut gao: Vec<&Tree> = Vec::new();
    for tree in &trees {
        if crate::chain::is_gao_tree(tree, &chain, &host)? {
            gao.push(tree);
        }
    }
    if gao.is_empty() {
        return Ok(None);
    }
    let k = 1 + rng.below(4.min(gao.len()));
    let mut chosen: Vec<&Tree> = Vec::new();
    for _ in 0..k {
        let tree = gao[rng.below(gao.len())];
        if !chosen.contains(&tree) {
            chosen.push(tree);
        }
    }
    let weights: Vec<u64> = (0..chosen.len()).map(|_| 1 + rng.below(8) as u64).collect();
    let total: u64 = weights.iter().sum();
    let mut on_pairs: BTreeMap<(Vertex, Vertex), Rational> = BTreeMap::new();
    for (tree, w) in chosen.iter().zip(&weights) {
        let coefficient = Rational::new((*w).into(), total.into());
        for &e in tree.edges() {
            *on_pairs
                .entry(host.endpoints(e))
                .or_insert_with(Rational::zero) += &coefficient;
        }
    }
    let pairs: Vec<(Vertex, Vertex)> = on_pairs.keys().copied().collect();
    let graph = Graph::new(n, &pairs)?;
    let x = EdgeVector::from_entries(on_pairs.into_values().enumerate())?;

    // The chain's sets carry over unchanged; only edge ids moved.
    let chain = Chain::new(chain.sets().to_vec(), n)?;
    if !validate_chain_point(&x, &chain, &graph)?.is_chain_point() {
        return Ok(None);
    }
    let layer_count = layer_thresholds(&x, &chain, &graph)?.layer_count();
    Ok(Some(CorpusInstance {
        graph,
        x,
        chain,
        source_sink: None,
        layer_count,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fixture_b, fixture_c};
    use crate::rational::frac;

    #[test]
    fn tree_enumeration_examples() {
        let guard = SizeGuard::default();
        let triangle = Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(
            enumerate_spanning_trees(&triangle, &guard).unwrap().len(),
            3
        );

        let path = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(enumerate_spanning_trees(&path, &guard).unwrap().len(), 1);

        // Fixture C lives on K4: sixteen spanning trees, matching the
        // determinant count.
        let (g, _) = fixture_c();
        let trees = enumerate_spanning_trees(&g, &guard).unwrap();
        assert_eq!(trees.len(), 16);
        assert_eq!(matrix_tree_count(&g, &guard).unwrap(), rat(16));
    }

    #[test]
    fn tree_counters_agree_on_trivial_graphs() {
        let guard = SizeGuard::default();
        let single = Graph::new(1, &[]).unwrap();
        assert_eq!(enumerate_spanning_trees(&single, &guard).unwrap().len(), 1);
        assert_eq!(matrix_tree_count(&single, &guard).unwrap(), rat(1));
        let disconnected = Graph::new(3, &[(0, 1)]).unwrap();
        assert!(enumerate_spanning_trees(&disconnected, &guard)
            .unwrap()
            .is_empty());
        assert_eq!(matrix_tree_count(&disconnected, &guard).unwrap(), rat(0));
    }

    #[test]
    fn tree_enumeration_is_lexicographic() {
        let guard = SizeGuard::default();
        let k4 = Graph::complete(4);
        let trees = enumerate_spanning_trees(&k4, &guard).unwrap();
        let tuples: Vec<Vec<usize>> = trees
            .iter()
            .map(|t| t.edges().iter().copied().collect())
            .collect();
        let mut sorted = tuples.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(tuples, sorted);
    }

    #[test]
    fn tree_counters_agree_on_k6() {
        let guard = SizeGuard::default();
        let k6 = Graph::complete(6);
        let trees = enumerate_spanning_trees(&k6, &guard).unwrap();
        assert_eq!(
            rat(trees.len() as i64),
            matrix_tree_count(&k6, &guard).unwrap()
        );
        assert_eq!(trees.len(), 1296);
    }

    #[test]
    fn guard_refuses_large_inputs() {
        let guard = SizeGuard {
            max_vertices: 3,
            max_edges_for_subset_enum: 2,
        };
        let k4 = Graph::complete(4);
        assert!(matches!(
            enumerate_spanning_trees(&k4, &guard),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn sp_membership_bf_examples() {
        let guard = SizeGuard::default();
        let (g, x) = fixture_c();
        assert!(sp_membership_bf(&g, &x, &guard).unwrap());
        let tree = EdgeVector::from_entries([(0, rat(1)), (2, rat(1)), (4, rat(1))]).unwrap();
        assert!(sp_membership_bf(&g, &tree, &guard).unwrap());
        let bad = EdgeVector::from_entries([
            (0, frac(1, 2)),
            (1, frac(1, 4)),
            (2, frac(5, 4)),
            (3, frac(1, 4)),
            (4, frac(3, 4)),
        ])
        .unwrap();
        assert!(!sp_membership_bf(&g, &bad, &guard).unwrap());
    }

    #[test]
    fn rank_bf_examples() {
        let guard = SizeGuard::default();
        let (g, x) = fixture_c();
        let chain = Chain::new(
            alloc::vec![
                [0].into_iter().collect(),
                [0, 1].into_iter().collect(),
                [0, 1, 2].into_iter().collect()
            ],
            4,
        )
        .unwrap();
        let triangle: EdgeSet = [0, 1, 2].into_iter().collect();
        let graphic = rank_bf(|s| rank_graphic(&g, s) == s.len(), &triangle, &guard).unwrap();
        assert_eq!(graphic, 2);

        let m = GaoMatroid::new(&g, &chain, x.support()).unwrap();
        let loops: EdgeSet = [1, 5].into_iter().collect();
        assert_eq!(
            rank_bf(|s| m.is_independent(&g, s), &loops, &guard).unwrap(),
            0
        );
        assert_eq!(
            rank_bf(|s| m.is_independent(&g, s), &x.support(), &guard).unwrap(),
            3
        );
    }

    #[test]
    fn derive_chain_bf_matches_fixtures() {
        let guard = SizeGuard::default();
        let (g, x) = fixture_c();
        let chain = derive_chain_bf(&g, &x, 0, 3, &guard).unwrap();
        assert_eq!(chain, crate::chain::derive_chain(&x, &g, 0, 3).unwrap());

        let (g, x) = fixture_b();
        let chain = derive_chain_bf(&g, &x, 0, 3, &guard).unwrap();
        assert_eq!(chain, crate::chain::derive_chain(&x, &g, 0, 3).unwrap());
    }

    #[test]
    fn tight_sets_fixture_c() {
        let guard = SizeGuard::default();
        let (g, x) = fixture_c();
        let tight = tight_sets_bf(&g, &x, &guard).unwrap();
        let expect = |vals: &[usize]| vals.iter().copied().collect::<VertexSet>();
        for set in [
            expect(&[1, 2]),
            expect(&[0, 1, 2]),
            expect(&[1, 2, 3]),
            expect(&[0, 1, 2, 3]),
        ] {
            assert!(tight.contains(&set), "{set:?} should be tight");
        }
        for v in 0..4 {
            assert!(tight.contains(&expect(&[v])));
        }
        assert_eq!(tight.len(), 8);
    }

    #[test]
    fn tight_sets_of_a_tree_indicator() {
        // For a tree indicator the tight sets are exactly the vertex
        // sets the tree restricts to a subtree on.
        let guard = SizeGuard::default();
        let (g, x) = crate::fixtures::fixture_a();
        let tree: EdgeSet = x.support();
        let tight = tight_sets_bf(&g, &x, &guard).unwrap();
        for u in (1u32..16).map(|mask| (0..4).filter(|v| mask >> v & 1 == 1).collect::<VertexSet>())
        {
            let spans = {
                let inside: EdgeSet = g.induced_edges(&u).intersection(&tree).copied().collect();
                g.components(&u, &inside).len() == 1
            };
            assert_eq!(tight.contains(&u), spans, "{u:?}");
        }
    }

    #[test]
    fn tight_sets_fixture_b() {
        let guard = SizeGuard::default();
        let (g, x) = fixture_b();
        let tight = tight_sets_bf(&g, &x, &guard).unwrap();
        let expect = |vals: &[usize]| vals.iter().copied().collect::<VertexSet>();
        for set in [expect(&[1, 2]), expect(&[0, 1, 2, 3])] {
            assert!(tight.contains(&set));
        }
        for v in 0..4 {
            assert!(tight.contains(&expect(&[v])));
        }
    }

    #[test]
    fn lemma3_fixture_c() {
        let guard = SizeGuard::default();
        let (g, x) = fixture_c();
        let chain = derive_chain_bf(&g, &x, 0, 3, &guard).unwrap();
        // Feasible at the first-layer fraction 1/2 and, for this
        // unsaturated instance, even at the exact maximum 3/4.
        assert!(
            lemma3_condition_bf(&g, &chain, &x, &frac(1, 2), &guard)
                .unwrap()
                .0
        );
        assert!(
            lemma3_condition_bf(&g, &chain, &x, &frac(3, 4), &guard)
                .unwrap()
                .0
        );
        // Just past the maximum it fails.
        assert!(
            !lemma3_condition_bf(&g, &chain, &x, &frac(4, 5), &guard)
                .unwrap()
                .0
        );
        // At zero it degenerates to x(X) ≤ r(X).
        assert!(
            lemma3_condition_bf(&g, &chain, &x, &rat(0), &guard)
                .unwrap()
                .0
        );
    }

    #[test]
    fn lemma3_saturated_fixture_b() {
        // Fixture B has a single layer, so its first-layer mass is
        // saturated at 1; a quarter past it the condition must fail.
        let guard = SizeGuard::default();
        let (g, x) = fixture_b();
        let chain = derive_chain_bf(&g, &x, 0, 3, &guard).unwrap();
        assert!(
            lemma3_condition_bf(&g, &chain, &x, &rat(1), &guard)
                .unwrap()
                .0
        );
        let (ok, worst) = lemma3_condition_bf(&g, &chain, &x, &frac(5, 4), &guard).unwrap();
        assert!(!ok);
        assert!(!worst.is_empty());
    }

    #[test]
    fn corpus_is_deterministic_and_covers_buckets() {
        let guard = SizeGuard::default();
        let a = generate_corpus(7, &guard).unwrap();
        let b = generate_corpus(7, &guard).unwrap();
        assert_eq!(a.len(), b.len());
        for (left, right) in a.iter().zip(&b) {
            assert_eq!(left.x, right.x);
            assert_eq!(left.chain, right.chain);
        }
        assert!(a.len() >= 200);
        for &(n, layers, want) in BUCKETS {
            let got = a
                .iter()
                .filter(|inst| inst.graph.vertex_count() == n && inst.layer_count == layers)
                .count();
            assert!(got >= want, "bucket n={n} layers={layers}: {got} < {want}");
        }
        // Both generators contribute.
        assert!(a.iter().any(|inst| inst.source_sink.is_none()));
        assert!(a.iter().any(|inst| inst.source_sink.is_some()));
    }
}
