//! The layered decomposition pipeline: spanning-tree-polytope
//! membership, laminar families of tight sets, the exact peel fraction
//! (discrete Newton over the separation oracle), single peel steps, and
//! the full decomposition into a layered convex combination of
//! Gao-trees with exact per-layer masses.

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::chain::{is_gao_tree, layer_thresholds, Chain, LayerThresholds};
use crate::error::{Error, Result};
use crate::flow::max_modular_excess;
use crate::graph::{EdgeId, EdgeVector, Graph, Tree, VertexSet};
use crate::matroid::{gao_tree_spanning_laminar, rank_graphic, GaoMatroid};
use crate::rational::{rat, Rational};

/// Outcome of the spanning-tree-polytope membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpCheck {
    Member,
    /// y(E) differs from |V| - 1.
    WrongTotal {
        total: Rational,
        expected: Rational,
    },
    /// Some nonempty U has y(E(U)) > |U| - 1; `set` is a minimal
    /// violator.
    SubtourViolation {
        set: VertexSet,
        value: Rational,
        bound: Rational,
    },
}

impl SpCheck {
    pub fn is_member(&self) -> bool {
        matches!(self, SpCheck::Member)
    }

    pub fn witness(&self) -> Option<&VertexSet> {
        match self {
            SpCheck::SubtourViolation { set, .. } => Some(set),
            _ => None,
        }
    }
}

/// Membership in Sp(G): y ≥ 0 (by the vector type), y(E) = |V| - 1
/// exactly, and y(E(U)) ≤ |U| - 1 for every nonempty U, checked through
/// the modular-excess oracle.
pub fn sp_membership(graph: &Graph, y: &EdgeVector) -> Result<SpCheck> {
    let expected = rat(graph.vertex_count() as i64 - 1);
    let total = y.total();
    if total != expected {
        return Ok(SpCheck::WrongTotal { total, expected });
    }
    let excess = max_modular_excess(graph, y, &rat(1), None)?;
    // y(E(U)) - |U| ≤ -1 for all nonempty U is exactly the subtour bound.
    if excess.value > rat(-1) {
        let bound = rat(excess.argmax.len() as i64 - 1);
        let value = y.sum_over(&graph.induced_edges(&excess.argmax));
        return Ok(SpCheck::SubtourViolation {
            set: excess.argmax,
            value,
            bound,
        });
    }
    Ok(SpCheck::Member)
}

/// Membership in the cone over Sp(G): zero, or a positive multiple of a
/// polytope member.
pub fn cone_membership(graph: &Graph, y: &EdgeVector) -> Result<bool> {
    if y.is_zero() {
        return Ok(true);
    }
    let scale = rat(graph.vertex_count() as i64 - 1) / y.total();
    Ok(sp_membership(graph, &y.scale(&scale)?)?.is_member())
}

/// A laminar family of tight vertex sets, always containing the full
/// vertex set. Any two members are disjoint or nested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaminarFamily {
    members: BTreeSet<VertexSet>,
    vertex_count: usize,
}

/// Two sets cross when they overlap without nesting.
fn crosses(a: &VertexSet, b: &VertexSet) -> bool {
    if a.intersection(b).next().is_none() {
        return false;
    }
    !a.is_subset(b) && !b.is_subset(a)
}

impl LaminarFamily {
    pub fn new(vertex_count: usize) -> Self {
        let mut members = BTreeSet::new();
        members.insert((0..vertex_count).collect::<VertexSet>());
        LaminarFamily {
            members,
            vertex_count,
        }
    }

    pub fn members(&self) -> &BTreeSet<VertexSet> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// The family always contains the full vertex set.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, set: &VertexSet) -> bool {
        self.members.contains(set)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Every member must be tight for `x`: x(E(U)) = |U| - 1.
    pub fn check_tight(&self, graph: &Graph, x: &EdgeVector) -> Result<()> {
        for member in &self.members {
            if !is_tight(graph, x, member) {
                return Err(Error::NotTight(member.clone()));
            }
        }
        Ok(())
    }
}

pub fn is_tight(graph: &Graph, x: &EdgeVector, u: &VertexSet) -> bool {
    !u.is_empty() && x.sum_over(&graph.induced_edges(u)) == rat(u.len() as i64 - 1)
}

/// Inserts the tight set `u` into the family, uncrossing as needed:
/// while the incoming set crosses a member, it is replaced by the
/// intersection and union with that member, both of which are again
/// tight. Existing members are never removed.
pub fn uncross_insert(
    family: &LaminarFamily,
    u: &VertexSet,
    graph: &Graph,
    x: &EdgeVector,
) -> Result<LaminarFamily> {
    if u.is_empty() {
        return Err(Error::ContractViolation(
            "cannot insert the empty set".into(),
        ));
    }
    if u.iter().any(|&v| v >= family.vertex_count()) {
        return Err(Error::ContractViolation(
            "set has out-of-range vertices".into(),
        ));
    }
    if !is_tight(graph, x, u) {
        return Err(Error::NotTight(u.clone()));
    }
    let mut out = family.clone();
    let mut work: Vec<VertexSet> = alloc::vec![u.clone()];
    while let Some(cur) = work.pop() {
        match out.members.iter().find(|m| crosses(&cur, m)) {
            None => {
                out.members.insert(cur);
            }
            Some(member) => {
                let inter: VertexSet = cur.intersection(member).copied().collect();
                let union: VertexSet = cur.union(member).copied().collect();
                // Tight sets with nonempty intersection have tight
                // intersection and union; anything else means the
                // inputs were not what they claimed to be.
                for derived in [&inter, &union] {
                    if !is_tight(graph, x, derived) {
                        return Err(Error::TheoryViolation(format!(
                            "uncrossing produced a non-tight set {derived:?}"
                        )));
                    }
                }
                work.push(inter);
                work.push(union);
            }
        }
    }
    debug_assert!(out
        .members
        .iter()
        .all(|a| out.members.iter().all(|b| !crosses(a, b))));
    Ok(out)
}

/// What stopped a peel from going further.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bottleneck {
    /// A tree edge's value reaches zero at the returned fraction.
    EdgeZeroed(EdgeId),
    /// This set's subtour constraint becomes tight at the returned
    /// fraction; at fraction zero it is a tight set the tree misses.
    TightSet(VertexSet),
    /// The point is exactly the tree; nothing remains.
    Exhausted,
}

/// The largest λ ∈ [0, 1) with (x - λT) / (1 - λ) still in Sp(G), or
/// λ = 1 when x is exactly the tree.
///
/// Starting from the nonnegativity cap min over tree edges of x_e, a
/// discrete Newton iteration walks down: whenever some set's subtour
/// constraint is violated at the candidate, λ drops to the exact value
/// making that constraint tight. Every candidate is the root of a
/// concrete constraint, so the loop is finite.
pub fn lambda_max(graph: &Graph, x: &EdgeVector, tree: &Tree) -> Result<(Rational, Bottleneck)> {
    let support = x.support();
    if !tree.edges().is_subset(&support) {
        return Err(Error::Input("tree must lie inside the support of x".into()));
    }
    if x.is_indicator_of(tree) {
        return Ok((rat(1), Bottleneck::Exhausted));
    }

    let (cap_edge, cap) = tree
        .edges()
        .iter()
        .map(|&e| (e, x.get(e)))
        .min_by(|(ea, qa), (eb, qb)| qa.cmp(qb).then(ea.cmp(eb)))
        .expect("tree is nonempty");
    debug_assert!(cap > Rational::zero() && cap < Rational::one());

    let mut lambda = cap.clone();
    let mut binding: Option<VertexSet> = None;
    loop {
        let reduced = EdgeVector::from_entries(x.iter().map(|(e, q)| {
            let q = if tree.contains(e) {
                q - &lambda
            } else {
                q.clone()
            };
            (e, q)
        }))?;
        let kappa = rat(1) - &lambda;
        let excess = max_modular_excess(graph, &reduced, &kappa, None)?;
        if excess.value + &kappa <= Rational::zero() {
            break;
        }
        // The violated constraint: x(E(U)) - λ|T ∩ E(U)| ≤ (1-λ)(|U|-1).
        let u = excess.argmax;
        let inside = graph.induced_edges(&u);
        let size = rat(u.len() as i64 - 1);
        let slope = &size - rat(inside.intersection(tree.edges()).count() as i64);
        let room = &size - x.sum_over(&inside);
        if slope <= Rational::zero() || room < Rational::zero() {
            return Err(Error::TheoryViolation(format!(
                "constraint of {u:?} is violated at fraction zero; x is outside Sp(G)"
            )));
        }
        let next = room / slope;
        debug_assert!(next < lambda);
        lambda = next;
        binding = Some(u);
        if lambda.is_zero() {
            break;
        }
    }

    if lambda == cap {
        Ok((lambda, Bottleneck::EdgeZeroed(cap_edge)))
    } else {
        let set = binding.expect("below the cap only by a binding set");
        Ok((lambda, Bottleneck::TightSet(set)))
    }
}

/// One peel: selects the Gao-tree spanning the current tight family
/// for the chain re-evaluated at `x`, peels the largest feasible
/// fraction, and folds a newly tight set into the family. A zero
/// fraction means the discovered tight set was missing from the
/// family; the caller retries with the enlarged family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelRecord {
    pub epsilon: Rational,
    pub tree: Tree,
    pub bottleneck: Bottleneck,
}

/// The members of `chain` whose cut is still narrow at `x`.
pub fn current_chain(graph: &Graph, x: &EdgeVector, chain: &Chain) -> Result<Chain> {
    let two = rat(2);
    let sizes = chain.cut_sizes(graph, x)?;
    let sets: Vec<VertexSet> = chain
        .sets()
        .iter()
        .zip(&sizes)
        .filter(|(_, size)| **size < two)
        .map(|(s, _)| s.clone())
        .collect();
    Chain::new(sets, chain.vertex_count())
}

/// The spanning tree whose indicator `x` is, if it is one.
fn integral_tree(graph: &Graph, x: &EdgeVector) -> Option<Tree> {
    if x.iter().all(|(_, q)| q.is_one()) {
        Tree::new(graph, x.support()).ok()
    } else {
        None
    }
}

pub fn peel_step(
    graph: &Graph,
    x: &EdgeVector,
    chain: &Chain,
    family: &LaminarFamily,
) -> Result<(PeelRecord, EdgeVector, LaminarFamily)> {
    if let Some(tree) = integral_tree(graph, x) {
        let record = PeelRecord {
            epsilon: rat(1),
            tree,
            bottleneck: Bottleneck::Exhausted,
        };
        return Ok((record, x.clone(), family.clone()));
    }
    let current = current_chain(graph, x, chain)?;
    let tree = gao_tree_spanning_laminar(graph, x, &current, family)?;
    let (epsilon, bottleneck) = lambda_max(graph, x, &tree)?;
    if epsilon.is_zero() {
        let Bottleneck::TightSet(u) = &bottleneck else {
            return Err(Error::TheoryViolation(
                "a zero fraction must come from an unspanned tight set".into(),
            ));
        };
        let family = uncross_insert(family, u, graph, x)?;
        let record = PeelRecord {
            epsilon,
            tree,
            bottleneck,
        };
        return Ok((record, x.clone(), family));
    }
    let x_next = x.peel(&tree, &epsilon)?;
    let family_next = match &bottleneck {
        // The binding set is tight at the rescaled remainder.
        Bottleneck::TightSet(u) => uncross_insert(family, u, graph, &x_next)?,
        _ => family.clone(),
    };
    Ok((
        PeelRecord {
            epsilon,
            tree,
            bottleneck,
        },
        x_next,
        family_next,
    ))
}

/// One term of a layered decomposition: `coefficient` of `tree`,
/// assigned to the 1-based `layer`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTerm {
    pub coefficient: Rational,
    pub tree: Tree,
    pub layer: usize,
}

/// A layered convex combination: coefficients sum to one, recombine to
/// the decomposed point, each layer-j tree is a Gao-tree for the chain
/// of cuts of size at most the j-th threshold, and the layer masses
/// match the thresholds exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredDecomposition {
    thresholds: LayerThresholds,
    terms: Vec<DecompositionTerm>,
}

impl LayeredDecomposition {
    pub fn new(thresholds: LayerThresholds, terms: Vec<DecompositionTerm>) -> Self {
        LayeredDecomposition { thresholds, terms }
    }

    pub fn thresholds(&self) -> &LayerThresholds {
        &self.thresholds
    }

    pub fn terms(&self) -> &[DecompositionTerm] {
        &self.terms
    }

    /// Σ coefficient · tree, exactly.
    pub fn recombined(&self) -> EdgeVector {
        let mut acc: BTreeMap<EdgeId, Rational> = BTreeMap::new();
        for term in &self.terms {
            for &e in term.tree.edges() {
                *acc.entry(e).or_insert_with(Rational::zero) += &term.coefficient;
            }
        }
        EdgeVector::from_entries(acc).expect("sums of nonnegatives")
    }

    pub fn coefficient_total(&self) -> Rational {
        self.terms
            .iter()
            .fold(Rational::zero(), |a, t| a + &t.coefficient)
    }

    /// Total coefficient per distinct tree, over all layers.
    pub fn aggregated_by_tree(&self) -> BTreeMap<Tree, Rational> {
        let mut out = BTreeMap::new();
        for term in &self.terms {
            *out.entry(term.tree.clone()).or_insert_with(Rational::zero) += &term.coefficient;
        }
        out
    }

    /// Total coefficient per (tree, layer) pair.
    pub fn aggregated_by_tree_layer(&self) -> BTreeMap<(Tree, usize), Rational> {
        let mut out = BTreeMap::new();
        for term in &self.terms {
            *out.entry((term.tree.clone(), term.layer))
                .or_insert_with(Rational::zero) += &term.coefficient;
        }
        out
    }

    pub fn distinct_tree_count(&self) -> usize {
        self.terms
            .iter()
            .map(|t| &t.tree)
            .collect::<BTreeSet<_>>()
            .len()
    }
}

/// Decomposes a validated chain-point into a layered convex combination
/// by repeated peeling. Each peel extracts the largest feasible
/// fraction of a Gao-tree for the chain re-evaluated at the current
/// point; coefficients are split at the layer boundaries afterwards so
/// the per-layer masses equal the thresholds exactly.
pub fn layered_decompose(
    graph: &Graph,
    x: &EdgeVector,
    chain: &Chain,
) -> Result<LayeredDecomposition> {
    let report = crate::chain::validate_chain_point(x, chain, graph)?;
    if !report.is_chain_point() {
        let what: Vec<String> = report.violations.iter().map(|v| v.describe()).collect();
        return Err(Error::Inconsistency(format!(
            "not a chain-point: {}",
            what.join("; ")
        )));
    }
    let thresholds = layer_thresholds(x, chain, graph)?;
    let original_sizes = chain.cut_sizes(graph, x)?;

    let peel_bound = x.support().len() + 2 * graph.vertex_count();
    let zero_bound = 2 * graph.vertex_count();

    let mut x_cur = x.clone();
    let mut family = LaminarFamily::new(graph.vertex_count());
    let mut peeled = Rational::zero();
    let mut remaining = Rational::one();
    let mut raw: Vec<(Rational, Tree)> = Vec::new();
    let mut peels = 0usize;
    let mut zero_rounds = 0usize;

    loop {
        // Peel against the chain the rescaling law guarantees: cuts
        // whose original size keeps them narrow at the current mass. A
        // cut that left the chain may dip back below two when later
        // trees cross it several times, but it never rejoins a layer.
        let layer_chain =
            check_layer_state(graph, &x_cur, chain, &thresholds, &original_sizes, &peeled)?;
        let (record, x_next, family_next) = peel_step(graph, &x_cur, &layer_chain, &family)?;
        if record.epsilon == rat(1) {
            raw.push((remaining.clone(), record.tree));
            break;
        }
        if record.epsilon.is_zero() {
            if family_next.len() <= family.len() {
                return Err(Error::InternalLimit(
                    "a zero-fraction round did not enlarge the tight family".into(),
                ));
            }
            zero_rounds += 1;
            if zero_rounds > zero_bound {
                return Err(Error::InternalLimit(format!(
                    "more than {zero_bound} zero-fraction rounds"
                )));
            }
            family = family_next;
            continue;
        }
        let coefficient = &record.epsilon * &remaining;
        peeled += &coefficient;
        remaining -= &coefficient;
        raw.push((coefficient, record.tree));
        peels += 1;
        if peels > peel_bound {
            return Err(Error::InternalLimit(format!(
                "more than {peel_bound} peels"
            )));
        }
        x_cur = x_next;
        family = family_next;
        debug_assert!(family.check_tight(graph, &x_cur).is_ok());
    }

    let terms = split_at_layer_boundaries(raw, &thresholds)?;
    let decomposition = LayeredDecomposition::new(thresholds, terms);

    let verification = verify_layered(graph, x, chain, &decomposition)?;
    if !verification.is_valid() {
        return Err(Error::TheoryViolation(format!(
            "produced decomposition failed verification: {:?}",
            verification.violations
        )));
    }
    for (j, prefix) in decomposition.thresholds.prefix_sums().iter().enumerate() {
        let mass: Rational = decomposition
            .terms
            .iter()
            .filter(|t| t.layer <= j + 1)
            .fold(Rational::zero(), |a, t| a + &t.coefficient);
        if &mass != prefix {
            return Err(Error::TheoryViolation(format!(
                "layer prefix mass {mass} differs from threshold {prefix}"
            )));
        }
    }
    Ok(decomposition)
}

/// Between peels: every cut of the current layer's chain must still be
/// narrow and must follow the rescaling law size' = (size - μ)/(1 - μ)
/// exactly. Returns that chain; the point is a chain-point for it.
fn check_layer_state(
    graph: &Graph,
    x_cur: &EdgeVector,
    chain: &Chain,
    thresholds: &LayerThresholds,
    original_sizes: &[Rational],
    peeled: &Rational,
) -> Result<Chain> {
    let layer = thresholds
        .layer_of_mass(peeled)
        .ok_or_else(|| Error::InternalLimit("peeled mass reached 1 with support left".into()))?;
    let threshold = thresholds.threshold(layer);
    let rest = rat(1) - peeled;
    let sizes = chain.cut_sizes(graph, x_cur)?;
    let mut members = Vec::new();
    for (i, size) in sizes.iter().enumerate() {
        if original_sizes[i] > threshold {
            continue;
        }
        let expected = (&original_sizes[i] - peeled) / &rest;
        if *size != expected || *size >= rat(2) {
            return Err(Error::TheoryViolation(format!(
                "cut {i} has size {size}, expected {expected} after peeling {peeled}"
            )));
        }
        members.push(chain.sets()[i].clone());
    }
    Chain::new(members, chain.vertex_count())
}

/// Splits raw peel coefficients at the layer-boundary masses so each
/// final term lies inside a single layer. A tree extracted while layer
/// j was current is a valid Gao-tree for every later layer as well, so
/// the overflow may spill forward.
fn split_at_layer_boundaries(
    raw: Vec<(Rational, Tree)>,
    thresholds: &LayerThresholds,
) -> Result<Vec<DecompositionTerm>> {
    let prefix = thresholds.prefix_sums();
    let mut terms = Vec::new();
    let mut mu = Rational::zero();
    for (coefficient, tree) in raw {
        let end = &mu + &coefficient;
        let mut at = mu.clone();
        while at < end {
            let layer = thresholds
                .layer_of_mass(&at)
                .ok_or_else(|| Error::TheoryViolation("coefficients exceed total mass 1".into()))?;
            let boundary = &prefix[layer - 1];
            let cut_at = if boundary < &end {
                boundary.clone()
            } else {
                end.clone()
            };
            terms.push(DecompositionTerm {
                coefficient: &cut_at - &at,
                tree: tree.clone(),
                layer,
            });
            at = cut_at;
        }
        mu = end;
    }
    if !mu.is_one() {
        return Err(Error::TheoryViolation(format!(
            "total peeled mass is {mu}, expected 1"
        )));
    }
    Ok(terms)
}

/// One verification failure of a claimed layered decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LayeredViolation {
    /// Thresholds in the file differ from those of the instance.
    ThresholdMismatch,
    /// A coefficient is not strictly positive.
    NonPositiveCoefficient { term: usize },
    /// A layer index is outside 1..=ℓ.
    LayerOutOfRange { term: usize },
    /// Coefficients do not sum to one.
    CoefficientSum { total: Rational },
    /// Σ coefficient · tree differs from x on this edge.
    Recombination {
        edge: EdgeId,
        expected: Rational,
        actual: Rational,
    },
    /// A term's tree does not cross every cut of its layer's chain
    /// exactly once.
    NotGaoTreeForLayer { term: usize, layer: usize },
    /// The Gao-tree mass available to layers 1..=j is below the
    /// required λ_1 + … + λ_j.
    PrefixMass {
        layer: usize,
        mass: Rational,
        required: Rational,
    },
}

impl LayeredViolation {
    pub fn describe(&self) -> String {
        match self {
            LayeredViolation::ThresholdMismatch => {
                "layer thresholds do not match the instance".into()
            }
            LayeredViolation::NonPositiveCoefficient { term } => {
                format!("term {term} has a non-positive coefficient")
            }
            LayeredViolation::LayerOutOfRange { term } => {
                format!("term {term} names a layer outside the range")
            }
            LayeredViolation::CoefficientSum { total } => {
                format!("coefficients sum to {total}, expected 1")
            }
            LayeredViolation::Recombination {
                edge,
                expected,
                actual,
            } => {
                format!("edge {edge} recombines to {actual}, expected {expected}")
            }
            LayeredViolation::NotGaoTreeForLayer { term, layer } => {
                format!("term {term} is not a Gao-tree for layer {layer}")
            }
            LayeredViolation::PrefixMass {
                layer,
                mass,
                required,
            } => {
                format!("layers up to {layer} carry mass {mass}, required at least {required}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LayeredReport {
    pub violations: Vec<LayeredViolation>,
}

impl LayeredReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks a claimed layered decomposition against the instance:
/// thresholds, positivity, total mass, exact recombination, per-layer
/// Gao-tree membership, and the prefix-mass condition with each tree
/// counted at the smallest layer admitting it.
pub fn verify_layered(
    graph: &Graph,
    x: &EdgeVector,
    chain: &Chain,
    decomposition: &LayeredDecomposition,
) -> Result<LayeredReport> {
    let mut report = LayeredReport::default();
    let thresholds = layer_thresholds(x, chain, graph)?;
    if &thresholds != decomposition.thresholds() {
        report.violations.push(LayeredViolation::ThresholdMismatch);
    }
    let layer_count = thresholds.layer_count();

    let layer_chains: Vec<Chain> = (1..=layer_count)
        .map(|j| chain.subchain_at(graph, x, &thresholds.threshold(j)))
        .collect::<Result<_>>()?;

    for (i, term) in decomposition.terms().iter().enumerate() {
        if term.coefficient <= Rational::zero() {
            report
                .violations
                .push(LayeredViolation::NonPositiveCoefficient { term: i });
        }
        if term.layer == 0 || term.layer > layer_count {
            report
                .violations
                .push(LayeredViolation::LayerOutOfRange { term: i });
            continue;
        }
        if !is_gao_tree(&term.tree, &layer_chains[term.layer - 1], graph)? {
            report
                .violations
                .push(LayeredViolation::NotGaoTreeForLayer {
                    term: i,
                    layer: term.layer,
                });
        }
    }

    let total = decomposition.coefficient_total();
    if !total.is_one() {
        report
            .violations
            .push(LayeredViolation::CoefficientSum { total });
    }

    let recombined = decomposition.recombined();
    for e in graph.edge_ids() {
        let (expected, actual) = (x.get(e), recombined.get(e));
        if expected != actual {
            report.violations.push(LayeredViolation::Recombination {
                edge: e,
                expected,
                actual,
            });
        }
    }

    // Prefix masses with each tree counted at the smallest layer whose
    // chain it crosses once per cut.
    let minimal_layer = |tree: &Tree| -> Result<Option<usize>> {
        for (j, layer_chain) in layer_chains.iter().enumerate() {
            if is_gao_tree(tree, layer_chain, graph)? {
                return Ok(Some(j + 1));
            }
        }
        Ok(None)
    };
    let mut minimal: BTreeMap<&Tree, Option<usize>> = BTreeMap::new();
    for term in decomposition.terms() {
        if !minimal.contains_key(&term.tree) {
            minimal.insert(&term.tree, minimal_layer(&term.tree)?);
        }
    }
    for (j, required) in thresholds.prefix_sums().iter().enumerate() {
        let mass: Rational = decomposition
            .terms()
            .iter()
            .filter(|t| matches!(minimal.get(&t.tree), Some(Some(m)) if *m <= j + 1))
            .fold(Rational::zero(), |a, t| a + &t.coefficient);
        if &mass < required {
            report.violations.push(LayeredViolation::PrefixMass {
                layer: j + 1,
                mass,
                required: required.clone(),
            });
        }
    }
    Ok(report)
}

/// The threshold ε_X = (r(X) - x(X)) / (r(X) - p(X)) below which a
/// fraction ε keeps ε p(X) + (1-ε) r(X) ≥ x(X). Defined only when
/// p(X) < r(X); for chain-points x(X) = r(X) forces p(X) = r(X), so
/// hitting that case is reported as a theory violation.
pub fn suitability_epsilon(
    graph: &Graph,
    x: &EdgeVector,
    chain: &Chain,
    edges: &crate::graph::EdgeSet,
) -> Result<Rational> {
    let matroid = GaoMatroid::new(graph, chain, graph.all_edges())?;
    let p = rat(matroid.rank(graph, edges) as i64);
    let r = rat(rank_graphic(graph, edges) as i64);
    if p == r {
        return Err(Error::UndefinedEpsilon);
    }
    let value = x.sum_over(edges);
    if value >= r {
        return Err(Error::TheoryViolation(format!(
            "x(X) = {value} reaches r(X) = {r} while p(X) = {p} < r(X); impossible for a chain-point"
        )));
    }
    Ok((&r - &value) / (&r - &p))
}
