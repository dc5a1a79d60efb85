//! Acceptance suite: one test per criterion, each printing a PASS line
//! (run with `cargo test --test acceptance -- --nocapture` to see them).
//!
//! 1. Fixture C reproduces its exact layered decomposition in under a
//!    second.
//! 2. Every corpus point decomposes, verifies, recombines exactly, and
//!    every peel leaves a chain-point for the shrunken chain.
//! 3. The two-matroid mass condition holds at the first-layer fraction
//!    on every small instance and fails a quarter past it on saturated
//!    ones.
//! 4. The structural claims hold exhaustively on every corpus point.
//! 5. Decompositions use at most |support| + 2|V| distinct trees.
//! 6. A Gao-tree exists inside every support, constructively.
//! 7. Equal seeds give byte-identical outputs end to end.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use gaotree_cli::{cmd_check, cmd_decompose, cmd_gen, OutputFormat, EXIT_PASS};
use gaotree_core::chain::{layer_thresholds, validate_chain_point, Chain};
use gaotree_core::decompose::{layered_decompose, peel_step, verify_layered, LaminarFamily};
use gaotree_core::fixtures::{fixture_b, fixture_c};
use gaotree_core::graph::{Tree, VertexSet};
use gaotree_core::matroid::gao_tree_spanning_laminar;
use gaotree_core::oracle::{
    check_structural_claims, generate_corpus, lemma3_condition_bf, CorpusInstance, SizeGuard,
};
use gaotree_core::rational::{frac, rat, Rational};

const SEED: u64 = 42;

fn corpus() -> &'static [CorpusInstance] {
    static CORPUS: OnceLock<Vec<CorpusInstance>> = OnceLock::new();
    CORPUS.get_or_init(|| generate_corpus(SEED, &SizeGuard::default()).expect("corpus"))
}

fn budget(name: &str, elapsed: Duration, limit: Duration) {
    assert!(
        elapsed <= limit,
        "{name} took {elapsed:?}, over the {limit:?} budget"
    );
}

#[test]
fn criterion_1_fixture_c_reproduction() {
    let started = Instant::now();
    let (graph, x) = fixture_c();
    let chain = gaotree_core::chain::derive_chain(&x, &graph, 0, 3).unwrap();
    let decomposition = layered_decompose(&graph, &x, &chain).unwrap();

    assert_eq!(
        decomposition.thresholds().lambdas(),
        &[frac(1, 2), frac(1, 2)]
    );

    let t1 = Tree::new(&graph, [0, 2, 4].into_iter().collect()).unwrap(); // sa ab bt
    let t2 = Tree::new(&graph, [1, 2, 3].into_iter().collect()).unwrap(); // sb ab at
    let by_tree = decomposition.aggregated_by_tree();
    assert_eq!(by_tree.len(), 2);
    assert_eq!(by_tree[&t1], frac(3, 4));
    assert_eq!(by_tree[&t2], frac(1, 4));

    // The full-chain Gao-tree mass covers the first layer: 3/4 ≥ 1/2.
    let full_chain_mass = by_tree[&t1].clone();
    assert!(full_chain_mass >= decomposition.thresholds().lambdas()[0]);

    assert_eq!(decomposition.recombined(), x);
    let elapsed = started.elapsed();
    budget("criterion 1", elapsed, Duration::from_secs(1));
    println!("acceptance 1: PASS - fixture C reproduced exactly in {elapsed:?}");
}

#[test]
fn criterion_2_oracle_equivalence_sweep() {
    let started = Instant::now();
    let corpus = corpus();
    assert!(
        corpus.len() >= 200,
        "corpus has only {} points",
        corpus.len()
    );

    for (idx, instance) in corpus.iter().enumerate() {
        let graph = &instance.graph;
        let decomposition =
            layered_decompose(graph, &instance.x, &instance.chain).unwrap_or_else(|e| {
                panic!("instance {idx}: decompose failed: {e}");
            });
        assert_eq!(
            decomposition.recombined(),
            instance.x,
            "instance {idx}: recombination"
        );
        let report = verify_layered(graph, &instance.x, &instance.chain, &decomposition).unwrap();
        assert!(report.is_valid(), "instance {idx}: {:?}", report.violations);

        // Peel-by-peel: the remainder is a chain-point for the chain of
        // cuts still narrower than 2 - ε, exactly.
        let mut x = instance.x.clone();
        let mut active = instance.chain.clone();
        let mut family = LaminarFamily::new(graph.vertex_count());
        loop {
            let (record, x_next, family_next) = peel_step(graph, &x, &active, &family).unwrap();
            if record.epsilon == rat(1) {
                break;
            }
            if record.epsilon > rat(0) {
                let bound = rat(2) - &record.epsilon;
                let sizes = active.cut_sizes(graph, &x).unwrap();
                let keep: Vec<VertexSet> = active
                    .sets()
                    .iter()
                    .zip(&sizes)
                    .filter(|(_, size)| **size < bound)
                    .map(|(s, _)| s.clone())
                    .collect();
                active = Chain::new(keep, graph.vertex_count()).unwrap();
                let report = validate_chain_point(&x_next, &active, graph).unwrap();
                assert!(
                    report.is_chain_point(),
                    "instance {idx}: peel left a non-chain-point: {:?}",
                    report.violations
                );
            }
            x = x_next;
            family = family_next;
        }
    }
    let elapsed = started.elapsed();
    budget("criterion 2", elapsed, Duration::from_secs(60));
    println!(
        "acceptance 2: PASS - {} corpus points decomposed, verified and peel-checked in {elapsed:?}",
        corpus.len()
    );
}

#[test]
fn criterion_3_two_matroid_mass_certificate() {
    let started = Instant::now();
    let guard = SizeGuard::default();
    let quarter = frac(1, 4);

    let mut checked = 0usize;
    let mut saturated_failures = 0usize;
    for (idx, instance) in corpus().iter().enumerate() {
        if instance.graph.edge_count() > 14 {
            continue;
        }
        let thresholds = layer_thresholds(&instance.x, &instance.chain, &instance.graph).unwrap();
        let lambda1 = thresholds.lambdas()[0].clone();
        let (holds, worst) = lemma3_condition_bf(
            &instance.graph,
            &instance.chain,
            &instance.x,
            &lambda1,
            &guard,
        )
        .unwrap();
        assert!(
            holds,
            "instance {idx}: condition fails at the first-layer fraction, worst {worst:?}"
        );
        checked += 1;

        // Single-layer points are saturated: their entire mass is
        // top-layer Gao-trees, so a quarter past λ1 = 1 must fail
        // whenever two support edges of one cut carry mass above 3/4.
        if thresholds.layer_count() == 1 {
            let past = &lambda1 + &quarter;
            let (holds, _) =
                lemma3_condition_bf(&instance.graph, &instance.chain, &instance.x, &past, &guard)
                    .unwrap();
            if !holds {
                saturated_failures += 1;
            }
        }
    }
    assert!(checked >= 100, "too few small instances: {checked}");
    assert!(
        saturated_failures >= 1,
        "no saturated instance failed a quarter past its first-layer fraction"
    );

    // Fixture B pinned: single layer, λ1 = 1, fails at 5/4.
    let (graph, x) = fixture_b();
    let chain = gaotree_core::chain::derive_chain(&x, &graph, 0, 3).unwrap();
    assert!(
        lemma3_condition_bf(&graph, &chain, &x, &rat(1), &guard)
            .unwrap()
            .0
    );
    assert!(
        !lemma3_condition_bf(&graph, &chain, &x, &frac(5, 4), &guard)
            .unwrap()
            .0
    );

    let elapsed = started.elapsed();
    budget("criterion 3", elapsed, Duration::from_secs(60));
    println!(
        "acceptance 3: PASS - mass condition held on {checked} instances at λ1 and failed past it on {saturated_failures} saturated ones in {elapsed:?}"
    );
}

#[test]
fn criterion_4_structural_claims_suite() {
    let started = Instant::now();
    let guard = SizeGuard::default();
    for (idx, instance) in corpus().iter().enumerate() {
        check_structural_claims(&instance.graph, &instance.x, &instance.chain, &guard)
            .unwrap_or_else(|e| panic!("instance {idx}: {e}"));
    }
    let elapsed = started.elapsed();
    budget("criterion 4", elapsed, Duration::from_secs(60));
    println!(
        "acceptance 4: PASS - interval, connectivity, strict-window and rank claims held on {} points in {elapsed:?}",
        corpus().len()
    );
}

#[test]
fn criterion_5_tree_count_bound() {
    let started = Instant::now();
    let mut max_ratio = Rational::from_integer(0.into());
    for (idx, instance) in corpus().iter().enumerate() {
        let decomposition =
            layered_decompose(&instance.graph, &instance.x, &instance.chain).unwrap();
        let bound = instance.x.support().len() + 2 * instance.graph.vertex_count();
        let used = decomposition.distinct_tree_count();
        assert!(
            used <= bound,
            "instance {idx}: {used} trees over the bound {bound}"
        );
        let ratio = frac(used as i64, bound as i64);
        if ratio > max_ratio {
            max_ratio = ratio;
        }
    }
    let elapsed = started.elapsed();
    budget("criterion 5", elapsed, Duration::from_secs(60));
    println!(
        "acceptance 5: PASS - tree counts within |support| + 2|V| on all points; max observed ratio {max_ratio} ({elapsed:?})"
    );
}

#[test]
fn criterion_6_gao_tree_existence() {
    let started = Instant::now();
    for (idx, instance) in corpus().iter().enumerate() {
        let family = LaminarFamily::new(instance.graph.vertex_count());
        let tree =
            gao_tree_spanning_laminar(&instance.graph, &instance.x, &instance.chain, &family)
                .unwrap_or_else(|e| panic!("instance {idx}: no Gao-tree found: {e}"));
        assert!(tree.edges().is_subset(&instance.x.support()));
        assert!(
            gaotree_core::chain::is_gao_tree(&tree, &instance.chain, &instance.graph).unwrap(),
            "instance {idx}: builder output is not a Gao-tree"
        );
    }
    let elapsed = started.elapsed();
    budget("criterion 6", elapsed, Duration::from_secs(60));
    println!(
        "acceptance 6: PASS - a Gao-tree was built inside the support of all {} points ({elapsed:?})",
        corpus().len()
    );
}

#[test]
fn criterion_7_seeded_determinism() {
    let started = Instant::now();
    let run = || -> String {
        let mut transcript = String::new();
        let corpus = generate_corpus(SEED, &SizeGuard::default()).expect("corpus");
        for instance in &corpus {
            let text = gaotree_cli::format::format_instance(&gaotree_cli::format::Instance {
                graph: instance.graph.clone(),
                x: instance.x.clone(),
                source_sink: instance.source_sink,
                chain: Some(instance.chain.clone()),
            });
            let decomposition = cmd_decompose(&text, OutputFormat::Human);
            assert_eq!(decomposition.exit_code, EXIT_PASS, "{}", decomposition.text);
            let check = cmd_check(&text, &decomposition.text, OutputFormat::Human);
            assert_eq!(check.exit_code, EXIT_PASS, "{}", check.text);
            transcript.push_str(&text);
            transcript.push_str(&decomposition.text);
            transcript.push_str(&check.text);
        }
        transcript
    };
    let first = run();
    let second = run();
    assert_eq!(
        first, second,
        "outputs differ between identically seeded runs"
    );
    // The generator command itself is seed-stable too.
    assert_eq!(
        cmd_gen("corpus", SEED, 3).text,
        cmd_gen("corpus", SEED, 3).text
    );
    let elapsed = started.elapsed();
    budget("criterion 7", elapsed, Duration::from_secs(60));
    println!(
        "acceptance 7: PASS - two seeded runs produced byte-identical transcripts ({} bytes, {elapsed:?})",
        first.len()
    );
}
