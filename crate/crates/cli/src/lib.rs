//! Command implementations behind the `gaotree` binary. Each command
//! takes file contents and returns the process exit code with the text
//! for standard output, so the logic is directly testable.
//!
//! Exit codes: 0 success/pass, 1 verified failure, 2 input error.

pub mod format;

use std::fmt::Write as _;

use gaotree_core::chain::{derive_chain, layer_thresholds, validate_chain_point, Chain};
use gaotree_core::decompose::{layered_decompose, verify_layered};
use gaotree_core::fixtures;
use gaotree_core::graph::EdgeVector;
use gaotree_core::oracle::{
    check_structural_claims, derive_chain_bf, generate_corpus, CorpusInstance, SizeGuard,
};
use gaotree_core::rational::format_rational;

use format::{
    format_decomposition, format_instance, parse_decomposition, parse_instance, Instance,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Human,
    Tsv,
}

#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub exit_code: i32,
    pub text: String,
}

impl CommandOutput {
    fn pass(text: String) -> Self {
        CommandOutput {
            exit_code: EXIT_PASS,
            text,
        }
    }

    fn fail(text: String) -> Self {
        CommandOutput {
            exit_code: EXIT_FAIL,
            text,
        }
    }

    fn input_error(message: impl std::fmt::Display) -> Self {
        CommandOutput {
            exit_code: EXIT_INPUT,
            text: format!("error: {message}\n"),
        }
    }
}

/// The chain to work with: explicit chain lines win; otherwise it is
/// derived from the point, which requires `s`/`t` and exact degrees.
fn resolve_chain(instance: &Instance) -> Result<Chain, CommandOutput> {
    if let Some(chain) = &instance.chain {
        return Ok(chain.clone());
    }
    let Some((s, t)) = instance.source_sink else {
        return Err(CommandOutput::input_error(
            "instance has neither chain lines nor s/t vertices to derive one",
        ));
    };
    derive_chain(&instance.x, &instance.graph, s, t).map_err(CommandOutput::input_error)
}

fn sizes_text(instance: &Instance, chain: &Chain) -> Result<Vec<String>, CommandOutput> {
    Ok(chain
        .cut_sizes(&instance.graph, &instance.x)
        .map_err(CommandOutput::input_error)?
        .iter()
        .map(format_rational)
        .collect())
}

/// `verify`: chain-point conditions (i)-(iii) with a witness per
/// violation.
pub fn cmd_verify(instance_text: &str, format: OutputFormat) -> CommandOutput {
    let instance = match parse_instance(instance_text) {
        Ok(i) => i,
        Err(e) => return CommandOutput::input_error(e),
    };
    let chain = match resolve_chain(&instance) {
        Ok(c) => c,
        Err(out) => return out,
    };
    let report = match validate_chain_point(&instance.x, &chain, &instance.graph) {
        Ok(r) => r,
        Err(e) => return CommandOutput::input_error(e),
    };
    let sizes = match sizes_text(&instance, &chain) {
        Ok(s) => s,
        Err(out) => return out,
    };

    let mut out = String::new();
    match format {
        OutputFormat::Human => {
            if report.is_chain_point() {
                let _ = writeln!(
                    out,
                    "chain-point: PASS ({} cuts, sizes {})",
                    chain.len(),
                    sizes.join(", ")
                );
            } else {
                let _ = writeln!(
                    out,
                    "chain-point: FAIL ({} violations)",
                    report.violations.len()
                );
                for violation in &report.violations {
                    let _ = writeln!(out, "- {}", violation.describe());
                }
            }
        }
        OutputFormat::Tsv => {
            let _ = writeln!(
                out,
                "result\t{}",
                if report.is_chain_point() {
                    "pass"
                } else {
                    "fail"
                }
            );
            let _ = writeln!(out, "cuts\t{}", chain.len());
            for (i, size) in sizes.iter().enumerate() {
                let _ = writeln!(out, "size\t{i}\t{size}");
            }
            for violation in &report.violations {
                let _ = writeln!(out, "violation\t{}", violation.describe());
            }
        }
    }
    if report.is_chain_point() {
        CommandOutput::pass(out)
    } else {
        CommandOutput::fail(out)
    }
}

/// `chain`: derive (or echo) the chain of narrow cuts with exact sizes.
pub fn cmd_chain(instance_text: &str, format: OutputFormat) -> CommandOutput {
    let instance = match parse_instance(instance_text) {
        Ok(i) => i,
        Err(e) => return CommandOutput::input_error(e),
    };
    let chain = match resolve_chain(&instance) {
        Ok(c) => c,
        Err(out) => return out,
    };
    let sizes = match sizes_text(&instance, &chain) {
        Ok(s) => s,
        Err(out) => return out,
    };
    let mut out = String::new();
    match format {
        OutputFormat::Human => {
            let _ = writeln!(out, "chain: {} cuts", chain.len());
            for (i, (set, size)) in chain.sets().iter().zip(&sizes).enumerate() {
                let items: Vec<String> = set.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "cut {i}: {{{}}} size {size}", items.join(","));
            }
        }
        OutputFormat::Tsv => {
            for (i, (set, size)) in chain.sets().iter().zip(&sizes).enumerate() {
                let items: Vec<String> = set.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "cut\t{i}\t{}\t{size}", items.join(","));
            }
        }
    }
    CommandOutput::pass(out)
}

/// `decompose`: the layered convex combination as a decomposition file
/// (or TSV rows).
pub fn cmd_decompose(instance_text: &str, format: OutputFormat) -> CommandOutput {
    let instance = match parse_instance(instance_text) {
        Ok(i) => i,
        Err(e) => return CommandOutput::input_error(e),
    };
    let chain = match resolve_chain(&instance) {
        Ok(c) => c,
        Err(out) => return out,
    };
    let decomposition = match layered_decompose(&instance.graph, &instance.x, &chain) {
        Ok(d) => d,
        Err(e) => return CommandOutput::input_error(e),
    };
    let text = match format {
        OutputFormat::Human => format_decomposition(&decomposition, &instance.graph),
        OutputFormat::Tsv => {
            let mut out = String::new();
            let _ = writeln!(out, "layers\t{}", decomposition.thresholds().layer_count());
            for (j, lambda) in decomposition.thresholds().lambdas().iter().enumerate() {
                let _ = writeln!(out, "lambda\t{}\t{}", j + 1, format_rational(lambda));
            }
            for term in decomposition.terms() {
                let edges: Vec<String> = term
                    .tree
                    .edges()
                    .iter()
                    .map(|&e| {
                        let (u, v) = instance.graph.endpoints(e);
                        format!("{u}-{v}")
                    })
                    .collect();
                let _ = writeln!(
                    out,
                    "term\t{}\t{}\t{}",
                    format_rational(&term.coefficient),
                    term.layer,
                    edges.join(",")
                );
            }
            out
        }
    };
    CommandOutput::pass(text)
}

/// `check`: verify a decomposition file against its instance.
pub fn cmd_check(
    instance_text: &str,
    decomposition_text: &str,
    format: OutputFormat,
) -> CommandOutput {
    let instance = match parse_instance(instance_text) {
        Ok(i) => i,
        Err(e) => return CommandOutput::input_error(e),
    };
    let chain = match resolve_chain(&instance) {
        Ok(c) => c,
        Err(out) => return out,
    };
    let decomposition = match parse_decomposition(decomposition_text, &instance.graph) {
        Ok(d) => d,
        Err(e) => return CommandOutput::input_error(e),
    };
    let report = match verify_layered(&instance.graph, &instance.x, &chain, &decomposition) {
        Ok(r) => r,
        Err(e) => return CommandOutput::input_error(e),
    };
    let mut out = String::new();
    match format {
        OutputFormat::Human => {
            if report.is_valid() {
                let _ = writeln!(
                    out,
                    "decomposition: PASS ({} terms, {} layers)",
                    decomposition.terms().len(),
                    decomposition.thresholds().layer_count()
                );
            } else {
                let _ = writeln!(
                    out,
                    "decomposition: FAIL ({} violations)",
                    report.violations.len()
                );
                for violation in &report.violations {
                    let _ = writeln!(out, "- {}", violation.describe());
                }
            }
        }
        OutputFormat::Tsv => {
            let _ = writeln!(
                out,
                "result\t{}",
                if report.is_valid() { "pass" } else { "fail" }
            );
            let _ = writeln!(out, "terms\t{}", decomposition.terms().len());
            let _ = writeln!(out, "layers\t{}", decomposition.thresholds().layer_count());
            for violation in &report.violations {
                let _ = writeln!(out, "violation\t{}", violation.describe());
            }
        }
    }
    if report.is_valid() {
        CommandOutput::pass(out)
    } else {
        CommandOutput::fail(out)
    }
}

/// `oracle`: the brute-force agreement sweep over a seeded corpus:
/// every point decomposes, verifies, recombines, satisfies the
/// structural claims, and (for degree-constrained points) the flow and
/// enumeration chain derivations coincide.
pub fn cmd_oracle(seed: u64, limit: Option<usize>, format: OutputFormat) -> CommandOutput {
    let guard = SizeGuard::default();
    let corpus = match generate_corpus(seed, &guard) {
        Ok(c) => c,
        Err(e) => return CommandOutput::input_error(e),
    };
    let instances: Vec<&CorpusInstance> = match limit {
        Some(k) => corpus.iter().take(k).collect(),
        None => corpus.iter().collect(),
    };

    let mut failures: Vec<String> = Vec::new();
    let mut derived = 0usize;
    for (idx, instance) in instances.iter().enumerate() {
        match layered_decompose(&instance.graph, &instance.x, &instance.chain) {
            Err(e) => failures.push(format!("instance {idx}: decompose failed: {e}")),
            Ok(decomposition) => {
                if decomposition.recombined() != instance.x {
                    failures.push(format!("instance {idx}: recombination mismatch"));
                }
                match verify_layered(
                    &instance.graph,
                    &instance.x,
                    &instance.chain,
                    &decomposition,
                ) {
                    Err(e) => failures.push(format!("instance {idx}: verify errored: {e}")),
                    Ok(report) if !report.is_valid() => {
                        failures.push(format!("instance {idx}: verify failed"))
                    }
                    Ok(_) => {}
                }
            }
        }
        if let Err(e) =
            check_structural_claims(&instance.graph, &instance.x, &instance.chain, &guard)
        {
            failures.push(format!("instance {idx}: claims failed: {e}"));
        }
        if let Some((s, t)) = instance.source_sink {
            derived += 1;
            let fast = derive_chain(&instance.x, &instance.graph, s, t);
            let slow = derive_chain_bf(&instance.graph, &instance.x, s, t, &guard);
            match (fast, slow) {
                (Ok(a), Ok(b)) if a == b => {}
                other => failures.push(format!(
                    "instance {idx}: chain derivations differ: {other:?}"
                )),
            }
        }
    }

    let mut out = String::new();
    let passed = failures.is_empty();
    match format {
        OutputFormat::Human => {
            let _ = writeln!(out, "corpus: {} instances (seed {seed})", instances.len());
            let _ = writeln!(out, "decompose+verify+claims: {} checked", instances.len());
            let _ = writeln!(out, "chain derivation agreement: {derived} checked");
            for failure in &failures {
                let _ = writeln!(out, "- {failure}");
            }
            let _ = writeln!(out, "oracle: {}", if passed { "PASS" } else { "FAIL" });
        }
        OutputFormat::Tsv => {
            let _ = writeln!(out, "instances\t{}", instances.len());
            let _ = writeln!(out, "derivations\t{derived}");
            for failure in &failures {
                let _ = writeln!(out, "failure\t{failure}");
            }
            let _ = writeln!(out, "result\t{}", if passed { "pass" } else { "fail" });
        }
    }
    if passed {
        CommandOutput::pass(out)
    } else {
        CommandOutput::fail(out)
    }
}

/// `gen`: fixture instances a/b/c, or one corpus sample by seed and
/// index.
pub fn cmd_gen(what: &str, seed: u64, index: usize) -> CommandOutput {
    let instance = match what.to_ascii_lowercase().as_str() {
        "a" => fixture_instance(fixtures::fixture_a()),
        "b" => fixture_instance(fixtures::fixture_b()),
        "c" => fixture_instance(fixtures::fixture_c()),
        "corpus" => {
            let corpus = match generate_corpus(seed, &SizeGuard::default()) {
                Ok(c) => c,
                Err(e) => return CommandOutput::input_error(e),
            };
            let Some(sample) = corpus.get(index) else {
                return CommandOutput::input_error(format!(
                    "corpus index {index} out of range (0..{})",
                    corpus.len()
                ));
            };
            Instance {
                graph: sample.graph.clone(),
                x: sample.x.clone(),
                source_sink: sample.source_sink,
                chain: Some(sample.chain.clone()),
            }
        }
        other => {
            return CommandOutput::input_error(format!(
                "unknown fixture '{other}' (expected a, b, c or corpus)"
            ))
        }
    };
    CommandOutput::pass(format_instance(&instance))
}

fn fixture_instance((graph, x): (gaotree_core::graph::Graph, EdgeVector)) -> Instance {
    Instance {
        graph,
        x,
        source_sink: Some((fixtures::FIXTURE_S, fixtures::FIXTURE_T)),
        chain: None,
    }
}

/// Convenience used by tests: thresholds summary of an instance.
pub fn thresholds_summary(instance_text: &str) -> Result<String, CommandOutput> {
    let instance = parse_instance(instance_text).map_err(CommandOutput::input_error)?;
    let chain = resolve_chain(&instance)?;
    let thresholds = layer_thresholds(&instance.x, &chain, &instance.graph)
        .map_err(CommandOutput::input_error)?;
    Ok(thresholds
        .lambdas()
        .iter()
        .map(format_rational)
        .collect::<Vec<_>>()
        .join(","))
}
