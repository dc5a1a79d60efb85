//! The two line-oriented text formats: instance files (graph, edge
//! values, optional source/sink and chain) and decomposition files
//! (layer gaps and coefficient/layer/tree terms). Parsing reports line
//! numbers; printing is canonical, so parse-then-print is idempotent
//! and byte-stable across runs and platforms.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use gaotree_core::chain::{Chain, LayerThresholds};
use gaotree_core::decompose::{DecompositionTerm, LayeredDecomposition};
use gaotree_core::graph::{EdgeVector, Graph, Tree, Vertex, VertexSet};
use gaotree_core::rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub x: EdgeVector,
    pub source_sink: Option<(Vertex, Vertex)>,
    pub chain: Option<Chain>,
}

/// Parses an instance document: `graph <n>`, optional `s <v>` / `t <v>`,
/// `edge <u> <v> <p>[/<q>]` lines, optional `chain <v,v,...>` lines in
/// increasing inclusion order. `#` starts a comment.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut vertex_count: Option<usize> = None;
    let mut source: Option<Vertex> = None;
    let mut sink: Option<Vertex> = None;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut values: Vec<Rational> = Vec::new();
    let mut chain_sets: Vec<(usize, VertexSet)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let directive = parts.next().expect("nonempty line");
        let rest: Vec<&str> = parts.collect();
        match directive {
            "graph" => {
                if vertex_count.is_some() {
                    return Err(ParseError::new(line_no, "duplicate graph directive"));
                }
                let n = parse_usize(&rest, 0, line_no, "vertex count")?;
                if n == 0 {
                    return Err(ParseError::new(line_no, "vertex count must be positive"));
                }
                vertex_count = Some(n);
            }
            "s" => {
                source = Some(parse_usize(&rest, 0, line_no, "source vertex")?);
            }
            "t" => {
                sink = Some(parse_usize(&rest, 0, line_no, "sink vertex")?);
            }
            "edge" => {
                let u = parse_usize(&rest, 0, line_no, "edge endpoint")?;
                let v = parse_usize(&rest, 1, line_no, "edge endpoint")?;
                if u == v {
                    return Err(ParseError::new(line_no, format!("self-loop at vertex {u}")));
                }
                if let Some(n) = vertex_count {
                    if u >= n || v >= n {
                        return Err(ParseError::new(line_no, "edge endpoint out of range"));
                    }
                }
                let key = (u.min(v), u.max(v));
                if edges.iter().any(|&(a, b)| (a.min(b), a.max(b)) == key) {
                    return Err(ParseError::new(line_no, format!("duplicate edge {u} {v}")));
                }
                let Some(value_text) = rest.get(2) else {
                    return Err(ParseError::new(line_no, "edge needs a value"));
                };
                let Some(value) = parse_rational(value_text) else {
                    return Err(ParseError::new(
                        line_no,
                        format!("bad rational '{value_text}'"),
                    ));
                };
                if value < Rational::from_integer(0.into()) {
                    return Err(ParseError::new(line_no, "edge values must be nonnegative"));
                }
                edges.push((u, v));
                values.push(value);
            }
            "chain" => {
                let Some(list) = rest.first() else {
                    return Err(ParseError::new(line_no, "chain needs a vertex list"));
                };
                let mut set = VertexSet::new();
                for item in list.split(',') {
                    let v: Vertex = item
                        .trim()
                        .parse()
                        .map_err(|_| ParseError::new(line_no, format!("bad vertex '{item}'")))?;
                    set.insert(v);
                }
                chain_sets.push((line_no, set));
            }
            other => {
                return Err(ParseError::new(
                    line_no,
                    format!("unknown directive '{other}'"),
                ));
            }
        }
    }

    let Some(n) = vertex_count else {
        return Err(ParseError::new(1, "missing graph directive"));
    };
    let graph = Graph::new(n, &edges).map_err(|e| ParseError::new(1, e.to_string()))?;
    let x = EdgeVector::from_entries(values.into_iter().enumerate())
        .map_err(|e| ParseError::new(1, e.to_string()))?;
    for (what, v) in [("s", source), ("t", sink)] {
        if let Some(v) = v {
            if v >= n {
                return Err(ParseError::new(
                    1,
                    format!("{what} vertex {v} out of range"),
                ));
            }
        }
    }
    let source_sink = match (source, sink) {
        (Some(s), Some(t)) if s == t => {
            return Err(ParseError::new(1, "s and t must differ"));
        }
        (Some(s), Some(t)) => Some((s, t)),
        (None, None) => None,
        _ => return Err(ParseError::new(1, "s and t must be given together")),
    };
    let chain = if chain_sets.is_empty() {
        None
    } else {
        let first_line = chain_sets[0].0;
        let sets: Vec<VertexSet> = chain_sets.into_iter().map(|(_, s)| s).collect();
        Some(Chain::new(sets, n).map_err(|e| ParseError::new(first_line, e.to_string()))?)
    };
    Ok(Instance {
        graph,
        x,
        source_sink,
        chain,
    })
}

/// Canonical instance text; parsing it back yields the same instance.
pub fn format_instance(instance: &Instance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {}", instance.graph.vertex_count());
    if let Some((s, t)) = instance.source_sink {
        let _ = writeln!(out, "s {s}");
        let _ = writeln!(out, "t {t}");
    }
    for (e, (u, v)) in instance.graph.edges() {
        let _ = writeln!(out, "edge {u} {v} {}", format_rational(&instance.x.get(e)));
    }
    if let Some(chain) = &instance.chain {
        for set in chain.sets() {
            let _ = writeln!(out, "chain {}", join_vertices(set));
        }
    }
    out
}

fn join_vertices(set: &VertexSet) -> String {
    let items: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    items.join(",")
}

fn parse_usize(rest: &[&str], pos: usize, line: usize, what: &str) -> Result<usize, ParseError> {
    let Some(text) = rest.get(pos) else {
        return Err(ParseError::new(line, format!("missing {what}")));
    };
    text.parse()
        .map_err(|_| ParseError::new(line, format!("bad {what} '{text}'")))
}

/// Parses a decomposition document against its instance graph:
/// `layers <ell>`, `lambda <j> <p/q>` per layer, and
/// `term <p/q> <j> <u-v> <u-v> ...` per term.
pub fn parse_decomposition(text: &str, graph: &Graph) -> Result<LayeredDecomposition, ParseError> {
    let mut layer_count: Option<usize> = None;
    let mut lambdas: Vec<Option<Rational>> = Vec::new();
    let mut terms: Vec<DecompositionTerm> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let directive = parts.next().expect("nonempty line");
        let rest: Vec<&str> = parts.collect();
        match directive {
            "layers" => {
                let ell = parse_usize(&rest, 0, line_no, "layer count")?;
                if ell == 0 {
                    return Err(ParseError::new(line_no, "layer count must be positive"));
                }
                layer_count = Some(ell);
                lambdas = vec![None; ell];
            }
            "lambda" => {
                let Some(ell) = layer_count else {
                    return Err(ParseError::new(line_no, "lambda before layers"));
                };
                let j = parse_usize(&rest, 0, line_no, "layer index")?;
                if j == 0 || j > ell {
                    return Err(ParseError::new(
                        line_no,
                        format!("layer index {j} out of range"),
                    ));
                }
                let Some(value) = rest.get(1).and_then(|t| parse_rational(t)) else {
                    return Err(ParseError::new(line_no, "bad lambda value"));
                };
                if lambdas[j - 1].replace(value).is_some() {
                    return Err(ParseError::new(line_no, format!("duplicate lambda {j}")));
                }
            }
            "term" => {
                if layer_count.is_none() {
                    return Err(ParseError::new(line_no, "term before layers"));
                }
                let Some(coefficient) = rest.first().and_then(|t| parse_rational(t)) else {
                    return Err(ParseError::new(line_no, "bad term coefficient"));
                };
                let layer = parse_usize(&rest, 1, line_no, "term layer")?;
                let mut edges = BTreeSet::new();
                for pair in &rest[2..] {
                    let Some((u, v)) = pair.split_once('-') else {
                        return Err(ParseError::new(line_no, format!("bad edge '{pair}'")));
                    };
                    let u: Vertex = u
                        .parse()
                        .map_err(|_| ParseError::new(line_no, format!("bad vertex '{u}'")))?;
                    let v: Vertex = v
                        .parse()
                        .map_err(|_| ParseError::new(line_no, format!("bad vertex '{v}'")))?;
                    let Some(e) = graph.edge_between(u, v) else {
                        return Err(ParseError::new(
                            line_no,
                            format!("edge {u}-{v} is not in the instance graph"),
                        ));
                    };
                    edges.insert(e);
                }
                let tree =
                    Tree::new(graph, edges).map_err(|e| ParseError::new(line_no, e.to_string()))?;
                terms.push(DecompositionTerm {
                    coefficient,
                    tree,
                    layer,
                });
            }
            other => {
                return Err(ParseError::new(
                    line_no,
                    format!("unknown directive '{other}'"),
                ));
            }
        }
    }

    if layer_count.is_none() {
        return Err(ParseError::new(1, "missing layers directive"));
    }
    let lambdas: Vec<Rational> = lambdas
        .into_iter()
        .enumerate()
        .map(|(i, l)| l.ok_or_else(|| ParseError::new(1, format!("missing lambda {}", i + 1))))
        .collect::<Result<_, _>>()?;
    let thresholds =
        LayerThresholds::from_lambdas(lambdas).map_err(|e| ParseError::new(1, e.to_string()))?;
    Ok(LayeredDecomposition::new(thresholds, terms))
}

/// Canonical decomposition text.
pub fn format_decomposition(decomposition: &LayeredDecomposition, graph: &Graph) -> String {
    let mut out = String::new();
    let thresholds = decomposition.thresholds();
    let _ = writeln!(out, "layers {}", thresholds.layer_count());
    for (j, lambda) in thresholds.lambdas().iter().enumerate() {
        let _ = writeln!(out, "lambda {} {}", j + 1, format_rational(lambda));
    }
    for term in decomposition.terms() {
        let edges: Vec<String> = term
            .tree
            .edges()
            .iter()
            .map(|&e| {
                let (u, v) = graph.endpoints(e);
                format!("{u}-{v}")
            })
            .collect();
        let _ = writeln!(
            out,
            "term {} {} {}",
            format_rational(&term.coefficient),
            term.layer,
            edges.join(" ")
        );
    }
    out
}
