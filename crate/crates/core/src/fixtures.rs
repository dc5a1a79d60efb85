//! Hand-crafted instances used by tests and by the `gen` subcommand.
//!
//! All three live on four vertices s=0, a=1, b=2, t=3 and satisfy the
//! s-t degree constraints, so their chains can be derived from the
//! point alone.

use crate::graph::{EdgeVector, Graph};
use crate::rational::{frac, rat};

pub const FIXTURE_S: usize = 0;
pub const FIXTURE_T: usize = 3;

/// Fixture A: the integral path s-a-b-t. One layer, one tree.
pub fn fixture_a() -> (Graph, EdgeVector) {
    let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).expect("fixture graph");
    let x =
        EdgeVector::from_entries([(0, rat(1)), (1, rat(1)), (2, rat(1))]).expect("fixture vector");
    (g, x)
}

/// Fixture B: the half-integral mix of the paths s-a-b-t and s-b-a-t.
/// Single layer; every narrow cut has size one.
pub fn fixture_b() -> (Graph, EdgeVector) {
    let g = Graph::new(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).expect("fixture graph");
    let x = EdgeVector::from_entries([
        (0, frac(1, 2)),
        (1, frac(1, 2)),
        (2, rat(1)),
        (3, frac(1, 2)),
        (4, frac(1, 2)),
    ])
    .expect("fixture vector");
    (g, x)
}

/// Fixture C: the two-layer example, a 3/4 : 1/4 mix of the same two
/// paths, carried on the complete graph so the zero edge st is present
/// but outside the support. Edge order: sa, sb, ab, at, bt, st.
pub fn fixture_c() -> (Graph, EdgeVector) {
    let g =
        Graph::new(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 3)]).expect("fixture graph");
    let x = EdgeVector::from_entries([
        (0, frac(3, 4)),
        (1, frac(1, 4)),
        (2, rat(1)),
        (3, frac(1, 4)),
        (4, frac(3, 4)),
        (5, rat(0)),
    ])
    .expect("fixture vector");
    (g, x)
}
