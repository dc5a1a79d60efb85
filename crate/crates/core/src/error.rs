//! Crate-wide error type.

use alloc::collections::BTreeSet;
use alloc::string::String;
use core::fmt;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: out-of-range vertex, self-loop, parallel edge,
    /// negative value, unknown edge, and the like.
    Input(String),
    /// A chain failed the strict-nesting / nonempty-level requirements.
    InvalidChain(String),
    /// The data contradicts the structure the algorithm relies on
    /// (e.g. narrow cuts that do not form a chain). Signals that the
    /// supplied point is not what it claims to be.
    Inconsistency(String),
    /// A max-flow instance with no finite source-sink cut.
    UnboundedFlow,
    /// The ground set contains no spanning tree crossing every chain
    /// cut exactly once.
    NoGaoTree,
    /// A caller violated an operation contract (e.g. passed a non-tight
    /// set where tightness is required).
    ContractViolation(String),
    /// A state the underlying theory rules out for valid inputs was
    /// reached; reported instead of silently producing garbage.
    TheoryViolation(String),
    /// Internal progress guard tripped (iteration bound exceeded).
    InternalLimit(String),
    /// A brute-force oracle was asked to run beyond its size guard.
    GuardExceeded { limit: usize, requested: usize },
    /// `suitability_epsilon` is undefined when the two ranks coincide.
    UndefinedEpsilon,
    /// A vertex set that must be tight for the current point is not.
    NotTight(BTreeSet<Vertex>),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Input(msg) => write!(f, "input error: {msg}"),
            Error::InvalidChain(msg) => write!(f, "invalid chain: {msg}"),
            Error::Inconsistency(msg) => write!(f, "inconsistent input: {msg}"),
            Error::UnboundedFlow => write!(f, "no finite source-sink cut exists"),
            Error::NoGaoTree => write!(
                f,
                "ground set has no spanning tree crossing every chain cut exactly once"
            ),
            Error::ContractViolation(msg) => write!(f, "contract violation: {msg}"),
            Error::TheoryViolation(msg) => write!(f, "theory violation: {msg}"),
            Error::InternalLimit(msg) => write!(f, "internal limit exceeded: {msg}"),
            Error::GuardExceeded { limit, requested } => {
                write!(
                    f,
                    "size guard exceeded: requested {requested}, limit {limit}"
                )
            }
            Error::UndefinedEpsilon => write!(f, "epsilon threshold undefined: ranks coincide"),
            Error::NotTight(set) => write!(f, "set {set:?} is not tight for the current point"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
