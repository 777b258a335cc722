//! Crate-wide error type.

use thiserror::Error;

/// Coarse classification used by the CLI to pick an exit status.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Invalid input or a violated precondition.
    Domain,
    /// A configured resource cap was hit; the answer is undecided, not "no".
    Resource,
    /// Malformed input file or value.
    Parse,
}

#[derive(Debug, Error)]
pub enum Error {
    // -- graph construction and structural preconditions --
    #[error("graphs above {max} nodes are not supported (got {n})")]
    TooManyNodes { n: usize, max: usize },
    #[error("self-loop at node {node}")]
    SelfLoop { node: usize },
    #[error("duplicate edge ({a}, {b})")]
    DuplicateEdge { a: usize, b: usize },
    #[error("node {node} out of range for {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("node counts differ: {left} vs {right}")]
    NodeCountMismatch { left: usize, right: usize },
    #[error("operation needs at least {required} nodes (got {n})")]
    TooFewNodes { n: usize, required: usize },
    #[error("{name} must be at least 1")]
    NonPositiveParameter { name: &'static str },
    #[error("a cycle graph needs at least 3 nodes (got {n})")]
    CycleTooSmall { n: usize },
    #[error("cannot take the union of an empty graph list")]
    EmptyUnion,
    #[error("reference graph must be connected")]
    DisconnectedReference,

    // -- benefit schedules and utilities --
    #[error("benefit values must be nonincreasing (violated at index {index})")]
    BenefitNotNonincreasing { index: usize },
    #[error("benefit values must be nonnegative (violated at index {index})")]
    NegativeBenefit { index: usize },
    #[error("edge cost must be positive")]
    NonPositiveCost,
    #[error("benefit schedule covers distances up to {covered}, but {needed} is required")]
    ScheduleTooShort { covered: usize, needed: usize },
    #[error("utility bounds require b(1)-b(2) <= c <= b(1)")]
    CostRegime,
    #[error("the start index is defined only for high-cost schedules (c > b(1))")]
    NotHighCost,

    // -- resource caps --
    #[error("subset search supports at most {max} nodes (got {n})")]
    DensityCapExceeded { n: usize, max: usize },
    #[error("spanning-tree enumeration exceeded the cap of {cap} trees; undecided")]
    SpanningTreeCapExceeded { cap: u64 },
    #[error("candidate space of {candidates} graphs exceeds the cap of {cap}")]
    CandidateCapExceeded { candidates: u128, cap: u64 },
    #[error("instance has {n} active nodes, above the exhaustive cap of {max}")]
    ExhaustiveCapExceeded { n: usize, max: usize },
    #[error("candidate edge universe of {edges} pairs exceeds the 64-bit enumeration limit")]
    UniverseTooLarge { edges: usize },
    #[error("schedule denominators overflow the exact arithmetic range")]
    ArithmeticOverflow,

    // -- solver preconditions --
    #[error("component-wise solving requires b(1) < c")]
    SplitRegime,
    #[error("component-wise solving requires every component to be a clique or a hub of cliques")]
    UnsupportedShape,
    #[error("no closed-form rule applies to this instance")]
    NoClosedForm,
    #[error("decision threshold must be positive")]
    ThresholdNotPositive,

    // -- reduction preconditions --
    #[error("the reduction is defined for stretch 4 (got {t})")]
    ReductionStretch { t: usize },
    #[error("the reduction needs at least 6 nodes (got {n}); decide small instances directly")]
    ReductionTooSmall { n: usize },

    // -- game preconditions --
    #[error("player index {index} out of range for {count} players")]
    BadPlayerIndex { index: usize, count: usize },
    #[error("profile has {layers} layers but the game has {players} players")]
    LayerCountMismatch { layers: usize, players: usize },
    #[error("this construction requires at least one low-cost player")]
    NoLowCostPlayer,
    #[error("this construction requires no low-cost players")]
    LowCostPlayerPresent,
    #[error("all players must be high-cost for this partition (player {index} is not)")]
    NotAllHighCost { index: usize },
    #[error("{mu} medium-cost players exceed the {n} available hub nodes")]
    TooManyMediumPlayers { mu: usize, n: usize },

    // -- i/o --
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::DensityCapExceeded { .. }
            | Error::SpanningTreeCapExceeded { .. }
            | Error::CandidateCapExceeded { .. }
            | Error::ExhaustiveCapExceeded { .. }
            | Error::UniverseTooLarge { .. } => ErrorKind::Resource,
            Error::Parse(_) => ErrorKind::Parse,
            _ => ErrorKind::Domain,
        }
    }
}
