use std::io;

use thiserror::Error;

/// Errors produced by instance handling, factor manipulation and the solver.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("node index {node} out of range for {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },

    #[error("self-loop on node {0}")]
    SelfLoop(usize),

    #[error("non-finite cost {cost} on edge ({u}, {v})")]
    NonFiniteCost { u: usize, v: usize, cost: f64 },

    #[error("labeling has length {actual}, expected {expected}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("edge {0} is not a variable of this factor")]
    UnknownEdgeVariable(usize),

    #[error("degenerate lollipop: triangle ({u}, {a}, {b}) with spoke target {s}")]
    DegenerateLollipop {
        u: usize,
        a: usize,
        b: usize,
        s: usize,
    },

    #[error("exhaustive routine limited to {limit} nodes, instance has {node_count}")]
    TooLarge { node_count: usize, limit: usize },

    #[error("fractional value {value} on edge {edge} outside [0, 1]")]
    OutOfUnitInterval { edge: usize, value: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
