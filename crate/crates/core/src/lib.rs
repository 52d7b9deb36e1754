//! Minimum cost multicut (correlation clustering) by dual decomposition.
//!
//! The instance is split into edge, triangle and lollipop subproblems whose
//! costs are reparameterized by message passing; the sum of subproblem
//! minima is a lower bound on the optimum. Separation adds triangulated
//! cycles and odd wheels that raise the bound, and rounding on the
//! reparameterized edge costs supplies feasible multicuts.
//!
//! ```
//! use mcmp::{solve, MulticutInstance, SolveConfig, SolveStatus};
//!
//! let instance: MulticutInstance = "MULTICUT 3 3\n0 1 -2\n0 2 1\n1 2 1\n".parse().unwrap();
//! let result = solve(&instance, &SolveConfig::default()).unwrap();
//! assert_eq!(result.status, SolveStatus::Optimal);
//! assert!((result.upper_bound + 1.0).abs() < 1e-9);
//! ```

pub mod disjoint_set;
pub mod error;
pub mod factors;
pub mod instance;
pub mod message_passing;
pub mod oracle;
pub mod report;
pub mod rounding;
pub mod separation;
pub mod solver;

pub use disjoint_set::DisjointSet;
pub use error::{Error, Result};
pub use factors::{FactorGraph, FactorRef, LollipopId, TriangleId};
pub use instance::{Edge, EdgeLabeling, MulticutInstance, Partition};
pub use solver::{solve, ConvergenceRecord, SolveConfig, SolveResult, SolveStatus, Tighten};
