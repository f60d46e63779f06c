//! Exact solvers and hardness reductions for Mirkin distance minimization
//! on binary strings.
//!
//! Given binary strings `s_1, …, s_m` of length `n`, find `s*` minimizing
//! `Σ_i d_i·(n − d_i)` with `d_i` the Hamming distance from `s*` to `s_i`.
//! The crate provides:
//!
//! * packed [`BitString`]s and the distance itself ([`bitstring`], [`instance`]);
//! * the balanced pair gadget ([`gadget`]);
//! * 3SAT → NAE-3SAT → Mirkin reductions with budget certificates ([`reduction`]);
//! * three exact backends that cross-check each other ([`solver`]);
//! * property suites that exercise all of the above ([`verifier`]).
//!
//! Objective arithmetic is generic over [`Scalar`] (`i64`, `i128`); the
//! aliases below fix the default width.
//!
//! The instance `{0000, 0001, 1110}` has optimum 3 at `0001`. A value of 4
//! is sometimes quoted for it; exhaustive evaluation gives 3.

pub mod bitstring;
pub mod cli;
pub mod error;
pub mod gadget;
pub mod instance;
pub mod num;
pub mod reduction;
pub mod report;
pub mod solver;
pub mod verifier;

pub use bitstring::{hamming, mirkin_pair, BitString};
pub use error::{Error, Result};
pub use gadget::{check_half_half, GadgetFamily};
pub use instance::{mirkin_total, MirkinInstance};
pub use num::Scalar;
pub use report::PropertyReport;
pub use solver::{Backend, ColumnTypeSummary, Decision, SolveOptions};

/// Default objective width.
pub type Cost = i64;
/// Wide objective width for large reduction budgets.
pub type WideCost = i128;

pub type IlpModel = solver::LinearModel<Cost>;
pub type WideIlpModel = solver::LinearModel<WideCost>;
pub type SolveResult = solver::Solution<Cost>;
pub type WideSolveResult = solver::Solution<WideCost>;
