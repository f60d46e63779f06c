//! Exact solvers. Three independent routes to the same optimum:
//!
//! * [`solve_brute`] walks all `2^(n-1)` candidates with a leading zero in
//!   Gray-code order, updating every Hamming distance incrementally.
//! * [`solve_types`] enumerates constant assignments per column type.
//! * [`solve_ilp`] enumerates the linearized 0/1 program from [`build_ilp`].
//!
//! All three return the lexicographically smallest optimal string whose
//! first bit is 0.

mod brute;
mod columns;
mod ilp;
mod types;

pub use brute::solve_brute;
pub use columns::{column_types, ColumnTypeSummary};
pub use ilp::{build_ilp, export_lp, solve_ilp, Constraint, LinearModel, Var};
pub use types::solve_types;

use std::fmt;
use std::str::FromStr;

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::num::Scalar;

pub const DEFAULT_MAX_N: usize = 30;
pub const DEFAULT_MAX_TYPES: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    Brute,
    Types,
    Ilp,
}

impl Backend {
    pub const ALL: [Backend; 3] = [Backend::Brute, Backend::Types, Backend::Ilp];

    pub fn name(self) -> &'static str {
        match self {
            Backend::Brute => "brute",
            Backend::Types => "types",
            Backend::Ilp => "ilp",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Backend::Brute),
            "types" => Ok(Backend::Types),
            "ilp" => Ok(Backend::Ilp),
            other => Err(Error::InvalidParameter(format!("unknown backend {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Yes => "YES",
            Decision::No => "NO",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub max_n: usize,
    pub max_types: usize,
    /// Worker threads; 0 or 1 runs on the calling thread.
    pub threads: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            max_n: DEFAULT_MAX_N,
            max_types: DEFAULT_MAX_TYPES,
            threads: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution<C> {
    pub value: C,
    pub argmin: BitString,
    pub decision: Option<Decision>,
    pub backend: Backend,
    pub candidates: u64,
}

impl<C: Scalar> Solution<C> {
    fn new(value: C, argmin: BitString, budget: Option<u64>, backend: Backend, candidates: u64) -> Self {
        let decision = budget.map(|k| {
            if value.widen() <= k as i128 {
                Decision::Yes
            } else {
                Decision::No
            }
        });
        Solution {
            value,
            argmin,
            decision,
            backend,
            candidates,
        }
    }

    /// The `OPT` / `ARG` / `DECISION` lines printed by the CLI.
    pub fn render(&self) -> String {
        let mut out = format!("OPT {}\nARG {}\n", self.value, self.argmin);
        if let Some(d) = self.decision {
            out.push_str(&format!("DECISION {d}\n"));
        }
        out
    }
}

/// The complement when the first bit is 1, so every candidate is compared
/// by its leading-zero representative.
pub(crate) fn normalize(s: BitString) -> BitString {
    if s.get(1) == Some(true) {
        s.complement()
    } else {
        s
    }
}

/// Keeps the better of two `(value, argmin)` pairs: lower value, then the
/// lexicographically smaller string. Independent of merge order.
pub(crate) fn better<C: Ord, K: Ord>(a: (C, K), b: (C, K)) -> (C, K) {
    if (&b.0, &b.1) < (&a.0, &a.1) {
        b
    } else {
        a
    }
}

pub(crate) fn run_in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    if threads <= 1 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Runs any backend with the default width.
pub fn solve<C: Scalar>(
    backend: Backend,
    inst: &crate::instance::MirkinInstance,
    opts: &SolveOptions,
) -> Result<Solution<C>> {
    match backend {
        Backend::Brute => solve_brute(inst, opts),
        Backend::Types => solve_types(inst, opts),
        Backend::Ilp => {
            let model = build_ilp::<C>(inst, inst.budget())?;
            solve_ilp(&model, opts)
        }
    }
}
