//! The 0/1 linear program over column types.
//!
//! With `x_j` the bit chosen for columns of type `j`, the distance of the
//! decoded string to entry `i` is `d_i = w_i + Σ_j e_j·c_ij·x_j`, and
//! `d_i·(n − d_i)` expands to a constant, a linear term per `x_j`, and a
//! product term per type pair. Each product `x_j·x_j'` is replaced by a
//! binary `y_jj'` tied down by
//!
//! ```text
//! y ≤ x_j,   y ≤ x_j',   x_j + x_j' − y ≤ 1
//! ```
//!
//! which admits exactly `y = x_j·x_j'` on binary inputs.

use std::fmt::{self, Write as _};

use rayon::prelude::*;

use super::{better, column_types, normalize, run_in_pool, Backend, SolveOptions, Solution};
use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::instance::MirkinInstance;
use crate::num::Scalar;

const CHUNK: u64 = 1 << 14;

/// Model variable. Indices are 0-based; rendered names are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X(usize),
    Y(usize, usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Var::X(j) => write!(f, "x{}", j + 1),
            Var::Y(a, b) => write!(f, "y_{}_{}", a + 1, b + 1),
        }
    }
}

/// `Σ coef·var <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint<C> {
    pub name: String,
    pub terms: Vec<(C, Var)>,
    pub rhs: C,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearModel<C> {
    n_types: usize,
    constant: C,
    linear: Vec<C>,
    /// Coefficients of `y_jj'` for `j < j'`, in lexicographic pair order.
    pair: Vec<C>,
    budget: Option<u64>,
    column_type: Vec<usize>,
}

/// Position of the pair `(a, b)`, `a < b`, among all pairs of `k` types.
#[inline]
fn pair_index(k: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < k);
    a * (2 * k - a - 1) / 2 + (b - a - 1)
}

impl<C: Scalar> LinearModel<C> {
    pub fn n_types(&self) -> usize {
        self.n_types
    }

    pub fn constant(&self) -> C {
        self.constant
    }

    pub fn linear(&self) -> &[C] {
        &self.linear
    }

    pub fn pair_coefficient(&self, a: usize, b: usize) -> C {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.pair[pair_index(self.n_types, a, b)]
    }

    pub fn budget(&self) -> Option<u64> {
        self.budget
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.budget = budget;
        self
    }

    pub fn n_pairs(&self) -> usize {
        self.pair.len()
    }

    pub fn variable_count(&self) -> usize {
        self.n_types + self.n_pairs()
    }

    pub fn constraint_count(&self) -> usize {
        3 * self.n_pairs() + usize::from(self.budget.is_some())
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.n_types;
        (0..k).flat_map(move |a| (a + 1..k).map(move |b| (a, b)))
    }

    /// All variables: `x` first, then `y` in lexicographic pair order.
    pub fn variables(&self) -> Vec<Var> {
        (0..self.n_types)
            .map(Var::X)
            .chain(self.pairs().map(|(a, b)| Var::Y(a, b)))
            .collect()
    }

    /// The objective without its constant, as `(coef, var)` terms.
    pub fn objective_terms(&self) -> Vec<(C, Var)> {
        self.linear
            .iter()
            .enumerate()
            .map(|(j, &c)| (c, Var::X(j)))
            .chain(self.pairs().zip(&self.pair).map(|((a, b), &c)| (c, Var::Y(a, b))))
            .collect()
    }

    pub fn constraints(&self) -> Result<Vec<Constraint<C>>> {
        let one = C::one();
        let mut rows = Vec::with_capacity(self.constraint_count());
        for (a, b) in self.pairs() {
            let y = Var::Y(a, b);
            let tag = format!("p_{}_{}", a + 1, b + 1);
            rows.push(Constraint {
                name: format!("{tag}_a"),
                terms: vec![(one, y), (-one, Var::X(a))],
                rhs: C::zero(),
            });
            rows.push(Constraint {
                name: format!("{tag}_b"),
                terms: vec![(one, y), (-one, Var::X(b))],
                rhs: C::zero(),
            });
            rows.push(Constraint {
                name: format!("{tag}_c"),
                terms: vec![(one, Var::X(a)), (one, Var::X(b)), (-one, y)],
                rhs: one,
            });
        }
        if let Some(k) = self.budget {
            rows.push(Constraint {
                name: "budget".into(),
                terms: self.objective_terms(),
                rhs: C::from_u64_checked(k)?.sub_checked(self.constant)?,
            });
        }
        Ok(rows)
    }

    fn value_of(&self, var: Var, x: &[bool], y: &[bool]) -> bool {
        match var {
            Var::X(j) => x[j],
            Var::Y(a, b) => y[pair_index(self.n_types, a, b)],
        }
    }

    /// Objective including the constant, for any binary `x` and `y`.
    pub fn objective(&self, x: &[bool], y: &[bool]) -> Result<C> {
        assert_eq!(x.len(), self.n_types);
        assert_eq!(y.len(), self.n_pairs());
        self.objective_terms()
            .into_iter()
            .filter(|&(_, v)| self.value_of(v, x, y))
            .try_fold(self.constant, |acc, (c, _)| acc.add_checked(c))
    }

    /// Whether every constraint row holds.
    pub fn is_feasible(&self, x: &[bool], y: &[bool]) -> Result<bool> {
        for row in self.constraints()? {
            let lhs = row
                .terms
                .iter()
                .filter(|&&(_, v)| self.value_of(v, x, y))
                .try_fold(C::zero(), |acc, &(c, _)| acc.add_checked(c))?;
            if lhs > row.rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `y_jj' = x_j·x_j'`.
    pub fn forced_y(&self, x: &[bool]) -> Vec<bool> {
        self.pairs().map(|(a, b)| x[a] && x[b]).collect()
    }

    /// Expands a type assignment into the full string.
    pub fn decode(&self, x: &[bool]) -> BitString {
        BitString::from_bits(self.column_type.iter().map(|&t| x[t]))
    }

    fn decode_mask(&self, mask: u64) -> BitString {
        BitString::from_bits(self.column_type.iter().map(|&t| mask >> t & 1 == 1))
    }
}

/// Builds the linearized program. Entry multiplicities weight every
/// coefficient.
pub fn build_ilp<C: Scalar>(inst: &MirkinInstance, budget: Option<u64>) -> Result<LinearModel<C>> {
    let s = column_types(inst);
    let k = s.n_types();
    let n = C::from_u64_checked(s.n as u64)?;
    let two = C::one() + C::one();
    let counts: Vec<C> = s
        .counts
        .iter()
        .map(|&e| C::from_u64_checked(e))
        .collect::<Result<_>>()?;

    let mut constant = C::zero();
    let mut linear = vec![C::zero(); k];
    let mut pair = vec![C::zero(); k * k.saturating_sub(1) / 2];
    for i in 0..s.entries() {
        let mult = C::from_u64_checked(s.multiplicities[i])?;
        let w = C::from_u64_checked(s.ones[i])?;
        let sign = |j: usize| if s.bit(i, j) { -C::one() } else { C::one() };
        // n·w − w²
        let c0 = n.mul_checked(w)?.sub_checked(w.mul_checked(w)?)?;
        constant = constant.add_checked(mult.mul_checked(c0)?)?;
        for j in 0..k {
            // (n·c − 2w·c − e)·e
            let c = sign(j);
            let t = n
                .mul_checked(c)?
                .sub_checked(two.mul_checked(w)?.mul_checked(c)?)?
                .sub_checked(counts[j])?
                .mul_checked(counts[j])?;
            linear[j] = linear[j].add_checked(mult.mul_checked(t)?)?;
        }
        for a in 0..k {
            for b in a + 1..k {
                // −2·e·e'·c·c'; the square contributes each unordered pair twice.
                let t = two
                    .mul_checked(counts[a])?
                    .mul_checked(counts[b])?
                    .mul_checked(sign(a) * sign(b))?;
                let idx = pair_index(k, a, b);
                pair[idx] = pair[idx].sub_checked(mult.mul_checked(t)?)?;
            }
        }
    }
    Ok(LinearModel {
        n_types: k,
        constant,
        linear,
        pair,
        budget,
        column_type: s.column_type,
    })
}

/// Implicit enumeration: every binary `x` in Gray-code order with `y`
/// forced to the products, so each step costs `O(n')`.
pub fn solve_ilp<C: Scalar>(model: &LinearModel<C>, opts: &SolveOptions) -> Result<Solution<C>> {
    let k = model.n_types;
    let cap = opts.max_types.min(62);
    if k > cap {
        return Err(Error::InstanceTooLarge {
            what: "column types",
            value: k,
            cap,
        });
    }
    // Every partial sum is bounded by the sum of absolute coefficients.
    model
        .objective_terms()
        .into_iter()
        .try_fold(model.constant.abs(), |acc, (c, _)| acc.add_checked(c.abs()))?;
    // Dense symmetric copy of the pair coefficients for the inner loop.
    let mut dense = vec![C::zero(); k * k];
    for a in 0..k {
        for b in a + 1..k {
            let c = model.pair_coefficient(a, b);
            dense[a * k + b] = c;
            dense[b * k + a] = c;
        }
    }

    let total = 1u64 << k;
    let chunks: Vec<(u64, u64)> = (0..total.div_ceil(CHUNK))
        .map(|c| (c * CHUNK, ((c + 1) * CHUNK).min(total)))
        .collect();
    let scan = |&(lo, hi): &(u64, u64)| scan_range(model, &dense, lo, hi);
    let (value, argmin) = run_in_pool(opts.threads, || {
        if opts.threads <= 1 {
            chunks.iter().map(scan).reduce(better)
        } else {
            chunks.par_iter().map(scan).reduce_with(better)
        }
    })
    .expect("at least one candidate");

    let x: Vec<bool> = argmin
        .iter()
        .zip(&model.column_type)
        .fold(vec![false; k], |mut x, (bit, &t)| {
            x[t] = bit;
            x
        });
    let y = model.forced_y(&x);
    assert!(
        model.clone().with_budget(None).is_feasible(&x, &y)?,
        "forced products violate the pair constraints"
    );

    if let Some(budget) = model.budget {
        if value.widen() > budget as i128 {
            return Err(Error::InfeasibleBudget {
                optimum: value.widen(),
                budget: budget as i128,
                argmin,
            });
        }
    }
    Ok(Solution::new(value, argmin, model.budget, Backend::Ilp, total))
}

fn scan_range<C: Scalar>(model: &LinearModel<C>, dense: &[C], lo: u64, hi: u64) -> (C, BitString) {
    let k = model.n_types;
    let mut mask = lo ^ (lo >> 1);
    let mut value = model.constant;
    for a in 0..k {
        if mask >> a & 1 == 1 {
            value = value + model.linear[a];
            for b in a + 1..k {
                if mask >> b & 1 == 1 {
                    value = value + dense[a * k + b];
                }
            }
        }
    }
    let mut best = (value, normalize(model.decode_mask(mask)));
    for g in lo + 1..hi {
        let j = g.trailing_zeros() as usize;
        mask ^= 1 << j;
        let row = &dense[j * k..(j + 1) * k];
        let mut gain = model.linear[j];
        for (b, &c) in row.iter().enumerate() {
            if b != j && mask >> b & 1 == 1 {
                gain = gain + c;
            }
        }
        if mask >> j & 1 == 1 {
            value = value + gain;
        } else {
            value = value - gain;
        }
        if value <= best.0 {
            best = better(best, (value, normalize(model.decode_mask(mask))));
        }
    }
    best
}

fn write_terms<C: Scalar>(out: &mut String, terms: &[(C, Var)]) {
    let mut first = true;
    for &(c, v) in terms {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let sign = if c < C::zero() { "-" } else { "+" };
        if first {
            if c < C::zero() {
                out.push_str("- ");
            }
        } else {
            write!(out, " {sign} ").unwrap();
        }
        if mag == C::one() {
            write!(out, "{v}").unwrap();
        } else {
            write!(out, "{mag} {v}").unwrap();
        }
        first = false;
    }
    if first {
        // LP format needs at least one term.
        out.push_str("0 x1");
    }
}

/// CPLEX LP text. The constant term is not representable in the objective
/// and is reported on a comment line instead.
pub fn export_lp<C: Scalar>(model: &LinearModel<C>) -> Result<String> {
    let mut out = String::new();
    out.push_str("\\ Mirkin distance minimization over column types\n");
    writeln!(out, "\\ objective constant: {}", model.constant).unwrap();
    out.push_str("Minimize\n obj: ");
    write_terms(&mut out, &model.objective_terms());
    out.push_str("\nSubject To\n");
    for row in model.constraints()? {
        write!(out, " {}: ", row.name).unwrap();
        write_terms(&mut out, &row.terms);
        writeln!(out, " <= {}", row.rhs).unwrap();
    }
    out.push_str("Binary\n");
    for v in model.variables() {
        writeln!(out, " {v}").unwrap();
    }
    out.push_str("End\n");
    Ok(out)
}
