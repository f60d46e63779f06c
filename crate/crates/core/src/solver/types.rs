use rayon::prelude::*;

use super::{better, column_types, normalize, run_in_pool, Backend, ColumnTypeSummary, SolveOptions, Solution};
use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::instance::MirkinInstance;
use crate::num::Scalar;

const CHUNK: u64 = 1 << 14;

/// Enumerates the `2^{n'}` candidates that are constant on every column
/// type. Some optimum is always of this form: giving two same-type columns
/// different bits is strictly worse than one of the two uniform choices.
pub fn solve_types<C: Scalar>(inst: &MirkinInstance, opts: &SolveOptions) -> Result<Solution<C>> {
    let summary = column_types(inst);
    let k = summary.n_types();
    let cap = opts.max_types.min(62);
    if k > cap {
        return Err(Error::InstanceTooLarge {
            what: "column types",
            value: k,
            cap,
        });
    }
    let n = summary.n as i64;
    let half = (n / 2) * (n - n / 2);
    let mut weights = Vec::with_capacity(summary.entries());
    let mut bound = C::zero();
    for &w in &summary.multiplicities {
        let w = C::from_u64_checked(w)?;
        bound = bound.add_checked(w.mul_checked(C::from_i64_checked(half)?)?)?;
        weights.push(w);
    }
    // step[j][i] = e[j]·c_i[j], the change in d_i when x_j goes 0 → 1.
    let step: Vec<Vec<i64>> = (0..k)
        .map(|j| {
            (0..summary.entries())
                .map(|i| summary.counts[j] as i64 * summary.sign(i, j))
                .collect()
        })
        .collect();

    let total = 1u64 << k;
    let chunks: Vec<(u64, u64)> = (0..total.div_ceil(CHUNK))
        .map(|c| (c * CHUNK, ((c + 1) * CHUNK).min(total)))
        .collect();
    let ctx = Scan {
        summary: &summary,
        weights: &weights,
        step: &step,
        n,
    };
    let scan = |&(lo, hi): &(u64, u64)| ctx.run(lo, hi);
    let (value, argmin) = run_in_pool(opts.threads, || {
        if opts.threads <= 1 {
            chunks.iter().map(scan).reduce(better)
        } else {
            chunks.par_iter().map(scan).reduce_with(better)
        }
    })
    .expect("at least one candidate");
    Ok(Solution::new(value, argmin, inst.budget(), Backend::Types, total))
}

struct Scan<'a, C> {
    summary: &'a ColumnTypeSummary,
    weights: &'a [C],
    step: &'a [Vec<i64>],
    n: i64,
}

impl<C: Scalar> Scan<'_, C> {
    fn pair(&self, d: i64) -> C {
        C::from_i64(d * (self.n - d)).expect("bounded by the overflow precheck")
    }

    fn run(&self, lo: u64, hi: u64) -> (C, BitString) {
        let mut mask = lo ^ (lo >> 1);
        let mut dist: Vec<i64> = self.summary.ones.iter().map(|&w| w as i64).collect();
        for (j, step) in self.step.iter().enumerate() {
            if mask >> j & 1 == 1 {
                for (d, s) in dist.iter_mut().zip(step) {
                    *d += s;
                }
            }
        }
        let mut value = dist
            .iter()
            .zip(self.weights)
            .fold(C::zero(), |acc, (&d, &w)| acc + w * self.pair(d));
        let mut best = (value, normalize(self.summary.decode_mask(mask)));
        for g in lo + 1..hi {
            let j = g.trailing_zeros() as usize;
            mask ^= 1 << j;
            let up = mask >> j & 1 == 1;
            let mut delta = C::zero();
            for ((d, &s), &w) in dist.iter_mut().zip(&self.step[j]).zip(self.weights) {
                let old = *d;
                *d = if up { old + s } else { old - s };
                delta = delta + w * (self.pair(*d) - self.pair(old));
            }
            value = value + delta;
            if value <= best.0 {
                best = better(best, (value, normalize(self.summary.decode_mask(mask))));
            }
        }
        best
    }
}
