use rayon::prelude::*;

use super::{better, run_in_pool, Backend, SolveOptions, Solution};
use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::instance::MirkinInstance;
use crate::num::Scalar;

const CHUNK: u64 = 1 << 15;

/// Exhaustive search over all strings with first bit 0.
///
/// Candidates are packed into a `u64` with position 1 as the most
/// significant of the `n` low bits, so numeric order is lexicographic
/// order. Position 1 is pinned to 0 (a string and its complement have the
/// same distance to everything) and the remaining `n − 1` bits follow a
/// reflected Gray code, so each step flips one bit and moves every
/// Hamming distance by exactly one.
pub fn solve_brute<C: Scalar>(inst: &MirkinInstance, opts: &SolveOptions) -> Result<Solution<C>> {
    let n = inst.n();
    let cap = opts.max_n.min(63);
    if n > cap {
        return Err(Error::InstanceTooLarge {
            what: "n",
            value: n,
            cap,
        });
    }
    let entries = inst.entries();
    let rows: Vec<u64> = entries
        .iter()
        .map(|e| e.string.to_u64().expect("n <= 63"))
        .collect();

    // Weighted cost table: cost[i * (n + 1) + d] = w_i · d · (n − d).
    // Every running value and delta is bounded by the sum of the row
    // maxima, so once that sum fits the scan needs no checked arithmetic.
    let mut cost = Vec::with_capacity(entries.len() * (n + 1));
    entries.iter().try_fold(C::zero(), |bound, e| {
        let w = C::from_u64_checked(e.multiplicity)?;
        let mut row_max = C::zero();
        for d in 0..=n {
            let c = w.mul_checked(C::from_u64_checked((d * (n - d)) as u64)?)?;
            row_max = row_max.max(c);
            cost.push(c);
        }
        bound.add_checked(row_max)
    })?;

    let total = 1u64 << (n - 1);
    let chunks: Vec<(u64, u64)> = (0..total.div_ceil(CHUNK))
        .map(|c| (c * CHUNK, ((c + 1) * CHUNK).min(total)))
        .collect();
    let scan = |&(lo, hi): &(u64, u64)| scan_range(&rows, &cost, n, lo, hi);

    let (value, cand) = run_in_pool(opts.threads, || {
        if opts.threads <= 1 {
            chunks.iter().map(scan).reduce(better)
        } else {
            chunks.par_iter().map(scan).reduce_with(better)
        }
    })
    .expect("at least one candidate");

    Ok(Solution::new(
        value,
        BitString::from_u64(cand, n),
        inst.budget(),
        Backend::Brute,
        total,
    ))
}

fn scan_range<C: Scalar>(rows: &[u64], cost: &[C], n: usize, lo: u64, hi: u64) -> (C, u64) {
    let stride = n + 1;
    let mut cand = lo ^ (lo >> 1);
    let mut dist: Vec<usize> = rows.iter().map(|r| (cand ^ r).count_ones() as usize).collect();
    let mut value = dist
        .iter()
        .enumerate()
        .fold(C::zero(), |acc, (i, &d)| acc + cost[i * stride + d]);
    let mut best = (value, cand);
    for g in lo + 1..hi {
        let bit = g.trailing_zeros();
        cand ^= 1 << bit;
        let now = (cand >> bit) & 1;
        let mut delta = C::zero();
        for (i, (d, row)) in dist.iter_mut().zip(rows).enumerate() {
            let base = i * stride;
            let old = *d;
            *d = if (row >> bit) & 1 == now { old - 1 } else { old + 1 };
            delta = delta + (cost[base + *d] - cost[base + old]);
        }
        value = value + delta;
        if value < best.0 || (value == best.0 && cand < best.1) {
            best = (value, cand);
        }
    }
    best
}
