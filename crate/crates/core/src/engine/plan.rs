//! Choice of the Euler–Maclaurin cut point N and correction count M.
//!
//! The remainder after M Bernoulli corrections is bounded by
//!
//! |R_M| ≤ |s(s+1)…(s+2M+1) B_{2M+2} N^{-σ-2M-1}| / ((2M+2)! (σ+2M+1)),
//!
//! valid once σ + 2M + 1 > 0. The planner walks that bound in log space for a
//! handful of candidate N and keeps the cheapest pair that reaches the
//! target.

use super::bernoulli::ln_abs_scaled;
use crate::C64;

/// Largest number of Bernoulli corrections the planner will consider.
pub(crate) const MAX_CORRECTIONS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct EmPlan {
    pub n: usize,
    pub m: usize,
}

/// Cost of one prime power p^{-s} relative to one complex multiply.
const EXP_COST: f64 = 20.0;

fn prime_count_estimate(n: usize) -> f64 {
    let x = n.max(3) as f64;
    x / (x.ln() - 1.0).max(1.0)
}

/// Smallest M with the remainder bound below `ln_tol`, if any.
fn corrections_needed(s: C64, n: usize, ln_tol: f64, order: usize) -> Option<usize> {
    let ln_n = (n as f64).ln();
    let deriv_factor = order as f64 * (ln_n + 2.0).ln();
    // ln |s (s+1) … (s+j)|, grown incrementally.
    let mut ln_prod = 0.0;
    let mut j_next = 0usize;
    for m in 0..=MAX_CORRECTIONS {
        // Need the product up to (s + 2m + 1).
        while j_next <= 2 * m + 1 {
            let mut f = (s + j_next as f64).norm();
            if f == 0.0 {
                // s is a non-positive integer: for ζ itself every further
                // correction and the remainder vanish identically; the
                // derivatives keep the product of the other factors.
                if order == 0 {
                    return Some(m);
                }
                f = 1.0;
            }
            ln_prod += f.ln();
            j_next += 1;
        }
        let denom = s.re + 2.0 * m as f64 + 1.0;
        if denom <= 0.0 {
            continue;
        }
        let ln_bound =
            ln_prod + ln_abs_scaled(m + 1) - (s.re + 2.0 * m as f64 + 1.0) * ln_n - denom.ln()
                + deriv_factor;
        if ln_bound <= ln_tol {
            return Some(m);
        }
    }
    None
}

/// Plans an evaluation at `s` to absolute accuracy `tol`. `n_min` is the
/// floor on N (the caller's minimum and the |t|/2π validity condition).
pub(crate) fn plan(s: C64, tol: f64, order: usize, n_min: usize) -> Option<EmPlan> {
    let base = n_min
        .max((s.im.abs() / (2.0 * std::f64::consts::PI)).ceil() as usize + 10)
        .max(2);
    let ln_tol = tol.ln();
    let mut best: Option<(f64, EmPlan)> = None;
    for factor in [1.0, 1.15, 1.3, 1.5, 1.75, 2.0, 2.5, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0] {
        let n = (base as f64 * factor).ceil() as usize;
        if let Some(m) = corrections_needed(s, n, ln_tol, order) {
            let cost = prime_count_estimate(n) * EXP_COST
                + n as f64 * (1 + order) as f64
                + m as f64 * (4 + 3 * order) as f64;
            if best.map_or(true, |(c, _)| cost < c) {
                best = Some((cost, EmPlan { n, m }));
            }
        }
    }
    best.map(|(_, p)| p)
}
