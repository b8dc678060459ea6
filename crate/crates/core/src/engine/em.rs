//! Euler–Maclaurin evaluation of ζ and its first two derivatives at
//! working precision.
//!
//! ζ(s) = Σ_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//!        + Σ_{k=1}^{M} b_k s(s+1)…(s+2k-2) N^{-s-2k+1} + R_M
//!
//! with b_k = B_{2k}/(2k)!. Derivatives are taken term by term: each n^{-s}
//! contributes (-ln n)^j n^{-s}, and the correction polynomials carry their
//! own derivatives along the product recursion.

use rug::{Assign, Complex, Float};

use super::mp::{ln_table, spf_sieve, to_c64};
use super::plan::plan;
use super::{bernoulli, MAX_ORDER};
use crate::{Error, Result};

/// Returns [ζ, ζ′, ζ″][..=order] at `s`, each to absolute accuracy `tol`,
/// computed with `bits` of working precision.
pub(crate) fn zeta_derivs(
    s: &Complex,
    order: usize,
    bits: u32,
    tol: f64,
    n_min: usize,
) -> Result<Vec<Complex>> {
    assert!(order <= MAX_ORDER);
    let sf = to_c64(s);
    let p = plan(sf, tol, order, n_min).ok_or_else(|| {
        Error::PrecisionExhausted(format!("no Euler-Maclaurin plan reaches {tol:e} at s = {sf}"))
    })?;
    // Direct terms grow like N^{-σ}; the working precision must absorb them.
    let ln_scale = -sf.re * (p.n as f64).ln();
    if ln_scale > 0.0 && ln_scale - (bits as f64) * std::f64::consts::LN_2 > tol.ln() {
        return Err(Error::PrecisionExhausted(format!(
            "cancellation in the direct sum at s = {sf} needs more than {bits} bits"
        )));
    }

    let n = p.n;
    let logs = ln_table(bits, n);
    let spf = spf_sieve(n);

    let mut pow: Vec<Complex> = Vec::with_capacity(n + 1);
    pow.push(Complex::new(bits));
    pow.push(Complex::with_val(bits, 1));
    let mut acc: Vec<Complex> = (0..=order).map(|_| Complex::new(bits)).collect();
    acc[0] += 1u32;
    let mut tmp = Complex::new(bits);
    for k in 2..=n {
        let q = spf[k] as usize;
        let v = if q == k {
            let arg = Complex::with_val(bits, s * &logs[k]);
            Complex::with_val(bits, -arg).exp()
        } else {
            Complex::with_val(bits, &pow[q] * &pow[k / q])
        };
        if k < n {
            acc[0] += &v;
            if order >= 1 {
                tmp.assign(&v * &logs[k]);
                acc[1] -= &tmp;
                if order >= 2 {
                    tmp *= &logs[k];
                    acc[2] += &tmp;
                }
            }
        }
        pow.push(v);
    }

    let w = &pow[n];
    let ln_n = &logs[n];
    let n_f = Float::with_val(bits, n);

    // N^{1-s}/(s-1) and its derivatives.
    let inv = Complex::with_val(bits, s - 1u32).recip();
    let a0 = Complex::with_val(bits, w * &n_f) * &inv;
    let mut a = vec![a0];
    if order >= 1 {
        let a1 = -Complex::with_val(bits, &a[0] * ln_n) - Complex::with_val(bits, &a[0] * &inv);
        a.push(a1);
    }
    if order >= 2 {
        let inv2 = Complex::with_val(bits, &inv * &inv);
        let a2 = -Complex::with_val(bits, &a[1] * ln_n) - Complex::with_val(bits, &a[1] * &inv)
            + Complex::with_val(bits, &a[0] * &inv2);
        a.push(a2);
    }

    // N^{-s}/2 and its derivatives.
    let mut half = Complex::with_val(bits, w / 2u32);
    for (j, acc_j) in acc.iter_mut().enumerate() {
        *acc_j += &a[j];
        *acc_j += &half;
        half *= ln_n;
        half = -half;
    }

    // Bernoulli corrections. g_k = P_k(s) N^{-s-2k+1}, P_1 = s.
    let b = bernoulli::scaled(bits, p.m + 1);
    let n2 = Float::with_val(bits, &n_f * &n_f);
    let mut wk = Complex::with_val(bits, w / &n_f);
    let mut poly = s.clone();
    let mut dpoly = Complex::with_val(bits, 1);
    let mut ddpoly = Complex::new(bits);
    let ln_n2 = Float::with_val(bits, ln_n * ln_n);
    for k in 1..=p.m {
        let c = Complex::with_val(bits, &wk * &b[k]);
        acc[0] += Complex::with_val(bits, &poly * &c);
        if order >= 1 {
            let lp = Complex::with_val(bits, &poly * ln_n);
            let d1 = Complex::with_val(bits, &dpoly - &lp);
            acc[1] += d1 * &c;
            if order >= 2 {
                let mut d2 = ddpoly.clone();
                d2 -= Complex::with_val(bits, &dpoly * ln_n) * 2u32;
                d2 += Complex::with_val(bits, &poly * &ln_n2);
                acc[2] += d2 * &c;
            }
        }
        for j in [2 * k - 1, 2 * k] {
            let f = Complex::with_val(bits, s + j as u32);
            if order >= 2 {
                ddpoly *= &f;
                ddpoly += Complex::with_val(bits, &dpoly * 2u32);
            }
            if order >= 1 {
                dpoly *= &f;
                dpoly += &poly;
            }
            poly *= &f;
        }
        wk /= &n2;
    }
    Ok(acc)
}
