//! Scaled Bernoulli numbers b_k = B_{2k}/(2k)!.
//!
//! Small indices are exact rationals (Akiyama–Tanigawa). Past that the
//! identity b_k = (-1)^{k+1} 2 ζ(2k) / (2π)^{2k} is used, where ζ(2k) is a
//! rapidly convergent direct sum.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::float::Constant;
use rug::ops::PowAssign;
use rug::{Float, Integer, Rational};

const EXACT_K: usize = 40;

fn exact_even_bernoulli() -> &'static Vec<Rational> {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n_max = 2 * EXACT_K;
        let mut a: Vec<Rational> = Vec::with_capacity(n_max + 1);
        let mut out = Vec::with_capacity(EXACT_K + 1);
        for m in 0..=n_max {
            a.push(Rational::from((1, m as u64 + 1)));
            for j in (1..=m).rev() {
                let diff = Rational::from(&a[j - 1] - &a[j]);
                a[j - 1] = diff * Integer::from(j);
            }
            if m % 2 == 0 {
                out.push(a[0].clone());
            }
        }
        out
    })
}

fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

fn compute_scaled(bits: u32, k: usize) -> Float {
    if k <= EXACT_K {
        let b = &exact_even_bernoulli()[k];
        let r = Rational::from(b / factorial(2 * k as u32));
        return Float::with_val(bits, &r);
    }
    let work = bits + 32;
    let two_k = 2 * k as u32;
    // ζ(2k) - 1 = Σ_{n≥2} n^{-2k}; stop once n^{-2k} < 2^{-work}.
    let limit = (2f64.powf(work as f64 / two_k as f64)).ceil() as u64 + 1;
    let mut zeta = Float::with_val(work, 1);
    for n in 2..=limit.max(2) {
        let mut term = Float::with_val(work, n);
        term.pow_assign(two_k);
        term.recip_mut();
        zeta += &term;
    }
    let mut two_pi = Float::with_val(work, Constant::Pi);
    two_pi *= 2;
    two_pi.pow_assign(two_k);
    let mut out = Float::with_val(work, &zeta * 2u32);
    out /= &two_pi;
    if k % 2 == 0 {
        out = -out;
    }
    Float::with_val(bits, &out)
}

type Cache = Mutex<HashMap<u32, Arc<Vec<Float>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// b_0..=b_{k_max} at `bits` of precision, cached per precision.
pub(crate) fn scaled(bits: u32, k_max: usize) -> Arc<Vec<Float>> {
    let mut guard = cache().lock().expect("bernoulli cache poisoned");
    let entry = guard.entry(bits).or_insert_with(|| Arc::new(Vec::new()));
    if entry.len() <= k_max {
        let mut v: Vec<Float> = entry.as_ref().clone();
        let target = (k_max + 1).max(2 * v.len()).max(32);
        for k in v.len()..target {
            v.push(compute_scaled(bits, k));
        }
        *entry = Arc::new(v);
    }
    Arc::clone(entry)
}

/// B_{2k} itself (not scaled), used by the Stirling series.
pub(crate) fn even(bits: u32, k: usize) -> Float {
    let b = scaled(bits + 64, k);
    let f = factorial(2 * k as u32);
    Float::with_val(bits, &b[k] * &f)
}

/// Double-precision b_k, 0 once it underflows.
pub(crate) fn scaled_f64(k: usize) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let t = TABLE.get_or_init(|| scaled(128, 200).iter().map(|x| x.to_f64()).collect());
    t.get(k).copied().unwrap_or(0.0)
}

/// ln |b_k| without underflow, k ≥ 1.
pub(crate) fn ln_abs_scaled(k: usize) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let t = TABLE.get_or_init(|| (0..=super::plan::MAX_CORRECTIONS + 2).map(ln_abs_scaled_direct).collect());
    t.get(k).copied().unwrap_or_else(|| ln_abs_scaled_direct(k))
}

fn ln_abs_scaled_direct(k: usize) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let two_k = 2.0 * k as f64;
    // ζ(2k): 64 terms plus an Euler–Maclaurin tail.
    let n = 64.0f64;
    let mut zeta = (1..64).rev().map(|m| (m as f64).powf(-two_k)).sum::<f64>();
    zeta += n.powf(1.0 - two_k) / (two_k - 1.0) + 0.5 * n.powf(-two_k) + two_k / 12.0 * n.powf(-two_k - 1.0);
    std::f64::consts::LN_2 + zeta.ln() - two_k * (2.0 * std::f64::consts::PI).ln()
}
