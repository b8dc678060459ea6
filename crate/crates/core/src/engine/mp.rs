//! Shared multiprecision tables: natural logarithms of integers and the
//! smallest-prime-factor sieve used to build n^{-s} multiplicatively.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use rug::{Complex, Float};

use crate::C64;

/// Smallest prime factor of every n ≤ limit (spf[0] = spf[1] = 0).
pub(crate) fn spf_sieve(limit: usize) -> Arc<Vec<u32>> {
    static SIEVE: OnceLock<RwLock<Arc<Vec<u32>>>> = OnceLock::new();
    let lock = SIEVE.get_or_init(|| RwLock::new(Arc::new(Vec::new())));
    {
        let cur = lock.read().expect("sieve lock poisoned");
        if cur.len() > limit {
            return Arc::clone(&cur);
        }
    }
    let mut w = lock.write().expect("sieve lock poisoned");
    if w.len() <= limit {
        let size = (limit + 1).next_power_of_two().max(1024);
        let mut spf = vec![0u32; size];
        for i in 2..size {
            if spf[i] == 0 {
                let mut j = i;
                while j < size {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        *w = Arc::new(spf);
    }
    Arc::clone(&w)
}

type LogCache = Mutex<HashMap<u32, Arc<Vec<Float>>>>;

/// ln n for n = 0..=limit at `bits` (entry 0 is a placeholder zero).
pub(crate) fn ln_table(bits: u32, limit: usize) -> Arc<Vec<Float>> {
    static CACHE: OnceLock<LogCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("log cache poisoned");
    let entry = guard.entry(bits).or_insert_with(|| Arc::new(Vec::new()));
    if entry.len() <= limit {
        let size = (limit + 1).next_power_of_two().max(256);
        let spf = spf_sieve(size);
        let mut v: Vec<Float> = entry.as_ref().clone();
        if v.is_empty() {
            v.push(Float::new(bits));
            v.push(Float::new(bits));
        }
        for n in v.len()..size {
            let p = spf[n] as usize;
            if p == n {
                v.push(Float::with_val(bits, n).ln());
            } else {
                let ln = Float::with_val(bits, &v[p] + &v[n / p]);
                v.push(ln);
            }
        }
        *entry = Arc::new(v);
    }
    Arc::clone(entry)
}

/// Double-double ln n (hi + lo), n = 0..=limit.
pub(crate) fn ln_table_dd(limit: usize) -> Arc<Vec<(f64, f64)>> {
    static TABLE: OnceLock<RwLock<Arc<Vec<(f64, f64)>>>> = OnceLock::new();
    let lock = TABLE.get_or_init(|| RwLock::new(Arc::new(Vec::new())));
    {
        let cur = lock.read().expect("log table poisoned");
        if cur.len() > limit {
            return Arc::clone(&cur);
        }
    }
    let mut w = lock.write().expect("log table poisoned");
    if w.len() <= limit {
        let size = (limit + 1).next_power_of_two().max(1024);
        let hp = ln_table(160, size);
        let v: Vec<(f64, f64)> = hp
            .iter()
            .take(size)
            .map(|x| {
                let hi = x.to_f64();
                let lo = Float::with_val(160, x - hi).to_f64();
                (hi, lo)
            })
            .collect();
        *w = Arc::new(v);
    }
    Arc::clone(&w)
}

pub(crate) fn to_c64(z: &Complex) -> C64 {
    C64::new(z.real().to_f64(), z.imag().to_f64())
}

pub(crate) fn abs_f64(z: &Complex) -> f64 {
    Float::with_val(z.prec().0.max(64), z.abs_ref()).to_f64()
}
