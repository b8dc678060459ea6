//! Double-precision Euler–Maclaurin backend.
//!
//! Same formula and planner as the working-precision path. The only
//! numerically delicate step is the phase t·ln p, which reaches ~10^5 for
//! the heights used here; it is formed in double-double arithmetic and
//! reduced mod 2π before the f64 sin/cos, so every prime power is accurate
//! to a few ulps. Composite n^{-s} are products of prime powers.

use std::f64::consts::{LN_2, PI};

use super::mp::{ln_table_dd, spf_sieve};
use super::plan::plan;
use super::{bernoulli, MAX_ORDER};
use crate::{Error, Result, C64};

const TWO_PI_HI: f64 = 6.283_185_307_179_586;
const TWO_PI_LO: f64 = 2.449_293_598_294_706_4e-16;

/// Absolute target of the fast path.
pub const FAST_TOL: f64 = 1e-17;

/// t·(hi + lo) reduced to (-π, π], accurate to ~1e-16 absolute.
fn reduced_phase(t: f64, hi: f64, lo: f64) -> f64 {
    let p = t * hi;
    let e = t.mul_add(hi, -p) + t * lo;
    let k = ((p + e) / TWO_PI_HI).round();
    let r = (-k).mul_add(TWO_PI_HI, p);
    r - k * TWO_PI_LO + e
}

/// [ζ, ζ′, ζ″][..=order] at `s` in double precision.
pub fn zeta_derivs(s: C64, order: usize) -> Result<[C64; 3]> {
    assert!(order <= MAX_ORDER);
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::NonFinite("fast zeta argument"));
    }
    if (s - 1.0).norm() < 1e-12 {
        return Err(Error::PoleAtOne);
    }
    let p = plan(s, FAST_TOL, order, 10).ok_or_else(|| {
        Error::PrecisionExhausted(format!("no double-precision plan at s = {s}"))
    })?;
    let n = p.n;
    if -s.re * (n as f64).ln() > 30.0 * LN_2 {
        return Err(Error::PrecisionExhausted(format!(
            "direct-sum cancellation at s = {s} exceeds double precision"
        )));
    }
    let logs = ln_table_dd(n);
    let spf = spf_sieve(n);

    let mut pow = vec![C64::new(0.0, 0.0); n + 1];
    pow[1] = C64::new(1.0, 0.0);
    let mut acc = [C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
    for k in 2..=n {
        let q = spf[k] as usize;
        let v = if q == k {
            let (hi, lo) = logs[k];
            let modulus = (-s.re * hi).exp();
            let (sn, cs) = reduced_phase(s.im, hi, lo).sin_cos();
            C64::new(modulus * cs, -modulus * sn)
        } else {
            pow[q] * pow[k / q]
        };
        pow[k] = v;
        if k < n {
            acc[0] += v;
            if order >= 1 {
                let l = logs[k].0;
                let lv = v * l;
                acc[1] -= lv;
                if order >= 2 {
                    acc[2] += lv * l;
                }
            }
        }
    }

    let w = pow[n];
    let ln_n = logs[n].0;
    let n_f = n as f64;
    let inv = 1.0 / (s - 1.0);
    let a0 = w * n_f * inv;
    let a1 = -a0 * ln_n - a0 * inv;
    let a2 = -a1 * ln_n - a1 * inv + a0 * inv * inv;
    let tail = [a0, a1, a2];
    let mut half = w * 0.5;
    for j in 0..=order {
        acc[j] += tail[j] + half;
        half *= -ln_n;
    }

    // P_k(s) N^{-2k+1} is carried as one scaled quantity; the polynomial
    // alone overflows at large heights.
    let inv_n = 1.0 / n_f;
    let mut poly = s * inv_n;
    let mut dpoly = C64::new(inv_n, 0.0);
    let mut ddpoly = C64::new(0.0, 0.0);
    for k in 1..=p.m {
        let c = w * bernoulli::scaled_f64(k);
        acc[0] += poly * c;
        if order >= 1 {
            acc[1] += (dpoly - poly * ln_n) * c;
            if order >= 2 {
                acc[2] += (ddpoly - dpoly * (2.0 * ln_n) + poly * (ln_n * ln_n)) * c;
            }
        }
        for j in [2 * k - 1, 2 * k] {
            let f = s + j as f64;
            ddpoly = (ddpoly * f + dpoly * 2.0) * inv_n;
            dpoly = (dpoly * f + poly) * inv_n;
            poly = poly * f * inv_n;
        }
    }
    if order < 2 {
        acc[2] = C64::new(0.0, 0.0);
    }
    if order < 1 {
        acc[1] = C64::new(0.0, 0.0);
    }
    Ok(acc)
}

pub fn zeta(s: C64) -> Result<C64> {
    Ok(zeta_derivs(s, 0)?[0])
}

/// ζ′/ζ(s) in double precision.
pub fn logderiv(s: C64) -> Result<C64> {
    let d = zeta_derivs(s, 1)?;
    if d[0].norm() == 0.0 {
        return Err(Error::NearZero { modulus: 0.0 });
    }
    Ok(d[1] / d[0])
}

/// Riemann–Siegel theta from its asymptotic series; t ≥ 10.
pub fn theta(t: f64) -> f64 {
    debug_assert!(t >= 9.0);
    let x = t / (2.0 * PI);
    let t2 = t * t;
    let corr = 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t * t2)
        + 31.0 / (80640.0 * t * t2 * t2)
        + 127.0 / (430_080.0 * t * t2 * t2 * t2)
        + 511.0 / (1_216_512.0 * t * t2 * t2 * t2 * t2);
    0.5 * t * x.ln() - 0.5 * t - PI / 8.0 + corr
}

/// θ′(t) from the same series.
pub fn theta_prime(t: f64) -> f64 {
    let t2 = t * t;
    0.5 * (t / (2.0 * PI)).ln() - 1.0 / (48.0 * t2) - 7.0 / (1920.0 * t2 * t2)
        - 31.0 / (16128.0 * t2 * t2 * t2)
}

/// Hardy's Z(t) in double precision; t ≥ 10.
pub fn hardy_z(t: f64) -> Result<f64> {
    let z = zeta(C64::new(0.5, t))?;
    let (sn, cs) = theta(t).sin_cos();
    Ok(z.re * cs - z.im * sn)
}

/// Z(t) and Z′(t) in double precision; t ≥ 10.
pub fn hardy_z_and_derivative(t: f64) -> Result<(f64, f64)> {
    let d = zeta_derivs(C64::new(0.5, t), 1)?;
    let (sn, cs) = theta(t).sin_cos();
    let e = C64::new(cs, sn);
    let z = e * d[0];
    // d/dt [e^{iθ} ζ(½+it)] = i e^{iθ} (θ′ ζ + ζ′)
    let dz = C64::new(0.0, 1.0) * e * (d[0] * theta_prime(t) + d[1]);
    Ok((z.re, dz.re))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_reduction_matches_multiprecision() {
        use rug::Float;
        let logs = ln_table_dd(2000);
        for (t, n) in [(5000.0, 1999usize), (1234.5678, 997), (10.0, 2)] {
            let (hi, lo) = logs[n];
            let r = reduced_phase(t, hi, lo);
            let exact = {
                let ln = Float::with_val(200, n).ln();
                let p = Float::with_val(200, &ln * t);
                let two_pi = Float::with_val(200, rug::float::Constant::Pi) * 2u32;
                let k = Float::with_val(200, &p / &two_pi).round();
                Float::with_val(200, p - k * two_pi).to_f64()
            };
            assert!((r - exact).abs() < 4e-16, "t={t} n={n} {r} {exact}");
        }
    }

    #[test]
    fn zeta_two() {
        let z = zeta(C64::new(2.0, 0.0)).unwrap();
        assert!((z.re - PI * PI / 6.0).abs() < 1e-14);
        assert!(z.im.abs() < 1e-15);
    }

    #[test]
    fn z_changes_sign_around_first_zero() {
        assert!(hardy_z(14.0).unwrap() * hardy_z(14.5).unwrap() < 0.0);
    }
}
