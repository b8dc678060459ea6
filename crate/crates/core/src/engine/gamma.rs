//! Complex log-gamma and digamma at working precision: shift by the
//! recurrence until |z| is large, then sum the Stirling series.

use rug::float::Constant;
use rug::{Complex, Float};

use super::bernoulli;
use super::mp::abs_f64;
use crate::{Error, Result};

/// Real part the argument is shifted to before the asymptotic series, so
/// the smallest Stirling term e^{-2π|z|} is below 2^{-bits}.
fn shift_target(bits: u32) -> f64 {
    (bits as f64 * std::f64::consts::LN_2 / (2.0 * std::f64::consts::PI) + 2.0).max(10.0)
}

fn check_pole(z: &Complex, clearance: f64) -> Result<()> {
    let re = z.real().to_f64();
    let im = z.imag().to_f64();
    if re <= 0.5 && im.abs() <= clearance {
        let nearest = re.round();
        if (re - nearest).abs() <= clearance {
            return Err(Error::PoleAtNonpositiveInteger(nearest));
        }
    }
    Ok(())
}

fn shift_count(z: &Complex, bits: u32) -> u32 {
    let target = shift_target(bits);
    let re = z.real().to_f64();
    let im = z.imag().to_f64();
    if re > 0.0 && re.hypot(im) >= target {
        0
    } else {
        (target - re).ceil().max(0.0) as u32
    }
}

/// Principal-branch ln Γ(z), continuous off the negative real axis.
pub(crate) fn ln_gamma(z: &Complex, bits: u32, clearance: f64) -> Result<Complex> {
    check_pole(z, clearance)?;
    let work = bits + 16;
    let m = shift_count(z, bits);
    let mut w = Complex::with_val(work, z);
    let mut correction = Complex::new(work);
    for _ in 0..m {
        correction += Complex::with_val(work, w.ln_ref());
        w += 1u32;
    }
    let ln_w = Complex::with_val(work, w.ln_ref());
    let mut out = Complex::with_val(work, &w - 0.5f64) * &ln_w;
    out -= &w;
    let ln_two_pi = {
        let mut p = Float::with_val(work, Constant::Pi);
        p *= 2u32;
        p.ln()
    };
    out += Float::with_val(work, &ln_two_pi / 2u32);

    let tol = Float::with_val(work, Float::i_exp(1, -(bits as i32) - 8));
    let inv = Complex::with_val(work, w.recip_ref());
    let inv2 = Complex::with_val(work, &inv * &inv);
    let mut pow = inv.clone();
    for k in 1..400usize {
        let b = bernoulli::even(work, k);
        let denom = (2 * k * (2 * k - 1)) as u32;
        let term = Complex::with_val(work, &pow * &b) / denom;
        let small = abs_f64(&term) < tol.to_f64();
        out += &term;
        if small {
            break;
        }
        pow *= &inv2;
    }
    out -= correction;
    Ok(Complex::with_val(bits, out))
}

/// ψ(z) = Γ′/Γ(z).
pub(crate) fn digamma(z: &Complex, bits: u32, clearance: f64) -> Result<Complex> {
    check_pole(z, clearance)?;
    let work = bits + 16;
    let m = shift_count(z, bits);
    let mut w = Complex::with_val(work, z);
    let mut correction = Complex::new(work);
    for _ in 0..m {
        correction += Complex::with_val(work, w.recip_ref());
        w += 1u32;
    }
    let mut out = Complex::with_val(work, w.ln_ref());
    let inv = Complex::with_val(work, w.recip_ref());
    out -= Complex::with_val(work, &inv / 2u32);
    let inv2 = Complex::with_val(work, &inv * &inv);
    let mut pow = inv2.clone();
    let tol = Float::with_val(work, Float::i_exp(1, -(bits as i32) - 8)).to_f64();
    for k in 1..400usize {
        let b = bernoulli::even(work, k);
        let term = Complex::with_val(work, &pow * &b) / (2 * k) as u32;
        let small = abs_f64(&term) < tol;
        out -= &term;
        if small {
            break;
        }
        pow *= &inv2;
    }
    out -= correction;
    Ok(Complex::with_val(bits, out))
}

/// θ(t) = Im ln Γ(1/4 + it/2) − (t/2) ln π.
pub(crate) fn theta(t: &Float, bits: u32) -> Result<Float> {
    let half_t = Float::with_val(bits, t / 2u32);
    let z = Complex::with_val(bits, (Float::with_val(bits, 0.25f64), &half_t));
    let lg = ln_gamma(&z, bits, 0.0)?;
    let ln_pi = Float::with_val(bits, Constant::Pi).ln();
    let mut out = Float::with_val(bits, lg.imag());
    out -= Float::with_val(bits, &half_t * &ln_pi);
    Ok(out)
}
