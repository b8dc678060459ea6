//! Evaluation of ζ and related functions.
//!
//! The public operations here work at the precision configured in
//! [`PrecisionConfig`] and return [`ComplexPoint`]s carrying that precision.
//! Downstream modules that only need double precision go through the
//! [`Backend`] trait, which has a working-precision implementation
//! ([`Precise`]) and a fast double-precision one ([`Fast`]).

mod bernoulli;
mod em;
pub mod fast;
mod gamma;
pub(crate) mod mp;
mod plan;
pub mod track;

use std::f64::consts::{LN_10, LN_2, PI};

use rug::float::Constant;
use rug::{Complex, Float};

use crate::zeros::ZeroTable;
use crate::{Error, Result, C64};

pub(crate) const MAX_ORDER: usize = 2;

/// Precision and truncation controls shared by every evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionConfig {
    /// Significant decimal digits carried by the working precision, ≥ 25.
    pub working_digits: u32,
    /// Minimum number of Euler–Maclaurin direct terms.
    pub em_terms_min: usize,
    /// Absolute target for truncation errors.
    pub tail_tol: f64,
    /// Minimum distance kept from zeros and poles by path-based operations.
    pub zero_clearance: f64,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        Self::with_digits(40).expect("40 digits is a valid precision")
    }
}

impl PrecisionConfig {
    /// Config with `digits` working digits and tail_tol = 10^(1-digits).
    pub fn with_digits(digits: u32) -> Result<Self> {
        let cfg = Self {
            working_digits: digits,
            em_terms_min: 10,
            tail_tol: 10f64.powi(1 - digits as i32),
            zero_clearance: 1e-6,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.working_digits < 25 {
            return Err(Error::InvalidConfig(format!(
                "working_digits = {} < 25",
                self.working_digits
            )));
        }
        if !(self.tail_tol > 0.0) {
            return Err(Error::InvalidConfig("tail_tol must be positive".into()));
        }
        if !(self.zero_clearance > 0.0) {
            return Err(Error::InvalidConfig("zero_clearance must be positive".into()));
        }
        Ok(())
    }

    /// Mantissa bits matching `working_digits`.
    pub fn bits(&self) -> u32 {
        (self.working_digits as f64 * LN_10 / LN_2).ceil() as u32
    }

    /// Internal precision for evaluations at height `t`: guard bits absorb
    /// the growth of phases like t·ln n and θ(t).
    pub(crate) fn bits_at(&self, t: f64) -> u32 {
        self.bits() + 24 + (2.0 + t.abs()).log2().ceil() as u32
    }
}

/// A complex number held at working precision.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPoint(Complex);

impl ComplexPoint {
    pub fn new(re: f64, im: f64, cfg: &PrecisionConfig) -> Result<Self> {
        if !(re.is_finite() && im.is_finite()) {
            return Err(Error::NonFinite("ComplexPoint::new"));
        }
        Ok(Self(Complex::with_val(cfg.bits(), (re, im))))
    }

    pub fn from_complex(z: Complex) -> Result<Self> {
        if !(z.real().is_finite() && z.imag().is_finite()) {
            return Err(Error::NonFinite("ComplexPoint::from_complex"));
        }
        Ok(Self(z))
    }

    /// Parses decimal real and imaginary parts at the configured precision.
    pub fn parse(re: &str, im: &str, cfg: &PrecisionConfig) -> Result<Self> {
        let p = |s: &str| {
            Float::parse(s)
                .map(|v| Float::with_val(cfg.bits(), v))
                .map_err(|e| Error::InvalidConfig(format!("bad number {s:?}: {e}")))
        };
        Ok(Self(Complex::with_val(cfg.bits(), (p(re)?, p(im)?))))
    }

    pub fn as_complex(&self) -> &Complex {
        &self.0
    }

    pub fn re(&self) -> &Float {
        self.0.real()
    }

    pub fn im(&self) -> &Float {
        self.0.imag()
    }

    pub fn to_c64(&self) -> C64 {
        mp::to_c64(&self.0)
    }

    pub fn abs(&self) -> f64 {
        mp::abs_f64(&self.0)
    }

    pub fn conj(&self) -> Self {
        Self(self.0.clone().conj())
    }
}

fn finite(z: Complex, what: &'static str) -> Result<ComplexPoint> {
    ComplexPoint::from_complex(z).map_err(|_| Error::NonFinite(what))
}

fn check_pole_at_one(s: &Complex, cfg: &PrecisionConfig) -> Result<()> {
    let d = Complex::with_val(cfg.bits(), s - 1u32);
    if mp::abs_f64(&d) <= cfg.tail_tol.max(1e-300) {
        return Err(Error::PoleAtOne);
    }
    Ok(())
}

/// [ζ, ζ′, ζ″][..=order] at working precision.
pub fn zeta_derivatives(
    s: &ComplexPoint,
    order: usize,
    cfg: &PrecisionConfig,
) -> Result<Vec<ComplexPoint>> {
    cfg.validate()?;
    if order > MAX_ORDER {
        return Err(Error::InvalidConfig(format!("derivative order {order} > 2")));
    }
    check_pole_at_one(&s.0, cfg)?;
    let t = s.0.imag().to_f64();
    let bits = cfg.bits_at(t);
    let s_w = Complex::with_val(bits, &s.0);
    let out = em::zeta_derivs(&s_w, order, bits, cfg.tail_tol, cfg.em_terms_min)?;
    out.into_iter()
        .map(|z| finite(Complex::with_val(cfg.bits(), z), "zeta"))
        .collect()
}

/// ζ(s) by Euler–Maclaurin summation.
pub fn zeta(s: &ComplexPoint, cfg: &PrecisionConfig) -> Result<ComplexPoint> {
    Ok(zeta_derivatives(s, 0, cfg)?.swap_remove(0))
}

/// ζ′(s) by termwise differentiation of the Euler–Maclaurin expansion.
pub fn zeta_prime(s: &ComplexPoint, cfg: &PrecisionConfig) -> Result<ComplexPoint> {
    Ok(zeta_derivatives(s, 1, cfg)?.swap_remove(1))
}

/// ζ′/ζ(s); refuses points where |ζ(s)| ≤ 10·tail_tol.
pub fn zeta_logderiv(s: &ComplexPoint, cfg: &PrecisionConfig) -> Result<ComplexPoint> {
    let d = zeta_derivatives(s, 1, cfg)?;
    let modulus = d[0].abs();
    if modulus <= 10.0 * cfg.tail_tol {
        return Err(Error::NearZero { modulus });
    }
    let q = Complex::with_val(cfg.bits(), &d[1].0 / &d[0].0);
    finite(q, "zeta_logderiv")
}

/// θ(t) at working precision.
pub fn rs_theta_mp(t: &Float, cfg: &PrecisionConfig) -> Result<Float> {
    let tf = t.to_f64();
    if !(tf > 0.0) {
        return Err(Error::InvalidConfig(format!("theta needs t > 0, got {tf}")));
    }
    let bits = cfg.bits_at(tf);
    let th = gamma::theta(&Float::with_val(bits, t), bits)?;
    Ok(Float::with_val(cfg.bits(), th))
}

/// Riemann–Siegel theta θ(t) = Im ln Γ(1/4 + it/2) − (t/2) ln π.
pub fn rs_theta(t: f64, cfg: &PrecisionConfig) -> Result<f64> {
    Ok(rs_theta_mp(&Float::with_val(cfg.bits(), t), cfg)?.to_f64())
}

/// e^{iθ(t)} ζ(1/2 + it) before the imaginary part is dropped.
fn hardy_z_complex(t: &Float, cfg: &PrecisionConfig) -> Result<(Complex, u32)> {
    let tf = t.to_f64();
    if !(tf > 0.0) {
        return Err(Error::InvalidConfig(format!("Z needs t > 0, got {tf}")));
    }
    let bits = cfg.bits_at(tf);
    let t_w = Float::with_val(bits, t);
    let th = gamma::theta(&t_w, bits)?;
    let s = Complex::with_val(bits, (Float::with_val(bits, 0.5f64), &t_w));
    let z = em::zeta_derivs(&s, 0, bits, cfg.tail_tol, cfg.em_terms_min)?.swap_remove(0);
    let (sn, cs) = th.sin_cos(Float::new(bits));
    let rot = Complex::with_val(bits, (cs, sn));
    Ok((rot * z, bits))
}

/// Hardy's Z(t) at working precision.
pub fn hardy_z_mp(t: &Float, cfg: &PrecisionConfig) -> Result<Float> {
    let (z, _) = hardy_z_complex(t, cfg)?;
    let im = z.imag().to_f64().abs();
    let scale = 1.0 + z.real().to_f64().abs();
    if im > 10.0 * cfg.tail_tol * scale {
        return Err(Error::PrecisionExhausted(format!(
            "Im Z(t) = {im:e} at t = {}",
            t.to_f64()
        )));
    }
    Ok(Float::with_val(cfg.bits(), z.real()))
}

/// Hardy's Z(t) = e^{iθ(t)} ζ(1/2 + it), real for real t.
pub fn hardy_z(t: f64, cfg: &PrecisionConfig) -> Result<f64> {
    Ok(hardy_z_mp(&Float::with_val(cfg.bits(), t), cfg)?.to_f64())
}

/// Imaginary part of e^{iθ(t)} ζ(1/2 + it) before it is discarded.
pub fn hardy_z_imag_residual(t: f64, cfg: &PrecisionConfig) -> Result<f64> {
    let (z, _) = hardy_z_complex(&Float::with_val(cfg.bits(), t), cfg)?;
    Ok(z.imag().to_f64().abs())
}

/// ψ(s) = Γ′/Γ(s).
pub fn digamma(s: &ComplexPoint, cfg: &PrecisionConfig) -> Result<ComplexPoint> {
    cfg.validate()?;
    let bits = cfg.bits_at(s.0.imag().to_f64()) + 8;
    let z = Complex::with_val(bits, &s.0);
    let out = gamma::digamma(&z, bits, cfg.zero_clearance)?;
    finite(Complex::with_val(cfg.bits(), out), "digamma")
}

/// χ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s), so that ζ(s) = χ(s) ζ(1-s).
pub fn chi_factor(s: &ComplexPoint, cfg: &PrecisionConfig) -> Result<ComplexPoint> {
    cfg.validate()?;
    let bits = cfg.bits_at(s.0.imag().to_f64()) + 16;
    let s_w = Complex::with_val(bits, &s.0);
    let one_minus = Complex::with_val(bits, 1u32 - &s_w);
    let lg = gamma::ln_gamma(&one_minus, bits, cfg.zero_clearance).map_err(|_| {
        Error::PoleInFactor {
            re: s.0.real().to_f64(),
            im: s.0.imag().to_f64(),
        }
    })?;
    let pi = Float::with_val(bits, Constant::Pi);
    let ln2 = Float::with_val(bits, Constant::Log2);
    let ln_pi = Float::with_val(bits, pi.ln_ref());
    // exp(s ln 2 + (s-1) ln π + ln Γ(1-s)) · sin(πs/2)
    let mut e = Complex::with_val(bits, &s_w * &ln2);
    e += Complex::with_val(bits, &s_w - 1u32) * &ln_pi;
    e += &lg;
    let mut half_pi_s = Complex::with_val(bits, &s_w * &pi);
    half_pi_s /= 2u32;
    let out = e.exp() * half_pi_s.sin();
    finite(Complex::with_val(cfg.bits(), out), "chi_factor")
}

/// Continuous change of arg ζ(σ + it) as σ runs from `from` to `to` at
/// fixed t, with ζ at the end point. Uses the double-precision evaluator.
pub fn track_arg_horizontal(t: f64, from: f64, to: f64) -> Result<(f64, C64)> {
    let zeta_and_derivative = |u: f64| fast::zeta_derivs(C64::new(u, t), 1).ok().map(|d| (d[0], d[1]));
    let tracked = track::track_arg_with_derivative(zeta_and_derivative, from, to, 1e-200)
        .map_err(|e| match e {
            track::TrackFailure::StepCollapse { .. } => Error::PathTooCloseToZero {
                distance: 0.0,
                gamma: t,
            },
            track::TrackFailure::NearZero { modulus, .. } => Error::PathTooCloseToZero {
                distance: modulus,
                gamma: t,
            },
            track::TrackFailure::Evaluation { u } => {
                Error::PrecisionExhausted(format!("zeta failed at {u} + {t}i during tracking"))
            }
        })?;
    Ok((tracked.delta_arg, tracked.end_value))
}

/// arg ζ(σ + it) continued from the principal value at σ = `from`, which is
/// the right branch whenever Re ζ(from + it) > 0.
pub fn tracked_arg(t: f64, from: f64, to: f64) -> Result<(f64, C64)> {
    let start = fast::zeta(C64::new(from, t))?;
    let (delta, end) = track_arg_horizontal(t, from, to)?;
    Ok((start.arg() + delta, end))
}

/// Starting abscissa of the log ζ continuation.
pub const LOG_ZETA_START: f64 = 10.0;

/// log ζ(s) on the branch obtained by continuing from σ = 10 leftwards at
/// fixed t. Im log ζ is arg ζ(s).
pub fn log_zeta(s: &ComplexPoint, table: &ZeroTable, cfg: &PrecisionConfig) -> Result<ComplexPoint> {
    let sf = s.to_c64();
    let (sigma, t) = (sf.re, sf.im);
    if !(t >= 10.0) {
        return Err(Error::OutOfRange {
            t,
            lo: 10.0,
            hi: f64::INFINITY,
        });
    }
    if table.t_max < t + 1.0 {
        return Err(Error::TableIncomplete {
            need: t + 1.0,
            have: table.t_max,
        });
    }
    for z in table.zeros_in(t - 1.0, t + 1.0) {
        let g = z.gamma.value();
        let dist = if sigma <= 0.5 {
            (t - g).abs()
        } else {
            (sigma - 0.5).hypot(t - g)
        };
        if dist < cfg.zero_clearance {
            return Err(Error::PathTooCloseToZero {
                distance: dist,
                gamma: g,
            });
        }
    }
    let z = zeta(s, cfg)?;
    let bits = cfg.bits();
    let principal = Complex::with_val(bits, z.0.ln_ref());
    if sigma >= LOG_ZETA_START {
        return finite(principal, "log_zeta");
    }
    let (arg, _) = tracked_arg(t, LOG_ZETA_START, sigma)?;
    let p_im = principal.imag().to_f64();
    let k = ((arg - p_im) / (2.0 * PI)).round();
    let mut out = principal;
    let two_pi_k = Float::with_val(bits, Constant::Pi) * 2u32 * Float::with_val(bits, k);
    *out.mut_imag() += two_pi_k;
    finite(out, "log_zeta")
}

/// log ζ(σ + it) in double precision at several abscissae, continued from
/// σ = 10 through the samples in decreasing order.
pub fn log_zeta_along(t: f64, sigmas: &[f64]) -> Result<Vec<C64>> {
    let mut order: Vec<usize> = (0..sigmas.len()).collect();
    order.sort_by(|&a, &b| sigmas[b].total_cmp(&sigmas[a]));
    let mut out = vec![C64::new(0.0, 0.0); sigmas.len()];
    let start = fast::zeta(C64::new(LOG_ZETA_START, t))?;
    let mut arg = start.arg();
    let mut at = LOG_ZETA_START;
    for idx in order {
        let sigma = sigmas[idx];
        let (delta, value) = track_arg_horizontal(t, at, sigma)?;
        arg += delta;
        at = sigma;
        out[idx] = C64::new(value.norm().ln(), arg);
    }
    Ok(out)
}

/// Evaluation backend for double-precision consumers.
pub trait Backend: Sync {
    /// [ζ, ζ′, ζ″][..=order] at s; unused slots are zero.
    fn derivs(&self, s: C64, order: usize) -> Result<[C64; 3]>;

    fn hardy_z(&self, t: f64) -> Result<f64>;

    fn logderiv(&self, s: C64) -> Result<C64> {
        let d = self.derivs(s, 1)?;
        if d[0].norm() == 0.0 {
            return Err(Error::NearZero { modulus: 0.0 });
        }
        Ok(d[1] / d[0])
    }
}

/// Double-precision Euler–Maclaurin (see [`fast`]).
#[derive(Debug, Clone, Copy, Default)]
pub struct Fast;

impl Backend for Fast {
    fn derivs(&self, s: C64, order: usize) -> Result<[C64; 3]> {
        fast::zeta_derivs(s, order)
    }

    fn hardy_z(&self, t: f64) -> Result<f64> {
        fast::hardy_z(t)
    }
}

/// Working-precision evaluation rounded to double on output.
#[derive(Debug, Clone, Default)]
pub struct Precise(pub PrecisionConfig);

impl Backend for Precise {
    fn derivs(&self, s: C64, order: usize) -> Result<[C64; 3]> {
        let p = ComplexPoint::new(s.re, s.im, &self.0)?;
        let d = zeta_derivatives(&p, order, &self.0)?;
        let mut out = [C64::new(0.0, 0.0); 3];
        for (o, v) in out.iter_mut().zip(d.iter()) {
            *o = v.to_c64();
        }
        Ok(out)
    }

    fn hardy_z(&self, t: f64) -> Result<f64> {
        hardy_z(t, &self.0)
    }
}
