//! Zeros of ζ′ by the argument principle.
//!
//! The search region is cut into horizontal slabs. Each box's winding number
//! is the total change of arg ζ′ around its boundary divided by 2π. Boxes
//! with winding ≥ 2 are bisected; a box with winding 1 holds exactly one
//! simple zero, found by Newton's method on ζ′ and then polished at working
//! precision.

use std::f64::consts::PI;

use rug::Complex;

use crate::engine::mp::abs_f64;
use crate::engine::track::{track_arg_with_derivative, TrackFailure};
use crate::engine::{fast, zeta_derivatives, ComplexPoint, PrecisionConfig};
use crate::{par, Error, Result, C64};

/// Closed search region σ_lo ≤ σ ≤ σ_hi, t_lo ≤ t ≤ t_hi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rectangle {
    pub sigma_lo: f64,
    pub sigma_hi: f64,
    pub t_lo: f64,
    pub t_hi: f64,
}

impl Rectangle {
    pub fn new(sigma_lo: f64, sigma_hi: f64, t_lo: f64, t_hi: f64) -> Result<Self> {
        let r = Self {
            sigma_lo,
            sigma_hi,
            t_lo,
            t_hi,
        };
        if !(sigma_lo < sigma_hi && t_lo < t_hi) || ![sigma_lo, sigma_hi, t_lo, t_hi].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidConfig(format!("degenerate rectangle {r:?}")));
        }
        Ok(r)
    }

    pub fn width(&self) -> f64 {
        self.sigma_hi - self.sigma_lo
    }

    pub fn height(&self) -> f64 {
        self.t_hi - self.t_lo
    }

    pub fn contains(&self, z: C64) -> bool {
        z.re >= self.sigma_lo && z.re <= self.sigma_hi && z.im >= self.t_lo && z.im <= self.t_hi
    }

    fn center(&self) -> C64 {
        C64::new(0.5 * (self.sigma_lo + self.sigma_hi), 0.5 * (self.t_lo + self.t_hi))
    }
}

/// A zero β′ + iγ′ of ζ′.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaPrimeZero {
    pub beta: f64,
    pub gamma: f64,
    /// |ζ′(β′ + iγ′)| at working precision.
    pub residual: f64,
    /// Box with winding number 1 that isolated the zero.
    pub isolating_box: Rectangle,
}

#[derive(Debug, Clone)]
pub struct PrimeSearchOptions {
    /// Height of the slabs the region is cut into.
    pub slab_height: f64,
    /// Boxes smaller than this in both directions are not split further.
    pub min_box: f64,
}

impl Default for PrimeSearchOptions {
    fn default() -> Self {
        Self {
            slab_height: 8.0,
            min_box: 1e-7,
        }
    }
}

/// ζ′(s) and ζ″(s).
fn zeta_prime_fast(s: C64) -> Option<(C64, C64)> {
    fast::zeta_derivs(s, 2).ok().map(|d| (d[1], d[2]))
}

enum EdgeError {
    NearZero,
    Failed(String),
}

/// Change of arg ζ′ from `p` to `q` along a straight segment.
fn edge_arg(p: C64, q: C64) -> std::result::Result<f64, EdgeError> {
    let d = q - p;
    track_arg_with_derivative(|u| zeta_prime_fast(p + d * u).map(|(v, dv)| (v, dv * d)), 0.0, 1.0, 1e-250)
        .map(|r| r.delta_arg)
        .map_err(|e| match e {
            TrackFailure::StepCollapse { .. } | TrackFailure::NearZero { .. } => EdgeError::NearZero,
            TrackFailure::Evaluation { u } => {
                EdgeError::Failed(format!("ζ′ evaluation failed at {}", p + d * u))
            }
        })
}

fn raw_winding(r: &Rectangle) -> std::result::Result<f64, EdgeError> {
    let c = [
        C64::new(r.sigma_lo, r.t_lo),
        C64::new(r.sigma_hi, r.t_lo),
        C64::new(r.sigma_hi, r.t_hi),
        C64::new(r.sigma_lo, r.t_hi),
    ];
    let mut total = 0.0;
    for i in 0..4 {
        total += edge_arg(c[i], c[(i + 1) % 4])?;
    }
    Ok(total / (2.0 * PI))
}

/// Number of zeros of ζ′ inside `r`, counted with multiplicity.
pub fn winding_number(r: &Rectangle) -> Result<i64> {
    match raw_winding(r) {
        Ok(w) => {
            let n = w.round();
            if (w - n).abs() > 0.05 {
                return Err(Error::WindingUnstable {
                    rect: *r,
                    at: format!("winding {w} is not near an integer"),
                });
            }
            Ok(n as i64)
        }
        Err(EdgeError::NearZero) => Err(Error::BoundaryZero { rect: *r }),
        Err(EdgeError::Failed(at)) => Err(Error::WindingUnstable { rect: *r, at }),
    }
}

/// Shifts a box edge coordinate off a zero of ζ′ by multiples of
/// 10·zero_clearance, alternating sides and staying strictly inside
/// (lo, hi). `None` if every candidate touches a zero.
fn nudged<F>(x: f64, lo: f64, hi: f64, clearance: f64, mut winding: F) -> Result<Option<(f64, i64, i64)>>
where
    F: FnMut(f64) -> Result<(i64, i64)>,
{
    let step = 10.0 * clearance;
    for k in 0..9 {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        let y = x + sign * step * ((k + 1) / 2) as f64;
        if !(y > lo && y < hi) {
            continue;
        }
        match winding(y) {
            Ok((a, b)) => return Ok(Some((y, a, b))),
            Err(Error::BoundaryZero { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

pub fn find_zeta_prime_zeros(region: &Rectangle, cfg: &PrecisionConfig) -> Result<Vec<ZetaPrimeZero>> {
    find_zeta_prime_zeros_with(region, cfg, &PrimeSearchOptions::default())
}

/// All zeros of ζ′ in `region`, sorted by ordinate.
pub fn find_zeta_prime_zeros_with(
    region: &Rectangle,
    cfg: &PrecisionConfig,
    opts: &PrimeSearchOptions,
) -> Result<Vec<ZetaPrimeZero>> {
    cfg.validate()?;
    let r = Rectangle::new(region.sigma_lo, region.sigma_hi, region.t_lo, region.t_hi)?;
    if r.sigma_lo < 0.4 || r.sigma_hi > 10.0 || r.t_lo < 10.0 {
        return Err(Error::InvalidConfig(format!(
            "search region {r:?} must lie in 0.4 ≤ σ ≤ 10, t ≥ 10"
        )));
    }
    let slabs = slab_boxes(&r, opts, cfg)?;
    let found = par::try_map(&slabs, |b| isolate(b, cfg, opts))?;
    let mut zeros: Vec<ZetaPrimeZero> = found.into_iter().flatten().collect();
    zeros.sort_by(|a, b| a.gamma.total_cmp(&b.gamma));
    Ok(zeros)
}

/// Cuts the region into slabs whose horizontal edges avoid zeros of ζ′.
fn slab_boxes(r: &Rectangle, opts: &PrimeSearchOptions, cfg: &PrecisionConfig) -> Result<Vec<Rectangle>> {
    let pieces = (r.height() / opts.slab_height).ceil().max(1.0) as usize;
    let mut cuts = vec![r.t_lo];
    for k in 1..pieces {
        let t = r.t_lo + r.height() * k as f64 / pieces as f64;
        let clear = |y: f64| match edge_arg(C64::new(r.sigma_lo, y), C64::new(r.sigma_hi, y)) {
            Ok(_) => Ok((0, 0)),
            Err(EdgeError::NearZero) => Err(Error::BoundaryZero { rect: *r }),
            Err(EdgeError::Failed(at)) => Err(Error::WindingUnstable { rect: *r, at }),
        };
        let (y, _, _) = nudged(t, r.t_lo, r.t_hi, cfg.zero_clearance, clear)?
            .ok_or(Error::BoundaryZero { rect: *r })?;
        cuts.push(y);
    }
    cuts.push(r.t_hi);
    cuts.windows(2)
        .map(|w| Rectangle::new(r.sigma_lo, r.sigma_hi, w[0], w[1]))
        .collect()
}

fn isolate(b: &Rectangle, cfg: &PrecisionConfig, opts: &PrimeSearchOptions) -> Result<Vec<ZetaPrimeZero>> {
    let w = winding_number(b)?;
    let mut out = Vec::new();
    descend(*b, w, cfg, opts, &mut out)?;
    Ok(out)
}

/// Splits `b` (known winding `w`) in half along its longer side, nudging
/// the cut off zeros. Returns both halves with their windings.
fn split(b: &Rectangle, w: i64, cfg: &PrecisionConfig) -> Result<[(Rectangle, i64); 2]> {
    let vertical = b.width() >= b.height();
    let (lo, hi) = if vertical { (b.sigma_lo, b.sigma_hi) } else { (b.t_lo, b.t_hi) };
    let halves = |x: f64| -> (Rectangle, Rectangle) {
        if vertical {
            (
                Rectangle { sigma_hi: x, ..*b },
                Rectangle { sigma_lo: x, ..*b },
            )
        } else {
            (Rectangle { t_hi: x, ..*b }, Rectangle { t_lo: x, ..*b })
        }
    };
    let mid = 0.5 * (lo + hi);
    let clearance = cfg.zero_clearance.min((hi - lo) * 1e-3);
    let (x, w1, w2) = nudged(mid, lo, hi, clearance, |x| {
        let (p, q) = halves(x);
        Ok((winding_number(&p)?, winding_number(&q)?))
    })?
    .ok_or(Error::BoundaryZero { rect: *b })?;
    if w1 + w2 != w {
        return Err(Error::WindingUnstable {
            rect: *b,
            at: format!("halves wind {w1} + {w2}, parent {w}"),
        });
    }
    let (p, q) = halves(x);
    Ok([(p, w1), (q, w2)])
}

fn descend(
    b: Rectangle,
    w: i64,
    cfg: &PrecisionConfig,
    opts: &PrimeSearchOptions,
    out: &mut Vec<ZetaPrimeZero>,
) -> Result<()> {
    if w < 0 {
        return Err(Error::WindingUnstable {
            rect: b,
            at: format!("negative winding {w}"),
        });
    }
    if w == 0 {
        return Ok(());
    }
    let small = b.width() < opts.min_box && b.height() < opts.min_box;
    if w == 1 {
        if let Some(z) = newton_in_box(&b, cfg)? {
            out.push(z);
            return Ok(());
        }
        if small {
            return Err(Error::WindingUnstable {
                rect: b,
                at: "Newton iteration does not settle inside a winding-1 box".into(),
            });
        }
    } else if small {
        return Err(Error::MultipleZero { rect: b, winding: w });
    }
    for (child, cw) in split(&b, w, cfg)? {
        descend(child, cw, cfg, opts, out)?;
    }
    Ok(())
}

/// Newton on ζ′ from the box centre; the zero is accepted only if the
/// iteration converges inside the box, which then holds exactly it.
fn newton_in_box(b: &Rectangle, cfg: &PrecisionConfig) -> Result<Option<ZetaPrimeZero>> {
    let mut z = b.center();
    let mut converged = false;
    for _ in 0..60 {
        let d = match fast::zeta_derivs(z, 2) {
            Ok(d) => d,
            Err(_) => return Ok(None),
        };
        if d[2].norm() == 0.0 {
            return Ok(None);
        }
        let step = d[1] / d[2];
        z -= step;
        if !b.contains(z) {
            return Ok(None);
        }
        if step.norm() <= 1e-14 * z.norm() {
            converged = true;
            break;
        }
    }
    if !converged {
        return Ok(None);
    }
    let (z, residual) = polish(z, cfg)?;
    if !b.contains(z) {
        return Ok(None);
    }
    Ok(Some(ZetaPrimeZero {
        beta: z.re,
        gamma: z.im,
        residual,
        isolating_box: *b,
    }))
}

/// Working-precision Newton steps on ζ′; returns the point and |ζ′| there.
fn polish(z0: C64, cfg: &PrecisionConfig) -> Result<(C64, f64)> {
    let bits = cfg.bits();
    let mut p = ComplexPoint::new(z0.re, z0.im, cfg)?;
    for _ in 0..4 {
        let d = zeta_derivatives(&p, 2, cfg)?;
        let step = Complex::with_val(bits, d[1].as_complex() / d[2].as_complex());
        if abs_f64(&step) <= 1e-30 * z0.norm() {
            return Ok((p.to_c64(), d[1].abs()));
        }
        p = ComplexPoint::from_complex(Complex::with_val(bits, p.as_complex() - &step))?;
    }
    let d = zeta_derivatives(&p, 1, cfg)?;
    Ok((p.to_c64(), d[1].abs()))
}
