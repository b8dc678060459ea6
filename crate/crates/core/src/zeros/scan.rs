//! Sign-change scan of Hardy's Z with a segmented completeness check.
//!
//! The range [10, t_max] is cut into segments whose end points avoid zeros.
//! At each end point N(t) = θ(t)/π + 1 + S(t) gives the exact number of
//! zeros below it, so every segment has a known expected count. A segment
//! whose located sign changes fall short is rescanned on finer grids before
//! the table is declared uncertified.

use std::f64::consts::PI;

use super::{Ordinate, ZeroTable, ZetaZero};
use crate::engine::{fast, hardy_z_mp, rs_theta, tracked_arg, PrecisionConfig};
use crate::{par, Error, Result};

/// No zeros lie below this height, and the fast theta series is accurate
/// above it.
const SCAN_START: f64 = 10.0;

#[derive(Debug, Clone)]
pub struct ScanOptions {
    /// Multiplier on the base grid step 2π/log t.
    pub step_scale: f64,
    /// Approximate length of a certification segment.
    pub segment: f64,
    /// Finer rescans (step divided by 4 each time) before giving up.
    pub rescans: u32,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            step_scale: 1.0,
            segment: 25.0,
            rescans: 3,
        }
    }
}

/// S(t) = arg ζ(1/2 + it)/π, continued from σ = 2 at fixed t.
pub fn s_of_t(t: f64) -> Result<f64> {
    let (arg, _) = tracked_arg(t, 2.0, 0.5)?;
    Ok(arg / PI)
}

/// N(t) from θ(t)/π + 1 + S(t), with θ at working precision.
pub fn count_zeros_to(t: f64, cfg: &PrecisionConfig) -> Result<i64> {
    rounded_count(rs_theta(t, cfg)? / PI + 1.0 + s_of_t(t)?, t)
}

fn fast_count(t: f64) -> Result<i64> {
    rounded_count(fast::theta(t) / PI + 1.0 + s_of_t(t)?, t)
}

fn rounded_count(x: f64, t: f64) -> Result<i64> {
    let n = x.round();
    if (x - n).abs() > 0.1 {
        return Err(Error::PrecisionExhausted(format!(
            "zero count at t = {t} is not near an integer: {x}"
        )));
    }
    Ok(n as i64)
}

pub fn scan_zeta_zeros(t_max: f64, cfg: &PrecisionConfig) -> Result<ZeroTable> {
    scan_zeta_zeros_with(t_max, cfg, &ScanOptions::default())
}

pub fn scan_zeta_zeros_with(t_max: f64, cfg: &PrecisionConfig, opts: &ScanOptions) -> Result<ZeroTable> {
    cfg.validate()?;
    if !(t_max >= 20.0) || !t_max.is_finite() {
        return Err(Error::InvalidConfig(format!("t_max = {t_max} must be at least 20")));
    }
    if !(opts.step_scale > 0.0 && opts.segment > 0.0) {
        return Err(Error::InvalidConfig("scan step and segment must be positive".into()));
    }
    let bounds = segment_bounds(t_max, opts.segment)?;
    let counts = par::try_map(&bounds, |&b| if b == SCAN_START { Ok(0) } else { fast_count(b) })?;
    let segs: Vec<usize> = (0..bounds.len() - 1).collect();
    let found = par::try_map(&segs, |&i| {
        scan_segment(bounds[i], bounds[i + 1], counts[i + 1] - counts[i], opts)
    })?;

    let mut failure = None;
    let mut roots = Vec::new();
    for (i, (brackets, ok)) in found.into_iter().enumerate() {
        if !ok && failure.is_none() {
            failure = Some((i, brackets.len()));
        }
        roots.extend(brackets);
    }
    let polished = par::try_map(&roots, |&(a, b)| polish_root(a, b, cfg))?;
    let count_check = count_zeros_to(t_max, cfg)?;
    let zeros = polished
        .into_iter()
        .enumerate()
        .map(|(i, (gamma, residual))| ZetaZero {
            n: i + 1,
            gamma,
            residual,
        })
        .collect();
    let table = ZeroTable::assemble(zeros, t_max, count_check)?;
    if let Some((i, located)) = failure {
        return Err(Error::CertificationFailed {
            lo: bounds[i],
            hi: bounds[i + 1],
            located,
            expected: counts[i + 1] - counts[i],
            table: Box::new(table),
        });
    }
    if !table.certified {
        return Err(Error::CertificationFailed {
            lo: SCAN_START,
            hi: t_max,
            located: table.len(),
            expected: count_check,
            table: Box::new(table),
        });
    }
    Ok(table)
}

/// Segment end points, moved off near-zeros of Z so S(t) is well defined.
fn segment_bounds(t_max: f64, segment: f64) -> Result<Vec<f64>> {
    let mut bounds = vec![SCAN_START];
    let mut b = SCAN_START + segment;
    while b < t_max - segment / 2.0 {
        let mut x = b;
        for _ in 0..100 {
            if fast::hardy_z(x)?.abs() > 1e-3 {
                break;
            }
            x += 0.01;
        }
        bounds.push(x);
        b += segment;
    }
    bounds.push(t_max);
    Ok(bounds)
}

#[derive(Clone, Copy)]
struct Node {
    t: f64,
    z: f64,
    dz: f64,
}

fn node(t: f64) -> Result<Node> {
    let (z, dz) = fast::hardy_z_and_derivative(t)?;
    Ok(Node { t, z, dz })
}

/// Sign-change brackets in [a, b], rescanning finer until `expected` are
/// found. Returns the brackets and whether the count matched.
fn scan_segment(a: f64, b: f64, expected: i64, opts: &ScanOptions) -> Result<(Vec<(f64, f64)>, bool)> {
    let mut best = Vec::new();
    for attempt in 0..=opts.rescans {
        let scale = opts.step_scale / 4f64.powi(attempt as i32);
        let brackets = grid_brackets(a, b, scale, 12 + 2 * attempt)?;
        if brackets.len() as i64 == expected {
            return Ok((brackets, true));
        }
        if brackets.len() > best.len() {
            best = brackets;
        }
    }
    Ok((best, false))
}

fn grid_brackets(a: f64, b: f64, scale: f64, max_depth: u32) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    let mut left = node(a)?;
    while left.t < b {
        let step = scale * 2.0 * PI / left.t.ln();
        let t1 = if left.t + step >= b - 0.25 * step { b } else { left.t + step };
        let right = node(t1)?;
        refine_cell(left, right, 0, max_depth, &mut out)?;
        left = right;
    }
    Ok(out)
}

fn sign(x: f64) -> bool {
    x >= 0.0
}

/// Halves a cell while its sign pattern leaves room for unseen zeros.
fn refine_cell(l: Node, r: Node, depth: u32, max_depth: u32, out: &mut Vec<(f64, f64)>) -> Result<()> {
    let crosses = sign(l.z) != sign(r.z);
    // |Z| falling at the left end and rising at the right one.
    let dip = !crosses && l.z * l.dz < 0.0 && r.z * r.dz > 0.0;
    // A single crossing should leave the left end heading towards the axis
    // and the right end heading away from it.
    let extra_turn = crosses && (l.z * l.dz > 0.0 || r.z * r.dz < 0.0);
    if depth >= max_depth || !(dip || extra_turn) {
        if crosses {
            out.push((l.t, r.t));
        }
        return Ok(());
    }
    let m = node(0.5 * (l.t + r.t))?;
    refine_cell(l, m, depth + 1, max_depth, out)?;
    refine_cell(m, r, depth + 1, max_depth, out)
}

/// Illinois iteration on the fast Z inside a sign-change bracket.
fn bracket_root(mut a: f64, mut b: f64) -> Result<f64> {
    let mut fa = fast::hardy_z(a)?;
    let mut fb = fast::hardy_z(b)?;
    let mut side = 0i8;
    for _ in 0..200 {
        if (b - a).abs() <= 4.0 * f64::EPSILON * b.abs() {
            break;
        }
        let mut c = (a * fb - b * fa) / (fb - fa);
        if !(c > a && c < b) {
            c = 0.5 * (a + b);
        }
        let fc = fast::hardy_z(c)?;
        if fc == 0.0 {
            return Ok(c);
        }
        if sign(fc) == sign(fb) {
            b = c;
            fb = fc;
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        } else {
            a = c;
            fa = fc;
            if side == -1 {
                fb *= 0.5;
            }
            side = -1;
        }
    }
    Ok(if fa.abs() < fb.abs() { a } else { b })
}

/// Locates the zero in (a, b), finishes it with working-precision Newton
/// steps and rounds it to a stored ordinate. Returns the ordinate and |Z|
/// there.
fn polish_root(a: f64, b: f64, cfg: &PrecisionConfig) -> Result<(Ordinate, f64)> {
    let t0 = bracket_root(a, b)?;
    let bits = cfg.bits_at(b);
    let mut g = Ordinate::from_f64(t0);
    for _ in 0..6 {
        let x = g.to_float(bits);
        let z = hardy_z_mp(&x, cfg)?;
        let (_, dz) = fast::hardy_z_and_derivative(g.value())?;
        let next = Ordinate::from_float(&(x - z.clone() / dz));
        if next == g {
            return Ok((g, z.to_f64().abs()));
        }
        if !(next.value() > a - 1e-9 && next.value() < b + 1e-9) {
            return Err(Error::PrecisionExhausted(format!(
                "Newton step left the bracket [{a}, {b}]"
            )));
        }
        g = next;
    }
    let z = hardy_z_mp(&g.to_float(bits), cfg)?;
    Ok((g, z.to_f64().abs()))
}
