//! Continuous argument tracking of a complex function along a segment.

use std::f64::consts::PI;

use crate::C64;

/// Accepted steps keep the principal argument increment below this.
const MAX_INCREMENT: f64 = PI / 4.0;

#[derive(Debug, Clone, Copy)]
pub struct Tracked {
    /// Total continuous change of arg f along the path.
    pub delta_arg: f64,
    /// f at the end point.
    pub end_value: C64,
    /// Smallest |f| seen at any sample.
    pub min_modulus: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
pub enum TrackFailure {
    /// Step size collapsed at parameter `u`; the path passes (nearly)
    /// through a zero or the function is too oscillatory.
    StepCollapse { u: f64 },
    /// |f| fell below the zero threshold at parameter `u`.
    NearZero { u: f64, modulus: f64 },
    /// The evaluator failed at parameter `u`.
    Evaluation { u: f64 },
}

/// Tracks arg f(u) for u from `a` to `b` (either direction).
///
/// Every accepted step satisfies |Δarg| < π/4, each of its halves turns by
/// less than π/8, and the halves must reproduce the full-step increment.
pub fn track_arg<F>(mut f: F, a: f64, b: f64, zero_tol: f64) -> Result<Tracked, TrackFailure>
where
    F: FnMut(f64) -> Option<C64>,
{
    track(|u| f(u).map(|v| (v, None)), a, b, zero_tol)
}

/// [`track_arg`] for an `f` that also returns df/du. Steps are further
/// limited to (π/4)/|f′/f| at both ends and the midpoint, so the path
/// cannot step past a zero of f lying near it.
pub fn track_arg_with_derivative<F>(mut f: F, a: f64, b: f64, zero_tol: f64) -> Result<Tracked, TrackFailure>
where
    F: FnMut(f64) -> Option<(C64, C64)>,
{
    track(|u| f(u).map(|(v, dv)| (v, Some(dv))), a, b, zero_tol)
}

fn track<F>(mut f: F, a: f64, b: f64, zero_tol: f64) -> Result<Tracked, TrackFailure>
where
    F: FnMut(f64) -> Option<(C64, Option<C64>)>,
{
    let len = b - a;
    let mut evals = 0usize;
    // Value and |f′/f| (zero when the derivative is not supplied).
    let mut eval = |u: f64, evals: &mut usize| -> Result<(C64, f64), TrackFailure> {
        *evals += 1;
        let (v, dv) = f(u).ok_or(TrackFailure::Evaluation { u })?;
        let m = v.norm();
        if !(m > zero_tol) {
            return Err(TrackFailure::NearZero { u, modulus: m });
        }
        let rate = dv.map_or(0.0, |d| (d / v).norm());
        if !rate.is_finite() {
            return Err(TrackFailure::Evaluation { u });
        }
        Ok((v, rate))
    };
    let (mut f0, mut r0) = eval(a, &mut evals)?;
    let mut min_mod = f0.norm();
    if len == 0.0 {
        return Ok(Tracked {
            delta_arg: 0.0,
            end_value: f0,
            min_modulus: min_mod,
            evaluations: evals,
        });
    }
    let h_max = len.abs() / 4.0;
    let h_min = len.abs() * 1e-13 + 1e-14;
    let dir = len.signum();
    let mut h = len.abs() / 16.0;
    let mut u = a;
    let mut total = 0.0;
    loop {
        let remaining = (b - u) * dir;
        if remaining <= 0.0 {
            break;
        }
        let step = h.min(remaining);
        let u1 = if step == remaining { b } else { u + dir * step };
        let (f1, r1) = eval(u1, &mut evals)?;
        let d = (f1 / f0).arg();
        if d.abs() > MAX_INCREMENT || r0.max(r1) * step > MAX_INCREMENT {
            h = step / 2.0;
            if h < h_min {
                return Err(TrackFailure::StepCollapse { u });
            }
            continue;
        }
        let (fm, rm) = eval(u + dir * step / 2.0, &mut evals)?;
        let d1 = (fm / f0).arg();
        let d2 = (f1 / fm).arg();
        if (d1 + d2 - d).abs() > 1e-9
            || d1.abs() > MAX_INCREMENT / 2.0
            || d2.abs() > MAX_INCREMENT / 2.0
            || rm * step > MAX_INCREMENT
        {
            h = step / 2.0;
            if h < h_min {
                return Err(TrackFailure::StepCollapse { u });
            }
            continue;
        }
        total += d;
        min_mod = min_mod.min(fm.norm()).min(f1.norm());
        u = u1;
        f0 = f1;
        r0 = r1;
        if d.abs() < MAX_INCREMENT / 4.0 {
            h = (step * 2.0).min(h_max);
        }
    }
    Ok(Tracked {
        delta_arg: total,
        end_value: f0,
        min_modulus: min_mod,
        evaluations: evals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_turns_of_a_fast_rotation() {
        // e^{i 40 u} over [0, 1]: 40 radians.
        let r = track_arg(|u| Some(C64::from_polar(1.0, 40.0 * u)), 0.0, 1.0, 1e-30).unwrap();
        assert!((r.delta_arg - 40.0).abs() < 1e-9);
        let r = track_arg(|u| Some(C64::from_polar(1.0, 40.0 * u)), 1.0, 0.0, 1e-30).unwrap();
        assert!((r.delta_arg + 40.0).abs() < 1e-9);
    }

    #[test]
    fn winding_of_z_around_the_unit_circle() {
        let mut total = 0.0;
        // Square with corners ±1 ± i, counter-clockwise, f(z) = z - 0.3i.
        let f = |z: C64| Some(z - C64::new(0.0, 0.3));
        total += track_arg(|u| f(C64::new(u, -1.0)), -1.0, 1.0, 1e-12).unwrap().delta_arg;
        total += track_arg(|u| f(C64::new(1.0, u)), -1.0, 1.0, 1e-12).unwrap().delta_arg;
        total += track_arg(|u| f(C64::new(u, 1.0)), 1.0, -1.0, 1e-12).unwrap().delta_arg;
        total += track_arg(|u| f(C64::new(-1.0, u)), 1.0, -1.0, 1e-12).unwrap().delta_arg;
        assert!((total / (2.0 * PI) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn derivative_bound_sees_a_tight_pair_of_zeros() {
        // Two zeros just above [0, 1] turn arg f by almost −2π within a
        // window of width ~1e-3.
        let z = [C64::new(0.3, 1e-3), C64::new(0.3005, 1e-3)];
        let exact: f64 = z.iter().map(|z| (-z.im).atan2(1.0 - z.re) - (-z.im).atan2(-z.re)).sum();
        let f = |u: f64| {
            let s = C64::new(u, 0.0);
            Some(((s - z[0]) * (s - z[1]), (s - z[0]) + (s - z[1])))
        };
        let r = track_arg_with_derivative(f, 0.0, 1.0, 1e-300).unwrap();
        assert!((r.delta_arg - exact).abs() < 1e-9, "{} vs {exact}", r.delta_arg);
    }
}
