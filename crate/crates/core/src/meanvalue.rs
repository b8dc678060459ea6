//! Mean square of ζ′/ζ near the critical line, and profiles measuring how
//! well ζ′/ζ and log ζ are described by nearby zeros.

use std::f64::consts::{E, PI};

use rug::{Complex, Float};

use crate::engine::{digamma, fast, log_zeta_along, zeta_logderiv, ComplexPoint, PrecisionConfig};
use crate::quad::{self, Estimate};
use crate::zeros::{nearest_zero, ZeroTable};
use crate::{par, Error, Result, C64};

/// Closed-form comparators for ∫_1^T |ζ′/ζ(σ+it)|² dt at σ = 1/2 + a/log T.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparators {
    /// T log²T / (4a²).
    pub b: f64,
    /// T log²T / (2a).
    pub c: f64,
    /// (1 − e^{−2a}) / (4a²) · T log²T.
    pub d: f64,
    /// comparator c · (1 − log(2πe)/log T).
    pub t2: f64,
}

pub fn comparators(a: f64, t_cap: f64) -> Comparators {
    let l = t_cap.ln();
    let base = t_cap * l * l;
    let c = base / (2.0 * a);
    Comparators {
        b: base / (4.0 * a * a),
        c,
        d: -(-2.0 * a).exp_m1() / (4.0 * a * a) * base,
        t2: c * (1.0 - (2.0 * PI * E).ln() / l),
    }
}

#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanValueResult {
    pub t_cap: f64,
    pub a: f64,
    pub sigma: f64,
    pub integral: f64,
    pub comparator_B: f64,
    pub comparator_C: f64,
    pub comparator_D: f64,
    pub comparator_T2: f64,
    pub quad_error_est: f64,
}

#[derive(Debug, Clone)]
pub struct MeanValueOptions {
    /// Relative accuracy target of the whole integral.
    pub rel_tol: f64,
    /// Multiplier on the innermost panel width (σ − 1/2)/4.
    pub panel_scale: f64,
    /// Lower limit of integration.
    pub start: f64,
}

impl Default for MeanValueOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-6,
            panel_scale: 1.0,
            start: 1.0,
        }
    }
}

/// ∫_{t_lo}^{t_hi} dt / (d² + (t − γ)²).
pub fn lorentzian_block_integral(d: f64, gamma: f64, t_lo: f64, t_hi: f64) -> f64 {
    (((t_hi - gamma) / d).atan() - ((t_lo - gamma) / d).atan()) / d
}

/// Panel breakpoints for [lo, hi]: around every pole p the points
/// p ± w0·(2^k − 1), so panels double in width away from each pole.
fn graded_breaks(lo: f64, hi: f64, poles: &[f64], w0: f64) -> Vec<f64> {
    let mut pts = vec![lo, hi];
    for &p in poles {
        let mut off = 0.0;
        let mut w = w0;
        loop {
            let (l, r) = (p - off, p + off);
            if l <= lo && r >= hi {
                break;
            }
            for x in [l, r] {
                if x > lo && x < hi {
                    pts.push(x);
                }
            }
            off += w;
            w *= 2.0;
        }
    }
    pts.sort_by(f64::total_cmp);
    // Drop points crowding a neighbour.
    let mut out: Vec<f64> = Vec::with_capacity(pts.len());
    for x in pts {
        match out.last() {
            Some(&y) if x - y < 0.25 * w0 && x != hi => {}
            Some(&y) if x - y < 0.25 * w0 => {
                out.pop();
                out.push(x);
            }
            _ => out.push(x),
        }
    }
    out
}

/// Adaptive integral of `f` over [lo, hi] on panels graded around `poles`
/// with innermost width `w0`.
pub fn graded_integral<F>(f: F, lo: f64, hi: f64, poles: &[f64], w0: f64, rel_tol: f64) -> Result<Estimate>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    if hi <= lo {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
            panels: 0,
        });
    }
    let breaks = graded_breaks(lo, hi, poles, w0);
    quad::integrate(f, &breaks, 0.0, rel_tol, 20_000)
}

fn logderiv_sq(s: C64) -> Result<f64> {
    let d = fast::zeta_derivs(s, 1)?;
    Ok((d[1] / d[0]).norm_sqr())
}

/// ∫_1^T |ζ′/ζ(σ+it)|² dt with σ = 1/2 + a/log T, split into blocks
/// between midpoints of consecutive ordinates.
pub fn mean_square_logderiv(
    a: f64,
    t_cap: f64,
    table: &ZeroTable,
    cfg: &PrecisionConfig,
    opts: &MeanValueOptions,
) -> Result<MeanValueResult> {
    cfg.validate()?;
    let l = t_cap.ln();
    if !(a > 0.0 && a < l / 2.0) {
        return Err(Error::InvalidConfig(format!("a = {a} outside (0, log T / 2)")));
    }
    table.require_cover(t_cap + 1.0)?;
    let sigma = 0.5 + a / l;
    let d = a / l;
    let g = table.gammas();
    let inside = g.partition_point(|&x| x <= t_cap);
    let mut edges = vec![opts.start];
    for i in 1..inside {
        let m = 0.5 * (g[i - 1] + g[i]);
        if m > opts.start {
            edges.push(m);
        }
    }
    edges.push(t_cap);
    let blocks: Vec<(f64, f64)> = edges.windows(2).map(|w| (w[0], w[1])).collect();
    let w0 = opts.panel_scale * d / 4.0;
    let per_block = par::try_map(&blocks, |&(lo, hi)| {
        let a_i = g.partition_point(|&x| x < lo - 1.0);
        let b_i = g.partition_point(|&x| x <= hi + 1.0);
        graded_integral(
            |t| logderiv_sq(C64::new(sigma, t)),
            lo,
            hi,
            &g[a_i..b_i],
            w0,
            0.5 * opts.rel_tol,
        )
    })?;
    let values: Vec<f64> = per_block.iter().map(|e| e.value).collect();
    let errors: Vec<f64> = per_block.iter().map(|e| e.error).collect();
    let cmp = comparators(a, t_cap);
    Ok(MeanValueResult {
        t_cap,
        a,
        sigma,
        integral: par::pairwise_sum(&values),
        comparator_B: cmp.b,
        comparator_C: cmp.c,
        comparator_D: cmp.d,
        comparator_T2: cmp.t2,
        quad_error_est: par::pairwise_sum(&errors),
    })
}

/// Samples of a residual against the bound it is compared with.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualProfile {
    pub t: Vec<f64>,
    pub sigma: Vec<f64>,
    pub residual: Vec<f64>,
    pub scale: Vec<f64>,
    /// max residual/scale.
    pub sup_ratio: f64,
    /// Index of the sample attaining `sup_ratio`.
    pub sup_at: usize,
}

impl ResidualProfile {
    fn from_samples(samples: Vec<(f64, f64, f64, f64)>) -> Result<Self> {
        let mut p = ResidualProfile {
            t: Vec::with_capacity(samples.len()),
            sigma: Vec::with_capacity(samples.len()),
            residual: Vec::with_capacity(samples.len()),
            scale: Vec::with_capacity(samples.len()),
            sup_ratio: 0.0,
            sup_at: 0,
        };
        for (i, (t, s, r, sc)) in samples.into_iter().enumerate() {
            if !(r.is_finite() && sc.is_finite() && sc > 0.0) {
                return Err(Error::NonFinite("residual profile"));
            }
            if r / sc > p.sup_ratio {
                p.sup_ratio = r / sc;
                p.sup_at = i;
            }
            p.t.push(t);
            p.sigma.push(s);
            p.residual.push(r);
            p.scale.push(sc);
        }
        Ok(p)
    }

    pub fn ratios(&self) -> Vec<f64> {
        self.residual.iter().zip(&self.scale).map(|(r, s)| r / s).collect()
    }
}

/// Which zeros are subtracted from ζ′/ζ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Window {
    /// |γ − t| ≤ 1.
    Unit,
    /// |γ − t| ≤ 1/log log t.
    LogLog,
    /// The nearest zero only.
    OnePole,
}

fn check_grid(t_grid: &[f64], table: &ZeroTable, cfg: &PrecisionConfig) -> Result<()> {
    for &t in t_grid {
        if !(t > 10.0) {
            return Err(Error::OutOfRange {
                t,
                lo: 10.0,
                hi: table.t_max - 1.0,
            });
        }
        table.require_cover(t + 1.0)?;
        if !table.zeros_in(t - cfg.zero_clearance, t + cfg.zero_clearance).is_empty() {
            return Err(Error::GridTouchesZero { t });
        }
    }
    Ok(())
}

/// Σ 1/(s − ρ) over the given ordinates, ρ = 1/2 + iγ.
fn pole_sum(s: C64, gammas: &[f64]) -> C64 {
    let terms: Vec<C64> = gammas.iter().map(|&g| 1.0 / (s - C64::new(0.5, g))).collect();
    let re: Vec<f64> = terms.iter().map(|z| z.re).collect();
    let im: Vec<f64> = terms.iter().map(|z| z.im).collect();
    C64::new(par::pairwise_sum(&re), par::pairwise_sum(&im))
}

/// Ordinates in the chosen window around t.
pub fn window_ordinates(t: f64, window: Window, table: &ZeroTable) -> Result<Vec<f64>> {
    Ok(match window {
        Window::Unit => table.zeros_in(t - 1.0, t + 1.0).iter().map(|z| z.gamma.value()).collect(),
        Window::LogLog => {
            let w = 1.0 / t.ln().ln();
            table.zeros_in(t - w, t + w).iter().map(|z| z.gamma.value()).collect()
        }
        Window::OnePole => vec![nearest_zero(t, table)?.gamma.value()],
    })
}

/// |ζ′/ζ(s) − Σ_window 1/(s − ρ)| at s = 1/2 + c/log t + it, against log t.
pub fn decomposition_residual(
    t_grid: &[f64],
    c: f64,
    window: Window,
    table: &ZeroTable,
    cfg: &PrecisionConfig,
) -> Result<ResidualProfile> {
    if !(c > 0.0) {
        return Err(Error::InvalidConfig(format!("c = {c} must be positive")));
    }
    check_grid(t_grid, table, cfg)?;
    let samples = par::try_map(t_grid, |&t| {
        let sigma = 0.5 + c / t.ln();
        let s = C64::new(sigma, t);
        let poles = window_ordinates(t, window, table)?;
        let r = fast::logderiv(s)? - pole_sum(s, &poles);
        Ok::<_, Error>((t, sigma, r.norm(), t.ln()))
    })?;
    ResidualProfile::from_samples(samples)
}

/// σ range [1/2 + c/log t, σ₁] sampled at `samples` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaRule {
    pub c: f64,
    pub sigma1: f64,
    pub samples: usize,
}

impl SigmaRule {
    fn sigmas(&self, t: f64) -> Result<Vec<f64>> {
        let lo = 0.5 + self.c / t.ln();
        if !(self.c > 0.0 && self.sigma1 > 0.5 && self.sigma1 < 1.0 && lo <= self.sigma1 && self.samples >= 2) {
            return Err(Error::InvalidConfig(format!(
                "σ range [{lo}, {}] at t = {t} with {} samples",
                self.sigma1, self.samples
            )));
        }
        let n = self.samples - 1;
        Ok((0..=n).map(|j| lo + (self.sigma1 - lo) * j as f64 / n as f64).collect())
    }

    /// 1/2 + (c/log log t)·j/J for j = first..=J.
    fn near_line(&self, t: f64, first: usize) -> Vec<f64> {
        let w = self.c / t.ln().ln();
        let n = self.samples.max(2) - 1;
        (first..=n).map(|j| 0.5 + w * j as f64 / n as f64).collect()
    }
}

/// |ζ′/ζ(σ + it)| against (log t)^{2−2σ} on the rule's σ range.
pub fn logderiv_bound_profile(
    t_grid: &[f64],
    rule: &SigmaRule,
    table: &ZeroTable,
    cfg: &PrecisionConfig,
) -> Result<ResidualProfile> {
    check_grid(t_grid, table, cfg)?;
    let rows = par::try_map(t_grid, |&t| {
        let l = t.ln();
        rule.sigmas(t)?
            .into_iter()
            .map(|sigma| {
                let r = fast::logderiv(C64::new(sigma, t))?.norm();
                Ok((t, sigma, r, l.powf(2.0 - 2.0 * sigma)))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    ResidualProfile::from_samples(rows.into_iter().flatten().collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogZetaProfiles {
    /// |log ζ| against (log t)^{2−2σ}/log log t on [1/2 + c/log t, σ₁].
    pub log_zeta: ResidualProfile,
    /// |log|ζ|| against the two-sided envelope on (1/2, 1/2 + c/log log t]:
    /// log t/log log t above, (log t/log log t)·log(2/((σ−1/2) log log t))
    /// below.
    pub log_abs: ResidualProfile,
    /// |arg ζ| against log t/log log t on [1/2, 1/2 + c/log log t].
    pub arg: ResidualProfile,
}

pub fn log_zeta_bound_profile(
    t_grid: &[f64],
    rule: &SigmaRule,
    table: &ZeroTable,
    cfg: &PrecisionConfig,
) -> Result<LogZetaProfiles> {
    check_grid(t_grid, table, cfg)?;
    if !(rule.c < 2.0) {
        return Err(Error::InvalidConfig(format!(
            "c = {} leaves no room for the lower envelope (needs c < 2)",
            rule.c
        )));
    }
    type Row = (f64, f64, f64, f64);
    let rows = par::try_map(t_grid, |&t| {
        let l = t.ln();
        let ll = l.ln();
        let cor = rule.sigmas(t)?;
        let near = rule.near_line(t, 0);
        let mut all: Vec<f64> = cor.iter().chain(near.iter()).copied().collect();
        all.sort_by(|a, b| b.total_cmp(a));
        all.dedup();
        let logs = log_zeta_along(t, &all)?;
        let at = |sigma: f64| logs[all.iter().position(|&x| x == sigma).expect("sampled")];
        let a: Vec<Row> = cor
            .iter()
            .map(|&s| (t, s, at(s).norm(), l.powf(2.0 - 2.0 * s) / ll))
            .collect();
        let b: Vec<Row> = near
            .iter()
            .filter(|&&s| s > 0.5)
            .map(|&s| {
                let v = at(s).re;
                let scale = if v >= 0.0 {
                    l / ll
                } else {
                    l / ll * (2.0 / ((s - 0.5) * ll)).ln()
                };
                (t, s, v.abs(), scale)
            })
            .collect();
        let c: Vec<Row> = near.iter().map(|&s| (t, s, at(s).im.abs(), l / ll)).collect();
        Ok::<_, Error>((a, b, c))
    })?;
    let mut fams: (Vec<Row>, Vec<Row>, Vec<Row>) = Default::default();
    for (a, b, c) in rows {
        fams.0.extend(a);
        fams.1.extend(b);
        fams.2.extend(c);
    }
    Ok(LogZetaProfiles {
        log_zeta: ResidualProfile::from_samples(fams.0)?,
        log_abs: ResidualProfile::from_samples(fams.1)?,
        arg: ResidualProfile::from_samples(fams.2)?,
    })
}

/// Outcome of the partial-fraction check for Re ζ′/ζ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck {
    /// |Re ζ′/ζ(s) − (½ log π − Re 1/(s−1) − ½ Re ψ(s/2+1) + Σ_ρ Re 1/(s−ρ))|.
    pub residual: f64,
    /// Σ_ρ Re 1/(s − ρ) over zeros above and below the real axis.
    pub zero_sum: f64,
    /// zero_sum − ½ log t.
    pub half_log_deviation: f64,
    /// Contribution of ordinates above the table, included in zero_sum.
    pub tail: f64,
    /// Bound on the part of the tail the smooth density cannot see.
    pub tail_uncertainty: f64,
}

/// Largest tail uncertainty accepted by [`partial_fraction_check`].
pub const TAIL_BUDGET: f64 = 1e-4;

/// Re 1/(s − ρ) + Re 1/(s − ρ̄) for ρ = 1/2 + iu.
fn pair_term(d: f64, t: f64, u: f64) -> f64 {
    d / (d * d + (t - u) * (t - u)) + d / (d * d + (t + u) * (t + u))
}

/// Checks Re ζ′/ζ(s) = ½ log π − Re 1/(s−1) − ½ Re ψ(s/2+1) + Σ_ρ Re 1/(s−ρ),
/// summing the table and estimating ordinates above it from N(u) =
/// θ(u)/π + 1 + S(u).
pub fn partial_fraction_check(s: &ComplexPoint, table: &ZeroTable, cfg: &PrecisionConfig) -> Result<IdentityCheck> {
    let sf = s.to_c64();
    let (sigma, t) = (sf.re, sf.im);
    if !(t >= 10.0) {
        return Err(Error::OutOfRange {
            t,
            lo: 10.0,
            hi: table.t_max - 10.0,
        });
    }
    table.require_cover(t + 10.0)?;
    let d = sigma - 0.5;
    for z in table.zeros_in(t - 1.0, t + 1.0) {
        if d.hypot(t - z.gamma.value()) < cfg.zero_clearance {
            return Err(Error::GridTouchesZero { t });
        }
    }
    let t0 = table.t_max;
    // The neglected ∫ S df is at most max|S|·f(T0); |S| < 2 at these heights.
    let tail_uncertainty = 2.0 * pair_term(d.abs(), t, t0);
    if tail_uncertainty > TAIL_BUDGET {
        return Err(Error::TailDominates {
            estimate: tail_uncertainty,
        });
    }
    let terms: Vec<f64> = table.zeros.iter().map(|z| pair_term(d, t, z.gamma.value())).collect();
    let table_sum = par::pairwise_sum(&terms);

    // ∫_{T0}^∞ f θ′/π du − f(T0) S(T0), with S(T0) = N(T0) − θ(T0)/π − 1.
    let smooth = {
        let f = |w: f64| -> Result<f64> {
            // u = T0 + w/(1−w) maps [0, 1) onto [T0, ∞).
            let v = w / (1.0 - w);
            let u = t0 + v;
            let jac = 1.0 / ((1.0 - w) * (1.0 - w));
            Ok(pair_term(d, t, u) * fast::theta_prime(u) / PI * jac)
        };
        let breaks: Vec<f64> = (0..=64).map(|i| 1.0 - (-(i as f64) / 4.0).exp()).collect();
        let w_end = breaks[64];
        let u_end = t0 + w_end / (1.0 - w_end);
        // Beyond u_end ≫ t the integrand is 2d·log(u/2π)/(2πu²) to relative
        // order (t/u)², which integrates in closed form.
        let rest = d / PI * ((u_end / (2.0 * PI)).ln() + 1.0) / u_end;
        quad::integrate(f, &breaks, 1e-14, 1e-12, 50_000)?.value + rest
    };
    let theta_t0 = crate::engine::rs_theta(t0, cfg)?;
    let s_t0 = table.len() as f64 - theta_t0 / PI - 1.0;
    let tail = smooth - pair_term(d, t, t0) * s_t0;
    let zero_sum = table_sum + tail;

    let bits = cfg.bits();
    let lhs = zeta_logderiv(s, cfg)?.to_c64().re;
    let half_s_plus_one = {
        let mut h = Complex::with_val(bits, s.as_complex() / 2u32);
        h += 1u32;
        ComplexPoint::from_complex(h)?
    };
    let psi = digamma(&half_s_plus_one, cfg)?.to_c64().re;
    let ln_pi = Float::with_val(bits, rug::float::Constant::Pi).ln().to_f64();
    let inv_s_minus_one = (1.0 / (sf - 1.0)).re;
    let rhs = 0.5 * ln_pi - inv_s_minus_one - 0.5 * psi + zero_sum;
    Ok(IdentityCheck {
        residual: (lhs - rhs).abs(),
        zero_sum,
        half_log_deviation: zero_sum - 0.5 * t.ln(),
        tail,
        tail_uncertainty,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lorentzian_closed_form_cases() {
        let (d, g) = (0.05, 100.0);
        let half = 0.4;
        let v = lorentzian_block_integral(d, g, g - half, g + half);
        assert!((v - 2.0 / d * (half / d).atan()).abs() < 1e-12);
        assert_eq!(lorentzian_block_integral(d, g, 3.0, 3.0), 0.0);
        let wide = lorentzian_block_integral(d, g, g - 1e9, g + 1e9);
        assert!((wide - PI / d).abs() < 1e-6);
    }

    #[test]
    fn graded_breaks_nest_around_pole() {
        let b = graded_breaks(0.0, 1.0, &[0.5], 0.01);
        assert!(b.contains(&0.5) && b.contains(&0.51) && b.contains(&0.49));
        assert_eq!(b[0], 0.0);
        assert_eq!(*b.last().unwrap(), 1.0);
        assert!(b.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn comparator_algebra() {
        for a in [0.1, 0.25, 0.5] {
            let c = comparators(a, 1000.0);
            let ratio = c.d / c.c;
            assert!((ratio - (1.0 - (-2.0 * a).exp()) / (2.0 * a)).abs() < 1e-14);
            assert!((ratio - 1.0).abs() <= a);
            assert!(c.d < c.b);
        }
        let c = comparators(0.5, 1000.0);
        let base = 1000.0 * 1000f64.ln().powi(2);
        assert!((c.d / base - 0.632_120_558_828_557_7).abs() < 1e-14);
        assert!((c.c / base - 1.0).abs() < 1e-15);
    }
}
