//! Statistics of zero ordinates: gaps, M_n sums, the pair-correlation form
//! factor, spacing histograms, large-gap counts and extreme values of |Z|.

use std::f64::consts::PI;

use crate::engine::{fast, hardy_z, PrecisionConfig};
use crate::quad;
use crate::zeros::{ZeroTable, ZetaPrimeZero};
use crate::{par, Error, Result};

/// Default lower bound assumed for normalized gaps when bounding Σ 1/(γ_n − γ_m)².
pub const DEFAULT_DELTA: f64 = 0.3;
/// Default margin c₁ keeping t away from neighbouring ordinates in M_n(t).
pub const DEFAULT_C1: f64 = 0.1;
/// Largest number of terms a direct double sum may take.
pub const PAIR_BUDGET: f64 = 2e8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapStat {
    pub n: usize,
    /// γ_{n+1} − γ_n.
    pub gap: f64,
    /// gap · log γ_n.
    pub normalized: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapTable {
    pub gaps: Vec<GapStat>,
    /// Smallest normalized gap and its index.
    pub min_normalized: f64,
    pub min_at: usize,
    /// Number of normalized gaps below [`DEFAULT_DELTA`].
    pub below_delta: usize,
}

pub fn gap_table(table: &ZeroTable) -> Result<GapTable> {
    if !table.certified || table.len() < 2 {
        return Err(Error::TableIncomplete {
            need: table.t_max,
            have: if table.certified { table.t_max } else { 0.0 },
        });
    }
    let g = table.gammas();
    let gaps: Vec<GapStat> = g
        .windows(2)
        .enumerate()
        .map(|(i, w)| GapStat {
            n: i + 1,
            gap: w[1] - w[0],
            normalized: (w[1] - w[0]) * w[0].ln(),
        })
        .collect();
    let (min_at, min_normalized) = gaps
        .iter()
        .map(|s| (s.n, s.normalized))
        .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
    let below_delta = gaps.iter().filter(|s| s.normalized < DEFAULT_DELTA).count();
    Ok(GapTable {
        gaps,
        min_normalized,
        min_at,
        below_delta,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BetaPrimeProxy {
    /// min (β′ − 1/2) log γ′.
    pub min: f64,
    /// (γ′, (β′ − 1/2) log γ′) sorted by γ′.
    pub profile: Vec<(f64, f64)>,
}

pub fn beta_prime_proxy(primes: &[ZetaPrimeZero]) -> Result<BetaPrimeProxy> {
    if primes.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(z) = primes.iter().find(|z| !(z.gamma >= 10.0)) {
        return Err(Error::InvalidConfig(format!("ζ′ zero ordinate {} below 10", z.gamma)));
    }
    let mut profile: Vec<(f64, f64)> = primes
        .iter()
        .map(|z| (z.gamma, (z.beta - 0.5) * z.gamma.ln()))
        .collect();
    profile.sort_by(|a, b| a.0.total_cmp(&b.0));
    let min = profile.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    Ok(BetaPrimeProxy { min, profile })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MnStat {
    pub n: usize,
    /// Σ_{0<|γ_m−γ_n|≤1} 1/(γ_n − γ_m).
    pub m_n: f64,
    /// |M_n| / log γ_n.
    pub m_n_scaled: f64,
    /// Σ_{m≠n} 1/(γ_n − γ_m)² over the whole table.
    pub s2_n: f64,
    /// The part of s2_n with |γ_m − γ_n| ≤ 1.
    pub s2_window: f64,
    /// Estimated contribution of ordinates above the table, from the
    /// smooth zero density log(u/2π)/2π.
    pub tail_note: f64,
}

/// Index range of ordinates with |γ_m − g| ≤ 1 in a sorted slice.
fn unit_window(g: &[f64], center: f64) -> (usize, usize) {
    let lo = g.partition_point(|&x| x < center - 1.0);
    let hi = g.partition_point(|&x| x <= center + 1.0);
    (lo, hi)
}

fn check_window(table: &ZeroTable, n: usize) -> Result<()> {
    if n == 0 || n > table.len() || !table.certified || table.t_max < table.gamma(n) + 2.0 {
        return Err(Error::WindowNotCovered { n });
    }
    Ok(())
}

/// ∫_T^∞ log(u/2π)/(2π (u − g)²) du in closed form.
fn density_tail(t_max: f64, g: f64) -> f64 {
    ((t_max / (2.0 * PI)).ln() / (t_max - g) + (t_max / (t_max - g)).ln() / g) / (2.0 * PI)
}

#[allow(non_snake_case)]
pub fn compute_Mn(table: &ZeroTable, n: usize) -> Result<MnStat> {
    check_window(table, n)?;
    let g = table.gammas();
    let gn = g[n - 1];
    let (lo, hi) = unit_window(&g, gn);
    let inv: Vec<f64> = (lo..hi).filter(|&m| m != n - 1).map(|m| 1.0 / (gn - g[m])).collect();
    let m_n = par::pairwise_sum(&inv);
    let sq: Vec<f64> = inv.iter().map(|x| x * x).collect();
    let s2_window = par::pairwise_sum(&sq);
    let all: Vec<f64> = g
        .iter()
        .enumerate()
        .filter(|&(m, _)| m != n - 1)
        .map(|(_, &x)| 1.0 / ((gn - x) * (gn - x)))
        .collect();
    Ok(MnStat {
        n,
        m_n,
        m_n_scaled: m_n.abs() / gn.ln(),
        s2_n: par::pairwise_sum(&all),
        s2_window,
        tail_note: density_tail(table.t_max, gn),
    })
}

/// M_n for n = 1..=n_max, in parallel.
#[allow(non_snake_case)]
pub fn compute_Mn_all(table: &ZeroTable, n_max: usize) -> Result<Vec<MnStat>> {
    let ns: Vec<usize> = (1..=n_max).collect();
    par::try_map(&ns, |&n| compute_Mn(table, n))
}

/// M_n(t) = Σ_{0<|γ_m−γ_n|≤1} 1/(t − γ_m), for t strictly inside
/// (γ_{n−1} + c₁/log γ_n, γ_{n+1} − c₁/log γ_n).
#[allow(non_snake_case)]
pub fn compute_Mn_of_t(table: &ZeroTable, n: usize, t: f64, c1: f64) -> Result<f64> {
    check_window(table, n)?;
    let g = table.gammas();
    let gn = g[n - 1];
    let margin = c1 / gn.ln();
    let lo = if n >= 2 { g[n - 2] + margin } else { f64::NEG_INFINITY };
    let hi = g.get(n).map_or(f64::INFINITY, |&x| x - margin);
    if !(t > lo && t < hi) {
        return Err(Error::TOutsideAdmissibleInterval { t, lo, hi });
    }
    let (a, b) = unit_window(&g, gn);
    let terms: Vec<f64> = (a..b).filter(|&m| m != n - 1).map(|m| 1.0 / (t - g[m])).collect();
    Ok(par::pairwise_sum(&terms))
}

/// Montgomery's weight 4/(4 + u²).
pub fn montgomery_weight(u: f64) -> f64 {
    4.0 / (4.0 + u * u)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FormFactorResult {
    pub t_cap: f64,
    pub alphas: Vec<f64>,
    pub values: Vec<f64>,
    /// Largest |Im F| over the grid, which vanishes up to rounding.
    pub max_imag: f64,
}

fn certified_to(table: &ZeroTable, t: f64) -> Result<Vec<f64>> {
    table.require_cover(t)?;
    Ok(table.zeros_in(f64::NEG_INFINITY, t).iter().map(|z| z.gamma.value()).collect())
}

/// F(α, T) = (T log T / 2π)^{-1} Σ_{0<γ,γ̃≤T} T^{iα(γ−γ̃)} w(γ − γ̃) by the
/// direct double sum over ordered pairs.
pub fn form_factor(table: &ZeroTable, t_cap: f64, alphas: &[f64]) -> Result<FormFactorResult> {
    let g = certified_to(table, t_cap)?;
    let k = g.len();
    let work = (k as f64) * (k as f64) * alphas.len().max(1) as f64;
    if work > PAIR_BUDGET {
        return Err(Error::TooManyZeros {
            count: k,
            budget: PAIR_BUDGET as usize,
        });
    }
    let log_t = t_cap.ln();
    let norm = t_cap * log_t / (2.0 * PI);
    let sums = par::map(alphas, |&alpha| {
        let rows: Vec<(f64, f64)> = g
            .iter()
            .map(|&x| {
                let mut re = Vec::with_capacity(k);
                let mut im = Vec::with_capacity(k);
                for &y in &g {
                    let d = x - y;
                    let w = montgomery_weight(d);
                    let (s, c) = (alpha * log_t * d).sin_cos();
                    re.push(w * c);
                    im.push(w * s);
                }
                (par::pairwise_sum(&re), par::pairwise_sum(&im))
            })
            .collect();
        let re: Vec<f64> = rows.iter().map(|r| r.0).collect();
        let im: Vec<f64> = rows.iter().map(|r| r.1).collect();
        (par::pairwise_sum(&re) / norm, par::pairwise_sum(&im) / norm)
    });
    let max_imag = sums.iter().map(|s| s.1.abs()).fold(0.0, f64::max);
    if max_imag > 1e-8 {
        return Err(Error::PrecisionExhausted(format!(
            "form factor imaginary part {max_imag:e} does not cancel"
        )));
    }
    Ok(FormFactorResult {
        t_cap,
        alphas: alphas.to_vec(),
        values: sums.into_iter().map(|s| s.0).collect(),
        max_imag,
    })
}

/// Largest t_cap ≤ `limit` whose form factor fits the pair budget.
pub fn form_factor_cap(table: &ZeroTable, limit: f64, n_alphas: usize) -> f64 {
    let max_k = (PAIR_BUDGET / n_alphas.max(1) as f64).sqrt().floor() as usize;
    let g = table.gammas();
    let k = g.partition_point(|&x| x <= limit);
    if k <= max_k {
        limit
    } else {
        // Halfway between the last admissible ordinate and the next.
        0.5 * (g[max_k - 1] + g[max_k])
    }
}

/// 1 − (sin πu / πu)².
pub fn pair_density(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        // (πu)²/3 − 2(πu)⁴/45 + …
        let x = (PI * u).powi(2);
        return x / 3.0 - 2.0 * x * x / 45.0;
    }
    let s = (PI * u).sin() / (PI * u);
    1.0 - s * s
}

/// ∫_a^b (1 − (sin πu/πu)²) du.
pub fn pair_density_integral(a: f64, b: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let pieces = ((b - a).abs().ceil() as usize).max(1);
    let breaks: Vec<f64> = (0..=pieces).map(|i| a + (b - a) * i as f64 / pieces as f64).collect();
    Ok(quad::integrate(|u| Ok(pair_density(u)), &breaks, 1e-13, 1e-13, 10_000)?.value)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    /// ∫_lo^hi (1 − (sin πu/πu)²) du.
    pub density_integral: f64,
    /// Count predicted by the pair-correlation density:
    /// (T log T / 2π) · density_integral.
    pub conjectured: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairHistogram {
    pub bins: Vec<HistogramBin>,
    /// Number of pairs with 0 < (γ − γ̃) log T / 2π ≤ β_max.
    pub pairs: usize,
}

pub fn pair_correlation_histogram(table: &ZeroTable, t_cap: f64, beta_max: f64, bins: usize) -> Result<PairHistogram> {
    if bins < 4 {
        return Err(Error::InvalidConfig(format!("{bins} bins; at least 4 needed")));
    }
    if !(beta_max > 0.0) {
        return Err(Error::InvalidConfig(format!("beta_max = {beta_max} must be positive")));
    }
    let g = certified_to(table, t_cap)?;
    let scale = t_cap.ln() / (2.0 * PI);
    let width = beta_max / bins as f64;
    let mut counts = vec![0usize; bins];
    let mut pairs = 0usize;
    for (i, &x) in g.iter().enumerate() {
        for &y in g[i + 1..].iter() {
            let u = (y - x) * scale;
            if u > beta_max {
                break;
            }
            if u > 0.0 {
                // Bins are (lo, hi].
                let b = ((u / width).ceil() as usize).clamp(1, bins) - 1;
                counts[b] += 1;
                pairs += 1;
            }
        }
    }
    let norm = t_cap * t_cap.ln() / (2.0 * PI);
    let idx: Vec<usize> = (0..bins).collect();
    let bins = par::try_map(&idx, |&b| {
        let lo = b as f64 * width;
        let hi = (b + 1) as f64 * width;
        let density_integral = pair_density_integral(lo, hi)?;
        Ok::<_, Error>(HistogramBin {
            lo,
            hi,
            count: counts[b],
            density_integral,
            conjectured: norm * density_integral,
        })
    })?;
    Ok(PairHistogram { bins, pairs })
}

/// #{n : γ_n ≤ T, γ_{n+1} − γ_n ≥ λ / log T} with T = t_cap.
pub fn large_gap_census(table: &ZeroTable, t_cap: f64, lambda: f64) -> Result<usize> {
    if !(lambda >= 0.0) {
        return Err(Error::InvalidConfig(format!("lambda = {lambda} must be non-negative")));
    }
    table.require_cover(t_cap)?;
    let g = table.gammas();
    let k = g.partition_point(|&x| x <= t_cap);
    if k >= g.len() {
        // γ_{k+1} is not in the table.
        return Err(Error::TableIncomplete {
            need: t_cap,
            have: table.t_max,
        });
    }
    let threshold = lambda / t_cap.ln();
    Ok((0..k).filter(|&i| g[i + 1] - g[i] >= threshold).count())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairingReport {
    pub n: usize,
    /// (γ_{n+1} − γ_n) log γ_n.
    pub gap_norm: f64,
    pub matched: bool,
    /// |ρ′ − ρ_n| log γ_n for the nearest ζ′ zero.
    pub dist_norm: f64,
    pub beta: f64,
    pub gamma: f64,
}

/// α₁ (1 − √(α₁/2π))^{-1}, the lower limit for α₂.
pub fn pairing_threshold(alpha1: f64) -> f64 {
    alpha1 / (1.0 - (alpha1 / (2.0 * PI)).sqrt())
}

/// For every n with γ_n ≤ t_cap and (γ_{n+1} − γ_n) log γ_n < α₁, the ζ′ zero nearest to
/// 1/2 + iγ_n and whether it lies within α₂ / log γ_n.
pub fn small_gap_pairing(
    table: &ZeroTable,
    primes: &[ZetaPrimeZero],
    t_cap: f64,
    alpha1: f64,
    alpha2: f64,
) -> Result<Vec<PairingReport>> {
    let threshold = pairing_threshold(alpha1);
    if !(alpha1 > 0.0 && alpha1 < 2.0 * PI && alpha2 > threshold) {
        return Err(Error::InadmissibleAlphas {
            alpha1,
            alpha2,
            threshold,
        });
    }
    let gaps = gap_table(table)?;
    let mut sorted: Vec<&ZetaPrimeZero> = primes.iter().collect();
    sorted.sort_by(|a, b| a.gamma.total_cmp(&b.gamma));
    let mut out = Vec::new();
    for s in gaps.gaps.iter().filter(|s| s.normalized < alpha1 && table.gamma(s.n) <= t_cap) {
        let gn = table.gamma(s.n);
        let a = sorted.partition_point(|z| z.gamma < gn - 2.0);
        let b = sorted.partition_point(|z| z.gamma <= gn + 2.0);
        let near = &sorted[a..b];
        let covered = sorted.first().map_or(false, |z| z.gamma <= gn)
            && sorted.last().map_or(false, |z| z.gamma >= gn);
        let best = near
            .iter()
            .map(|z| (z, (z.beta - 0.5).hypot(z.gamma - gn)))
            .min_by(|x, y| x.1.total_cmp(&y.1));
        let Some((z, dist)) = best.filter(|_| covered) else {
            return Err(Error::PrimesCoverageInsufficient { n: s.n, gamma: gn });
        };
        let dist_norm = dist * gn.ln();
        out.push(PairingReport {
            n: s.n,
            gap_norm: s.normalized,
            matched: dist_norm < alpha2,
            dist_norm,
            beta: z.beta,
            gamma: z.gamma,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremeResult {
    pub t_star: f64,
    pub max_abs: f64,
    /// exp(√(½ log T log log T)).
    pub comparator: f64,
}

pub fn extreme_scan(t_cap: f64, cfg: &PrecisionConfig) -> Result<ExtremeResult> {
    extreme_scan_with(t_cap, 1.0, cfg)
}

/// Maximum of |Z| on [10, t_cap]: a uniform grid of step
/// `step_scale`·π/(2 log t_cap), then every grid hump within 80% of the
/// largest is refined to the root of Z′.
pub fn extreme_scan_with(t_cap: f64, step_scale: f64, cfg: &PrecisionConfig) -> Result<ExtremeResult> {
    if !(t_cap >= 100.0) {
        return Err(Error::InvalidConfig(format!("t_cap = {t_cap} must be at least 100")));
    }
    let start = 10.0;
    let h = step_scale * PI / (2.0 * t_cap.ln());
    let n = ((t_cap - start) / h).ceil() as usize;
    let grid: Vec<f64> = (0..=n).map(|i| (start + i as f64 * h).min(t_cap)).collect();
    let vals = par::try_map(&grid, |&t| fast::hardy_z(t).map(f64::abs))?;
    let top = vals.iter().cloned().fold(0.0, f64::max);
    let humps: Vec<usize> = (1..n)
        .filter(|&i| vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1] && vals[i] >= 0.8 * top)
        .collect();
    let refined = par::try_map(&humps, |&i| refine_hump(grid[i - 1], grid[i + 1]))?;
    let mut best = (grid[0], vals[0]);
    for (i, &v) in vals.iter().enumerate() {
        if v > best.1 {
            best = (grid[i], v);
        }
    }
    for &(t, v) in &refined {
        if v > best.1 {
            best = (t, v);
        }
    }
    let max_abs = hardy_z(best.0, cfg)?.abs().max(best.1);
    let lt = t_cap.ln();
    Ok(ExtremeResult {
        t_star: best.0,
        max_abs,
        comparator: (0.5 * lt * lt.ln()).sqrt().exp(),
    })
}

/// Locates the maximum of |Z| in [a, b] by bisection on the sign of
/// Z·Z′ (positive while |Z| grows).
fn refine_hump(mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    let grows = |t: f64| -> Result<bool> {
        let (z, dz) = fast::hardy_z_and_derivative(t)?;
        Ok(z * dz > 0.0)
    };
    if !grows(a)? || grows(b)? {
        // No interior turning point; keep the better end.
        let (za, zb) = (fast::hardy_z(a)?.abs(), fast::hardy_z(b)?.abs());
        return Ok(if za >= zb { (a, za) } else { (b, zb) });
    }
    for _ in 0..60 {
        let m = 0.5 * (a + b);
        if grows(m)? {
            a = m;
        } else {
            b = m;
        }
        if b - a < 1e-12 * b {
            break;
        }
    }
    let t = 0.5 * (a + b);
    Ok((t, fast::hardy_z(t)?.abs()))
}
