//! The subcommands. Each writes its CSV files into the output directory and
//! returns the lines of its console report.

use std::path::PathBuf;

use zetalab::meanvalue::{comparators, mean_square_logderiv, MeanValueOptions};
use zetalab::stats::{
    beta_prime_proxy, compute_Mn_all, extreme_scan, form_factor, form_factor_cap, gap_table, large_gap_census,
    pair_correlation_histogram, pairing_threshold, small_gap_pairing, DEFAULT_DELTA,
};
use zetalab::zeros::{self, berndt_main_term, count_zeros_to};
use zetalab::{Error, PrecisionConfig, Rectangle, ZeroTable, ZetaPrimeZero};

use crate::cache::{Cache, CacheKey, Kind};
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{self, real, Csv};

/// The working tables reach this far past t_max so that windows around
/// every reported zero are covered.
pub const TABLE_MARGIN: f64 = 10.0;

pub const ALPHA1: f64 = 3.0;
pub const ALPHA2: f64 = 10.0;
pub const CENSUS_LAMBDAS: [f64; 8] = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0];
pub const FORM_FACTOR_ALPHAS: usize = 25;
pub const PAIR_BETA_MAX: f64 = 3.0;
pub const PAIR_BINS: usize = 30;

pub struct Session {
    pub cfg: RunConfig,
    pub precision: PrecisionConfig,
    cache: Cache,
    working: Option<ZeroTable>,
    primes: Option<Vec<ZetaPrimeZero>>,
}

impl Session {
    pub fn new(cfg: RunConfig) -> CliResult<Self> {
        cfg.validate()?;
        let precision = PrecisionConfig::with_digits(cfg.precision_digits)?;
        let cache = Cache::new(&cfg.cache_dir);
        Ok(Self {
            cfg,
            precision,
            cache,
            working: None,
            primes: None,
        })
    }

    /// Uses `table` in place of the computed zero table.
    pub fn with_table(mut self, table: ZeroTable) -> Self {
        self.working = Some(table);
        self
    }

    pub fn out(&self, name: &str) -> PathBuf {
        self.cfg.out_dir.join(name)
    }

    fn write(&self, name: &str, text: &str) -> CliResult<PathBuf> {
        let p = self.out(name);
        output::write_atomic(&p, text)?;
        Ok(p)
    }

    /// Certified zeros up to t_max + [`TABLE_MARGIN`], from the cache when
    /// possible.
    pub fn working_table(&mut self) -> CliResult<&ZeroTable> {
        if self.working.is_none() {
            let t = self.cfg.t_max + TABLE_MARGIN;
            let key = CacheKey::new(Kind::ZetaZeros, t, self.cfg.precision_digits);
            let table = match self.cache.zero_table(&key) {
                Some(t) => t,
                None => {
                    let table = zeros::scan_zeta_zeros(t, &self.precision)?;
                    self.cache.store_zero_table(&key, &table)?;
                    table
                }
            };
            self.working = Some(table);
        }
        Ok(self.working.as_ref().expect("just set"))
    }

    /// ζ′ zeros with 0.4 ≤ β′ ≤ 10 and 10 ≤ γ′ ≤ t_max + [`TABLE_MARGIN`].
    pub fn prime_zeros(&mut self) -> CliResult<&[ZetaPrimeZero]> {
        if self.primes.is_none() {
            let t = self.cfg.t_max + TABLE_MARGIN;
            let key = CacheKey::new(Kind::ZetaPrimeZeros, t, self.cfg.precision_digits);
            let found = match self.cache.prime_zeros(&key) {
                Some(z) => z,
                None => {
                    let r = Rectangle::new(0.4, 10.0, 10.0, t)?;
                    let z = zeros::find_zeta_prime_zeros(&r, &self.precision)?;
                    self.cache.store_prime_zeros(&key, &z)?;
                    z
                }
            };
            self.primes = Some(found);
        }
        Ok(self.primes.as_deref().expect("just set"))
    }

    /// Reported table: zeros up to t_max, re-certified at t_max.
    pub fn reported_table(&mut self) -> CliResult<ZeroTable> {
        let t = self.cfg.t_max;
        let prec = self.precision.clone();
        Ok(self.working_table()?.truncated(t, &prec)?)
    }
}

pub fn cmd_zeros(s: &mut Session) -> CliResult<Vec<String>> {
    let t_max = s.cfg.t_max;
    let table = match s.reported_table() {
        Ok(t) => t,
        Err(CliError::Core(Error::CertificationFailed {
            lo,
            hi,
            located,
            expected,
            table,
        })) => {
            let zeros = table.zeros_in(f64::NEG_INFINITY, t_max).to_vec();
            let partial = ZeroTable {
                count_check: count_zeros_to(t_max, &s.precision).unwrap_or(table.count_check),
                zeros,
                t_max,
                certified: false,
            };
            s.write("zeros.csv", &output::zeros_csv(&partial))?;
            return Err(CliError::Core(Error::CertificationFailed {
                lo,
                hi,
                located,
                expected,
                table,
            }));
        }
        Err(e) => return Err(e),
    };
    let p = s.write("zeros.csv", &output::zeros_csv(&table))?;
    let line = format!(
        "zeros: {} zeros with γ ≤ {}, N(T) = {}, certified = {} -> {}",
        table.len(),
        real(t_max),
        table.count_check,
        table.certified,
        p.display()
    );
    if !table.certified {
        return Err(CliError::HardFailure(line));
    }
    Ok(vec![line])
}

/// zeros_prime.csv text for the zeros with γ′ ≤ t_max. Below t = 10 the
/// search region is empty and only the header is written.
pub fn prime_zeros_csv(zeros: &[ZetaPrimeZero], t_max: f64) -> String {
    let mut csv = Csv::new(output::PRIMES_HEADER);
    if t_max <= 10.0 {
        return csv.into_string();
    }
    let kept: Vec<ZetaPrimeZero> = zeros.iter().filter(|z| z.gamma <= t_max).cloned().collect();
    output::prime_rows(&mut csv, &kept);
    let main = berndt_main_term(t_max);
    csv.comment(&format!(
        "count={} berndt={} difference={} bound={}",
        kept.len(),
        real(main),
        real(kept.len() as f64 - main),
        real(2.0 * t_max.ln())
    ));
    csv.into_string()
}

pub fn cmd_dzeros(s: &mut Session) -> CliResult<Vec<String>> {
    let t_max = s.cfg.t_max;
    let zeros: Vec<ZetaPrimeZero> = s.prime_zeros()?.to_vec();
    let p = s.write("zeros_prime.csv", &prime_zeros_csv(&zeros, t_max))?;
    let kept: Vec<&ZetaPrimeZero> = zeros.iter().filter(|z| z.gamma <= t_max).collect();
    let main = berndt_main_term(t_max);
    let mut lines = vec![format!(
        "dzeros: {} zeros of ζ′ with γ′ ≤ {} (main term {:.2}, allowed deviation {:.2}) -> {}",
        kept.len(),
        real(t_max),
        main,
        2.0 * t_max.ln(),
        p.display()
    )];
    if let Some(z) = kept.iter().find(|z| !(z.beta > 0.5)) {
        lines.push(format!("ζ′ zero with β′ = {} ≤ 1/2 at γ′ = {}", z.beta, z.gamma));
        return Err(CliError::HardFailure(lines.join("\n")));
    }
    Ok(lines)
}

pub fn cmd_stats(s: &mut Session) -> CliResult<Vec<String>> {
    let t_max = s.cfg.t_max;
    let prec = s.precision.clone();
    let primes: Vec<ZetaPrimeZero> = s.prime_zeros()?.to_vec();
    let w = s.working_table()?.clone();
    let k = w.count_to(t_max);
    let mut lines = Vec::new();

    let gaps = gap_table(&w)?;
    let mut csv = Csv::new("n,gamma,gap,normalized");
    let kept: Vec<_> = gaps.gaps.iter().filter(|g| g.n <= k).collect();
    for g in &kept {
        csv.row(&[g.n.to_string(), w.zeros[g.n - 1].gamma.as_str().to_string(), real(g.gap), real(g.normalized)]);
    }
    if let Some(m) = kept.iter().min_by(|a, b| a.normalized.total_cmp(&b.normalized)) {
        let below = kept.iter().filter(|g| g.normalized < DEFAULT_DELTA).count();
        csv.comment(&format!("min_normalized={} n={} below_{}={}", real(m.normalized), m.n, DEFAULT_DELTA, below));
        lines.push(format!(
            "gaps: smallest normalized gap {:.4} at n = {}, {} below {}",
            m.normalized, m.n, below, DEFAULT_DELTA
        ));
    }
    s.write("gaps.csv", &csv.into_string())?;

    let mn = compute_Mn_all(&w, k)?;
    let mut csv = Csv::new("n,Mn,Mn_over_log,S2");
    for m in &mn {
        csv.row(&[m.n.to_string(), real(m.m_n), real(m.m_n_scaled), real(m.s2_n)]);
    }
    s.write("mn.csv", &csv.into_string())?;
    if let Some(m) = mn.iter().max_by(|a, b| a.m_n_scaled.total_cmp(&b.m_n_scaled)) {
        lines.push(format!("mn: max |M_n|/log γ_n = {:.4} at n = {}", m.m_n_scaled, m.n));
    }

    let cap = form_factor_cap(&w, t_max, FORM_FACTOR_ALPHAS);
    let half = (FORM_FACTOR_ALPHAS / 2) as i64;
    let alphas: Vec<f64> = (-half..=half).map(|j| 0.25 * j as f64).collect();
    let ff = form_factor(&w, cap, &alphas)?;
    let mut csv = Csv::new("alpha,F");
    for (a, f) in ff.alphas.iter().zip(&ff.values) {
        csv.row(&[real(*a), real(*f)]);
    }
    csv.comment(&format!("T={} max_imag={}", real(ff.t_cap), real(ff.max_imag)));
    s.write("formfactor.csv", &csv.into_string())?;
    lines.push(format!("formfactor: {} values of α at T = {:.1}", alphas.len(), cap));

    let hist = pair_correlation_histogram(&w, t_max, PAIR_BETA_MAX, PAIR_BINS)?;
    let mut csv = Csv::new("bin_lo,bin_hi,count,conjectured");
    for b in &hist.bins {
        csv.row(&[real(b.lo), real(b.hi), b.count.to_string(), real(b.conjectured)]);
    }
    csv.comment(&format!("T={} pairs={}", real(t_max), hist.pairs));
    s.write("paircorr.csv", &csv.into_string())?;
    lines.push(format!("paircorr: {} pairs in {} bins", hist.pairs, hist.bins.len()));

    let mut csv = Csv::new("lambda,count");
    for l in CENSUS_LAMBDAS {
        csv.row(&[real(l), large_gap_census(&w, t_max, l)?.to_string()]);
    }
    s.write("census.csv", &csv.into_string())?;

    let pairs = small_gap_pairing(&w, &primes, t_max, ALPHA1, ALPHA2)?;
    let unmatched = pairs.iter().filter(|p| !p.matched).count();
    let mut csv = Csv::new("n,gamma,gap_norm,beta_prime,gamma_prime,dist_norm,matched");
    for p in &pairs {
        csv.row(&[
            p.n.to_string(),
            w.zeros[p.n - 1].gamma.as_str().to_string(),
            real(p.gap_norm),
            real(p.beta),
            real(p.gamma),
            real(p.dist_norm),
            p.matched.to_string(),
        ]);
    }
    csv.comment(&format!(
        "alpha1={} alpha2={} threshold={} unmatched={}",
        real(ALPHA1),
        real(ALPHA2),
        real(pairing_threshold(ALPHA1)),
        unmatched
    ));
    s.write("pairing.csv", &csv.into_string())?;
    lines.push(format!("pairing: {} small gaps, {} unmatched", pairs.len(), unmatched));

    let shown: Vec<ZetaPrimeZero> = primes.iter().filter(|z| z.gamma <= t_max).cloned().collect();
    let mut csv = Csv::new("gamma,scaled");
    if !shown.is_empty() {
        let proxy = beta_prime_proxy(&shown)?;
        for (g, v) in &proxy.profile {
            csv.row(&[real(*g), real(*v)]);
        }
        csv.comment(&format!("min={}", real(proxy.min)));
        lines.push(format!("betaprime: min (β′ − 1/2) log γ′ = {:.4}", proxy.min));
    }
    s.write("betaprime.csv", &csv.into_string())?;

    let mut caps = Vec::new();
    let mut c = 100.0;
    while c < t_max {
        caps.push(c);
        c *= 2.0;
    }
    if t_max >= 100.0 {
        caps.push(t_max);
    }
    let mut csv = Csv::new("t_cap,t_star,max_abs,comparator,ratio");
    for &cap in &caps {
        let e = extreme_scan(cap, &prec)?;
        csv.row(&[real(cap), real(e.t_star), real(e.max_abs), real(e.comparator), real(e.max_abs / e.comparator)]);
    }
    s.write("extremes.csv", &csv.into_string())?;

    if unmatched > 0 {
        lines.push(format!("{unmatched} small gaps have no ζ′ zero within α₂/log γ"));
        return Err(CliError::HardFailure(lines.join("\n")));
    }
    Ok(lines)
}

pub const MEANVALUE_HEADER: &str = "a,T,sigma,integral,comp_B,comp_C,comp_D,comp_T2,quad_err";

pub fn cmd_meanvalue(s: &mut Session) -> CliResult<Vec<String>> {
    let prec = s.precision.clone();
    let a_list = s.cfg.a_list.clone();
    let caps = s.cfg.mean_value_caps();
    let w = s.working_table()?.clone();
    let mut csv = Csv::new(MEANVALUE_HEADER);
    let mut lines = Vec::new();
    if a_list.is_empty() {
        lines.push("meanvalue: a_list is empty, nothing to integrate".to_string());
    }
    for &a in &a_list {
        for &t in &caps {
            match mean_square_logderiv(a, t, &w, &prec, &MeanValueOptions::default()) {
                Ok(r) => {
                    csv.row(&[
                        real(a),
                        real(t),
                        real(r.sigma),
                        real(r.integral),
                        real(r.comparator_B),
                        real(r.comparator_C),
                        real(r.comparator_D),
                        real(r.comparator_T2),
                        real(r.quad_error_est),
                    ]);
                    lines.push(format!(
                        "meanvalue: a = {a}, T = {t}: integral / comparator_D = {:.4}",
                        r.integral / r.comparator_D
                    ));
                }
                Err(Error::QuadratureStalled { lo, hi }) => {
                    let c = comparators(a, t);
                    csv.row(&[
                        real(a),
                        real(t),
                        real(0.5 + a / t.ln()),
                        "NA".to_string(),
                        real(c.b),
                        real(c.c),
                        real(c.d),
                        real(c.t2),
                        "NA".to_string(),
                    ]);
                    lines.push(format!("meanvalue: a = {a}, T = {t}: quadrature stalled on [{lo}, {hi}]"));
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    let p = s.write("meanvalue.csv", &csv.into_string())?;
    lines.push(format!("meanvalue -> {}", p.display()));
    Ok(lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use zetalab::Rectangle;

    fn zero(beta: f64, gamma: f64) -> ZetaPrimeZero {
        ZetaPrimeZero {
            beta,
            gamma,
            residual: 0.0,
            isolating_box: Rectangle::new(beta - 0.1, beta + 0.1, gamma - 0.1, gamma + 0.1).unwrap(),
        }
    }

    #[test]
    fn prime_csv_below_ten_is_header_only() {
        assert_eq!(prime_zeros_csv(&[zero(2.46, 23.3)], 10.0), format!("{}\n", output::PRIMES_HEADER));
    }

    #[test]
    fn prime_csv_footer() {
        let zs = [zero(2.46, 23.3), zero(1.29, 31.7), zero(2.3, 38.5)];
        let text = prime_zeros_csv(&zs, 35.0);
        let (header, rows) = output::read_rows(&text);
        assert_eq!(header.join(","), output::PRIMES_HEADER);
        assert_eq!(rows.len(), 2);
        let footer = text.lines().last().unwrap();
        assert!(footer.starts_with("# count=2 berndt="), "{footer}");
    }
}
