//! Zeros of ζ on the critical line and zeros of ζ′ in rectangles.

mod prime;
mod scan;

use std::f64::consts::{E, PI};
use std::fmt;

use rug::Float;

use crate::{Error, PrecisionConfig, Result};

pub use prime::{find_zeta_prime_zeros, find_zeta_prime_zeros_with, winding_number, PrimeSearchOptions, Rectangle, ZetaPrimeZero};
pub use scan::{count_zeros_to, scan_zeta_zeros, scan_zeta_zeros_with, s_of_t, ScanOptions};

/// Significant digits kept in a stored ordinate.
pub const ORDINATE_DIGITS: usize = 18;

/// An ordinate stored as a canonical decimal string with its nearest double.
///
/// Residuals are evaluated at the decimal value, so a table read back from
/// CSV is indistinguishable from a freshly computed one.
#[derive(Debug, Clone, PartialEq)]
pub struct Ordinate {
    text: String,
    value: f64,
}

impl Ordinate {
    /// Rounds `x` to [`ORDINATE_DIGITS`] significant digits.
    pub fn from_float(x: &Float) -> Self {
        let text = plain_decimal(&x.to_string_radix(10, Some(ORDINATE_DIGITS)));
        let value = text.parse().expect("formatted decimal parses");
        Self { text, value }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::from_float(&Float::with_val(64, x))
    }

    /// Parses and canonicalizes a decimal ordinate.
    pub fn parse(s: &str) -> Result<Self> {
        let v = Float::parse(s.trim())
            .map_err(|e| Error::InvalidConfig(format!("bad ordinate {s:?}: {e}")))?;
        let x = Float::with_val(128, v);
        if !x.is_finite() {
            return Err(Error::NonFinite("ordinate"));
        }
        Ok(Self::from_float(&x))
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    /// The decimal value at `bits` of precision.
    pub fn to_float(&self, bits: u32) -> Float {
        Float::with_val(bits, Float::parse(&self.text).expect("canonical text parses"))
    }
}

impl fmt::Display for Ordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// Converts MPFR scientific output ("1.234e1", "-5.6e-3") to plain decimal
/// notation with the same digits.
fn plain_decimal(sci: &str) -> String {
    let (neg, body) = match sci.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, sci),
    };
    let (mant, exp) = match body.split_once(['e', '@']) {
        Some((m, e)) => (m, e.parse::<i64>().expect("exponent")),
        None => (body, 0),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    let digits: String = int_part.chars().chain(frac_part.chars()).collect();
    let point = int_part.len() as i64 + exp;
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if point <= 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat('0').take((-point) as usize));
        out.push_str(&digits);
    } else if point as usize >= digits.len() {
        out.push_str(&digits);
        out.extend(std::iter::repeat('0').take(point as usize - digits.len()));
    } else {
        out.push_str(&digits[..point as usize]);
        out.push('.');
        out.push_str(&digits[point as usize..]);
    }
    out
}

/// A zero 1/2 + iγ of ζ.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaZero {
    /// 1-based index in increasing ordinate order.
    pub n: usize,
    pub gamma: Ordinate,
    /// |Z(γ)| at the stored ordinate.
    pub residual: f64,
}

/// All critical-line zeros with 0 < γ ≤ t_max, with a completeness check.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    pub zeros: Vec<ZetaZero>,
    pub t_max: f64,
    pub certified: bool,
    /// N(t_max) = round(θ(t_max)/π + 1 + S(t_max)).
    pub count_check: i64,
}

impl ZeroTable {
    /// Builds a table from known ordinates, taking their count as the
    /// reference count. Used for stored tables and synthetic inputs.
    pub fn from_ordinates(gammas: &[f64], t_max: f64) -> Result<Self> {
        let zeros = gammas
            .iter()
            .enumerate()
            .map(|(i, &g)| ZetaZero {
                n: i + 1,
                gamma: Ordinate::from_f64(g),
                residual: 0.0,
            })
            .collect();
        Self::assemble(zeros, t_max, gammas.len() as i64)
    }

    /// Builds a table, checking ordering and setting `certified`.
    pub fn assemble(zeros: Vec<ZetaZero>, t_max: f64, count_check: i64) -> Result<Self> {
        for (i, z) in zeros.iter().enumerate() {
            if z.n != i + 1 {
                return Err(Error::InvalidConfig(format!("zero index {} at position {}", z.n, i + 1)));
            }
        }
        if let Some(w) = zeros.windows(2).find(|w| !(w[1].gamma.value() > w[0].gamma.value())) {
            return Err(Error::InvalidConfig(format!(
                "ordinates not strictly increasing at n = {}",
                w[1].n
            )));
        }
        let certified = count_check == zeros.len() as i64;
        Ok(Self {
            zeros,
            t_max,
            certified,
            count_check,
        })
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn gammas(&self) -> Vec<f64> {
        self.zeros.iter().map(|z| z.gamma.value()).collect()
    }

    /// γ_n for 1-based n.
    pub fn gamma(&self, n: usize) -> f64 {
        self.zeros[n - 1].gamma.value()
    }

    /// Zeros with lo ≤ γ ≤ hi.
    pub fn zeros_in(&self, lo: f64, hi: f64) -> &[ZetaZero] {
        let a = self.zeros.partition_point(|z| z.gamma.value() < lo);
        let b = self.zeros.partition_point(|z| z.gamma.value() <= hi);
        &self.zeros[a..b.max(a)]
    }

    /// Number of zeros with γ ≤ t.
    pub fn count_to(&self, t: f64) -> usize {
        self.zeros.partition_point(|z| z.gamma.value() <= t)
    }

    /// The zeros with γ ≤ t, re-certified against an independent count N(t).
    pub fn truncated(&self, t: f64, cfg: &PrecisionConfig) -> Result<ZeroTable> {
        self.require_cover(t)?;
        let k = self.count_to(t);
        Self::assemble(self.zeros[..k].to_vec(), t, count_zeros_to(t, cfg)?)
    }

    /// Errors unless the table is certified and reaches `t`.
    pub fn require_cover(&self, t: f64) -> Result<()> {
        if !self.certified || self.t_max < t {
            return Err(Error::TableIncomplete {
                need: t,
                have: if self.certified { self.t_max } else { 0.0 },
            });
        }
        Ok(())
    }
}

/// (t/2π) log(t/(2πe)), the smooth part of N(t).
pub fn count_main_term(t: f64) -> f64 {
    t / (2.0 * PI) * (t / (2.0 * PI * E)).ln()
}

/// (t/2π) log(t/(4πe)), the smooth part of the ζ′ zero count.
pub fn berndt_main_term(t: f64) -> f64 {
    t / (2.0 * PI) * (t / (4.0 * PI * E)).ln()
}

/// The zero whose ordinate is closest to `t`; an exact midpoint goes to the
/// lower zero.
pub fn nearest_zero(t: f64, table: &ZeroTable) -> Result<ZetaZero> {
    if !table.certified {
        return Err(Error::TableIncomplete {
            need: t,
            have: 0.0,
        });
    }
    let lo = table.zeros.first().map_or(f64::INFINITY, |z| z.gamma.value());
    if !(t >= lo && t <= table.t_max) {
        return Err(Error::OutOfRange {
            t,
            lo,
            hi: table.t_max,
        });
    }
    let i = table.zeros.partition_point(|z| z.gamma.value() <= t);
    // zeros[i-1] ≤ t < zeros[i]
    let below = &table.zeros[i - 1];
    match table.zeros.get(i) {
        Some(above) if above.gamma.value() - t < t - below.gamma.value() => Ok(above.clone()),
        _ => Ok(below.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_decimal_shapes() {
        assert_eq!(plain_decimal("1.41347251417346937e1"), "14.1347251417346937");
        assert_eq!(plain_decimal("-5.60e-3"), "-0.00560");
        assert_eq!(plain_decimal("1.25e3"), "1250");
        assert_eq!(plain_decimal("2.5"), "2.5");
    }

    #[test]
    fn ordinate_round_trips() {
        let x = Float::with_val(200, Float::parse("14.134725141734693790457251983562").unwrap());
        let o = Ordinate::from_float(&x);
        assert_eq!(o.as_str(), "14.1347251417346938");
        assert_eq!(Ordinate::parse(o.as_str()).unwrap(), o);
        assert_eq!(o.value(), 14.134_725_141_734_694);
    }

    #[test]
    fn main_terms() {
        assert!((count_main_term(100.0) - 28.127).abs() < 1e-3);
        assert!(count_main_term(2.0 * PI * E).abs() < 1e-12);
        assert!((count_main_term(1000.0) - 647.74).abs() < 1e-2);
        assert!((berndt_main_term(100.0) - 17.096).abs() < 1e-3);
        assert!(berndt_main_term(4.0 * PI * E).abs() < 1e-12);
        assert!((berndt_main_term(1000.0) - 537.4).abs() < 0.05);
    }

    #[test]
    fn nearest_zero_tie_goes_down() {
        let t = ZeroTable::from_ordinates(&[14.0, 21.0, 25.0], 30.0).unwrap();
        assert_eq!(nearest_zero(17.5, &t).unwrap().n, 1);
        assert_eq!(nearest_zero(17.5 + 1e-12, &t).unwrap().n, 2);
        assert_eq!(nearest_zero(21.0, &t).unwrap().n, 2);
        assert_eq!(nearest_zero(29.0, &t).unwrap().n, 3);
        assert!(matches!(nearest_zero(13.0, &t), Err(Error::OutOfRange { .. })));
        assert!(matches!(nearest_zero(31.0, &t), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn zeros_in_window() {
        let t = ZeroTable::from_ordinates(&[1.0, 2.0, 3.0, 4.0], 5.0).unwrap();
        assert_eq!(t.zeros_in(2.0, 3.0).len(), 2);
        assert_eq!(t.zeros_in(2.5, 2.6).len(), 0);
        assert_eq!(t.count_to(3.5), 3);
    }

    #[test]
    fn rejects_unordered() {
        assert!(ZeroTable::from_ordinates(&[2.0, 1.0], 5.0).is_err());
        assert!(ZeroTable::from_ordinates(&[2.0, 2.0], 5.0).is_err());
    }
}
