//! CSV formatting, parsing of our own tables, and atomic file writes.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use zetalab::zeros::Ordinate;
use zetalab::{Rectangle, ZeroTable, ZetaPrimeZero, ZetaZero};

use crate::error::{CliError, CliResult};

/// Shortest decimal that parses back to the same double.
pub fn real(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e16).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Writes through a temporary file in the same directory and renames it
/// into place.
pub fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp{}", std::process::id()));
    fs::write(&tmp, contents).map_err(|e| CliError::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| CliError::io(path, e))
}

/// Accumulates CSV text.
pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(header: &str) -> Self {
        Self {
            text: format!("{header}\n"),
        }
    }

    pub fn row<S: AsRef<str>>(&mut self, fields: &[S]) {
        let parts: Vec<&str> = fields.iter().map(|s| s.as_ref()).collect();
        self.text.push_str(&parts.join(","));
        self.text.push('\n');
    }

    pub fn comment(&mut self, line: &str) {
        let _ = writeln!(self.text, "# {line}");
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

pub const ZEROS_HEADER: &str = "n,gamma,residual";

/// zeros.csv text for `table`.
pub fn zeros_csv(table: &ZeroTable) -> String {
    let mut csv = Csv::new(ZEROS_HEADER);
    for z in &table.zeros {
        csv.row(&[z.n.to_string(), z.gamma.as_str().to_string(), real(z.residual)]);
    }
    csv.comment(&format!(
        "certified={} count={} tmax={}",
        table.certified,
        table.count_check,
        real(table.t_max)
    ));
    csv.into_string()
}

fn bad(what: &str, line: usize) -> CliError {
    CliError::Config(format!("line {line}: malformed {what}"))
}

/// Reads zeros.csv text back into a table. The footer's certified flag must
/// agree with the recomputed one.
pub fn parse_zeros_csv(text: &str) -> CliResult<ZeroTable> {
    let mut zeros = Vec::new();
    let mut footer = None;
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        if i == 0 {
            if line != ZEROS_HEADER {
                return Err(bad("header", ln));
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("# ") {
            if rest.starts_with("certified=") {
                footer = Some(parse_footer(rest).ok_or_else(|| bad("footer", ln))?);
            }
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 3 {
            return Err(bad("row", ln));
        }
        zeros.push(ZetaZero {
            n: f[0].parse().map_err(|_| bad("index", ln))?,
            gamma: Ordinate::parse(f[1])?,
            residual: f[2].parse().map_err(|_| bad("residual", ln))?,
        });
    }
    let (certified, count, t_max) = footer.ok_or_else(|| CliError::Config("missing footer line".into()))?;
    let table = ZeroTable::assemble(zeros, t_max, count)?;
    if table.certified != certified {
        return Err(CliError::Config(format!(
            "footer says certified={certified} but {} zeros against count {count}",
            table.len()
        )));
    }
    Ok(table)
}

fn parse_footer(s: &str) -> Option<(bool, i64, f64)> {
    let mut cert = None;
    let mut count = None;
    let mut tmax = None;
    for kv in s.split_whitespace() {
        let (k, v) = kv.split_once('=')?;
        match k {
            "certified" => cert = v.parse().ok(),
            "count" => count = v.parse().ok(),
            "tmax" => tmax = v.parse().ok(),
            _ => {}
        }
    }
    Some((cert?, count?, tmax?))
}

pub const PRIMES_HEADER: &str = "k,beta,gamma,residual";

/// Rows of zeros_prime.csv.
pub fn prime_rows(csv: &mut Csv, zeros: &[ZetaPrimeZero]) {
    for (k, z) in zeros.iter().enumerate() {
        csv.row(&[(k + 1).to_string(), real(z.beta), real(z.gamma), real(z.residual)]);
    }
}

const PRIME_CACHE_HEADER: &str = "k,beta,gamma,residual,box_sigma_lo,box_sigma_hi,box_t_lo,box_t_hi";

/// Full-fidelity ζ′ zero list, including isolating boxes.
pub fn prime_cache_csv(zeros: &[ZetaPrimeZero]) -> String {
    let mut csv = Csv::new(PRIME_CACHE_HEADER);
    for (k, z) in zeros.iter().enumerate() {
        let b = &z.isolating_box;
        csv.row(&[
            (k + 1).to_string(),
            real(z.beta),
            real(z.gamma),
            real(z.residual),
            real(b.sigma_lo),
            real(b.sigma_hi),
            real(b.t_lo),
            real(b.t_hi),
        ]);
    }
    csv.into_string()
}

pub fn parse_prime_cache_csv(text: &str) -> CliResult<Vec<ZetaPrimeZero>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 {
            if line != PRIME_CACHE_HEADER {
                return Err(bad("header", 1));
            }
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        let f: Result<Vec<f64>, _> = line.split(',').skip(1).map(str::parse::<f64>).collect();
        let f = f.map_err(|_| bad("row", i + 1))?;
        if f.len() != 7 {
            return Err(bad("row", i + 1));
        }
        out.push(ZetaPrimeZero {
            beta: f[0],
            gamma: f[1],
            residual: f[2],
            isolating_box: Rectangle::new(f[3], f[4], f[5], f[6])?,
        });
    }
    Ok(out)
}

/// Splits CSV text into its header fields and data rows, skipping comments.
pub fn read_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines
        .next()
        .map(|h| h.split(',').map(String::from).collect())
        .unwrap_or_default();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_round_trip() {
        for x in [0.0, 1.5, -2.25e-17, 1e300, 14.134725141734694, 3.0e-5, 1234567.0] {
            assert_eq!(real(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(real(100.0), "100");
    }

    #[test]
    fn zeros_csv_round_trip() {
        let t = ZeroTable::from_ordinates(&[14.134725141734693, 21.022039638771555], 22.0).unwrap();
        let text = zeros_csv(&t);
        assert!(text.starts_with("n,gamma,residual\n1,14.13472514173469"), "{text}");
        assert!(text.ends_with("# certified=true count=2 tmax=22\n"));
        let back = parse_zeros_csv(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(zeros_csv(&back), text);
    }

    #[test]
    fn footer_must_match() {
        let text = "n,gamma,residual\n1,14.1,0\n# certified=true count=2 tmax=20\n";
        assert!(parse_zeros_csv(text).is_err());
        let text = "n,gamma,residual\n1,14.1,0\n# certified=false count=2 tmax=20\n";
        assert!(!parse_zeros_csv(text).unwrap().certified);
    }

    #[test]
    fn prime_cache_round_trip() {
        let z = vec![ZetaPrimeZero {
            beta: 2.463_105_3,
            gamma: 23.298_320_1,
            residual: 3.2e-41,
            isolating_box: Rectangle::new(0.4, 5.2, 10.0, 30.0).unwrap(),
        }];
        let back = parse_prime_cache_csv(&prime_cache_csv(&z)).unwrap();
        assert_eq!(back, z);
    }
}
