//! On-disk cache of zero tables keyed by everything that affects them.

use std::fs;
use std::path::{Path, PathBuf};

use zetalab::{ZeroTable, ZetaPrimeZero};

use crate::error::CliResult;
use crate::output::{self, real};

pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    ZetaZeros,
    ZetaPrimeZeros,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::ZetaZeros => "zeta_zeros",
            Kind::ZetaPrimeZeros => "zeta_prime_zeros",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CacheKey {
    pub kind: Kind,
    pub t_max: f64,
    pub precision_digits: u32,
    pub code_version: String,
}

impl CacheKey {
    pub fn new(kind: Kind, t_max: f64, precision_digits: u32) -> Self {
        Self {
            kind,
            t_max,
            precision_digits,
            code_version: CODE_VERSION.to_string(),
        }
    }

    /// First line of a cache file; a file whose first line differs is a
    /// miss.
    fn stamp(&self) -> String {
        format!(
            "# kind={} t_max={} precision_digits={} code_version={}",
            self.kind.name(),
            real(self.t_max),
            self.precision_digits,
            self.code_version
        )
    }

    fn file_name(&self) -> String {
        format!(
            "{}-t{}-d{}-v{}.csv",
            self.kind.name(),
            real(self.t_max),
            self.precision_digits,
            self.code_version
        )
    }
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: &Path) -> Self {
        Self { dir: dir.to_path_buf() }
    }

    fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    /// Body of the entry for `key`, if present and stamped with the same key.
    fn read(&self, key: &CacheKey) -> Option<String> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let (first, body) = text.split_once('\n')?;
        (first == key.stamp()).then(|| body.to_string())
    }

    fn write(&self, key: &CacheKey, body: &str) -> CliResult<()> {
        output::write_atomic(&self.path(key), &format!("{}\n{body}", key.stamp()))
    }

    /// A stored table, if any. Unreadable entries count as misses.
    pub fn zero_table(&self, key: &CacheKey) -> Option<ZeroTable> {
        let body = self.read(key)?;
        output::parse_zeros_csv(&body).ok().filter(|t| t.certified)
    }

    pub fn store_zero_table(&self, key: &CacheKey, table: &ZeroTable) -> CliResult<()> {
        self.write(key, &output::zeros_csv(table))
    }

    pub fn prime_zeros(&self, key: &CacheKey) -> Option<Vec<ZetaPrimeZero>> {
        let body = self.read(key)?;
        output::parse_prime_cache_csv(&body).ok()
    }

    pub fn store_prime_zeros(&self, key: &CacheKey, zeros: &[ZetaPrimeZero]) -> CliResult<()> {
        self.write(key, &output::prime_cache_csv(zeros))
    }
}
