use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use zetalab_cli::output::{parse_zeros_csv, read_rows};

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("zetalab-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&d);
    fs::create_dir_all(&d).unwrap();
    d
}

fn zetalab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetalab"))
        .args(args)
        .arg("--out")
        .arg(dir.join("out"))
        .arg("--cache")
        .arg(dir.join("cache"))
        .output()
        .unwrap()
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join("out").join(name)).unwrap()
}

fn floats(rows: &[Vec<String>], col: usize) -> Vec<f64> {
    rows.iter().map(|r| r[col].parse().unwrap()).collect()
}

#[test]
fn zeros_to_100() {
    let dir = scratch("z100");
    let out = zetalab(&dir, &["zeros", "--tmax", "100"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let table = parse_zeros_csv(&read(&dir, "zeros.csv")).unwrap();
    assert_eq!(table.len(), 29);
    assert!(table.certified);
    assert!((table.gamma(29) - 98.831194218).abs() < 1e-8);
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn smallest_range_has_one_zero() {
    let dir = scratch("z20");
    let out = zetalab(&dir, &["zeros", "--tmax", "20"]);
    assert!(out.status.success());
    let table = parse_zeros_csv(&read(&dir, "zeros.csv")).unwrap();
    assert_eq!(table.len(), 1);
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn warm_cache_is_byte_identical() {
    let dir = scratch("warm");
    assert!(zetalab(&dir, &["zeros", "--tmax", "150"]).status.success());
    let cold = read(&dir, "zeros.csv");
    let cached: Vec<_> = fs::read_dir(dir.join("cache")).unwrap().collect();
    assert!(!cached.is_empty());
    assert!(zetalab(&dir, &["zeros", "--tmax", "150"]).status.success());
    assert_eq!(read(&dir, "zeros.csv"), cold);
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn config_errors_exit_3() {
    let dir = scratch("cfg");
    assert_eq!(zetalab(&dir, &["zeros", "--tmax", "5"]).status.code(), Some(3));
    assert_eq!(zetalab(&dir, &["zeros", "--precision-digits", "10"]).status.code(), Some(3));
    assert_eq!(zetalab(&dir, &["meanvalue", "--a", "-1"]).status.code(), Some(3));
    assert_eq!(zetalab(&dir, &["frobnicate"]).status.code(), Some(3));
    let file = dir.join("bad.cfg");
    fs::write(&file, "tmax = 100\nwibble = 3\n").unwrap();
    let out = zetalab(&dir, &["zeros", "--config", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("wibble"));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn config_file_and_flags() {
    let dir = scratch("file");
    let file = dir.join("run.cfg");
    fs::write(&file, "# small run\ntmax = 60\njobs = 2\n").unwrap();
    let out = zetalab(&dir, &["zeros", "--config", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(parse_zeros_csv(&read(&dir, "zeros.csv")).unwrap().len(), 13);
    // Flags win over the file.
    let out = zetalab(&dir, &["zeros", "--config", file.to_str().unwrap(), "--tmax", "40"]);
    assert!(out.status.success());
    assert_eq!(parse_zeros_csv(&read(&dir, "zeros.csv")).unwrap().len(), 6);
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn statistics_outputs() {
    let dir = scratch("stats");
    let out = zetalab(&dir, &["stats", "--tmax", "200"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let (_, ff) = read_rows(&read(&dir, "formfactor.csv"));
    let alpha = floats(&ff, 0);
    let f = floats(&ff, 1);
    assert_eq!(alpha.len(), 25);
    for i in 0..alpha.len() {
        let j = alpha.len() - 1 - i;
        assert_eq!(alpha[i], -alpha[j]);
        assert!((f[i] - f[j]).abs() < 1e-9 * f[i].abs().max(1.0));
    }

    let (_, census) = read_rows(&read(&dir, "census.csv"));
    let counts = floats(&census, 1);
    assert!(counts.windows(2).all(|w| w[1] <= w[0]));

    let (header, gaps) = read_rows(&read(&dir, "gaps.csv"));
    assert_eq!(header, ["n", "gamma", "gap", "normalized"]);
    let (gamma, gap, norm) = (floats(&gaps, 1), floats(&gaps, 2), floats(&gaps, 3));
    for i in 0..gaps.len() {
        assert!((norm[i] - gap[i] * gamma[i].ln()).abs() < 1e-12 * norm[i]);
    }

    let (_, pairs) = read_rows(&read(&dir, "pairing.csv"));
    assert!(pairs.iter().all(|r| r[6] == "true"));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn dzeros_at_smallest_range() {
    // The first zero of ζ′ is near 23.3.
    let dir = scratch("dz");
    let out = zetalab(&dir, &["dzeros", "--tmax", "20"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = read_rows(&read(&dir, "zeros_prime.csv"));
    assert_eq!(header, ["k", "beta", "gamma", "residual"]);
    assert!(rows.is_empty());
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn empty_a_list_is_a_notice() {
    let dir = scratch("empty-a");
    let file = dir.join("run.cfg");
    fs::write(&file, "tmax = 50\na =\n").unwrap();
    let out = zetalab(&dir, &["meanvalue", "--config", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("empty"));
    let (_, rows) = read_rows(&read(&dir, "meanvalue.csv"));
    assert!(rows.is_empty());
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn dzeros_count_to_100() {
    let dir = scratch("dz100");
    let out = zetalab(&dir, &["dzeros", "--tmax", "100"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (_, rows) = read_rows(&read(&dir, "zeros_prime.csv"));
    let main = 100.0 / (2.0 * std::f64::consts::PI) * (100.0 / (4.0 * std::f64::consts::PI * std::f64::consts::E)).ln();
    assert!((rows.len() as f64 - main).abs() <= 2.0 * 100f64.ln(), "{} vs {main}", rows.len());
    assert!(floats(&rows, 1).iter().all(|&b| b > 0.5));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_catches_a_tampered_table() {
    let dir = scratch("tamper");
    assert!(zetalab(&dir, &["zeros", "--tmax", "400"]).status.success());
    let good = dir.join("good.csv");
    fs::copy(dir.join("out").join("zeros.csv"), &good).unwrap();
    let out = zetalab(&dir, &["verify", "--tmax", "390", "--table", good.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    // Same count, so still "certified", but one ordinate moved.
    let text = fs::read_to_string(&good).unwrap();
    let bad = dir.join("bad.csv");
    fs::write(&bad, text.replacen("\n29,98.83119", "\n29,98.93119", 1)).unwrap();
    assert_ne!(fs::read_to_string(&bad).unwrap(), text);
    let out = zetalab(&dir, &["verify", "--tmax", "390", "--table", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let report = read(&dir, "verify.csv");
    assert!(report.lines().any(|l| l.contains("identity") && l.ends_with("FAIL")), "{report}");
    fs::remove_dir_all(&dir).unwrap();
}
