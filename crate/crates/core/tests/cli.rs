use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use eqbif::report::{Report, ReportBody};

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn eqbif(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqbif"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn structured(o: &Output) -> Report {
    Report::parse(&String::from_utf8_lossy(&o.stdout)).expect("structured report")
}

#[test]
fn nontrivial_kernel_bifurcates() {
    let cfg = configs().join("disk_nontrivial.json");
    let o = eqbif(&[
        "analyze",
        "--config",
        cfg.to_str().unwrap(),
        "--format",
        "structured",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let ReportBody::Analyze { verdicts, .. } = structured(&o).body else {
        panic!("wrong report kind")
    };
    assert_eq!(verdicts.len(), 1);
    assert_eq!(format!("{:?}", verdicts[0].glob), "Bifurcates");
}

#[test]
fn trivial_even_kernel_is_inconclusive() {
    let cfg = configs().join("disk_trivial_even.json");
    let o = eqbif(&[
        "analyze",
        "--config",
        cfg.to_str().unwrap(),
        "--format",
        "structured",
    ]);
    assert_eq!(code(&o), 0);
    let ReportBody::Analyze { verdicts, .. } = structured(&o).body else {
        panic!("wrong report kind")
    };
    assert!(!verdicts.is_empty());
    assert!(verdicts
        .iter()
        .all(|v| format!("{:?}", v.glob) == "Inconclusive"));
}

#[test]
fn ball_config_loads_relative_spectrum() {
    let cfg = configs().join("ball3.json");
    let o = eqbif(&[
        "analyze",
        "--config",
        cfg.to_str().unwrap(),
        "--format",
        "structured",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn empty_window_gives_empty_list() {
    let cfg = configs().join("disk_nontrivial.json");
    let o = eqbif(&[
        "lambda-set",
        "--config",
        cfg.to_str().unwrap(),
        "--window",
        "0.01",
        "0.02",
        "--format",
        "structured",
    ]);
    assert_eq!(code(&o), 0);
    let ReportBody::LambdaSet { lambda, .. } = structured(&o).body else {
        panic!("wrong report kind")
    };
    assert!(lambda.is_empty());
}

#[test]
fn exit_codes() {
    let cfg = configs().join("ball3.json");
    // window needs eigenvalues beyond what the supplied spectrum covers
    let o = eqbif(&[
        "analyze",
        "--config",
        cfg.to_str().unwrap(),
        "--window",
        "0",
        "100",
    ]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("InsufficientSpectrum"));

    let o = eqbif(&[
        "lambda-set",
        "--config",
        cfg.to_str().unwrap(),
        "--window",
        "3",
        "1",
    ]);
    assert_eq!(code(&o), 1);

    let o = eqbif(&["no-such-command"]);
    assert_eq!(code(&o), 1);

    let o = eqbif(&[
        "bif",
        "--config",
        "/nonexistent/config.json",
        "--lambda",
        "1",
    ]);
    assert_eq!(code(&o), 1);

    let o = eqbif(&["--help"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn structured_output_is_deterministic_with_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("roots.json");
    let cache_s = cache.to_str().unwrap();
    let args = [
        "spectrum",
        "--max-eigenvalue",
        "80",
        "--format",
        "structured",
        "--cache",
        cache_s,
    ];

    let cold = eqbif(&args);
    assert_eq!(code(&cold), 0);
    assert!(cache.exists());
    let warm = eqbif(&args);
    assert_eq!(code(&warm), 0);
    assert_eq!(cold.stdout, warm.stdout);
    assert!(warm.stderr.is_empty());

    let uncached = eqbif(&[
        "spectrum",
        "--max-eigenvalue",
        "80",
        "--format",
        "structured",
    ]);
    assert_eq!(cold.stdout, uncached.stdout);

    // a different root tolerance invalidates the stored roots
    let stale = eqbif(&[
        "spectrum",
        "--max-eigenvalue",
        "80",
        "--format",
        "structured",
        "--cache",
        cache_s,
        "--tol",
        "1e-11",
    ]);
    assert_eq!(code(&stale), 0);
    assert!(String::from_utf8_lossy(&stale.stderr).starts_with("notice:"));

    std::fs::write(&cache, "not a cache").unwrap();
    let corrupt = eqbif(&args);
    assert_eq!(code(&corrupt), 0);
    assert_eq!(corrupt.stdout, cold.stdout);
    assert!(!corrupt.stderr.is_empty());
}

#[test]
fn a9_bif_table_output() {
    let cfg = configs().join("disk_a9.toml");
    let o = eqbif(&[
        "bif",
        "--config",
        cfg.to_str().unwrap(),
        "--lambda",
        "0",
        "--format",
        "structured",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let ReportBody::Bif { bif, .. } = structured(&o).body else {
        panic!("wrong report kind")
    };
    // p1 = 3, mu = 1: q1 = 2, q2 = 1 have different parity
    assert!(!bif.is_zero());

    let o = eqbif(&["analyze", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("Verdicts on"));
}

#[test]
fn morse_degree_with_table() {
    let c = configs();
    let o = eqbif(&[
        "morse-degree",
        "--orbits",
        c.join("orbits.json").to_str().unwrap(),
        "--table",
        c.join("class_table.json").to_str().unwrap(),
        "--format",
        "structured",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let ReportBody::MorseDegree { degree, lifted, .. } = structured(&o).body else {
        panic!("wrong report kind")
    };
    assert!(!degree.is_empty());
    assert_eq!(
        lifted.unwrap().values().sum::<i64>(),
        degree.values().sum::<i64>()
    );
}
