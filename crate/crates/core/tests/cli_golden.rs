use std::path::{Path, PathBuf};
use std::process::Command;

use fuchsian_codes::cli::execute;

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run(args: &[&str]) -> String {
    let mut argv = vec!["fuchsian"];
    argv.extend_from_slice(args);
    match execute(argv) {
        Ok(out) => out.text,
        Err(f) => panic!("{args:?}: {}", f.message()),
    }
}

/// Compares against `tests/golden/<name>`; UPDATE_GOLDEN=1 rewrites the file.
fn check(name: &str, args: &[&str]) {
    let got = run(args);
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(got, want, "{name} differs from golden output");
}

#[test]
fn construct_golden() {
    check(
        "construct_d6_q16.csv",
        &["construct", "--group", "6", "--q", "16"],
    );
    check(
        "construct_d15_q8.csv",
        &["construct", "--group", "15", "--q", "8"],
    );
}

#[test]
fn decode_golden() {
    let input = golden_dir().join("samples.csv");
    check(
        "decode_d6_q4.csv",
        &[
            "decode",
            "--group",
            "6",
            "--q",
            "4",
            "--input",
            input.to_str().unwrap(),
        ],
    );
}

#[test]
fn complexity_golden() {
    check(
        "complexity_d6.csv",
        &[
            "complexity",
            "--group",
            "6",
            "--sizes",
            "4,8,16,64,256,512,1024",
        ],
    );
}

#[test]
fn units_golden() {
    check("units_table.csv", &["units", "table"]);
    check("units_phi.csv", &["units", "phi", "3", "2", "1", "1"]);
    check(
        "units_psi.csv",
        &[
            "units", "psi", "--a", "3", "--b", "-1", "--q", "11", "--unit", "10,3", "--pure",
            "2,1,0", "--m", "2",
        ],
    );
}

#[test]
fn sweep_golden() {
    check(
        "sweep_d6_q4.csv",
        &[
            "sweep", "--group", "6", "--q", "4", "--snr", "0:5:20", "--trials", "20000", "--seed",
            "7",
        ],
    );
}

#[test]
fn catalog_golden() {
    check("catalog_d6.json", &["catalog", "--group", "6"]);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = std::env::temp_dir().join(format!("fuchsian-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.conf");
    std::fs::write(&cfg, "group = 6\nq = 8\n").unwrap();
    let c = cfg.to_str().unwrap();
    assert_eq!(run(&["--config", c, "construct"]).lines().count(), 9);
    assert_eq!(
        run(&["--config", c, "construct", "--q", "16"])
            .lines()
            .count(),
        17
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes_and_out_file() {
    let bin = env!("CARGO_BIN_EXE_fuchsian");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let o = status(&["construct", "--group", "6", "--q", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(o.stdout).unwrap(),
        run(&["construct", "--group", "6", "--q", "4"])
    );
    let o = status(&["construct", "--group", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(String::from_utf8(o.stderr).unwrap().lines().count(), 1);
    assert_eq!(status(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        status(&["units", "phi", "5", "1", "0", "1"]).status.code(),
        Some(1)
    );

    let out = std::env::temp_dir().join(format!("fuchsian-out-{}.csv", std::process::id()));
    let o = status(&[
        "--out",
        out.to_str().unwrap(),
        "units",
        "fundamental-unit",
        "31",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&out).unwrap(),
        "p,x,y,norm\n31,1520,273,1\n"
    );
    std::fs::remove_file(&out).unwrap();
}
