//! End-to-end CLI checks: build, count, bench and stats plus exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn fmb(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fmb"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn build_count_stats_bench_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    std::fs::write(dir.join("text.txt"), b"banana").unwrap();

    let out = fmb(
        &[
            "build",
            "--input",
            "text.txt",
            "--variant",
            "superlinear",
            "--scheme",
            "pow2",
            "--output",
            "banana.fmb",
        ],
        dir,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("bytes per symbol"));

    let out = fmb(&["count", "--index", "banana.fmb", "--pattern", "ana"], dir);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "2");

    let out = fmb(
        &["count", "--index", "banana.fmb", "--pattern", "ana", "--verbose"],
        dir,
    );
    assert_eq!(stdout(&out).trim(), "2 steps=2 range=[3,4]");

    std::fs::write(dir.join("patterns.txt"), b"ana\nxyz\nbanana\n").unwrap();
    let out = fmb(
        &["count", "--index", "banana.fmb", "--pattern-file", "patterns.txt"],
        dir,
    );
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines, vec!["2", "0", "1"]);

    let out = fmb(
        &[
            "bench",
            "--index",
            "banana.fmb",
            "--lengths",
            "2,3,400",
            "--queries",
            "1",
            "--seed",
            "9",
        ],
        dir,
    );
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "variant,scheme,q,p,m,queries,total_ns,ns_per_char,avg_steps,matched"
    );
    assert_eq!(lines.len(), 3); // m=400 skipped with a warning
    assert!(String::from_utf8_lossy(&out.stderr).contains("skipping m=400"));
}

#[test]
fn linear_build_reports_gap_keys() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    std::fs::write(dir.join("text.txt"), b"mississippi").unwrap();

    let out = fmb(
        &[
            "build",
            "--input",
            "text.txt",
            "--variant",
            "linear",
            "--q",
            "4",
            "--p",
            "2",
            "--output",
            "m.fmb",
        ],
        dir,
    );
    assert!(out.status.success());
    let report = stdout(&out);
    // 4 unigrams + 1 gap key.
    assert!(report.contains("keys:             5"), "{report}");
    assert!(report.contains("avg minimizer gap: 3.00"), "{report}");

    let out = fmb(&["stats", "--index", "m.fmb"], dir);
    assert!(out.status.success());
    assert!(stdout(&out).contains("variant:          linear"));
}

#[test]
fn exit_codes_distinguish_usage_io_and_format_errors() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    std::fs::write(dir.join("text.txt"), b"mississippi").unwrap();

    // Usage: p > q.
    let out = fmb(
        &[
            "build", "--input", "text.txt", "--variant", "linear", "--q", "2", "--p", "4",
            "--output", "x.fmb",
        ],
        dir,
    );
    assert_eq!(out.status.code(), Some(1));

    // Usage: max_len not a scheme value.
    let out = fmb(
        &[
            "build", "--input", "text.txt", "--variant", "superlinear", "--scheme", "pow2",
            "--max-len", "20", "--output", "x.fmb",
        ],
        dir,
    );
    assert_eq!(out.status.code(), Some(1));

    // I/O: missing input file.
    let out = fmb(
        &[
            "build", "--input", "nope.txt", "--variant", "superlinear", "--output", "x.fmb",
        ],
        dir,
    );
    assert_eq!(out.status.code(), Some(2));

    // Format: not an index file.
    std::fs::write(dir.join("junk.fmb"), b"XXXXjunkjunkjunk").unwrap();
    let out = fmb(&["count", "--index", "junk.fmb", "--pattern", "a"], dir);
    assert_eq!(out.status.code(), Some(3));

    // Usage: unknown flag.
    let out = fmb(&["count", "--bogus"], dir);
    assert_eq!(out.status.code(), Some(1));
}
