use std::process::{Command, Output};

fn brickforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brickforge")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Rank-2 words of length `l` with at least `m` maximal runs, i.e. containing a reduced word of w₀.
fn spherical_rank2(l: u64, m: u64) -> u64 {
    (m..=l).map(|runs| 2 * binomial(l - 1, runs - 1)).sum()
}

#[test]
fn passing_run_exits_zero() {
    let out = brickforge(&["tables", "--type", "B2", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("B2 12 tables/root pass"), "{text}");
    assert!(text.ends_with("4/4 checks passed\n"), "{text}");
}

#[test]
fn bad_arguments_exit_two() {
    for args in [
        vec!["tables", "--type", "Z3"],
        vec!["tables", "--max-rank", "9"],
        vec!["tables", "--type", "A3", "--coxeter", "1,2"],
        vec!["plot-data", "--type", "A3"],
        vec!["frobnicate"],
        vec!["verify", "--checks", "nonsense"],
    ] {
        assert_eq!(brickforge(&args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(brickforge(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_report_parses() {
    let out = brickforge(&["verify-newton", "--type", "A2", "--all-coxeter", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let records: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let records = records.as_array().unwrap();
    assert_eq!(records.len(), 2);
    for r in records {
        assert_eq!(r["type"], "A2");
        assert_eq!(r["check"], "newton");
        assert_eq!(r["status"], "pass");
    }
}

#[test]
fn reports_are_reproducible_without_timing() {
    let args = ["verify", "--type", "B2,A2", "--all-coxeter", "--no-timing", "--checks", "tropical,properties"];
    let (a, b) = (brickforge(&args), brickforge(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let single = brickforge(&[&args[..], &["--threads", "1"]].concat());
    assert_eq!(a.stdout, single.stdout);
}

#[test]
fn fixture_directory_overrides_and_diffs_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let table = "I\t1\t2\t3\t4\t5\t6\n12\t2-2\t01\t2-2\t01\t2-2\t01\n";
    std::fs::write(dir.path().join("B2_12_root.tsv"), table).unwrap();
    let fixtures = dir.path().to_str().unwrap();
    let out = brickforge(&["tables", "--type", "B2", "--fixtures", fixtures, "--no-timing"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("B2 12 tables/root fail"), "{text}");
    assert!(text.contains("B2 12 tables/weight pass"), "{text}");
}

#[test]
fn stale_erratum_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let errata = "row\tcolumn\tprinted\tcorrected\treason\n123\t1\t9-9-9\t1-100\tnot in the table\n";
    std::fs::write(dir.path().join("A3_123_root.errata.tsv"), errata).unwrap();
    let out = brickforge(&["tables", "--type", "A3", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn counterexamples_pass() {
    let out = brickforge(&["counterexamples", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("B2 1212121 counterexamples pass"), "{text}");
    assert!(text.contains("B2 212212 counterexamples pass"), "{text}");
}

#[test]
fn scan_finds_only_cluster_words() {
    let b2_words: u64 = (4..=6).map(|l| 1u64 << l).sum();
    let b2_spherical: u64 = (4..=6).map(|l| spherical_rank2(l, 4)).sum();
    let out = brickforge(&["scan", "--type", "B2", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let expected =
        format!("{b2_words} words, {b2_spherical} spherical, 2 root-independent with full support, 2 cluster words");
    assert!(stdout(&out).contains(&expected), "{}", stdout(&out));

    let a2_words: u64 = (3..=5).map(|l| 1u64 << l).sum();
    let a2_spherical: u64 = (3..=5).map(|l| spherical_rank2(l, 3)).sum();
    let out = brickforge(&["scan", "--type", "A2", "--max-length", "5", "--no-timing"]);
    let expected =
        format!("{a2_words} words, {a2_spherical} spherical, 2 root-independent with full support, 2 cluster words");
    assert!(stdout(&out).contains(&expected), "{}", stdout(&out));
}

#[test]
fn exhausted_budget_skips_and_fails() {
    let out = brickforge(&["verify-newton", "--type", "A2", "--budget-seconds", "0", "--no-timing"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("newton skipped"));
}

#[test]
fn plot_data_defaults_to_b2() {
    let out = brickforge(&["plot-data", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("B2 12 plot pass"), "{text}");
}
