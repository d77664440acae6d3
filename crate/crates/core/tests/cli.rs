use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn gapseq(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_gapseq"))
        .args(args)
        .output()
        .expect("failed to spawn gapseq")
}

/// Runs `args` and compares stdout with `tests/golden/<name>`. With
/// `GAPSEQ_BLESS` set the golden file is rewritten instead.
fn assert_golden(name: &str, args: &[&str], expected_code: i32) {
    let output = gapseq(args);
    assert_eq!(
        output.status.code(),
        Some(expected_code),
        "{args:?}\nstderr:\n{}",
        String::from_utf8_lossy(&output.stderr)
    );
    let path = root().join("tests/golden").join(name);
    if std::env::var_os("GAPSEQ_BLESS").is_some() {
        fs::write(&path, &output.stdout).unwrap();
    }
    let expected = fs::read(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&expected),
        "stdout of {args:?} differs from {name}"
    );
}

#[test]
fn enumerate_n2_reproduces_table() {
    let output = gapseq(&["enumerate", "-n", "2", "--model", "canonical"]);
    assert!(output.status.success());
    assert_eq!(
        String::from_utf8(output.stdout).unwrap(),
        "\
Sequence  Has B?  first_B  last_B  gap  gap<=1?  k   Valid?
--------  ------  -------  ------  ---  -------  --  ------
RR        No      --       --      --   --       --  No
RB        Yes     2        2       0    Yes      2   Yes
BR        Yes     1        1       0    Yes      2   Yes
BB        Yes     1        2       1    Yes      1   Yes
"
    );
}

#[test]
fn enumerate_n3_reproduces_table() {
    let output = gapseq(&["enumerate", "-n", "3", "--model", "canonical", "--format", "tsv"]);
    assert!(output.status.success());
    assert_eq!(
        String::from_utf8(output.stdout).unwrap(),
        "\
Sequence\tHas B?\tfirst_B\tlast_B\tgap\tgap<=1?\tk\tValid?
RRR\tNo\t--\t--\t--\t--\t--\tNo
RRB\tYes\t3\t3\t0\tYes\t1\tYes
RBR\tYes\t2\t2\t0\tYes\t1\tYes
RBB\tYes\t2\t3\t1\tYes\t2\tYes
BRR\tYes\t1\t1\t0\tYes\t1\tYes
BRB\tYes\t1\t3\t2\tNo\t3\tNo
BBR\tYes\t1\t2\t1\tYes\t2\tYes
BBB\tYes\t1\t3\t2\tNo\t3\tNo
"
    );
}

#[test]
fn enumerate_n4_golden() {
    assert_golden("enumerate_n4_canonical.txt", &["enumerate", "-n", "4", "--model", "canonical"], 0);
}

#[test]
fn verify_golden() {
    assert_golden("verify_rows_1_9.txt", &["verify", "--rows", "1..9"], 1);
    assert_golden("verify_rows_1_3.tsv", &["verify", "--rows", "1..3", "--format", "tsv"], 0);
}

#[test]
fn obstruct_golden() {
    assert_golden("obstruct_rows_4_9.txt", &["obstruct", "--rows", "4..9"], 0);
}

#[test]
fn search_golden() {
    assert_golden(
        "search_default_rows_1_9_top20.txt",
        &["search", "--family", "default", "--triangle", "embedded", "--rows", "1..9", "--top", "20"],
        0,
    );
}

#[test]
fn stats_golden() {
    assert_golden("stats_n6.txt", &["stats", "-n", "6"], 0);
}

#[test]
fn verify_writes_report_records() {
    let dir = std::env::temp_dir().join(format!("gapseq-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let report = dir.join("verify.txt");
    let output = gapseq(&["verify", "--rows", "1..4", "--report", report.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    assert_eq!(
        fs::read_to_string(&report).unwrap(),
        "\
row=1 match=true predicted=1:1 target=1
row=2 match=true predicted=1:1,2:2 target=1,2
row=3 match=true predicted=1:3,2:2 target=3,2
row=4 match=false predicted=1:3,2:4 target=3,12,4
"
    );
}

#[test]
fn triangle_sources_agree() {
    let dir = std::env::temp_dir().join(format!("gapseq-src-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let bfile = root().join("tests/data/a223168_rows1_9.bfile");
    let native = dir.join("half.txt");

    let ingest = gapseq(&[
        "ingest",
        "--bfile",
        bfile.to_str().unwrap(),
        "--row-rule",
        "floor(n/2)+1",
        "--label",
        "1/2",
        "--out",
        native.to_str().unwrap(),
    ]);
    assert!(ingest.status.success());
    assert!(ingest.stdout.is_empty());

    let embedded = gapseq(&["verify", "--rows", "1..9", "--format", "tsv"]);
    let from_native = gapseq(&["verify", "--rows", "1..9", "--format", "tsv", "--triangle", native.to_str().unwrap()]);
    let from_bfile = gapseq(&[
        "verify",
        "--rows",
        "1..9",
        "--format",
        "tsv",
        "--bfile",
        bfile.to_str().unwrap(),
        "--row-rule",
        "floor(n/2)+1",
    ]);
    assert_eq!(embedded.stdout, from_native.stdout);
    assert_eq!(embedded.stdout, from_bfile.stdout);
    assert_eq!(from_bfile.status.code(), Some(1));
}

#[test]
fn operational_errors_exit_two() {
    let missing_row = gapseq(&["verify", "--rows", "1..10"]);
    assert_eq!(missing_row.status.code(), Some(2));
    assert!(missing_row.stdout.is_empty());
    assert!(String::from_utf8_lossy(&missing_row.stderr).contains("no row 10"));

    let dir = std::env::temp_dir().join(format!("gapseq-bad-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.bfile");
    fs::write(&bad, "1 1\n2 1\n3 2\n4 3\n5 2\n6 3\n7 abc\n").unwrap();
    let out = gapseq(&["ingest", "--bfile", bad.to_str().unwrap(), "--row-rule", "floor(n/2)+1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 7"));

    let usage = gapseq(&["enumerate", "-n", "0"]);
    assert_eq!(usage.status.code(), Some(2));
    assert!(usage.stdout.is_empty());
}
