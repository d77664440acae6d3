//! Command-line front end.
//!
//! Exit codes: 0 when the requested check passes, 1 for a verified
//! mathematical failure (a row that does not match), 2 for usage, I/O and
//! parse errors. Output is assembled in full before anything is written, so
//! a failing invocation prints nothing to stdout.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufReader, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::model::ModelSpec;
use crate::search::{default_family, run_search, search_records, search_table, SearchFamily};
use crate::sequences::{count_by_gap, gap_count_formula, SequenceSpace, MAX_ENUMERATION_LENGTH};
use crate::table::{Table, TableFormat};
use crate::triangle::{embedded_half_triangle, ingest_bfile, CoefficientTriangle, RowRule};
use crate::verify::{obstruction_reports, obstruction_table, verdict_table, verify_rows, yes_no};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "gapseq", version, about = "Gap-constrained binary sequences against coefficient triangles")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Largest sequence length any command may enumerate (at most 30).
    #[arg(long, global = true, default_value_t = MAX_ENUMERATION_LENGTH)]
    pub cap: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Tsv,
}

impl From<Format> for TableFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Table => TableFormat::Aligned,
            Format::Tsv => TableFormat::Tsv,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every sequence of length n, with gap statistics and, given a
    /// model, its validity and type.
    Enumerate {
        #[arg(short = 'n')]
        n: usize,
        /// `canonical` or a model spec such as "gap<=1; type=parity-paper; bcount=*".
        #[arg(long, value_parser = parse_model)]
        model: Option<ModelSpec>,
        /// Only list sequences the model accepts.
        #[arg(long, requires = "model")]
        valid_only: bool,
    },
    /// Gap distribution of all length-n sequences and the model's histogram.
    Stats {
        #[arg(short = 'n')]
        n: usize,
        #[arg(long, value_parser = parse_model, default_value = "canonical")]
        model: ModelSpec,
    },
    /// Compare a model's type histograms against triangle rows.
    Verify {
        #[arg(long, value_parser = parse_model, default_value = "canonical")]
        model: ModelSpec,
        #[command(flatten)]
        source: TriangleSource,
        #[arg(long, value_parser = parse_rows, default_value = "1..9")]
        rows: RangeInclusive<usize>,
        /// Also write one record per row to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Type-count obstruction reports: types provided vs types required.
    Obstruct {
        #[arg(long, value_parser = parse_model, default_value = "canonical")]
        model: ModelSpec,
        #[command(flatten)]
        source: TriangleSource,
        #[arg(long, value_parser = parse_rows, default_value = "1..9")]
        rows: RangeInclusive<usize>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Evaluate every model of a family and rank them by matched rows.
    Search {
        #[arg(long, value_enum, default_value_t = FamilyName::Default)]
        family: FamilyName,
        #[command(flatten)]
        source: TriangleSource,
        #[arg(long, value_parser = parse_rows, default_value = "1..9")]
        rows: RangeInclusive<usize>,
        #[arg(long, default_value_t = 20)]
        top: usize,
        /// Also write the full ranking, one record per candidate.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Convert a b-file into the native triangle format.
    Ingest {
        #[arg(long)]
        bfile: PathBuf,
        #[arg(long, value_parser = parse_row_rule)]
        row_rule: RowRule,
        /// Order label stored with the triangle.
        #[arg(long, default_value = "unknown")]
        label: String,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Default,
}

impl FamilyName {
    fn family(self) -> SearchFamily {
        match self {
            FamilyName::Default => default_family(),
        }
    }
}

/// Where the target triangle comes from.
#[derive(Debug, Args)]
pub struct TriangleSource {
    /// `embedded` or a path to a native triangle file.
    #[arg(long, default_value = "embedded", conflicts_with = "bfile")]
    pub triangle: String,
    /// Read the triangle from an OEIS b-file instead.
    #[arg(long, requires = "row_rule")]
    pub bfile: Option<PathBuf>,
    /// `floor(n/2)+1` or `explicit:l1,l2,...`
    #[arg(long, value_parser = parse_row_rule, requires = "bfile")]
    pub row_rule: Option<RowRule>,
}

impl TriangleSource {
    fn load(&self) -> Result<CoefficientTriangle, String> {
        if let Some(path) = &self.bfile {
            let rule = self.row_rule.as_ref().expect("clap enforces --row-rule");
            let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            return ingest_bfile(open(path)?, rule, &label).map_err(|e| located(path, e));
        }
        if self.triangle == "embedded" {
            return Ok(embedded_half_triangle());
        }
        let path = Path::new(&self.triangle);
        CoefficientTriangle::parse_native(open(path)?).map_err(|e| located(path, e))
    }
}

fn open(path: &Path) -> Result<BufReader<File>, String> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| format!("cannot open {}: {e}", path.display()))
}

fn located(path: &Path, e: Error) -> String {
    format!("{}: {e}", path.display())
}

fn parse_model(s: &str) -> Result<ModelSpec, String> {
    if s.trim() == "canonical" {
        return Ok(ModelSpec::canonical());
    }
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rows(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad row {a:?}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad row {b:?}"))?;
    if a == 0 || a > b {
        return Err(format!("row range {a}..{b} must satisfy 1 <= a <= b"));
    }
    Ok(a..=b)
}

fn parse_row_rule(s: &str) -> Result<RowRule, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// What a subcommand produced: stdout text, an optional report file, and
/// the exit status.
struct Outcome {
    stdout: String,
    report: Option<(PathBuf, String)>,
    status: i32,
}

impl Outcome {
    fn pass(stdout: String) -> Self {
        Outcome { stdout, report: None, status: EXIT_PASS }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{rendered}");
                EXIT_PASS
            };
        }
    };
    match execute(&config) {
        Ok(outcome) => {
            if let Some((path, text)) = &outcome.report {
                if let Err(e) = fs::write(path, text) {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            }
            if let Err(e) = stdout.write_all(outcome.stdout.as_bytes()) {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_USAGE;
            }
            outcome.status
        }
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn check_n(n: usize, cap: usize) -> Result<(), String> {
    if n == 0 || n > cap {
        return Err(format!("n={n} is outside 1..={cap}"));
    }
    Ok(())
}

fn execute(config: &CliConfig) -> Result<Outcome, String> {
    let cap = config.cap;
    if cap == 0 || cap > MAX_ENUMERATION_LENGTH {
        return Err(format!("--cap must be between 1 and {MAX_ENUMERATION_LENGTH}"));
    }
    let format = TableFormat::from(config.format);

    match &config.command {
        Command::Enumerate { n, model, valid_only } => {
            check_n(*n, cap)?;
            Ok(Outcome::pass(enumerate_listing(*n, model.as_ref(), *valid_only, format)?))
        }
        Command::Stats { n, model } => {
            check_n(*n, cap)?;
            Ok(Outcome::pass(stats_report(*n, model, format)?))
        }
        Command::Verify { model, source, rows, report } => {
            check_n(*rows.end(), cap)?;
            let triangle = source.load()?;
            let verdicts = verify_rows(model, &triangle, rows.clone()).map_err(|e| e.to_string())?;
            let all_match = verdicts.iter().all(|v| v.matches);
            let mut out = String::new();
            if format == TableFormat::Aligned {
                out.push_str(&format!("model: {model}\ntriangle: order {}\n\n", triangle.order_label()));
            }
            out.push_str(&verdict_table(&verdicts, format));
            if format == TableFormat::Aligned {
                let matched = verdicts.iter().filter(|v| v.matches).count();
                out.push_str(&format!("\n{matched}/{} rows match\n", verdicts.len()));
            }
            let records: String = verdicts.iter().map(|v| v.record() + "\n").collect();
            Ok(Outcome {
                stdout: out,
                report: report.clone().map(|p| (p, records)),
                status: if all_match { EXIT_PASS } else { EXIT_FAILURE },
            })
        }
        Command::Obstruct { model, source, rows, report } => {
            check_n(*rows.end(), cap)?;
            let triangle = source.load()?;
            let reports = obstruction_reports(model, &triangle, rows.clone()).map_err(|e| e.to_string())?;
            let mut out = String::new();
            if format == TableFormat::Aligned {
                out.push_str(&format!("model: {model}\ntriangle: order {}\n\n", triangle.order_label()));
            }
            out.push_str(&obstruction_table(&reports, format));
            if format == TableFormat::Aligned {
                let obstructed = reports.iter().filter(|r| r.obstructed).count();
                out.push_str(&format!("\n{obstructed}/{} rows obstructed\n", reports.len()));
            }
            let records: String = reports.iter().map(|r| r.record() + "\n").collect();
            Ok(Outcome { stdout: out, report: report.clone().map(|p| (p, records)), status: EXIT_PASS })
        }
        Command::Search { family, source, rows, top, report } => {
            check_n(*rows.end(), cap)?;
            let triangle = source.load()?;
            let family = family.family();
            let results = run_search(&family, &triangle, rows.clone()).map_err(|e| e.to_string())?;
            let mut out = String::new();
            if format == TableFormat::Aligned {
                let best = results.first().map_or(0, |r| r.score);
                let at_best = results.iter().filter(|r| r.score == best).count();
                out.push_str(&format!(
                    "family size: {} candidates\nrows: {}..{}\nbest score: {best} ({at_best} candidates)\n\n",
                    family.size(),
                    rows.start(),
                    rows.end()
                ));
            }
            out.push_str(&search_table(&results, *top, format));
            Ok(Outcome {
                stdout: out,
                report: report.clone().map(|p| (p, search_records(&results))),
                status: EXIT_PASS,
            })
        }
        Command::Ingest { bfile, row_rule, label, out } => {
            let triangle = ingest_bfile(open(bfile)?, row_rule, label).map_err(|e| located(bfile, e))?;
            let text = triangle.to_native_string();
            Ok(match out {
                Some(path) => Outcome {
                    stdout: String::new(),
                    report: Some((path.clone(), text)),
                    status: EXIT_PASS,
                },
                None => Outcome::pass(text),
            })
        }
    }
}

fn enumerate_listing(n: usize, model: Option<&ModelSpec>, valid_only: bool, format: TableFormat) -> Result<String, String> {
    let space = SequenceSpace::new(n).map_err(|e| e.to_string())?;
    let mut header = vec!["Sequence".to_string(), "Has B?".into(), "first_B".into(), "last_B".into(), "gap".into()];
    if let Some(m) = model {
        let bound = m.gap_threshold.resolve(n).map_or_else(|| "inf".to_string(), |b| b.to_string());
        header.extend([format!("gap<={bound}?"), "k".into(), "Valid?".into()]);
    }
    let mut table = Table::new(header);
    for seq in space.iter() {
        let valid = model.map(|m| m.is_valid(&seq));
        if valid_only && valid != Some(true) {
            continue;
        }
        let stats = seq.gap_statistics();
        let dash = || "--".to_string();
        let mut row = vec![
            seq.to_string(),
            yes_no(stats.is_some()).to_string(),
            stats.map_or_else(dash, |s| s.first_b.to_string()),
            stats.map_or_else(dash, |s| s.last_b.to_string()),
            stats.map_or_else(dash, |s| s.gap.to_string()),
        ];
        if let Some(m) = model {
            row.push(stats.map_or_else(dash, |s| yes_no(m.gap_threshold.admits(n, s.gap)).to_string()));
            row.push(m.raw_type(&seq).map_or_else(dash, |k| k.to_string()));
            row.push(yes_no(valid == Some(true)).to_string());
        }
        table.push(row);
    }
    Ok(table.render(format))
}

fn stats_report(n: usize, model: &ModelSpec, format: TableFormat) -> Result<String, String> {
    let counts = count_by_gap(n).map_err(|e| e.to_string())?;
    let mut table = Table::new(["gap", "count", "closed form"]);
    for (&g, &c) in &counts {
        table.push([g.to_string(), c.to_string(), gap_count_formula(n, g).to_string()]);
    }
    let with_b: u64 = counts.values().sum();
    let histogram = model.type_histogram(n).map_err(|e| e.to_string())?;
    let mut out = String::new();
    if format == TableFormat::Aligned {
        out.push_str(&format!("n={n}\n\n"));
    }
    out.push_str(&table.render(format));
    if format == TableFormat::Aligned {
        out.push_str(&format!(
            "\nsequences with a B: {with_b}\nmodel: {model}\nvalid: {}\ntypes: {}\n",
            histogram.total(),
            histogram
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("gapseq").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn rows_flag() {
        assert_eq!(parse_rows("1..9"), Ok(1..=9));
        assert_eq!(parse_rows("4..4"), Ok(4..=4));
        assert!(parse_rows("0..3").is_err());
        assert!(parse_rows("5..3").is_err());
        assert!(parse_rows("3").is_err());
    }

    #[test]
    fn usage_errors_exit_two_without_stdout() {
        for args in [
            &["enumerate", "-n", "0"][..],
            &["enumerate", "-n", "31"],
            &["enumerate", "-n", "12", "--cap", "10"],
            &["enumerate", "-n", "3", "--cap", "31"],
            &["verify", "--model", "nonsense"],
            &["verify", "--triangle", "/nonexistent/triangle.txt"],
            &["verify", "--bfile", "x.txt"],
            &["frobnicate"],
        ] {
            let (code, out, err) = run_str(args);
            assert_eq!(code, EXIT_USAGE, "{args:?}");
            assert!(out.is_empty(), "{args:?} printed {out:?}");
            assert!(!err.is_empty(), "{args:?}");
        }
    }

    #[test]
    fn verify_exit_codes() {
        assert_eq!(run_str(&["verify", "--rows", "1..3"]).0, EXIT_PASS);
        let (code, out, _) = run_str(&["verify", "--rows", "1..4"]);
        assert_eq!(code, EXIT_FAILURE);
        assert!(out.contains("k=2: 4 vs 12; k=3: absent vs 4"));
    }

    #[test]
    fn enumerate_valid_only() {
        let (code, out, _) = run_str(&["enumerate", "-n", "3", "--model", "canonical", "--valid-only", "--format", "tsv"]);
        assert_eq!(code, EXIT_PASS);
        assert_eq!(out.lines().count(), 1 + 5);
    }
}
