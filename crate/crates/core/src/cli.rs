//! Command-line front end. All output is assembled in memory so that the
//! binary and the tests share one code path.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or input
//! error.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::enumerate::{EnumerationReport, Family, Oracle, DEFAULT_CAP};
use crate::numeric::BigNat;
use crate::tables::{self, CountTriangle, TriangleKind, TriangleSet};
use crate::tree::{Label, OrderedTree};
use crate::verify::{run_suite, Suite, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    /// `index value` lines; triangles only
    Bfile,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    O,
    Z,
    F,
    R,
}

impl From<KindArg> for TriangleKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::O => TriangleKind::O,
            KindArg::Z => TriangleKind::Z,
            KindArg::F => TriangleKind::F,
            KindArg::R => TriangleKind::R,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Rowsum,
    Oracle,
    Shor,
    Ramanujan,
    Decomposition,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Rowsum => vec![Suite::RowSum],
            SuiteArg::Oracle => vec![Suite::Oracle],
            SuiteArg::Shor => vec![Suite::Shor],
            SuiteArg::Ramanujan => vec![Suite::Ramanujan],
            SuiteArg::Decomposition => vec![Suite::Decomposition],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "mdtrees",
    version,
    about = "Ordered labeled trees counted by maximal decreasing subtree size"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a count triangle (o, z, f or r).
    ///
    /// The bfile format numbers the entries row by row with a running index
    /// starting at 0, one "index value" pair per line.
    Table {
        kind: KindArg,
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: OutputFormat,
    },
    /// Print one entry of a count triangle.
    Value {
        kind: KindArg,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
    /// Show the maximal decreasing subtree of a tree such as "9(7(1(8,4)),3,6(2,10(0,5)))".
    Md { tree: String },
    /// Exhaustively enumerate a family and print its census.
    ///
    /// Families: O, Z, F, Decreasing, RootedUnordered. With --list the
    /// objects go to stdout one per line and the census goes to stderr.
    Enumerate {
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        list: bool,
        /// Raise the size limit (default 7).
        #[arg(long)]
        max_cap: Option<usize>,
        #[arg(long, value_enum, default_value = "plain")]
        format: OutputFormat,
    },
    /// Run verification suites; exits 1 when any check fails.
    Verify {
        #[arg(value_enum, conflicts_with = "suite_flag")]
        suite: Option<SuiteArg>,
        #[arg(long = "suite", value_enum)]
        suite_flag: Option<SuiteArg>,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long)]
        max_cap: Option<usize>,
        #[arg(long, value_enum, default_value = "plain")]
        format: OutputFormat,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code: EXIT_USAGE,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, |_| {})
}

/// Like [`run`], but lets the caller modify the triangles the verification
/// suites are checked against.
pub fn run_with<I, T>(args: I, tamper: impl Fn(&mut TriangleSet)) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_USAGE,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match cli.command {
        Command::Table {
            kind,
            max_n,
            format,
        } => cmd_table(kind.into(), max_n, format),
        Command::Value { kind, n, k } => cmd_value(kind.into(), n, k),
        Command::Md { tree } => cmd_md(&tree),
        Command::Enumerate {
            family,
            n,
            k,
            list,
            max_cap,
            format,
        } => {
            let oracle = Oracle::with_cap(max_cap.unwrap_or(DEFAULT_CAP));
            cmd_enumerate(&family, n, k, list, &oracle, format)
        }
        Command::Verify {
            suite,
            suite_flag,
            max_n,
            max_cap,
            format,
        } => {
            let Some(suite) = suite.or(suite_flag) else {
                return Outcome::usage(
                    "missing suite (rowsum, oracle, shor, ramanujan, decomposition or all)",
                );
            };
            let oracle = Oracle::with_cap(max_cap.unwrap_or(DEFAULT_CAP));
            cmd_verify(&suite.suites(), max_n, &oracle, format, tamper)
        }
    }
}

fn decimal_rows(t: &CountTriangle) -> Vec<Vec<String>> {
    t.rows()
        .map(|(_, r)| r.iter().map(BigNat::to_string).collect())
        .collect()
}

/// Renders a triangle in the requested format.
pub fn render_triangle(t: &CountTriangle, format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            out.push_str("n,k,value\n");
            for (n, k, v) in t.entries() {
                let _ = writeln!(out, "{n},{k},{v}");
            }
        }
        OutputFormat::Bfile => {
            for (i, (_, _, v)) in t.entries().enumerate() {
                let _ = writeln!(out, "{i} {v}");
            }
        }
        OutputFormat::Plain => {
            for row in decimal_rows(t) {
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
        OutputFormat::Json => {
            let v = json!({
                "kind": t.kind(),
                "max_n": t.max_n(),
                "rows": decimal_rows(t),
            });
            out = v.to_string();
            out.push('\n');
        }
    }
    out
}

fn cmd_table(kind: TriangleKind, max_n: usize, format: OutputFormat) -> Outcome {
    match tables::build_triangle(kind, max_n) {
        Ok(t) => Outcome::ok(render_triangle(&t, format)),
        Err(e) => Outcome::usage(e),
    }
}

fn cmd_value(kind: TriangleKind, n: u64, k: u64) -> Outcome {
    let value = match kind {
        TriangleKind::O => tables::o_count(n, k).map_err(|e| e.to_string()),
        TriangleKind::R if n == 0 => Err("r(n,k) is defined for n >= 1".to_string()),
        TriangleKind::R if k >= n => Err(format!("r({n},{k}) needs k < n")),
        TriangleKind::R => tables::r_count(n, k).map_err(|e| e.to_string()),
        _ if k > n => Err(format!("{kind}({n},{k}) needs k <= n")),
        TriangleKind::Z => Ok(tables::z_count(n, k as i64)),
        TriangleKind::F => Ok(tables::f_count(n, k)),
    };
    match value {
        Ok(v) => Outcome::ok(format!("{v}\n")),
        Err(e) => Outcome::usage(e),
    }
}

fn cmd_md(text: &str) -> Outcome {
    let tree: OrderedTree = match text.parse() {
        Ok(t) => t,
        Err(e) => return Outcome::usage(e),
    };
    let md = tree.md_subtree();
    let labels: Vec<String> = md.md_vertices.iter().map(Label::to_string).collect();
    let (z_part, _) = tree.split_unchecked();
    Outcome::ok(format!(
        "md={{{}}} k={}\nz={}\n",
        labels.join(","),
        md.md_edge_count,
        z_part
    ))
}

fn render_census(report: &EnumerationReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let census: serde_json::Map<String, serde_json::Value> = report
                .census
                .iter()
                .map(|(k, c)| (k.to_string(), json!(c.to_string())))
                .collect();
            let v = json!({
                "family": report.family.to_string(),
                "n": report.n,
                "census": census,
                "total": report.total.to_string(),
                "elapsed_ms": report.elapsed.as_millis() as u64,
            });
            format!("{v}\n")
        }
        OutputFormat::Csv => {
            let mut out = String::from("k,count\n");
            for (k, c) in &report.census {
                let _ = writeln!(out, "{k},{c}");
            }
            let _ = writeln!(out, "total,{}", report.total);
            out
        }
        _ => {
            let mut parts: Vec<String> = report
                .census
                .iter()
                .map(|(k, c)| format!("{k}:{c}"))
                .collect();
            parts.push(format!("total:{}", report.total));
            format!("{}\n", parts.join(" "))
        }
    }
}

fn list_family(
    family: Family,
    n: usize,
    k: Option<usize>,
    oracle: &Oracle,
) -> Result<String, String> {
    let mut out = String::new();
    let keep = |stat: usize| k.is_none_or(|k| k == stat);
    let err = |e: crate::enumerate::EnumerationError| e.to_string();
    match family {
        Family::O => {
            for t in oracle
                .ordered_trees(n)
                .map_err(err)?
                .filter(|t| keep(t.md_edge_count()))
            {
                let _ = writeln!(out, "{t}");
            }
        }
        Family::Z => {
            for t in oracle
                .ordered_trees(n)
                .map_err(err)?
                .filter(|t| t.z_shape().is_some_and(&keep))
            {
                let _ = writeln!(out, "{t}");
            }
        }
        Family::Decreasing => {
            for t in oracle
                .ordered_trees(n)
                .map_err(err)?
                .filter(OrderedTree::is_decreasing)
            {
                let _ = writeln!(out, "{t}");
            }
        }
        Family::F => {
            let ks: Vec<usize> = match k {
                Some(k) => vec![k],
                None => (0..=n).collect(),
            };
            for k in ks {
                for f in oracle.forests(n, k).map_err(err)? {
                    let _ = writeln!(out, "{f}");
                }
            }
        }
        Family::RootedUnordered => {
            for t in oracle
                .rooted_unordered(n)
                .map_err(err)?
                .filter(|t| keep(t.improper_edge_count()))
            {
                let _ = writeln!(out, "{t}");
            }
        }
    }
    Ok(out)
}

fn cmd_enumerate(
    family: &str,
    n: usize,
    k: Option<usize>,
    list: bool,
    oracle: &Oracle,
    format: OutputFormat,
) -> Outcome {
    if format == OutputFormat::Bfile {
        return Outcome::usage("bfile output applies only to triangles");
    }
    let family: Family = match family.parse() {
        Ok(f) => f,
        Err(e) => return Outcome::usage(e),
    };
    let report = match oracle.tabulate_family(family, n, k) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e),
    };
    let census = render_census(&report, format);
    if !list {
        return Outcome::ok(census);
    }
    match list_family(family, n, k, oracle) {
        Ok(objects) => Outcome {
            stdout: objects,
            stderr: census,
            code: EXIT_OK,
        },
        Err(e) => Outcome::usage(e),
    }
}

fn cmd_verify(
    suites: &[Suite],
    max_n: usize,
    oracle: &Oracle,
    format: OutputFormat,
    tamper: impl Fn(&mut TriangleSet),
) -> Outcome {
    if matches!(format, OutputFormat::Bfile | OutputFormat::Csv) {
        return Outcome::usage("verify supports --format plain or json");
    }
    if suites.iter().any(|s| s.enumerates()) && max_n > oracle.cap() {
        return Outcome::usage(format!(
            "max-n {max_n} exceeds the enumeration cap {}; pass --max-cap to raise it",
            oracle.cap()
        ));
    }
    let mut tables = TriangleSet::compute(max_n);
    tamper(&mut tables);

    let mut reports: Vec<VerificationReport> = Vec::with_capacity(suites.len());
    for &suite in suites {
        match run_suite(suite, &tables, oracle, max_n) {
            Ok(r) => reports.push(r),
            Err(e) => return Outcome::usage(e),
        }
    }
    let all_passed = reports.iter().all(|r| r.all_passed);
    let stdout = match format {
        OutputFormat::Json if reports.len() == 1 => format!("{}\n", reports[0].to_json_value()),
        OutputFormat::Json => {
            let list: Vec<_> = reports
                .iter()
                .map(VerificationReport::to_json_value)
                .collect();
            format!("{}\n", serde_json::Value::Array(list))
        }
        _ => {
            let mut out: String = reports.iter().map(VerificationReport::to_plain).collect();
            let _ = writeln!(
                out,
                "{}",
                if all_passed {
                    "VERIFIED"
                } else {
                    "VERIFICATION FAILED"
                }
            );
            out
        }
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: if all_passed { EXIT_OK } else { EXIT_FAILED },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("mdtrees").chain(args.iter().copied()))
    }

    #[test]
    fn table_formats() {
        let out = run_args(&["table", "o", "--max-n", "3", "--format", "csv"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.starts_with("n,k,value\n"));
        assert!(out.stdout.lines().any(|l| l == "3,0,46"));

        let out = run_args(&["table", "z", "--max-n", "2", "--format", "plain"]);
        assert_eq!(out.stdout, "1\n1 1\n2 4 3\n");

        let out = run_args(&["table", "o", "--max-n", "2", "--format", "bfile"]);
        assert_eq!(out.stdout, "0 1\n1 1\n2 1\n3 5\n4 4\n5 3\n");

        let out = run_args(&["table", "r", "--max-n", "2", "--format", "json"]);
        assert_eq!(
            out.stdout,
            "{\"kind\":\"r\",\"max_n\":2,\"rows\":[[\"1\"],[\"1\",\"1\"]]}\n"
        );

        assert_eq!(run_args(&["table", "r", "--max-n", "0"]).code, 2);
        assert_eq!(run_args(&["table", "q", "--max-n", "2"]).code, 2);
    }

    #[test]
    fn values() {
        assert_eq!(
            run_args(&["value", "o", "--n", "3", "--k", "1"]).stdout,
            "34\n"
        );
        assert_eq!(
            run_args(&["value", "z", "--n", "5", "--k", "5"]).stdout,
            "945\n"
        );
        assert_eq!(
            run_args(&["value", "f", "--n", "3", "--k", "3"]).stdout,
            "1\n"
        );
        assert_eq!(
            run_args(&["value", "r", "--n", "3", "--k", "2"]).stdout,
            "3\n"
        );
        assert_eq!(run_args(&["value", "o", "--n", "2", "--k", "3"]).code, 2);
        assert_eq!(run_args(&["value", "z", "--n", "2", "--k", "3"]).code, 2);
        assert_eq!(run_args(&["value", "r", "--n", "0", "--k", "0"]).code, 2);
        assert_eq!(run_args(&["value", "r", "--n", "3", "--k", "3"]).code, 2);
    }

    #[test]
    fn md_command() {
        let out = run_args(&["md", "9(7(1(8,4)),3,6(2,10(0,5)))"]);
        assert_eq!(
            out.stdout,
            "md={1,2,3,6,7,9} k=5\nz=9(7(1(8,4)),3,6(2,10))\n"
        );
        assert!(run_args(&["md", "0"]).stdout.starts_with("md={0} k=0\n"));
        let bad = run_args(&["md", "0(1,1)"]);
        assert_eq!(bad.code, 2);
        assert!(bad.stderr.contains("duplicate label 1"));
        let bad = run_args(&["md", "0(1"]);
        assert!(bad.stderr.contains("at byte 3"));
    }

    #[test]
    fn enumerate_command() {
        assert_eq!(
            run_args(&["enumerate", "O", "--n", "2"]).stdout,
            "0:5 1:4 2:3 total:12\n"
        );
        let out = run_args(&["enumerate", "F", "--n", "4", "--k", "2", "--list"]);
        assert_eq!(out.stdout.lines().count(), 60);
        assert_eq!(out.stderr, "2:60 total:60\n");
        assert!(run_args(&["enumerate", "Decreasing", "--n", "4"])
            .stdout
            .ends_with("total:105\n"));
        assert_eq!(run_args(&["enumerate", "O", "--n", "8"]).code, 2);
        assert_eq!(run_args(&["enumerate", "Q", "--n", "2"]).code, 2);
        assert_eq!(
            run_args(&["enumerate", "O", "--n", "2", "--format", "bfile"]).code,
            2
        );
        let csv = run_args(&[
            "enumerate",
            "RootedUnordered",
            "--n",
            "3",
            "--format",
            "csv",
        ]);
        assert_eq!(csv.stdout, "k,count\n0,2\n1,4\n2,3\ntotal,9\n");
    }

    #[test]
    fn verify_command() {
        let out = run_args(&["verify", "rowsum", "--max-n", "12"]);
        assert_eq!(out.code, 0, "{}", out.stdout);
        assert!(out.stdout.ends_with("VERIFIED\n"));
        assert_eq!(run_args(&["verify", "oracle", "--max-n", "99"]).code, 2);
        assert_eq!(
            run_args(&["verify", "--suite", "shor", "--max-n", "3"]).code,
            0
        );
        assert_eq!(run_args(&["verify", "--max-n", "3"]).code, 2);

        let tampered = run_with(["mdtrees", "verify", "rowsum", "--max-n", "3"], |t| {
            t.o.set(3, 0, BigNat::from(47u8));
        });
        assert_eq!(tampered.code, 1);
        assert!(tampered.stdout.contains("FAIL rowsum/n=03"));
    }

    #[test]
    fn help_exits_zero() {
        let out = run_args(&["table", "--help"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("running index"));
    }
}
