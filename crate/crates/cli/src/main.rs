//! Command-line frontend: compute p_8, verify identities, scan congruence
//! families, and dump the integer tables, with text, JSON, or CSV output.
//!
//! Exit codes: 0 when everything checked passes, 1 when a check produced a
//! verified counterexample, 2 for usage or configuration errors.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_bigint::Sign;
use serde::Serialize;

use p8series::congruences::{scan_all, ScanResult, Verdict};
use p8series::identities::{catalog, shared_tables, verify_tag};
use p8series::tables::{v2, Valuation};
use p8series::{p8_oracle, p8_series, Coeff, CoeffRing, Report, M64};

#[derive(Parser)]
#[command(
    name = "p8tool",
    version,
    about = "8-colour partition computations and verification"
)]
struct Cli {
    /// Output format; P8_FORMAT sets the default.
    #[arg(long, global = true, value_enum, env = "P8_FORMAT", default_value_t = Format::Text)]
    format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print p_8(n) for n = 0..=n_max.
    P8 {
        #[arg(long, default_value_t = 100)]
        n_max: u64,
        #[arg(long, value_enum, default_value_t = RingArg::Exact)]
        ring: RingArg,
        /// Cross-validate against the dynamic-programming oracle.
        #[arg(long)]
        check_oracle: bool,
    },
    /// Verify identities and lemmas by tag.
    Verify {
        /// Tags to check (repeatable); see --list for the catalog.
        #[arg(long = "tag")]
        tags: Vec<String>,
        /// Run every catalogued check.
        #[arg(long, conflicts_with = "tags")]
        all: bool,
        /// List the known tags and exit.
        #[arg(long, conflicts_with_all = ["tags", "all"])]
        list: bool,
        /// Truncation order for series comparisons.
        #[arg(long, default_value_t = 200)]
        order: usize,
        /// Ring for congruence-mode checks (exact equalities always run exact).
        #[arg(long, value_enum, default_value_t = RingArg::Mod64)]
        ring: RingArg,
    },
    /// Scan the congruence families for counterexamples.
    Scan {
        #[arg(long, default_value_t = 1)]
        alpha_max: u32,
        #[arg(long, default_value_t = 100)]
        n_max: u64,
        #[arg(long, value_enum, default_value_t = RingArg::Mod64)]
        ring: RingArg,
        /// Ignore exception predicates (the pentagonal family then fails).
        #[arg(long)]
        no_exceptions: bool,
    },
    /// Dump a rectangular window of the m or x table.
    Table {
        #[arg(value_enum)]
        which: WhichTable,
        #[arg(long, default_value_t = 8)]
        rows: usize,
        #[arg(long, default_value_t = 8)]
        cols: usize,
        /// Print plain integers instead of the factored 2^a * b form.
        #[arg(long)]
        raw: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RingArg {
    Exact,
    Mod64,
}

impl From<RingArg> for CoeffRing {
    fn from(arg: RingArg) -> Self {
        match arg {
            RingArg::Exact => CoeffRing::ExactInteger,
            RingArg::Mod64 => CoeffRing::Mod2w,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WhichTable {
    M,
    X,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let outcome = run(&cli, &mut out);
    let write_ok = match &cli.output {
        Some(path) => {
            fs::write(path, &out).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{out}");
            Ok(())
        }
    };
    match (outcome, write_ok) {
        (Err(message), _) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        (_, Err(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        (Ok(true), Ok(())) => ExitCode::SUCCESS,
        (Ok(false), Ok(())) => ExitCode::from(1),
    }
}

/// Runs the command, filling `out`. Ok(true) means every check passed.
fn run(cli: &Cli, out: &mut String) -> Result<bool, String> {
    match &cli.command {
        Command::P8 {
            n_max,
            ring,
            check_oracle,
        } => {
            let rows = match ring {
                RingArg::Exact => p8_rows::<BigInt>(*n_max),
                RingArg::Mod64 => p8_rows::<M64>(*n_max),
            };
            let ok = if *check_oracle {
                let oracle = p8_oracle(*n_max as usize);
                let expected: Vec<String> = match ring {
                    RingArg::Exact => oracle.iter().map(|v| v.to_string()).collect(),
                    RingArg::Mod64 => oracle
                        .iter()
                        .map(|v| M64::from_bigint(v).to_string())
                        .collect(),
                };
                rows.iter().map(|r| &r.value).eq(expected.iter())
            } else {
                true
            };
            emit_p8(cli.format, &rows, out);
            if !ok {
                writeln!(out, "oracle cross-check FAILED").unwrap();
            }
            Ok(ok)
        }
        Command::Verify {
            tags,
            all,
            list,
            order,
            ring,
        } => {
            if *list {
                for tag in catalog() {
                    writeln!(out, "{tag}").unwrap();
                }
                return Ok(true);
            }
            let selected: Vec<String> = if *all || tags.is_empty() {
                catalog().iter().map(|t| t.to_string()).collect()
            } else {
                tags.clone()
            };
            let mut reports: Vec<Report> = Vec::new();
            for tag in &selected {
                let found = verify_tag(tag, *order, (*ring).into())
                    .ok_or_else(|| format!("unknown tag '{tag}'; try --list"))?;
                reports.extend(found);
            }
            emit_reports(cli.format, &reports, out);
            Ok(reports.iter().all(|r| r.pass))
        }
        Command::Scan {
            alpha_max,
            n_max,
            ring,
            no_exceptions,
        } => {
            if *alpha_max < 1 {
                return Err("--alpha-max must be at least 1".into());
            }
            let exceptions = !no_exceptions;
            let results = match ring {
                RingArg::Exact => scan_all::<BigInt>(*alpha_max, *n_max, exceptions),
                RingArg::Mod64 => scan_all::<M64>(*alpha_max, *n_max, exceptions),
            }
            .map_err(|e| e.to_string())?;
            emit_scans(cli.format, &results, out);
            Ok(results.iter().all(|r| r.verdict == Verdict::Pass))
        }
        Command::Table {
            which,
            rows,
            cols,
            raw,
        } => {
            if *rows < 1 || *cols < 1 {
                return Err("--rows and --cols must be at least 1".into());
            }
            let tables = shared_tables();
            let window = match which {
                WhichTable::M => tables.m_table().window(*rows, *cols),
                WhichTable::X => tables.window(*rows, *cols),
            };
            emit_table(cli.format, &window, *raw, out);
            Ok(true)
        }
    }
}

#[derive(Serialize)]
struct P8Row {
    n: u64,
    value: String,
}

fn p8_rows<C: Coeff>(n_max: u64) -> Vec<P8Row> {
    let series = p8_series::<C>(n_max as usize);
    (0..=n_max)
        .map(|n| P8Row {
            n,
            value: series.coeff(n as usize).to_string(),
        })
        .collect()
}

fn emit_p8(format: Format, rows: &[P8Row], out: &mut String) {
    match format {
        Format::Text => {
            for row in rows {
                writeln!(out, "{}\t{}", row.n, row.value).unwrap();
            }
        }
        Format::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(rows).unwrap()).unwrap();
        }
        Format::Csv => {
            writeln!(out, "n,value").unwrap();
            for row in rows {
                writeln!(out, "{},{}", row.n, row.value).unwrap();
            }
        }
    }
}

fn emit_reports(format: Format, reports: &[Report], out: &mut String) {
    match format {
        Format::Text => {
            for r in reports {
                if r.pass {
                    writeln!(out, "PASS {} order={} mode={}", r.tag, r.order, r.mode).unwrap();
                } else {
                    writeln!(
                        out,
                        "FAIL {} order={} mode={} at={} lhs={} rhs={}",
                        r.tag,
                        r.order,
                        r.mode,
                        r.first_fail_index.unwrap_or_default(),
                        r.lhs_coeff.as_deref().unwrap_or("?"),
                        r.rhs_coeff.as_deref().unwrap_or("?"),
                    )
                    .unwrap();
                }
            }
        }
        Format::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(reports).unwrap()).unwrap();
        }
        Format::Csv => {
            writeln!(out, "tag,order,mode,pass,first_fail_index,lhs,rhs").unwrap();
            for r in reports {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.tag,
                    r.order,
                    r.mode,
                    r.pass,
                    r.first_fail_index
                        .map(|i| i.to_string())
                        .unwrap_or_default(),
                    r.lhs_coeff.clone().unwrap_or_default(),
                    r.rhs_coeff.clone().unwrap_or_default(),
                )
                .unwrap();
            }
        }
    }
}

fn emit_scans(format: Format, results: &[ScanResult], out: &mut String) {
    match format {
        Format::Text => {
            for r in results {
                let head = format!(
                    "{} alpha={} n<={} ring={} mod=2^{}",
                    r.id, r.alpha, r.n_scanned, r.ring, r.mod_exponent
                );
                match (&r.verdict, &r.counterexample) {
                    (Verdict::Pass, _) => {
                        writeln!(out, "PASS {head} skipped={}", r.skipped.len()).unwrap()
                    }
                    (Verdict::Fail, Some(ce)) => {
                        let val = ce
                            .v2_found
                            .map(|v| v.to_string())
                            .unwrap_or_else(|| "?".into());
                        writeln!(
                            out,
                            "FAIL {head} at n={} argument={} v2={val}",
                            ce.n, ce.argument
                        )
                        .unwrap()
                    }
                    (Verdict::Fail, None) => writeln!(out, "FAIL {head}").unwrap(),
                }
                if let Some(note) = &r.note {
                    writeln!(out, "  note: {note}").unwrap();
                }
            }
        }
        Format::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(results).unwrap()).unwrap();
        }
        Format::Csv => {
            writeln!(
                out,
                "id,alpha,n_max,n_scanned,ring,mod_exponent,verdict,fail_n,fail_argument,fail_v2,skipped"
            )
            .unwrap();
            for r in results {
                let (fail_n, fail_arg, fail_v2) = match &r.counterexample {
                    Some(ce) => (
                        ce.n.to_string(),
                        ce.argument.to_string(),
                        ce.v2_found.map(|v| v.to_string()).unwrap_or_default(),
                    ),
                    None => (String::new(), String::new(), String::new()),
                };
                let verdict = match r.verdict {
                    Verdict::Pass => "pass",
                    Verdict::Fail => "fail",
                };
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    r.id,
                    r.alpha,
                    r.n_max,
                    r.n_scanned,
                    r.ring,
                    r.mod_exponent,
                    verdict,
                    fail_n,
                    fail_arg,
                    fail_v2,
                    r.skipped.len(),
                )
                .unwrap();
            }
        }
    }
}

/// Factored form 2^a * b with b odd, mirroring how the tables are displayed.
fn factored(v: &BigInt) -> String {
    match v2(v) {
        Valuation::Infinite => "0".to_string(),
        Valuation::Finite(0) => v.to_string(),
        Valuation::Finite(a) => {
            let odd = v >> a;
            let sign = if v.sign() == Sign::Minus { "-" } else { "" };
            let odd_abs: BigInt = if odd.sign() == Sign::Minus {
                -&odd
            } else {
                odd
            };
            if odd_abs == BigInt::from(1) {
                format!("{sign}2^{a}")
            } else {
                format!("{sign}2^{a} * {odd_abs}")
            }
        }
    }
}

#[derive(Serialize)]
struct TableCell {
    j: usize,
    k: usize,
    value: String,
    factored: String,
}

fn emit_table(format: Format, window: &[Vec<BigInt>], raw: bool, out: &mut String) {
    let cell = |v: &BigInt| if raw { v.to_string() } else { factored(v) };
    match format {
        Format::Text => {
            for row in window {
                let line: Vec<String> = row.iter().map(cell).collect();
                writeln!(out, "{}", line.join("\t")).unwrap();
            }
        }
        Format::Json => {
            let cells: Vec<TableCell> = window
                .iter()
                .enumerate()
                .flat_map(|(j, row)| {
                    row.iter().enumerate().map(move |(k, v)| TableCell {
                        j: j + 1,
                        k: k + 1,
                        value: v.to_string(),
                        factored: factored(v),
                    })
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&cells).unwrap()).unwrap();
        }
        Format::Csv => {
            writeln!(out, "j,k,value").unwrap();
            for (j, row) in window.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    writeln!(out, "{},{},{}", j + 1, k + 1, cell(v)).unwrap();
                }
            }
        }
    }
}
