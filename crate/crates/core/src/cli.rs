//! Command-line front end: single Kostka polynomials, verification suites and
//! cached tables.
//!
//! Exit codes: 0 success, 1 hard verification failure or I/O error, 2 usage.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::audit::{AuditReport, Verdict};
use crate::coinvariant::{restricted_kostka_oracle, FunctionalModelSpec};
use crate::compositions::Composition;
use crate::error::{Error, Result};
use crate::kostka::{restricted_alternating, restricted_fermionic, unrestricted, UnrestrictedSource};
use crate::affine_weyl::euler_characteristic_bgg;
use crate::qexact::{QExponent, QPolynomial};
use crate::suites::{run_suite, weight_grid, SuiteOptions, SUITES};
use crate::verlinde::structure_constants;
use crate::virasoro::{rocha_caridi, MinimalModel};

pub const CACHE_ENV: &str = "KOSTKA_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "kostka", version, about = "Restricted Kostka polynomials and character identities")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Worker threads; 0 uses one per core.
    #[arg(long, default_value_t = 0, global = true)]
    pub workers: usize,
    /// Overrides KOSTKA_CACHE_DIR.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Write to a file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// One Kostka polynomial.
    Kostka(KostkaArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Write a table over a parameter grid.
    Table(TableArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Fermionic,
    Charge,
    Bgg,
    Coinvariant,
}

#[derive(Args, Debug)]
pub struct KostkaArgs {
    /// Level-restricted polynomial; needs --level.
    #[arg(long, requires = "level")]
    pub restricted: bool,
    #[arg(long)]
    pub level: Option<i64>,
    #[arg(long)]
    pub weight: i64,
    /// Fusion factor sizes, e.g. `1,1,2` or `1^2,2`.
    #[arg(long, value_parser = parse_partition)]
    pub m: Composition,
    #[arg(long, value_enum, default_value_t = Route::Fermionic)]
    pub route: Route,
    /// Print `q^{h(m)} K(q^{-1})`.
    #[arg(long)]
    pub reversed: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub suite: String,
    #[arg(long)]
    pub max_weight: Option<i64>,
    #[arg(long)]
    pub max_level: Option<i64>,
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    /// Restricted Kostka polynomials over `(k, l, m)`.
    Kostka,
    /// Verlinde structure constants over `(k, m, l)`.
    Verlinde,
    /// Minimal-model characters over `(r, s)`.
    Character,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub kind: TableKind,
    #[arg(long, default_value_t = 8)]
    pub max_weight: i64,
    #[arg(long, default_value_t = 3)]
    pub max_level: i64,
    #[arg(long, default_value_t = 3)]
    pub p: i64,
    #[arg(long, default_value_t = 4)]
    pub p_prime: i64,
    #[arg(long, default_value_t = 20)]
    pub order: usize,
}

fn parse_partition(s: &str) -> std::result::Result<Composition, String> {
    Composition::from_partition_notation(s).map_err(|e| e.to_string())
}

/// A grid of polynomials. For characters the polynomial holds the
/// coefficients after the `q^offset` prefactor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub kind: String,
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub params: Vec<String>,
    pub polynomial: QPolynomial,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return e.exit_code();
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.config.workers).build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    let mut log = Vec::new();
    let result = pool.install(|| match &cli.command {
        Command::Kostka(args) => cmd_kostka(args, &cli.config),
        Command::Verify(args) => cmd_verify(args, &cli.config, &mut log),
        Command::Table(args) => cmd_table(args, &cli.config, &mut log),
    });
    for line in log {
        let _ = writeln!(err, "{line}");
    }
    match result {
        Ok(Outcome { text, code }) => match emit(&cli.config, &text, out) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                1
            }
        },
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Runtime(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

struct Outcome {
    text: String,
    code: i32,
}

enum Failure {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e)
    }
}

fn emit(config: &RunConfig, text: &str, out: &mut dyn Write) -> Result<()> {
    match &config.output {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_kostka(args: &KostkaArgs, config: &RunConfig) -> std::result::Result<Outcome, Failure> {
    let (l, m) = (args.weight, &args.m);
    let level = if args.restricted { args.level } else { None };
    let poly = match (level, args.route) {
        (None, Route::Fermionic) => unrestricted(l, m)?,
        (None, Route::Charge) => UnrestrictedSource::ChargeOracle.kostka(l, m)?,
        (None, route) => {
            return Err(Failure::Usage(format!("route {route:?} needs --restricted")));
        }
        (Some(k), Route::Fermionic) => restricted_fermionic(l, m, k),
        (Some(k), Route::Charge) => restricted_alternating(l, m, k, UnrestrictedSource::ChargeOracle)?,
        (Some(k), Route::Bgg) => euler_characteristic_bgg(m, l, k)?,
        (Some(k), Route::Coinvariant) => restricted_kostka_oracle(&FunctionalModelSpec::new(l, m, k)?)?,
    };
    let poly = if args.reversed {
        poly.substitute_inverse().shift_integer(m.top_degree_h())
    } else {
        poly
    };
    let route = format!("{:?}", args.route).to_lowercase();
    let text = match config.format {
        Format::Json => {
            let value = json!({
                "l": l,
                "m": m.to_string(),
                "k": level,
                "route": route,
                "reversed": args.reversed,
                "polynomial": poly,
            });
            pretty(&value)
        }
        Format::Text => format!("{poly}\n"),
        Format::Csv => {
            let table = Table {
                kind: "kostka".into(),
                columns: vec!["k".into(), "l".into(), "m".into()],
                rows: vec![TableRow {
                    params: vec![level.map_or(String::new(), |k| k.to_string()), l.to_string(), m.to_string()],
                    polynomial: poly,
                }],
            };
            table_csv(&table)?
        }
    };
    Ok(Outcome { text, code: 0 })
}

fn cmd_verify(args: &VerifyArgs, config: &RunConfig, log: &mut Vec<String>) -> std::result::Result<Outcome, Failure> {
    if !SUITES.contains(&args.suite.as_str()) {
        return Err(Failure::Usage(format!(
            "unknown suite '{}'; expected one of {}",
            args.suite,
            SUITES.join(", ")
        )));
    }
    if config.format == Format::Csv {
        return Err(Failure::Usage("verify writes json or text".into()));
    }
    let opts = SuiteOptions { max_weight: args.max_weight, max_level: args.max_level, order: args.order };
    let report = run_suite(&args.suite, &opts)?;
    log.push(format!(
        "{}: {} checked, {} hard failures, {} audit discrepancies",
        report.suite, report.checked, report.hard_failures, report.discrepancies
    ));
    let code = if report.all_hard_pass() { 0 } else { 1 };
    let text = if config.format == Format::Text && code == 0 {
        report_text(&report)
    } else {
        pretty(&report)
    };
    Ok(Outcome { text, code })
}

fn report_text(report: &AuditReport) -> String {
    let mut s = format!(
        "suite {}: {} checked, {} hard failures, {} discrepancies\n",
        report.suite, report.checked, report.hard_failures, report.discrepancies
    );
    for r in &report.records {
        let verdict = match r.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Discrepancy => "discrepancy",
        };
        s.push_str(&format!("{verdict} {} {}\n", r.check, r.params));
    }
    s
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("library types serialize to JSON");
    s.push('\n');
    s
}

fn cmd_table(args: &TableArgs, config: &RunConfig, log: &mut Vec<String>) -> std::result::Result<Outcome, Failure> {
    if args.max_weight < 0 || args.max_level < 1 {
        return Err(Failure::Usage("need --max-weight >= 0 and --max-level >= 1".into()));
    }
    let key = cache_key(args);
    let cache_dir = config.cache_dir.clone().or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
    let table = match &cache_dir {
        Some(dir) => cached_table(dir, &key, args, log)?,
        None => build_table(args)?,
    };
    let text = match config.format {
        Format::Json => pretty(&table),
        Format::Csv => table_csv(&table)?,
        Format::Text => table_text(&table),
    };
    Ok(Outcome { text, code: 0 })
}

/// Hex SHA-256 of the crate version and the table parameters.
pub fn cache_key(args: &TableArgs) -> String {
    let params = match args.kind {
        TableKind::Kostka | TableKind::Verlinde => {
            json!({"max_weight": args.max_weight, "max_level": args.max_level})
        }
        TableKind::Character => json!({"p": args.p, "p_prime": args.p_prime, "order": args.order}),
    };
    let payload = json!({"version": env!("CARGO_PKG_VERSION"), "kind": args.kind, "params": params});
    hex::encode(Sha256::digest(payload.to_string().as_bytes()))
}

fn cached_table(dir: &Path, key: &str, args: &TableArgs, log: &mut Vec<String>) -> Result<Table> {
    let path = dir.join(format!("{key}.json"));
    if let Ok(bytes) = fs::read(&path) {
        if let Ok(table) = serde_json::from_slice::<Table>(&bytes) {
            log.push(format!("cache hit {}", path.display()));
            return Ok(table);
        }
    }
    log.push(format!("cache miss {}", path.display()));
    let table = build_table(args)?;
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!("{key}.json.{}.tmp", std::process::id()));
    fs::write(&tmp, serde_json::to_vec(&table)?)?;
    fs::rename(&tmp, &path)?;
    Ok(table)
}

pub fn build_table(args: &TableArgs) -> Result<Table> {
    match args.kind {
        TableKind::Kostka => {
            let grid: Vec<(i64, i64, Composition)> = (1..=args.max_level)
                .flat_map(|k| {
                    weight_grid(args.max_weight, k as usize)
                        .into_iter()
                        .flat_map(move |m| (0..=k).map(move |l| (k, l, m.clone())))
                })
                .collect();
            let rows = grid
                .par_iter()
                .map(|(k, l, m)| TableRow {
                    params: vec![k.to_string(), l.to_string(), m.to_string()],
                    polynomial: restricted_fermionic(*l, m, *k),
                })
                .collect();
            Ok(Table { kind: "kostka".into(), columns: vec!["k".into(), "l".into(), "m".into()], rows })
        }
        TableKind::Verlinde => {
            let grid: Vec<(i64, Composition)> = (1..=args.max_level)
                .flat_map(|k| weight_grid(args.max_weight, k as usize).into_iter().map(move |m| (k, m)))
                .collect();
            let blocks = grid
                .par_iter()
                .map(|(k, m)| {
                    let c = structure_constants(m, *k)?;
                    Ok((0..=*k)
                        .map(|l| TableRow {
                            params: vec![k.to_string(), m.to_string(), l.to_string()],
                            polynomial: QPolynomial::monomial(QExponent::ZERO, c.coefficient(l)),
                        })
                        .collect::<Vec<_>>())
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Table {
                kind: "verlinde".into(),
                columns: vec!["k".into(), "m".into(), "l".into()],
                rows: blocks.into_iter().flatten().collect(),
            })
        }
        TableKind::Character => {
            let labels: Vec<(i64, i64)> =
                (1..args.p).flat_map(|r| (1..args.p_prime).map(move |s| (r, s))).collect();
            let rows = labels
                .par_iter()
                .map(|&(r, s)| {
                    let mm = MinimalModel::new(args.p, args.p_prime, r, s)?;
                    let series = rocha_caridi(&mm, args.order).series;
                    Ok(TableRow {
                        params: vec![r.to_string(), s.to_string(), series.offset().to_string()],
                        polynomial: QPolynomial::from_coefficients(series.coefficients().iter().cloned()),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Table {
                kind: "character".into(),
                columns: vec!["r".into(), "s".into(), "offset".into()],
                rows,
            })
        }
    }
}

/// One line per term; exponents are numerators over 4.
pub fn table_csv(table: &Table) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = table.columns.clone();
    header.extend(["exponent_numerator".to_string(), "coefficient".to_string()]);
    w.write_record(&header).map_err(csv_error)?;
    for row in &table.rows {
        for (e, c) in row.polynomial.terms() {
            let mut record = row.params.clone();
            record.push(e.quarters().to_string());
            record.push(c.to_string());
            w.write_record(&record).map_err(csv_error)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

fn csv_error(e: csv::Error) -> Error {
    Error::Internal(format!("csv: {e}"))
}

fn table_text(table: &Table) -> String {
    let mut s = String::new();
    for row in &table.rows {
        let labels: Vec<String> =
            table.columns.iter().zip(&row.params).map(|(c, p)| format!("{c}={p}")).collect();
        s.push_str(&format!("{}: {}\n", labels.join(" "), row.polynomial));
    }
    s
}

/// Parses a `Table` written by the JSON formatter.
pub fn parse_table(text: &str) -> Result<Table> {
    Ok(serde_json::from_str(text)?)
}
