//! `sictk`: batch verification, search and table manipulation for
//! Weyl-Heisenberg SIC overlap data.
//!
//! Exit codes: 0 = pass/success, 1 = verification failure, 2 = usage or
//! input error. JSON goes to stdout with sorted keys; diagnostics to stderr.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64 as Cx;
use serde_json::{json, Value};

use sic_overlaps::clifford::{zauner_residual, GeneratorWord};
use sic_overlaps::error::SicError;
use sic_overlaps::family::{
    self, deltoid_distance, family_overlaps, sheet_parameter, triple_sum, Branch, FamilyPoint,
};
use sic_overlaps::json as schema;
use sic_overlaps::overlaps::{
    check_conditions, frame_potential, overlaps_from_fiducial, potential_bound, OverlapTable,
};
use sic_overlaps::search::{sic_search, ObjectiveKind, SearchConfig};
use sic_overlaps::symbols::{
    hermitian_symbol_check, invariant_product_check, rank_one_scan, riesz_check, symbols_from_table,
};
use sic_overlaps::transform::{verify_l_order, verify_r2f_identities, verify_t_order};

#[derive(Parser)]
#[command(
    name = "sictk",
    about = "Overlap-variable toolkit for Weyl-Heisenberg SICs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a fiducial vector file against the equiangularity certificate.
    VerifyFiducial(VerifyFiducialArgs),
    /// Verify an overlap table file, including symbol-side residuals.
    VerifyOverlaps(VerifyOverlapsArgs),
    /// Frame-potential descent with seeded random restarts.
    Search(SearchArgs),
    /// Emit a point of the explicit d = 3 family (optionally an SVG figure).
    D3Family(D3FamilyArgs),
    /// Residuals of the finite-order transform identities over a range of d.
    OrderCheck(OrderCheckArgs),
    /// Apply a word of generator actions to a table.
    CliffordOrbit(CliffordOrbitArgs),
    /// Dump the symbol values and symbol-side residuals of a table.
    Symbols(SymbolsArgs),
}

#[derive(Args)]
struct VerifyFiducialArgs {
    /// Fiducial JSON file: { "d": int, "v": [[re,im], ...] }
    file: PathBuf,
    /// Acceptance tolerance for all four residuals.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Also write the residual report as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyOverlapsArgs {
    /// Table JSON file: { "d": int, "c": [[[re,im], ...], ...] }
    file: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Dimension d >= 2.
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    #[arg(long, default_value_t = 3000)]
    iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-11)]
    target_gap: f64,
    /// Restart from random vectors inside an eigenspace of Z.
    #[arg(long)]
    zauner: bool,
    /// "potential" (default) or the experimental "quartic" torus mode.
    #[arg(long, default_value = "potential")]
    objective: String,
    /// Write the best fiducial to a JSON file.
    #[arg(long)]
    emit_fiducial: Option<PathBuf>,
}

#[derive(Args)]
struct D3FamilyArgs {
    /// Boundary angle in radians (the family is 4π-periodic in phi).
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    /// Argument of the free unimodular parameter. Overrides --sheet.
    #[arg(long)]
    z20_arg: Option<f64>,
    /// Admissible sheet index 0..=2 used when --z20-arg is not given.
    #[arg(long, default_value_t = 0)]
    sheet: u8,
    /// Boundary branch: z1z3 (default), z1z2 or z2z3.
    #[arg(long, default_value = "z1z3")]
    branch: String,
    /// Write an SVG of the deltoid with sampled family triple-sums.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args)]
struct OrderCheckArgs {
    /// Inclusive dimension range, e.g. "2..8".
    #[arg(long, default_value = "2..8")]
    d_range: String,
}

#[derive(Args)]
struct CliffordOrbitArgs {
    /// Table JSON file to act on.
    file: PathBuf,
    /// Generator word, applied left to right, e.g. "S1O0 F Z Z".
    #[arg(long)]
    word: String,
    /// Write the image table to a file instead of only stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SymbolsArgs {
    /// Table JSON file.
    file: PathBuf,
}

/// Usage-level failure (exit 2).
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn read_file(path: &Path) -> Result<String, UsageError> {
    std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), UsageError> {
    std::fs::write(path, contents)
        .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))
}

fn parse_table_file(path: &Path) -> Result<OverlapTable, UsageError> {
    let text = read_file(path)?;
    schema::parse_table(&text).map_err(|e| match e {
        SicError::Json(ref je) => UsageError(format!(
            "{}: malformed JSON at line {}, column {}: {je}",
            path.display(),
            je.line(),
            je.column()
        )),
        other => UsageError(format!("{}: {other}", path.display())),
    })
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(pass) => {
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, UsageError> {
    match cli.command {
        Command::VerifyFiducial(args) => {
            let text = read_file(&args.file)?;
            let fiducial = match schema::parse_fiducial(&text) {
                Ok(f) => f,
                Err(SicError::NotUnit { norm, .. }) => {
                    // a finite, well-formed vector that is not unit is a
                    // verification failure, not a usage error
                    print_json(&json!({
                        "pass": false,
                        "reason": format!("vector norm {norm} is not 1"),
                    }));
                    return Ok(false);
                }
                Err(SicError::Json(je)) => {
                    return Err(UsageError(format!(
                        "{}: malformed JSON at line {}, column {}: {je}",
                        args.file.display(),
                        je.line(),
                        je.column()
                    )))
                }
                Err(other) => return Err(UsageError(other.to_string())),
            };
            if args.tol <= 0.0 {
                return Err(UsageError("--tol must be positive".into()));
            }
            let table = overlaps_from_fiducial(&fiducial);
            let report = check_conditions(&table, args.tol);
            let d = fiducial.dim();
            let potential = frame_potential(&fiducial);
            print_json(&json!({
                "d": d,
                "frame_potential": potential,
                "potential_gap": potential - potential_bound(d),
                "verification": serde_json::to_value(report).expect("report"),
                "zauner_residual": zauner_residual(&table),
            }));
            if let Some(csv) = &args.csv {
                write_file(csv, &schema::verification_csv(&report))?;
            }
            Ok(report.pass)
        }

        Command::VerifyOverlaps(args) => {
            let table = parse_table_file(&args.file)?;
            if args.tol <= 0.0 {
                return Err(UsageError("--tol must be positive".into()));
            }
            let report = check_conditions(&table, args.tol);
            let rank_one = rank_one_scan(&table, args.tol.max(1e-8));
            let rank_one_json = match &rank_one {
                Ok(r) => json!({
                    "anchor": r.anchor,
                    "anchor_value": r.anchor_value,
                    "residual": r.residual,
                    "pass": r.pass,
                }),
                Err(e) => json!({ "error": e.to_string() }),
            };
            print_json(&json!({
                "d": table.dim(),
                "verification": serde_json::to_value(report).expect("report"),
                "symbol_residuals": {
                    "hermitian": hermitian_symbol_check(&table),
                    "riesz": riesz_check(&table),
                    "invariant_product": invariant_product_check(&table),
                    "rank_one": rank_one_json,
                },
                "zauner_residual": zauner_residual(&table),
            }));
            if let Some(csv) = &args.csv {
                write_file(csv, &schema::verification_csv(&report))?;
            }
            Ok(report.pass)
        }

        Command::Search(args) => {
            let mut cfg = SearchConfig::new(args.d);
            cfg.max_restarts = args.restarts;
            cfg.max_iters = args.iters;
            cfg.rng_seed = args.seed;
            cfg.target_gap = args.target_gap;
            cfg.restrict_zauner = args.zauner;
            cfg.objective = args.objective.parse::<ObjectiveKind>()?;
            let report = sic_search(&cfg)?;
            print_json(&schema::search_report_json(&report));
            if let Some(path) = &args.emit_fiducial {
                let text = serde_json::to_string_pretty(&schema::fiducial_json(&report.fiducial))
                    .expect("serializable");
                write_file(path, &text)?;
            }
            Ok(report.success)
        }

        Command::D3Family(args) => {
            let branch: Branch = args.branch.parse()?;
            if args.sheet > 2 {
                return Err(UsageError("--sheet must be 0, 1 or 2".into()));
            }
            let z20 = match args.z20_arg {
                Some(t) => Cx::from_polar(1.0, t),
                None => sheet_parameter(args.phi, args.sheet, branch),
            };
            let point = FamilyPoint::new(args.phi, z20, branch)?;
            let table = family_overlaps(&point);
            let report = check_conditions(&table, 1e-9);
            let tsum = triple_sum(&table);
            print_json(&json!({
                "phi": point.phi,
                "z20": [point.z20.re, point.z20.im],
                "branch": args.branch,
                "sheet_residual": family::sheet_residual(&point),
                "table": schema::table_json(&table),
                "triple_sum": [tsum.re, tsum.im],
                "deltoid_distance": deltoid_distance(tsum),
                "verification": serde_json::to_value(report).expect("report"),
            }));
            if let Some(path) = &args.plot {
                let sums: Vec<Cx> = family::sample_branch(300, branch, 1)
                    .iter()
                    .map(|p| triple_sum(&family_overlaps(p)))
                    .chain(std::iter::once(tsum))
                    .collect();
                write_file(path, &family::deltoid_svg(&sums))?;
            }
            Ok(report.pass)
        }

        Command::OrderCheck(args) => {
            let (lo, hi) = parse_range(&args.d_range)?;
            let mut rows = Vec::new();
            let mut worst = 0.0f64;
            for d in lo..=hi {
                let t = verify_t_order(d)?;
                let l = verify_l_order(d)?;
                let r2f = verify_r2f_identities(d)?;
                worst = worst
                    .max(t.residual)
                    .max(l.residual)
                    .max(l.fourth_power_residual)
                    .max(r2f.conjugation_residual)
                    .max(r2f.power_residual);
                rows.push(json!({
                    "d": d,
                    "sign": t.sign,
                    "t_order_residual": t.residual,
                    "l_order_residual": l.residual,
                    "l_fourth_power_residual": l.fourth_power_residual,
                    "r2f_conjugation_residual": r2f.conjugation_residual,
                    "r2f_power_residual": r2f.power_residual,
                }));
            }
            print_json(&json!({ "checks": rows, "worst_residual": worst }));
            Ok(worst <= 1e-8)
        }

        Command::CliffordOrbit(args) => {
            let table = parse_table_file(&args.file)?;
            let word: GeneratorWord = args.word.parse()?;
            let image = word.apply(&table);
            let report = check_conditions(&image, 1e-9);
            print_json(&json!({
                "word": args.word,
                "table": schema::table_json(&image),
                "verification": serde_json::to_value(report).expect("report"),
            }));
            if let Some(path) = &args.out {
                let text = serde_json::to_string_pretty(&schema::table_json(&image))
                    .expect("serializable");
                write_file(path, &text)?;
            }
            Ok(true)
        }

        Command::Symbols(args) => {
            let table = parse_table_file(&args.file)?;
            let symbols = symbols_from_table(&table);
            let rank_one = rank_one_scan(&table, 1e-8);
            let rank_one_json = match &rank_one {
                Ok(r) => json!({
                    "anchor": r.anchor,
                    "anchor_value": r.anchor_value,
                    "residual": r.residual,
                    "pass": r.pass,
                }),
                Err(e) => json!({ "error": e.to_string() }),
            };
            print_json(&json!({
                "symbols": schema::symbols_json(&symbols),
                "residuals": {
                    "hermitian": hermitian_symbol_check(&table),
                    "riesz": riesz_check(&table),
                    "invariant_product": invariant_product_check(&table),
                    "rank_one": rank_one_json,
                },
            }));
            Ok(true)
        }
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), UsageError> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| UsageError(format!("bad range {s:?}, expected like 2..8")))?;
    let lo: usize = lo
        .parse()
        .map_err(|_| UsageError(format!("bad range start {lo:?}")))?;
    let hi: usize = hi
        .parse()
        .map_err(|_| UsageError(format!("bad range end {hi:?}")))?;
    if lo < 2 {
        return Err(UsageError("range must start at d >= 2".into()));
    }
    if hi < lo {
        return Err(UsageError("empty range".into()));
    }
    if hi > 16 {
        return Err(UsageError(
            "order checks are d^2 x d^2 dense; capped at d = 16".into(),
        ));
    }
    Ok((lo, hi))
}
