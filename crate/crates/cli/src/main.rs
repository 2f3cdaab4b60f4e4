//! `zinbiel`: check, build and classify extending structures from JSON files.
//!
//! Exit codes: 0 on success, 1 when a check fails (the failing conditions
//! and their witnesses are printed), 2 on malformed input or usage.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use zinbiel::acceptance::{run_all, DEFAULT_SEED};
use zinbiel::catalog::{Catalog, Params};
use zinbiel::exactlin::{format_rational, parse_rational, parse_rational_list};
use zinbiel::extending::{build_unified, extract_datum, verify_datum, InclusionPresentation};
use zinbiel::flag::{build_flag_extension, flag_extension_unchecked, solve_reduced, verify_flag, FlagMode};
use zinbiel::json;
use zinbiel::products::{bicrossed, crossed, is_bimodule, r_deform, semidirect};
use zinbiel::{Algebra, CheckReport, Error};

#[derive(Parser)]
#[command(name = "zinbiel", version, about = "Extending structures of Zinbiel algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the defining conditions of an object and print a report.
    Check {
        kind: CheckKind,
        file: PathBuf,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Build an algebra and print it as JSON.
    Build {
        kind: BuildKind,
        /// Input files; `rdeform` takes a matched pair and a map `r`.
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Build even when the input fails its conditions.
        #[arg(long)]
        force: bool,
    },
    /// Extract the extending datum of an algebra relative to coordinate
    /// subalgebra `Z`; the remaining coordinates span the complement.
    Extract {
        file: PathBuf,
        /// 1-based indices of the basis vectors spanning `Z`, e.g. "1,2,3".
        #[arg(long)]
        z: String,
    },
    /// Solve reduced flag systems.
    Solve {
        #[command(subcommand)]
        what: Solve,
    },
    /// Built-in algebras and flag fixtures.
    Catalog {
        #[command(subcommand)]
        what: CatalogCmd,
    },
    /// Run the acceptance suite.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Zinbiel,
    Datum,
    Crossed,
    Matched,
    Flag,
    Bimodule,
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildKind {
    Unified,
    Semidirect,
    Crossed,
    Bicrossed,
    Flag,
    Rdeform,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    D,
    T,
}

#[derive(Subcommand)]
enum Solve {
    /// Solve for D (x0 = k0 = 0, T = 0) or T (x0 = k0 = 0, D = 0) at fixed μ.
    Flag {
        file: PathBuf,
        #[arg(long, value_enum, ignore_case = true)]
        mode: Mode,
        /// μ(e1), ..., μ(en), e.g. "1,0,1/2".
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// List fixtures with their parameters and recorded values.
    List,
    /// Print a fixture. Base algebras print as algebra JSON, flag fixtures
    /// as flag datum JSON. Unset parameters take their recorded values.
    Emit {
        id: String,
        /// A parameter binding `name=value`, repeatable.
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
        /// For flag fixtures, print the 4-dimensional extension instead.
        #[arg(long)]
        algebra: bool,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// Run every acceptance criterion against the built-in catalog.
    Paper {
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

enum Failure {
    /// A check failed; its report has been printed.
    Check,
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition {
                context,
                report: Some(report),
            } => {
                println!("{report}");
                eprintln!("error: {context}");
                Failure::Check
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    json::parse_document(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Reads and decodes a file, prefixing decoding errors with its path.
fn load<T>(path: &Path, decode: impl FnOnce(&Value) -> Result<T, Error>) -> Result<T, Failure> {
    let v = read_json(path)?;
    decode(&v).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn print_json(v: &Value) {
    print!("{}", json::to_canonical_string(v));
}

fn emit_report(report: &CheckReport, as_json: bool) -> Result<(), Failure> {
    if as_json {
        print_json(&json::report_to_json(report));
    } else {
        println!("{report}");
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Check { kind, file, json } => check(kind, &file, json),
        Command::Build { kind, files, force } => build(kind, &files, force),
        Command::Extract { file, z } => {
            let total = load(&file, |v| json::algebra_from_json(v, ""))?;
            let idx = parse_indices(&z, total.dim())?;
            let p = InclusionPresentation::coordinate_split(total, &idx)?;
            print_json(&json::datum_to_json(&extract_datum(&p)?));
            Ok(())
        }
        Command::Solve {
            what: Solve::Flag { file, mode, mu },
        } => {
            let z = load(&file, |v| json::algebra_from_json(v, ""))?;
            let mu = parse_rational_list(&mu)?;
            let mode = match mode {
                Mode::D => FlagMode::D,
                Mode::T => FlagMode::T,
            };
            print_json(&json::solution_family_to_json(&solve_reduced(&z, &mu, mode)?));
            Ok(())
        }
        Command::Catalog { what } => catalog(what),
        Command::Verify {
            what: Verify::Paper { json, seed },
        } => {
            let summary = run_all(&Catalog::standard(), seed);
            if json {
                print_json(&summary.to_json());
            } else {
                for c in &summary.criteria {
                    println!("{}", c.line());
                }
                println!(
                    "{} of {} criteria pass",
                    summary.criteria.iter().filter(|c| c.passed).count(),
                    summary.criteria.len()
                );
            }
            if summary.passed() {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
    }
}

fn check(kind: CheckKind, file: &Path, as_json: bool) -> Result<(), Failure> {
    let report = match kind {
        CheckKind::Zinbiel => load(file, |v| json::algebra_from_json(v, ""))?.is_zinbiel(),
        CheckKind::Datum => {
            let d = load(file, json::datum_from_json)?;
            d.validate()?;
            verify_datum(&d)
        }
        CheckKind::Crossed => crossed(&load(file, json::crossed_from_json)?)?.0,
        CheckKind::Matched => bicrossed(&load(file, json::matched_from_json)?)?.0,
        CheckKind::Flag => verify_flag(&load(file, json::flag_from_json)?)?,
        CheckKind::Bimodule => is_bimodule(&load(file, json::bimodule_from_json)?)?,
    };
    emit_report(&report, as_json)
}

/// Prints `algebra`, or the failing report unless `force` is set.
fn finish_build(report: CheckReport, algebra: Algebra, force: bool) -> Result<(), Failure> {
    if !report.passed && !force {
        println!("{report}");
        eprintln!("error: input fails its conditions; use --force to build anyway");
        return Err(Failure::Check);
    }
    print_json(&json::algebra_to_json(&algebra));
    Ok(())
}

fn one_file(files: &[PathBuf], n: usize, what: &str) -> Result<(), Failure> {
    if files.len() == n {
        Ok(())
    } else {
        Err(Failure::Input(format!(
            "{what} takes {n} input file(s), got {}",
            files.len()
        )))
    }
}

fn build(kind: BuildKind, files: &[PathBuf], force: bool) -> Result<(), Failure> {
    match kind {
        BuildKind::Unified => {
            one_file(files, 1, "build unified")?;
            let d = load(&files[0], json::datum_from_json)?;
            d.validate()?;
            finish_build(verify_datum(&d), build_unified(&d, true)?, force)
        }
        BuildKind::Semidirect => {
            one_file(files, 1, "build semidirect")?;
            let b = load(&files[0], json::bimodule_from_json)?;
            if force {
                print_json(&json::algebra_to_json(&build_unified(&b.to_datum(), true)?));
                return Ok(());
            }
            print_json(&json::algebra_to_json(&semidirect(&b)?));
            Ok(())
        }
        BuildKind::Crossed => {
            one_file(files, 1, "build crossed")?;
            let (report, e) = crossed(&load(&files[0], json::crossed_from_json)?)?;
            finish_build(report, e, force)
        }
        BuildKind::Bicrossed => {
            one_file(files, 1, "build bicrossed")?;
            let (report, e) = bicrossed(&load(&files[0], json::matched_from_json)?)?;
            finish_build(report, e, force)
        }
        BuildKind::Flag => {
            one_file(files, 1, "build flag")?;
            let fd = load(&files[0], json::flag_from_json)?;
            if force {
                print_json(&json::algebra_to_json(&flag_extension_unchecked(&fd)?));
                return Ok(());
            }
            print_json(&json::algebra_to_json(&build_flag_extension(&fd)?.1));
            Ok(())
        }
        BuildKind::Rdeform => {
            one_file(files, 2, "build rdeform")?;
            if force {
                return Err(Failure::Input(
                    "build rdeform is only defined for deformation maps; --force is not accepted".into(),
                ));
            }
            let mp = load(&files[0], json::matched_from_json)?;
            let (n, m) = (mp.base.dim(), mp.top.dim());
            let r = load(&files[1], |v| {
                let images = v.get("r").unwrap_or(v);
                json::matrix_from_json(images, n, m, if v.get("r").is_some() { "r" } else { "" })
            })?;
            print_json(&json::algebra_to_json(&r_deform(&mp, &r)?));
            Ok(())
        }
    }
}

fn parse_indices(s: &str, dim: usize) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(|t| {
            let i: usize = t
                .trim()
                .parse()
                .map_err(|_| Failure::Input(format!("--z: bad index {t:?}")))?;
            if i == 0 || i > dim {
                return Err(Failure::Input(format!("--z: index {i} outside 1..={dim}")));
            }
            Ok(i - 1)
        })
        .collect()
}

fn catalog(what: CatalogCmd) -> Result<(), Failure> {
    let cat = Catalog::standard();
    match what {
        CatalogCmd::List => {
            for f in cat.fixtures() {
                let recorded: Vec<String> = f
                    .params
                    .iter()
                    .map(|(k, v)| format!("{k}={}", format_rational(v)))
                    .collect();
                let family = cat
                    .flag_families()
                    .into_iter()
                    .find(|fam| fam.id == f.id)
                    .map(|fam| format!("  family {}", fam.family))
                    .unwrap_or_default();
                println!("{:<6} {}{family}", f.id, recorded.join(" "));
            }
            Ok(())
        }
        CatalogCmd::Emit { id, params, algebra } => {
            let fixture = cat
                .fixtures()
                .into_iter()
                .find(|f| f.id == id)
                .ok_or_else(|| Failure::Input(Error::UnknownFixture(id.clone()).to_string()))?;
            let mut bound: Params = fixture.params;
            for p in &params {
                let (k, v) = p
                    .split_once('=')
                    .ok_or_else(|| Failure::Input(format!("--param {p:?}: expected NAME=VALUE")))?;
                bound.insert(k.trim().to_string(), parse_rational(v)?);
            }
            let is_flag = cat.flag_families().iter().any(|f| f.id == id);
            let out = if is_flag && !algebra {
                json::flag_to_json(&cat.flag(&id, &bound)?)
            } else {
                json::algebra_to_json(&cat.algebra(&id, &bound)?)
            };
            print_json(&out);
            Ok(())
        }
    }
}
