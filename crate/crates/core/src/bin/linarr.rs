use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use linarr::catalogue::{self, CatalogueEntry, CatalogueFile};
use linarr::classify::{classify_with, reproduce_table, ClassifyError, ClassifyOptions};
use linarr::report::{self, OutputFormat, Record};
use linarr::CombinatorialProfile;

/// Exit codes: 0 success, 1 parse/consistency/usage error, 2 entry without
/// coordinates, 3 internal inconsistency, 4 unexpected table mismatch.
#[derive(Parser)]
#[command(name = "linarr", version, about = "Free and nearly free line arrangements")]
struct Cli {
    /// human, json, csv or markdown
    #[arg(long, global = true, default_value = "human")]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Combinatorial profile of catalogue entries.
    Analyze {
        path: PathBuf,
        #[arg(long)]
        entry: Option<String>,
    },
    /// Discriminant screen; defaults to the embedded table.
    Screen { path: Option<PathBuf> },
    /// Free / nearly free classification of an entry with coordinates.
    Classify {
        path: PathBuf,
        #[arg(long)]
        entry: Option<String>,
        /// Prime for the modular prefilter.
        #[arg(long)]
        modulus: Option<u64>,
        /// Highest degree scanned for relation generators.
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Reproduce the embedded table with mismatch flags.
    Table,
}

struct Failure(u8, String);

fn load(path: &Path) -> Result<CatalogueFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(1, format!("{}: {e}", path.display())))?;
    catalogue::parse(&text).map_err(|e| Failure(1, format!("{}: {e}", path.display())))
}

fn select<'a>(file: &'a CatalogueFile, entry: Option<&str>) -> Result<Vec<&'a CatalogueEntry>, Failure> {
    match entry {
        Some(name) => Ok(vec![file.lookup(name).map_err(|e| Failure(1, e.to_string()))?]),
        None => Ok(file.entries.iter().collect()),
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let format = cli.format;
    match cli.command {
        Command::Analyze { path, entry } => {
            let file = load(&path)?;
            let records: Vec<Record> = select(&file, entry.as_deref())?
                .into_iter()
                .map(|e| Record::profile(&e.name, &CombinatorialProfile::from_tvector(e.d, e.t.clone())))
                .collect();
            Ok(report::render_profiles(&records, format))
        }
        Command::Screen { path } => {
            let file = match path {
                Some(p) => load(&p)?,
                None => catalogue::embedded_table(),
            };
            let records: Vec<Record> =
                file.entries.iter().map(|e| Record::screened(&e.name, &CombinatorialProfile::from_tvector(e.d, e.t.clone()))).collect();
            Ok(report::render_screen(&records, format))
        }
        Command::Classify { path, entry, modulus, max_degree } => {
            let file = load(&path)?;
            let chosen = select(&file, entry.as_deref())?;
            let [e] = chosen[..] else {
                return Err(Failure(1, format!("{} has {} entries; choose one with --entry", path.display(), chosen.len())));
            };
            let arr = e.realization.as_ref().ok_or_else(|| Failure(2, format!("entry {} has no coordinates", e.name)))?;
            let c = classify_with(arr, &ClassifyOptions { modulus, max_degree }).map_err(|err| match err {
                ClassifyError::InternalInconsistency { .. } => Failure(3, err.to_string()),
                other => Failure(1, other.to_string()),
            })?;
            Ok(report::render_classification(&c, format))
        }
        Command::Table => {
            let report = reproduce_table(&catalogue::embedded_table().entries);
            let out = report::render_table(&report, format);
            if report.unexpected_mismatches().next().is_some() {
                print!("{out}");
                let names: Vec<&str> = report.unexpected_mismatches().map(|r| r.name.as_str()).collect();
                return Err(Failure(4, format!("unexpected mismatches: {}", names.join(", "))));
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
