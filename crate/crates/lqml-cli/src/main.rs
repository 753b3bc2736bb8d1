//! Command-line front end: check blueprints, assess datasets, export
//! blueprints as RDF, translate match patterns to SPARQL.
//!
//! Diagnostics go to standard error; artifacts (Turtle, SPARQL) go to
//! standard output or `--output`. Exit codes: 0 success, 1 semantic or
//! metric failure, 2 I/O or syntax failure.

use clap::{Parser, Subcommand};
use lqml::engine::assess;
use lqml::lbo::export_blueprints;
use lqml::model::{validate, Blueprint, ExtensionRegistry};
use lqml::ntriples::{NtFileSource, RdfError};
use lqml::observations::observations_turtle;
use lqml::parser::parse_source;
use lqml::sparql::to_sparql;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_SEMANTIC: u8 = 1;
const EXIT_IO: u8 = 2;

/// Timestamps come from the clock unless this variable pins them, which
/// keeps assessment output byte-identical for golden files.
const FIXED_TIMESTAMP_VAR: &str = "LQML_FIXED_TIMESTAMP";

#[derive(Parser)]
#[command(
    name = "lqml",
    version,
    about = "Quality-metric blueprints: check, assess, export, translate"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate blueprint files
    Check {
        /// Blueprint files (.lqm)
        #[arg(required = true)]
        blueprints: Vec<PathBuf>,
    },
    /// Evaluate blueprints over an N-Triples dataset and write observation metadata
    Assess {
        /// Blueprint files, then the dataset file as the last argument
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
        /// Write the observation Turtle here instead of standard output
        #[arg(long)]
        output: Option<PathBuf>,
        /// Dataset identifier recorded in the observations (default: dataset file name)
        #[arg(long = "dataset-id")]
        dataset_id: Option<String>,
    },
    /// Export blueprints as RDF (Turtle)
    Export {
        #[arg(required = true)]
        blueprints: Vec<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Translate blueprint match patterns to SPARQL queries
    #[command(name = "to-sparql")]
    ToSparql {
        #[arg(required = true)]
        blueprints: Vec<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap renders its own message; keep usage problems on exit 2
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { EXIT_IO } else { EXIT_OK });
        }
    };
    let code = match cli.command {
        Command::Check { blueprints } => run_check(&blueprints),
        Command::Assess {
            files,
            output,
            dataset_id,
        } => run_assess(&files, output.as_deref(), dataset_id.as_deref()),
        Command::Export { blueprints, output } => run_export(&blueprints, output.as_deref()),
        Command::ToSparql { blueprints, output } => run_to_sparql(&blueprints, output.as_deref()),
    };
    ExitCode::from(code)
}

/// Parses and validates one file, printing positioned diagnostics.
fn load_file(path: &Path, registry: &ExtensionRegistry) -> Result<Vec<Blueprint>, u8> {
    let source = match fs::read_to_string(path) {
        Ok(source) => source,
        Err(err) => {
            eprintln!("{}: {err}", path.display());
            return Err(EXIT_IO);
        }
    };
    let asts = match parse_source(&source) {
        Ok(asts) => asts,
        Err(err) => {
            let (line, column) = err.position();
            eprintln!("{}:{line}:{column}: {err}", path.display());
            return Err(EXIT_SEMANTIC);
        }
    };
    let mut blueprints = Vec::new();
    let mut failed = false;
    for ast in &asts {
        match validate(ast, registry) {
            Ok(blueprint) => blueprints.push(blueprint),
            Err(err) => {
                eprintln!(
                    "{}:{}:{}: {err}",
                    path.display(),
                    ast.span.start.line,
                    ast.span.start.column
                );
                failed = true;
            }
        }
    }
    if failed {
        return Err(EXIT_SEMANTIC);
    }
    Ok(blueprints)
}

fn load_all(paths: &[PathBuf], registry: &ExtensionRegistry) -> Result<Vec<Blueprint>, u8> {
    let mut blueprints = Vec::new();
    let mut worst = EXIT_OK;
    for path in paths {
        match load_file(path, registry) {
            Ok(mut loaded) => blueprints.append(&mut loaded),
            Err(code) => worst = worst.max(code),
        }
    }
    if worst != EXIT_OK {
        return Err(worst);
    }
    Ok(blueprints)
}

fn run_check(paths: &[PathBuf]) -> u8 {
    let registry = ExtensionRegistry::new();
    let mut worst = EXIT_OK;
    for path in paths {
        match load_file(path, &registry) {
            Ok(blueprints) => {
                let plural = if blueprints.len() == 1 { "" } else { "s" };
                eprintln!(
                    "{}: {} blueprint{plural} OK",
                    path.display(),
                    blueprints.len()
                );
            }
            Err(code) => worst = worst.max(code),
        }
    }
    worst
}

fn run_assess(files: &[PathBuf], output: Option<&Path>, dataset_id: Option<&str>) -> u8 {
    let Some((dataset_path, blueprint_paths)) = files.split_last() else {
        eprintln!("assess needs at least one blueprint file and a dataset file");
        return EXIT_IO;
    };
    if blueprint_paths.is_empty() {
        eprintln!("assess needs at least one blueprint file and a dataset file");
        return EXIT_IO;
    }
    let registry = ExtensionRegistry::new();
    let blueprints = match load_all(blueprint_paths, &registry) {
        Ok(blueprints) => blueprints,
        Err(code) => return code,
    };

    let dataset_id = dataset_id.map(str::to_owned).unwrap_or_else(|| {
        dataset_path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| dataset_path.display().to_string())
    });
    let computed_at =
        std::env::var(FIXED_TIMESTAMP_VAR).unwrap_or_else(|_| lqml::clock::utc_now_iso8601());

    let mut source = match NtFileSource::open(dataset_path) {
        Ok(source) => source,
        Err(err) => {
            eprintln!("{}: {err}", dataset_path.display());
            return EXIT_IO;
        }
    };
    let assessments = match assess(
        &blueprints,
        &mut source,
        &registry,
        &dataset_id,
        &computed_at,
    ) {
        Ok(assessments) => assessments,
        Err(err @ RdfError::Syntax { .. }) => {
            eprintln!("{}: {err}", dataset_path.display());
            return EXIT_IO;
        }
        Err(err) => {
            eprintln!("{}: {err}", dataset_path.display());
            return EXIT_IO;
        }
    };

    let mut failed = false;
    let mut records = Vec::new();
    for assessment in &assessments {
        match &assessment.outcome {
            Ok(record) => {
                eprintln!(
                    "{} = {}",
                    assessment.metric_uri.as_str(),
                    record.value.to_decimal_string()
                );
                records.push(record.clone());
            }
            Err(err) => {
                eprintln!(
                    "{}: error: {err} (blueprint '{}')",
                    assessment.metric_uri.as_str(),
                    assessment.blueprint_name
                );
                failed = true;
            }
        }
    }
    match write_artifact(&observations_turtle(&records), output) {
        Ok(()) => {}
        Err(code) => return code,
    }
    if failed {
        EXIT_SEMANTIC
    } else {
        EXIT_OK
    }
}

fn run_export(paths: &[PathBuf], output: Option<&Path>) -> u8 {
    // Functions may live in the host application; export keeps them.
    let registry = ExtensionRegistry::permissive();
    let blueprints = match load_all(paths, &registry) {
        Ok(blueprints) => blueprints,
        Err(code) => return code,
    };
    let graph = export_blueprints(&blueprints);
    match write_artifact(&graph.to_turtle(), output) {
        Ok(()) => EXIT_OK,
        Err(code) => code,
    }
}

fn run_to_sparql(paths: &[PathBuf], output: Option<&Path>) -> u8 {
    let registry = ExtensionRegistry::permissive();
    let blueprints = match load_all(paths, &registry) {
        Ok(blueprints) => blueprints,
        Err(code) => return code,
    };
    let mut out = String::new();
    let mut failed = false;
    for blueprint in &blueprints {
        match to_sparql(&blueprint.match_expr) {
            Ok(query) => {
                out.push_str(&format!("# blueprint: {}\n{}\n\n", blueprint.name, query));
            }
            Err(err) => {
                eprintln!("blueprint '{}': {err}", blueprint.name);
                failed = true;
            }
        }
    }
    match write_artifact(&out, output) {
        Ok(()) => {
            if failed {
                EXIT_SEMANTIC
            } else {
                EXIT_OK
            }
        }
        Err(code) => code,
    }
}

fn write_artifact(text: &str, output: Option<&Path>) -> Result<(), u8> {
    match output {
        Some(path) => fs::write(path, text).map_err(|err| {
            eprintln!("{}: {err}", path.display());
            EXIT_IO
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|err| {
                eprintln!("stdout: {err}");
                EXIT_IO
            })
        }
    }
}
