//! `fusionring`: batch front end for the fusion-ring engine.
//!
//! Exit codes: 0 when the report contains no failure, 1 when it contains a
//! failed check, a freeness violation or an obstruction, 2 on input or usage
//! errors (with a one-line diagnostic on stderr).

mod render;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fusionring::oracles::{cyclic_group_ring, proof_fragment_ring, so3_truncated};
use fusionring::{
    char_table_ring, check_axioms, check_stabilizer_rule, enumerate_rings, ladder_build,
    parse_character_table, parse_spec, ring_freeness_obstructions, theorem_verdict, write_spec,
    CheckReport, FusionRing, RingError, SearchOptions, TerminalStatus,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeedOrder {
    Canonical,
}

#[derive(Debug, Parser)]
#[command(
    name = "fusionring",
    version,
    about = "Exact fusion-ring checks and decision procedures"
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Iteration order for seeds and candidates (only `canonical`).
    #[arg(long, global = true, value_enum, default_value = "canonical")]
    seed_order: SeedOrder,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the ring axioms and the stabilizer law on every basic element.
    Check { file: PathBuf },
    /// Apply the degree-3 dichotomy and report the verdict.
    Verdict { file: PathBuf },
    /// Build the ladder from a self-dual degree-3 element.
    Ladder {
        file: PathBuf,
        #[arg(long)]
        x3: String,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Enumerate dual-closed standard subrings and check freeness.
    Subrings { file: PathBuf },
    /// Enumerate complete rings with the given degrees.
    Search {
        /// Comma-separated degrees, e.g. `1,1,1,3`.
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u64>,
        #[arg(long, default_value_t = 2)]
        max_mult: u64,
        /// Write one spec file per ring into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Write a reference ring in spec format to standard output.
    Gen {
        #[command(subcommand)]
        which: Generator,
    },
}

#[derive(Debug, Subcommand)]
enum Generator {
    /// Group ring of the cyclic group of order n
    Cyclic { n: usize },
    /// Odd-degree SO(3) representation ring, truncated at an odd degree
    So3 { max_degree: u64 },
    /// Partial ring with five grouplikes, degree 3 translates and a degree 5 element
    Fragment,
    /// Character ring of a table file ("-" reads standard input)
    Chartable { file: PathBuf },
}

/// An input or usage problem; reported on one line with exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

struct Outcome {
    text: String,
    json: serde_json::Value,
    violation: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", usage_line(&e.to_string()));
            return ExitCode::from(2);
        }
    };
    if let Err(InputError(msg)) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(outcome) => {
            let body = match cli.format {
                Format::Text => outcome.text,
                Format::Json => {
                    let mut s =
                        serde_json::to_string_pretty(&outcome.json).expect("reports serialize");
                    s.push('\n');
                    s
                }
            };
            let mut out = io::stdout().lock();
            if out
                .write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            ExitCode::from(u8::from(outcome.violation))
        }
        Err(InputError(msg)) => {
            eprintln!("error: {}", msg.lines().next().unwrap_or(""));
            ExitCode::from(2)
        }
    }
}

/// Folds clap's multi-line error into one line that still names the
/// offending argument.
fn usage_line(rendered: &str) -> String {
    let mut lines = rendered.lines().map(str::trim).filter(|l| !l.is_empty());
    let first = lines.next().unwrap_or("error: invalid usage").to_string();
    match lines.next() {
        Some(next) if first.ends_with(':') => format!("{first} {next}"),
        _ => first,
    }
}

fn configure_threads() -> Result<(), InputError> {
    let Ok(value) = std::env::var("FUSIONRING_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            InputError(format!(
                "FUSIONRING_THREADS must be a positive integer, got `{value}`"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()?;
    Ok(())
}

fn read_input(path: &Path) -> Result<String, InputError> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| InputError(format!("cannot read standard input: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))
}

fn load_ring(path: &Path) -> Result<FusionRing, InputError> {
    let text = read_input(path)?;
    parse_spec(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn label_index(ring: &FusionRing, label: &str, flag: &str) -> Result<usize, InputError> {
    ring.index_of(label).map_err(|_| {
        InputError(format!(
            "{flag}: no basis element `{label}` in {}",
            ring.name()
        ))
    })
}

fn run(cli: &Cli) -> Result<Outcome, InputError> {
    match &cli.command {
        Command::Check { file } => check(&load_ring(file)?),
        Command::Verdict { file } => verdict(&load_ring(file)?),
        Command::Ladder { file, x3, depth } => {
            let ring = load_ring(file)?;
            let x = label_index(&ring, x3, "--x3")?;
            if *depth == Some(0) {
                return Err(InputError("--depth must be at least 1".into()));
            }
            let cert = ladder_build(&ring, x, depth.unwrap_or(usize::MAX))?;
            let violation = matches!(cert.terminal_status, TerminalStatus::FailureBranch { .. });
            Ok(Outcome {
                text: render::certificate(&cert),
                json: serde_json::to_value(&cert)?,
                violation,
            })
        }
        Command::Subrings { file } => {
            let ring = load_ring(file)?;
            let (subrings, violations) = ring_freeness_obstructions(&ring)?;
            #[derive(Serialize)]
            struct Report<'a> {
                ring: &'a str,
                subrings: &'a [fusionring::StandardSubring],
                violations: &'a [fusionring::FreenessViolation],
            }
            let report = Report {
                ring: ring.name(),
                subrings: &subrings,
                violations: &violations,
            };
            Ok(Outcome {
                text: render::subrings(&ring, &subrings, &violations),
                json: serde_json::to_value(&report)?,
                violation: !violations.is_empty(),
            })
        }
        Command::Search {
            degrees,
            max_mult,
            out_dir,
        } => search(degrees, *max_mult, out_dir.as_deref()),
        Command::Gen { which } => {
            let ring = match which {
                Generator::Cyclic { n } => {
                    if *n == 0 {
                        return Err(InputError("gen cyclic: n must be positive".into()));
                    }
                    cyclic_group_ring(*n)
                }
                Generator::So3 { max_degree } => {
                    if *max_degree < 3 || max_degree % 2 == 0 {
                        return Err(InputError(
                            "gen so3: max degree must be odd and at least 3".into(),
                        ));
                    }
                    so3_truncated(*max_degree)
                }
                Generator::Fragment => proof_fragment_ring(),
                Generator::Chartable { file } => {
                    let table = parse_character_table(&read_input(file)?)
                        .map_err(|e| InputError(format!("{}: {e}", file.display())))?;
                    char_table_ring(&table)?
                }
            };
            let spec = write_spec(&ring);
            Ok(Outcome {
                json: serde_json::json!({ "ring": ring.name(), "spec": spec }),
                text: spec,
                violation: false,
            })
        }
    }
}

#[derive(Serialize)]
struct StabilizerEntry {
    element: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    skipped: Option<String>,
}

fn check(ring: &FusionRing) -> Result<Outcome, InputError> {
    let axioms = check_axioms(ring);
    let mut stabilizers = Vec::with_capacity(ring.rank());
    for x in 0..ring.rank() {
        let element = ring.label(x).to_string();
        match check_stabilizer_rule(ring, x) {
            Ok(report) => stabilizers.push(StabilizerEntry {
                element,
                report: Some(report),
                skipped: None,
            }),
            Err(e @ RingError::UnknownProduct { .. }) => stabilizers.push(StabilizerEntry {
                element,
                report: None,
                skipped: Some(e.to_string()),
            }),
            Err(e) => return Err(e.into()),
        }
    }
    let violation = axioms.has_failures()
        || stabilizers
            .iter()
            .any(|s| s.report.as_ref().is_some_and(CheckReport::has_failures));
    let json = serde_json::json!({
        "ring": ring.name(),
        "axioms": axioms,
        "stabilizers": stabilizers,
        "ok": !violation,
    });
    Ok(Outcome {
        text: render::check(ring, &axioms, &stabilizers, violation),
        json,
        violation,
    })
}

fn verdict(ring: &FusionRing) -> Result<Outcome, InputError> {
    let v = theorem_verdict(ring)?;
    let json = serde_json::json!({ "ring": ring.name(), "result": v });
    Ok(Outcome {
        text: render::verdict(ring, &v),
        violation: v.is_obstruction(),
        json,
    })
}

fn search(degrees: &[u64], max_mult: u64, out_dir: Option<&Path>) -> Result<Outcome, InputError> {
    let options = SearchOptions {
        max_mult,
        ..SearchOptions::default()
    };
    let rings =
        enumerate_rings(degrees, &options).map_err(|e| InputError(format!("--degrees: {e}")))?;
    let specs: Vec<(String, String)> = rings
        .iter()
        .map(|r| (r.name().to_string(), write_spec(r)))
        .collect();
    let mut text = String::new();
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir)
            .map_err(|e| InputError(format!("--out-dir {}: {e}", dir.display())))?;
        for (name, spec) in &specs {
            let path = dir.join(format!("{name}.ring"));
            fs::write(&path, spec)
                .map_err(|e| InputError(format!("--out-dir {}: {e}", path.display())))?;
            text.push_str(&format!("wrote {}\n", path.display()));
        }
    } else {
        for (i, (_, spec)) in specs.iter().enumerate() {
            if i > 0 {
                text.push('\n');
            }
            text.push_str(spec);
        }
    }
    text.push_str(&format!("# {} ring(s) found\n", specs.len()));
    let json = serde_json::json!({
        "degrees": degrees,
        "max_mult": max_mult,
        "rings": specs.iter().map(|(name, spec)| serde_json::json!({ "name": name, "spec": spec })).collect::<Vec<_>>(),
    });
    Ok(Outcome {
        text,
        json,
        violation: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn degrees_split_on_commas() {
        let cli = Cli::try_parse_from(["fusionring", "search", "--degrees", "1,1,1,3"]).unwrap();
        let Command::Search {
            degrees, max_mult, ..
        } = cli.command
        else {
            panic!()
        };
        assert_eq!(degrees, [1, 1, 1, 3]);
        assert_eq!(max_mult, 2);
    }
}
