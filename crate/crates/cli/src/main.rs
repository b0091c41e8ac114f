use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use cryst_core::normalizer::Backend;
use cryst_core::{NormalizerConfig, DEFAULT_MAX_ITER, DEFAULT_MAX_ORDER};
use cryst_cli::commands::{self, exit};
use cryst_cli::files::{parse_rational, IterationRecord};
use num_rational::BigRational;

#[derive(Parser)]
#[command(name = "cryst")]
#[command(about = "Exact analysis of crystallographic groups: centers, H^1, normalizers and outer automorphisms")]
#[command(version)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Normalizer backend: form | brute | both
    #[arg(long, global = true, default_value = "form")]
    backend: Backend,

    /// Entry bound for the brute-force normalizer
    #[arg(long, global = true, default_value_t = 3)]
    bound: u32,

    /// Largest finite group the closure may build
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,

    /// Diagonal bound factor for candidate forms (integer or p/q)
    #[arg(long, global = true, default_value = "4", value_parser = parse_factor)]
    diag_bound_factor: BigRational,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Center, H^1, normalizer, affine normalizer and |Out| of a group
    Analyze {
        /// `gamma1`, `gamma2`, a product like `gamma1^2*gamma2`, or a group file
        group: String,
    },
    /// Iterate the affine normalizer until it stabilizes
    Iterate {
        group: String,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
        /// Also write the final group file here
        #[arg(long)]
        group_out: Option<PathBuf>,
    },
    /// Build a group of dimension n >= 2 with trivial center and trivial Out
    Construct {
        #[arg(long = "dim")]
        dim: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
        #[arg(long)]
        group_out: Option<PathBuf>,
    },
    /// Check the two building-block groups and the first products
    VerifyExamples {
        /// Replace gamma1 by a wrong group (exercises the failure path)
        #[arg(long, hide = true)]
        corrupt_builtin: bool,
    },
}

fn parse_factor(s: &str) -> Result<BigRational, String> {
    match parse_rational(s) {
        Some(x) if x > BigRational::from_integer(0.into()) => Ok(x),
        _ => Err(format!("`{s}` is not a positive rational")),
    }
}

impl GlobalOpts {
    fn config(&self) -> NormalizerConfig {
        NormalizerConfig {
            backend: self.backend,
            entry_bound: self.bound,
            max_order: self.max_order,
            diag_bound_factor: self.diag_bound_factor.clone(),
        }
    }
}

/// Writes to stdout, treating a closed pipe as success.
fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit_iteration(record: &IterationRecord, json: bool, group_out: Option<&PathBuf>) -> Result<()> {
    if json {
        emit(&(serde_json::to_string_pretty(record)? + "\n"))?;
    } else {
        emit(&commands::render_iteration(record))?;
        if let Some(g) = &record.group {
            emit(&(g.to_json() + "\n"))?;
        }
    }
    if let (Some(path), Some(g)) = (group_out, &record.group) {
        std::fs::write(path, g.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    let config = cli.opts.config();
    let json = cli.opts.json;
    match cli.command {
        Command::Analyze { group } => {
            let g = commands::load_group(&group, config.max_order)?;
            let report = commands::analyze_group(&g, &config)?;
            if json {
                emit(&(serde_json::to_string_pretty(&report)? + "\n"))?;
            } else {
                emit(&commands::render_report(&report))?;
            }
            Ok(exit::OK)
        }
        Command::Iterate { group, max_iter, group_out } => {
            let g = commands::load_group(&group, config.max_order)?;
            let outcome = commands::iterate_group(&g, max_iter, &config)?;
            emit_iteration(&outcome.record, json, group_out.as_ref())?;
            if outcome.exit_code == exit::MAX_ITER {
                eprintln!("error: no fixed point within {max_iter} iterations");
            }
            Ok(outcome.exit_code)
        }
        Command::Construct { dim, max_iter, group_out } => {
            let outcome = commands::construct(dim, max_iter, &config)?;
            emit_iteration(&outcome.record, json, group_out.as_ref())?;
            if outcome.exit_code == exit::MAX_ITER {
                eprintln!("error: no fixed point within {max_iter} iterations");
            }
            Ok(outcome.exit_code)
        }
        Command::VerifyExamples { corrupt_builtin } => {
            let report = commands::verify_examples(&config, corrupt_builtin);
            if json {
                emit(&(serde_json::to_string_pretty(&report)? + "\n"))?;
            } else {
                emit(&commands::render_verify(&report))?;
            }
            match report.first_failure() {
                None => Ok(exit::OK),
                Some(c) => {
                    eprintln!("error: check failed: {}", c.name);
                    Ok(exit::VERIFY_FAILED)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit::USAGE)
        }
    }
}
