use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

use tenseq::cutelim::{pipeline_with, split_cuts, CutElimError};
use tenseq::kernel::{check, read_derivation, write_derivation, CalculusVariant, Derivation, Violation};
use tenseq::search::{prove, SearchBudget, SearchError};
use tenseq::syntax::{parse_formula, parse_sequent};
use tenseq::transform::{from_dagger, from_ddagger, to_dagger};

#[derive(Parser)]
#[command(name = "tenseq", version, about = "Proof checking and cut elimination for a tense sequent calculus")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse formulas or sequents (one per line) and print them canonically.
    Parse {
        /// Input file, `-` for standard input.
        input: String,
    },
    /// Check a derivation file.
    Check {
        #[arg(long, default_value = "base")]
        calculus: CalculusVariant,
        input: String,
    },
    /// Eliminate cuts from a Base derivation.
    Eliminate {
        /// Write the reduction trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Maximal number of reduction steps (default: computed from the input).
        #[arg(long)]
        fuel: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        input: String,
    },
    /// Search for a cut-free derivation of a sequent.
    Prove {
        #[arg(long, default_value = "dagger")]
        calculus: CalculusVariant,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        /// Per-branch cap on backward uses of each structural rule.
        #[arg(long, default_value_t = 3)]
        max_structure: usize,
        #[arg(long)]
        no_loop_check: bool,
        #[arg(long, default_value_t = 2_000_000)]
        max_nodes: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// The sequent, or `-` to read it from standard input.
        sequent: String,
    },
    /// Translate a derivation between calculus variants.
    Translate {
        #[arg(long)]
        to: CalculusVariant,
        #[arg(short, long)]
        output: Option<PathBuf>,
        input: String,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Logical(String),
    #[error("{0}")]
    Resource(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Logical(_) => 1,
            CliError::Input(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read_input(input: &str) -> Result<String> {
    let mut text = String::new();
    if input == "-" {
        io::stdin().read_to_string(&mut text).map_err(|e| CliError::Input(format!("stdin: {e}")))?;
    } else {
        text = fs::read_to_string(input).map_err(|e| CliError::Input(format!("{input}: {e}")))?;
    }
    Ok(text)
}

fn emit(output: Option<&FsPath>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Input(format!("stdout: {e}"))),
    }
}

fn load(input: &str) -> Result<Derivation> {
    let text = read_input(input)?;
    read_derivation(&text).map_err(|e| CliError::Input(format!("{input}: {e}")))
}

fn violations(vs: &[Violation]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\n")
}

/// 1-based line and column of a byte offset.
fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

fn cmd_parse(input: &str) -> Result<()> {
    let text = read_input(input)?;
    let mut out = String::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let parsed = if line.contains("=>") {
            parse_sequent(line).map(|s| s.to_string())
        } else {
            parse_formula(line).map(|f| f.to_string())
        };
        match parsed {
            Ok(s) => {
                out.push_str(&s);
                out.push('\n');
            }
            Err(e) => {
                let (_, col) = position(line, e.offset);
                return Err(CliError::Input(format!("{input}:{}:{col}: {}", n + 1, e.message)));
            }
        }
    }
    emit(None, &out)
}

fn cmd_check(input: &str, variant: CalculusVariant) -> Result<()> {
    let d = load(input)?;
    check(&d, variant).map_err(|vs| CliError::Logical(violations(&vs)))?;
    println!("ok");
    Ok(())
}

fn cmd_eliminate(input: &str, fuel: Option<usize>, trace: Option<&FsPath>, output: Option<&FsPath>) -> Result<()> {
    let d = load(input)?;
    check(&d, CalculusVariant::Base)
        .map_err(|vs| CliError::Logical(format!("input does not check under base:\n{}", violations(&vs))))?;
    let write_trace = |t: &tenseq::cutelim::ReductionTrace| -> Result<()> {
        match trace {
            Some(p) => fs::write(p, t.to_string()).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
            None => Ok(()),
        }
    };
    match pipeline_with(&d, fuel) {
        Ok((out, t)) => {
            write_trace(&t)?;
            if !out.is_cut_free() {
                return Err(CliError::Logical("output still contains cuts".into()));
            }
            check(&out, CalculusVariant::Dagger)
                .map_err(|vs| CliError::Logical(format!("output does not check:\n{}", violations(&vs))))?;
            emit(output, &write_derivation(&out))
        }
        Err(CutElimError::FuelExhausted { trace: t, .. }) => {
            write_trace(&t)?;
            if trace.is_none() {
                eprint!("{t}");
            }
            Err(CliError::Resource(format!("fuel exhausted after {} steps", t.steps.len())))
        }
        Err(e) => Err(CliError::Logical(e.to_string())),
    }
}

fn cmd_prove(sequent: &str, variant: CalculusVariant, budget: SearchBudget, output: Option<&FsPath>) -> Result<()> {
    let text = if sequent == "-" { read_input("-")? } else { sequent.to_string() };
    let goal = parse_sequent(text.trim()).map_err(|e| CliError::Input(e.to_string()))?;
    match prove(&goal, variant, &budget) {
        Ok(d) => emit(output, &write_derivation(&d)),
        Err(SearchError::NotFound) => {
            println!("not-found");
            Err(CliError::Logical(format!("no derivation of {goal} within depth {}", budget.max_depth)))
        }
        Err(e) => Err(CliError::Input(e.to_string())),
    }
}

fn translate(d: &Derivation, from: CalculusVariant, to: CalculusVariant) -> Result<Derivation> {
    use CalculusVariant::*;
    let err = |e: tenseq::transform::TransformError| CliError::Logical(e.to_string());
    Ok(match (from, to) {
        (a, b) if a == b => d.clone(),
        (Base, Dagger) => to_dagger(d).map_err(err)?,
        (Base, DoubleDagger) => split_cuts(&to_dagger(d).map_err(err)?),
        (Dagger, Base) => from_dagger(d),
        (Dagger, DoubleDagger) => split_cuts(d),
        (DoubleDagger, Dagger) => from_ddagger(d).map_err(err)?,
        (DoubleDagger, Base) => from_dagger(&from_ddagger(d).map_err(err)?),
        _ => unreachable!("all variant pairs covered"),
    })
}

fn cmd_translate(input: &str, to: CalculusVariant, output: Option<&FsPath>) -> Result<()> {
    use CalculusVariant::*;
    let d = load(input)?;
    let from = [to, Base, Dagger, DoubleDagger].into_iter().find(|&v| check(&d, v).is_ok()).ok_or_else(|| {
        let vs = check(&d, Dagger).err().unwrap_or_default();
        CliError::Logical(format!("input checks under no calculus:\n{}", violations(&vs)))
    })?;
    let out = translate(&d, from, to)?;
    check(&out, to).map_err(|vs| CliError::Logical(format!("translation does not check:\n{}", violations(&vs))))?;
    emit(output, &write_derivation(&out))
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Parse { input } => cmd_parse(&input),
        Cmd::Check { calculus, input } => cmd_check(&input, calculus),
        Cmd::Eliminate { trace, fuel, output, input } => {
            cmd_eliminate(&input, fuel, trace.as_deref(), output.as_deref())
        }
        Cmd::Prove { calculus, depth, max_structure, no_loop_check, max_nodes, output, sequent } => {
            let budget = SearchBudget {
                max_depth: depth,
                max_structure_size: max_structure,
                loop_check: !no_loop_check,
                max_nodes,
            };
            cmd_prove(&sequent, calculus, budget, output.as_deref())
        }
        Cmd::Translate { to, output, input } => cmd_translate(&input, to, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tenseq: {e}");
            ExitCode::from(e.code())
        }
    }
}
