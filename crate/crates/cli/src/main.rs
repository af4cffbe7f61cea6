use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use affcryst_cli::schema::Document;
use affcryst_cli::{cmd_build, cmd_check, cmd_defspace, cmd_realize, parse_grid, BuildKind, CliError, RunOptions};
use clap::{Parser, Subcommand};

/// Exact crystallography checks for affine representations.
#[derive(Parser)]
#[command(name = "affcryst", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Input document; standard input when omitted.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for nonsingularity sampling above the exhaustive cap (default 0x5eed).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Run grid searches on the thread pool.
    #[arg(long, global = true)]
    parallel: bool,
    /// Comma-separated scalars: the three-step parameter grid or the scan values.
    #[arg(long, global = true, allow_hyphen_values = true)]
    grid: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a rep or pcrep document is crystallographic.
    Check,
    /// Construct a representation from a Lie algebra document.
    Build {
        /// two-step, graded, derivation or three-step
        #[arg(long)]
        kind: String,
    },
    /// Canonical product of an abelian rep, or a fixed-locus CSV for a grid document.
    Defspace,
    /// Realize an extension document.
    Realize,
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let text = match &cli.input {
        Some(p) => std::fs::read_to_string(p)?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    let opts = RunOptions {
        seed: cli.seed,
        parallel: cli.parallel,
        grid: cli.grid.as_deref().map(parse_grid).transpose()?,
    };
    Ok(match &cli.command {
        Command::Check => Document::Verdict(cmd_check(&text, &opts)?).to_json(),
        Command::Build { kind } => Document::Build(cmd_build(kind.parse::<BuildKind>()?, &text, &opts)?).to_json(),
        Command::Defspace => cmd_defspace(&text, &opts)?.render(),
        Command::Realize => Document::Realization(cmd_realize(&text, &opts)?).to_json(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        match &cli.output {
            Some(p) => std::fs::write(p, out)?,
            None => std::io::stdout().write_all(out.as_bytes())?,
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("affcryst: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
