use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use parrep_cli::config::{parse_suites, Format, GroupSource, RunConfig, DEFAULT_MAX_ORDER};
use parrep_cli::{build, export, render, verify, CliError, EXIT_FAIL, EXIT_PASS};

#[derive(Parser)]
#[command(name = "parrep", version, about = "Build and verify partial representation models of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct A_par, H_par, B, {A_par, A_par} and H_glob and print their dimensions.
    Build(Args),
    /// Run verification suites; exits 1 if any check fails.
    Verify(Args),
    /// Write algebras and modules to the directory given by --out.
    Export(Args),
}

#[derive(clap::Args)]
struct Args {
    /// `cyclic:n`, `dihedral:n`, `symmetric:n`, `klein4`, `trivial` or `file:PATH`.
    #[arg(long)]
    group: String,
    /// Comma-separated suite names or `all`.
    #[arg(long, default_value = "all")]
    suites: String,
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
    /// Allow verification above order 4.
    #[arg(long)]
    extended: bool,
    /// `json` or `text`.
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Partial-module JSON file to add to the verification corpus.
    #[arg(long)]
    module: Option<PathBuf>,
}

fn config(a: Args) -> Result<RunConfig, CliError> {
    Ok(RunConfig {
        group: a.group.parse::<GroupSource>().map_err(CliError::Parse)?,
        suites: parse_suites(&a.suites).map_err(CliError::Parse)?,
        max_order: a.max_order,
        extended: a.extended,
        format: a.format.parse::<Format>().map_err(CliError::Parse)?,
        out: a.out,
        module: a.module,
    })
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let (cmd, args) = match cli.command {
        Command::Build(a) => ("build", a),
        Command::Verify(a) => ("verify", a),
        Command::Export(a) => ("export", a),
    };
    let cfg = config(args)?;
    let rep = match cmd {
        "build" => build(&cfg)?,
        "verify" => verify(&cfg)?,
        _ => export(&cfg)?,
    };
    let text = render(&cfg, &rep);
    match (&cfg.out, cmd) {
        (Some(p), "build" | "verify") => std::fs::write(p, &text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
        _ => print!("{text}"),
    }
    Ok(if rep.passed() { EXIT_PASS } else { EXIT_FAIL })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("parrep: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
