use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::Parser;
use defcoh_cli::env::Command;
use defcoh_cli::{parse_manifest, run, CliError, CommandKind, Options};
use serde_json::{json, Value};

/// Deformation and extension spaces of finite-dimensional algebras and presheaves.
#[derive(Debug, Parser)]
#[command(name = "defcoh", version)]
struct Args {
    /// hochschild, exal, nerve, cech, gs, les, obstruct, diffop, induced, selftest or all.
    command: String,

    /// Manifest file; optional for selftest.
    input: Option<PathBuf>,

    /// Highest cohomological degree (default: the manifest cap, else 3).
    #[arg(long)]
    degree: Option<usize>,

    /// Order cap for differential operators (default: the manifest cap, else 2 dim^2).
    #[arg(long)]
    order: Option<usize>,

    /// Include cocycle representatives in the report.
    #[arg(long)]
    emit_representatives: bool,

    /// Write the report here instead of standard output.
    #[arg(long)]
    report: Option<PathBuf>,

    /// Seed for randomized suites.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

fn execute(args: &Args) -> Result<(Value, bool), CliError> {
    let wanted = match args.command.as_str() {
        "all" => None,
        c => Some(CommandKind::parse(c).ok_or_else(|| CliError::Usage(format!("unknown command `{c}`")))?),
    };
    let mut opts = Options { degree: args.degree, order: args.order, size: None, representatives: args.emit_representatives, seed: args.seed };
    let Some(path) = &args.input else {
        if wanted == Some(CommandKind::Selftest) {
            let out = run::selftest(args.seed);
            return Ok((json!({ "results": [out.report] }), out.passed));
        }
        return Err(CliError::Usage("a manifest path is required".into()));
    };
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    let (manifest, env) = parse_manifest(&text)?;
    opts.degree = opts.degree.or(manifest.caps.degree);
    opts.order = opts.order.or(manifest.caps.order);
    opts.size = manifest.caps.size;
    let mut commands: Vec<Command> = env.commands.iter().filter(|c| wanted.is_none_or(|w| w == c.kind)).cloned().collect();
    if commands.is_empty() {
        match wanted {
            Some(CommandKind::Selftest) => commands.push(Command { line: 0, kind: CommandKind::Selftest, args: Vec::new() }),
            Some(w) => return Err(CliError::Usage(format!("the manifest has no `command {w}` line"))),
            None => return Err(CliError::Usage("the manifest has no commands".into())),
        }
    }
    let mut results = Vec::with_capacity(commands.len());
    let mut passed = true;
    for c in &commands {
        let out = run::run(&env, c, &opts).map_err(|source| CliError::Compute { line: c.line, source })?;
        passed &= out.passed;
        results.push(out.report);
    }
    Ok((json!({ "field": manifest.field.to_string(), "results": results }), passed))
}

fn main() -> anyhow::Result<ExitCode> {
    let args = Args::parse();
    let start = Instant::now();
    let (mut report, passed) = match execute(&args) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("defcoh: {e}");
            return Ok(ExitCode::from(e.exit_code() as u8));
        }
    };
    report["wall_time_ms"] = json!(start.elapsed().as_millis() as u64);
    let text = serde_json::to_string_pretty(&report)? + "\n";
    match &args.report {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    if passed {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("defcoh: {}", CliError::Checks("see report".into()));
        Ok(ExitCode::from(CliError::Checks(String::new()).exit_code() as u8))
    }
}
