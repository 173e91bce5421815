use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use indefinite_theta::harness::{cmd_eval, cmd_split_basis, cmd_transform, cmd_verify, init_threads, parse_z, ProblemInstance, Suite, DEFAULT_BOUND};
use indefinite_theta::Error;

#[derive(Parser)]
#[command(name = "theta", version, about = "Indefinite theta sums, modular transforms and identity checks")]
struct Cli {
    /// Write the JSON result here as well as to stdout.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the cone sum of an instance at Z.
    Eval {
        #[arg(long)]
        instance: PathBuf,
        /// "re,im;re,im;..."
        #[arg(long)]
        z: Option<String>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        radius_max: Option<f64>,
    },
    /// Transformed period matrix, Jacobian factor and eighth root for the instance's g.
    Transform {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Search a split basis for a real symmetric form.
    SplitBasis {
        /// Rows separated by ';', entries by ','.
        #[arg(long)]
        q: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: i64,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        instance: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
}

fn load(path: &PathBuf) -> Result<ProblemInstance, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    ProblemInstance::from_json_str(&text)
}

fn parse_rows(s: &str) -> Result<Vec<Vec<f64>>, Error> {
    s.split(';')
        .map(|row| row.split(',').map(|x| x.trim().parse::<f64>().map_err(|_| Error::Invalid(format!("bad matrix entry {x:?}")))).collect())
        .collect()
}

fn run(cli: &Cli) -> Result<(Value, i32), Error> {
    Ok(match &cli.command {
        Command::Eval { instance, z, tol, radius_max } => {
            let inst = load(instance)?;
            let z = z.as_deref().map(parse_z).transpose()?;
            cmd_eval(&inst, z, *tol, *radius_max)
        }
        Command::Transform { instance } => cmd_transform(&load(instance)?),
        Command::SplitBasis { q, k, bound } => cmd_split_basis(&parse_rows(q)?, *k, *bound),
        Command::Verify { suite, instance, seed, timing } => {
            let suite: Suite = suite.parse()?;
            let inst = instance.as_ref().map(load).transpose()?;
            cmd_verify(inst.as_ref(), suite, *seed, *timing)
        }
    })
}

fn main() -> ExitCode {
    init_threads();
    let cli = Cli::parse();
    let (value, code) = run(&cli).unwrap_or_else(|e| (serde_json::json!({"error": e.to_string(), "exit_code": e.exit_code()}), e.exit_code()));
    let text = serde_json::to_string_pretty(&value).expect("json");
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = writeln!(std::io::stdout(), "{text}");
    if code != 0 {
        if let Some(msg) = value.get("error").and_then(Value::as_str) {
            eprintln!("theta: {msg}");
        }
    }
    if let Some(path) = &cli.json_out {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("theta: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code as u8)
}
