use clap::{Parser, Subcommand, ValueEnum};
use secnet::experiments::{figures, run, Command, Format, RunConfig, Table};
use secnet::{Result, SecnetError};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "secnet", version, about = "Connection, secrecy outage and secrecy throughput of two-tier networks with FD jamming receivers")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Flat key-value config file (TOML syntax).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,

    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Monte Carlo trials per point.
    #[arg(long, global = true)]
    trials: Option<u64>,

    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Start from the parameter set of figure N before applying --config.
    #[arg(long, global = true, value_name = "N")]
    preset: Option<u32>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Closed forms, bounds and approximations.
    Analytic,
    /// Closed forms plus Monte Carlo estimates with confidence half-widths.
    Simulate,
    /// Optimal FD-tier density and maximum secrecy throughput.
    Optimize,
    /// Closed forms and throughput along the configured sweep axis.
    Sweep,
    /// Curve data of figure N (2 to 9).
    Figure {
        n: u32,
    },
    /// List the figure presets.
    Figures,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

fn load(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match cli.preset {
        Some(n) => figures::preset(n)?,
        None => RunConfig::default(),
    };
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SecnetError::Config(format!("cannot read {}: {e}", path.display())))?;
        cfg.apply_text(&text)
            .map_err(|e| match e {
                SecnetError::Config(m) => SecnetError::Config(format!("{}: {m}", path.display())),
                other => other,
            })?;
    }
    if let Some(seed) = cli.seed {
        cfg.sim.seed = seed;
    }
    if let Some(trials) = cli.trials {
        cfg.sim.trials = trials;
    }
    Ok(cfg)
}

fn execute(cli: &Cli) -> Result<Option<Vec<u8>>> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| SecnetError::Config(format!("--threads: {e}")))?;
    }
    let cfg = load(cli)?;
    let table: Table = match cli.command {
        Cmd::Analytic => run(Command::Analytic, &cfg)?,
        Cmd::Simulate => run(Command::Simulate, &cfg)?,
        Cmd::Optimize => run(Command::Optimize, &cfg)?,
        Cmd::Sweep => run(Command::Sweep, &cfg)?,
        Cmd::Figure { n } => {
            figures::preset(n)?;
            figures::figure(n, &cfg.sim)?
        }
        Cmd::Figures => {
            let list: String =
                figures::FIGURES.filter_map(|n| figures::describe(n).map(|d| format!("{n}: {d}\n"))).collect();
            return Ok(Some(list.into_bytes()));
        }
    };
    let format = match cli.format {
        OutFormat::Csv => Format::Csv,
        OutFormat::Json => Format::Json,
    };
    Ok(Some(table.encode(format)?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // the table is complete before anything is written, so a failed run leaves no file
    let result = execute(&cli).and_then(|bytes| {
        let bytes = bytes.unwrap_or_default();
        match &cli.out {
            Some(path) => std::fs::write(path, &bytes).map_err(SecnetError::from),
            None => {
                use std::io::Write;
                std::io::stdout().write_all(&bytes).map_err(SecnetError::from)
            }
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
