mod commands;
mod config;
mod output;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

/// Experiment runner for the egalitarian multi-user bandit simulator.
#[derive(Parser, Debug)]
#[command(name = "egalbandit", version, about)]
struct Cli {
    /// Flat key=value config file; command-line flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run seeded episodes on one instance and write per-run plus aggregate
    /// regret curves.
    Simulate(SimulateArgs),
    /// Replicate a simulation for several user counts and emit one aggregate
    /// row per U.
    SweepUsers(SweepArgs),
    /// Evaluate the regret bounds for one (K, U, T) cell as a CSV row.
    Bounds(BoundsArgs),
    /// Build an empirical instance from a trace/ratings CSV, then simulate
    /// on it.
    IngestRun(IngestArgs),
}

#[derive(Args, Debug, Clone)]
struct CommonArgs {
    /// Number of arms.
    #[arg(long = "K", value_name = "COUNT")]
    num_arms: Option<String>,
    /// Number of users; sweep-users takes a comma-separated list.
    #[arg(long = "U", value_name = "COUNT[,COUNT...]")]
    users: Vec<String>,
    /// Horizon in time steps.
    #[arg(long = "T", value_name = "STEPS")]
    horizon: Option<String>,
    /// Number of independent runs.
    #[arg(long)]
    runs: Option<String>,
    /// Base seed; run i uses seed + i.
    #[arg(long)]
    seed: Option<String>,
    /// Assignment policy: egalucb, oracle or random.
    #[arg(long)]
    policy: Option<String>,
    /// Output path (a stem for commands that write several files).
    #[arg(long)]
    out: Option<String>,
    /// Round T down to the nearest multiple of U instead of rejecting it.
    #[arg(long)]
    round_horizon: bool,
    /// Instance file (CSV with header arm_id,kind,p1,p2).
    #[arg(long)]
    instance: Option<String>,
    /// Instance generator token; repeatable. One family out of
    /// gaussian:STD, bernoulli, step:HI,LO or hard, optionally combined with
    /// uniform-means:LO,HI,SEED.
    #[arg(long = "gen")]
    gen: Vec<String>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Also fit a log-log slope of final mean regret against U.
    #[arg(long)]
    fit_slope: bool,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Minimum non-zero gap input for the problem-dependent bound.
    #[arg(long)]
    delta_min: Option<String>,
    /// Maximum gap input for the problem-dependent bound.
    #[arg(long)]
    delta_max: Option<String>,
}

#[derive(Args, Debug)]
struct IngestArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Trace/ratings CSV to ingest.
    #[arg(long)]
    data: Option<String>,
    /// Column holding the grouping id.
    #[arg(long = "id-col")]
    id_column: Option<String>,
    /// Column holding the reward value.
    #[arg(long = "value-col")]
    value_column: Option<String>,
    /// Negate values (for traces where lower is better).
    #[arg(long)]
    negate: bool,
    /// Number of ids to keep as arms.
    #[arg(long = "top-k")]
    top_k: Option<String>,
    /// Read at most this many data rows.
    #[arg(long = "max-rows")]
    max_rows: Option<String>,
    /// Arm selection: top-count or random:SEED.
    #[arg(long)]
    select: Option<String>,
}

fn init_thread_pool() -> Result<()> {
    if let Ok(raw) = std::env::var("EGALBANDIT_THREADS") {
        let threads: usize = raw
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .with_context(|| format!("invalid EGALBANDIT_THREADS value `{raw}`"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("cannot configure the thread pool")?;
    }
    Ok(())
}

fn run() -> Result<()> {
    let cli = Cli::parse();
    init_thread_pool()?;
    let file = match &cli.config {
        Some(path) => config::parse_config_file(path)?,
        None => BTreeMap::new(),
    };
    match cli.command {
        Command::Simulate(args) => commands::simulate(args, file),
        Command::SweepUsers(args) => commands::sweep_users(args, file),
        Command::Bounds(args) => commands::bounds(args, file),
        Command::IngestRun(args) => commands::ingest_run(args, file),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("egalbandit: {err:#}");
            ExitCode::FAILURE
        }
    }
}

/// `<stem>_<suffix>` next to the stem.
fn with_suffix(stem: &std::path::Path, suffix: &str) -> PathBuf {
    let mut name = stem.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

/// One user count exactly; sweeps take lists, the other commands do not.
fn single_user_count(users: &[usize]) -> Result<usize> {
    match users {
        [one] => Ok(*one),
        [] => bail!("missing required option --U"),
        _ => bail!("this command takes a single --U value"),
    }
}
