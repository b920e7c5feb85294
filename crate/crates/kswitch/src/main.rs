//! Command-line driver: `run` sweeps k over a range with replicated seeded
//! walks and writes traces plus summary tables; `oracle` exhaustively
//! enumerates the constrained graph set of a small instance and reports
//! Markov-graph component counts per k.

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use kswitch::experiment::{
    emit_summary, run_experiment, run_oracle, ConstraintKind, ExperimentConfig, SummaryFormat,
};
use kswitch::observable::Observable;

#[derive(Parser)]
#[command(name = "kswitch", version, about = "Uniform random graph sampling via k-edge switching")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a k-sweep switching experiment on an edge-list input.
    Run(RunArgs),
    /// Exhaustively enumerate the constrained graph set of a small instance
    /// and report Markov component counts for k = 2..=k-max.
    Oracle(OracleArgs),
}

#[derive(Args, Debug, Default)]
struct RunArgs {
    /// Edge-list file: one "u v" pair per line, '#' comments.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Color file for colored-triangle constraints: lines "u C", C in {R,G,B}.
    #[arg(long)]
    colors: Option<PathBuf>,
    /// Treat the input as directed.
    #[arg(long, conflicts_with = "undirected")]
    directed: bool,
    /// Treat the input as undirected.
    #[arg(long)]
    undirected: bool,
    /// Constraint family: none|c0|colored-triangles|degree-corr|triangles|components.
    #[arg(long)]
    constraint: Option<String>,
    /// Smallest switch order (≥ 2).
    #[arg(long, value_name = "A")]
    k_min: Option<usize>,
    /// Largest switch order.
    #[arg(long, value_name = "B")]
    k_max: Option<usize>,
    /// Switching trials per walk.
    #[arg(long, value_name = "N")]
    trials: Option<u64>,
    /// Independent walks per k.
    #[arg(long, value_name = "R")]
    replicates: Option<usize>,
    /// Base seed; walk seeds derive from it deterministically.
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
    /// Comma-separated observables (e.g. directed-triangles,four-paths).
    #[arg(long, value_name = "LIST")]
    obs: Option<String>,
    /// Trials between observable measurements (0 = trials/1000).
    #[arg(long, value_name = "I")]
    interval: Option<u64>,
    /// Output directory for trace_k{K}_r{R}.csv, summary.json, summary.txt.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Relative tolerance for the across-k plateau verdict.
    #[arg(long)]
    plateau_tol: Option<f64>,
    /// key=value config file; explicit flags win over file entries.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OracleArgs {
    /// Edge-list file of the starter instance.
    #[arg(long)]
    input: PathBuf,
    /// Color file (required for colored-triangle constraints).
    #[arg(long)]
    colors: Option<PathBuf>,
    #[arg(long, conflicts_with = "undirected")]
    directed: bool,
    #[arg(long)]
    undirected: bool,
    /// Constraint family name.
    #[arg(long)]
    constraint: String,
    /// Largest switch order to analyze (capped at M).
    #[arg(long, value_name = "B", default_value_t = 4)]
    k_max: usize,
    /// Directory for DOT exports of each Markov graph.
    #[arg(long, value_name = "DIR")]
    dot: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Oracle(args) => cmd_oracle(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn parse_config_file(path: &PathBuf) -> Result<HashMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config file {}", path.display()))?;
    let mut map = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("config line {} is not key=value: {raw}", lineno + 1))?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn parse_observables(list: &str) -> Result<Vec<Observable>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|name| {
            Observable::parse(name).ok_or_else(|| {
                anyhow!(
                    "unknown observable '{name}' (available: {})",
                    Observable::ALL.map(|o| o.name()).join(", ")
                )
            })
        })
        .collect()
}

fn parse_constraint(name: &str) -> Result<ConstraintKind> {
    ConstraintKind::parse(name).ok_or_else(|| {
        anyhow!("unknown constraint '{name}' (available: none, c0, colored-triangles, degree-corr, triangles, components)")
    })
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let file = match &args.config {
        Some(path) => parse_config_file(path)?,
        None => HashMap::new(),
    };
    // flags win; fall back to config file entries, then defaults
    let from_file = |key: &str| file.get(key).cloned();
    let input = args
        .input
        .or_else(|| from_file("input").map(PathBuf::from))
        .ok_or_else(|| anyhow!("--input is required (flag or config file)"))?;
    let colors = args.colors.or_else(|| from_file("colors").map(PathBuf::from));
    let directed = if args.directed {
        true
    } else if args.undirected {
        false
    } else {
        match from_file("directed").as_deref() {
            Some("true") => true,
            Some("false") => false,
            Some(other) => bail!("config 'directed' must be true or false, got {other}"),
            None => bail!("one of --directed or --undirected is required"),
        }
    };
    let constraint_name = args
        .constraint
        .or_else(|| from_file("constraint"))
        .ok_or_else(|| anyhow!("--constraint is required"))?;
    let file_num = |key: &str| -> Result<Option<u64>> {
        match from_file(key) {
            Some(s) => Ok(Some(s.parse::<u64>().with_context(|| format!("parsing {key}"))?)),
            None => Ok(None),
        }
    };
    let k_min = args.k_min.or(file_num("k-min")?.map(|v| v as usize)).unwrap_or(2);
    let k_max = args
        .k_max
        .or(file_num("k-max")?.map(|v| v as usize))
        .unwrap_or(k_min.max(4));
    let n_trials = args.trials.or(file_num("trials")?).unwrap_or(100_000);
    let replicates = args
        .replicates
        .or(file_num("replicates")?.map(|v| v as usize))
        .unwrap_or(1);
    let seed = args.seed.or(file_num("seed")?).unwrap_or(1);
    let interval = args.interval.or(file_num("interval")?).unwrap_or(0);
    let obs_list = args
        .obs
        .or_else(|| from_file("obs"))
        .ok_or_else(|| anyhow!("--obs is required (comma-separated list)"))?;
    let out = args.out.or_else(|| from_file("out").map(PathBuf::from));
    let plateau_tol = match args.plateau_tol {
        Some(v) => v,
        None => match from_file("plateau-tol") {
            Some(s) => s.parse::<f64>().context("parsing plateau-tol")?,
            None => 0.02,
        },
    };

    let cfg = ExperimentConfig {
        input_path: input,
        colors_path: colors,
        directed,
        constraint: parse_constraint(&constraint_name)?,
        k_min,
        k_max,
        n_trials,
        replicates,
        seed,
        observables: parse_observables(&obs_list)?,
        observation_interval: interval,
        output_dir: out.clone(),
        plateau_tolerance: plateau_tol,
    };
    let table = run_experiment(&cfg)?;
    print!("{}", emit_summary(&table, SummaryFormat::Text));
    if let Some(dir) = out {
        eprintln!("traces and summaries written to {}", dir.display());
    }
    Ok(())
}

fn cmd_oracle(args: OracleArgs) -> Result<()> {
    if !args.directed && !args.undirected {
        bail!("one of --directed or --undirected is required");
    }
    let mut loaded = kswitch::graph::read_edge_list(&args.input, args.directed)?;
    if let Some(colors_path) = &args.colors {
        let text = std::fs::read_to_string(colors_path)
            .with_context(|| format!("reading {}", colors_path.display()))?;
        kswitch::graph::apply_colors(&mut loaded, &text)?;
    }
    let kind = parse_constraint(&args.constraint)?;
    let report = run_oracle(&loaded.graph, kind, args.k_max, args.dot.as_deref())?;
    println!("{}", report.to_line());
    Ok(())
}
