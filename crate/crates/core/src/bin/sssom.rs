//! Command-line front end: train, predict, sweep, inspect.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sssom::data::{kfold_split, load_arff, load_csv, Dataset};
use sssom::experiment::{
    emit_curve, emit_curve_svg, emit_results, run_sweep, supervision_curve, SweepConfig,
    SUPERVISION_LEVELS,
};
use sssom::{train_observed, Error, HyperParams, Model, Outcome};

#[derive(Parser)]
#[command(name = "sssom", version, about = "Semi-supervised self-organizing map")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Master random seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads for sweeps (default: logical cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Suppress summaries on stdout.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args, Clone)]
struct DataArgs {
    /// ARFF or CSV file (chosen by extension).
    #[arg(long)]
    data: PathBuf,
    /// Label column for CSV input (default: a column named `class`).
    #[arg(long)]
    label_column: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Train a map and write it as JSON.
    Train {
        #[command(flatten)]
        data: DataArgs,
        /// Flat `key = value` parameter file.
        #[arg(long)]
        params: Option<PathBuf>,
        /// Parameter override, repeatable: --set a_t=0.95
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Classify a dataset with a saved model.
    Predict {
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Repeated k-fold LHS sweep over supervision levels.
    Sweep {
        #[command(flatten)]
        data: DataArgs,
        /// Comma-separated labeled fractions.
        #[arg(long, value_delimiter = ',')]
        fractions: Option<Vec<f64>>,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        out_dir: PathBuf,
        /// Also write curve.svg.
        #[arg(long)]
        svg: bool,
        /// Record wall-clock runtime per run (makes results.csv non-reproducible).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Print a model summary.
    Inspect {
        #[arg(long)]
        model: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Data(Error),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParam { .. } => Failure::Usage(e.to_string()),
            e if e.is_data_error() => Failure::Data(e),
            e => Failure::Runtime(e),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn load(args: &DataArgs) -> Result<Dataset, Error> {
    let is_arff = args
        .data
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("arff"));
    if is_arff {
        load_arff(&args.data)
    } else {
        load_csv(&args.data, args.label_column.as_deref())
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Train {
            data,
            params,
            overrides,
            out,
            common,
        } => cmd_train(&data, params.as_deref(), &overrides, &out, &common),
        Command::Predict {
            model,
            data,
            out,
            common,
        } => cmd_predict(&model, &data, &out, &common),
        Command::Sweep {
            data,
            fractions,
            samples,
            repeats,
            k,
            out_dir,
            svg,
            timing,
            common,
        } => {
            let cfg = SweepConfig {
                fractions: fractions.unwrap_or_else(|| SUPERVISION_LEVELS.to_vec()),
                n_samples: samples,
                seed: common.seed,
                jobs: common.jobs,
                record_timing: timing,
                ..SweepConfig::default()
            };
            cmd_sweep(&data, &cfg, repeats, k, &out_dir, svg, common.quiet)
        }
        Command::Inspect { model } => cmd_inspect(&model),
    }
}

fn cmd_train(
    data: &DataArgs,
    params_file: Option<&Path>,
    overrides: &[String],
    out: &Path,
    common: &Common,
) -> Result<(), Failure> {
    let ds = load(data)?.normalize()?;
    let mut params = HyperParams {
        n_max: ds.len(),
        ..HyperParams::default()
    };
    if let Some(path) = params_file {
        let text = std::fs::read_to_string(path).map_err(Error::from)?;
        params = HyperParams::parse_kv(&text, params)?;
    }
    for kv in overrides {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("--set expects KEY=VALUE, got `{kv}`")))?;
        params.set(k.trim(), v.trim())?;
    }
    params.seed = common.seed;
    params.validate()?;

    let outcome = train_observed(&ds, &params, &mut ())?;
    let model = Model::new(outcome.map, params, &ds);
    model.save(out)?;
    if !common.quiet {
        let map = &model.map;
        println!(
            "nodes: {}  labeled: {} ({:.1}%)  connections: {}",
            map.len(),
            map.labeled_count(),
            100.0 * map.labeled_count() as f64 / map.len() as f64,
            map.connections().len()
        );
        let s = outcome.stats;
        println!(
            "steps: {} supervised, {} unsupervised; {} insertions, {} removals, {} pushes, {} resets",
            s.supervised, s.unsupervised, s.insertions, s.removals, s.pushes, s.resets
        );
    }
    Ok(())
}

fn cmd_predict(
    model_path: &Path,
    data: &DataArgs,
    out: &Path,
    common: &Common,
) -> Result<(), Failure> {
    let model = Model::load(model_path)?;
    let ds = load(data)?;
    let predictions = model.predict(&ds)?;

    let mut w = csv::Writer::from_path(out).map_err(Error::from)?;
    w.write_record(["index", "node", "label", "activation"])
        .map_err(Error::from)?;
    for (i, p) in predictions.iter().enumerate() {
        let label = match p.outcome {
            Outcome::Class(c) => model.class_name(c).to_string(),
            Outcome::Rejected => "REJECTED".to_string(),
        };
        let node = p.node.map(|n| n.to_string()).unwrap_or_default();
        w.write_record([i.to_string(), node, label, p.activation.to_string()])
            .map_err(Error::from)?;
    }
    w.flush().map_err(Error::from)?;

    if !common.quiet {
        let rejected = predictions
            .iter()
            .filter(|p| p.outcome == Outcome::Rejected)
            .count();
        println!("patterns: {}  rejected: {rejected}", predictions.len());
        if ds.labeled_count() > 0 {
            let correct = predictions
                .iter()
                .zip(&ds.labels)
                .filter(|(p, t)| match (p.class(), t) {
                    (Some(c), Some(t)) => model.class_name(c) == ds.class_name(*t),
                    _ => false,
                })
                .count();
            println!("accuracy: {:.4}", correct as f64 / predictions.len() as f64);
        }
    }
    Ok(())
}

fn cmd_sweep(
    data: &DataArgs,
    cfg: &SweepConfig,
    repeats: usize,
    k: usize,
    out_dir: &Path,
    svg: bool,
    quiet: bool,
) -> Result<(), Failure> {
    let ds = load(data)?.normalize()?;
    let plan = kfold_split(ds.len(), repeats, k, cfg.seed)?;
    let results = run_sweep(&ds, &plan, cfg)?;
    let curve = supervision_curve(&results)?;

    std::fs::create_dir_all(out_dir).map_err(Error::from)?;
    emit_results(&results, out_dir.join("results.csv"))?;
    emit_curve(&curve, out_dir.join("curve.csv"))?;
    if svg {
        emit_curve_svg(&curve, out_dir.join("curve.svg"))?;
    }
    if !quiet {
        println!("runs: {}", results.len());
        for p in &curve {
            println!(
                "{:>6.1}% labeled: {:.3} ({:.3})",
                p.fraction * 100.0,
                p.mean,
                p.std
            );
        }
    }
    Ok(())
}

fn cmd_inspect(path: &Path) -> Result<(), Failure> {
    let model = Model::load(path)?;
    let map = &model.map;
    println!("dimensions: {}", map.dim());
    println!("nodes: {} (budget {})", map.len(), map.node_budget());
    println!("connections: {}", map.connections().len());
    println!("labeled nodes: {}", map.labeled_count());
    for (i, name) in model.class_names.iter().enumerate() {
        let count = map
            .nodes()
            .iter()
            .filter(|n| n.label.is_some_and(|l| l.index() == i))
            .count();
        println!("  {name}: {count}");
    }
    print!("{}", model.params.to_kv());
    Ok(())
}
