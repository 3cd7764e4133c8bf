//! Experiment CLI: multi-seed sweeps of the three optimizer variants plus
//! summary tables, curve extraction, and dataset utilities.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use moofs::dataset::{convert_matrix_dump, toy_dataset};
use moofs::error::Error;
use moofs::experiment::{
    emit_curves, list_run_files, run_experiment, summarize, summary_csv, CurveKind,
    ExperimentConfig, SummaryCell,
};
use moofs::optimizer::Variant;

#[derive(Parser)]
#[command(name = "moofs", about = "Multi-objective wrapper feature selection experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run dataset x variant x seed sweeps and persist raw run records.
    Run(RunArgs),
    /// Aggregate persisted runs into summary tables (console + CSV).
    Summarize {
        /// Output directory of a previous `run`.
        #[arg(long, default_value = "results")]
        out: PathBuf,
        /// Variant the win/tie/loss verdicts compare against.
        #[arg(long, default_value = "nsga2")]
        baseline: String,
    },
    /// Emit long-format per-generation curve CSVs from persisted runs.
    Curves {
        #[arg(long, default_value = "results")]
        out: PathBuf,
        /// hv | hamming | replaced_ratio
        #[arg(long)]
        kind: String,
    },
    /// Convert a whitespace-delimited matrix dump plus a label file into
    /// the dataset CSV contract.
    Convert {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, default_value = "converted")]
        name: String,
    },
    /// Generate the bundled synthetic toy dataset (separable Gaussian
    /// clusters with a few informative features).
    Toy {
        #[arg(long)]
        output: PathBuf,
        #[arg(long, default_value_t = 120)]
        samples: usize,
        #[arg(long, default_value_t = 200)]
        features: usize,
        #[arg(long, default_value_t = 3)]
        classes: usize,
        #[arg(long, default_value_t = 5)]
        informative: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Default)]
struct RunArgs {
    /// Flat key=value configuration file; explicit flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Dataset CSV path; repeatable.
    #[arg(long)]
    dataset: Vec<PathBuf>,
    /// Variant to run (nsga2 | nsga2-genuine | diverse-nsga2); repeatable,
    /// default all three.
    #[arg(long)]
    variant: Vec<String>,
    #[arg(long)]
    runs: Option<usize>,
    /// Base seed; run i uses seed + i for both split and optimizer.
    #[arg(long)]
    seed: Option<u64>,
    /// Evaluation budget per run.
    #[arg(long)]
    nfc: Option<u64>,
    /// Population size.
    #[arg(long)]
    pop: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    test_fraction: Option<f64>,
    #[arg(long)]
    mutation_prob: Option<f64>,
    #[arg(long)]
    crossover_prob: Option<f64>,
    #[arg(long)]
    stratify: bool,
    #[arg(long)]
    normalize: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Config(_) | Error::Spec(_) => 2,
                Error::Parse(_) => 3,
                Error::Io(_) => 4,
                _ => 1,
            })
        }
    }
}

fn dispatch(command: Command) -> Result<(), Error> {
    match command {
        Command::Run(args) => cmd_run(args),
        Command::Summarize { out, baseline } => cmd_summarize(&out, &baseline),
        Command::Curves { out, kind } => cmd_curves(&out, &kind),
        Command::Convert {
            matrix,
            labels,
            output,
            name,
        } => {
            let ds = convert_matrix_dump(&matrix, &labels, &name)?;
            ds.write_csv(&output)?;
            println!(
                "wrote {} ({} samples, {} features, {} classes)",
                output.display(),
                ds.n_samples,
                ds.dimension,
                ds.n_classes
            );
            Ok(())
        }
        Command::Toy {
            output,
            samples,
            features,
            classes,
            informative,
            seed,
        } => {
            let name = output
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "toy".into());
            let ds = toy_dataset(&name, samples, features, classes, informative, seed)?;
            ds.write_csv(&output)?;
            println!("wrote {}", output.display());
            Ok(())
        }
    }
}

fn cmd_run(args: RunArgs) -> Result<(), Error> {
    let mut config = ExperimentConfig::default();
    if let Some(path) = &args.config {
        apply_config_file(&mut config, path)?;
    }
    if !args.dataset.is_empty() {
        config.datasets = args.dataset;
    }
    if !args.variant.is_empty() {
        config.variants = args
            .variant
            .iter()
            .map(|v| Variant::parse(v))
            .collect::<Result<_, _>>()?;
    }
    if let Some(v) = args.runs {
        config.runs = v;
    }
    if let Some(v) = args.seed {
        config.seed_base = v;
    }
    if let Some(v) = args.nfc {
        config.max_nfc = v;
    }
    if let Some(v) = args.pop {
        config.population_size = v;
    }
    if let Some(v) = args.out {
        config.out_dir = v;
    }
    if let Some(v) = args.k {
        config.k = v;
    }
    if let Some(v) = args.test_fraction {
        config.test_fraction = v;
    }
    if let Some(v) = args.mutation_prob {
        config.variation.mutation_prob = v;
    }
    if let Some(v) = args.crossover_prob {
        config.variation.crossover_prob = v;
    }
    if args.stratify {
        config.stratify = true;
    }
    if args.normalize {
        config.normalize = true;
    }

    let outcome = run_experiment(&config)?;
    println!(
        "persisted {} runs under {}",
        outcome.run_files.len(),
        config.out_dir.join("runs").display()
    );
    for (ds, err) in &outcome.failures {
        eprintln!("dataset skipped: {ds}: {err}");
    }
    // a report accompanies every sweep; re-derivable via `summarize`
    write_summary(&config.out_dir, Variant::Nsga2)?;
    Ok(())
}

fn cmd_summarize(out: &Path, baseline: &str) -> Result<(), Error> {
    let baseline = Variant::parse(baseline)?;
    let cells = write_summary(out, baseline)?;
    print_summary(&cells);
    Ok(())
}

fn write_summary(out: &Path, baseline: Variant) -> Result<Vec<SummaryCell>, Error> {
    let files = list_run_files(out)?;
    let cells = summarize(&files, baseline)?;
    std::fs::write(out.join("summary.csv"), summary_csv(&cells))?;
    println!("wrote {}", out.join("summary.csv").display());
    Ok(cells)
}

fn print_summary(cells: &[SummaryCell]) {
    println!(
        "{:<16} {:<14} {:>4} {:>22} {:>22} {:>8} {:>10} {:>22} {:>9}",
        "dataset",
        "variant",
        "runs",
        "train HV (mean, CI)",
        "test HV (mean, CI)",
        "max acc",
        "#feat@acc",
        "front #feat (CI)",
        "repl %"
    );
    for c in cells {
        println!(
            "{:<16} {:<14} {:>4} {:>7.4} ({:.4}, {:.4}) {:>7.4} ({:.4}, {:.4}) {:>8.4} {:>10.2} {:>7.2} ({:.2}, {:.2}) {:>9.2}",
            c.dataset,
            c.variant.label(),
            c.runs,
            c.train_hv.0,
            c.train_hv.1,
            c.train_hv.2,
            c.test_hv.0,
            c.test_hv.1,
            c.test_hv.2,
            c.max_acc_mean,
            c.features_at_max_acc_mean,
            c.front_features.0,
            c.front_features.1,
            c.front_features.2,
            c.replaced_ratio_pct_mean,
        );
        if let Some(v) = &c.verdicts {
            println!(
                "{:<16} {:<14}      vs baseline: train_hv={} test_hv={} max_acc={} feat@acc={} front_feat={}",
                "", "", v.train_hv, v.test_hv, v.max_acc, v.features_at_max_acc, v.front_features
            );
        }
    }
}

fn cmd_curves(out: &Path, kind: &str) -> Result<(), Error> {
    let kind = CurveKind::parse(kind)?;
    let files = list_run_files(out)?;
    let (csv, missing) = emit_curves(&files, kind)?;
    for m in &missing {
        eprintln!("missing run file skipped: {}", m.display());
    }
    let path = out.join(format!("curves_{}.csv", kind.label()));
    std::fs::write(&path, csv)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn apply_config_file(config: &mut ExperimentConfig, path: &Path) -> Result<(), Error> {
    let text = std::fs::read_to_string(path)?;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("{}: line {}: expected key=value", path.display(), idx + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        let bad = |e: String| Error::Config(format!("{}: {key}: {e}", path.display()));
        match key {
            "dataset" => {
                config.datasets = value.split(',').map(|s| PathBuf::from(s.trim())).collect()
            }
            "variant" => {
                config.variants = value
                    .split(',')
                    .map(|s| Variant::parse(s.trim()))
                    .collect::<Result<_, _>>()?
            }
            "runs" => config.runs = value.parse().map_err(|_| bad(value.into()))?,
            "seed" => config.seed_base = value.parse().map_err(|_| bad(value.into()))?,
            "nfc" => config.max_nfc = value.parse().map_err(|_| bad(value.into()))?,
            "pop" => config.population_size = value.parse().map_err(|_| bad(value.into()))?,
            "out" => config.out_dir = PathBuf::from(value),
            "k" => config.k = value.parse().map_err(|_| bad(value.into()))?,
            "test_fraction" => {
                config.test_fraction = value.parse().map_err(|_| bad(value.into()))?
            }
            "mutation_prob" => {
                config.variation.mutation_prob = value.parse().map_err(|_| bad(value.into()))?
            }
            "crossover_prob" => {
                config.variation.crossover_prob = value.parse().map_err(|_| bad(value.into()))?
            }
            "stratify" => config.stratify = value.parse().map_err(|_| bad(value.into()))?,
            "normalize" => config.normalize = value.parse().map_err(|_| bad(value.into()))?,
            _ => return Err(Error::Config(format!("unknown config key {key:?}"))),
        }
    }
    Ok(())
}
