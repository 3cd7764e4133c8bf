//! Multi-seed experiment orchestration: running dataset x variant x seed
//! sweeps, persisting raw run records, and aggregating them into summary
//! tables and plot-ready curve files.
//!
//! Persistence is line-delimited key=value text so runs are grep-able and
//! diff-able; final fronts carry genomes as hex bitstrings. Aggregation is
//! a pure function of the persisted files: deleting the summary and
//! re-summarizing reproduces it byte for byte.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::dataset::{split, Dataset};
use crate::error::{Error, Result};
use crate::metrics::{hypervolume_2d, max_accuracy};
use crate::objective::{Evaluator, FitnessContext};
use crate::optimizer::{run, OptimizerConfig, RunResult, Variant, HV_REFERENCE};
use crate::pareto::ObjectiveVector;
use crate::stats::{mean, mean_ci95, welch_t_test, Verdict};
use crate::variation::VariationConfig;

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub datasets: Vec<PathBuf>,
    pub variants: Vec<Variant>,
    pub runs: usize,
    pub seed_base: u64,
    pub population_size: usize,
    pub max_nfc: u64,
    pub k: usize,
    pub test_fraction: f64,
    pub stratify: bool,
    pub normalize: bool,
    pub variation: VariationConfig,
    pub out_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            datasets: Vec::new(),
            variants: Variant::ALL.to_vec(),
            runs: 31,
            seed_base: 0,
            population_size: 100,
            max_nfc: 15_000,
            k: 5,
            test_fraction: 0.2,
            stratify: false,
            normalize: false,
            variation: VariationConfig::default(),
            out_dir: PathBuf::from("results"),
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.datasets.is_empty() {
            return Err(Error::Config("no datasets given".into()));
        }
        if self.variants.is_empty() {
            return Err(Error::Config("no variants given".into()));
        }
        if self.runs < 1 {
            return Err(Error::Config("runs must be >= 1".into()));
        }
        if !(self.test_fraction > 0.0 && self.test_fraction <= 0.5) {
            return Err(Error::Config("test_fraction must be in (0, 0.5]".into()));
        }
        Ok(())
    }
}

/// Outcome of a full sweep: which run files were written and which datasets
/// failed to load.
#[derive(Debug)]
pub struct ExperimentOutcome {
    pub run_files: Vec<PathBuf>,
    pub failures: Vec<(String, String)>,
}

fn run_stem(dataset: &str, variant: Variant, run_idx: usize) -> String {
    format!("{dataset}__{}__seed{run_idx}", variant.label())
}

/// Runs every dataset x variant x seed cell and persists each run. Seeds are
/// paired: run i of every variant shares the split seed `seed_base + i`.
/// A dataset that fails to parse is skipped and recorded as a failure.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutcome> {
    config.validate()?;
    let runs_dir = config.out_dir.join("runs");
    fs::create_dir_all(&runs_dir)?;

    let mut failures = Vec::new();
    let mut loaded: Vec<Dataset> = Vec::new();
    for path in &config.datasets {
        match Dataset::load_csv(path) {
            Ok(ds) => loaded.push(ds),
            Err(e) => failures.push((path.display().to_string(), e.to_string())),
        }
    }

    let mut jobs = Vec::new();
    for ds in &loaded {
        for run_idx in 0..config.runs {
            for &variant in &config.variants {
                jobs.push((ds, variant, run_idx));
            }
        }
    }

    let run_files: Vec<PathBuf> = jobs
        .par_iter()
        .map(|&(ds, variant, run_idx)| -> Result<PathBuf> {
            let seed = config.seed_base + run_idx as u64;
            let sp = split(ds, config.test_fraction, seed, config.stratify)?;
            let ctx = FitnessContext::new(ds, &sp, config.k, config.normalize);
            let mut evaluator = Evaluator::new(ctx, config.max_nfc);
            let mut opt = OptimizerConfig::new(variant, seed);
            opt.population_size = config.population_size;
            opt.max_nfc = config.max_nfc;
            opt.variation = config.variation;
            let result = run(&opt, &mut evaluator)?;
            let stem = run_stem(&ds.name, variant, run_idx);
            write_run_file(
                &runs_dir.join(format!("{stem}.run")),
                ds,
                variant,
                run_idx,
                seed,
                config,
                &result,
            )?;
            write_front_file(&runs_dir.join(format!("{stem}.front")), &result)?;
            Ok(runs_dir.join(format!("{stem}.run")))
        })
        .collect::<Result<Vec<_>>>()?;

    if !failures.is_empty() {
        let mut text = String::new();
        for (ds, err) in &failures {
            writeln!(text, "{ds}: {err}").unwrap();
        }
        fs::write(config.out_dir.join("failures.txt"), text)?;
    }

    let mut files = run_files;
    files.sort();
    Ok(ExperimentOutcome {
        run_files: files,
        failures,
    })
}

fn write_run_file(
    path: &Path,
    ds: &Dataset,
    variant: Variant,
    run_idx: usize,
    seed: u64,
    config: &ExperimentConfig,
    result: &RunResult,
) -> Result<()> {
    let mut text = String::new();
    writeln!(text, "dataset={}", ds.name).unwrap();
    writeln!(text, "variant={}", variant.label()).unwrap();
    writeln!(text, "run={run_idx}").unwrap();
    writeln!(text, "seed={seed}").unwrap();
    writeln!(text, "pop={}", config.population_size).unwrap();
    writeln!(text, "max_nfc={}", config.max_nfc).unwrap();
    writeln!(text, "dimension={}", ds.dimension).unwrap();
    writeln!(text, "total_nfc={}", result.total_nfc).unwrap();
    for r in &result.history {
        writeln!(
            text,
            "gen generation={} nfc={} hv_train={} hamming={} last_front={} replaced={} fronts={}",
            r.generation,
            r.nfc_consumed,
            r.hv_train,
            r.avg_pairwise_hamming,
            r.last_front_size,
            r.replaced_count,
            r.front_count
        )
        .unwrap();
    }
    fs::write(path, text)?;
    Ok(())
}

fn write_front_file(path: &Path, result: &RunResult) -> Result<()> {
    let mut text = String::new();
    for m in &result.front {
        writeln!(
            text,
            "genome={} popcount={} train_error={} train_ratio={} test_error={} test_ratio={}",
            m.genome.to_hex(),
            m.genome.popcount(),
            m.train.error,
            m.train.ratio,
            m.test.error,
            m.test.ratio
        )
        .unwrap();
    }
    fs::write(path, text)?;
    Ok(())
}

/// One persisted generation record.
#[derive(Debug, Clone)]
pub struct PersistedGeneration {
    pub generation: usize,
    pub nfc: u64,
    pub hv_train: f64,
    pub hamming: f64,
    pub last_front: usize,
    pub replaced: usize,
    pub fronts: usize,
}

#[derive(Debug, Clone)]
pub struct PersistedRun {
    pub dataset: String,
    pub variant: Variant,
    pub run_idx: usize,
    pub seed: u64,
    pub pop: usize,
    pub max_nfc: u64,
    pub dimension: usize,
    pub total_nfc: u64,
    pub generations: Vec<PersistedGeneration>,
    pub front: Vec<PersistedFrontMember>,
}

#[derive(Debug, Clone)]
pub struct PersistedFrontMember {
    pub genome_hex: String,
    pub popcount: usize,
    pub train: ObjectiveVector,
    pub test: ObjectiveVector,
}

fn kv<'a>(line: &'a str, key: &str) -> Result<&'a str> {
    line.split_whitespace()
        .find_map(|tok| tok.strip_prefix(&format!("{key}=")))
        .ok_or_else(|| Error::Parse(format!("missing key {key:?} in {line:?}")))
}

fn parse_num<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::Parse(format!("bad numeric value {s:?}")))
}

pub fn read_run_file(path: &Path) -> Result<PersistedRun> {
    let text = fs::read_to_string(path)?;
    let mut header: BTreeMap<&str, &str> = BTreeMap::new();
    let mut generations = Vec::new();
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("gen ") {
            generations.push(PersistedGeneration {
                generation: parse_num(kv(rest, "generation")?)?,
                nfc: parse_num(kv(rest, "nfc")?)?,
                hv_train: parse_num(kv(rest, "hv_train")?)?,
                hamming: parse_num(kv(rest, "hamming")?)?,
                last_front: parse_num(kv(rest, "last_front")?)?,
                replaced: parse_num(kv(rest, "replaced")?)?,
                fronts: parse_num(kv(rest, "fronts")?)?,
            });
        } else if let Some((k, v)) = line.split_once('=') {
            header.insert(k, v);
        }
    }
    let get = |k: &str| -> Result<&str> {
        header
            .get(k)
            .copied()
            .ok_or_else(|| Error::Parse(format!("{}: missing header {k:?}", path.display())))
    };

    let front_path = path.with_extension("front");
    let mut front = Vec::new();
    if front_path.exists() {
        for line in fs::read_to_string(&front_path)?.lines() {
            if line.trim().is_empty() {
                continue;
            }
            front.push(PersistedFrontMember {
                genome_hex: kv(line, "genome")?.to_string(),
                popcount: parse_num(kv(line, "popcount")?)?,
                train: ObjectiveVector::new(
                    parse_num(kv(line, "train_error")?)?,
                    parse_num(kv(line, "train_ratio")?)?,
                ),
                test: ObjectiveVector::new(
                    parse_num(kv(line, "test_error")?)?,
                    parse_num(kv(line, "test_ratio")?)?,
                ),
            });
        }
    }

    Ok(PersistedRun {
        dataset: get("dataset")?.to_string(),
        variant: Variant::parse(get("variant")?)?,
        run_idx: parse_num(get("run")?)?,
        seed: parse_num(get("seed")?)?,
        pop: parse_num(get("pop")?)?,
        max_nfc: parse_num(get("max_nfc")?)?,
        dimension: parse_num(get("dimension")?)?,
        total_nfc: parse_num(get("total_nfc")?)?,
        generations,
        front,
    })
}

/// All run files under `<out>/runs`, sorted by file name.
pub fn list_run_files(out_dir: &Path) -> Result<Vec<PathBuf>> {
    let runs_dir = out_dir.join("runs");
    let mut files = Vec::new();
    for entry in fs::read_dir(&runs_dir)? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e == "run") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Per-run scalar statistics feeding the summary tables.
#[derive(Debug, Clone)]
struct RunStats {
    train_hv: f64,
    test_hv: f64,
    max_acc: f64,
    features_at_max_acc: f64,
    front_features_mean: f64,
    replaced_ratio_pct: f64,
}

fn run_stats(run: &PersistedRun) -> RunStats {
    let train_hv = run
        .generations
        .last()
        .map(|g| g.hv_train)
        .unwrap_or(0.0);
    let test_points: Vec<ObjectiveVector> = run.front.iter().map(|m| m.test).collect();
    let test_hv = hypervolume_2d(&test_points, HV_REFERENCE);
    let acc_input: Vec<(ObjectiveVector, usize)> =
        run.front.iter().map(|m| (m.test, m.popcount)).collect();
    let (max_acc, feats) = max_accuracy(&acc_input)
        .unwrap_or((0.0, 0));
    let front_features_mean = if run.front.is_empty() {
        0.0
    } else {
        mean(&run.front.iter().map(|m| m.popcount as f64).collect::<Vec<_>>())
    };
    // generation 0 is the initial population, before any replacement
    let gen_ratios: Vec<f64> = run
        .generations
        .iter()
        .filter(|g| g.generation > 0)
        .map(|g| 100.0 * g.replaced as f64 / run.pop as f64)
        .collect();
    let replaced_ratio_pct = if gen_ratios.is_empty() {
        0.0
    } else {
        mean(&gen_ratios)
    };
    RunStats {
        train_hv,
        test_hv,
        max_acc,
        features_at_max_acc: feats as f64,
        front_features_mean,
        replaced_ratio_pct,
    }
}

/// One summary table cell: a dataset x variant aggregate over runs.
#[derive(Debug, Clone)]
pub struct SummaryCell {
    pub dataset: String,
    pub variant: Variant,
    pub runs: usize,
    pub train_hv: (f64, f64, f64),
    pub test_hv: (f64, f64, f64),
    pub max_acc_mean: f64,
    pub features_at_max_acc_mean: f64,
    pub front_features: (f64, f64, f64),
    pub replaced_ratio_pct_mean: f64,
    pub verdicts: Option<CellVerdicts>,
}

/// Win/tie/loss of this variant against the baseline, per table.
#[derive(Debug, Clone)]
pub struct CellVerdicts {
    pub train_hv: Verdict,
    pub test_hv: Verdict,
    pub max_acc: Verdict,
    pub features_at_max_acc: Verdict,
    pub front_features: Verdict,
}

fn ci_triple(samples: &[f64]) -> (f64, f64, f64) {
    match mean_ci95(samples) {
        Ok(ci) => (ci.mean, ci.lo, ci.hi),
        Err(_) => {
            let m = if samples.is_empty() { 0.0 } else { mean(samples) };
            (m, m, m)
        }
    }
}

/// Aggregates persisted runs into paper-style summary cells; verdicts are
/// Welch t-tests at 95% against `baseline` on the paired per-run samples.
pub fn summarize(run_files: &[PathBuf], baseline: Variant) -> Result<Vec<SummaryCell>> {
    let mut grouped: BTreeMap<(String, String), Vec<RunStats>> = BTreeMap::new();
    let mut variant_of: BTreeMap<String, Variant> = BTreeMap::new();
    for path in run_files {
        let run = read_run_file(path)?;
        variant_of.insert(run.variant.label().to_string(), run.variant);
        grouped
            .entry((run.dataset.clone(), run.variant.label().to_string()))
            .or_default()
            .push(run_stats(&run));
    }

    let mut cells = Vec::new();
    for ((dataset, variant_label), stats) in &grouped {
        let variant = variant_of[variant_label];
        let col = |f: fn(&RunStats) -> f64| -> Vec<f64> { stats.iter().map(f).collect() };
        let baseline_stats = grouped.get(&(dataset.clone(), baseline.label().to_string()));
        let verdicts = match baseline_stats {
            Some(base) if variant != baseline && stats.len() >= 2 && base.len() >= 2 => {
                let bcol =
                    |f: fn(&RunStats) -> f64| -> Vec<f64> { base.iter().map(f).collect() };
                let test = |f: fn(&RunStats) -> f64, higher: bool| -> Result<Verdict> {
                    Ok(welch_t_test(&col(f), &bcol(f), 0.05, higher)?.1)
                };
                Some(CellVerdicts {
                    train_hv: test(|s| s.train_hv, true)?,
                    test_hv: test(|s| s.test_hv, true)?,
                    max_acc: test(|s| s.max_acc, true)?,
                    features_at_max_acc: test(|s| s.features_at_max_acc, false)?,
                    front_features: test(|s| s.front_features_mean, false)?,
                })
            }
            _ => None,
        };
        cells.push(SummaryCell {
            dataset: dataset.clone(),
            variant,
            runs: stats.len(),
            train_hv: ci_triple(&col(|s| s.train_hv)),
            test_hv: ci_triple(&col(|s| s.test_hv)),
            max_acc_mean: mean(&col(|s| s.max_acc)),
            features_at_max_acc_mean: mean(&col(|s| s.features_at_max_acc)),
            front_features: ci_triple(&col(|s| s.front_features_mean)),
            replaced_ratio_pct_mean: mean(&col(|s| s.replaced_ratio_pct)),
            verdicts,
        });
    }
    Ok(cells)
}

/// Renders the summary to a CSV string; the console rendering is done by
/// the CLI from the same cells.
pub fn summary_csv(cells: &[SummaryCell]) -> String {
    let mut out = String::from(
        "dataset,variant,runs,train_hv_mean,train_hv_lo,train_hv_hi,\
         test_hv_mean,test_hv_lo,test_hv_hi,max_acc_mean,features_at_max_acc_mean,\
         front_features_mean,front_features_lo,front_features_hi,replaced_ratio_pct,\
         train_hv_vs_base,test_hv_vs_base,max_acc_vs_base,features_at_max_acc_vs_base,\
         front_features_vs_base\n",
    );
    for c in cells {
        let v = |sel: fn(&CellVerdicts) -> Verdict| -> String {
            match &c.verdicts {
                Some(vd) if c.runs >= 2 => sel(vd).to_string(),
                _ => "n/a".to_string(),
            }
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
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
            v(|x| x.train_hv),
            v(|x| x.test_hv),
            v(|x| x.max_acc),
            v(|x| x.features_at_max_acc),
            v(|x| x.front_features),
        )
        .unwrap();
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Hv,
    Hamming,
    ReplacedRatio,
}

impl CurveKind {
    pub fn parse(s: &str) -> Result<CurveKind> {
        match s {
            "hv" => Ok(CurveKind::Hv),
            "hamming" => Ok(CurveKind::Hamming),
            "replaced_ratio" | "replaced-ratio" => Ok(CurveKind::ReplacedRatio),
            _ => Err(Error::Config(format!("unknown curve kind {s:?}"))),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            CurveKind::Hv => "hv",
            CurveKind::Hamming => "hamming",
            CurveKind::ReplacedRatio => "replaced_ratio",
        }
    }
}

/// Long-format curve CSV: one row per (dataset, variant, seed, generation)
/// with the per-row value and the mean over seeds at the same generation.
/// Missing run files are skipped and reported back.
pub fn emit_curves(run_files: &[PathBuf], kind: CurveKind) -> Result<(String, Vec<PathBuf>)> {
    let mut rows: Vec<(String, String, u64, usize, u64, f64)> = Vec::new();
    let mut missing = Vec::new();
    for path in run_files {
        if !path.exists() {
            missing.push(path.clone());
            continue;
        }
        let run = read_run_file(path)?;
        for g in &run.generations {
            let value = match kind {
                CurveKind::Hv => g.hv_train,
                CurveKind::Hamming => g.hamming,
                CurveKind::ReplacedRatio => g.replaced as f64 / run.pop as f64,
            };
            rows.push((
                run.dataset.clone(),
                run.variant.label().to_string(),
                run.seed,
                g.generation,
                g.nfc,
                value,
            ));
        }
    }
    rows.sort_by(|a, b| {
        (&a.0, &a.1, a.2, a.3).cmp(&(&b.0, &b.1, b.2, b.3))
    });
    let mut sums: BTreeMap<(String, String, usize), (f64, usize)> = BTreeMap::new();
    for r in &rows {
        let e = sums.entry((r.0.clone(), r.1.clone(), r.3)).or_insert((0.0, 0));
        e.0 += r.5;
        e.1 += 1;
    }
    let mut out = String::from("dataset,variant,seed,generation,nfc,value,mean_over_seeds\n");
    for r in &rows {
        let (sum, count) = sums[&(r.0.clone(), r.1.clone(), r.3)];
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.0,
            r.1,
            r.2,
            r.3,
            r.4,
            r.5,
            sum / count as f64
        )
        .unwrap();
    }
    Ok((out, missing))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::toy_dataset;

    fn tiny_config(dir: &Path) -> ExperimentConfig {
        let ds = toy_dataset("tiny", 40, 16, 2, 3, 5).unwrap();
        let csv_path = dir.join("tiny.csv");
        ds.write_csv(&csv_path).unwrap();
        ExperimentConfig {
            datasets: vec![csv_path],
            variants: Variant::ALL.to_vec(),
            runs: 2,
            seed_base: 100,
            population_size: 10,
            max_nfc: 80,
            k: 5,
            test_fraction: 0.2,
            out_dir: dir.join("out"),
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn experiment_persists_one_file_pair_per_cell() {
        let dir = tempfile::tempdir().unwrap();
        let config = tiny_config(dir.path());
        let outcome = run_experiment(&config).unwrap();
        assert_eq!(outcome.run_files.len(), 6);
        assert!(outcome.failures.is_empty());
        for f in &outcome.run_files {
            assert!(f.exists());
            assert!(f.with_extension("front").exists());
        }
    }

    #[test]
    fn run_files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let config = tiny_config(dir.path());
        let outcome = run_experiment(&config).unwrap();
        let run = read_run_file(&outcome.run_files[0]).unwrap();
        assert_eq!(run.dataset, "tiny");
        assert_eq!(run.pop, 10);
        assert!(run.total_nfc <= 80);
        assert!(!run.generations.is_empty());
        assert!(!run.front.is_empty());
        // genome hex decodes at the recorded popcount
        let g = crate::genome::Genome::from_hex(&run.front[0].genome_hex, run.dimension).unwrap();
        assert_eq!(g.popcount(), run.front[0].popcount);
    }

    #[test]
    fn rerun_is_bit_identical() {
        let dir = tempfile::tempdir().unwrap();
        let config = tiny_config(dir.path());
        let outcome = run_experiment(&config).unwrap();
        let before: Vec<String> = outcome
            .run_files
            .iter()
            .map(|f| fs::read_to_string(f).unwrap())
            .collect();
        let outcome2 = run_experiment(&config).unwrap();
        let after: Vec<String> = outcome2
            .run_files
            .iter()
            .map(|f| fs::read_to_string(f).unwrap())
            .collect();
        assert_eq!(before, after);
    }

    #[test]
    fn summarize_self_comparison_ties() {
        let dir = tempfile::tempdir().unwrap();
        let mut config = tiny_config(dir.path());
        config.variants = vec![Variant::Nsga2];
        config.runs = 3;
        let outcome = run_experiment(&config).unwrap();
        let cells = summarize(&outcome.run_files, Variant::Nsga2).unwrap();
        assert_eq!(cells.len(), 1);
        // the baseline row carries no verdicts
        assert!(cells[0].verdicts.is_none());
        assert_eq!(cells[0].runs, 3);
    }

    #[test]
    fn curves_have_expected_schema() {
        let dir = tempfile::tempdir().unwrap();
        let config = tiny_config(dir.path());
        let outcome = run_experiment(&config).unwrap();
        let (csv, missing) = emit_curves(&outcome.run_files, CurveKind::ReplacedRatio).unwrap();
        assert!(missing.is_empty());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "dataset,variant,seed,generation,nfc,value,mean_over_seeds"
        );
        // bypassed or non-replacing generations contribute explicit 0 rows
        assert!(lines
            .iter()
            .skip(1)
            .any(|l| l.contains("nsga2") && l.ends_with(",0,0")));
    }

    #[test]
    fn missing_run_file_is_reported_and_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let config = tiny_config(dir.path());
        let outcome = run_experiment(&config).unwrap();
        let mut files = outcome.run_files.clone();
        files.push(dir.path().join("out/runs/ghost.run"));
        let (_, missing) = emit_curves(&files, CurveKind::Hv).unwrap();
        assert_eq!(missing.len(), 1);
    }

    #[test]
    fn unreadable_dataset_fails_only_that_dataset() {
        let dir = tempfile::tempdir().unwrap();
        let mut config = tiny_config(dir.path());
        let bad = dir.path().join("bad.csv");
        fs::write(&bad, "a,b,class\n1,zebra,x\n2,3,y\n").unwrap();
        config.datasets.push(bad);
        let outcome = run_experiment(&config).unwrap();
        assert_eq!(outcome.run_files.len(), 6);
        assert_eq!(outcome.failures.len(), 1);
        assert!(config.out_dir.join("failures.txt").exists());
    }
}
