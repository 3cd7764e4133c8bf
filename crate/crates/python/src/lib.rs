//! Python bindings: dataset loading, the three optimizer variants, and the
//! front metrics, exposed as the `moofs_py` extension module.

use std::collections::HashMap;
use std::path::PathBuf;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::IntoPyObjectExt;

use moofs::dataset;
use moofs::genome::Genome;
use moofs::metrics;
use moofs::objective::{Evaluator, FitnessContext};
use moofs::optimizer::{self, OptimizerConfig, Variant, HV_REFERENCE};
use moofs::pareto::{self, ObjectiveVector};
use moofs::stats;
use moofs::variation::VariationConfig;

fn value_err(e: moofs::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Dataset")]
struct PyDataset {
    inner: dataset::Dataset,
}

#[pymethods]
impl PyDataset {
    #[staticmethod]
    fn load_csv(path: PathBuf) -> PyResult<Self> {
        Ok(PyDataset {
            inner: dataset::Dataset::load_csv(&path).map_err(value_err)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (name, samples, features, classes, informative=5, seed=0))]
    fn toy(
        name: &str,
        samples: usize,
        features: usize,
        classes: usize,
        informative: usize,
        seed: u64,
    ) -> PyResult<Self> {
        Ok(PyDataset {
            inner: dataset::toy_dataset(name, samples, features, classes, informative, seed)
                .map_err(value_err)?,
        })
    }

    fn write_csv(&self, path: PathBuf) -> PyResult<()> {
        self.inner.write_csv(&path).map_err(value_err)
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn n_samples(&self) -> usize {
        self.inner.n_samples
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension
    }

    #[getter]
    fn n_classes(&self) -> usize {
        self.inner.n_classes
    }
}

/// One optimization run; returns a dict with the final front, the
/// per-generation history, and the consumed evaluation budget.
#[pyfunction]
#[pyo3(signature = (dataset, variant, seed, pop=100, nfc=15_000, k=5,
                    test_fraction=0.2, stratify=false, normalize=false,
                    mutation_prob=0.01, crossover_prob=1.0))]
#[allow(clippy::too_many_arguments)]
fn run(
    py: Python<'_>,
    dataset: &PyDataset,
    variant: &str,
    seed: u64,
    pop: usize,
    nfc: u64,
    k: usize,
    test_fraction: f64,
    stratify: bool,
    normalize: bool,
    mutation_prob: f64,
    crossover_prob: f64,
) -> PyResult<Py<PyAny>> {
    let variant = Variant::parse(variant).map_err(value_err)?;
    let sp = dataset::split(&dataset.inner, test_fraction, seed, stratify).map_err(value_err)?;
    let ctx = FitnessContext::new(&dataset.inner, &sp, k, normalize);
    let mut evaluator = Evaluator::new(ctx, nfc);
    let mut config = OptimizerConfig::new(variant, seed);
    config.population_size = pop;
    config.max_nfc = nfc;
    config.variation = VariationConfig {
        mutation_prob,
        crossover_prob,
        duplicate_elimination: true,
    };
    let result = optimizer::run(&config, &mut evaluator).map_err(value_err)?;

    let front: Vec<HashMap<&str, Py<PyAny>>> = result
        .front
        .iter()
        .map(|m| {
            let mut row: HashMap<&str, Py<PyAny>> = HashMap::new();
            row.insert("genome_hex", m.genome.to_hex().into_py_any(py)?);
            row.insert("popcount", m.genome.popcount().into_py_any(py)?);
            row.insert("train_error", m.train.error.into_py_any(py)?);
            row.insert("train_ratio", m.train.ratio.into_py_any(py)?);
            row.insert("test_error", m.test.error.into_py_any(py)?);
            row.insert("test_ratio", m.test.ratio.into_py_any(py)?);
            Ok(row)
        })
        .collect::<PyResult<_>>()?;
    let history: Vec<HashMap<&str, Py<PyAny>>> = result
        .history
        .iter()
        .map(|g| {
            let mut row: HashMap<&str, Py<PyAny>> = HashMap::new();
            row.insert("generation", g.generation.into_py_any(py)?);
            row.insert("nfc", g.nfc_consumed.into_py_any(py)?);
            row.insert("hv_train", g.hv_train.into_py_any(py)?);
            row.insert("hamming", g.avg_pairwise_hamming.into_py_any(py)?);
            row.insert("last_front", g.last_front_size.into_py_any(py)?);
            row.insert("replaced", g.replaced_count.into_py_any(py)?);
            row.insert("fronts", g.front_count.into_py_any(py)?);
            Ok(row)
        })
        .collect::<PyResult<_>>()?;

    let mut out: HashMap<&str, Py<PyAny>> = HashMap::new();
    out.insert("variant", variant.label().into_py_any(py)?);
    out.insert("total_nfc", result.total_nfc.into_py_any(py)?);
    out.insert("front", front.into_py_any(py)?);
    out.insert("history", history.into_py_any(py)?);
    out.into_py_any(py)
}

/// Area dominated by a 2-D front (minimization) against a reference point.
#[pyfunction]
#[pyo3(signature = (points, reference=HV_REFERENCE))]
fn hypervolume_2d(points: Vec<(f64, f64)>, reference: (f64, f64)) -> f64 {
    let front: Vec<ObjectiveVector> = points
        .iter()
        .map(|&(a, b)| ObjectiveVector::new(a, b))
        .collect();
    metrics::hypervolume_2d(&front, reference)
}

#[pyfunction]
fn non_dominated_sort(points: Vec<(f64, f64)>) -> Vec<Vec<usize>> {
    let objs: Vec<ObjectiveVector> = points
        .iter()
        .map(|&(a, b)| ObjectiveVector::new(a, b))
        .collect();
    pareto::non_dominated_sort(&objs)
}

/// Mean pairwise Hamming distance over genomes given as '0'/'1' strings.
#[pyfunction]
fn avg_pairwise_hamming(genomes: Vec<String>) -> PyResult<f64> {
    let pop: Vec<Genome> = genomes
        .iter()
        .map(|s| Genome::from_bitstring(s))
        .collect::<Result<_, _>>()
        .map_err(value_err)?;
    metrics::avg_pairwise_hamming(&pop).map_err(value_err)
}

/// (mean, lo, hi) 95% Student-t confidence interval.
#[pyfunction]
fn mean_ci95(samples: Vec<f64>) -> PyResult<(f64, f64, f64)> {
    let ci = stats::mean_ci95(&samples).map_err(value_err)?;
    Ok((ci.mean, ci.lo, ci.hi))
}

/// Two-sided Welch t-test; returns (p_value, "win"|"tie"|"loss") for the
/// first sample against the second.
#[pyfunction]
#[pyo3(signature = (a, b, alpha=0.05, higher_is_better=true))]
fn welch_t_test(
    a: Vec<f64>,
    b: Vec<f64>,
    alpha: f64,
    higher_is_better: bool,
) -> PyResult<(f64, String)> {
    let (p, v) = stats::welch_t_test(&a, &b, alpha, higher_is_better).map_err(value_err)?;
    Ok((p, v.to_string()))
}

#[pymodule]
fn moofs_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDataset>()?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(hypervolume_2d, m)?)?;
    m.add_function(wrap_pyfunction!(non_dominated_sort, m)?)?;
    m.add_function(wrap_pyfunction!(avg_pairwise_hamming, m)?)?;
    m.add_function(wrap_pyfunction!(mean_ci95, m)?)?;
    m.add_function(wrap_pyfunction!(welch_t_test, m)?)?;
    Ok(())
}
