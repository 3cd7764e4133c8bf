//! Tabular dataset model, CSV loading, and Monte Carlo train/test splits.
//!
//! CSV contract: UTF-8, first line is a header, `d` numeric feature columns
//! followed by one final label column named `class`. Labels may be integers
//! or arbitrary strings; they are mapped to dense indices in first-seen
//! order. No missing cells.

use std::collections::HashMap;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Dataset {
    pub name: String,
    /// Row-major n_samples x d feature matrix.
    features: Vec<f64>,
    pub n_samples: usize,
    pub dimension: usize,
    pub labels: Vec<usize>,
    pub n_classes: usize,
    pub class_names: Vec<String>,
}

impl Dataset {
    pub fn new(
        name: String,
        features: Vec<f64>,
        n_samples: usize,
        dimension: usize,
        labels: Vec<usize>,
        class_names: Vec<String>,
    ) -> Result<Self> {
        if features.len() != n_samples * dimension {
            return Err(Error::Spec(format!(
                "feature matrix has {} entries, expected {} x {}",
                features.len(),
                n_samples,
                dimension
            )));
        }
        if labels.len() != n_samples {
            return Err(Error::Spec("label count does not match sample count".into()));
        }
        let n_classes = class_names.len();
        if n_classes < 2 {
            return Err(Error::Spec(format!(
                "need at least 2 classes, got {n_classes}"
            )));
        }
        if labels.iter().any(|&l| l >= n_classes) {
            return Err(Error::Spec("label index out of range".into()));
        }
        Ok(Dataset {
            name,
            features,
            n_samples,
            dimension,
            labels,
            n_classes,
            class_names,
        })
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.features[i * self.dimension..(i + 1) * self.dimension]
    }

    pub fn load_csv(path: &Path) -> Result<Dataset> {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "dataset".to_string());
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_path(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;

        let headers = reader
            .headers()
            .map_err(|e| Error::Parse(format!("header: {e}")))?
            .clone();
        if headers.len() < 2 {
            return Err(Error::Parse("need at least one feature column and a class column".into()));
        }
        let last = headers.len() - 1;
        if headers.get(last) != Some("class") {
            return Err(Error::Parse(format!(
                "last column must be named \"class\", got {:?}",
                headers.get(last).unwrap_or("")
            )));
        }
        let dimension = last;

        let mut features = Vec::new();
        let mut labels = Vec::new();
        let mut class_ids: HashMap<String, usize> = HashMap::new();
        let mut class_names = Vec::new();
        for (row_idx, record) in reader.records().enumerate() {
            let line = row_idx + 2; // 1-based, after the header
            let record = record.map_err(|e| Error::Parse(format!("row {line}: {e}")))?;
            if record.len() != dimension + 1 {
                return Err(Error::Parse(format!(
                    "row {line}: expected {} cells, got {}",
                    dimension + 1,
                    record.len()
                )));
            }
            for cell in record.iter().take(dimension) {
                if cell.is_empty() {
                    return Err(Error::Parse(format!("row {line}: missing cell")));
                }
                let v: f64 = cell
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("row {line}: non-numeric feature {cell:?}")))?;
                features.push(v);
            }
            let raw_label = record.get(dimension).unwrap().trim().to_string();
            if raw_label.is_empty() {
                return Err(Error::Parse(format!("row {line}: missing class label")));
            }
            let next_id = class_ids.len();
            let id = *class_ids.entry(raw_label.clone()).or_insert(next_id);
            if id == class_names.len() {
                class_names.push(raw_label);
            }
            labels.push(id);
        }
        let n_samples = labels.len();
        Dataset::new(name, features, n_samples, dimension, labels, class_names)
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut writer = csv::Writer::from_path(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let mut header: Vec<String> = (0..self.dimension).map(|i| format!("f{i}")).collect();
        header.push("class".to_string());
        writer
            .write_record(&header)
            .map_err(|e| Error::Parse(e.to_string()))?;
        for i in 0..self.n_samples {
            let mut rec: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            rec.push(self.class_names[self.labels[i]].clone());
            writer
                .write_record(&rec)
                .map_err(|e| Error::Parse(e.to_string()))?;
        }
        writer.flush()?;
        Ok(())
    }
}

/// Disjoint train/test index views over one dataset.
#[derive(Debug, Clone)]
pub struct SplitDataset {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
    pub seed: u64,
}

/// Uniformly random test subset of round(test_fraction * n) samples,
/// deterministic given the seed. Stratification is off by default; when on,
/// the test quota is rounded per class.
pub fn split(
    ds: &Dataset,
    test_fraction: f64,
    seed: u64,
    stratify: bool,
) -> Result<SplitDataset> {
    let n = ds.n_samples;
    if n < 5 {
        return Err(Error::Spec(format!("need at least 5 samples, got {n}")));
    }
    if !(0.0..=0.5).contains(&test_fraction) || test_fraction <= 0.0 {
        return Err(Error::Config(format!(
            "test_fraction must be in (0, 0.5], got {test_fraction}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut test: Vec<usize>;
    if stratify {
        test = Vec::new();
        for class in 0..ds.n_classes {
            let mut members: Vec<usize> =
                (0..n).filter(|&i| ds.labels[i] == class).collect();
            members.shuffle(&mut rng);
            let quota = (test_fraction * members.len() as f64).round() as usize;
            test.extend(members.into_iter().take(quota));
        }
        test.sort_unstable();
    } else {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let n_test = (test_fraction * n as f64).round() as usize;
        test = order.into_iter().take(n_test).collect();
        test.sort_unstable();
    }
    let in_test: Vec<bool> = {
        let mut v = vec![false; n];
        for &i in &test {
            v[i] = true;
        }
        v
    };
    let train: Vec<usize> = (0..n).filter(|&i| !in_test[i]).collect();
    Ok(SplitDataset { train, test, seed })
}

/// Synthetic classification problem for desk-scale experiments: the first
/// `informative` features carry well-separated per-class Gaussian clusters,
/// everything else is standard-normal noise.
pub fn toy_dataset(
    name: &str,
    n_samples: usize,
    dimension: usize,
    n_classes: usize,
    informative: usize,
    seed: u64,
) -> Result<Dataset> {
    if informative > dimension {
        return Err(Error::Config("informative exceeds dimension".into()));
    }
    if n_classes < 2 {
        return Err(Error::Config("need at least 2 classes".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = StandardNormal;
    let mut features = Vec::with_capacity(n_samples * dimension);
    let mut labels = Vec::with_capacity(n_samples);
    for i in 0..n_samples {
        let class = i % n_classes;
        labels.push(class);
        for j in 0..dimension {
            let noise: f64 = normal.sample(&mut rng);
            if j < informative {
                // class centers 4 sigma apart, axis pattern varies per feature
                let center = 4.0 * ((class + j) % n_classes) as f64;
                features.push(center + noise);
            } else {
                features.push(noise);
            }
        }
    }
    // shuffle rows so class order carries no information
    let mut order: Vec<usize> = (0..n_samples).collect();
    order.shuffle(&mut rng);
    let mut shuffled_features = Vec::with_capacity(features.len());
    let mut shuffled_labels = Vec::with_capacity(n_samples);
    for &i in &order {
        shuffled_features.extend_from_slice(&features[i * dimension..(i + 1) * dimension]);
        shuffled_labels.push(labels[i]);
    }
    let class_names = (0..n_classes).map(|c| c.to_string()).collect();
    Dataset::new(
        name.to_string(),
        shuffled_features,
        n_samples,
        dimension,
        shuffled_labels,
        class_names,
    )
}

/// Converts a whitespace-delimited matrix dump plus a label file (one label
/// per line) into the CSV contract.
pub fn convert_matrix_dump(
    matrix_path: &Path,
    labels_path: &Path,
    name: &str,
) -> Result<Dataset> {
    let matrix_text = std::fs::read_to_string(matrix_path)?;
    let labels_text = std::fs::read_to_string(labels_path)?;
    let mut features = Vec::new();
    let mut dimension = None;
    let mut n_samples = 0;
    for (row_idx, line) in matrix_text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row: Vec<f64> = line
            .split([' ', '\t', ','])
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse().map_err(|_| {
                    Error::Parse(format!("matrix row {}: non-numeric {t:?}", row_idx + 1))
                })
            })
            .collect::<Result<_>>()?;
        match dimension {
            None => dimension = Some(row.len()),
            Some(d) if d != row.len() => {
                return Err(Error::Parse(format!(
                    "matrix row {}: expected {d} values, got {}",
                    row_idx + 1,
                    row.len()
                )))
            }
            _ => {}
        }
        features.extend(row);
        n_samples += 1;
    }
    let dimension = dimension.ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let mut class_ids: HashMap<String, usize> = HashMap::new();
    let mut class_names = Vec::new();
    let mut labels = Vec::new();
    for raw in labels_text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let next_id = class_ids.len();
        let id = *class_ids.entry(raw.to_string()).or_insert(next_id);
        if id == class_names.len() {
            class_names.push(raw.to_string());
        }
        labels.push(id);
    }
    if labels.len() != n_samples {
        return Err(Error::Parse(format!(
            "{} labels for {} matrix rows",
            labels.len(),
            n_samples
        )));
    }
    Dataset::new(name.to_string(), features, n_samples, dimension, labels, class_names)
}

/// Uniform label noise floor used by tests: fraction of rows whose labels
/// are redrawn uniformly.
pub fn randomize_labels(ds: &mut Dataset, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for l in ds.labels.iter_mut() {
        *l = rng.gen_range(0..ds.n_classes);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::Builder::new().suffix(".csv").tempfile().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn loads_toy_csv() {
        let f = write_temp("a,b,c,class\n1,2,3,x\n4,5,6,y\n7,8,9,x\n1,1,1,y\n");
        let ds = Dataset::load_csv(f.path()).unwrap();
        assert_eq!(ds.dimension, 3);
        assert_eq!(ds.n_samples, 4);
        assert_eq!(ds.n_classes, 2);
        assert_eq!(ds.row(1), &[4.0, 5.0, 6.0]);
        assert_eq!(ds.labels, vec![0, 1, 0, 1]);
    }

    #[test]
    fn missing_cell_names_row() {
        let f = write_temp("a,b,class\n1,2,x\n1,,y\n");
        let err = Dataset::load_csv(f.path()).unwrap_err();
        assert!(err.to_string().contains("row 3"), "{err}");
    }

    #[test]
    fn non_numeric_feature_rejected() {
        let f = write_temp("a,b,class\n1,2,x\n1,zebra,y\n");
        let err = Dataset::load_csv(f.path()).unwrap_err();
        assert!(err.to_string().contains("non-numeric"), "{err}");
    }

    #[test]
    fn wrong_label_column_name_rejected() {
        let f = write_temp("a,b,label\n1,2,x\n3,4,y\n");
        assert!(Dataset::load_csv(f.path()).is_err());
    }

    #[test]
    fn split_sizes_and_determinism() {
        let ds = toy_dataset("t", 130, 10, 3, 3, 0).unwrap();
        let s = split(&ds, 0.2, 7, false).unwrap();
        assert_eq!(s.test.len(), 26);
        assert_eq!(s.train.len(), 104);
        // disjoint and covering
        let mut all: Vec<usize> = s.train.iter().chain(&s.test).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..130).collect::<Vec<_>>());
        let s2 = split(&ds, 0.2, 7, false).unwrap();
        assert_eq!(s.test, s2.test);
        let s3 = split(&ds, 0.2, 8, false).unwrap();
        assert_ne!(s.test, s3.test);
    }

    #[test]
    fn stratified_split_keeps_class_balance() {
        let ds = toy_dataset("t", 100, 10, 4, 4, 1).unwrap();
        let s = split(&ds, 0.2, 3, true).unwrap();
        for class in 0..4 {
            let in_test = s.test.iter().filter(|&&i| ds.labels[i] == class).count();
            assert_eq!(in_test, 5);
        }
    }

    #[test]
    fn csv_round_trip() {
        let ds = toy_dataset("t", 20, 6, 2, 2, 3).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        ds.write_csv(&path).unwrap();
        let back = Dataset::load_csv(&path).unwrap();
        assert_eq!(back.dimension, ds.dimension);
        assert_eq!(back.labels, ds.labels);
        for i in 0..ds.n_samples {
            for (a, b) in ds.row(i).iter().zip(back.row(i)) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn converter_matches_csv_contract() {
        let dir = tempfile::tempdir().unwrap();
        let mpath = dir.path().join("m.txt");
        let lpath = dir.path().join("l.txt");
        std::fs::write(&mpath, "1 2 3\n4 5 6\n7 8 9\n0 0 0\n").unwrap();
        std::fs::write(&lpath, "a\nb\na\nb\n").unwrap();
        let ds = convert_matrix_dump(&mpath, &lpath, "conv").unwrap();
        assert_eq!(ds.dimension, 3);
        assert_eq!(ds.n_samples, 4);
        assert_eq!(ds.labels, vec![0, 1, 0, 1]);
    }
}
