//! Wrapper fitness: a k-NN classifier over the selected feature subset.
//!
//! The first objective is the classification error (train mode is
//! leave-one-out within the training set so a row never votes for itself),
//! the second is the selected-feature ratio. Every evaluation is charged
//! against an NFC (number of function calls) budget.

use std::collections::HashMap;

use crate::dataset::{Dataset, SplitDataset};
use crate::error::{Error, Result};
use crate::genome::Genome;
use crate::pareto::ObjectiveVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    Train,
    Test,
}

/// Immutable view of one dataset split, ready for fitness evaluation.
pub struct FitnessContext<'a> {
    dataset: &'a Dataset,
    pub split: &'a SplitDataset,
    pub k: usize,
    /// Min-max scaled copy of the feature matrix (train statistics) when
    /// normalization is on; otherwise the raw rows are used.
    scaled: Option<Vec<f64>>,
}

impl<'a> FitnessContext<'a> {
    pub fn new(dataset: &'a Dataset, split: &'a SplitDataset, k: usize, normalize: bool) -> Self {
        let scaled = normalize.then(|| {
            let d = dataset.dimension;
            let mut lo = vec![f64::INFINITY; d];
            let mut hi = vec![f64::NEG_INFINITY; d];
            for &i in &split.train {
                for (j, &v) in dataset.row(i).iter().enumerate() {
                    lo[j] = lo[j].min(v);
                    hi[j] = hi[j].max(v);
                }
            }
            let mut out = Vec::with_capacity(dataset.n_samples * d);
            for i in 0..dataset.n_samples {
                for (j, &v) in dataset.row(i).iter().enumerate() {
                    let range = hi[j] - lo[j];
                    out.push(if range > 0.0 { (v - lo[j]) / range } else { 0.0 });
                }
            }
            out
        });
        FitnessContext {
            dataset,
            split,
            k,
            scaled,
        }
    }

    pub fn dimension(&self) -> usize {
        self.dataset.dimension
    }

    #[inline]
    fn row(&self, i: usize) -> &[f64] {
        match &self.scaled {
            Some(m) => &m[i * self.dataset.dimension..(i + 1) * self.dataset.dimension],
            None => self.dataset.row(i),
        }
    }

    #[inline]
    fn label(&self, i: usize) -> usize {
        self.dataset.labels[i]
    }

    fn distance(&self, a: usize, b: usize, selected: &[usize]) -> f64 {
        let ra = self.row(a);
        let rb = self.row(b);
        let mut acc = 0.0;
        for &j in selected {
            let diff = ra[j] - rb[j];
            acc += diff * diff;
        }
        acc.sqrt()
    }

    /// Majority vote of the k nearest training rows over the selected
    /// features (Euclidean). Vote ties break toward the label with the
    /// smallest summed distance, then the smallest label index. With fewer
    /// than k training rows, all of them vote.
    pub fn knn_predict(&self, candidates: &[usize], query: usize, selected: &[usize]) -> usize {
        debug_assert!(!candidates.is_empty());
        debug_assert!(!selected.is_empty());
        let mut ranked: Vec<(f64, usize)> = candidates
            .iter()
            .map(|&i| (self.distance(i, query, selected), i))
            .collect();
        ranked.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        let k = self.k.min(ranked.len());
        vote(&ranked[..k], |i| self.label(i), self.dataset.n_classes)
    }

    /// Classification error per the selected subset. Train mode scores each
    /// training row against its k nearest other training rows; test mode
    /// scores test rows against the training set.
    pub fn classification_error(&self, genome: &Genome, mode: EvalMode) -> Result<f64> {
        if genome.len() != self.dataset.dimension {
            return Err(Error::Dimension {
                expected: self.dataset.dimension,
                got: genome.len(),
            });
        }
        let selected = genome.selected_indices();
        if selected.is_empty() {
            return Err(Error::Spec("empty feature subset".into()));
        }
        let (queries, pool_is_loo) = match mode {
            EvalMode::Train => (&self.split.train, true),
            EvalMode::Test => (&self.split.test, false),
        };
        let mut correct = 0usize;
        let mut pool: Vec<usize> = Vec::with_capacity(self.split.train.len());
        for &q in queries.iter() {
            pool.clear();
            pool.extend(self.split.train.iter().copied().filter(|&i| !pool_is_loo || i != q));
            let predicted = self.knn_predict(&pool, q, &selected);
            if predicted == self.label(q) {
                correct += 1;
            }
        }
        Ok(1.0 - correct as f64 / queries.len() as f64)
    }
}

fn vote<F: Fn(usize) -> usize>(
    neighbors: &[(f64, usize)],
    label_of: F,
    n_classes: usize,
) -> usize {
    let mut counts = vec![0usize; n_classes];
    let mut dist_sum = vec![0.0f64; n_classes];
    for &(d, i) in neighbors {
        let l = label_of(i);
        counts[l] += 1;
        dist_sum[l] += d;
    }
    let best_count = *counts.iter().max().unwrap();
    (0..n_classes)
        .filter(|&l| counts[l] == best_count)
        .min_by(|&a, &b| dist_sum[a].partial_cmp(&dist_sum[b]).unwrap().then(a.cmp(&b)))
        .unwrap()
}

/// Selected-feature ratio: popcount / d.
pub fn feature_ratio(genome: &Genome) -> f64 {
    if genome.len() == 0 {
        return 0.0;
    }
    genome.popcount() as f64 / genome.len() as f64
}

/// Budgeted fitness evaluator. Each `evaluate` call costs exactly one NFC,
/// including degenerate empty-subset genomes, which receive error 1.0
/// without invoking the classifier. A per-split cache skips recomputing the
/// classifier for genomes already seen.
pub struct Evaluator<'a> {
    pub ctx: FitnessContext<'a>,
    max_nfc: u64,
    nfc: u64,
    cache: HashMap<Genome, ObjectiveVector>,
}

impl<'a> Evaluator<'a> {
    pub fn new(ctx: FitnessContext<'a>, max_nfc: u64) -> Self {
        Evaluator {
            ctx,
            max_nfc,
            nfc: 0,
            cache: HashMap::new(),
        }
    }

    pub fn nfc(&self) -> u64 {
        self.nfc
    }

    pub fn remaining(&self) -> u64 {
        self.max_nfc - self.nfc
    }

    /// Train-mode objectives for one genome; charges one NFC.
    pub fn evaluate(&mut self, genome: &Genome) -> Result<ObjectiveVector> {
        if self.nfc >= self.max_nfc {
            return Err(Error::BudgetExhausted);
        }
        self.nfc += 1;
        if let Some(&cached) = self.cache.get(genome) {
            return Ok(cached);
        }
        let obj = if genome.popcount() == 0 {
            ObjectiveVector::new(1.0, 0.0)
        } else {
            ObjectiveVector::new(
                self.ctx.classification_error(genome, EvalMode::Train)?,
                feature_ratio(genome),
            )
        };
        self.cache.insert(genome.clone(), obj);
        Ok(obj)
    }

    /// Test-mode objectives; post-optimization scoring, not charged to NFC.
    pub fn evaluate_test(&self, genome: &Genome) -> Result<ObjectiveVector> {
        if genome.popcount() == 0 {
            return Ok(ObjectiveVector::new(1.0, 0.0));
        }
        Ok(ObjectiveVector::new(
            self.ctx.classification_error(genome, EvalMode::Test)?,
            feature_ratio(genome),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{randomize_labels, split, toy_dataset};
    use crate::genome::Genome;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn full_genome(d: usize) -> Genome {
        Genome::from_bits(std::iter::repeat(true).take(d))
    }

    #[test]
    fn separable_clouds_have_zero_train_error() {
        let ds = toy_dataset("sep", 60, 10, 2, 3, 5).unwrap();
        let sp = split(&ds, 0.2, 1, false).unwrap();
        let ctx = FitnessContext::new(&ds, &sp, 5, false);
        let err = ctx
            .classification_error(&full_genome(10), EvalMode::Train)
            .unwrap();
        assert_eq!(err, 0.0);
    }

    #[test]
    fn random_labels_give_chance_error() {
        let mut ds = toy_dataset("noise", 300, 8, 2, 0, 6).unwrap();
        randomize_labels(&mut ds, 99);
        let sp = split(&ds, 0.2, 2, false).unwrap();
        let ctx = FitnessContext::new(&ds, &sp, 5, false);
        let err = ctx
            .classification_error(&full_genome(8), EvalMode::Train)
            .unwrap();
        assert!((err - 0.5).abs() < 0.1, "err {err}");
    }

    #[test]
    fn single_training_row_predicts_its_label() {
        let ds = toy_dataset("t", 10, 4, 2, 2, 7).unwrap();
        let sp = SplitDataset {
            train: vec![3],
            test: vec![0],
            seed: 0,
        };
        let ctx = FitnessContext::new(&ds, &sp, 5, false);
        let selected = vec![0, 1, 2, 3];
        assert_eq!(ctx.knn_predict(&[3], 0, &selected), ds.labels[3]);
    }

    #[test]
    fn knn_matches_bruteforce_oracle() {
        // independent full-sort oracle with the same tie rules
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for trial in 0..40 {
            let n = rng.gen_range(20..120);
            let d = rng.gen_range(2..20);
            let classes = rng.gen_range(2..5);
            let mut ds = toy_dataset("o", n, d, classes, 1, trial).unwrap();
            randomize_labels(&mut ds, trial * 7 + 1);
            let sp = split(&ds, 0.2, trial, false).unwrap();
            let ctx = FitnessContext::new(&ds, &sp, 5, false);
            let selected: Vec<usize> = (0..d).filter(|_| rng.gen::<bool>()).collect();
            let selected = if selected.is_empty() { vec![0] } else { selected };
            for &q in &sp.test {
                let got = ctx.knn_predict(&sp.train, q, &selected);
                let want = oracle_predict(&ds, &sp.train, q, &selected, 5);
                assert_eq!(got, want);
            }
        }
    }

    fn oracle_predict(
        ds: &crate::dataset::Dataset,
        pool: &[usize],
        query: usize,
        selected: &[usize],
        k: usize,
    ) -> usize {
        let dist = |a: usize, b: usize| -> f64 {
            selected
                .iter()
                .map(|&j| (ds.row(a)[j] - ds.row(b)[j]).powi(2))
                .sum::<f64>()
                .sqrt()
        };
        let mut all: Vec<(f64, usize)> = pool.iter().map(|&i| (dist(i, query), i)).collect();
        all.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        let k = k.min(all.len());
        let take = &all[..k];
        let n_classes = ds.n_classes;
        let mut counts = vec![0usize; n_classes];
        let mut sums = vec![0.0f64; n_classes];
        for &(d, i) in take {
            counts[ds.labels[i]] += 1;
            sums[ds.labels[i]] += d;
        }
        let best = *counts.iter().max().unwrap();
        (0..n_classes)
            .filter(|&l| counts[l] == best)
            .min_by(|&a, &b| sums[a].partial_cmp(&sums[b]).unwrap().then(a.cmp(&b)))
            .unwrap()
    }

    #[test]
    fn feature_ratio_basics() {
        assert_eq!(feature_ratio(&full_genome(10)), 1.0);
        assert_eq!(feature_ratio(&Genome::zeros(10)), 0.0);
        let mut bits = vec![false; 2400];
        for b in bits.iter_mut().take(24) {
            *b = true;
        }
        assert!((feature_ratio(&Genome::from_bits(bits)) - 0.01).abs() < 1e-12);
    }

    #[test]
    fn evaluator_counts_every_call() {
        let ds = toy_dataset("t", 40, 6, 2, 2, 9).unwrap();
        let sp = split(&ds, 0.2, 1, false).unwrap();
        let mut ev = Evaluator::new(FitnessContext::new(&ds, &sp, 5, false), 100);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let g = Genome::from_bits((0..6).map(|_| rng.gen::<bool>()));
            let obj = ev.evaluate(&g).unwrap();
            assert!((0.0..=1.0).contains(&obj.error));
            assert!((0.0..=1.0).contains(&obj.ratio));
        }
        assert_eq!(ev.nfc(), 100);
        assert!(matches!(
            ev.evaluate(&full_genome(6)),
            Err(Error::BudgetExhausted)
        ));
    }

    #[test]
    fn empty_genome_gets_worst_error_without_classifier() {
        let ds = toy_dataset("t", 40, 6, 2, 2, 9).unwrap();
        let sp = split(&ds, 0.2, 1, false).unwrap();
        let mut ev = Evaluator::new(FitnessContext::new(&ds, &sp, 5, false), 10);
        let obj = ev.evaluate(&Genome::zeros(6)).unwrap();
        assert_eq!(obj.error, 1.0);
        assert_eq!(obj.ratio, 0.0);
        assert_eq!(ev.nfc(), 1);
    }

    #[test]
    fn train_error_is_deterministic_and_mask_correct() {
        let ds = toy_dataset("t", 60, 12, 3, 4, 11).unwrap();
        let sp = split(&ds, 0.2, 4, false).unwrap();
        let ctx = FitnessContext::new(&ds, &sp, 5, false);
        let g = Genome::from_bits((0..12).map(|i| i % 2 == 0));
        let a = ctx.classification_error(&g, EvalMode::Train).unwrap();
        let b = ctx.classification_error(&g, EvalMode::Train).unwrap();
        assert_eq!(a, b);

        // appending a constant feature that the genome leaves unselected
        // must not change anything
        let mut features = Vec::new();
        for i in 0..ds.n_samples {
            features.extend_from_slice(ds.row(i));
            features.push(3.25);
        }
        let wide = crate::dataset::Dataset::new(
            "wide".into(),
            features,
            ds.n_samples,
            13,
            ds.labels.clone(),
            ds.class_names.clone(),
        )
        .unwrap();
        let ctx2 = FitnessContext::new(&wide, &sp, 5, false);
        let g2 = Genome::from_bits((0..13).map(|i| i < 12 && i % 2 == 0));
        let c = ctx2.classification_error(&g2, EvalMode::Train).unwrap();
        assert_eq!(a, c);
    }
}
