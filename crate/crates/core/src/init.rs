//! Population initializers.
//!
//! Bit-string Uniform (BU): every bit is an independent fair coin, so
//! popcounts concentrate around d/2. Uniform Covering (UC): the number of
//! set bits is drawn uniformly from a range first, then that many positions
//! are chosen without replacement, which makes popcounts flat across the
//! range instead of binomially peaked.

use rand::Rng;

use crate::error::{Error, Result};
use crate::genome::{Genome, GenomeBuilder};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitMethod {
    BitStringUniform,
    UniformCovering,
}

/// Each of the `N * d` bits is independently true with probability 0.5.
pub fn bitstring_uniform<R: Rng>(n: usize, d: usize, rng: &mut R) -> Vec<Genome> {
    (0..n)
        .map(|_| Genome::from_bits((0..d).map(|_| rng.gen::<bool>())))
        .collect()
}

/// Uniform Covering initialization: for each individual, draw the number of
/// set bits uniformly from `[min_vars, max_vars]`, then pick that many
/// distinct positions uniformly without replacement.
pub fn genuine_init<R: Rng>(
    n: usize,
    d: usize,
    min_vars: usize,
    max_vars: usize,
    rng: &mut R,
) -> Result<Vec<Genome>> {
    if min_vars > max_vars {
        return Err(Error::Spec(format!(
            "min_vars {min_vars} exceeds max_vars {max_vars}"
        )));
    }
    if max_vars > d {
        return Err(Error::Spec(format!(
            "max_vars {max_vars} exceeds dimension {d}"
        )));
    }
    let mut indices: Vec<usize> = (0..d).collect();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let n_trues = rng.gen_range(min_vars..=max_vars);
        // partial Fisher-Yates: after the loop, indices[..n_trues] is a
        // uniform sample without replacement
        for i in 0..n_trues {
            let j = rng.gen_range(i..d);
            indices.swap(i, j);
        }
        let mut b = GenomeBuilder::zeros(d);
        for &idx in &indices[..n_trues] {
            b.set(idx, true);
        }
        out.push(b.build());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn genuine_forced_full_subset() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pop = genuine_init(1, 5, 5, 5, &mut rng).unwrap();
        assert_eq!(pop[0].popcount(), 5);
    }

    #[test]
    fn genuine_rejects_bad_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(genuine_init(1, 5, 3, 2, &mut rng).is_err());
        assert!(genuine_init(1, 5, 1, 6, &mut rng).is_err());
    }

    #[test]
    fn genuine_popcount_always_in_window() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pop = genuine_init(500, 40, 3, 17, &mut rng).unwrap();
        assert!(pop.iter().all(|g| (3..=17).contains(&g.popcount())));
    }

    #[test]
    fn genuine_fixed_size_pairs_are_uniform() {
        // d=5, min=max=2: all 10 position pairs should appear with roughly
        // equal frequency.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let trials = 20_000;
        let mut counts = std::collections::HashMap::new();
        for _ in 0..trials {
            let g = &genuine_init(1, 5, 2, 2, &mut rng).unwrap()[0];
            assert_eq!(g.popcount(), 2);
            *counts.entry(g.selected_indices()).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 10);
        let expected = trials as f64 / 10.0;
        for &c in counts.values() {
            // ~4.5 sigma of Binomial(20000, 0.1)
            assert!((c as f64 - expected).abs() < 200.0, "pair count {c}");
        }
    }

    #[test]
    fn bitstring_single_bit_is_bernoulli() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut ones = 0;
        for _ in 0..10_000 {
            ones += bitstring_uniform(1, 1, &mut rng)[0].popcount();
        }
        assert!((4500..5500).contains(&ones));
    }

    #[test]
    fn same_seed_reproduces_population() {
        let pop_a = bitstring_uniform(3, 4, &mut ChaCha8Rng::seed_from_u64(42));
        let pop_b = bitstring_uniform(3, 4, &mut ChaCha8Rng::seed_from_u64(42));
        assert_eq!(pop_a, pop_b);
        let uc_a = genuine_init(3, 4, 1, 4, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        let uc_b = genuine_init(3, 4, 1, 4, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        assert_eq!(uc_a, uc_b);
    }

    #[test]
    fn genewise_marginal_is_symmetric() {
        // under UC with [1, d] every position has the same marginal
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let d = 20;
        let pop = genuine_init(20_000, d, 1, d, &mut rng).unwrap();
        let mut per_bit = vec![0usize; d];
        for g in &pop {
            for i in g.selected_indices() {
                per_bit[i] += 1;
            }
        }
        let mean = per_bit.iter().sum::<usize>() as f64 / d as f64;
        for &c in &per_bit {
            assert!((c as f64 - mean).abs() / mean < 0.03, "bit count {c} vs mean {mean}");
        }
    }
}
