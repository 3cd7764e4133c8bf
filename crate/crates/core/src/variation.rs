//! Generating operators: binary tournament selection, single-point
//! crossover, bit-flip mutation, and genotypic duplicate elimination.

use std::collections::HashSet;

use rand::Rng;

use crate::error::{Error, Result};
use crate::genome::{Genome, GenomeBuilder};
use crate::pareto::Ranking;

#[derive(Debug, Clone, Copy)]
pub struct VariationConfig {
    /// Per-bit flip probability.
    pub mutation_prob: f64,
    /// Probability that a mating pair undergoes crossover at all.
    pub crossover_prob: f64,
    pub duplicate_elimination: bool,
}

impl Default for VariationConfig {
    fn default() -> Self {
        VariationConfig {
            mutation_prob: 0.01,
            crossover_prob: 1.0,
            duplicate_elimination: true,
        }
    }
}

/// Binary tournament: two distinct members drawn uniformly; lower front rank
/// wins, equal ranks fall back to higher crowding distance, full ties go to
/// the first drawn.
pub fn tournament_select<R: Rng>(ranking: &Ranking, rng: &mut R) -> Result<usize> {
    let n = ranking.rank.len();
    if n < 2 {
        return Err(Error::Selection(n));
    }
    let first = rng.gen_range(0..n);
    let mut second = rng.gen_range(0..n - 1);
    if second >= first {
        second += 1;
    }
    Ok(tournament_winner(ranking, first, second))
}

fn tournament_winner(ranking: &Ranking, first: usize, second: usize) -> usize {
    if ranking.rank[second] < ranking.rank[first] {
        return second;
    }
    if ranking.rank[second] == ranking.rank[first]
        && ranking.crowding[second] > ranking.crowding[first]
    {
        return second;
    }
    first
}

/// Single-point crossover: cut point drawn uniformly from `1..d`, prefixes
/// swapped.
pub fn single_point_crossover<R: Rng>(
    a: &Genome,
    b: &Genome,
    rng: &mut R,
) -> Result<(Genome, Genome)> {
    let d = a.len();
    if b.len() != d {
        return Err(Error::Dimension {
            expected: d,
            got: b.len(),
        });
    }
    if d < 2 {
        return Err(Error::Spec(format!("crossover needs dimension >= 2, got {d}")));
    }
    let cut = rng.gen_range(1..d);
    let mut c1 = GenomeBuilder::from_genome(a);
    let mut c2 = GenomeBuilder::from_genome(b);
    for i in cut..d {
        c1.set(i, b.get(i));
        c2.set(i, a.get(i));
    }
    Ok((c1.build(), c2.build()))
}

/// Flips each bit independently with probability `p`.
pub fn bitflip_mutation<R: Rng>(g: &Genome, p: f64, rng: &mut R) -> Genome {
    let mut b = GenomeBuilder::from_genome(g);
    for i in 0..g.len() {
        if rng.gen_bool(p) {
            b.flip(i);
        }
    }
    b.build()
}

/// Drops any child bit-identical to an earlier child or to an existing
/// population member; order preserved, dropped children are not replaced.
pub fn eliminate_duplicates(children: Vec<Genome>, existing: &[Genome]) -> Vec<Genome> {
    let mut seen: HashSet<Genome> = existing.iter().cloned().collect();
    let mut kept = Vec::with_capacity(children.len());
    for child in children {
        if seen.insert(child.clone()) {
            kept.push(child);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pareto::{rank_population, ObjectiveVector};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn g(s: &str) -> Genome {
        Genome::from_bitstring(s).unwrap()
    }

    #[test]
    fn tournament_prefers_lower_rank() {
        let ranking = Ranking {
            fronts: vec![vec![0], vec![1]],
            rank: vec![0, 2],
            crowding: vec![0.5, 0.5],
        };
        assert_eq!(tournament_winner(&ranking, 1, 0), 0);
        assert_eq!(tournament_winner(&ranking, 0, 1), 0);
    }

    #[test]
    fn tournament_breaks_rank_tie_by_crowding() {
        let ranking = Ranking {
            fronts: vec![vec![0, 1]],
            rank: vec![0, 0],
            crowding: vec![f64::INFINITY, 0.7],
        };
        assert_eq!(tournament_winner(&ranking, 1, 0), 0);
    }

    #[test]
    fn tournament_full_tie_goes_to_first_drawn() {
        let ranking = Ranking {
            fronts: vec![vec![0, 1]],
            rank: vec![0, 0],
            crowding: vec![0.7, 0.7],
        };
        assert_eq!(tournament_winner(&ranking, 1, 0), 1);
        assert_eq!(tournament_winner(&ranking, 0, 1), 0);
    }

    #[test]
    fn tournament_needs_two_members() {
        let ranking = Ranking {
            fronts: vec![vec![0]],
            rank: vec![0],
            crowding: vec![f64::INFINITY],
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(tournament_select(&ranking, &mut rng).is_err());
    }

    #[test]
    fn tournament_reaches_every_first_front_member() {
        let objs: Vec<ObjectiveVector> = vec![
            ObjectiveVector::new(0.1, 0.9),
            ObjectiveVector::new(0.5, 0.5),
            ObjectiveVector::new(0.9, 0.1),
            ObjectiveVector::new(0.95, 0.95),
        ];
        let ranking = rank_population(&objs);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut hit = [false; 4];
        for _ in 0..2000 {
            hit[tournament_select(&ranking, &mut rng).unwrap()] = true;
        }
        for &i in &ranking.fronts[0] {
            assert!(hit[i], "front-1 member {i} never selected");
        }
    }

    #[test]
    fn crossover_splices_at_cut() {
        // force cut=2 by scanning seeds
        let a = g("0000");
        let b = g("1111");
        for seed in 0..64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (c1, c2) = single_point_crossover(&a, &b, &mut rng).unwrap();
            let ones = c1.popcount();
            assert_eq!(c1.popcount() + c2.popcount(), 4);
            if ones == 2 {
                assert_eq!(c1, g("0011"));
                assert_eq!(c2, g("1100"));
                return;
            }
        }
        panic!("cut point 2 never drawn in 64 seeds");
    }

    #[test]
    fn crossover_identical_parents_yield_parent() {
        let a = g("10101");
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (c1, c2) = single_point_crossover(&a, &a, &mut rng).unwrap();
        assert_eq!(c1, a);
        assert_eq!(c2, a);
    }

    #[test]
    fn crossover_conserves_bit_multiset_per_position() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = 40;
            let a = Genome::from_bits((0..n).map(|_| rng.gen::<bool>()));
            let b = Genome::from_bits((0..n).map(|_| rng.gen::<bool>()));
            let (c1, c2) = single_point_crossover(&a, &b, &mut rng).unwrap();
            for i in 0..n {
                assert_eq!(c1.get(i) ^ c2.get(i), a.get(i) ^ b.get(i));
            }
        }
    }

    #[test]
    fn crossover_rejects_d_below_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(single_point_crossover(&g("1"), &g("0"), &mut rng).is_err());
    }

    #[test]
    fn mutation_p_zero_is_identity() {
        let a = g("1010011");
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(bitflip_mutation(&a, 0.0, &mut rng), a);
    }

    #[test]
    fn mutation_p_one_is_complement() {
        let a = g("1010011");
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let m = bitflip_mutation(&a, 1.0, &mut rng);
        assert_eq!(m, g("0101100"));
    }

    #[test]
    fn mutation_flip_count_matches_binomial_moments() {
        let d = 10_000;
        let p = 0.01;
        let zero = Genome::zeros(d);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let trials = 300;
        let mut total = 0usize;
        for _ in 0..trials {
            total += bitflip_mutation(&zero, p, &mut rng).popcount();
        }
        let mean = total as f64 / trials as f64;
        assert!((mean - 100.0).abs() < 10.0, "mean flips {mean}");
    }

    #[test]
    fn duplicates_are_dropped() {
        let a = g("1010");
        let b = g("0101");
        assert_eq!(eliminate_duplicates(vec![a.clone(), a.clone()], &[]), vec![a.clone()]);
        assert_eq!(eliminate_duplicates(vec![a.clone()], &[a.clone()]), Vec::<Genome>::new());
        assert_eq!(
            eliminate_duplicates(vec![a.clone(), b.clone()], &[]),
            vec![a, b]
        );
    }
}
