//! Front-quality metrics: 2-D hypervolume against a reference point,
//! average pairwise Hamming distance, and best-accuracy extraction.

use crate::error::{Error, Result};
use crate::genome::Genome;
use crate::pareto::{dominates, ObjectiveVector};

/// Area dominated by `front` and bounded by `reference` (both objectives
/// minimized). Dominated points are filtered internally; points at or
/// beyond the reference contribute nothing.
pub fn hypervolume_2d(front: &[ObjectiveVector], reference: (f64, f64)) -> f64 {
    let (rx, ry) = reference;
    let mut pts: Vec<ObjectiveVector> = front
        .iter()
        .filter(|p| {
            if p.error > rx || p.ratio > ry {
                eprintln!(
                    "warning: hypervolume point ({}, {}) beyond reference ({rx}, {ry}); contributes 0",
                    p.error, p.ratio
                );
            }
            p.error < rx && p.ratio < ry
        })
        .copied()
        .collect();
    // non-dominated subset only
    pts = pts
        .iter()
        .filter(|p| !pts.iter().any(|q| dominates(q, p)))
        .copied()
        .collect();
    pts.sort_by(|a, b| a.error.partial_cmp(&b.error).unwrap());
    pts.dedup_by(|a, b| a.error == b.error && a.ratio == b.ratio);
    let mut hv = 0.0;
    let mut prev_ratio = ry;
    for p in &pts {
        hv += (rx - p.error) * (prev_ratio - p.ratio);
        prev_ratio = p.ratio;
    }
    hv
}

/// Mean Hamming distance over all unordered pairs.
pub fn avg_pairwise_hamming(pop: &[Genome]) -> Result<f64> {
    let n = pop.len();
    if n < 2 {
        return Err(Error::Spec(format!(
            "pairwise diversity needs at least 2 genomes, got {n}"
        )));
    }
    let mut total = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            total += pop[i].hamming_distance(&pop[j])?;
        }
    }
    Ok(total as f64 / (n * (n - 1) / 2) as f64)
}

/// Best accuracy on a front: max of 1 - error, ties resolved toward the
/// member with fewer selected features. Returns (accuracy, feature count).
pub fn max_accuracy(front: &[(ObjectiveVector, usize)]) -> Result<(f64, usize)> {
    if front.is_empty() {
        return Err(Error::Spec("max_accuracy on an empty front".into()));
    }
    let best = front
        .iter()
        .min_by(|(oa, fa), (ob, fb)| {
            oa.error
                .partial_cmp(&ob.error)
                .unwrap()
                .then(fa.cmp(fb))
        })
        .unwrap();
    Ok((1.0 - best.0.error, best.1))
}

/// Grid-count hypervolume oracle: the unit-square cell-center grid is scanned
/// column by column. Independent of [`hypervolume_2d`]'s sweep; test-only
/// reference, also used by the acceptance suite.
pub fn hypervolume_grid_oracle(front: &[ObjectiveVector], resolution: usize) -> f64 {
    let mut pts: Vec<(f64, f64)> = front.iter().map(|p| (p.error, p.ratio)).collect();
    pts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let step = 1.0 / resolution as f64;
    let mut dominated_cells = 0usize;
    for col in 0..resolution {
        let x = (col as f64 + 0.5) * step;
        // lowest ratio among points with error <= x
        let mut best = f64::INFINITY;
        for &(e, r) in &pts {
            if e <= x {
                best = best.min(r);
            } else {
                break;
            }
        }
        if best.is_infinite() {
            continue;
        }
        // cells with center y >= best are dominated: y = (row + 0.5) * step
        let first_row = (best / step - 0.5).ceil().max(0.0) as usize;
        dominated_cells += resolution.saturating_sub(first_row);
    }
    dominated_cells as f64 * step * step
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ov(e: f64, r: f64) -> ObjectiveVector {
        ObjectiveVector::new(e, r)
    }

    #[test]
    fn hv_ideal_point_covers_unit_square() {
        assert_eq!(hypervolume_2d(&[ov(0.0, 0.0)], (1.0, 1.0)), 1.0);
    }

    #[test]
    fn hv_single_point() {
        assert_eq!(hypervolume_2d(&[ov(0.5, 0.5)], (1.0, 1.0)), 0.25);
    }

    #[test]
    fn hv_two_point_inclusion_exclusion() {
        let hv = hypervolume_2d(&[ov(0.2, 0.6), ov(0.6, 0.2)], (1.0, 1.0));
        assert!((hv - 0.48).abs() < 1e-12);
    }

    #[test]
    fn hv_ignores_dominated_and_out_of_range_points() {
        let base = hypervolume_2d(&[ov(0.2, 0.6), ov(0.6, 0.2)], (1.0, 1.0));
        let with_noise = hypervolume_2d(
            &[ov(0.2, 0.6), ov(0.6, 0.2), ov(0.7, 0.7), ov(1.0, 0.0)],
            (1.0, 1.0),
        );
        assert!((base - with_noise).abs() < 1e-12);
    }

    #[test]
    fn hv_monotone_under_insertion() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let n = rng.gen_range(1..15);
            let mut front: Vec<ObjectiveVector> =
                (0..n).map(|_| ov(rng.gen(), rng.gen())).collect();
            let before = hypervolume_2d(&front, (1.0, 1.0));
            front.push(ov(rng.gen(), rng.gen()));
            let after = hypervolume_2d(&front, (1.0, 1.0));
            assert!(after >= before - 1e-12);
        }
    }

    #[test]
    fn hv_matches_grid_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let n = rng.gen_range(1..=20);
            let front: Vec<ObjectiveVector> =
                (0..n).map(|_| ov(rng.gen(), rng.gen())).collect();
            let exact = hypervolume_2d(&front, (1.0, 1.0));
            let grid = hypervolume_grid_oracle(&front, 2000);
            assert!((exact - grid).abs() < 2e-3, "exact {exact} grid {grid}");
        }
    }

    #[test]
    fn diversity_basics() {
        let g = |s: &str| Genome::from_bitstring(s).unwrap();
        assert_eq!(
            avg_pairwise_hamming(&[g("10110"), g("10110")]).unwrap(),
            0.0
        );
        assert_eq!(
            avg_pairwise_hamming(&[g("00000"), g("11111")]).unwrap(),
            5.0
        );
        assert_eq!(
            avg_pairwise_hamming(&[g("000"), g("011"), g("101")]).unwrap(),
            2.0
        );
        assert!(avg_pairwise_hamming(&[g("000")]).is_err());
    }

    #[test]
    fn diversity_is_permutation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pop: Vec<Genome> = (0..8)
            .map(|_| Genome::from_bits((0..30).map(|_| rng.gen::<bool>())))
            .collect();
        let a = avg_pairwise_hamming(&pop).unwrap();
        let mut rev = pop.clone();
        rev.reverse();
        assert_eq!(a, avg_pairwise_hamming(&rev).unwrap());
    }

    #[test]
    fn max_accuracy_argmax_and_tie_rule() {
        let front = vec![(ov(0.3, 0.2), 20), (ov(0.1, 0.4), 40), (ov(0.2, 0.3), 30)];
        assert_eq!(max_accuracy(&front).unwrap(), (0.9, 40));
        let tied = vec![(ov(0.1, 0.4), 40), (ov(0.1, 0.12), 12)];
        assert_eq!(max_accuracy(&tied).unwrap(), (0.9, 12));
        let single = vec![(ov(0.25, 0.1), 7)];
        assert_eq!(max_accuracy(&single).unwrap(), (0.75, 7));
    }
}
