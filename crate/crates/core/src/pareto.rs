//! Dominance, non-dominated sorting, crowding distance, and elitist
//! survival. Both objectives are minimized.

use crate::error::{Error, Result};

/// The two minimized objectives of a candidate feature subset:
/// classification error and selected-feature ratio, both in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveVector {
    pub error: f64,
    pub ratio: f64,
}

impl ObjectiveVector {
    pub fn new(error: f64, ratio: f64) -> Self {
        ObjectiveVector { error, ratio }
    }

    pub fn values(&self) -> [f64; 2] {
        [self.error, self.ratio]
    }
}

/// True iff `a` is no worse than `b` in every objective and strictly better
/// in at least one.
pub fn dominates(a: &ObjectiveVector, b: &ObjectiveVector) -> bool {
    let av = a.values();
    let bv = b.values();
    let mut strictly_better = false;
    for (x, y) in av.iter().zip(&bv) {
        if x > y {
            return false;
        }
        if x < y {
            strictly_better = true;
        }
    }
    strictly_better
}

/// Fast non-dominated sort (domination counts plus dominated lists).
/// Front 1 holds every index not dominated by any other; subsequent fronts
/// are computed on the residual set. Order within a front is stable input
/// order.
pub fn non_dominated_sort(objs: &[ObjectiveVector]) -> Vec<Vec<usize>> {
    let n = objs.len();
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut domination_count = vec![0usize; n];

    for i in 0..n {
        for j in (i + 1)..n {
            if dominates(&objs[i], &objs[j]) {
                dominated_by[i].push(j);
                domination_count[j] += 1;
            } else if dominates(&objs[j], &objs[i]) {
                dominated_by[j].push(i);
                domination_count[i] += 1;
            }
        }
    }
    let mut current: Vec<usize> = (0..n).filter(|&i| domination_count[i] == 0).collect();

    let mut fronts = Vec::new();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominated_by[i] {
                domination_count[j] -= 1;
                if domination_count[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(std::mem::replace(&mut current, next));
    }
    fronts
}

/// Per-objective neighbor-gap crowding distance for one front. Extremes get
/// infinity; interior members accumulate the normalized gap between their
/// sorted neighbors. A constant objective column contributes 0.
pub fn crowding_distance(front_objs: &[ObjectiveVector]) -> Vec<f64> {
    let n = front_objs.len();
    let mut dist = vec![0.0f64; n];
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    for obj in 0..2 {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            front_objs[a].values()[obj]
                .partial_cmp(&front_objs[b].values()[obj])
                .unwrap()
        });
        let lo = front_objs[order[0]].values()[obj];
        let hi = front_objs[order[n - 1]].values()[obj];
        let range = hi - lo;
        if range <= 0.0 {
            // constant column: contributes nothing, not even extremes
            continue;
        }
        dist[order[0]] = f64::INFINITY;
        dist[order[n - 1]] = f64::INFINITY;
        for w in 1..n - 1 {
            let gap = front_objs[order[w + 1]].values()[obj]
                - front_objs[order[w - 1]].values()[obj];
            dist[order[w]] += gap / range;
        }
    }
    dist
}

/// A population annotated with its fronts and crowding distances.
#[derive(Debug, Clone)]
pub struct Ranking {
    /// fronts[k] lists the indices of front k+1 in stable input order.
    pub fronts: Vec<Vec<usize>>,
    /// rank[i] is the 0-based front index of individual i.
    pub rank: Vec<usize>,
    pub crowding: Vec<f64>,
}

/// Ranks a population: non-dominated sort plus per-front crowding.
pub fn rank_population(objs: &[ObjectiveVector]) -> Ranking {
    let fronts = non_dominated_sort(objs);
    let mut rank = vec![0usize; objs.len()];
    let mut crowding = vec![0.0f64; objs.len()];
    for (k, front) in fronts.iter().enumerate() {
        let front_objs: Vec<ObjectiveVector> = front.iter().map(|&i| objs[i]).collect();
        let dists = crowding_distance(&front_objs);
        for (&i, d) in front.iter().zip(dists) {
            rank[i] = k;
            crowding[i] = d;
        }
    }
    Ranking {
        fronts,
        rank,
        crowding,
    }
}

/// Elitist environmental selection: admit whole fronts in rank order; the
/// front that overflows `n` is truncated by descending crowding distance,
/// ties broken by stable input order. Returns the surviving indices.
pub fn survive(ranking: &Ranking, n: usize) -> Result<Vec<usize>> {
    let total: usize = ranking.fronts.iter().map(Vec::len).sum();
    if total < n {
        return Err(Error::Spec(format!(
            "cannot select {n} survivors from {total} individuals"
        )));
    }
    let mut selected = Vec::with_capacity(n);
    for front in &ranking.fronts {
        if selected.len() + front.len() <= n {
            selected.extend_from_slice(front);
            if selected.len() == n {
                break;
            }
        } else {
            let mut by_crowding: Vec<usize> = front.clone();
            // stable sort keeps input order on equal crowding
            by_crowding.sort_by(|&a, &b| {
                ranking.crowding[b]
                    .partial_cmp(&ranking.crowding[a])
                    .unwrap()
            });
            by_crowding.truncate(n - selected.len());
            selected.extend(by_crowding);
            break;
        }
    }
    Ok(selected)
}

/// Naive remove-nondominated-and-repeat sorter; test oracle for
/// [`non_dominated_sort`]. Kept here so both the unit tests and the
/// acceptance suite share one independently coded reference.
pub fn naive_non_dominated_sort(objs: &[ObjectiveVector]) -> Vec<Vec<usize>> {
    let mut remaining: Vec<usize> = (0..objs.len()).collect();
    let mut fronts = Vec::new();
    while !remaining.is_empty() {
        let front: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&i| {
                !remaining
                    .iter()
                    .any(|&j| j != i && dominates(&objs[j], &objs[i]))
            })
            .collect();
        remaining.retain(|i| !front.contains(i));
        fronts.push(front);
    }
    fronts
}
