//! The generational loop: NSGA-II with configurable initialization and the
//! diverse variant's last-front substitution.
//!
//! Three variants share one code path:
//!   - `nsga2`: bit-string uniform initialization, no replacement.
//!   - `nsga2-genuine`: uniform-covering initialization, no replacement.
//!   - `diverse-nsga2`: uniform-covering initialization plus last-front
//!     replacement sized within the population's current popcount window.
//!
//! Termination is a fixed evaluation budget (NFC); initial, offspring, and
//! replacement evaluations all count.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::genome::Genome;
use crate::init::{bitstring_uniform, genuine_init, InitMethod};
use crate::metrics::{avg_pairwise_hamming, hypervolume_2d};
use crate::objective::Evaluator;
use crate::pareto::{rank_population, survive, ObjectiveVector, Ranking};
use crate::variation::{
    bitflip_mutation, eliminate_duplicates, single_point_crossover, tournament_select,
    VariationConfig,
};

pub const HV_REFERENCE: (f64, f64) = (1.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Nsga2,
    Nsga2Genuine,
    DiverseNsga2,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Nsga2, Variant::Nsga2Genuine, Variant::DiverseNsga2];

    pub fn init_method(&self) -> InitMethod {
        match self {
            Variant::Nsga2 => InitMethod::BitStringUniform,
            _ => InitMethod::UniformCovering,
        }
    }

    pub fn replacement_enabled(&self) -> bool {
        matches!(self, Variant::DiverseNsga2)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Variant::Nsga2 => "nsga2",
            Variant::Nsga2Genuine => "nsga2-genuine",
            Variant::DiverseNsga2 => "diverse-nsga2",
        }
    }

    pub fn parse(s: &str) -> Result<Variant> {
        match s {
            "nsga2" => Ok(Variant::Nsga2),
            "nsga2-genuine" | "nsga2_genuine" => Ok(Variant::Nsga2Genuine),
            "diverse-nsga2" | "diverse_nsga2" => Ok(Variant::DiverseNsga2),
            _ => Err(Error::Config(format!("unknown variant {s:?}"))),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone)]
pub struct OptimizerConfig {
    pub population_size: usize,
    pub max_nfc: u64,
    pub variation: VariationConfig,
    pub variant: Variant,
    pub seed: u64,
}

impl OptimizerConfig {
    pub fn new(variant: Variant, seed: u64) -> Self {
        OptimizerConfig {
            population_size: 100,
            max_nfc: 15_000,
            variation: VariationConfig::default(),
            variant,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.population_size < 4 || self.population_size % 2 != 0 {
            return Err(Error::Config(format!(
                "population size must be even and >= 4, got {}",
                self.population_size
            )));
        }
        if self.max_nfc < self.population_size as u64 {
            return Err(Error::Config(format!(
                "budget {} smaller than the initial population {}",
                self.max_nfc, self.population_size
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Individual {
    pub genome: Genome,
    pub objectives: ObjectiveVector,
}

#[derive(Debug, Clone)]
pub struct GenerationRecord {
    pub generation: usize,
    pub nfc_consumed: u64,
    pub hv_train: f64,
    pub avg_pairwise_hamming: f64,
    pub last_front_size: usize,
    pub replaced_count: usize,
    pub front_count: usize,
    /// The [alpha, beta] popcount window measured for this generation's
    /// replacement, when it fired.
    pub window: Option<(usize, usize)>,
    /// popcount min/max over the replacement individuals, when any.
    pub replacement_popcounts: Option<(usize, usize)>,
}

/// Member of the final train Pareto front with its post-hoc test objectives.
#[derive(Debug, Clone)]
pub struct FrontMember {
    pub genome: Genome,
    pub train: ObjectiveVector,
    pub test: ObjectiveVector,
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub final_population: Vec<Individual>,
    pub final_ranking: Ranking,
    /// First front in train objective space, with test objectives attached.
    pub front: Vec<FrontMember>,
    pub history: Vec<GenerationRecord>,
    pub total_nfc: u64,
}

/// Popcount window over the current population: (min, max), with the lower
/// bound clamped to 1 so replacements never produce an empty subset.
pub fn size_window(population: &[Individual]) -> (usize, usize) {
    let mut lo = usize::MAX;
    let mut hi = 0;
    for ind in population {
        let p = ind.genome.popcount();
        lo = lo.min(p);
        hi = hi.max(p);
    }
    (lo.max(1), hi.max(1))
}

/// Swaps the last-front members out for `new_individuals`, leaving every
/// other front untouched. Fails on a single-front population (the caller
/// bypasses replacement in that case).
pub fn replace_last_front(
    population: &mut [Individual],
    ranking: &Ranking,
    new_individuals: Vec<Individual>,
) -> Result<()> {
    if ranking.fronts.len() < 2 {
        return Err(Error::Spec("single-front population: replacement bypassed".into()));
    }
    let last = ranking.fronts.last().unwrap();
    if last.len() != new_individuals.len() {
        return Err(Error::Spec(format!(
            "{} replacements for a last front of {}",
            new_individuals.len(),
            last.len()
        )));
    }
    for (&idx, ind) in last.iter().zip(new_individuals) {
        population[idx] = ind;
    }
    Ok(())
}

/// Executes one optimization run against an evaluator bound to a dataset
/// split. See the module docs for the loop structure.
pub fn run(config: &OptimizerConfig, evaluator: &mut Evaluator) -> Result<RunResult> {
    config.validate()?;
    let n = config.population_size;
    let d = evaluator.ctx.dimension();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let genomes = match config.variant.init_method() {
        InitMethod::BitStringUniform => bitstring_uniform(n, d, &mut rng),
        InitMethod::UniformCovering => genuine_init(n, d, 1, d, &mut rng)?,
    };
    let mut population: Vec<Individual> = genomes
        .into_iter()
        .map(|genome| {
            let objectives = evaluator.evaluate(&genome)?;
            Ok(Individual { genome, objectives })
        })
        .collect::<Result<_>>()?;

    let mut history = Vec::new();
    let ranking = rank_current(&population);
    history.push(make_record(0, evaluator, &population, &ranking, 0, None, None));

    let mut generation = 0usize;
    while evaluator.remaining() > 0 {
        generation += 1;
        let ranking = rank_current(&population);

        // one offspring batch of size N before duplicate elimination
        let mut children = Vec::with_capacity(n);
        while children.len() < n {
            let p1 = tournament_select(&ranking, &mut rng)?;
            let p2 = tournament_select(&ranking, &mut rng)?;
            let (c1, c2) = if rng.gen_bool(config.variation.crossover_prob) {
                single_point_crossover(
                    &population[p1].genome,
                    &population[p2].genome,
                    &mut rng,
                )?
            } else {
                (population[p1].genome.clone(), population[p2].genome.clone())
            };
            children.push(bitflip_mutation(&c1, config.variation.mutation_prob, &mut rng));
            if children.len() < n {
                children.push(bitflip_mutation(&c2, config.variation.mutation_prob, &mut rng));
            }
        }
        if config.variation.duplicate_elimination {
            let existing: Vec<Genome> =
                population.iter().map(|i| i.genome.clone()).collect();
            children = eliminate_duplicates(children, &existing);
        }
        children.truncate(evaluator.remaining() as usize);

        let offspring: Vec<Individual> = children
            .into_iter()
            .map(|genome| {
                let objectives = evaluator.evaluate(&genome)?;
                Ok(Individual { genome, objectives })
            })
            .collect::<Result<Vec<_>>>()?;

        let mut merged = population;
        merged.extend(offspring);
        let merged_ranking = rank_current(&merged);
        let survivors = survive(&merged_ranking, n)?;
        population = survivors.into_iter().map(|i| merged[i].clone()).collect();

        let post_ranking = rank_current(&population);
        let front_count = post_ranking.fronts.len();
        let last_front_size = post_ranking.fronts.last().unwrap().len();

        let mut replaced = 0usize;
        let mut window = None;
        let mut replacement_popcounts = None;
        if config.variant.replacement_enabled()
            && front_count >= 2
            && evaluator.remaining() >= last_front_size as u64
        {
            let (alpha, beta) = size_window(&population);
            let replacements = sample_replacements(
                last_front_size,
                d,
                alpha,
                beta,
                &population,
                &mut rng,
            )?;
            let evaluated: Vec<Individual> = replacements
                .into_iter()
                .map(|genome| {
                    let objectives = evaluator.evaluate(&genome)?;
                    Ok(Individual { genome, objectives })
                })
                .collect::<Result<Vec<_>>>()?;
            let pc_lo = evaluated.iter().map(|i| i.genome.popcount()).min().unwrap();
            let pc_hi = evaluated.iter().map(|i| i.genome.popcount()).max().unwrap();
            replace_last_front(&mut population, &post_ranking, evaluated)?;
            replaced = last_front_size;
            window = Some((alpha, beta));
            replacement_popcounts = Some((pc_lo, pc_hi));
        }

        let record_ranking = rank_current(&population);
        history.push(make_record(
            generation,
            evaluator,
            &population,
            &record_ranking,
            replaced,
            window,
            replacement_popcounts,
        ));
        // carry the pre-replacement front structure into the record
        let rec = history.last_mut().unwrap();
        rec.front_count = front_count;
        rec.last_front_size = last_front_size;
    }

    let final_ranking = rank_current(&population);
    let front = final_ranking.fronts[0]
        .iter()
        .map(|&i| {
            let ind = &population[i];
            Ok(FrontMember {
                genome: ind.genome.clone(),
                train: ind.objectives,
                test: evaluator.evaluate_test(&ind.genome)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(RunResult {
        total_nfc: evaluator.nfc(),
        front,
        history,
        final_ranking,
        final_population: population,
    })
}

fn rank_current(population: &[Individual]) -> Ranking {
    let objs: Vec<ObjectiveVector> = population.iter().map(|i| i.objectives).collect();
    rank_population(&objs)
}

/// UC-sampled replacement genomes, resampled on duplicates up to 10 attempts
/// each, then accepted as-is.
fn sample_replacements(
    count: usize,
    d: usize,
    alpha: usize,
    beta: usize,
    population: &[Individual],
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Genome>> {
    let mut out: Vec<Genome> = Vec::with_capacity(count);
    for _ in 0..count {
        let mut accepted = None;
        for _attempt in 0..10 {
            let g = genuine_init(1, d, alpha, beta, rng)?.remove(0);
            let dup = population.iter().any(|i| i.genome == g) || out.contains(&g);
            if !dup {
                accepted = Some(g);
                break;
            }
            accepted = Some(g);
        }
        out.push(accepted.unwrap());
    }
    Ok(out)
}

fn make_record(
    generation: usize,
    evaluator: &Evaluator,
    population: &[Individual],
    ranking: &Ranking,
    replaced: usize,
    window: Option<(usize, usize)>,
    replacement_popcounts: Option<(usize, usize)>,
) -> GenerationRecord {
    let front_objs: Vec<ObjectiveVector> = ranking.fronts[0]
        .iter()
        .map(|&i| population[i].objectives)
        .collect();
    let genomes: Vec<Genome> = population.iter().map(|i| i.genome.clone()).collect();
    GenerationRecord {
        generation,
        nfc_consumed: evaluator.nfc(),
        hv_train: hypervolume_2d(&front_objs, HV_REFERENCE),
        avg_pairwise_hamming: avg_pairwise_hamming(&genomes).unwrap_or(0.0),
        last_front_size: ranking.fronts.last().unwrap().len(),
        replaced_count: replaced,
        front_count: ranking.fronts.len(),
        window,
        replacement_popcounts,
    }
}
