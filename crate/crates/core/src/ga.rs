//! Genetic search over bias vectors.
//!
//! Each individual is a genome `[B_1, .., B_n, omega, cf]`; its fitness is the
//! cost of the tree that [`induce_tree`] builds under it. Selection is
//! rank-proportionate, crossover is two-point and mutation redraws a gene
//! uniformly within its legal range, so genomes never leave their bounds.

use std::collections::HashMap;
use std::io;

use rand::distributions::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;
use crate::tree::{
    fitness_with_mode, induce_tree, BiasVector, DecisionTree, FitnessMode, FitnessReport, MAX_BIAS,
    MAX_CF, MIN_CF,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub crossover_rate: f64,
    /// Per-gene probability of a uniform redraw.
    pub mutation_rate: f64,
    pub elitism_count: usize,
    pub rng_seed: u64,
    pub error_cost: f64,
    pub fitness_mode: FitnessMode,
    /// Evaluate each generation on the rayon pool; results are identical either way.
    pub parallel: bool,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 50,
            generations: 20,
            crossover_rate: 0.6,
            mutation_rate: 0.001,
            elitism_count: 1,
            rng_seed: 0,
            error_cost: 1000.0,
            fitness_mode: FitnessMode::StaticSum,
            parallel: true,
        }
    }
}

impl GaConfig {
    pub fn with_seed(seed: u64) -> Self {
        GaConfig {
            rng_seed: seed,
            ..GaConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.population_size == 0 {
            return Err(Error::Config("population size must be at least 1".into()));
        }
        if self.generations == 0 {
            return Err(Error::Config("at least one generation is required".into()));
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return Err(Error::Config(format!(
                "crossover rate {} outside [0, 1]",
                self.crossover_rate
            )));
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return Err(Error::Config(format!(
                "mutation rate {} outside [0, 1]",
                self.mutation_rate
            )));
        }
        if self.elitism_count > self.population_size {
            return Err(Error::Config(format!(
                "elitism count {} exceeds population size {}",
                self.elitism_count, self.population_size
            )));
        }
        if !self.error_cost.is_finite() || self.error_cost < 0.0 {
            return Err(Error::Config(format!(
                "error cost {} must be finite and >= 0",
                self.error_cost
            )));
        }
        Ok(())
    }
}

/// Legal range of gene `i` in a genome of `len` genes.
fn gene_range(i: usize, len: usize) -> (f64, f64) {
    if i + 2 < len {
        (0.0, MAX_BIAS)
    } else if i + 2 == len {
        (0.0, 1.0)
    } else {
        (MIN_CF, MAX_CF)
    }
}

/// A genome drawn uniformly within every gene's range.
pub fn random_genome<R: Rng + ?Sized>(rng: &mut R, n_features: usize) -> Vec<f64> {
    let len = n_features + 2;
    (0..len)
        .map(|i| {
            let (lo, hi) = gene_range(i, len);
            rng.gen_range(lo..=hi)
        })
        .collect()
}

pub fn mutate<R: Rng + ?Sized>(rng: &mut R, genome: &mut [f64], rate: f64) {
    let len = genome.len();
    for (i, gene) in genome.iter_mut().enumerate() {
        if rng.gen_bool(rate) {
            let (lo, hi) = gene_range(i, len);
            *gene = rng.gen_range(lo..=hi);
        }
    }
}

/// Swaps the segment between two random cut points.
pub fn two_point_crossover<R: Rng + ?Sized>(rng: &mut R, a: &mut [f64], b: &mut [f64]) {
    debug_assert_eq!(a.len(), b.len());
    let mut i = rng.gen_range(0..=a.len());
    let mut j = rng.gen_range(0..=a.len());
    if i > j {
        std::mem::swap(&mut i, &mut j);
    }
    a[i..j].swap_with_slice(&mut b[i..j]);
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub tree: DecisionTree,
    pub report: FitnessReport,
}

/// Fitness of the pruned tree induced under `bias`.
pub fn evaluate_individual(
    bias: &BiasVector,
    matrix: &FeatureMatrix,
    costs: &[u32],
    config: &GaConfig,
) -> Evaluation {
    let tree = induce_tree(matrix, bias, costs);
    let report = fitness_with_mode(&tree, matrix, config.error_cost, config.fitness_mode);
    Evaluation { tree, report }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationStats {
    /// 1-based; generation 1 is the random initial population.
    pub generation: usize,
    pub best: f64,
    pub mean: f64,
    pub best_test_cost: u32,
    pub best_errors: usize,
}

#[derive(Debug, Clone)]
pub struct Population {
    pub generation: usize,
    pub individuals: Vec<BiasVector>,
    pub evaluations: Vec<FitnessReport>,
}

#[derive(Debug, Clone)]
pub struct EvolveResult {
    pub best_tree: DecisionTree,
    pub best_report: FitnessReport,
    pub best_bias: BiasVector,
    /// Generation in which the best tree first appeared.
    pub best_generation: usize,
    pub history: Vec<GenerationStats>,
    pub final_population: Population,
}

/// Runs the search and returns the lowest-fitness tree seen in any generation.
pub fn evolve(matrix: &FeatureMatrix, costs: &[u32], config: &GaConfig) -> Result<EvolveResult> {
    config.validate()?;
    if matrix.n_examples() == 0 {
        return Err(Error::EmptyDataset);
    }
    let n = matrix.n_features();
    if costs.len() != n {
        return Err(Error::Config(format!(
            "{} costs for {n} features",
            costs.len()
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let mut genomes: Vec<Vec<f64>> = (0..config.population_size)
        .map(|_| random_genome(&mut rng, n))
        .collect();
    let mut cache: HashMap<String, FitnessReport> = HashMap::new();
    let mut history = Vec::with_capacity(config.generations);
    let mut best: Option<(DecisionTree, FitnessReport, BiasVector, usize)> = None;
    let mut population = None;

    for generation in 1..=config.generations {
        let biases: Vec<BiasVector> = genomes
            .iter()
            .map(|g| BiasVector::from_genes(g).expect("genes stay within range"))
            .collect();
        let trees: Vec<DecisionTree> = if config.parallel {
            biases
                .par_iter()
                .map(|b| induce_tree(matrix, b, costs))
                .collect()
        } else {
            biases
                .iter()
                .map(|b| induce_tree(matrix, b, costs))
                .collect()
        };
        let reports: Vec<FitnessReport> = trees
            .iter()
            .map(|tree| {
                cache
                    .entry(tree.structure_key())
                    .or_insert_with(|| {
                        fitness_with_mode(tree, matrix, config.error_cost, config.fitness_mode)
                    })
                    .clone()
            })
            .collect();

        let mut order: Vec<usize> = (0..reports.len()).collect();
        order.sort_by(|&a, &b| {
            reports[a]
                .fitness
                .total_cmp(&reports[b].fitness)
                .then(a.cmp(&b))
        });
        let top = order[0];
        history.push(GenerationStats {
            generation,
            best: reports[top].fitness,
            mean: reports.iter().map(|r| r.fitness).sum::<f64>() / reports.len() as f64,
            best_test_cost: reports[top].test_cost,
            best_errors: reports[top].error_count,
        });
        if best
            .as_ref()
            .is_none_or(|(_, r, _, _)| reports[top].fitness < r.fitness)
        {
            best = Some((
                trees[top].clone(),
                reports[top].clone(),
                biases[top].clone(),
                generation,
            ));
        }

        if generation == config.generations {
            population = Some(Population {
                generation,
                individuals: biases,
                evaluations: reports,
            });
            break;
        }
        genomes = next_generation(&mut rng, &genomes, &order, config);
    }

    let (best_tree, best_report, best_bias, best_generation) =
        best.expect("at least one generation ran");
    Ok(EvolveResult {
        best_tree,
        best_report,
        best_bias,
        best_generation,
        history,
        final_population: population.expect("final generation recorded"),
    })
}

/// Builds the next population from genomes ranked best-first by `order`.
fn next_generation(
    rng: &mut ChaCha8Rng,
    genomes: &[Vec<f64>],
    order: &[usize],
    config: &GaConfig,
) -> Vec<Vec<f64>> {
    let size = genomes.len();
    // linear ranking: the best gets weight `size`, the worst 1
    let mut weights = vec![0usize; size];
    for (rank, &i) in order.iter().enumerate() {
        weights[i] = size - rank;
    }
    let pick = WeightedIndex::new(&weights).expect("positive weights");

    let mut next: Vec<Vec<f64>> = order
        .iter()
        .take(config.elitism_count)
        .map(|&i| genomes[i].clone())
        .collect();
    while next.len() < size {
        let mut a = genomes[pick.sample(rng)].clone();
        let mut b = genomes[pick.sample(rng)].clone();
        if rng.gen_bool(config.crossover_rate) {
            two_point_crossover(rng, &mut a, &mut b);
        }
        mutate(rng, &mut a, config.mutation_rate);
        mutate(rng, &mut b, config.mutation_rate);
        next.push(a);
        if next.len() < size {
            next.push(b);
        }
    }
    next
}

/// Delimited history: generation, best, mean, best_test_cost, best_errors.
pub fn write_history<W: io::Write>(
    history: &[GenerationStats],
    writer: W,
    delimiter: u8,
) -> Result<()> {
    let mut out = csv::WriterBuilder::new()
        .delimiter(delimiter)
        .from_writer(writer);
    for row in history {
        out.serialize(row)?;
    }
    out.flush()?;
    Ok(())
}
