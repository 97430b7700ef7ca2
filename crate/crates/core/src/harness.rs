//! End-to-end runs: load trains, propositionalize, evolve, emit a program.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{evaluate_features, FeatureMatrix, FeatureTable, InfrontMode};
use crate::ga::{evolve, write_history, GaConfig, GenerationStats};
use crate::theory::{agreement, simplify_dnf, tree_to_dnf, Theory};
use crate::train::{parse_trains, random_train, Direction, Train};
use crate::tree::{DecisionTree, FitnessReport};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureSet {
    /// All 1199 features.
    #[default]
    Full,
    /// The 28 unary and 9 train features.
    UnaryTrain,
    /// Named features from the full table, in the order given.
    Custom(Vec<String>),
}

impl FeatureSet {
    /// `full`, `unary-train`, or a path to a file with one feature name per line
    /// (`#` starts a comment).
    pub fn parse(arg: &str) -> Result<Self> {
        match arg {
            "full" => Ok(FeatureSet::Full),
            "unary-train" | "unary_train" => Ok(FeatureSet::UnaryTrain),
            path => {
                let text = read(Path::new(path))?;
                let names: Vec<String> = text
                    .lines()
                    .map(|l| l.split('#').next().unwrap_or("").trim())
                    .filter(|l| !l.is_empty())
                    .map(str::to_string)
                    .collect();
                if names.is_empty() {
                    return Err(Error::Config(format!("feature list {path} is empty")));
                }
                Ok(FeatureSet::Custom(names))
            }
        }
    }

    pub fn table(&self, infront: InfrontMode) -> Result<FeatureTable> {
        let table = match self {
            FeatureSet::Full => FeatureTable::full(),
            FeatureSet::UnaryTrain => FeatureTable::unary_train(),
            FeatureSet::Custom(names) => FeatureTable::select(names)?,
        };
        Ok(table.with_infront(infront))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub data: Vec<PathBuf>,
    pub ga: GaConfig,
    pub feature_set: FeatureSet,
    pub infront: InfrontMode,
    pub output_dir: Option<PathBuf>,
    pub format: ReportFormat,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub east_as_east: usize,
    pub east_as_west: usize,
    pub west_as_east: usize,
    pub west_as_west: usize,
}

impl Confusion {
    pub fn errors(&self) -> usize {
        self.east_as_west + self.west_as_east
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: RunConfig,
    pub n_trains: usize,
    pub n_features: usize,
    pub best_generation: usize,
    pub fitness: FitnessReport,
    pub tree: DecisionTree,
    pub history: Vec<GenerationStats>,
    pub program: String,
    pub complexity: u32,
    pub confusion: Confusion,
}

impl RunReport {
    pub fn training_errors(&self) -> usize {
        self.confusion.errors()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "trains: {}  features: {}  seed: {}",
            self.n_trains, self.n_features, self.config.ga.rng_seed
        );
        let _ = writeln!(
            out,
            "best fitness {:.3} (test cost {}, {} errors) found in generation {}",
            self.fitness.fitness,
            self.fitness.test_cost,
            self.fitness.error_count,
            self.best_generation
        );
        let _ = writeln!(out, "\ngeneration  best  mean");
        for g in &self.history {
            let _ = writeln!(out, "{:>10}  {:.3}  {:.3}", g.generation, g.best, g.mean);
        }
        let _ = writeln!(out, "\ntree:\n{}", self.tree.render_text());
        let _ = writeln!(
            out,
            "program (complexity {}):\n{}",
            self.complexity, self.program
        );
        let c = &self.confusion;
        let _ = writeln!(
            out,
            "training: east->east {} east->west {} west->east {} west->west {}",
            c.east_as_east, c.east_as_west, c.west_as_east, c.west_as_west
        );
        out
    }

    pub fn render(&self, format: ReportFormat) -> Result<String> {
        match format {
            ReportFormat::Text => Ok(self.to_text()),
            ReportFormat::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Read {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses and concatenates every file, in order.
pub fn load_trains(paths: &[PathBuf]) -> Result<Vec<Train>> {
    let mut trains = Vec::new();
    for path in paths {
        trains.extend(parse_trains(&read(path)?)?);
    }
    Ok(trains)
}

/// Induces a program for the trains named by `config.data`.
pub fn run_induction(config: &RunConfig) -> Result<RunReport> {
    if config.data.is_empty() {
        return Err(Error::Config("no data files given".into()));
    }
    let trains = load_trains(&config.data)?;
    run_on_trains(&trains, config)
}

/// Like [`run_induction`], for trains already in memory.
pub fn run_on_trains(trains: &[Train], config: &RunConfig) -> Result<RunReport> {
    config.ga.validate()?;
    if trains.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let table = config.feature_set.table(config.infront)?;
    let matrix = evaluate_features(trains, &table);
    let costs = table.costs();
    let result = evolve(&matrix, &costs, &config.ga)?;

    let dnf = simplify_dnf(&tree_to_dnf(&result.best_tree), &matrix);
    let theory = Theory::from_dnf(dnf, &table)?;
    let confusion = confusion(&theory, &matrix);

    let report = RunReport {
        config: config.clone(),
        n_trains: trains.len(),
        n_features: table.len(),
        best_generation: result.best_generation,
        fitness: result.best_report,
        tree: result.best_tree,
        history: result.history,
        program: theory.rendered.clone(),
        complexity: theory.complexity,
        confusion,
    };
    if let Some(dir) = &config.output_dir {
        write_outputs(dir, &report, &theory, &table, &matrix)?;
    }
    Ok(report)
}

fn confusion(theory: &Theory, matrix: &FeatureMatrix) -> Confusion {
    let mut c = Confusion::default();
    for (i, label) in matrix.labels().iter().enumerate() {
        match (label, theory.classify_example(matrix, i)) {
            (Direction::East, Direction::East) => c.east_as_east += 1,
            (Direction::East, Direction::West) => c.east_as_west += 1,
            (Direction::West, Direction::East) => c.west_as_east += 1,
            (Direction::West, Direction::West) => c.west_as_west += 1,
        }
    }
    c
}

fn write_outputs(
    dir: &Path,
    report: &RunReport,
    theory: &Theory,
    table: &FeatureTable,
    matrix: &FeatureMatrix,
) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("tree.txt"), report.tree.render_text())?;
    fs::write(dir.join("tree.json"), report.tree.to_json()? + "\n")?;
    let mut history = Vec::new();
    write_history(&report.history, &mut history, b'\t')?;
    fs::write(dir.join("history.tsv"), history)?;
    fs::write(dir.join("theory.pl"), &theory.rendered)?;
    fs::write(
        dir.join("theory.json"),
        theory.to_json(table, Some(theory.accuracy(matrix)))? + "\n",
    )?;
    let name = match report.config.format {
        ReportFormat::Text => "report.txt",
        ReportFormat::Json => "report.json",
    };
    fs::write(dir.join(name), report.render(report.config.format)?)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiReport {
    pub runs: Vec<RunReport>,
    /// Sum of the emitted programs' complexities.
    pub total_complexity: u32,
}

pub fn run_multi(configs: &[RunConfig]) -> Result<MultiReport> {
    if configs.is_empty() {
        return Err(Error::Config("no datasets given".into()));
    }
    let runs = configs
        .iter()
        .enumerate()
        .map(|(i, c)| run_induction(&numbered(c, i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(runs))
}

/// [`run_multi`] over in-memory train sets sharing one configuration.
pub fn run_multi_on(sets: &[Vec<Train>], config: &RunConfig) -> Result<MultiReport> {
    if sets.is_empty() {
        return Err(Error::Config("no datasets given".into()));
    }
    let runs = sets
        .iter()
        .enumerate()
        .map(|(i, t)| run_on_trains(t, &numbered(config, i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(runs))
}

/// Run `i` of a multi-run writes under `<output_dir>/set<i+1>`.
fn numbered(config: &RunConfig, i: usize) -> RunConfig {
    let mut config = config.clone();
    if let Some(dir) = &config.output_dir {
        config.output_dir = Some(dir.join(format!("set{}", i + 1)));
    }
    config
}

fn summarize(runs: Vec<RunReport>) -> MultiReport {
    let total_complexity = runs.iter().map(|r| r.complexity).sum();
    MultiReport {
        runs,
        total_complexity,
    }
}

/// Agreement between two stored theories on the trains in `data`.
pub fn run_agreement(theory_a: &Path, theory_b: &Path, data: &Path) -> Result<f64> {
    let table = FeatureTable::full();
    let a = Theory::from_json(&read(theory_a)?, &table)?;
    let b = Theory::from_json(&read(theory_b)?, &table)?;
    let trains = parse_trains(&read(data)?)?;
    agreement(&a, &b, &trains, &table)
}

/// Random trains of 2 to 4 cars with coin-flip labels. Not challenge data.
pub fn generate_trains(count: usize, seed: u64) -> Vec<Train> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut east, mut west) = (0, 0);
    (0..count)
        .map(|_| {
            let label = if rng.gen_bool(0.5) {
                Direction::East
            } else {
                Direction::West
            };
            let id = match label {
                Direction::East => {
                    east += 1;
                    format!("east{east}")
                }
                Direction::West => {
                    west += 1;
                    format!("west{west}")
                }
            };
            random_train(&mut rng, id, label, 2, 4)
        })
        .collect()
}
