use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rl_icet::complexity::{complexity, fragment_complexity};
use rl_icet::features::{evaluate_features, InfrontMode};
use rl_icet::ga::GaConfig;
use rl_icet::harness::{self, FeatureSet, ReportFormat, RunConfig};
use rl_icet::train::render_trains;

#[derive(Parser)]
#[command(
    name = "rl-icet",
    version,
    about = "Low-complexity train classifiers via genetic bias search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a tree for the given trains and emit it as a program.
    Induce(RunArgs),
    /// Induce one program per data file and report the total complexity.
    Multi(RunArgs),
    /// Percentage of trains on which two stored theories agree.
    Agree {
        theory_a: PathBuf,
        theory_b: PathBuf,
        #[arg(long)]
        data: PathBuf,
    },
    /// Dump the feature table with costs, or a feature matrix with --data.
    Features {
        #[arg(long, default_value = "full")]
        features: String,
        #[arg(long)]
        data: Vec<PathBuf>,
        #[arg(long)]
        infront_anywhere: bool,
    },
    /// Size-complexity of a program file.
    Score {
        file: PathBuf,
        /// Score a headless goal sequence (no clause counted).
        #[arg(long)]
        fragment: bool,
    },
    /// Random trains of 2-4 cars with coin-flip labels.
    GenTrains {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, required = true)]
    data: Vec<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    pop_size: usize,
    #[arg(long, default_value_t = 20)]
    generations: usize,
    #[arg(long, default_value_t = 1000.0)]
    error_cost: f64,
    /// `full`, `unary-train`, or a file of feature names.
    #[arg(long, default_value = "full")]
    features: String,
    #[arg(long)]
    emit_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Let `infront` relate any earlier car to any later one.
    #[arg(long)]
    infront_anywhere: bool,
}

impl RunArgs {
    fn config(&self) -> rl_icet::Result<RunConfig> {
        Ok(RunConfig {
            data: self.data.clone(),
            ga: GaConfig {
                population_size: self.pop_size,
                generations: self.generations,
                error_cost: self.error_cost,
                rng_seed: self.seed,
                ..GaConfig::default()
            },
            feature_set: FeatureSet::parse(&self.features)?,
            infront: infront(self.infront_anywhere),
            output_dir: self.emit_dir.clone(),
            format: match self.format {
                Format::Text => ReportFormat::Text,
                Format::Json => ReportFormat::Json,
            },
        })
    }
}

fn infront(anywhere: bool) -> InfrontMode {
    if anywhere {
        InfrontMode::Anywhere
    } else {
        InfrontMode::Adjacent
    }
}

fn run(cli: Cli) -> rl_icet::Result<ExitCode> {
    match cli.command {
        Command::Induce(args) => {
            let config = args.config()?;
            let report = harness::run_induction(&config)?;
            print!("{}", report.render(config.format)?);
            Ok(if report.training_errors() > 0 {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Multi(args) => {
            let base = args.config()?;
            let configs: Vec<RunConfig> = base
                .data
                .iter()
                .map(|path| RunConfig {
                    data: vec![path.clone()],
                    ..base.clone()
                })
                .collect();
            let report = harness::run_multi(&configs)?;
            match base.format {
                ReportFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                ReportFormat::Text => {
                    for (run, config) in report.runs.iter().zip(&configs) {
                        println!(
                            "{}: complexity {} (test cost {}, {} training errors)",
                            config.data[0].display(),
                            run.complexity,
                            run.fitness.test_cost,
                            run.training_errors()
                        );
                    }
                    println!("total complexity: {}", report.total_complexity);
                }
            }
            let failed = report.runs.iter().any(|r| r.training_errors() > 0);
            Ok(if failed {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Agree {
            theory_a,
            theory_b,
            data,
        } => {
            let fraction = harness::run_agreement(&theory_a, &theory_b, &data)?;
            println!("agreement: {:.1}%", 100.0 * fraction);
            Ok(ExitCode::SUCCESS)
        }
        Command::Features {
            features,
            data,
            infront_anywhere,
        } => {
            let table = FeatureSet::parse(&features)?.table(infront(infront_anywhere))?;
            if data.is_empty() {
                io::stdout().lock().write_all(table.to_tsv().as_bytes())?;
            } else {
                let trains = harness::load_trains(&data)?;
                evaluate_features(&trains, &table).write_delimited(io::stdout().lock(), b'\t')?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Score { file, fragment } => {
            let text = fs::read_to_string(&file)
                .map_err(|source| rl_icet::Error::Read { path: file, source })?;
            let score = if fragment {
                fragment_complexity(&text)?
            } else {
                complexity(&text)?
            };
            println!("{score}");
            Ok(ExitCode::SUCCESS)
        }
        Command::GenTrains { count, seed, out } => {
            let text = format!(
                "% {count} random trains, seed {seed}. Labels are coin flips, not challenge data.\n{}",
                render_trains(&harness::generate_trains(count, seed))
            );
            match out {
                Some(path) => fs::write(path, text)?,
                None => io::stdout().lock().write_all(text.as_bytes())?,
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) if broken_pipe(&err) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

/// Output cut short by a closed reader, as in `rl-icet features | head`.
fn broken_pipe(err: &rl_icet::Error) -> bool {
    match err {
        rl_icet::Error::Io(e) => e.kind() == io::ErrorKind::BrokenPipe,
        rl_icet::Error::Csv(e) => {
            matches!(e.kind(), csv::ErrorKind::Io(e) if e.kind() == io::ErrorKind::BrokenPipe)
        }
        _ => false,
    }
}
