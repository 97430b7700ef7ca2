//! Runs the harness on several generated datasets and totals the
//! complexity of the emitted programs, writing each run's artifacts.
//!
//! ```text
//! cargo run --release --example multi_run -- [output-dir]
//! ```

use rl_icet::ga::GaConfig;
use rl_icet::harness::{generate_trains, run_multi_on, FeatureSet, RunConfig};

fn main() -> rl_icet::Result<()> {
    let sets: Vec<_> = (0..5).map(|i| generate_trains(10, 100 + i)).collect();
    let config = RunConfig {
        ga: GaConfig {
            population_size: 30,
            generations: 10,
            ..GaConfig::with_seed(3)
        },
        feature_set: FeatureSet::UnaryTrain,
        output_dir: std::env::args().nth(1).map(Into::into),
        ..RunConfig::default()
    };
    let report = run_multi_on(&sets, &config)?;
    for (i, run) in report.runs.iter().enumerate() {
        println!(
            "set {i}: complexity {:>3}  fitness {:>8.2}  training errors {}",
            run.complexity,
            run.fitness.fitness,
            run.training_errors()
        );
    }
    println!("total complexity {}", report.total_complexity);
    Ok(())
}
