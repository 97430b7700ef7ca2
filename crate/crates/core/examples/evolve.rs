//! Evolves bias vectors on the bundled twenty trains over several seeds and
//! prints how the best tree improves.
//!
//! ```text
//! cargo run --release --example evolve -- [seeds]
//! ```

use rl_icet::data::trains20;
use rl_icet::ga::{evolve, GaConfig};
use rl_icet::theory::{simplify_dnf, tree_to_dnf, Theory};
use rl_icet::{build_feature_table, evaluate_features};

fn main() -> rl_icet::Result<()> {
    let seeds: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(10);
    let table = build_feature_table();
    let matrix = evaluate_features(&trains20(), &table);
    let costs = table.costs();

    println!("seed  gen1-best  final-best  ratio  errors  complexity");
    for seed in 0..seeds {
        let result = evolve(&matrix, &costs, &GaConfig::with_seed(seed))?;
        let first = result.history.first().map_or(f64::NAN, |g| g.best);
        let last = result.history.last().map_or(f64::NAN, |g| g.best);
        let theory = Theory::from_dnf(
            simplify_dnf(&tree_to_dnf(&result.best_tree), &matrix),
            &table,
        )?;
        println!(
            "{seed:>4}  {first:>9.2}  {last:>10.2}  {:>5.2}  {:>6}  {:>10}",
            last / first,
            result.best_report.error_count,
            theory.complexity
        );
        if seed == 0 {
            println!("{}\n{}", result.best_tree.render_text(), theory.rendered);
        }
    }
    Ok(())
}
