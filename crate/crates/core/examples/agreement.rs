//! Induces theories on two halves of the bundled trains and measures how
//! often they agree on freshly generated trains.
//!
//! ```text
//! cargo run --release --example agreement
//! ```

use rl_icet::data::trains20;
use rl_icet::harness::generate_trains;
use rl_icet::{
    agreement, build_feature_table, evaluate_features, evolve, simplify_dnf, tree_to_dnf, GaConfig,
    Theory, Train,
};

fn induce(trains: &[Train], seed: u64) -> rl_icet::Result<Theory> {
    let table = build_feature_table();
    let matrix = evaluate_features(trains, &table);
    let config = GaConfig {
        population_size: 30,
        generations: 10,
        ..GaConfig::with_seed(seed)
    };
    let result = evolve(&matrix, &table.costs(), &config)?;
    Theory::from_dnf(
        simplify_dnf(&tree_to_dnf(&result.best_tree), &matrix),
        &table,
    )
}

fn main() -> rl_icet::Result<()> {
    let table = build_feature_table();
    let all = trains20();
    let (first, second): (Vec<Train>, Vec<Train>) = all.into_iter().partition(|t| {
        let digits: String = t.id.chars().filter(char::is_ascii_digit).collect();
        digits.parse::<u32>().is_ok_and(|n| n <= 5)
    });
    let a = induce(&first, 1)?;
    let b = induce(&second, 2)?;
    println!("theory A ({} trains):\n{}", first.len(), a.rendered);
    println!("theory B ({} trains):\n{}", second.len(), b.rendered);

    let probe = generate_trains(500, 99);
    println!(
        "agreement on 500 generated trains: {:.3}",
        agreement(&a, &b, &probe, &table)?
    );
    println!(
        "agreement of A with itself:       {:.3}",
        agreement(&a, &a, &probe, &table)?
    );
    Ok(())
}
