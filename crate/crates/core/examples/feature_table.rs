//! Lists the feature table and the features that hold on one train.
//!
//! ```text
//! cargo run --example feature_table
//! ```

use rl_icet::data::trains10;
use rl_icet::features::FeatureKind;
use rl_icet::{build_feature_table, evaluate_features};

fn main() {
    let table = build_feature_table();
    for kind in [
        FeatureKind::Unary,
        FeatureKind::Pair,
        FeatureKind::Infront,
        FeatureKind::Train,
    ] {
        let n = table.specs().iter().filter(|s| s.kind() == kind).count();
        println!("{kind:?}: {n}");
    }
    println!("total: {}\n", table.len());

    for name in [
        "ellipse",
        "short_closed",
        "train_4",
        "ellipse_peaked_roof",
        "rectangle_load_infront_jagged_roof",
    ] {
        let spec = table.by_name(name).expect("known feature");
        println!(
            "{:<36} cost {:>2}  {}",
            spec.name,
            spec.cost,
            spec.fragment_text()
        );
    }

    let trains = trains10();
    let matrix = evaluate_features(&trains, &table);
    let holding: Vec<_> = (0..matrix.n_features())
        .filter(|&f| matrix.value(0, f))
        .collect();
    println!(
        "\n{} of {} features hold on {}; the cheapest:",
        holding.len(),
        table.len(),
        trains[0].id
    );
    let mut cheapest = holding.clone();
    cheapest.sort_by_key(|&f| (table.specs()[f].cost, f));
    for f in cheapest.into_iter().take(12) {
        println!("  {} ({})", table.specs()[f].name, table.specs()[f].cost);
    }
}
