//! Scores the hand-built four-test tree on the bundled twenty trains and
//! prints the program it becomes.
//!
//! ```text
//! cargo run --example entry_tree
//! ```

use rl_icet::complexity::program_breakdown;
use rl_icet::data::{entry_tree, trains20};
use rl_icet::tree::fitness;
use rl_icet::{build_feature_table, evaluate_features, simplify_dnf, tree_to_dnf, Theory};

fn main() -> rl_icet::Result<()> {
    let table = build_feature_table();
    let matrix = evaluate_features(&trains20(), &table);
    let tree = entry_tree(&table)?;
    let report = fitness(&tree, &matrix, 1000.0);
    println!("{}", tree.render_text());
    println!(
        "test cost {}  errors {}  fitness {}",
        report.test_cost, report.error_count, report.fitness
    );

    let raw = tree_to_dnf(&tree);
    let simple = simplify_dnf(&raw, &matrix);
    println!(
        "\n{} literals before simplification, {} after",
        count(&raw),
        count(&simple)
    );
    let theory = Theory::from_dnf(simple, &table)?;
    println!("\n{}", theory.rendered);
    let b = program_breakdown(&theory.rendered)?;
    println!(
        "complexity {} = {} clause + {} predicates + {} variables + {} constants + {} operators",
        b.total(),
        b.clauses,
        b.predicates,
        b.variables,
        b.constants,
        b.operators
    );
    Ok(())
}

fn count(dnf: &[Vec<rl_icet::theory::Literal>]) -> usize {
    dnf.iter().map(Vec::len).sum()
}
