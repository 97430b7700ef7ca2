//! Scores the size complexity of a Prolog program or goal fragment.
//!
//! ```text
//! cargo run --example score_program -- path/to/program.pl
//! cargo run --example score_program            # scores built-in samples
//! ```

use rl_icet::complexity::{fragment_breakdown, program_breakdown, Breakdown};

const SAMPLES: &[(&str, bool)] = &[
    (
        "eastbound(T) :-\n    has_car(T, C),\n    short(C),\n    closed(C).\n",
        false,
    ),
    (
        "eastbound(T) :-\n    len1(T, 4),\n    \\+ (has_car(T, C), double(C)).\n",
        false,
    ),
    (
        "has_car(T, C1), infront(T, C1, C2), rectangle(C1), arg(5, C2, jagged)",
        true,
    ),
];

fn show(text: &str, b: &Breakdown) {
    println!("{text}");
    println!(
        "  -> {} (clauses {}, predicates {}, variables {}, constants {}, operators {})\n",
        b.total(),
        b.clauses,
        b.predicates,
        b.variables,
        b.constants,
        b.operators
    );
}

fn main() -> rl_icet::Result<()> {
    if let Some(path) = std::env::args().nth(1) {
        let text = std::fs::read_to_string(&path).map_err(|source| rl_icet::Error::Read {
            path: path.into(),
            source,
        })?;
        show(&text, &program_breakdown(&text)?);
        return Ok(());
    }
    for &(text, fragment) in SAMPLES {
        let b = if fragment {
            fragment_breakdown(text)?
        } else {
            program_breakdown(text)?
        };
        show(text, &b);
    }
    Ok(())
}
