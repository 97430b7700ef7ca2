//! Parses a train file, prints each train's cars and renders it back.
//!
//! ```text
//! cargo run --example parse_trains -- [path/to/trains.pl]
//! ```

use rl_icet::data::TRAINS10;
use rl_icet::{parse_trains, render_train};

fn main() -> rl_icet::Result<()> {
    let source = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path).map_err(|source| rl_icet::Error::Read {
            path: path.into(),
            source,
        })?,
        None => TRAINS10.to_string(),
    };
    let trains = parse_trains(&source)?;
    for train in &trains {
        println!("{} ({}, {} cars)", train.id, train.label, train.len());
        for car in &train.cars {
            println!(
                "  {}: {} {} {} roof={} axles={} load={}x{}",
                car.position,
                car.length,
                car.shape,
                car.walls,
                car.roof,
                car.axles,
                car.load_count,
                car.load_shape
            );
        }
    }
    if let Some(first) = trains.first() {
        println!("\n{}", render_train(first));
    }

    // malformed input reports where it went wrong
    if let Err(e) =
        parse_trains("eastbound([c(1, rectangle, short, not_double, none, 4, l(circle, 1))]).")
    {
        println!("\nrejected: {e}");
    }
    Ok(())
}
