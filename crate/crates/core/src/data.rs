//! Bundled train sets.

use crate::error::Result;
use crate::features::FeatureTable;
use crate::train::{parse_trains, Direction, Train};
use crate::tree::{DecisionTree, Node};

/// Michalski's original ten trains.
pub const TRAINS10: &str = include_str!("../data/trains10.pl");

/// The original ten followed by ten more: the first competition's training set.
pub const TRAINS20: &str = include_str!("../data/trains20.pl");

pub fn trains10() -> Vec<Train> {
    parse_trains(TRAINS10).expect("bundled trains10.pl parses")
}

pub fn trains20() -> Vec<Train> {
    parse_trains(TRAINS20).expect("bundled trains20.pl parses")
}

/// The winning tree for the twenty trains: a short closed car means East;
/// otherwise a four-car train with a U-shaped car and a circle load is East.
///
/// Leaf counts are left at zero; [`crate::tree::prune`] recomputes them.
pub fn entry_tree(table: &FeatureTable) -> Result<DecisionTree> {
    let split = |name: &str, one: Node, zero: Node| -> Result<Node> {
        let index = table.index_of(name)?;
        Ok(Node::split(
            index,
            name,
            table.specs()[index].cost,
            one,
            zero,
        ))
    };
    let east = || Node::leaf(Direction::East, 0, 0);
    let west = || Node::leaf(Direction::West, 0, 0);
    let circle = split("train_circle", east(), west())?;
    let u_shaped = split("u_shaped", circle, west())?;
    let four = split("train_4", u_shaped, west())?;
    Ok(DecisionTree::new(split("short_closed", east(), four)?))
}
