//! Strategies, property checks and independent oracles shared by the
//! property and acceptance suites.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use rl_icet::features::FeatureDef;
use rl_icet::ga::{evolve, GaConfig};
use rl_icet::theory::{agreement_by, classify_dnf};
use rl_icet::train::{Car, CarLength, CarShape, LoadShape, Roof, Walls};
use rl_icet::tree::{grow_tree, prune};
use rl_icet::{
    build_feature_table, evaluate_features, induce_tree, parse_trains, render_train, simplify_dnf,
    tree_to_dnf, BiasVector, Direction, FeatureMatrix, FeatureTable, Train,
};

pub type PropResult = Result<(), TestCaseError>;

// ---------------------------------------------------------------------------
// strategies

pub fn car_strategy(position: u32) -> impl Strategy<Value = Car> {
    (
        0..CarShape::ALL.len(),
        0..CarLength::ALL.len(),
        0..Walls::ALL.len(),
        0..Roof::ALL.len(),
        2u8..=3,
        0..LoadShape::ALL.len(),
        0u8..=3,
    )
        .prop_map(move |(s, l, w, r, axles, ls, count)| Car {
            position,
            shape: CarShape::ALL[s],
            length: CarLength::ALL[l],
            walls: Walls::ALL[w],
            roof: Roof::ALL[r],
            axles,
            load_shape: LoadShape::ALL[ls],
            load_count: count,
        })
}

pub fn train_strategy() -> impl Strategy<Value = Train> {
    (1usize..=5, any::<bool>()).prop_flat_map(|(n, east)| {
        let cars: Vec<_> = (1..=n as u32).map(car_strategy).collect();
        cars.prop_map(move |cars| Train {
            id: String::from("t"),
            label: if east {
                Direction::East
            } else {
                Direction::West
            },
            cars,
        })
    })
}

/// A small labelled boolean matrix: `(rows, labels)`.
pub fn matrix_strategy(
    max_examples: usize,
    max_features: usize,
) -> impl Strategy<Value = (Vec<Vec<bool>>, Vec<Direction>)> {
    (1..=max_examples, 1..=max_features).prop_flat_map(|(n, k)| {
        (
            prop::collection::vec(prop::collection::vec(any::<bool>(), k), n),
            prop::collection::vec(
                any::<bool>().prop_map(|e| if e { Direction::East } else { Direction::West }),
                n,
            ),
        )
    })
}

pub fn bias_strategy(n_features: usize) -> impl Strategy<Value = BiasVector> {
    (
        prop::collection::vec(0.0f64..=10_000.0, n_features),
        0.0f64..=1.0,
        1.0f64..=100.0,
    )
        .prop_map(|(b, omega, cf)| BiasVector::new(b, omega, cf).unwrap())
}

pub fn matrix_and_bias() -> impl Strategy<Value = (FeatureMatrix, BiasVector)> {
    matrix_strategy(12, 6).prop_flat_map(|(rows, labels)| {
        let k = rows[0].len();
        let matrix = FeatureMatrix::from_bool_rows(&rows, labels);
        (Just(matrix), bias_strategy(k))
    })
}

pub fn unit_costs(matrix: &FeatureMatrix) -> Vec<u32> {
    (0..matrix.n_features()).map(|f| 3 + f as u32 % 5).collect()
}

// ---------------------------------------------------------------------------
// property checks

pub fn check_round_trip(train: &Train) -> PropResult {
    let parsed =
        parse_trains(&render_train(train)).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(parsed.len(), 1);
    prop_assert_eq!(parsed[0].label, train.label);
    prop_assert_eq!(&parsed[0].cars, &train.cars);
    Ok(())
}

pub fn check_implications(table: &FeatureTable, train: &Train) -> PropResult {
    let unary: HashMap<_, _> = table
        .specs()
        .iter()
        .filter_map(|s| match s.def {
            FeatureDef::Unary(p) => Some((p, table.evaluate(s.index, train))),
            _ => None,
        })
        .collect();
    for spec in table.specs() {
        if let FeatureDef::Pair(p, q) | FeatureDef::Infront(p, q) = spec.def {
            if table.evaluate(spec.index, train) {
                prop_assert!(
                    unary[&p] && unary[&q],
                    "{} holds but a component does not",
                    spec.name
                );
            }
        }
    }
    Ok(())
}

pub fn check_open_is_no_roof(table: &FeatureTable, train: &Train) -> PropResult {
    for car in &train.cars {
        prop_assert_eq!(
            rl_icet::features::CarPredicate::Open.test(car),
            rl_icet::features::CarPredicate::NoRoof.test(car)
        );
    }
    prop_assert_eq!(
        table.evaluate(table.index_of("open").unwrap(), train),
        table.evaluate(table.index_of("no_roof").unwrap(), train)
    );
    Ok(())
}

pub fn check_omega_zero_invariance(
    matrix: &FeatureMatrix,
    a: &BiasVector,
    b: &BiasVector,
) -> PropResult {
    let costs = unit_costs(matrix);
    let a = BiasVector::new(a.biases().to_vec(), 0.0, a.cf()).unwrap();
    let b = BiasVector::new(b.biases().to_vec(), 0.0, a.cf()).unwrap();
    prop_assert_eq!(
        induce_tree(matrix, &a, &costs),
        induce_tree(matrix, &b, &costs)
    );
    Ok(())
}

pub fn check_prune_monotone(
    matrix: &FeatureMatrix,
    bias: &BiasVector,
    cf_a: f64,
    cf_b: f64,
) -> PropResult {
    let (lo, hi) = if cf_a <= cf_b {
        (cf_a, cf_b)
    } else {
        (cf_b, cf_a)
    };
    let grown = grow_tree(matrix, bias, &unit_costs(matrix));
    let small = prune(&grown, lo, matrix);
    let large = prune(&grown, hi, matrix);
    prop_assert!(small.node_count() <= large.node_count());
    prop_assert!(large.node_count() <= grown.node_count());
    Ok(())
}

pub fn check_dnf_matches_tree(matrix: &FeatureMatrix, bias: &BiasVector) -> PropResult {
    let tree = induce_tree(matrix, bias, &unit_costs(matrix));
    let dnf = tree_to_dnf(&tree);
    let k = matrix.n_features();
    for assignment in 0u32..(1 << k) {
        let value = |f: usize| assignment >> f & 1 == 1;
        prop_assert_eq!(tree.classify(value), classify_dnf(&dnf, value));
    }
    Ok(())
}

pub fn check_simplify_preserves_training(matrix: &FeatureMatrix, bias: &BiasVector) -> PropResult {
    let tree = induce_tree(matrix, bias, &unit_costs(matrix));
    let dnf = tree_to_dnf(&tree);
    let simple = simplify_dnf(&dnf, matrix);
    for i in 0..matrix.n_examples() {
        prop_assert_eq!(
            classify_dnf(&dnf, |f| matrix.value(i, f)),
            classify_dnf(&simple, |f| matrix.value(i, f))
        );
    }
    let literals = |d: &Vec<Vec<_>>| d.iter().map(Vec::len).sum::<usize>();
    prop_assert!(literals(&simple) <= literals(&dnf));
    Ok(())
}

pub fn check_agreement(trains: &[Train], table: &FeatureTable, fa: usize, fb: usize) -> PropResult {
    let a = |t: &Train| {
        if table.evaluate(fa, t) {
            Direction::East
        } else {
            Direction::West
        }
    };
    let b = |t: &Train| {
        if table.evaluate(fb, t) {
            Direction::East
        } else {
            Direction::West
        }
    };
    let not_a = |t: &Train| a(t).opposite();
    prop_assert_eq!(agreement_by(a, a, trains).unwrap(), 1.0);
    prop_assert_eq!(
        agreement_by(a, b, trains).unwrap(),
        agreement_by(b, a, trains).unwrap()
    );
    prop_assert_eq!(agreement_by(a, not_a, trains).unwrap(), 0.0);
    Ok(())
}

pub fn check_evolve_deterministic(matrix: &FeatureMatrix, seed: u64) -> PropResult {
    let config = GaConfig {
        population_size: 8,
        generations: 4,
        rng_seed: seed,
        ..GaConfig::default()
    };
    let costs = unit_costs(matrix);
    let a = evolve(matrix, &costs, &config).unwrap();
    let b = evolve(
        matrix,
        &costs,
        &GaConfig {
            parallel: false,
            ..config
        },
    )
    .unwrap();
    prop_assert_eq!(&a.best_tree, &b.best_tree);
    prop_assert_eq!(&a.history, &b.history);
    prop_assert_eq!(a.best_bias.to_genes(), b.best_bias.to_genes());
    Ok(())
}

pub fn full_table() -> FeatureTable {
    build_feature_table()
}

pub fn matrix_for(trains: &[Train], table: &FeatureTable) -> FeatureMatrix {
    evaluate_features(trains, table)
}

// ---------------------------------------------------------------------------
// independent oracles

/// Car predicates in the canonical order, by name.
pub const CAR_PREDICATES: [&str; 28] = [
    "ellipse",
    "hexagon",
    "rectangle",
    "u_shaped",
    "bucket",
    "long",
    "short",
    "double",
    "not_double",
    "open",
    "closed",
    "no_roof",
    "flat_roof",
    "jagged_roof",
    "peaked_roof",
    "arc_roof",
    "two_axles",
    "three_axles",
    "circle_load",
    "hexagon_load",
    "rectangle_load",
    "triangle_load",
    "diamond_load",
    "utriangle_load",
    "no_load",
    "one_load",
    "two_load",
    "three_load",
];

pub const LOAD_SHAPES: [&str; 6] = [
    "circle",
    "hexagon",
    "rectangle",
    "triangle",
    "diamond",
    "utriangle",
];

/// A car as the seven textual arguments of its `c/7` term.
pub type CarText = Vec<String>;

/// Reads cars back out of a rendered fact by plain string splitting.
pub fn cars_from_text(fact: &str) -> Vec<CarText> {
    fact.split("c(")
        .skip(1)
        .map(|chunk| {
            let body: String = chunk.chars().filter(|c| !c.is_whitespace()).collect();
            let fields: Vec<String> = body
                .replace("l(", "")
                .split([',', ')'])
                .filter(|s| !s.is_empty() && *s != "]" && *s != ".")
                .take(8)
                .map(str::to_owned)
                .collect();
            assert_eq!(fields.len(), 8, "unexpected car text {chunk}");
            fields[1..].to_vec()
        })
        .collect()
}

pub fn oracle_car_predicate(name: &str, car: &CarText) -> bool {
    let (shape, length, walls, roof, axles, load, count) = (
        &car[0],
        &car[1],
        &car[2],
        &car[3],
        &car[4],
        &car[5],
        car[6].parse::<u32>().unwrap(),
    );
    match name {
        "ellipse" | "hexagon" | "rectangle" | "u_shaped" | "bucket" => shape == name,
        "long" | "short" => length == name,
        "double" => walls == "double",
        "not_double" => walls != "double",
        "open" | "no_roof" => roof == "none",
        "closed" => roof != "none",
        "two_axles" => axles == "2",
        "three_axles" => axles == "3",
        "no_load" => count == 0,
        "one_load" => count == 1,
        "two_load" => count == 2,
        "three_load" => count == 3,
        _ => {
            if let Some(r) = name.strip_suffix("_roof") {
                roof == r
            } else if let Some(s) = name.strip_suffix("_load") {
                load == s && count > 0
            } else {
                panic!("unknown car predicate {name}")
            }
        }
    }
}

/// Every feature name with its value on one train.
pub fn oracle_features(fact: &str) -> BTreeMap<String, bool> {
    let cars = cars_from_text(fact);
    let holds = |p: &str, car: &CarText| oracle_car_predicate(p, car);
    let mut out = BTreeMap::new();
    for p in CAR_PREDICATES {
        out.insert(p.to_string(), cars.iter().any(|c| holds(p, c)));
    }
    for (i, p) in CAR_PREDICATES.iter().enumerate() {
        for q in &CAR_PREDICATES[i + 1..] {
            out.insert(
                format!("{p}_{q}"),
                cars.iter().any(|c| holds(p, c) && holds(q, c)),
            );
        }
    }
    for p in CAR_PREDICATES {
        for q in CAR_PREDICATES {
            let value = cars.windows(2).any(|w| holds(p, &w[0]) && holds(q, &w[1]));
            out.insert(format!("{p}_infront_{q}"), value);
        }
    }
    for n in 2..=4 {
        out.insert(format!("train_{n}"), cars.len() == n);
    }
    for s in LOAD_SHAPES {
        out.insert(
            format!("train_{s}"),
            cars.iter().any(|c| c[5] == s && c[6] != "0"),
        );
    }
    out
}

/// Base-2 entropy of a two-class count, computed from natural logs.
pub fn oracle_entropy(a: usize, b: usize) -> f64 {
    let n = (a + b) as f64;
    let mut h = 0.0;
    for k in [a, b] {
        if k > 0 {
            let p = k as f64 / n;
            h -= p * p.ln();
        }
    }
    h / std::f64::consts::LN_2
}

/// Criterion value of every feature at the root of `rows`, `None` for
/// features that do not split the data informatively.
pub fn oracle_root_scores(
    rows: &[Vec<bool>],
    labels: &[Direction],
    bias: &BiasVector,
) -> Vec<Option<f64>> {
    let n = rows.len();
    let east = labels.iter().filter(|&&l| l == Direction::East).count();
    let base = oracle_entropy(east, n - east);
    (0..rows[0].len())
        .map(|f| {
            let (mut e1, mut w1, mut e0, mut w0) = (0, 0, 0, 0);
            for (row, label) in rows.iter().zip(labels) {
                match (row[f], label) {
                    (true, Direction::East) => e1 += 1,
                    (true, Direction::West) => w1 += 1,
                    (false, Direction::East) => e0 += 1,
                    (false, Direction::West) => w0 += 1,
                }
            }
            let n1 = e1 + w1;
            let n0 = e0 + w0;
            let after = (n1 as f64 * oracle_entropy(e1, w1) + n0 as f64 * oracle_entropy(e0, w0))
                / n as f64;
            let gain = base - after;
            if gain <= 1e-9 {
                return None;
            }
            Some((2f64.powf(gain) - 1.0) / (bias.biases()[f] + 1.0).powf(bias.omega()))
        })
        .collect()
}
