mod common;

use std::sync::LazyLock;

use proptest::prelude::*;

use common::*;
use rl_icet::complexity::{complexity, fragment_complexity};
use rl_icet::ga::{mutate, random_genome, two_point_crossover, GaConfig};
use rl_icet::theory::{render_program, Literal};
use rl_icet::tree::{grow_tree, prune};
use rl_icet::{evolve, Direction, FeatureMatrix, FeatureTable, Train};

static TABLE: LazyLock<FeatureTable> = LazyLock::new(full_table);

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn parse_render_round_trip(train in train_strategy()) {
        check_round_trip(&train)?;
    }

    #[test]
    fn pair_and_infront_imply_unary(train in train_strategy()) {
        check_implications(&TABLE, &train)?;
    }

    #[test]
    fn open_equals_no_roof(train in train_strategy()) {
        check_open_is_no_roof(&TABLE, &train)?;
    }

    #[test]
    fn omega_zero_ignores_biases((matrix, a) in matrix_and_bias(), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let other: Vec<f64> = (0..matrix.n_features()).map(|_| rng.gen_range(0.0..=10_000.0)).collect();
        let b = rl_icet::BiasVector::new(other, 0.7, a.cf()).unwrap();
        check_omega_zero_invariance(&matrix, &a, &b)?;
    }

    #[test]
    fn pruning_is_monotone_in_cf((matrix, bias) in matrix_and_bias(), a in 1.0f64..=100.0, b in 1.0f64..=100.0) {
        check_prune_monotone(&matrix, &bias, a, b)?;
    }

    #[test]
    fn pruned_leaves_cover_every_example((matrix, bias) in matrix_and_bias()) {
        let tree = prune(&grow_tree(&matrix, &bias, &unit_costs(&matrix)), bias.cf(), &matrix);
        fn total(node: &rl_icet::tree::Node) -> usize {
            match node {
                rl_icet::tree::Node::Leaf { east, west, .. } => east + west,
                rl_icet::tree::Node::Split { one, zero, .. } => total(one) + total(zero),
            }
        }
        prop_assert_eq!(total(&tree.root), matrix.n_examples());
    }

    #[test]
    fn dnf_classifies_like_the_tree((matrix, bias) in matrix_and_bias()) {
        check_dnf_matches_tree(&matrix, &bias)?;
    }

    #[test]
    fn simplification_keeps_training_labels((matrix, bias) in matrix_and_bias()) {
        check_simplify_preserves_training(&matrix, &bias)?;
    }

    #[test]
    fn agreement_is_symmetric_and_reflexive(
        trains in prop::collection::vec(train_strategy(), 1..20),
        fa in 0usize..1199,
        fb in 0usize..1199,
    ) {
        check_agreement(&trains, &TABLE, fa, fb)?;
    }

    #[test]
    fn crossover_and_mutation_stay_in_range(seed in any::<u64>(), n in 1usize..20, rate in 0.0f64..=1.0) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut a = random_genome(&mut rng, n);
        let mut b = random_genome(&mut rng, n);
        two_point_crossover(&mut rng, &mut a, &mut b);
        mutate(&mut rng, &mut a, rate);
        for genome in [&a, &b] {
            prop_assert_eq!(genome.len(), n + 2);
            prop_assert!(rl_icet::BiasVector::from_genes(genome).is_ok(), "{:?}", genome);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn evolve_is_seed_deterministic((rows, labels) in matrix_strategy(10, 5), seed in any::<u64>()) {
        let matrix = FeatureMatrix::from_bool_rows(&rows, labels);
        check_evolve_deterministic(&matrix, seed)?;
    }

    #[test]
    fn best_so_far_never_increases((rows, labels) in matrix_strategy(10, 5), seed in any::<u64>()) {
        let matrix = FeatureMatrix::from_bool_rows(&rows, labels);
        let config = GaConfig { population_size: 10, generations: 6, rng_seed: seed, ..GaConfig::default() };
        let result = evolve(&matrix, &unit_costs(&matrix), &config).unwrap();
        // elitism carries the best genome forward, so per-generation bests never rise
        for pair in result.history.windows(2) {
            prop_assert!(pair[1].best <= pair[0].best);
        }
        let overall = result.history.iter().map(|h| h.best).fold(f64::INFINITY, f64::min);
        prop_assert_eq!(result.best_report.fitness, overall);
    }

    #[test]
    fn renaming_variables_keeps_complexity(suffix in "[A-Z][a-z0-9]{0,4}") {
        let program = "eastbound(T) :-\n    has_car(T, C),\n    ((short(C), closed(C)) ;\n    (len1(T, 4), has_car(T, C1), u_shaped(C1), has_car(T, C2), has_load0(C2, circle))).\n";
        let renamed = program
            .replace("(T", &format!("(T{suffix}"))
            .replace("C1", &format!("Q{suffix}1"))
            .replace("C2", &format!("Q{suffix}2"));
        prop_assert_eq!(complexity(program).unwrap(), complexity(&renamed).unwrap());
    }
}

#[test]
fn single_feature_programs_cost_three_more_than_the_feature() {
    for spec in TABLE.specs() {
        let program = render_program(&[vec![Literal::new(spec.index, true)]], &TABLE).unwrap();
        assert_eq!(
            complexity(&program).unwrap(),
            spec.cost + 3,
            "{}",
            spec.name
        );
        assert_eq!(
            fragment_complexity(&spec.fragment_text()).unwrap(),
            spec.cost,
            "{}",
            spec.name
        );
    }
}

#[test]
fn unary_values_can_hold_without_their_pair() {
    let train: Train = rl_icet::parse_trains(
        "eastbound([c(1, rectangle, long, not_double, none, 2, l(circle, 1)),\n\
                    c(2, ellipse, short, not_double, arc, 2, l(triangle, 1))]).",
    )
    .unwrap()
    .remove(0);
    let value = |name: &str| TABLE.evaluate(TABLE.index_of(name).unwrap(), &train);
    assert!(value("rectangle") && value("short"));
    assert!(!value("rectangle_short"));
    assert!(value("rectangle_infront_short"));
    assert!(!value("short_infront_rectangle"));
}

#[test]
fn agreement_on_a_constructed_case() {
    let trains = rl_icet::harness::generate_trains(10, 3);
    let flipped: Vec<&str> = trains.iter().take(3).map(|t| t.id.as_str()).collect();
    let east = |_: &Train| Direction::East;
    let mostly_east = |t: &Train| {
        if flipped.contains(&t.id.as_str()) {
            Direction::West
        } else {
            Direction::East
        }
    };
    assert_eq!(
        rl_icet::theory::agreement_by(east, mostly_east, &trains).unwrap(),
        0.7
    );
}
