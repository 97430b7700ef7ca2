//! Bias-adjustable top-down induction of binary decision trees.
//!
//! At every node the feature maximizing `(2^gain - 1) / (bias + 1)^omega` is
//! chosen among the features not yet tested on the path. Growth stops at pure
//! nodes or when no feature has positive gain; the grown tree is then pruned
//! with a pessimistic error estimate whose confidence level is `cf` percent.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::features::{FeatureMatrix, FeatureTable};
use crate::train::{Direction, Train};

pub const MAX_BIAS: f64 = 10_000.0;
pub const MIN_CF: f64 = 1.0;
pub const MAX_CF: f64 = 100.0;

/// Gains at or below this are treated as zero.
const GAIN_EPSILON: f64 = 1e-12;

/// Per-feature biases plus the avoidance strength `omega` and the pruning
/// confidence `cf`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BiasVector {
    biases: Vec<f64>,
    omega: f64,
    cf: f64,
}

impl BiasVector {
    pub fn new(biases: Vec<f64>, omega: f64, cf: f64) -> Result<Self> {
        if let Some((i, b)) = biases
            .iter()
            .enumerate()
            .find(|(_, b)| !(0.0..=MAX_BIAS).contains(*b))
        {
            return Err(Error::BiasRange(format!(
                "bias {i} = {b} outside [0, {MAX_BIAS}]"
            )));
        }
        if !(0.0..=1.0).contains(&omega) {
            return Err(Error::BiasRange(format!("omega = {omega} outside [0, 1]")));
        }
        if !(MIN_CF..=MAX_CF).contains(&cf) {
            return Err(Error::BiasRange(format!(
                "cf = {cf} outside [{MIN_CF}, {MAX_CF}]"
            )));
        }
        Ok(BiasVector { biases, omega, cf })
    }

    /// No bias at all: plain information gain with the given pruning level.
    pub fn neutral(n_features: usize, cf: f64) -> Result<Self> {
        BiasVector::new(vec![0.0; n_features], 0.0, cf)
    }

    /// Reads a flat genome `[B_1, .., B_n, omega, cf]`.
    pub fn from_genes(genes: &[f64]) -> Result<Self> {
        let n = genes
            .len()
            .checked_sub(2)
            .ok_or_else(|| Error::BiasRange("genome shorter than 2 genes".into()))?;
        BiasVector::new(genes[..n].to_vec(), genes[n], genes[n + 1])
    }

    pub fn to_genes(&self) -> Vec<f64> {
        let mut genes = self.biases.clone();
        genes.push(self.omega);
        genes.push(self.cf);
        genes
    }

    pub fn n_features(&self) -> usize {
        self.biases.len()
    }

    pub fn biases(&self) -> &[f64] {
        &self.biases
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn cf(&self) -> f64 {
        self.cf
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum Node {
    Leaf {
        label: Direction,
        /// Training examples of each class that reached this leaf.
        east: usize,
        west: usize,
    },
    Split {
        feature: usize,
        name: String,
        cost: u32,
        /// Branch taken when the feature is 1.
        one: Box<Node>,
        zero: Box<Node>,
    },
}

impl Node {
    pub fn leaf(label: Direction, east: usize, west: usize) -> Self {
        Node::Leaf { label, east, west }
    }

    pub fn split(
        feature: usize,
        name: impl Into<String>,
        cost: u32,
        one: Node,
        zero: Node,
    ) -> Self {
        Node::Split {
            feature,
            name: name.into(),
            cost,
            one: Box::new(one),
            zero: Box::new(zero),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionTree {
    pub root: Node,
}

impl DecisionTree {
    pub fn new(root: Node) -> Self {
        DecisionTree { root }
    }

    /// Follows feature values to a leaf label.
    pub fn classify(&self, value: impl Fn(usize) -> bool) -> Direction {
        let mut node = &self.root;
        loop {
            match node {
                Node::Leaf { label, .. } => return *label,
                Node::Split {
                    feature, one, zero, ..
                } => node = if value(*feature) { one } else { zero },
            }
        }
    }

    pub fn classify_example(&self, matrix: &FeatureMatrix, example: usize) -> Direction {
        self.classify(|f| matrix.value(example, f))
    }

    pub fn classify_train(&self, train: &Train, table: &FeatureTable) -> Direction {
        self.classify(|f| table.evaluate(f, train))
    }

    /// Sum of the costs of all tests, each node counted once.
    pub fn test_cost(&self) -> u32 {
        fn walk(n: &Node) -> u32 {
            match n {
                Node::Leaf { .. } => 0,
                Node::Split {
                    cost, one, zero, ..
                } => cost + walk(one) + walk(zero),
            }
        }
        walk(&self.root)
    }

    pub fn node_count(&self) -> usize {
        fn walk(n: &Node) -> usize {
            match n {
                Node::Leaf { .. } => 1,
                Node::Split { one, zero, .. } => 1 + walk(one) + walk(zero),
            }
        }
        walk(&self.root)
    }

    pub fn leaf_count(&self) -> usize {
        fn walk(n: &Node) -> usize {
            match n {
                Node::Leaf { .. } => 1,
                Node::Split { one, zero, .. } => walk(one) + walk(zero),
            }
        }
        walk(&self.root)
    }

    /// Compact canonical form of the tree shape, e.g. `12(E,3(W,E))`.
    pub fn structure_key(&self) -> String {
        fn walk(n: &Node, out: &mut String) {
            match n {
                Node::Leaf {
                    label: Direction::East,
                    ..
                } => out.push('E'),
                Node::Leaf {
                    label: Direction::West,
                    ..
                } => out.push('W'),
                Node::Split {
                    feature, one, zero, ..
                } => {
                    let _ = write!(out, "{feature}(");
                    walk(one, out);
                    out.push(',');
                    walk(zero, out);
                    out.push(')');
                }
            }
        }
        let mut key = String::new();
        walk(&self.root, &mut key);
        key
    }

    /// Indented text form, one node per line.
    pub fn render_text(&self) -> String {
        fn walk(n: &Node, depth: usize, branch: &str, out: &mut String) {
            let pad = "  ".repeat(depth);
            match n {
                Node::Leaf { label, east, west } => {
                    let _ = writeln!(out, "{pad}{branch}{label} ({east} east, {west} west)");
                }
                Node::Split {
                    name,
                    cost,
                    one,
                    zero,
                    ..
                } => {
                    let _ = writeln!(out, "{pad}{branch}{name} [cost {cost}]");
                    walk(one, depth + 1, "1: ", out);
                    walk(zero, depth + 1, "0: ", out);
                }
            }
        }
        let mut out = String::new();
        walk(&self.root, 0, "", &mut out);
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Binary entropy in bits of a node with `east` and `west` examples.
pub fn entropy(east: usize, west: usize) -> f64 {
    let n = (east + west) as f64;
    [east, west]
        .iter()
        .filter(|&&k| k > 0)
        .map(|&k| {
            let p = k as f64 / n;
            -p * p.log2()
        })
        .sum()
}

/// Information gain of splitting `subset` on `feature`.
pub fn information_gain(matrix: &FeatureMatrix, subset: &BitSet, feature: usize) -> f64 {
    let east = matrix.east_mask();
    let column = matrix.column(feature);
    let n = subset.count();
    let n_east = subset.and_count(east);
    let n1 = subset.and_count(column);
    let e1 = subset.and3_count(column, east);
    gain_from_counts(n, n_east, n1, e1)
}

fn gain_from_counts(n: usize, n_east: usize, n1: usize, e1: usize) -> f64 {
    if n == 0 || n1 == 0 || n1 == n {
        return 0.0;
    }
    let (n0, e0) = (n - n1, n_east - e1);
    let before = entropy(n_east, n - n_east);
    let after = (n1 as f64 * entropy(e1, n1 - e1) + n0 as f64 * entropy(e0, n0 - e0)) / n as f64;
    (before - after).max(0.0)
}

/// `(2^gain - 1) / (bias + 1)^omega`.
pub fn selection_criterion(gain: f64, bias: f64, omega: f64) -> f64 {
    (gain.exp2() - 1.0) / (bias + 1.0).powf(omega)
}

fn majority(east: usize, west: usize) -> Direction {
    if east >= west {
        Direction::East
    } else {
        Direction::West
    }
}

/// Grows an unpruned tree.
pub fn grow_tree(matrix: &FeatureMatrix, bias: &BiasVector, costs: &[u32]) -> DecisionTree {
    assert_eq!(
        bias.n_features(),
        matrix.n_features(),
        "one bias per feature"
    );
    assert_eq!(costs.len(), matrix.n_features(), "one cost per feature");
    let mut used = vec![false; matrix.n_features()];
    DecisionTree::new(grow(matrix, &matrix.all_examples(), &mut used, bias, costs))
}

/// Returns the feature with the largest positive criterion over `subset`,
/// lowest index first on ties.
pub fn best_feature(
    matrix: &FeatureMatrix,
    subset: &BitSet,
    used: &[bool],
    bias: &BiasVector,
) -> Option<usize> {
    let east = matrix.east_mask();
    let n = subset.count();
    let n_east = subset.and_count(east);
    let mut best: Option<(usize, f64)> = None;
    for f in (0..matrix.n_features()).filter(|&f| !used[f]) {
        let column = matrix.column(f);
        let gain = gain_from_counts(
            n,
            n_east,
            subset.and_count(column),
            subset.and3_count(column, east),
        );
        if gain <= GAIN_EPSILON {
            continue;
        }
        let score = selection_criterion(gain, bias.biases[f], bias.omega);
        if score > 0.0 && best.is_none_or(|(_, s)| score > s) {
            best = Some((f, score));
        }
    }
    best.map(|(f, _)| f)
}

fn grow(
    matrix: &FeatureMatrix,
    subset: &BitSet,
    used: &mut [bool],
    bias: &BiasVector,
    costs: &[u32],
) -> Node {
    let east = subset.and_count(matrix.east_mask());
    let west = subset.count() - east;
    if east == 0 || west == 0 {
        return Node::leaf(majority(east, west), east, west);
    }
    let Some(feature) = best_feature(matrix, subset, used, bias) else {
        return Node::leaf(majority(east, west), east, west);
    };
    let column = matrix.column(feature);
    used[feature] = true;
    let one = grow(matrix, &subset.and(column), used, bias, costs);
    let zero = grow(matrix, &subset.and_not(column), used, bias, costs);
    used[feature] = false;
    Node::split(
        feature,
        matrix.names()[feature].clone(),
        costs[feature],
        one,
        zero,
    )
}

/// Grows a tree under `bias` and prunes it at the bias vector's `cf`.
pub fn induce_tree(matrix: &FeatureMatrix, bias: &BiasVector, costs: &[u32]) -> DecisionTree {
    prune(&grow_tree(matrix, bias, costs), bias.cf(), matrix)
}

/// `P(X <= errors)` for `X ~ Binomial(n, p)`, summed in log space.
fn binomial_cdf(errors: usize, n: usize, p: f64) -> f64 {
    if p <= 0.0 {
        return 1.0;
    }
    if p >= 1.0 {
        return if errors >= n { 1.0 } else { 0.0 };
    }
    let (ln_p, ln_q) = (p.ln(), (1.0 - p).ln());
    let mut ln_choose = 0.0;
    let mut terms = Vec::with_capacity(errors + 1);
    for k in 0..=errors.min(n) {
        if k > 0 {
            ln_choose += ((n - k + 1) as f64).ln() - (k as f64).ln();
        }
        terms.push(ln_choose + k as f64 * ln_p + (n - k) as f64 * ln_q);
    }
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln())
        .exp()
        .min(1.0)
}

/// Upper limit on the error probability of a node with `errors` mistakes
/// among `n` examples: the `p` at which `P(X <= errors) = cf / 100`.
pub fn pessimistic_error_rate(errors: usize, n: usize, cf: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    if errors >= n {
        return 1.0;
    }
    // at exactly 100% every bound collapses to 0 and all subtrees would tie
    let confidence = (cf / 100.0).clamp(1e-9, 1.0 - 1e-9);
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if binomial_cdf(errors, n, mid) > confidence {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Predicted error count of a leaf: `n * pessimistic_error_rate`.
pub fn pessimistic_errors(errors: usize, n: usize, cf: f64) -> f64 {
    n as f64 * pessimistic_error_rate(errors, n, cf)
}

/// Bottom-up leaf replacement: a subtree becomes a majority leaf when the
/// leaf's predicted errors do not exceed the sum over the subtree's leaves.
/// Leaf counts are recomputed from `matrix`.
pub fn prune(tree: &DecisionTree, cf: f64, matrix: &FeatureMatrix) -> DecisionTree {
    let (root, _) = prune_node(
        &tree.root,
        &matrix.all_examples(),
        matrix,
        cf,
        Direction::East,
    );
    DecisionTree::new(root)
}

fn prune_node(
    node: &Node,
    subset: &BitSet,
    matrix: &FeatureMatrix,
    cf: f64,
    inherited: Direction,
) -> (Node, f64) {
    let east = subset.and_count(matrix.east_mask());
    let n = subset.count();
    let west = n - east;
    let label = if n == 0 {
        inherited
    } else {
        majority(east, west)
    };

    match node {
        Node::Leaf { label: kept, .. } => {
            let errors = if *kept == Direction::East { west } else { east };
            (
                Node::leaf(*kept, east, west),
                pessimistic_errors(errors, n, cf),
            )
        }
        Node::Split {
            feature,
            name,
            cost,
            one,
            zero,
        } => {
            let column = matrix.column(*feature);
            let (one, one_est) = prune_node(one, &subset.and(column), matrix, cf, label);
            let (zero, zero_est) = prune_node(zero, &subset.and_not(column), matrix, cf, label);
            let subtree_est = one_est + zero_est;
            let leaf_errors = if label == Direction::East { west } else { east };
            let leaf_est = pessimistic_errors(leaf_errors, n, cf);
            if leaf_est <= subtree_est + 1e-9 {
                (Node::leaf(label, east, west), leaf_est)
            } else {
                (
                    Node::split(*feature, name.clone(), *cost, one, zero),
                    subtree_est,
                )
            }
        }
    }
}

/// How test costs enter the fitness.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitnessMode {
    /// Sum of all test costs in the tree plus `error_rate * error_cost`.
    #[default]
    StaticSum,
    /// Mean over examples of the costs of the tests on the example's path plus
    /// `error_cost` when it is misclassified.
    AverageCost,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitnessReport {
    pub test_cost: u32,
    pub error_count: usize,
    pub error_rate: f64,
    pub error_cost: f64,
    /// Lower is better.
    pub fitness: f64,
}

pub fn fitness(tree: &DecisionTree, matrix: &FeatureMatrix, error_cost: f64) -> FitnessReport {
    fitness_with_mode(tree, matrix, error_cost, FitnessMode::StaticSum)
}

pub fn fitness_with_mode(
    tree: &DecisionTree,
    matrix: &FeatureMatrix,
    error_cost: f64,
    mode: FitnessMode,
) -> FitnessReport {
    let n = matrix.n_examples();
    let mut errors = 0usize;
    let mut path_cost_total = 0u64;
    for example in 0..n {
        let mut node = &tree.root;
        loop {
            match node {
                Node::Leaf { label, .. } => {
                    if *label != matrix.labels()[example] {
                        errors += 1;
                    }
                    break;
                }
                Node::Split {
                    feature,
                    cost,
                    one,
                    zero,
                    ..
                } => {
                    path_cost_total += u64::from(*cost);
                    node = if matrix.value(example, *feature) {
                        one
                    } else {
                        zero
                    };
                }
            }
        }
    }
    let test_cost = tree.test_cost();
    let error_rate = if n == 0 {
        0.0
    } else {
        errors as f64 / n as f64
    };
    let fitness = match mode {
        FitnessMode::StaticSum => f64::from(test_cost) + error_rate * error_cost,
        FitnessMode::AverageCost if n == 0 => 0.0,
        FitnessMode::AverageCost => {
            (path_cost_total as f64 + errors as f64 * error_cost) / n as f64
        }
    };
    FitnessReport {
        test_cost,
        error_count: errors,
        error_rate,
        error_cost,
        fitness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::distribution::{Beta, ContinuousCDF};
    use Direction::{East, West};

    fn matrix(rows: &[&[u8]], labels: &[Direction]) -> FeatureMatrix {
        let rows: Vec<Vec<bool>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| v == 1).collect())
            .collect();
        FeatureMatrix::from_bool_rows(&rows, labels.to_vec())
    }

    #[test]
    fn gain_examples() {
        let m = matrix(
            &[&[1, 1], &[1, 1], &[0, 1], &[0, 1]],
            &[East, East, West, West],
        );
        let all = m.all_examples();
        assert!((information_gain(&m, &all, 0) - 1.0).abs() < 1e-12);
        assert_eq!(information_gain(&m, &all, 1), 0.0);

        let m = matrix(&[&[1], &[1], &[1], &[0]], &[East, East, East, West]);
        let h = -(0.25f64 * 0.25f64.log2() + 0.75 * 0.75f64.log2());
        assert!((information_gain(&m, &m.all_examples(), 0) - h).abs() < 1e-12);
        assert!((h - 0.811_278_124_459_132_8).abs() < 1e-12);
    }

    #[test]
    fn criterion_examples() {
        assert_eq!(selection_criterion(1.0, 0.0, 0.3), 1.0);
        assert_eq!(selection_criterion(1.0, 1.0, 1.0), 0.5);
        for gain in [0.1, 0.5, 0.9] {
            assert_eq!(selection_criterion(gain, 9999.0, 0.0), gain.exp2() - 1.0);
        }
    }

    #[test]
    fn bias_vector_ranges() {
        assert!(BiasVector::new(vec![0.0, 10_000.0], 1.0, 100.0).is_ok());
        assert!(BiasVector::new(vec![-1.0], 0.5, 50.0).is_err());
        assert!(BiasVector::new(vec![1.0], 1.5, 50.0).is_err());
        assert!(BiasVector::new(vec![1.0], 0.5, 0.5).is_err());
        let b = BiasVector::new(vec![3.0, 4.0], 0.25, 12.0).unwrap();
        assert_eq!(BiasVector::from_genes(&b.to_genes()).unwrap(), b);
    }

    #[test]
    fn perfect_feature_gives_single_test() {
        let m = matrix(
            &[&[0, 1], &[1, 1], &[0, 0], &[1, 0]],
            &[West, East, West, East],
        );
        let tree = induce_tree(&m, &BiasVector::neutral(2, 25.0).unwrap(), &[7, 3]);
        assert_eq!(tree.structure_key(), "0(E,W)");
        assert_eq!(tree.test_cost(), 7);
    }

    #[test]
    fn pure_data_gives_leaf() {
        let m = matrix(&[&[0], &[1]], &[East, East]);
        let tree = induce_tree(&m, &BiasVector::neutral(1, 25.0).unwrap(), &[5]);
        assert_eq!(tree.root, Node::leaf(East, 2, 0));
        assert_eq!(fitness(&tree, &m, 1000.0).fitness, 0.0);
    }

    #[test]
    fn bias_steers_choice() {
        // both features separate perfectly; heavy bias on the first moves the choice
        let m = matrix(&[&[1, 1], &[0, 0]], &[East, West]);
        let b = BiasVector::new(vec![100.0, 0.0], 1.0, 50.0).unwrap();
        assert_eq!(grow_tree(&m, &b, &[1, 9]).structure_key(), "1(E,W)");
        let b = BiasVector::new(vec![100.0, 0.0], 0.0, 50.0).unwrap();
        assert_eq!(grow_tree(&m, &b, &[1, 9]).structure_key(), "0(E,W)");
    }

    #[test]
    fn majority_tie_is_east() {
        let m = matrix(&[&[1], &[1]], &[East, West]);
        let tree = grow_tree(&m, &BiasVector::neutral(1, 25.0).unwrap(), &[5]);
        assert_eq!(tree.root, Node::leaf(East, 1, 1));
    }

    /// Upper confidence limit via the beta quantile.
    fn oracle_rate(errors: usize, n: usize, cf: f64) -> f64 {
        if errors >= n {
            return 1.0;
        }
        Beta::new((errors + 1) as f64, (n - errors) as f64)
            .unwrap()
            .inverse_cdf(1.0 - cf / 100.0)
    }

    #[test]
    fn pessimistic_rate_matches_beta_quantile() {
        for (e, n) in [(0, 1), (0, 6), (1, 3), (2, 4), (3, 20), (7, 9)] {
            for cf in [1.0, 10.0, 25.0, 50.0, 90.0] {
                let got = pessimistic_error_rate(e, n, cf);
                let want = oracle_rate(e, n, cf);
                assert!(
                    (got - want).abs() < 1e-6,
                    "e={e} n={n} cf={cf}: {got} vs {want}"
                );
            }
        }
        assert!((pessimistic_error_rate(0, 4, 25.0) - (1.0 - 0.25f64.powf(0.25))).abs() < 1e-9);
    }

    #[test]
    fn hand_built_prune_decision() {
        // root splits 6 East | 1 East + 2 West; the zero branch is a West leaf
        let m = matrix(
            &[&[1], &[1], &[1], &[1], &[1], &[1], &[0], &[0], &[0]],
            &[East, East, East, East, East, East, East, West, West],
        );
        let tree = DecisionTree::new(Node::split(
            0,
            "f0",
            5,
            Node::leaf(East, 6, 0),
            Node::leaf(West, 1, 2),
        ));
        for cf in [1.0, 5.0, 25.0, 60.0, 95.0] {
            let subtree = 6.0 * oracle_rate(0, 6, cf) + 3.0 * oracle_rate(1, 3, cf);
            let leaf = 9.0 * oracle_rate(2, 9, cf);
            let expect_pruned = leaf <= subtree;
            let pruned = prune(&tree, cf, &m);
            assert_eq!(
                pruned.node_count() == 1,
                expect_pruned,
                "cf={cf} leaf={leaf} subtree={subtree}"
            );
        }
    }

    #[test]
    fn single_leaf_survives_pruning() {
        let m = matrix(&[&[1], &[0], &[0]], &[East, West, West]);
        let tree = DecisionTree::new(Node::leaf(West, 1, 2));
        for cf in [1.0, 50.0, 100.0] {
            assert_eq!(prune(&tree, cf, &m).root, Node::leaf(West, 1, 2));
        }
    }

    #[test]
    fn fitness_arithmetic() {
        let labels: Vec<Direction> = (0..20).map(|i| if i < 10 { East } else { West }).collect();
        let rows: Vec<Vec<bool>> = (0..20).map(|i| vec![i < 9]).collect();
        let m = FeatureMatrix::from_bool_rows(&rows, labels);

        let leaf = DecisionTree::new(Node::leaf(East, 10, 10));
        let r = fitness(&leaf, &m, 1000.0);
        assert_eq!((r.test_cost, r.error_count, r.fitness), (0, 10, 500.0));
        assert_eq!(r.error_rate, 0.5);

        // one East example lands in the West leaf
        let tree = DecisionTree::new(Node::split(
            0,
            "f0",
            5,
            Node::leaf(East, 9, 0),
            Node::leaf(West, 1, 10),
        ));
        let r = fitness(&tree, &m, 1000.0);
        assert_eq!((r.test_cost, r.error_count), (5, 1));
        assert!((r.fitness - 55.0).abs() < 1e-12);

        let avg = fitness_with_mode(&tree, &m, 1000.0, FitnessMode::AverageCost);
        assert!((avg.fitness - (20.0 * 5.0 + 1000.0) / 20.0).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let tree = DecisionTree::new(Node::split(
            3,
            "train_4",
            3,
            Node::leaf(East, 2, 0),
            Node::leaf(West, 0, 5),
        ));
        let text = tree.to_json().unwrap();
        assert!(text.contains("\"name\": \"train_4\""));
        assert_eq!(DecisionTree::from_json(&text).unwrap(), tree);
        assert_eq!(
            tree.render_text(),
            "train_4 [cost 3]\n  1: East (2 east, 0 west)\n  0: West (0 east, 5 west)\n"
        );
    }
}
