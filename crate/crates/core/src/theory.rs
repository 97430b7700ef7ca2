//! Decision trees as logic programs.
//!
//! A tree becomes a disjunction of conjunctions of feature literals, one
//! conjunction per path to an East leaf. The disjunction is simplified
//! against training data, rendered as an `eastbound/1` clause built from the
//! features' Prolog fragments, and scored with [`complexity`].

use serde::{Deserialize, Serialize};

use crate::complexity::complexity;
use crate::error::{Error, Result};
use crate::features::{FeatureDef, FeatureMatrix, FeatureTable, Goal};
use crate::train::{Direction, Train};
use crate::tree::{DecisionTree, Node};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    pub feature: usize,
    /// Required feature value.
    pub value: bool,
}

impl Literal {
    pub fn new(feature: usize, value: bool) -> Self {
        Literal { feature, value }
    }
}

pub type Conjunction = Vec<Literal>;

/// East iff some conjunction holds.
pub type Dnf = Vec<Conjunction>;

/// One conjunction per root-to-East-leaf path, literals in path order.
pub fn tree_to_dnf(tree: &DecisionTree) -> Dnf {
    fn walk(node: &Node, path: &mut Vec<Literal>, out: &mut Dnf) {
        match node {
            Node::Leaf {
                label: Direction::East,
                ..
            } => out.push(path.clone()),
            Node::Leaf { .. } => {}
            Node::Split {
                feature, one, zero, ..
            } => {
                path.push(Literal::new(*feature, true));
                walk(one, path, out);
                path.pop();
                path.push(Literal::new(*feature, false));
                walk(zero, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(&tree.root, &mut Vec::new(), &mut out);
    out
}

pub fn classify_dnf(dnf: &[Conjunction], value: impl Fn(usize) -> bool) -> Direction {
    if dnf
        .iter()
        .any(|conj| conj.iter().all(|l| value(l.feature) == l.value))
    {
        Direction::East
    } else {
        Direction::West
    }
}

fn classify_rows(dnf: &[Conjunction], matrix: &FeatureMatrix) -> Vec<Direction> {
    (0..matrix.n_examples())
        .map(|i| classify_dnf(dnf, |f| matrix.value(i, f)))
        .collect()
}

/// Greedily drops literals (negated ones first, then positive ones) and then
/// whole conjunctions, keeping each removal only if every training example is
/// still classified as before.
pub fn simplify_dnf(dnf: &[Conjunction], matrix: &FeatureMatrix) -> Dnf {
    let target = classify_rows(dnf, matrix);
    let mut dnf = dnf.to_vec();

    for wanted in [false, true] {
        for c in 0..dnf.len() {
            let mut l = 0;
            while l < dnf[c].len() {
                if dnf[c][l].value != wanted {
                    l += 1;
                    continue;
                }
                let removed = dnf[c].remove(l);
                if classify_rows(&dnf, matrix) != target {
                    dnf[c].insert(l, removed);
                    l += 1;
                }
            }
        }
    }

    let mut c = 0;
    while c < dnf.len() {
        let removed = dnf.remove(c);
        if dnf.contains(&removed) || classify_rows(&dnf, matrix) == target {
            continue;
        }
        dnf.insert(c, removed);
        c += 1;
    }
    dnf
}

struct VarNames {
    next: usize,
}

impl VarNames {
    /// Fresh names for every car slot `def` uses.
    fn for_def(&mut self, def: &FeatureDef) -> Vec<String> {
        let slots = match def {
            FeatureDef::Unary(_) | FeatureDef::Pair(..) => 1,
            FeatureDef::Infront(..) => 2,
            FeatureDef::Train(_) => 0,
        };
        (0..slots)
            .map(|_| {
                self.next += 1;
                format!("C{}", self.next)
            })
            .collect()
    }
}

fn render_goals(goals: &[Goal], cars: &[String]) -> Vec<String> {
    goals
        .iter()
        .map(|g| g.render("T", |slot| cars[slot as usize].clone()))
        .collect()
}

fn binds_one_car(def: &FeatureDef) -> bool {
    matches!(def, FeatureDef::Unary(_) | FeatureDef::Pair(..))
}

/// Renders `eastbound(T) :- Body.` for a dnf over `table`'s features.
///
/// In each conjunction the first positive single-car feature is the primary
/// one. When two or more conjunctions have a primary feature they share one
/// car variable `C` bound by a single `has_car(T, C)` ahead of the
/// disjunction. Every other car feature gets fresh variables, and negated
/// features are wrapped whole in `not`.
pub fn render_program(dnf: &[Conjunction], table: &FeatureTable) -> Result<String> {
    for lit in dnf.iter().flatten() {
        if table.get(lit.feature).is_none() {
            return Err(Error::UnknownFeature(format!("#{}", lit.feature)));
        }
    }
    if dnf.is_empty() {
        return Ok(String::new());
    }
    if dnf.iter().any(Vec::is_empty) {
        return Ok("eastbound(T).\n".to_string());
    }

    let primary: Vec<Option<usize>> = dnf
        .iter()
        .map(|conj| {
            conj.iter()
                .position(|l| l.value && binds_one_car(&table.specs()[l.feature].def))
        })
        .collect();
    let hoist = dnf.len() > 1 && primary.iter().filter(|p| p.is_some()).count() >= 2;
    let mut vars = VarNames { next: 0 };

    let mut disjuncts = Vec::with_capacity(dnf.len());
    for (conj, primary) in dnf.iter().zip(&primary) {
        let mut goals = Vec::new();
        for (i, lit) in conj.iter().enumerate() {
            let def = &table.specs()[lit.feature].def;
            if !lit.value {
                let cars = vars.for_def(def);
                let inner = render_goals(&def.fragment(), &cars);
                goals.push(if inner.len() == 1 {
                    format!("not {}", inner[0])
                } else {
                    format!("not ({})", inner.join(", "))
                });
                continue;
            }
            if Some(i) == *primary {
                let cars = ["C".to_string()];
                let fragment = if hoist {
                    def.literals()
                } else {
                    def.fragment()
                };
                goals.extend(render_goals(&fragment, &cars));
            } else {
                let cars = vars.for_def(def);
                goals.extend(render_goals(&def.fragment(), &cars));
            }
        }
        disjuncts.push(goals);
    }

    let mut body: Vec<String> = Vec::new();
    if disjuncts.len() == 1 {
        body = disjuncts.pop().unwrap_or_default();
    } else {
        if hoist {
            body.push("has_car(T, C)".to_string());
        }
        let parts: Vec<String> = disjuncts
            .iter()
            .map(|goals| {
                if goals.len() == 1 {
                    goals[0].clone()
                } else {
                    format!("({})", goals.join(", "))
                }
            })
            .collect();
        body.push(format!("({})", parts.join(" ;\n    ")));
    }
    Ok(format!("eastbound(T) :-\n    {}.\n", body.join(",\n    ")))
}

/// A dnf together with its rendered program and that program's complexity.
#[derive(Debug, Clone, PartialEq)]
pub struct Theory {
    pub dnf: Dnf,
    pub rendered: String,
    pub complexity: u32,
}

impl Theory {
    pub fn from_dnf(dnf: Dnf, table: &FeatureTable) -> Result<Self> {
        let rendered = render_program(&dnf, table)?;
        let complexity = complexity(&rendered)?;
        Ok(Theory {
            dnf,
            rendered,
            complexity,
        })
    }

    pub fn always_west() -> Self {
        Theory {
            dnf: Vec::new(),
            rendered: String::new(),
            complexity: 0,
        }
    }

    pub fn classify(&self, train: &Train, table: &FeatureTable) -> Direction {
        classify_dnf(&self.dnf, |f| table.evaluate(f, train))
    }

    pub fn classify_example(&self, matrix: &FeatureMatrix, example: usize) -> Direction {
        classify_dnf(&self.dnf, |f| matrix.value(example, f))
    }

    /// Fraction of the matrix's examples classified as labelled.
    pub fn accuracy(&self, matrix: &FeatureMatrix) -> f64 {
        let n = matrix.n_examples();
        if n == 0 {
            return 0.0;
        }
        let correct = (0..n)
            .filter(|&i| self.classify_example(matrix, i) == matrix.labels()[i])
            .count();
        correct as f64 / n as f64
    }

    pub fn to_file(&self, table: &FeatureTable, training_accuracy: Option<f64>) -> TheoryFile {
        TheoryFile {
            dnf: self
                .dnf
                .iter()
                .map(|conj| {
                    conj.iter()
                        .map(|l| LiteralRecord {
                            feature: table.specs()[l.feature].name.clone(),
                            value: u8::from(l.value),
                        })
                        .collect()
                })
                .collect(),
            program: self.rendered.clone(),
            complexity: self.complexity,
            training_accuracy,
        }
    }

    pub fn to_json(&self, table: &FeatureTable, training_accuracy: Option<f64>) -> Result<String> {
        Ok(serde_json::to_string_pretty(
            &self.to_file(table, training_accuracy),
        )?)
    }

    /// Reads a theory, resolving feature names against `table`. The program is
    /// re-rendered from the dnf.
    pub fn from_json(text: &str, table: &FeatureTable) -> Result<Self> {
        let file: TheoryFile = serde_json::from_str(text)?;
        let dnf = file
            .dnf
            .iter()
            .map(|conj| {
                conj.iter()
                    .map(|l| {
                        if l.value > 1 {
                            return Err(Error::Config(format!(
                                "literal value {} is not 0 or 1",
                                l.value
                            )));
                        }
                        Ok(Literal::new(table.index_of(&l.feature)?, l.value == 1))
                    })
                    .collect::<Result<Conjunction>>()
            })
            .collect::<Result<Dnf>>()?;
        Theory::from_dnf(dnf, table)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiteralRecord {
    pub feature: String,
    pub value: u8,
}

/// On-disk theory metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoryFile {
    pub dnf: Vec<Vec<LiteralRecord>>,
    pub program: String,
    pub complexity: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub training_accuracy: Option<f64>,
}

pub fn classify(theory: &Theory, train: &Train, table: &FeatureTable) -> Direction {
    theory.classify(train, table)
}

/// Fraction of `trains` on which the two classifiers agree.
pub fn agreement_by<A, B>(a: A, b: B, trains: &[Train]) -> Result<f64>
where
    A: Fn(&Train) -> Direction,
    B: Fn(&Train) -> Direction,
{
    if trains.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let same = trains.iter().filter(|t| a(t) == b(t)).count();
    Ok(same as f64 / trains.len() as f64)
}

pub fn agreement(a: &Theory, b: &Theory, trains: &[Train], table: &FeatureTable) -> Result<f64> {
    agreement_by(|t| a.classify(t, table), |t| b.classify(t, table), trains)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::build_feature_table;

    fn lit(table: &FeatureTable, name: &str, value: bool) -> Literal {
        Literal::new(table.index_of(name).unwrap(), value)
    }

    #[test]
    fn leaf_trees() {
        let east = DecisionTree::new(Node::leaf(Direction::East, 3, 0));
        assert_eq!(tree_to_dnf(&east), vec![Vec::<Literal>::new()]);
        let west = DecisionTree::new(Node::leaf(Direction::West, 0, 3));
        assert!(tree_to_dnf(&west).is_empty());
    }

    #[test]
    fn render_single_feature() {
        let table = build_feature_table();
        let t = Theory::from_dnf(vec![vec![lit(&table, "train_4", true)]], &table).unwrap();
        assert_eq!(t.rendered, "eastbound(T) :-\n    len1(T, 4).\n");
        assert_eq!(t.complexity, 6);

        let t = Theory::from_dnf(vec![vec![lit(&table, "short_closed", true)]], &table).unwrap();
        assert_eq!(
            t.rendered,
            "eastbound(T) :-\n    has_car(T, C),\n    short(C),\n    closed(C).\n"
        );
        assert_eq!(t.complexity, 10);
    }

    #[test]
    fn render_constant_theories() {
        let table = build_feature_table();
        let west = Theory::from_dnf(Vec::new(), &table).unwrap();
        assert_eq!((west.rendered.as_str(), west.complexity), ("", 0));
        let east = Theory::from_dnf(vec![vec![]], &table).unwrap();
        assert_eq!(
            (east.rendered.as_str(), east.complexity),
            ("eastbound(T).\n", 3)
        );
    }

    #[test]
    fn render_negations_and_fresh_cars() {
        let table = build_feature_table();
        let dnf = vec![vec![
            lit(&table, "ellipse", true),
            lit(&table, "short_closed", true),
            lit(&table, "train_2", false),
            lit(&table, "long_infront_short", false),
        ]];
        let t = Theory::from_dnf(dnf, &table).unwrap();
        assert_eq!(
            t.rendered,
            "eastbound(T) :-\n    has_car(T, C),\n    ellipse(C),\n    has_car(T, C1),\n    short(C1),\n    closed(C1),\n    \
             not len1(T, 2),\n    not (infront(T, C2, C3), long(C2), short(C3)).\n"
        );
        // 3 + 5 + 7 + (1 + 3) + (1 + 8)
        assert_eq!(t.complexity, 28);
    }

    #[test]
    fn hoisted_disjunction() {
        let table = build_feature_table();
        let dnf = vec![
            vec![lit(&table, "short_closed", true)],
            vec![
                lit(&table, "train_4", true),
                lit(&table, "u_shaped", true),
                lit(&table, "train_circle", true),
            ],
        ];
        let t = Theory::from_dnf(dnf, &table).unwrap();
        assert_eq!(
            t.rendered,
            "eastbound(T) :-\n    has_car(T, C),\n    ((short(C), closed(C)) ;\n    (len1(T, 4), u_shaped(C), has_load1(T, circle))).\n"
        );
        assert_eq!(t.complexity, 19);
    }

    #[test]
    fn json_round_trip() {
        let table = build_feature_table();
        let dnf = vec![vec![
            lit(&table, "train_4", true),
            lit(&table, "ellipse", false),
        ]];
        let t = Theory::from_dnf(dnf, &table).unwrap();
        let json = t.to_json(&table, Some(1.0)).unwrap();
        assert!(json.contains("\"feature\": \"ellipse\""));
        assert_eq!(Theory::from_json(&json, &table).unwrap(), t);
        let bad = json.replace("ellipse", "elipse");
        assert!(matches!(
            Theory::from_json(&bad, &table),
            Err(Error::UnknownFeature(_))
        ));
    }

    #[test]
    fn agreement_needs_trains() {
        let table = build_feature_table();
        let t = Theory::always_west();
        assert!(matches!(
            agreement(&t, &t, &[], &table),
            Err(Error::EmptyDataset)
        ));
    }
}
