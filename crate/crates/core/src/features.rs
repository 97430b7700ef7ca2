//! Propositionalization of trains into boolean features.
//!
//! Every feature is an existential test over a train built from 28 car
//! predicates and 9 train predicates: the predicates alone (28), unordered
//! pairs holding on one car (378), ordered pairs holding on two adjacent cars
//! (784), and the train predicates (9), for 1199 features in all.
//!
//! Each feature carries the Prolog fragment that defines it, and its cost is
//! the size of that fragment: one per predicate symbol, variable, constant and
//! `not` occurrence.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::io;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::train::{Car, CarLength, CarShape, Direction, LoadShape, Roof, Train, Walls};

/// Argument of a goal in a feature fragment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arg {
    /// The train variable `T`.
    Train,
    /// Car variable slot local to one feature (0 or 1).
    Car(u8),
    Const(String),
}

/// One literal of a Prolog fragment, e.g. `arg(5, C, peaked)` or `not double(C)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Goal {
    pub negated: bool,
    pub functor: &'static str,
    pub args: Vec<Arg>,
}

impl Goal {
    fn new(functor: &'static str, args: Vec<Arg>) -> Self {
        Goal {
            negated: false,
            functor,
            args,
        }
    }

    /// Predicate symbol, arguments and a possible `not`.
    pub fn cost(&self) -> u32 {
        u32::from(self.negated) + 1 + self.args.len() as u32
    }

    /// Renders the goal, naming car slots with `car_var`.
    pub fn render(&self, train_var: &str, car_var: impl Fn(u8) -> String) -> String {
        let args: Vec<String> = self
            .args
            .iter()
            .map(|a| match a {
                Arg::Train => train_var.to_string(),
                Arg::Car(slot) => car_var(*slot),
                Arg::Const(c) => c.clone(),
            })
            .collect();
        let body = format!("{}({})", self.functor, args.join(", "));
        if self.negated {
            format!("not {body}")
        } else {
            body
        }
    }
}

fn c(s: impl fmt::Display) -> Arg {
    Arg::Const(s.to_string())
}

macro_rules! car_predicates {
    ($($variant:ident => $name:literal),+ $(,)?) => {
        /// The 28 car predicates, in their canonical order.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
        pub enum CarPredicate {
            $($variant),+
        }

        impl CarPredicate {
            pub const ALL: [CarPredicate; 28] = [$(CarPredicate::$variant),+];

            pub fn name(self) -> &'static str {
                match self {
                    $(CarPredicate::$variant => $name),+
                }
            }
        }
    };
}

car_predicates! {
    Ellipse => "ellipse",
    Hexagon => "hexagon",
    Rectangle => "rectangle",
    UShaped => "u_shaped",
    Bucket => "bucket",
    Long => "long",
    Short => "short",
    Double => "double",
    NotDouble => "not_double",
    Open => "open",
    Closed => "closed",
    NoRoof => "no_roof",
    FlatRoof => "flat_roof",
    JaggedRoof => "jagged_roof",
    PeakedRoof => "peaked_roof",
    ArcRoof => "arc_roof",
    TwoAxles => "two_axles",
    ThreeAxles => "three_axles",
    CircleLoad => "circle_load",
    HexagonLoad => "hexagon_load",
    RectangleLoad => "rectangle_load",
    TriangleLoad => "triangle_load",
    DiamondLoad => "diamond_load",
    UTriangleLoad => "utriangle_load",
    NoLoad => "no_load",
    OneLoad => "one_load",
    TwoLoad => "two_load",
    ThreeLoad => "three_load",
}

impl CarPredicate {
    pub fn test(self, car: &Car) -> bool {
        use CarPredicate::*;
        match self {
            Ellipse => car.shape == CarShape::Ellipse,
            Hexagon => car.shape == CarShape::Hexagon,
            Rectangle => car.shape == CarShape::Rectangle,
            UShaped => car.shape == CarShape::UShaped,
            Bucket => car.shape == CarShape::Bucket,
            Long => car.length == CarLength::Long,
            Short => car.length == CarLength::Short,
            Double => car.walls == Walls::Double,
            NotDouble => car.walls != Walls::Double,
            Open | NoRoof => car.is_open(),
            Closed => !car.is_open(),
            FlatRoof => car.roof == Roof::Flat,
            JaggedRoof => car.roof == Roof::Jagged,
            PeakedRoof => car.roof == Roof::Peaked,
            ArcRoof => car.roof == Roof::Arc,
            TwoAxles => car.axles == 2,
            ThreeAxles => car.axles == 3,
            CircleLoad => car.carries(LoadShape::Circle),
            HexagonLoad => car.carries(LoadShape::Hexagon),
            RectangleLoad => car.carries(LoadShape::Rectangle),
            TriangleLoad => car.carries(LoadShape::Triangle),
            DiamondLoad => car.carries(LoadShape::Diamond),
            UTriangleLoad => car.carries(LoadShape::UTriangle),
            NoLoad => car.load_count == 0,
            OneLoad => car.load_count == 1,
            TwoLoad => car.load_count == 2,
            ThreeLoad => car.load_count == 3,
        }
    }

    /// Cheapest background literal expressing the predicate over car slot `slot`.
    pub fn literal(self, slot: u8) -> Goal {
        use CarPredicate::*;
        let car = Arg::Car(slot);
        match self {
            Ellipse | Hexagon | Rectangle | UShaped | Bucket | Long | Short | Double | Open
            | Closed => Goal::new(self.name(), vec![car]),
            NotDouble => Goal {
                negated: true,
                functor: "double",
                args: vec![car],
            },
            NoRoof => Goal::new("arg", vec![c(5), car, c(Roof::None)]),
            FlatRoof => Goal::new("arg", vec![c(5), car, c(Roof::Flat)]),
            JaggedRoof => Goal::new("arg", vec![c(5), car, c(Roof::Jagged)]),
            PeakedRoof => Goal::new("arg", vec![c(5), car, c(Roof::Peaked)]),
            ArcRoof => Goal::new("arg", vec![c(5), car, c(Roof::Arc)]),
            TwoAxles => Goal::new("arg", vec![c(6), car, c(2)]),
            ThreeAxles => Goal::new("arg", vec![c(6), car, c(3)]),
            CircleLoad => Goal::new("has_load0", vec![car, c(LoadShape::Circle)]),
            HexagonLoad => Goal::new("has_load0", vec![car, c(LoadShape::Hexagon)]),
            RectangleLoad => Goal::new("has_load0", vec![car, c(LoadShape::Rectangle)]),
            TriangleLoad => Goal::new("has_load0", vec![car, c(LoadShape::Triangle)]),
            DiamondLoad => Goal::new("has_load0", vec![car, c(LoadShape::Diamond)]),
            UTriangleLoad => Goal::new("has_load0", vec![car, c(LoadShape::UTriangle)]),
            NoLoad => Goal::new("has_load", vec![car, c(0)]),
            OneLoad => Goal::new("has_load", vec![car, c(1)]),
            TwoLoad => Goal::new("has_load", vec![car, c(2)]),
            ThreeLoad => Goal::new("has_load", vec![car, c(3)]),
        }
    }
}

/// The 9 whole-train predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TrainPredicate {
    Length(u8),
    Carries(LoadShape),
}

impl TrainPredicate {
    pub const ALL: [TrainPredicate; 9] = [
        TrainPredicate::Length(2),
        TrainPredicate::Length(3),
        TrainPredicate::Length(4),
        TrainPredicate::Carries(LoadShape::Circle),
        TrainPredicate::Carries(LoadShape::Hexagon),
        TrainPredicate::Carries(LoadShape::Rectangle),
        TrainPredicate::Carries(LoadShape::Triangle),
        TrainPredicate::Carries(LoadShape::Diamond),
        TrainPredicate::Carries(LoadShape::UTriangle),
    ];

    pub fn name(self) -> String {
        match self {
            TrainPredicate::Length(n) => format!("train_{n}"),
            TrainPredicate::Carries(shape) => format!("train_{shape}"),
        }
    }

    pub fn test(self, train: &Train) -> bool {
        match self {
            TrainPredicate::Length(n) => train.len() == usize::from(n),
            TrainPredicate::Carries(shape) => train.cars.iter().any(|car| car.carries(shape)),
        }
    }

    pub fn literal(self) -> Goal {
        match self {
            TrainPredicate::Length(n) => Goal::new("len1", vec![Arg::Train, c(n)]),
            TrainPredicate::Carries(shape) => Goal::new("has_load1", vec![Arg::Train, c(shape)]),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureKind {
    Unary,
    Pair,
    Infront,
    Train,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FeatureDef {
    /// Some car satisfies the predicate.
    Unary(CarPredicate),
    /// Some single car satisfies both predicates.
    Pair(CarPredicate, CarPredicate),
    /// Some car satisfying the first is in front of a car satisfying the second.
    Infront(CarPredicate, CarPredicate),
    Train(TrainPredicate),
}

/// How `infront(T, C1, C2)` relates two cars.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InfrontMode {
    /// `C2` directly follows `C1`.
    #[default]
    Adjacent,
    /// `C2` is anywhere behind `C1`.
    Anywhere,
}

impl FeatureDef {
    pub fn kind(&self) -> FeatureKind {
        match self {
            FeatureDef::Unary(_) => FeatureKind::Unary,
            FeatureDef::Pair(..) => FeatureKind::Pair,
            FeatureDef::Infront(..) => FeatureKind::Infront,
            FeatureDef::Train(_) => FeatureKind::Train,
        }
    }

    pub fn name(&self) -> String {
        match self {
            FeatureDef::Unary(p) => p.name().to_string(),
            FeatureDef::Pair(p, q) => format!("{}_{}", p.name(), q.name()),
            FeatureDef::Infront(p, q) => format!("{}_infront_{}", p.name(), q.name()),
            FeatureDef::Train(t) => t.name(),
        }
    }

    /// Goals that locate the car(s) the literals talk about.
    pub fn scaffold(&self) -> Vec<Goal> {
        match self {
            FeatureDef::Unary(_) | FeatureDef::Pair(..) => {
                vec![Goal::new("has_car", vec![Arg::Train, Arg::Car(0)])]
            }
            FeatureDef::Infront(..) => {
                vec![Goal::new(
                    "infront",
                    vec![Arg::Train, Arg::Car(0), Arg::Car(1)],
                )]
            }
            FeatureDef::Train(_) => Vec::new(),
        }
    }

    pub fn literals(&self) -> Vec<Goal> {
        match self {
            FeatureDef::Unary(p) => vec![p.literal(0)],
            FeatureDef::Pair(p, q) => vec![p.literal(0), q.literal(0)],
            FeatureDef::Infront(p, q) => vec![p.literal(0), q.literal(1)],
            FeatureDef::Train(t) => vec![t.literal()],
        }
    }

    /// Scaffold followed by literals: the full defining fragment.
    pub fn fragment(&self) -> Vec<Goal> {
        let mut goals = self.scaffold();
        goals.extend(self.literals());
        goals
    }

    pub fn evaluate(&self, train: &Train, infront: InfrontMode) -> bool {
        let cars = &train.cars;
        match *self {
            FeatureDef::Unary(p) => cars.iter().any(|car| p.test(car)),
            FeatureDef::Pair(p, q) => cars.iter().any(|car| p.test(car) && q.test(car)),
            FeatureDef::Infront(p, q) => match infront {
                InfrontMode::Adjacent => cars.windows(2).any(|w| p.test(&w[0]) && q.test(&w[1])),
                InfrontMode::Anywhere => cars.iter().enumerate().any(|(i, front)| {
                    p.test(front) && cars[i + 1..].iter().any(|back| q.test(back))
                }),
            },
            FeatureDef::Train(t) => t.test(train),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureSpec {
    /// Dense position within its table.
    pub index: usize,
    pub name: String,
    pub def: FeatureDef,
    pub cost: u32,
}

impl FeatureSpec {
    fn new(index: usize, def: FeatureDef) -> Self {
        FeatureSpec {
            index,
            name: def.name(),
            cost: def.fragment().iter().map(Goal::cost).sum(),
            def,
        }
    }

    pub fn kind(&self) -> FeatureKind {
        self.def.kind()
    }

    /// The defining fragment as text, e.g. `has_car(T, C), ellipse(C).`
    pub fn fragment_text(&self) -> String {
        let goals: Vec<String> = self
            .def
            .fragment()
            .iter()
            .map(|g| {
                g.render("T", |slot| match self.def {
                    FeatureDef::Infront(..) => format!("C{}", slot + 1),
                    _ => "C".to_string(),
                })
            })
            .collect();
        format!("{}.", goals.join(", "))
    }
}

/// An ordered set of features plus the `infront` convention used to evaluate them.
#[derive(Debug, Clone)]
pub struct FeatureTable {
    specs: Vec<FeatureSpec>,
    by_name: HashMap<String, usize>,
    infront: InfrontMode,
}

/// Every feature: unary, then pairs `i < j`, then ordered infront pairs
/// row-major, then train predicates.
pub fn build_feature_table() -> FeatureTable {
    let preds = CarPredicate::ALL;
    let mut defs: Vec<FeatureDef> = preds.iter().map(|&p| FeatureDef::Unary(p)).collect();
    for i in 0..preds.len() {
        for j in i + 1..preds.len() {
            defs.push(FeatureDef::Pair(preds[i], preds[j]));
        }
    }
    for &p in &preds {
        for &q in &preds {
            defs.push(FeatureDef::Infront(p, q));
        }
    }
    defs.extend(TrainPredicate::ALL.iter().map(|&t| FeatureDef::Train(t)));
    FeatureTable::from_defs(defs)
}

impl FeatureTable {
    pub fn from_defs(defs: impl IntoIterator<Item = FeatureDef>) -> Self {
        let specs: Vec<FeatureSpec> = defs
            .into_iter()
            .enumerate()
            .map(|(i, def)| FeatureSpec::new(i, def))
            .collect();
        let by_name = specs.iter().map(|s| (s.name.clone(), s.index)).collect();
        FeatureTable {
            specs,
            by_name,
            infront: InfrontMode::default(),
        }
    }

    pub fn full() -> Self {
        build_feature_table()
    }

    /// The 28 unary and 9 train features.
    pub fn unary_train() -> Self {
        let full = build_feature_table();
        FeatureTable::from_defs(
            full.specs
                .iter()
                .filter(|s| matches!(s.kind(), FeatureKind::Unary | FeatureKind::Train))
                .map(|s| s.def),
        )
    }

    /// A subset of the full table, in the order given, re-indexed densely.
    pub fn select<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let full = build_feature_table();
        let defs = names
            .iter()
            .map(|n| {
                full.by_name(n.as_ref())
                    .map(|s| s.def)
                    .ok_or_else(|| Error::UnknownFeature(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FeatureTable::from_defs(defs))
    }

    pub fn with_infront(mut self, mode: InfrontMode) -> Self {
        self.infront = mode;
        self
    }

    pub fn infront(&self) -> InfrontMode {
        self.infront
    }

    pub fn len(&self) -> usize {
        self.specs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.specs.is_empty()
    }

    pub fn specs(&self) -> &[FeatureSpec] {
        &self.specs
    }

    pub fn get(&self, index: usize) -> Option<&FeatureSpec> {
        self.specs.get(index)
    }

    pub fn by_name(&self, name: &str) -> Option<&FeatureSpec> {
        self.by_name.get(name).map(|&i| &self.specs[i])
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownFeature(name.to_string()))
    }

    pub fn costs(&self) -> Vec<u32> {
        self.specs.iter().map(|s| s.cost).collect()
    }

    pub fn names(&self) -> Vec<String> {
        self.specs.iter().map(|s| s.name.clone()).collect()
    }

    pub fn evaluate(&self, index: usize, train: &Train) -> bool {
        self.specs[index].def.evaluate(train, self.infront)
    }

    /// Tab-separated dump: index, name, kind, cost, fragment.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("index\tname\tkind\tcost\tfragment\n");
        for s in &self.specs {
            let kind = match s.kind() {
                FeatureKind::Unary => "unary",
                FeatureKind::Pair => "pair",
                FeatureKind::Infront => "infront",
                FeatureKind::Train => "train",
            };
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                s.index,
                s.name,
                kind,
                s.cost,
                s.fragment_text()
            );
        }
        out
    }
}

/// Boolean train-by-feature matrix with class labels, stored column-wise.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    train_ids: Vec<String>,
    labels: Vec<Direction>,
    names: Vec<String>,
    columns: Vec<BitSet>,
    east: BitSet,
}

pub fn evaluate_features(trains: &[Train], table: &FeatureTable) -> FeatureMatrix {
    let rows: Vec<Vec<bool>> = trains
        .par_iter()
        .map(|train| (0..table.len()).map(|f| table.evaluate(f, train)).collect())
        .collect();
    FeatureMatrix::from_rows(
        trains.iter().map(|t| t.id.clone()).collect(),
        table.names(),
        &rows,
        trains.iter().map(|t| t.label).collect(),
    )
}

impl FeatureMatrix {
    pub fn from_rows(
        train_ids: Vec<String>,
        names: Vec<String>,
        rows: &[Vec<bool>],
        labels: Vec<Direction>,
    ) -> Self {
        assert_eq!(rows.len(), labels.len(), "one label per row");
        assert_eq!(rows.len(), train_ids.len(), "one id per row");
        let n = rows.len();
        let columns = (0..names.len())
            .map(|f| {
                BitSet::from_indices(
                    n,
                    rows.iter()
                        .enumerate()
                        .filter(|(_, r)| r[f])
                        .map(|(i, _)| i),
                )
            })
            .collect();
        let east = BitSet::from_indices(
            n,
            labels
                .iter()
                .enumerate()
                .filter(|(_, l)| **l == Direction::East)
                .map(|(i, _)| i),
        );
        FeatureMatrix {
            train_ids,
            labels,
            names,
            columns,
            east,
        }
    }

    /// Builds a matrix with generated ids and names, for synthetic data.
    pub fn from_bool_rows(rows: &[Vec<bool>], labels: Vec<Direction>) -> Self {
        let width = rows.first().map_or(0, Vec::len);
        FeatureMatrix::from_rows(
            (0..rows.len()).map(|i| format!("x{i}")).collect(),
            (0..width).map(|f| format!("f{f}")).collect(),
            rows,
            labels,
        )
    }

    pub fn n_examples(&self) -> usize {
        self.labels.len()
    }

    pub fn n_features(&self) -> usize {
        self.columns.len()
    }

    pub fn value(&self, example: usize, feature: usize) -> bool {
        self.columns[feature].contains(example)
    }

    pub fn row(&self, example: usize) -> Vec<bool> {
        self.columns.iter().map(|c| c.contains(example)).collect()
    }

    pub fn column(&self, feature: usize) -> &BitSet {
        &self.columns[feature]
    }

    pub fn east_mask(&self) -> &BitSet {
        &self.east
    }

    pub fn labels(&self) -> &[Direction] {
        &self.labels
    }

    pub fn train_ids(&self) -> &[String] {
        &self.train_ids
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn all_examples(&self) -> BitSet {
        BitSet::full(self.n_examples())
    }

    /// Header of feature names plus `label`, one row per train of 0/1 cells.
    pub fn write_delimited<W: io::Write>(&self, writer: W, delimiter: u8) -> Result<()> {
        let mut out = csv::WriterBuilder::new()
            .delimiter(delimiter)
            .from_writer(writer);
        let mut header = vec!["train".to_string()];
        header.extend(self.names.iter().cloned());
        header.push("label".into());
        out.write_record(&header)?;
        for (i, id) in self.train_ids.iter().enumerate() {
            let mut record = vec![id.clone()];
            record.extend(
                (0..self.n_features())
                    .map(|f| if self.value(i, f) { "1" } else { "0" }.to_string()),
            );
            record.push(self.labels[i].to_string());
            out.write_record(&record)?;
        }
        out.flush()?;
        Ok(())
    }
}
