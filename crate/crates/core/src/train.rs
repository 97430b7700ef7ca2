//! Trains, cars and the ground-fact file format.
//!
//! A train file is a sequence of Prolog facts
//!
//! ```text
//! eastbound([c(1, rectangle, short, not_double, none, 2, l(circle, 1)), ...]).
//! ```
//!
//! Each car term is `c(Position, Shape, Length, Walls, Roof, Axles, l(LoadShape, LoadCount))`
//! and position 1 is the front of the train. Clauses other than `eastbound/1` and
//! `westbound/1` facts are skipped, so annotated files load as they are.

use std::fmt::{self, Write as _};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lexer::{describe, syntax, tokenize, Cursor, Token, TokenKind};

macro_rules! token_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $token:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(rename_all = "snake_case")]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $token),+
                }
            }

            pub fn from_token(token: &str) -> Option<Self> {
                match token {
                    $($token => Some($name::$variant),)+
                    _ => None,
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}

token_enum!(
    /// Body shape of a car.
    CarShape {
        Rectangle => "rectangle",
        Hexagon => "hexagon",
        Ellipse => "ellipse",
        UShaped => "u_shaped",
        Bucket => "bucket",
    }
);

token_enum!(CarLength { Long => "long", Short => "short" });

token_enum!(Walls { Double => "double", NotDouble => "not_double" });

token_enum!(
    Roof {
        None => "none",
        Flat => "flat",
        Jagged => "jagged",
        Peaked => "peaked",
        Arc => "arc",
    }
);

token_enum!(
    LoadShape {
        Circle => "circle",
        Hexagon => "hexagon",
        Rectangle => "rectangle",
        Triangle => "triangle",
        Diamond => "diamond",
        UTriangle => "utriangle",
    }
);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    East,
    West,
}

impl Direction {
    pub fn opposite(self) -> Self {
        match self {
            Direction::East => Direction::West,
            Direction::West => Direction::East,
        }
    }

    fn fact_name(self) -> &'static str {
        match self {
            Direction::East => "eastbound",
            Direction::West => "westbound",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::East => "East",
            Direction::West => "West",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Car {
    pub position: u32,
    pub shape: CarShape,
    pub length: CarLength,
    pub walls: Walls,
    pub roof: Roof,
    pub axles: u8,
    pub load_shape: LoadShape,
    pub load_count: u8,
}

impl Car {
    /// A car is open exactly when it has no roof.
    pub fn is_open(&self) -> bool {
        self.roof == Roof::None
    }

    /// True when the car carries at least one load of the given shape.
    pub fn carries(&self, shape: LoadShape) -> bool {
        self.load_count >= 1 && self.load_shape == shape
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Train {
    pub id: String,
    pub label: Direction,
    pub cars: Vec<Car>,
}

impl Train {
    pub fn len(&self) -> usize {
        self.cars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cars.is_empty()
    }
}

/// Parses every `eastbound/1` and `westbound/1` fact in `source`.
///
/// Ids are assigned `east1, east2, ...` and `west1, west2, ...` in order of appearance.
pub fn parse_trains(source: &str) -> Result<Vec<Train>> {
    let tokens = tokenize(source)?;
    let mut cursor = Cursor::new(&tokens, source);
    let mut trains = Vec::new();
    let (mut east, mut west) = (0usize, 0usize);

    while !cursor.at_end() {
        let clause = clause_tokens(&mut cursor)?;
        let Some(label) = train_fact_label(clause) else {
            continue;
        };
        let mut inner = Cursor::new(clause, source);
        let term = parse_term(&mut inner)?;
        inner.expect(&TokenKind::End, "`.` after train fact")?;

        let id = match label {
            Direction::East => {
                east += 1;
                format!("east{east}")
            }
            Direction::West => {
                west += 1;
                format!("west{west}")
            }
        };
        let Term::Compound { args, .. } = term else {
            unreachable!("train_fact_label checked the functor");
        };
        let cars = train_cars(&args[0])?;
        trains.push(Train { id, label, cars });
    }
    Ok(trains)
}

/// Splits off the tokens of the next clause, including its terminating `End`.
fn clause_tokens<'a>(cursor: &mut Cursor<'a>) -> Result<&'a [Token]> {
    let start = cursor.position();
    let mut depth = 0i32;
    loop {
        let Some(tok) = cursor.next() else {
            return Err(cursor.error("clause is missing its terminating `.`"));
        };
        match tok.kind {
            TokenKind::LParen | TokenKind::LBracket => depth += 1,
            TokenKind::RParen | TokenKind::RBracket => depth -= 1,
            TokenKind::End if depth <= 0 => break,
            _ => {}
        }
    }
    Ok(cursor.slice_from(start))
}

/// Returns the label when the clause is a unary `eastbound`/`westbound` fact.
fn train_fact_label(clause: &[Token]) -> Option<Direction> {
    let label = match clause.first().map(|t| &t.kind) {
        Some(TokenKind::Atom(a)) if a == "eastbound" => Direction::East,
        Some(TokenKind::Atom(a)) if a == "westbound" => Direction::West,
        _ => return None,
    };
    if clause.get(1).map(|t| &t.kind) != Some(&TokenKind::LParen) {
        return None;
    }
    // rules with this head (a theory, say) are not data
    let mut depth = 0i32;
    let mut args = 1;
    for tok in &clause[1..] {
        match &tok.kind {
            TokenKind::LParen | TokenKind::LBracket => depth += 1,
            TokenKind::RParen | TokenKind::RBracket => depth -= 1,
            TokenKind::Comma if depth == 1 => args += 1,
            TokenKind::Atom(a) if a == ":-" && depth == 0 => return None,
            _ => {}
        }
    }
    (args == 1).then_some(label)
}

#[derive(Debug, Clone)]
enum Term {
    Atom {
        name: String,
        at: (usize, usize),
    },
    Int {
        value: i64,
        at: (usize, usize),
    },
    Other {
        what: String,
        at: (usize, usize),
    },
    Compound {
        name: String,
        args: Vec<Term>,
        at: (usize, usize),
    },
    List {
        items: Vec<Term>,
        at: (usize, usize),
    },
}

impl Term {
    fn at(&self) -> (usize, usize) {
        match self {
            Term::Atom { at, .. }
            | Term::Int { at, .. }
            | Term::Other { at, .. }
            | Term::Compound { at, .. }
            | Term::List { at, .. } => *at,
        }
    }

    fn describe(&self) -> String {
        match self {
            Term::Atom { name, .. } => format!("atom `{name}`"),
            Term::Int { value, .. } => format!("integer {value}"),
            Term::Other { what, .. } => what.clone(),
            Term::Compound { name, args, .. } => format!("term {name}/{}", args.len()),
            Term::List { .. } => "list".into(),
        }
    }
}

fn parse_term(cursor: &mut Cursor<'_>) -> Result<Term> {
    let Some(tok) = cursor.next() else {
        return Err(cursor.error("expected a term, found end of input"));
    };
    let at = (tok.line, tok.column);
    match &tok.kind {
        TokenKind::Atom(name) => {
            if cursor.peek_kind() == Some(&TokenKind::LParen) {
                cursor.next();
                let mut args = vec![parse_term(cursor)?];
                while cursor.peek_kind() == Some(&TokenKind::Comma) {
                    cursor.next();
                    args.push(parse_term(cursor)?);
                }
                cursor.expect(&TokenKind::RParen, "`,` or `)`")?;
                Ok(Term::Compound {
                    name: name.clone(),
                    args,
                    at,
                })
            } else {
                Ok(Term::Atom {
                    name: name.clone(),
                    at,
                })
            }
        }
        TokenKind::Int(value) => Ok(Term::Int { value: *value, at }),
        TokenKind::Float(_) | TokenKind::Var(_) => Ok(Term::Other {
            what: describe(&tok.kind),
            at,
        }),
        TokenKind::LBracket => {
            let mut items = Vec::new();
            if cursor.peek_kind() == Some(&TokenKind::RBracket) {
                cursor.next();
                return Ok(Term::List { items, at });
            }
            items.push(parse_term(cursor)?);
            while cursor.peek_kind() == Some(&TokenKind::Comma) {
                cursor.next();
                items.push(parse_term(cursor)?);
            }
            if cursor.peek_kind() == Some(&TokenKind::Bar) {
                return Err(cursor.error("partial lists are not ground train data"));
            }
            cursor.expect(&TokenKind::RBracket, "`,` or `]`")?;
            Ok(Term::List { items, at })
        }
        other => Err(syntax(
            at.0,
            at.1,
            format!("expected a term, found {}", describe(other)),
        )),
    }
}

fn invalid(at: (usize, usize), message: impl Into<String>) -> Error {
    Error::InvalidTrain {
        line: at.0,
        column: at.1,
        message: message.into(),
    }
}

fn train_cars(term: &Term) -> Result<Vec<Car>> {
    let Term::List { items, at } = term else {
        return Err(invalid(
            term.at(),
            format!("expected a list of cars, found {}", term.describe()),
        ));
    };
    if items.is_empty() {
        return Err(invalid(*at, "a train needs at least one car"));
    }
    let cars = items
        .iter()
        .map(car_from_term)
        .collect::<Result<Vec<_>>>()?;

    let mut seen = vec![false; cars.len()];
    for (car, item) in cars.iter().zip(items) {
        let pos = car.position as usize;
        if pos == 0 || pos > cars.len() {
            return Err(invalid(
                item.at(),
                format!(
                    "position {pos} outside 1..={} for a {}-car train",
                    cars.len(),
                    cars.len()
                ),
            ));
        }
        if seen[pos - 1] {
            return Err(invalid(item.at(), format!("duplicate position {pos}")));
        }
        seen[pos - 1] = true;
    }
    for (index, (car, item)) in cars.iter().zip(items).enumerate() {
        if car.position as usize != index + 1 {
            return Err(invalid(
                item.at(),
                format!(
                    "car with position {} listed in slot {}",
                    car.position,
                    index + 1
                ),
            ));
        }
    }
    Ok(cars)
}

fn car_from_term(term: &Term) -> Result<Car> {
    let Term::Compound { name, args, at } = term else {
        return Err(invalid(
            term.at(),
            format!("expected a car term c/7, found {}", term.describe()),
        ));
    };
    if name != "c" {
        return Err(invalid(
            *at,
            format!("expected a car term c/7, found {}", term.describe()),
        ));
    }
    if args.len() != 7 {
        return Err(invalid(
            *at,
            format!("car term has arity {}, expected 7", args.len()),
        ));
    }
    let position = int_arg(&args[0], "position", 1, i64::from(u32::MAX))? as u32;
    let shape = enum_arg(&args[1], "car shape", CarShape::from_token)?;
    let length = enum_arg(&args[2], "car length", CarLength::from_token)?;
    let walls = enum_arg(&args[3], "walls", Walls::from_token)?;
    let roof = enum_arg(&args[4], "roof", Roof::from_token)?;
    let axles = int_arg(&args[5], "axles", 2, 3)? as u8;

    let (load_shape, load_count) = match &args[6] {
        Term::Compound { name, args, at } if name == "l" => {
            if args.len() != 2 {
                return Err(invalid(
                    *at,
                    format!("load term has arity {}, expected 2", args.len()),
                ));
            }
            (
                enum_arg(&args[0], "load shape", LoadShape::from_token)?,
                int_arg(&args[1], "load count", 0, 3)? as u8,
            )
        }
        other => {
            return Err(invalid(
                other.at(),
                format!("expected a load term l/2, found {}", other.describe()),
            ));
        }
    };

    Ok(Car {
        position,
        shape,
        length,
        walls,
        roof,
        axles,
        load_shape,
        load_count,
    })
}

fn int_arg(term: &Term, what: &str, min: i64, max: i64) -> Result<i64> {
    match term {
        Term::Int { value, .. } if (min..=max).contains(value) => Ok(*value),
        Term::Int { value, at } => Err(invalid(
            *at,
            format!("{what} {value} out of range {min}..={max}"),
        )),
        other => Err(invalid(
            other.at(),
            format!("expected an integer {what}, found {}", other.describe()),
        )),
    }
}

fn enum_arg<T>(term: &Term, what: &str, parse: impl Fn(&str) -> Option<T>) -> Result<T> {
    match term {
        Term::Atom { name, at } => {
            parse(name).ok_or_else(|| invalid(*at, format!("unknown {what} `{name}`")))
        }
        other => Err(invalid(
            other.at(),
            format!("expected a {what}, found {}", other.describe()),
        )),
    }
}

fn render_car(car: &Car) -> String {
    format!(
        "c({}, {}, {}, {}, {}, {}, l({}, {}))",
        car.position,
        car.shape,
        car.length,
        car.walls,
        car.roof,
        car.axles,
        car.load_shape,
        car.load_count
    )
}

/// Renders a train as a single fact, one car per line.
pub fn render_train(train: &Train) -> String {
    let head = format!("{}([", train.label.fact_name());
    let indent = " ".repeat(head.len());
    let mut out = head;
    for (i, car) in train.cars.iter().enumerate() {
        if i > 0 {
            out.push_str(",\n");
            out.push_str(&indent);
        }
        out.push_str(&render_car(car));
    }
    out.push_str("]).");
    out
}

pub fn render_trains(trains: &[Train]) -> String {
    let mut out = String::new();
    for train in trains {
        let _ = writeln!(out, "{}", render_train(train));
    }
    out
}

/// Draws a car uniformly over every field's legal values.
pub fn random_car<R: Rng + ?Sized>(rng: &mut R, position: u32) -> Car {
    Car {
        position,
        shape: CarShape::ALL[rng.gen_range(0..CarShape::ALL.len())],
        length: CarLength::ALL[rng.gen_range(0..CarLength::ALL.len())],
        walls: Walls::ALL[rng.gen_range(0..Walls::ALL.len())],
        roof: Roof::ALL[rng.gen_range(0..Roof::ALL.len())],
        axles: rng.gen_range(2..=3),
        load_shape: LoadShape::ALL[rng.gen_range(0..LoadShape::ALL.len())],
        load_count: rng.gen_range(0..=3),
    }
}

/// A random train of `min_cars..=max_cars` cars.
pub fn random_train<R: Rng + ?Sized>(
    rng: &mut R,
    id: impl Into<String>,
    label: Direction,
    min_cars: usize,
    max_cars: usize,
) -> Train {
    let n = rng.gen_range(min_cars..=max_cars);
    Train {
        id: id.into(),
        label,
        cars: (1..=n as u32).map(|p| random_car(rng, p)).collect(),
    }
}
