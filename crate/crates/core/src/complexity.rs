//! Size-complexity of logic programs.
//!
//! Complexity is the number of clauses plus every occurrence of a predicate
//! or functor symbol, a variable, a constant, and an operator (`;`, `not`,
//! `\+`). Conjunction commas and parentheses are free. A fragment (a goal
//! sequence with no head) counts no clause.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lexer::{describe, tokenize, Cursor, TokenKind};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Breakdown {
    pub clauses: u32,
    pub predicates: u32,
    pub variables: u32,
    pub constants: u32,
    pub operators: u32,
}

impl Breakdown {
    pub fn total(&self) -> u32 {
        self.clauses + self.predicates + self.variables + self.constants + self.operators
    }
}

/// Complexity of a program made of `Head.` and `Head :- Body.` clauses.
pub fn complexity(program: &str) -> Result<u32> {
    Ok(program_breakdown(program)?.total())
}

pub fn program_breakdown(program: &str) -> Result<Breakdown> {
    let tokens = tokenize(program)?;
    let mut cursor = Cursor::new(&tokens, program);
    let mut counts = Breakdown::default();
    while !cursor.at_end() {
        counts.clauses += 1;
        goal_term(&mut cursor, &mut counts)?;
        if matches!(cursor.peek_kind(), Some(TokenKind::Atom(a)) if a == ":-") {
            cursor.next();
            disjunction(&mut cursor, &mut counts)?;
        }
        cursor.expect(&TokenKind::End, "`.` at end of clause")?;
    }
    Ok(counts)
}

/// Complexity of a headless goal sequence such as `has_car(T, C), ellipse(C).`
pub fn fragment_complexity(fragment: &str) -> Result<u32> {
    Ok(fragment_breakdown(fragment)?.total())
}

pub fn fragment_breakdown(fragment: &str) -> Result<Breakdown> {
    let tokens = tokenize(fragment)?;
    let mut cursor = Cursor::new(&tokens, fragment);
    let mut counts = Breakdown::default();
    if cursor.at_end() {
        return Ok(counts);
    }
    disjunction(&mut cursor, &mut counts)?;
    if cursor.peek_kind() == Some(&TokenKind::End) {
        cursor.next();
    }
    if !cursor.at_end() {
        return Err(cursor.error("unexpected input after fragment"));
    }
    Ok(counts)
}

fn disjunction(cursor: &mut Cursor<'_>, counts: &mut Breakdown) -> Result<()> {
    conjunction(cursor, counts)?;
    while cursor.peek_kind() == Some(&TokenKind::Semicolon) {
        cursor.next();
        counts.operators += 1;
        conjunction(cursor, counts)?;
    }
    Ok(())
}

fn conjunction(cursor: &mut Cursor<'_>, counts: &mut Breakdown) -> Result<()> {
    goal(cursor, counts)?;
    while cursor.peek_kind() == Some(&TokenKind::Comma) {
        cursor.next();
        goal(cursor, counts)?;
    }
    Ok(())
}

fn goal(cursor: &mut Cursor<'_>, counts: &mut Breakdown) -> Result<()> {
    match cursor.peek_kind() {
        Some(TokenKind::Atom(a)) if a == "not" || a == "\\+" => {
            cursor.next();
            counts.operators += 1;
            goal(cursor, counts)
        }
        Some(TokenKind::LParen) => {
            cursor.next();
            disjunction(cursor, counts)?;
            cursor.expect(&TokenKind::RParen, "`)`")?;
            Ok(())
        }
        _ => goal_term(cursor, counts),
    }
}

/// A callable term: an atom or compound whose functor is a predicate symbol.
fn goal_term(cursor: &mut Cursor<'_>, counts: &mut Breakdown) -> Result<()> {
    match cursor.peek_kind() {
        Some(TokenKind::Atom(_)) => {
            cursor.next();
            counts.predicates += 1;
            arguments(cursor, counts)
        }
        Some(other) => Err(cursor.error(format!("expected a goal, found {}", describe(other)))),
        None => Err(cursor.error("expected a goal, found end of input")),
    }
}

fn arguments(cursor: &mut Cursor<'_>, counts: &mut Breakdown) -> Result<()> {
    if cursor.peek_kind() != Some(&TokenKind::LParen) {
        return Ok(());
    }
    cursor.next();
    argument(cursor, counts)?;
    while cursor.peek_kind() == Some(&TokenKind::Comma) {
        cursor.next();
        argument(cursor, counts)?;
    }
    cursor.expect(&TokenKind::RParen, "`,` or `)`")?;
    Ok(())
}

fn argument(cursor: &mut Cursor<'_>, counts: &mut Breakdown) -> Result<()> {
    match cursor.peek_kind() {
        Some(TokenKind::Var(_)) => {
            cursor.next();
            counts.variables += 1;
            Ok(())
        }
        Some(TokenKind::Int(_) | TokenKind::Float(_)) => {
            cursor.next();
            counts.constants += 1;
            Ok(())
        }
        Some(TokenKind::Atom(_)) => {
            cursor.next();
            if cursor.peek_kind() == Some(&TokenKind::LParen) {
                counts.predicates += 1;
                arguments(cursor, counts)
            } else {
                counts.constants += 1;
                Ok(())
            }
        }
        Some(other) => {
            Err(cursor.error(format!("expected an argument, found {}", describe(other))))
        }
        None => Err(cursor.error("expected an argument, found end of input")),
    }
}
