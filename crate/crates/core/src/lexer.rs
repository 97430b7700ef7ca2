//! Tokenizer for the small Prolog subset used by train files and emitted
//! programs.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    /// Lower-case identifier, quoted atom or run of symbol characters.
    Atom(String),
    Var(String),
    Int(i64),
    Float(f64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Bar,
    Semicolon,
    /// Clause terminator: a `.` followed by whitespace, `%` or end of input.
    End,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub column: usize,
}

const SYMBOL_CHARS: &str = "+-*/\\^<>=~:.?@#&$";

fn is_symbol_char(c: char) -> bool {
    SYMBOL_CHARS.contains(c)
}

pub fn tokenize(source: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = source.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut column) = (0usize, 1usize, 1usize);

    macro_rules! advance {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            i += 1;
        }};
    }

    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, column);
        let push = |tokens: &mut Vec<Token>, kind| {
            tokens.push(Token {
                kind,
                line: start_line,
                column: start_col,
            })
        };

        if c.is_whitespace() {
            advance!();
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                advance!();
            }
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'*') {
            advance!();
            advance!();
            loop {
                if i >= chars.len() {
                    return Err(syntax(start_line, start_col, "unterminated block comment"));
                }
                if chars[i] == '*' && chars.get(i + 1) == Some(&'/') {
                    advance!();
                    advance!();
                    break;
                }
                advance!();
            }
            continue;
        }

        let simple = match c {
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            '[' => Some(TokenKind::LBracket),
            ']' => Some(TokenKind::RBracket),
            ',' => Some(TokenKind::Comma),
            '|' => Some(TokenKind::Bar),
            ';' => Some(TokenKind::Semicolon),
            '!' => Some(TokenKind::Atom("!".into())),
            _ => None,
        };
        if let Some(kind) = simple {
            advance!();
            push(&mut tokens, kind);
            continue;
        }

        if c == '.' {
            let next = chars.get(i + 1).copied();
            if next.is_none_or(|n| n.is_whitespace() || n == '%') {
                advance!();
                push(&mut tokens, TokenKind::End);
                continue;
            }
        }

        if c.is_ascii_digit() {
            let mut text = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                text.push(chars[i]);
                advance!();
            }
            let fractional =
                i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit();
            if fractional {
                text.push('.');
                advance!();
                while i < chars.len() && chars[i].is_ascii_digit() {
                    text.push(chars[i]);
                    advance!();
                }
                let value = text
                    .parse()
                    .map_err(|_| syntax(start_line, start_col, "malformed number"))?;
                push(&mut tokens, TokenKind::Float(value));
            } else {
                let value = text
                    .parse()
                    .map_err(|_| syntax(start_line, start_col, "integer out of range"))?;
                push(&mut tokens, TokenKind::Int(value));
            }
            continue;
        }

        if c.is_alphabetic() || c == '_' {
            let mut text = String::new();
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                text.push(chars[i]);
                advance!();
            }
            let kind = if c.is_uppercase() || c == '_' {
                TokenKind::Var(text)
            } else {
                TokenKind::Atom(text)
            };
            push(&mut tokens, kind);
            continue;
        }

        if c == '\'' {
            advance!();
            let mut text = String::new();
            loop {
                match chars.get(i) {
                    None => return Err(syntax(start_line, start_col, "unterminated quoted atom")),
                    Some('\'') if chars.get(i + 1) == Some(&'\'') => {
                        text.push('\'');
                        advance!();
                        advance!();
                    }
                    Some('\'') => {
                        advance!();
                        break;
                    }
                    Some(&ch) => {
                        text.push(ch);
                        advance!();
                    }
                }
            }
            push(&mut tokens, TokenKind::Atom(text));
            continue;
        }

        if is_symbol_char(c) {
            let mut text = String::new();
            while i < chars.len() && is_symbol_char(chars[i]) {
                text.push(chars[i]);
                advance!();
            }
            push(&mut tokens, TokenKind::Atom(text));
            continue;
        }

        return Err(syntax(line, column, format!("unexpected character `{c}`")));
    }
    Ok(tokens)
}

pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Cursor over a token stream with end-of-input aware error reporting.
pub(crate) struct Cursor<'a> {
    tokens: &'a [Token],
    pos: usize,
    eof: (usize, usize),
}

impl<'a> Cursor<'a> {
    pub fn new(tokens: &'a [Token], source: &str) -> Self {
        let lines = source.split('\n').count().max(1);
        let last_len = source.rsplit('\n').next().map_or(0, |l| l.chars().count());
        Cursor {
            tokens,
            pos: 0,
            eof: (lines, last_len + 1),
        }
    }

    pub fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    pub fn peek_kind(&self) -> Option<&'a TokenKind> {
        self.peek().map(|t| &t.kind)
    }

    pub fn next(&mut self) -> Option<&'a Token> {
        let tok = self.tokens.get(self.pos);
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn slice_from(&self, start: usize) -> &'a [Token] {
        &self.tokens[start..self.pos]
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    /// Position of the next token, or of the end of input.
    pub fn location(&self) -> (usize, usize) {
        self.peek().map_or(self.eof, |t| (t.line, t.column))
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        let (line, column) = self.location();
        syntax(line, column, message)
    }

    pub fn expect(&mut self, kind: &TokenKind, what: &str) -> Result<&'a Token> {
        match self.peek() {
            Some(tok) if &tok.kind == kind => {
                self.pos += 1;
                Ok(tok)
            }
            Some(tok) => Err(syntax(
                tok.line,
                tok.column,
                format!("expected {what}, found {}", describe(&tok.kind)),
            )),
            None => Err(self.error(format!("expected {what}, found end of input"))),
        }
    }
}

pub(crate) fn describe(kind: &TokenKind) -> String {
    match kind {
        TokenKind::Atom(a) => format!("`{a}`"),
        TokenKind::Var(v) => format!("variable `{v}`"),
        TokenKind::Int(n) => format!("`{n}`"),
        TokenKind::Float(x) => format!("`{x}`"),
        TokenKind::LParen => "`(`".into(),
        TokenKind::RParen => "`)`".into(),
        TokenKind::LBracket => "`[`".into(),
        TokenKind::RBracket => "`]`".into(),
        TokenKind::Comma => "`,`".into(),
        TokenKind::Bar => "`|`".into(),
        TokenKind::Semicolon => "`;`".into(),
        TokenKind::End => "end of clause".into(),
    }
}
