//! Parser for the input language.
//!
//! Variables start uppercase, constants and predicates lowercase. Rules end
//! with `.` and use `:-`, `,`, `;`, `not`; formulas use `&`, `|`, `->`, `-`,
//! `forall`, `exists`, `=`, `!=`. `%` starts a comment line and `#query`
//! introduces a query sentence. See `docs/grammar.ebnf` for the grammar.

use std::collections::HashMap;

use thiserror::Error;

use crate::program::{Program, Rule, RuleError};
use crate::syntax::{Formula, Term};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// A parsed source file: the program plus any `#query` sentences.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ProgramFile {
    pub program: Program,
    pub queries: Vec<Formula>,
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.expect_eof()?;
    Ok(f)
}

pub fn parse_file(text: &str) -> Result<ProgramFile, ParseError> {
    let mut p = Parser::new(text)?;
    let mut rules = Vec::new();
    let mut queries = Vec::new();
    while !p.at_eof() {
        if p.eat(&Tok::Query) {
            let f = p.formula()?;
            p.expect(&Tok::Dot)?;
            queries.push(f);
        } else {
            rules.push(p.rule()?);
        }
    }
    Ok(ProgramFile {
        program: Program::new(rules),
        queries,
    })
}

/// Parses the rules of a source text; `#query` directives are collected by
/// [`parse_file`] and ignored here.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    Ok(parse_file(text)?.program)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Lower(String),
    Upper(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Semi,
    If, // :-
    Eq,
    Neq,
    And,
    Or,
    Arrow,
    Minus,
    Not,
    Forall,
    Exists,
    True,
    False,
    Query,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Lower(s) | Tok::Upper(s) => format!("'{s}'"),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Dot => "'.'".into(),
            Tok::Semi => "';'".into(),
            Tok::If => "':-'".into(),
            Tok::Eq => "'='".into(),
            Tok::Neq => "'!='".into(),
            Tok::And => "'&'".into(),
            Tok::Or => "'|'".into(),
            Tok::Arrow => "'->'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Not => "'not'".into(),
            Tok::Forall => "'forall'".into(),
            Tok::Exists => "'exists'".into(),
            Tok::True => "'true'".into(),
            Tok::False => "'false'".into(),
            Tok::Query => "'#query'".into(),
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
    /// predicate name -> (arity, first-use position)
    arities: HashMap<String, (usize, (usize, usize))>,
    constants: HashMap<String, (usize, usize)>,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn bump(&mut self) -> char {
        let c = self.chars.next().unwrap();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        c
    }

    fn error(&self, message: String) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col,
            message,
        }
    }
}

fn lex(text: &str) -> Result<(Vec<(Tok, usize, usize)>, (usize, usize)), ParseError> {
    let mut toks = Vec::new();
    let mut lx = Lexer {
        chars: text.chars().peekable(),
        line: 1,
        col: 1,
    };
    while let Some(&c) = lx.chars.peek() {
        let (tline, tcol) = (lx.line, lx.col);
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                lx.bump();
            }
            '%' => {
                while let Some(&c) = lx.chars.peek() {
                    lx.bump();
                    if c == '\n' {
                        break;
                    }
                }
            }
            '(' => {
                lx.bump();
                toks.push((Tok::LParen, tline, tcol));
            }
            ')' => {
                lx.bump();
                toks.push((Tok::RParen, tline, tcol));
            }
            ',' => {
                lx.bump();
                toks.push((Tok::Comma, tline, tcol));
            }
            '.' => {
                lx.bump();
                toks.push((Tok::Dot, tline, tcol));
            }
            ';' => {
                lx.bump();
                toks.push((Tok::Semi, tline, tcol));
            }
            '&' => {
                lx.bump();
                toks.push((Tok::And, tline, tcol));
            }
            '|' => {
                lx.bump();
                toks.push((Tok::Or, tline, tcol));
            }
            '=' => {
                lx.bump();
                toks.push((Tok::Eq, tline, tcol));
            }
            ':' => {
                lx.bump();
                if lx.chars.peek() == Some(&'-') {
                    lx.bump();
                    toks.push((Tok::If, tline, tcol));
                } else {
                    return Err(lx.error("expected ':-'".into()));
                }
            }
            '!' => {
                lx.bump();
                if lx.chars.peek() == Some(&'=') {
                    lx.bump();
                    toks.push((Tok::Neq, tline, tcol));
                } else {
                    return Err(lx.error("expected '!='".into()));
                }
            }
            '-' => {
                lx.bump();
                if lx.chars.peek() == Some(&'>') {
                    lx.bump();
                    toks.push((Tok::Arrow, tline, tcol));
                } else {
                    toks.push((Tok::Minus, tline, tcol));
                }
            }
            '#' => {
                lx.bump();
                let mut word = String::new();
                while let Some(&c) = lx.chars.peek() {
                    if c.is_ascii_alphanumeric() {
                        word.push(lx.bump());
                    } else {
                        break;
                    }
                }
                if word == "query" {
                    toks.push((Tok::Query, tline, tcol));
                } else {
                    return Err(lx.error(format!("unknown directive '#{word}'")));
                }
            }
            c if c.is_ascii_alphabetic() => {
                let mut word = String::new();
                while let Some(&c) = lx.chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        word.push(lx.bump());
                    } else {
                        break;
                    }
                }
                let tok = match word.as_str() {
                    "not" => Tok::Not,
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    "true" => Tok::True,
                    "false" => Tok::False,
                    _ if c.is_ascii_uppercase() => Tok::Upper(word),
                    _ => Tok::Lower(word),
                };
                toks.push((tok, tline, tcol));
            }
            other => return Err(lx.error(format!("unexpected character '{other}'"))),
        }
    }
    Ok((toks, (lx.line, lx.col)))
}

impl Parser {
    fn new(text: &str) -> Result<Parser, ParseError> {
        let (toks, end) = lex(text)?;
        Ok(Parser {
            toks,
            pos: 0,
            end,
            arities: HashMap::new(),
            constants: HashMap::new(),
        })
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|&(_, l, c)| (l, c))
            .unwrap_or(self.end)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            let found = self
                .peek()
                .map(|t| t.describe())
                .unwrap_or_else(|| "end of input".into());
            Err(self.error(format!("expected {}, found {}", t.describe(), found)))
        }
    }

    fn at_eof(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn expect_eof(&self) -> Result<(), ParseError> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(self.error(format!(
                "unexpected {} after formula",
                self.peek().unwrap().describe()
            )))
        }
    }

    // --- formulas -------------------------------------------------------

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.formula()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conjunction()?;
        while self.eat(&Tok::Or) {
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while self.eat(&Tok::And) {
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Forall) | Some(Tok::Exists) => {
                let existential = matches!(self.peek(), Some(Tok::Exists));
                self.pos += 1;
                let mut vars = Vec::new();
                while let Some(Tok::Upper(v)) = self.peek() {
                    vars.push(v.clone());
                    self.pos += 1;
                }
                if vars.is_empty() {
                    return Err(self.error("expected variable after quantifier"));
                }
                let body = self.unary()?;
                let mut f = body;
                for v in vars.into_iter().rev() {
                    f = if existential {
                        Formula::exists(v, f)
                    } else {
                        Formula::forall(v, f)
                    };
                }
                Ok(f)
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let pos = self.here();
        match self.next() {
            Some(Tok::True) => Ok(Formula::top()),
            Some(Tok::False) => Ok(Formula::Bottom),
            Some(Tok::LParen) => {
                let f = self.formula()?;
                self.expect(&Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::Upper(v)) => {
                let lhs = Term::var(v);
                self.equality_tail(lhs)
            }
            Some(Tok::Lower(name)) => {
                if self.eat(&Tok::LParen) {
                    let mut args = vec![self.term()?];
                    while self.eat(&Tok::Comma) {
                        args.push(self.term()?);
                    }
                    self.expect(&Tok::RParen)?;
                    self.note_predicate(&name, args.len(), pos)?;
                    Ok(Formula::pred(name, args))
                } else if matches!(self.peek(), Some(Tok::Eq) | Some(Tok::Neq)) {
                    self.note_constant(&name, pos)?;
                    self.equality_tail(Term::con(name))
                } else {
                    self.note_predicate(&name, 0, pos)?;
                    Ok(Formula::pred(name, vec![]))
                }
            }
            Some(t) => Err(ParseError {
                line: pos.0,
                col: pos.1,
                message: format!("expected a formula, found {}", t.describe()),
            }),
            None => Err(ParseError {
                line: pos.0,
                col: pos.1,
                message: "expected a formula, found end of input".into(),
            }),
        }
    }

    fn equality_tail(&mut self, lhs: Term) -> Result<Formula, ParseError> {
        if self.eat(&Tok::Eq) {
            Ok(Formula::eq(lhs, self.term()?))
        } else if self.eat(&Tok::Neq) {
            Ok(Formula::neq(lhs, self.term()?))
        } else {
            Err(self.error("a term must be part of an equality or an atom"))
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let pos = self.here();
        match self.next() {
            Some(Tok::Upper(v)) => Ok(Term::var(v)),
            Some(Tok::Lower(c)) => {
                self.note_constant(&c, pos)?;
                Ok(Term::con(c))
            }
            other => Err(ParseError {
                line: pos.0,
                col: pos.1,
                message: format!(
                    "expected a term, found {}",
                    other.map(|t| t.describe()).unwrap_or_else(|| "end of input".into())
                ),
            }),
        }
    }

    // --- rules ----------------------------------------------------------

    fn rule(&mut self) -> Result<Rule, ParseError> {
        let pos = self.here();
        let head = if self.peek() == Some(&Tok::If) {
            // ":- body." constraint with elided head
            Formula::Bottom
        } else {
            let mut disjuncts = vec![self.unary()?];
            while self.eat(&Tok::Semi) {
                disjuncts.push(self.unary()?);
            }
            Formula::or_all(disjuncts)
        };
        let body = if self.eat(&Tok::If) {
            let mut items = vec![self.body_item()?];
            while self.eat(&Tok::Comma) {
                items.push(self.body_item()?);
            }
            Formula::and_all(items)
        } else {
            Formula::top()
        };
        self.expect(&Tok::Dot)?;
        Rule::new(head, body).map_err(|e: RuleError| ParseError {
            line: pos.0,
            col: pos.1,
            message: e.to_string(),
        })
    }

    fn body_item(&mut self) -> Result<Formula, ParseError> {
        if self.eat(&Tok::Not) {
            Ok(Formula::not(self.body_item()?))
        } else {
            self.unary()
        }
    }

    // --- symbol table ----------------------------------------------------

    fn note_predicate(
        &mut self,
        name: &str,
        arity: usize,
        pos: (usize, usize),
    ) -> Result<(), ParseError> {
        if let Some((seen, _)) = self.arities.get(name) {
            if *seen != arity {
                return Err(ParseError {
                    line: pos.0,
                    col: pos.1,
                    message: format!(
                        "arity mismatch: predicate '{name}' used with {arity} and {seen} arguments"
                    ),
                });
            }
        } else {
            self.arities.insert(name.to_string(), (arity, pos));
        }
        if self.constants.contains_key(name) {
            return Err(ParseError {
                line: pos.0,
                col: pos.1,
                message: format!("'{name}' used as both predicate and object constant"),
            });
        }
        Ok(())
    }

    fn note_constant(&mut self, name: &str, pos: (usize, usize)) -> Result<(), ParseError> {
        if self.arities.contains_key(name) {
            return Err(ParseError {
                line: pos.0,
                col: pos.1,
                message: format!("'{name}' used as both predicate and object constant"),
            });
        }
        self.constants.entry(name.to_string()).or_insert(pos);
        Ok(())
    }
}
