//! Text forms: operator expressions and line-oriented spec files.
//!
//! ```text
//! # comment
//! universe: a, b, c          (or `universe: cofinite`, `universe: letters 4`)
//! set M = {a}
//! A = cxy {a} {b}
//! B = wjoin(A, cprime M {c})
//! ```

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::operators::{ClosureSystem, OperatorExpr, OperatorTable};
use crate::sets::{Element, SentenceSet, Universe};

/// Named sets and operators visible to an expression.
#[derive(Debug, Clone, Default)]
pub struct Scope {
    pub sets: BTreeMap<String, SentenceSet>,
    pub operators: BTreeMap<String, OperatorExpr>,
}

/// Parse one operator expression against `universe`.
pub fn parse_operator(text: &str, universe: &Universe) -> Result<OperatorExpr> {
    parse_operator_in(text, universe, &Scope::default(), 1)
}

pub fn parse_operator_in(
    text: &str,
    universe: &Universe,
    scope: &Scope,
    line: usize,
) -> Result<OperatorExpr> {
    let mut p = Parser::new(text, universe, scope, line);
    let op = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("trailing input"));
    }
    Ok(op)
}

/// Parse a set literal or a named set.
pub fn parse_set_in(
    text: &str,
    universe: &Universe,
    scope: &Scope,
    line: usize,
) -> Result<SentenceSet> {
    let mut p = Parser::new(text, universe, scope, line);
    let s = p.set()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("trailing input"));
    }
    Ok(s)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    universe: &'a Universe,
    scope: &'a Scope,
    line: usize,
    /// Column of `chars[0]` within the source line.
    offset: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &str, universe: &'a Universe, scope: &'a Scope, line: usize) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            universe,
            scope,
            line,
            offset: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.offset + pos + 1,
            message: message.into(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn wrap<T>(&self, at: usize, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::Parse { .. } => e,
            other => self.error_at(at, other.to_string()),
        })
    }

    fn expr(&mut self) -> Result<OperatorExpr> {
        self.skip_ws();
        let start = self.pos;
        let Some(word) = self.ident() else {
            return Err(self.error("expected an operator"));
        };
        match word.as_str() {
            "I" => Ok(OperatorExpr::identity()),
            "U" => Ok(OperatorExpr::top()),
            "cxy" | "cprime" => {
                let x = self.set()?;
                let y = self.set()?;
                let r = if word == "cxy" {
                    OperatorExpr::cxy(x, y)
                } else {
                    OperatorExpr::cprime(x, y)
                };
                self.wrap(start, r)
            }
            "s" => {
                let m = self.set()?;
                let b = self.element()?;
                self.wrap(start, OperatorExpr::s_example(m, b))
            }
            "meet" | "join" | "wjoin" | "comp" => {
                self.expect('(')?;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(')')?;
                let r = match word.as_str() {
                    "meet" => OperatorExpr::meet(&a, &b),
                    "join" => OperatorExpr::naive_join(&a, &b),
                    "wjoin" => OperatorExpr::weak_join(&a, &b),
                    _ => OperatorExpr::compose(&a, &b),
                };
                self.wrap(start, r)
            }
            "system" => {
                self.expect('[')?;
                let mut sets = Vec::new();
                self.skip_ws();
                if self.peek() != Some(']') {
                    loop {
                        sets.push(self.set()?);
                        self.skip_ws();
                        if self.peek() == Some(';') {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                }
                self.expect(']')?;
                let system = self.wrap(start, ClosureSystem::new(self.universe, &sets))?;
                Ok(OperatorExpr::from_system(system))
            }
            "table" => self.table(start),
            name => match self.scope.operators.get(name) {
                Some(op) => Ok(op.clone()),
                None => Err(self.error_at(start, format!("unknown operator `{name}`"))),
            },
        }
    }

    fn table(&mut self, start: usize) -> Result<OperatorExpr> {
        let n = self.wrap(
            start,
            self.universe
                .size()
                .ok_or(Error::FiniteOnly("operator tables")),
        )?;
        if n > 20 {
            return Err(self.error_at(start, "operator tables are limited to 20 symbols"));
        }
        let mut images: Vec<Option<u64>> = vec![None; 1 << n];
        self.expect('[')?;
        loop {
            let at = self.pos;
            let from = self.set()?;
            self.expect(':')?;
            let to = self.set()?;
            let key = from.mask().expect("finite universe") as usize;
            if images[key]
                .replace(to.mask().expect("finite universe"))
                .is_some()
            {
                return Err(self.error_at(at, format!("duplicate table entry for {from}")));
            }
            self.skip_ws();
            if self.peek() == Some(';') {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.expect(']')?;
        let got = images.iter().filter(|m| m.is_some()).count();
        if got != images.len() {
            return Err(self.error_at(
                start,
                Error::PartialTable {
                    expected: images.len(),
                    got,
                }
                .to_string(),
            ));
        }
        let table = self.wrap(
            start,
            OperatorTable::new(self.universe, images.into_iter().flatten().collect()),
        )?;
        Ok(OperatorExpr::from_table(table))
    }

    fn set(&mut self) -> Result<SentenceSet> {
        self.skip_ws();
        let start = self.pos;
        let rest: String = self.chars[self.pos..].iter().collect();
        let braced = rest.starts_with('{')
            || rest
                .strip_prefix("co")
                .is_some_and(|r| r.trim_start().starts_with('{'));
        if braced {
            let close = self.chars[self.pos..]
                .iter()
                .position(|&c| c == '}')
                .ok_or_else(|| self.error("unclosed set literal"))?;
            let literal: String = self.chars[self.pos..=self.pos + close].iter().collect();
            self.pos += close + 1;
            return self.wrap(start, self.universe.parse_set(&literal));
        }
        match self.ident() {
            Some(name) if name == "L" => Ok(self.universe.full()),
            Some(name) => self
                .scope
                .sets
                .get(&name)
                .cloned()
                .ok_or_else(|| self.error_at(start, format!("unknown set `{name}`"))),
            None => Err(self.error("expected a set")),
        }
    }

    fn element(&mut self) -> Result<Element> {
        self.skip_ws();
        let start = self.pos;
        let name = self
            .ident()
            .ok_or_else(|| self.error("expected an element"))?;
        let r = if self.universe.is_finite() {
            self.universe.lookup(&name)
        } else {
            name.parse::<Element>().map_err(|_| Error::SetLiteral {
                literal: name.clone(),
                reason: "cofinite-mode elements are naturals".into(),
            })
        };
        self.wrap(start, r)
    }
}

/// A parsed spec file: a universe plus named sets and operators in
/// declaration order.
#[derive(Debug, Clone)]
pub struct SpecFile {
    pub universe: Universe,
    pub scope: Scope,
    pub order: Vec<String>,
}

impl SpecFile {
    /// A universe with no named sets or operators.
    pub fn bare(universe: Universe) -> Self {
        SpecFile {
            universe,
            scope: Scope::default(),
            order: Vec::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut universe: Option<Universe> = None;
        let mut scope = Scope::default();
        let mut order = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            let indent = content.len() - content.trim_start().len();
            let content = content.trim();
            if content.is_empty() {
                continue;
            }
            let err = |column: usize, message: String| Error::Parse {
                line,
                column,
                message,
            };
            if let Some(decl) = content.strip_prefix("universe:") {
                if universe.is_some() {
                    return Err(err(indent + 1, "universe declared twice".into()));
                }
                universe = Some(parse_universe(decl).map_err(|e| err(indent + 1, e.to_string()))?);
                continue;
            }
            let Some(u) = universe.as_ref() else {
                return Err(err(
                    indent + 1,
                    "the universe must be declared first".into(),
                ));
            };
            let (is_set, binding) = match content.strip_prefix("set ") {
                Some(rest) => (true, rest),
                None => (false, content),
            };
            let Some((name, body)) = binding.split_once('=') else {
                return Err(err(indent + 1, "expected `name = expression`".into()));
            };
            let name = name.trim();
            if !valid_name(name) {
                return Err(err(indent + 1, format!("invalid name `{name}`")));
            }
            if scope.sets.contains_key(name) || scope.operators.contains_key(name) {
                return Err(err(indent + 1, format!("duplicate name `{name}`")));
            }
            let body_start = raw[..body.as_ptr() as usize - raw.as_ptr() as usize]
                .chars()
                .count();
            if is_set {
                let mut p = Parser::new(body, u, &scope, line);
                p.offset = body_start;
                let s = p.set()?;
                p.skip_ws();
                if !p.at_end() {
                    return Err(p.error("trailing input"));
                }
                scope.sets.insert(name.to_string(), s);
            } else {
                let mut p = Parser::new(body, u, &scope, line);
                p.offset = body_start;
                let op = p.expr()?;
                p.skip_ws();
                if !p.at_end() {
                    return Err(p.error("trailing input"));
                }
                scope.operators.insert(name.to_string(), op);
                order.push(name.to_string());
            }
        }
        let universe = universe.ok_or(Error::Parse {
            line: 1,
            column: 1,
            message: "missing universe declaration".into(),
        })?;
        Ok(SpecFile {
            universe,
            scope,
            order,
        })
    }

    pub fn operator(&self, name: &str) -> Result<&OperatorExpr> {
        self.scope
            .operators
            .get(name)
            .ok_or_else(|| Error::Usage(format!("no operator named `{name}` in the spec")))
    }

    /// A named operator or an inline expression.
    pub fn resolve(&self, text: &str) -> Result<OperatorExpr> {
        match self.scope.operators.get(text.trim()) {
            Some(op) => Ok(op.clone()),
            None => parse_operator_in(text, &self.universe, &self.scope, 1),
        }
    }

    pub fn resolve_set(&self, text: &str) -> Result<SentenceSet> {
        parse_set_in(text, &self.universe, &self.scope, 1)
    }

    /// Named operators in declaration order.
    pub fn operators(&self) -> impl Iterator<Item = (&str, &OperatorExpr)> {
        self.order
            .iter()
            .map(|n| (n.as_str(), &self.scope.operators[n]))
    }
}

/// `a, b, c`, `cofinite`, or `letters N`.
pub fn parse_universe(decl: &str) -> Result<Universe> {
    let decl = decl.trim();
    if decl == "cofinite" {
        return Ok(Universe::cofinite());
    }
    if let Some(n) = decl.strip_prefix("letters") {
        let n = n
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Usage(format!("bad letter count in `{decl}`")))?;
        return Universe::letters(n);
    }
    let symbols: Vec<&str> = if decl.is_empty() {
        Vec::new()
    } else {
        decl.split(',').map(str::trim).collect()
    };
    Universe::finite(symbols)
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
        && !matches!(
            name,
            "I" | "U"
                | "L"
                | "co"
                | "cxy"
                | "cprime"
                | "s"
                | "meet"
                | "join"
                | "wjoin"
                | "comp"
                | "system"
                | "table"
                | "set"
        )
}
