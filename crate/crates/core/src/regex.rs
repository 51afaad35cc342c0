//! Regular expressions: parsing, linearisation, Glushkov automata and the
//! syntactic restrictions used by the tractable walk-membership algorithm.

use std::collections::BTreeSet;
use std::fmt;

use crate::automaton::Automaton;
use crate::error::{Error, Result};

/// Regular expression AST, generic over the atom type so that the same
/// shape serves for source expressions (`Expr<String>`) and their
/// linearisations (`Expr<usize>`, atoms being positions).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr<A> {
    Epsilon,
    Atom(A),
    Star(Box<Expr<A>>),
    Concat(Box<Expr<A>>, Box<Expr<A>>),
    Union(Box<Expr<A>>, Box<Expr<A>>),
}

pub type Regex = Expr<String>;

impl<A> Expr<A> {
    pub fn atom(a: impl Into<A>) -> Self {
        Expr::Atom(a.into())
    }

    pub fn star(self) -> Self {
        Expr::Star(Box::new(self))
    }

    pub fn concat(self, other: Self) -> Self {
        Expr::Concat(Box::new(self), Box::new(other))
    }

    pub fn union(self, other: Self) -> Self {
        Expr::Union(Box::new(self), Box::new(other))
    }

    /// Left-associated concatenation; `None` for an empty sequence.
    pub fn concat_all(parts: impl IntoIterator<Item = Self>) -> Option<Self> {
        parts.into_iter().reduce(Expr::concat)
    }

    /// Left-associated union; `None` for an empty sequence.
    pub fn union_all(parts: impl IntoIterator<Item = Self>) -> Option<Self> {
        parts.into_iter().reduce(Expr::union)
    }

    /// Atoms in left-to-right order.
    pub fn atoms(&self) -> Vec<&A> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a A>) {
        match self {
            Expr::Epsilon => {}
            Expr::Atom(a) => out.push(a),
            Expr::Star(x) => x.collect_atoms(out),
            Expr::Concat(x, y) | Expr::Union(x, y) => {
                x.collect_atoms(out);
                y.collect_atoms(out);
            }
        }
    }

    pub fn atom_count(&self) -> usize {
        self.atoms().len()
    }

    pub fn epsilon_count(&self) -> usize {
        match self {
            Expr::Epsilon => 1,
            Expr::Atom(_) => 0,
            Expr::Star(x) => x.epsilon_count(),
            Expr::Concat(x, y) | Expr::Union(x, y) => x.epsilon_count() + y.epsilon_count(),
        }
    }

    pub fn star_count(&self) -> usize {
        match self {
            Expr::Epsilon | Expr::Atom(_) => 0,
            Expr::Star(x) => 1 + x.star_count(),
            Expr::Concat(x, y) | Expr::Union(x, y) => x.star_count() + y.star_count(),
        }
    }

    pub fn map_atoms<B>(&self, f: &mut impl FnMut(&A) -> B) -> Expr<B> {
        match self {
            Expr::Epsilon => Expr::Epsilon,
            Expr::Atom(a) => Expr::Atom(f(a)),
            Expr::Star(x) => Expr::Star(Box::new(x.map_atoms(f))),
            Expr::Concat(x, y) => {
                let x = x.map_atoms(f);
                Expr::Concat(Box::new(x), Box::new(y.map_atoms(f)))
            }
            Expr::Union(x, y) => {
                let x = x.map_atoms(f);
                Expr::Union(Box::new(x), Box::new(y.map_atoms(f)))
            }
        }
    }

    pub fn nullable(&self) -> bool {
        match self {
            Expr::Epsilon | Expr::Star(_) => true,
            Expr::Atom(_) => false,
            Expr::Concat(x, y) => x.nullable() && y.nullable(),
            Expr::Union(x, y) => x.nullable() || y.nullable(),
        }
    }
}

impl Regex {
    /// `atom^k` as a left-associated concatenation (`k ≥ 1`).
    pub fn power(symbol: &str, k: usize) -> Regex {
        assert!(k >= 1, "power of an atom needs a positive exponent");
        Regex::concat_all((0..k).map(|_| Regex::atom(symbol))).expect("k >= 1")
    }

    /// Distinct atom symbols.
    pub fn symbols(&self) -> BTreeSet<String> {
        self.atoms().into_iter().cloned().collect()
    }
}

impl From<&str> for Regex {
    fn from(s: &str) -> Self {
        Expr::Atom(s.to_string())
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "eps"
}

fn write_symbol(f: &mut fmt::Formatter<'_>, s: &str) -> fmt::Result {
    if is_identifier(s) {
        f.write_str(s)
    } else {
        f.write_str("\"")?;
        for c in s.chars() {
            if c == '"' || c == '\\' {
                f.write_str("\\")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("\"")
    }
}

/// Fully parenthesized form, readable back by [`parse_regex`].
impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Epsilon => f.write_str("eps"),
            Expr::Atom(a) => write_symbol(f, a),
            Expr::Star(x) => write!(f, "({x})*"),
            Expr::Concat(x, y) => write!(f, "({x} . {y})"),
            Expr::Union(x, y) => write!(f, "({x} + {y})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Symbol(String),
    Eps,
    LParen,
    RParen,
    Star,
    Plus,
    Dot,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let err = |offset: usize, message: &str| Error::QuerySyntax {
        offset,
        message: message.to_string(),
    };
    let mut tokens = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        match c {
            c if c.is_whitespace() => {
                it.next();
            }
            '(' | ')' | '*' | '+' | '.' => {
                it.next();
                let tok = match c {
                    '(' => Token::LParen,
                    ')' => Token::RParen,
                    '*' => Token::Star,
                    '+' => Token::Plus,
                    _ => Token::Dot,
                };
                tokens.push((i, tok));
            }
            '"' => {
                it.next();
                let mut sym = String::new();
                let mut closed = false;
                while let Some((_, c)) = it.next() {
                    match c {
                        '"' => {
                            closed = true;
                            break;
                        }
                        '\\' => match it.next() {
                            Some((_, c)) => sym.push(c),
                            None => break,
                        },
                        c => sym.push(c),
                    }
                }
                if !closed {
                    return Err(err(i, "unterminated quoted atom"));
                }
                if sym.is_empty() {
                    return Err(err(i, "empty quoted atom"));
                }
                tokens.push((i, Token::Symbol(sym)));
            }
            c if c.is_ascii_alphabetic() => {
                let mut sym = String::new();
                while let Some(&(_, c)) = it.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        sym.push(c);
                        it.next();
                    } else {
                        break;
                    }
                }
                let tok = if sym == "eps" {
                    Token::Eps
                } else {
                    Token::Symbol(sym)
                };
                tokens.push((i, tok));
            }
            _ => return Err(err(i, &format!("unexpected character `{c}`"))),
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::QuerySyntax {
            offset: self.offset(),
            message: message.into(),
        }
    }

    fn union(&mut self) -> Result<Regex> {
        let mut left = self.concat()?;
        while self.peek() == Some(&Token::Plus) {
            self.pos += 1;
            let right = self.concat()?;
            left = left.union(right);
        }
        Ok(left)
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut left = self.postfix()?;
        loop {
            match self.peek() {
                Some(Token::Dot) => {
                    self.pos += 1;
                    let right = self.postfix()?;
                    left = left.concat(right);
                }
                Some(Token::Symbol(_) | Token::Eps | Token::LParen) => {
                    let right = self.postfix()?;
                    left = left.concat(right);
                }
                _ => return Ok(left),
            }
        }
    }

    fn postfix(&mut self) -> Result<Regex> {
        let mut inner = self.primary()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            inner = inner.star();
        }
        Ok(inner)
    }

    fn primary(&mut self) -> Result<Regex> {
        match self.peek().cloned() {
            Some(Token::Symbol(s)) => {
                self.pos += 1;
                Ok(Expr::Atom(s))
            }
            Some(Token::Eps) => {
                self.pos += 1;
                Ok(Expr::Epsilon)
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.union()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => Err(self.error("expected an atom, `eps` or `(`")),
            None => Err(self.error("unexpected end of query")),
        }
    }
}

/// Parses a query. Star binds tighter than concatenation, which binds
/// tighter than union; both binary operators associate to the left.
/// Concatenation is written by juxtaposition or with `.`.
pub fn parse_regex(text: &str) -> Result<Regex> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        end: text.len(),
    };
    let r = p.union()?;
    if p.pos != p.tokens.len() {
        return Err(p.error("unexpected token"));
    }
    Ok(r)
}

impl std::str::FromStr for Regex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_regex(s)
    }
}

/// A copy of an expression in which atom occurrence `p` (counting from 1,
/// left to right) is replaced by the position `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Linearisation {
    pub linearised: Expr<usize>,
    /// `base[p - 1]` is the symbol of position `p`.
    pub base: Vec<String>,
}

impl Linearisation {
    pub fn positions(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.base.len()
    }

    pub fn base_of(&self, position: usize) -> &str {
        &self.base[position - 1]
    }

    /// Maps every position back to its symbol.
    pub fn erase(&self) -> Regex {
        self.linearised
            .map_atoms(&mut |p: &usize| self.base[*p - 1].clone())
    }
}

pub fn linearise(r: &Regex) -> Linearisation {
    let mut base = Vec::new();
    let linearised = r.map_atoms(&mut |a: &String| {
        base.push(a.clone());
        base.len()
    });
    Linearisation { linearised, base }
}

/// Position sets of a linearised expression.
#[derive(Debug, Clone)]
pub struct PositionSets {
    pub nullable: bool,
    pub first: BTreeSet<usize>,
    pub last: BTreeSet<usize>,
    /// `follow[p]` holds the positions that may follow `p` (index 0 unused).
    pub follow: Vec<BTreeSet<usize>>,
}

pub fn position_sets(lin: &Linearisation) -> PositionSets {
    fn go(
        e: &Expr<usize>,
        follow: &mut Vec<BTreeSet<usize>>,
    ) -> (bool, BTreeSet<usize>, BTreeSet<usize>) {
        match e {
            Expr::Epsilon => (true, BTreeSet::new(), BTreeSet::new()),
            Expr::Atom(p) => (false, BTreeSet::from([*p]), BTreeSet::from([*p])),
            Expr::Star(x) => {
                let (_, first, last) = go(x, follow);
                for &l in &last {
                    follow[l].extend(first.iter().copied());
                }
                (true, first, last)
            }
            Expr::Concat(x, y) => {
                let (nx, fx, lx) = go(x, follow);
                let (ny, fy, ly) = go(y, follow);
                for &l in &lx {
                    follow[l].extend(fy.iter().copied());
                }
                let first = if nx { &fx | &fy } else { fx };
                let last = if ny { &lx | &ly } else { ly };
                (nx && ny, first, last)
            }
            Expr::Union(x, y) => {
                let (nx, fx, lx) = go(x, follow);
                let (ny, fy, ly) = go(y, follow);
                (nx || ny, &fx | &fy, &lx | &ly)
            }
        }
    }
    let mut follow = vec![BTreeSet::new(); lin.base.len() + 1];
    let (nullable, first, last) = go(&lin.linearised, &mut follow);
    PositionSets {
        nullable,
        first,
        last,
        follow,
    }
}

/// Name of the Glushkov state for position `p` carrying `symbol`.
pub fn position_state_name(symbol: &str, p: usize) -> String {
    format!("{symbol}_{p}")
}

pub const GLUSHKOV_INIT: &str = "init";

/// Glushkov automaton of `r`. State 0 is `init`; state `p` is position `p`.
/// Every position of an expression without an empty-language subterm is
/// useful, so the automaton is trim as built.
pub fn glushkov(r: &Regex) -> Automaton {
    let lin = linearise(r);
    let sets = position_sets(&lin);
    let mut a = Automaton::new();
    for s in r.symbols() {
        a.add_symbol(s);
    }
    let init = a.add_state(GLUSHKOV_INIT);
    for p in lin.positions() {
        let q = a.add_state(position_state_name(lin.base_of(p), p));
        debug_assert_eq!(q, p);
    }
    a.set_initial(init);
    if sets.nullable {
        a.set_final(init);
    }
    for &p in &sets.last {
        a.set_final(p);
    }
    for &p in &sets.first {
        a.add_transition(init, lin.base_of(p), p);
    }
    for p in lin.positions() {
        for &q in &sets.follow[p] {
            a.add_transition(p, lin.base_of(q), q);
        }
    }
    debug_assert!(a.is_trim());
    a
}

/// Syntactic features of an expression relevant to the tractable fragment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SyntaxClass {
    pub star_height: usize,
    pub union_under_star: bool,
    pub concat_under_star: bool,
}

pub fn syntax_class(r: &Regex) -> SyntaxClass {
    fn go<A>(e: &Expr<A>, under_star: bool) -> SyntaxClass {
        match e {
            Expr::Epsilon | Expr::Atom(_) => SyntaxClass {
                star_height: 0,
                union_under_star: false,
                concat_under_star: false,
            },
            Expr::Star(x) => {
                let c = go(x, true);
                SyntaxClass {
                    star_height: c.star_height + 1,
                    ..c
                }
            }
            Expr::Concat(x, y) | Expr::Union(x, y) => {
                let cx = go(x, under_star);
                let cy = go(y, under_star);
                let is_union = matches!(e, Expr::Union(..));
                SyntaxClass {
                    star_height: cx.star_height.max(cy.star_height),
                    union_under_star: cx.union_under_star
                        || cy.union_under_star
                        || (under_star && is_union),
                    concat_under_star: cx.concat_under_star
                        || cy.concat_under_star
                        || (under_star && !is_union),
                }
            }
        }
    }
    go(r, false)
}

/// Removes stars nested under a star and ε summands under a star. Requires
/// that no concatenation occurs under a star; under that restriction the
/// Glushkov automaton is unchanged.
pub fn star_normal_simplify(r: &Regex) -> Result<Regex> {
    if syntax_class(r).concat_under_star {
        return Err(Error::Precondition(
            "concatenation under a Kleene star".to_string(),
        ));
    }
    // Body of a star: a union tree of atoms, ε and stars. Returns `None`
    // when only ε remains.
    fn strip(e: &Regex) -> Option<Regex> {
        match e {
            Expr::Epsilon => None,
            Expr::Atom(_) => Some(e.clone()),
            Expr::Star(x) => strip(x),
            Expr::Union(x, y) => match (strip(x), strip(y)) {
                (Some(x), Some(y)) => Some(x.union(y)),
                (x, y) => x.or(y),
            },
            Expr::Concat(..) => unreachable!("checked by the precondition"),
        }
    }
    fn go(e: &Regex) -> Regex {
        match e {
            Expr::Epsilon | Expr::Atom(_) => e.clone(),
            Expr::Star(x) => match strip(x) {
                Some(body) => body.star(),
                None => Expr::Epsilon,
            },
            Expr::Concat(x, y) => go(x).concat(go(y)),
            Expr::Union(x, y) => go(x).union(go(y)),
        }
    }
    Ok(go(r))
}
