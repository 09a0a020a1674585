//! Text syntax for presentations.
//!
//! ```text
//! file      := "gens" namelist ";" "rels" relchain { ";" relchain } [";"]
//! relchain  := expr { "=" expr }
//! expr      := term { term }
//! term      := atom [ "^" ( int | atom ) ]
//! atom      := name | "1" | "(" expr ")" | "[" expr "," expr "]" | atom "-1"
//! ```
//!
//! `w^n` is a power (negative allowed), `w^g` a conjugate. A chain
//! `e1 = e2 = ... = en` yields the relators `ei · en⁻¹` for `i < n`.

use std::fmt;

use thiserror::Error;

use super::{Presentation, PresentationError, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("undeclared generator `{name}` at {line}:{col}")]
    UndeclaredGenerator { name: String, line: usize, col: usize },
    #[error("empty generator list")]
    NoGenerators,
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// Parsed expression tree, prior to expansion into a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Identity,
    Gen(usize),
    Product(Vec<Expr>),
    Power(Box<Expr>, i64),
    Conjugate(Box<Expr>, Box<Expr>),
    Commutator(Box<Expr>, Box<Expr>),
    Inverse(Box<Expr>),
    /// A pre-expanded abbreviation.
    Literal(Word),
}

impl Expr {
    /// Expands the syntactic sugar into a freely reduced word.
    pub fn expand(&self) -> Word {
        match self {
            Expr::Identity => Word::identity(),
            Expr::Gen(i) => Word::generator(*i),
            Expr::Product(items) => items
                .iter()
                .fold(Word::identity(), |acc, e| acc.mul(&e.expand())),
            Expr::Power(base, n) => base.expand().pow(*n),
            Expr::Conjugate(x, by) => x.expand().conjugate(&by.expand()),
            Expr::Commutator(x, y) => Word::commutator(&x.expand(), &y.expand()),
            Expr::Inverse(x) => x.expand().inverse(),
            Expr::Literal(w) => w.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(i64),
    Sym(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(n) => write!(f, "`{n}`"),
            Tok::Int(i) => write!(f, "`{i}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            col += i - start;
            out.push((Tok::Name(name), pos));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            let v = s.parse::<i64>().map_err(|_| ParseError::Syntax {
                line: pos.line,
                col: pos.col,
                message: format!("integer `{s}` out of range"),
            })?;
            out.push((Tok::Int(v), pos));
            continue;
        }
        if "^()[],;=-".contains(c) {
            out.push((Tok::Sym(c), pos));
            i += 1;
            col += 1;
            continue;
        }
        return Err(ParseError::Syntax {
            line,
            col,
            message: format!("unexpected character `{c}`"),
        });
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    names: &'a [String],
    abbreviations: &'a [(String, Word)],
    end: Pos,
}

impl<'a> Parser<'a> {
    fn new(text: &str, names: &'a [String], abbreviations: &'a [(String, Word)]) -> Result<Self, ParseError> {
        let toks = lex(text)?;
        let lines = text.lines().count().max(1);
        let last_len = text.lines().last().map(|l| l.chars().count()).unwrap_or(0);
        Ok(Parser {
            toks,
            at: 0,
            names,
            abbreviations,
            end: Pos { line: lines, col: last_len + 1 },
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.at + k).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let p = self.pos();
        Err(ParseError::Syntax { line: p.line, col: p.col, message: message.into() })
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.is_sym(c) {
            self.at += 1;
            Ok(())
        } else {
            match self.peek() {
                Some(t) => self.err(format!("expected `{c}`, found {t}")),
                None => self.err(format!("expected `{c}`, found end of input")),
            }
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Name(n)) if n == kw => {
                self.at += 1;
                Ok(())
            }
            _ => self.err(format!("expected keyword `{kw}`")),
        }
    }

    fn at_atom_start(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Name(_)) | Some(Tok::Int(1)) | Some(Tok::Sym('(')) | Some(Tok::Sym('['))
        )
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        if !self.at_atom_start() {
            return match self.peek() {
                Some(t) => self.err(format!("expected an expression, found {t}")),
                None => self.err("expected an expression, found end of input"),
            };
        }
        let mut terms = Vec::new();
        while self.at_atom_start() {
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Product(terms) })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.is_sym('^') {
            return Ok(base);
        }
        self.at += 1;
        match (self.peek().cloned(), self.peek_at(1).cloned()) {
            (Some(Tok::Sym('-')), Some(Tok::Int(n))) => {
                self.at += 2;
                Ok(Expr::Power(Box::new(base), -n))
            }
            (Some(Tok::Int(n)), _) => {
                self.at += 1;
                Ok(Expr::Power(Box::new(base), n))
            }
            _ => {
                let by = self.atom()?;
                Ok(Expr::Conjugate(Box::new(base), Box::new(by)))
            }
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        let mut a = match self.peek().cloned() {
            Some(Tok::Name(n)) => {
                self.at += 1;
                if let Some(i) = self.names.iter().position(|g| *g == n) {
                    Expr::Gen(i)
                } else if let Some((_, w)) = self.abbreviations.iter().find(|(k, _)| *k == n) {
                    Expr::Literal(w.clone())
                } else {
                    return Err(ParseError::UndeclaredGenerator { name: n, line: pos.line, col: pos.col });
                }
            }
            Some(Tok::Int(1)) => {
                self.at += 1;
                Expr::Identity
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect_sym(')')?;
                e
            }
            Some(Tok::Sym('[')) => {
                self.at += 1;
                let x = self.expr()?;
                self.expect_sym(',')?;
                let y = self.expr()?;
                self.expect_sym(']')?;
                Expr::Commutator(Box::new(x), Box::new(y))
            }
            Some(t) => return self.err(format!("expected a generator, `1`, `(` or `[`, found {t}")),
            None => return self.err("unexpected end of input"),
        };
        // postfix `-1` inverse
        while self.is_sym('-') && self.peek_at(1) == Some(&Tok::Int(1)) {
            self.at += 2;
            a = Expr::Inverse(Box::new(a));
        }
        Ok(a)
    }

    fn relchain(&mut self) -> Result<Vec<Word>, ParseError> {
        let mut members = vec![self.expr()?.expand()];
        while self.is_sym('=') {
            self.at += 1;
            members.push(self.expr()?.expand());
        }
        let last = members.pop().unwrap();
        if members.is_empty() {
            return Ok(vec![last]);
        }
        let last_inv = last.inverse();
        Ok(members.iter().map(|m| m.mul(&last_inv)).collect())
    }

    fn relator_list(&mut self) -> Result<Vec<Word>, ParseError> {
        let mut rels = Vec::new();
        loop {
            if self.peek().is_none() {
                break;
            }
            rels.extend(self.relchain()?);
            if self.is_sym(';') {
                self.at += 1;
            } else if self.peek().is_some() {
                return self.err("expected `;` between relators");
            }
        }
        Ok(rels)
    }
}

/// Parses a full presentation in the syntax described in the module docs.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut p = Parser::new(text, &[], &[])?;
    p.expect_keyword("gens")?;
    let mut names = Vec::new();
    while let Some(Tok::Name(n)) = p.peek().cloned() {
        names.push(n);
        p.at += 1;
        if p.is_sym(',') {
            p.at += 1;
        }
    }
    if names.is_empty() {
        return Err(ParseError::NoGenerators);
    }
    p.expect_sym(';')?;
    p.expect_keyword("rels")?;
    p.names = &names;
    let relators = p.relator_list()?;
    // `p` borrows `names`; drop it before moving them.
    drop(p);
    Ok(Presentation::new(names, relators)?)
}

/// Parses a single word expression over the given generator names.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word, ParseError> {
    parse_word_with(text, names, &[])
}

/// Like [`parse_word`], but also accepts named abbreviations for fixed words.
pub fn parse_word_with(text: &str, names: &[String], abbreviations: &[(String, Word)]) -> Result<Word, ParseError> {
    let mut p = Parser::new(text, names, abbreviations)?;
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        return p.err(format!("trailing input at {t}"));
    }
    Ok(e.expand())
}

/// Parses a `;`-separated list of relator chains over fixed generator names.
pub(crate) fn parse_relators_with(
    text: &str,
    names: &[String],
    abbreviations: &[(String, Word)],
) -> Result<Vec<Word>, ParseError> {
    let mut p = Parser::new(text, names, abbreviations)?;
    p.relator_list()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn smallest_cyclic() {
        let p = parse_presentation("gens a; rels a^3;").unwrap();
        assert_eq!(p.generator_count(), 1);
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.relators()[0].letters(), &[1, 1, 1]);
    }

    #[test]
    fn undeclared_generator() {
        let e = parse_presentation("gens a; rels b^2;").unwrap_err();
        assert!(matches!(e, ParseError::UndeclaredGenerator { ref name, line: 1, col: 14 } if name == "b"));
    }

    #[test]
    fn empty_generator_list() {
        assert_eq!(parse_presentation("gens ; rels 1").unwrap_err(), ParseError::NoGenerators);
    }

    #[test]
    fn syntax_error_has_position() {
        let e = parse_presentation("gens a, b;\nrels a^3; [a, b;").unwrap_err();
        match e {
            ParseError::Syntax { line, col, .. } => assert_eq!((line, col), (2, 16)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_presentation("gens a rels a"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_presentation("gens a; rels a $"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn chains_pair_with_last_member() {
        let p = parse_presentation("gens p, q, t; rels p^2 = q^2 = t").unwrap();
        assert_eq!(p.relators()[0].letters(), &[1, 1, -3]);
        assert_eq!(p.relators()[1].letters(), &[2, 2, -3]);
        let p = parse_presentation("gens a, b; rels a^3 = b^3 = [a,b]^3 = 1").unwrap();
        assert_eq!(p.relators().len(), 3);
    }

    #[test]
    fn equality_is_left_times_right_inverse() {
        let p = parse_presentation("gens a, u; rels a^u = a").unwrap();
        // u⁻¹ a u a⁻¹
        assert_eq!(p.relators()[0].letters(), &[-2, 1, 2, -1]);
    }

    #[test]
    fn sugar_forms() {
        let n = names(&["a", "b", "p", "r"]);
        assert_eq!(parse_word("[a,b]", &n).unwrap().letters(), &[-1, -2, 1, 2]);
        assert_eq!(parse_word("a^-2", &n).unwrap().letters(), &[-1, -1]);
        assert_eq!(parse_word("a-1", &n).unwrap().letters(), &[-1]);
        assert_eq!(parse_word("(a b)-1", &n).unwrap().letters(), &[-2, -1]);
        assert_eq!(parse_word("a^b", &n).unwrap().letters(), &[-2, 1, 2]);
        assert_eq!(parse_word("r^(p r)", &n).unwrap().letters(), &[-4, -3, 4, 3, 4]);
        assert_eq!(parse_word("p^(b^2)", &n).unwrap().letters(), &[-2, -2, 3, 2, 2]);
        assert!(parse_word("1", &n).unwrap().is_identity());
        assert!(parse_word("a a-1", &n).unwrap().is_identity());
    }

    #[test]
    fn abbreviations_expand_in_place() {
        let n = names(&["a", "b"]);
        let abbr = vec![("x".to_string(), parse_word("a b", &n).unwrap())];
        assert_eq!(parse_word_with("x^2", &n, &abbr).unwrap().letters(), &[1, 2, 1, 2]);
    }
}
