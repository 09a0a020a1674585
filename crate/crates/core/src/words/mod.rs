//! Free-group words and finite presentations.
//!
//! Conventions used throughout the crate: words are read left to right,
//! conjugation is `x^y = y⁻¹ x y` and the commutator is `[x, y] = x⁻¹ y⁻¹ x y`.

mod catalog;
mod identities;
mod parse;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use catalog::{catalog, catalog_names, CatalogEntry};
pub use identities::{verify_free_identities, IdentityCheck};
pub use parse::{parse_presentation, parse_word, parse_word_with, Expr, ParseError};

/// A generator letter: `+(i + 1)` is generator `i`, `-(i + 1)` its inverse.
pub type Letter = i32;

pub fn letter(generator: usize, inverse: bool) -> Letter {
    let l = generator as Letter + 1;
    if inverse {
        -l
    } else {
        l
    }
}

/// Generator index of a letter, ignoring its sign.
#[inline]
pub fn letter_generator(l: Letter) -> usize {
    (l.unsigned_abs() - 1) as usize
}

/// A freely reduced word in a free group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(index: usize) -> Self {
        Word(vec![letter(index, false)])
    }

    /// Builds a word from arbitrary letters, reducing freely.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            assert!(l != 0, "letter 0 is not a generator");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|&l| letter_generator(l)).max()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    /// `self^n`; negative exponents invert first.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `self^by = by⁻¹ · self · by`.
    pub fn conjugate(&self, by: &Word) -> Word {
        by.inverse().mul(self).mul(by)
    }

    /// `[x, y] = x⁻¹ y⁻¹ x y`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.inverse().mul(&y.inverse()).mul(x).mul(y)
    }

    /// Cyclic reduction: strips matching inverse pairs from the two ends.
    pub fn cyclically_reduced(&self) -> Word {
        let mut lo = 0;
        let mut hi = self.0.len();
        while hi - lo >= 2 && self.0[lo] == -self.0[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        Word(self.0[lo..hi].to_vec())
    }

    /// Renders the word with the given generator names, compressing runs into powers.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

/// Free reduction of an already-built word. Idempotent.
pub fn free_reduce(w: &Word) -> Word {
    Word::from_letters(w.0.iter().copied())
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = &self.word.0;
        if letters.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let mut j = i;
            while j < letters.len() && letters[j] == l {
                j += 1;
            }
            let run = (j - i) as i64;
            let exp = if l < 0 { -run } else { run };
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let name = &self.names[letter_generator(l)];
            if exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
            i = j;
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("presentation has no generators")]
    NoGenerators,
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("relator {relator} uses generator index {index}, but only {count} generators exist")]
    GeneratorOutOfRange { relator: usize, index: usize, count: usize },
    #[error("generator `{0}` is shared but missing from one side of the amalgam")]
    MissingShared(String),
    #[error("generator `{0}` occurs in both presentations but is not declared shared")]
    NameClash(String),
}

/// A finite presentation `⟨generators | relators⟩`; each relator is understood as `= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        if generators.is_empty() {
            return Err(PresentationError::NoGenerators);
        }
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.as_str()) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        for (i, r) in relators.iter().enumerate() {
            if let Some(m) = r.max_generator() {
                if m >= generators.len() {
                    return Err(PresentationError::GeneratorOutOfRange {
                        relator: i,
                        index: m,
                        count: generators.len(),
                    });
                }
            }
        }
        Ok(Presentation { generators, relators })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Word consisting of the named generator.
    pub fn gen(&self, name: &str) -> Option<Word> {
        self.generator_index(name).map(Word::generator)
    }

    /// Parses a word over this presentation's generators.
    pub fn word(&self, text: &str) -> Result<Word, ParseError> {
        parse_word(text, &self.generators)
    }

    /// Returns a copy with extra relators appended.
    pub fn with_relators(&self, extra: impl IntoIterator<Item = Word>) -> Result<Self, PresentationError> {
        let mut relators = self.relators.clone();
        relators.extend(extra);
        Presentation::new(self.generators.clone(), relators)
    }

    /// Re-expresses a word of this presentation over another presentation's
    /// generators, matching by name.
    pub fn translate(&self, w: &Word, target: &Presentation) -> Option<Word> {
        let map: Vec<Option<usize>> = self
            .generators
            .iter()
            .map(|g| target.generator_index(g))
            .collect();
        let mut letters = Vec::with_capacity(w.len());
        for &l in w.letters() {
            let t = map[letter_generator(l)]?;
            letters.push(letter(t, l < 0));
        }
        Some(Word::from_letters(letters))
    }

    /// Canonical text form, accepted back by [`parse_presentation`].
    pub fn to_text(&self) -> String {
        let mut s = format!("gens {};\nrels\n", self.generators.join(", "));
        let n = self.relators.len();
        for (i, r) in self.relators.iter().enumerate() {
            let sep = if i + 1 == n { "" } else { ";" };
            s.push_str(&format!("  {}{}\n", r.display(&self.generators), sep));
        }
        s
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Presentation of the free product of `px` and `py` with the generators
/// named in `shared` identified. Generators come in `px` order followed by
/// the non-shared generators of `py`; relators of `px` come first, then the
/// relators of `py` not already present.
pub fn amalgamated_presentation(
    px: &Presentation,
    py: &Presentation,
    shared: &[&str],
) -> Result<Presentation, PresentationError> {
    for &s in shared {
        if px.generator_index(s).is_none() || py.generator_index(s).is_none() {
            return Err(PresentationError::MissingShared(s.to_string()));
        }
    }
    let mut generators = px.generators.clone();
    for g in &py.generators {
        if shared.contains(&g.as_str()) {
            continue;
        }
        if px.generator_index(g).is_some() {
            return Err(PresentationError::NameClash(g.clone()));
        }
        generators.push(g.clone());
    }
    let out = Presentation::new(generators, Vec::new())?;
    let mut relators: Vec<Word> = px
        .relators
        .iter()
        .map(|r| px.translate(r, &out).expect("px generators are a prefix"))
        .collect();
    for r in &py.relators {
        let t = py.translate(r, &out).expect("py generators all present");
        if !relators.contains(&t) {
            relators.push(t);
        }
    }
    Presentation::new(out.generators, relators)
}
