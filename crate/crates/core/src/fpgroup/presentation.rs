//! Finite presentations and their text format.
//!
//! ```text
//! gens a b
//! rel a b a b^-1 a^-1 b^-1
//! meridian a
//! ```
//!
//! Tokens are whitespace separated. A syllable is `g`, `g^n` or `g^-n`. When a
//! generator name is a single lowercase letter, the matching uppercase letter
//! is accepted as its inverse. `#` starts a comment.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::word::{Syllable, Word};
use crate::error::{Error, Result};

/// `⟨ generators | relators ⟩`, optionally with a distinguished meridian.
///
/// Relators are kept cyclically reduced; the identity and any relator that
/// duplicates an earlier one up to rotation or inversion are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
    meridian: Option<Word>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn canonical_relators(relators: impl IntoIterator<Item = Word>) -> Vec<Word> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for r in relators {
        let r = r.cyclic_reduce();
        if r.is_identity() {
            continue;
        }
        if seen.insert(r.cyclic_class_key()) {
            out.push(r);
        }
    }
    out
}

impl Presentation {
    pub fn new(
        generators: Vec<String>,
        relators: Vec<Word>,
        meridian: Option<Word>,
    ) -> Result<Self> {
        let mut names = HashSet::new();
        for g in &generators {
            if !valid_name(g) {
                return Err(Error::InvalidGeneratorName(g.clone()));
            }
            if !names.insert(g.as_str()) {
                return Err(Error::DuplicateGenerator(g.clone()));
            }
        }
        let n = generators.len();
        for r in relators.iter().chain(meridian.iter()) {
            r.check_range(n)?;
        }
        Ok(Presentation {
            generators,
            relators: canonical_relators(relators),
            meridian,
        })
    }

    /// The free group on the given names.
    pub fn free<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        Presentation::new(names.into_iter().map(Into::into).collect(), vec![], None)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn meridian(&self) -> Option<&Word> {
        self.meridian.as_ref()
    }

    pub fn require_meridian(&self) -> Result<&Word> {
        self.meridian.as_ref().ok_or(Error::MissingMeridian)
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn with_meridian(self, meridian: Option<Word>) -> Result<Self> {
        if let Some(m) = &meridian {
            m.check_range(self.generators.len())?;
        }
        Ok(Presentation { meridian, ..self })
    }

    /// Quotient by the normal closure of `words`: relators appended, generator
    /// table and meridian unchanged.
    pub fn add_relators(&self, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let n = self.generators.len();
        let words: Vec<Word> = words.into_iter().collect();
        for w in &words {
            w.check_range(n)?;
        }
        Ok(Presentation {
            generators: self.generators.clone(),
            relators: canonical_relators(self.relators.iter().cloned().chain(words)),
            meridian: self.meridian.clone(),
        })
    }

    /// Appends a generator and returns its index.
    pub fn add_generator(&self, name: impl Into<String>) -> Result<(Self, usize)> {
        let mut generators = self.generators.clone();
        generators.push(name.into());
        let p = Presentation::new(generators, self.relators.clone(), self.meridian.clone())?;
        let idx = p.generators.len() - 1;
        Ok((p, idx))
    }

    /// First name of the form `{prefix}{i}`, `i = 1, 2, …`, not already in use.
    pub fn fresh_name(&self, prefix: &str) -> String {
        (1..)
            .map(|i| format!("{prefix}{i}"))
            .find(|cand| self.generator_index(cand).is_none())
            .expect("unbounded search")
    }

    /// Drops generator `g`, which must no longer occur in any relator or the
    /// meridian, and renumbers the rest.
    pub(crate) fn remove_unused_generator(&self, g: usize) -> Self {
        debug_assert!(self.relators.iter().all(|r| !r.contains(g)));
        let shift = |i: usize| if i > g { i - 1 } else { i };
        let mut generators = self.generators.clone();
        generators.remove(g);
        Presentation {
            generators,
            relators: self
                .relators
                .iter()
                .map(|r| r.map_generators(shift))
                .collect(),
            meridian: self.meridian.as_ref().map(|m| m.map_generators(shift)),
        }
    }

    pub(crate) fn from_parts_unchecked(
        generators: Vec<String>,
        relators: Vec<Word>,
        meridian: Option<Word>,
    ) -> Self {
        Presentation {
            generators,
            relators: canonical_relators(relators),
            meridian,
        }
    }

    pub fn word_to_string(&self, w: &Word) -> String {
        w.display(&self.generators).to_string()
    }

    /// Parses a single word, e.g. `a b^-1 A`.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut syl = Vec::new();
        for tok in text.split_whitespace() {
            syl.push(self.parse_syllable(tok)?);
        }
        Ok(Word::from_syllables(syl))
    }

    fn parse_syllable(&self, tok: &str) -> Result<Syllable> {
        let (base, exp) = match tok.split_once('^') {
            Some((base, exp)) => {
                let e =
                    BigInt::from_str(exp).map_err(|_| Error::MalformedExponent(tok.to_string()))?;
                (base, e)
            }
            None => (tok, BigInt::from(1)),
        };
        if let Some(g) = self.generator_index(base) {
            return Ok(Syllable::new(g, exp));
        }
        let mut chars = base.chars();
        if let (Some(c), None) = (chars.next(), chars.next()) {
            if c.is_ascii_uppercase() {
                let lower = c.to_ascii_lowercase().to_string();
                if let Some(g) = self.generator_index(&lower) {
                    return Ok(Syllable::new(g, -exp));
                }
            }
        }
        Err(Error::UnknownGenerator(base.to_string()))
    }

    /// Parses the text format described in the module docs.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pres: Option<Presentation> = None;
        let mut relators = Vec::new();
        let mut meridian: Option<Word> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: &str| Error::Syntax {
                line: lineno + 1,
                message: message.to_string(),
            };
            let (keyword, rest) = match line.split_once(char::is_whitespace) {
                Some((k, r)) => (k, r),
                None => (line, ""),
            };
            match keyword {
                "gens" => {
                    if pres.is_some() {
                        return Err(syntax("duplicate `gens` line"));
                    }
                    let names = rest.split_whitespace().map(str::to_string).collect();
                    pres = Some(Presentation::new(names, vec![], None)?);
                }
                "rel" | "meridian" => {
                    let p = match &pres {
                        Some(p) => p,
                        None => {
                            // Report the first offending token the same way an
                            // undeclared generator would be reported.
                            let empty = Presentation::free(Vec::<String>::new())?;
                            empty.parse_word(rest)?;
                            return Err(syntax("`gens` line must come first"));
                        }
                    };
                    let w = p.parse_word(rest)?;
                    if keyword == "rel" {
                        relators.push(w);
                    } else if meridian.replace(w).is_some() {
                        return Err(syntax("duplicate `meridian` line"));
                    }
                }
                other => return Err(syntax(&format!("unknown keyword `{other}`"))),
            }
        }
        let p = pres.unwrap_or_else(|| Presentation::from_parts_unchecked(vec![], vec![], None));
        Presentation::new(p.generators, relators, meridian)
    }

    /// Serializes to the canonical text format.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Presentation::parse(s)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens")?;
        for g in &self.generators {
            write!(f, " {g}")?;
        }
        writeln!(f)?;
        for r in &self.relators {
            writeln!(f, "rel {}", r.display(&self.generators))?;
        }
        if let Some(m) = &self.meridian {
            if m.is_identity() {
                writeln!(f, "meridian")?;
            } else {
                writeln!(f, "meridian {}", m.display(&self.generators))?;
            }
        }
        Ok(())
    }
}
