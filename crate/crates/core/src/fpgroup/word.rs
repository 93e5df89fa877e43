//! Reduced words in a free group.
//!
//! A [`Word`] is a list of syllables `g^e` with `e != 0` and no two adjacent
//! syllables on the same generator. Exponents are arbitrary precision so that
//! iterated meridian powers never overflow.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A single power `g^e` of a generator, `e != 0` once inside a [`Word`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub generator: usize,
    pub exponent: BigInt,
}

impl Syllable {
    pub fn new(generator: usize, exponent: impl Into<BigInt>) -> Self {
        Syllable {
            generator,
            exponent: exponent.into(),
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(generator: usize) -> Self {
        Word::power(generator, 1)
    }

    pub fn power(generator: usize, exponent: impl Into<BigInt>) -> Self {
        Word::from_syllables([Syllable::new(generator, exponent)])
    }

    /// Builds a word from an arbitrary syllable list, merging neighbours and
    /// dropping zero exponents. No range check is performed.
    pub fn from_syllables<I>(raw: I) -> Self
    where
        I: IntoIterator<Item = Syllable>,
    {
        let mut out: Vec<Syllable> = Vec::new();
        for syl in raw {
            if syl.exponent.is_zero() {
                continue;
            }
            match out.last_mut() {
                Some(top) if top.generator == syl.generator => {
                    top.exponent += syl.exponent;
                    if top.exponent.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push(syl),
            }
        }
        Word { syllables: out }
    }

    /// Convenience constructor from `(generator, exponent)` pairs.
    pub fn from_pairs<I, E>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, E)>,
        E: Into<BigInt>,
    {
        Word::from_syllables(pairs.into_iter().map(|(g, e)| Syllable::new(g, e)))
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Number of syllables.
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn check_range(&self, num_generators: usize) -> Result<()> {
        match self
            .syllables
            .iter()
            .find(|s| s.generator >= num_generators)
        {
            Some(s) => Err(Error::GeneratorOutOfRange {
                index: s.generator,
                len: num_generators,
            }),
            None => Ok(()),
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    generator: s.generator,
                    exponent: -&s.exponent,
                })
                .collect(),
        }
    }

    pub fn multiply(&self, other: &Word) -> Word {
        Word::from_syllables(self.syllables.iter().chain(&other.syllables).cloned())
    }

    pub fn pow(&self, n: &BigInt) -> Word {
        if n.is_zero() || self.is_identity() {
            return Word::identity();
        }
        if let [single] = self.syllables.as_slice() {
            return Word::power(single.generator, &single.exponent * n);
        }
        let base = if n.is_negative() {
            self.inverse()
        } else {
            self.clone()
        };
        let count = n.magnitude();
        let mut out = Word::identity();
        let mut i = num_bigint::BigUint::zero();
        while &i < count {
            out = out.multiply(&base);
            i += 1u32;
        }
        out
    }

    /// Conjugates away inverse ends until the first and last syllables are no
    /// longer inverse to each other (`a·w·a⁻¹ → w`, `a²·w·a⁻¹ → a·w`).
    /// Same-sign ends such as `b·a·b` are left alone.
    pub fn cyclic_reduce(&self) -> Word {
        let mut syl = self.syllables.clone();
        while syl.len() >= 2 {
            let n = syl.len();
            let (first, last) = (&syl[0], &syl[n - 1]);
            if first.generator != last.generator
                || first.exponent.is_negative() == last.exponent.is_negative()
            {
                break;
            }
            let sum = &first.exponent + &last.exponent;
            if sum.is_zero() {
                syl.pop();
                syl.remove(0);
            } else if sum.is_negative() == first.exponent.is_negative() {
                syl.pop();
                syl[0].exponent = sum;
                break;
            } else {
                syl.remove(0);
                syl[n - 2].exponent = sum;
                break;
            }
        }
        Word { syllables: syl }
    }

    /// Like [`Word::cyclic_reduce`], but also merges same-sign ends, so the
    /// result has first and last syllables on different generators.
    fn cyclic_normal_form(&self) -> Word {
        let mut w = self.cyclic_reduce();
        if w.syllables.len() >= 2 {
            let n = w.syllables.len();
            if w.syllables[0].generator == w.syllables[n - 1].generator {
                let last = w.syllables.pop().expect("len >= 2");
                w.syllables[0].exponent += last.exponent;
            }
        }
        w
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.syllables.first(), self.syllables.last()) {
            (Some(a), Some(b)) if self.syllables.len() >= 2 => {
                a.generator != b.generator || a.exponent.is_negative() == b.exponent.is_negative()
            }
            _ => true,
        }
    }

    pub fn exponent_sum(&self, generator: usize) -> BigInt {
        self.syllables
            .iter()
            .filter(|s| s.generator == generator)
            .map(|s| s.exponent.clone())
            .sum()
    }

    /// Number of syllables on `generator`.
    pub fn occurrences(&self, generator: usize) -> usize {
        self.syllables
            .iter()
            .filter(|s| s.generator == generator)
            .count()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.syllables.iter().map(|s| s.generator).max()
    }

    pub fn contains(&self, generator: usize) -> bool {
        self.syllables.iter().any(|s| s.generator == generator)
    }

    /// Returns `Some(g)` when the word is exactly the generator `g`.
    pub fn as_generator(&self) -> Option<usize> {
        match self.syllables.as_slice() {
            [s] if s.exponent.is_one() => Some(s.generator),
            _ => None,
        }
    }

    /// Applies the endomorphism sending generator `i` to `images[i]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::identity();
        for s in &self.syllables {
            out = out.multiply(&images[s.generator].pow(&s.exponent));
        }
        out
    }

    /// Renames generators through `f`, then re-reduces.
    pub fn map_generators(&self, f: impl Fn(usize) -> usize) -> Word {
        Word::from_syllables(self.syllables.iter().map(|s| Syllable {
            generator: f(s.generator),
            exponent: s.exponent.clone(),
        }))
    }

    /// Rotates the syllable list so that index `start` comes first.
    pub(crate) fn rotated(&self, start: usize) -> Word {
        let n = self.syllables.len();
        let mut syl = Vec::with_capacity(n);
        syl.extend_from_slice(&self.syllables[start..]);
        syl.extend_from_slice(&self.syllables[..start]);
        Word::from_syllables(syl)
    }

    /// Canonical representative of the class of `w` under cyclic rotation and
    /// inversion. Two relators with equal keys define the same normal closure.
    pub fn cyclic_class_key(&self) -> Vec<Syllable> {
        let w = self.cyclic_normal_form();
        let inv = w.inverse();
        let n = w.len();
        if n == 0 {
            return Vec::new();
        }
        let mut best: Option<Vec<Syllable>> = None;
        for candidate in [&w, &inv] {
            for start in 0..n {
                let r = candidate.rotated(start).syllables;
                if best.as_ref().is_none_or(|b| r < *b) {
                    best = Some(r);
                }
            }
        }
        best.unwrap_or_default()
    }

    /// Formats the word using the given generator names.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.multiply(rhs)
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        self.multiply(&rhs)
    }
}

/// Range-checked free reduction of a raw syllable list.
pub fn free_reduce(raw: &[Syllable], num_generators: usize) -> Result<Word> {
    if let Some(s) = raw.iter().find(|s| s.generator >= num_generators) {
        return Err(Error::GeneratorOutOfRange {
            index: s.generator,
            len: num_generators,
        });
    }
    Ok(Word::from_syllables(raw.iter().cloned()))
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    /// Syllables separated by single spaces: `a`, `b^-1`, `h1^3`. The identity
    /// prints as the empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.word.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let name = self
                .names
                .get(s.generator)
                .map(String::as_str)
                .unwrap_or("?");
            if s.exponent.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{}", s.exponent)?;
            }
        }
        Ok(())
    }
}
