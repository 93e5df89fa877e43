//! Knot inputs: braid words and their Wirtinger presentations, torus knots,
//! explicit presentation files, and the declared knot class.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::fpgroup::{Presentation, Word};

/// A braid word on `strands` strands. Letter `i > 0` is the Artin generator
/// `σ_i`, letter `-i` its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i64>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i64>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidBraid(
                "a braid needs at least one strand".into(),
            ));
        }
        for &l in &letters {
            if l == 0 {
                return Err(Error::InvalidBraid("Artin index must be nonzero".into()));
            }
            if l.unsigned_abs() as usize >= strands {
                return Err(Error::InvalidBraid(format!(
                    "letter {l} out of range for {strands} strands"
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    /// Underlying permutation of strand positions.
    pub fn permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            perm.swap(i, i + 1);
        }
        perm
    }

    /// Number of components of the closure.
    pub fn components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
            }
        }
        cycles
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.letters.iter().map(i64::to_string).collect();
        f.write_str(&s.join(" "))
    }
}

/// Parses whitespace-separated nonzero integers. The strand count defaults to
/// `1 + max |letter|`.
pub fn parse_braid(text: &str, strands: Option<usize>) -> Result<BraidWord> {
    let letters = text
        .split_whitespace()
        .map(|tok| {
            tok.parse::<i64>()
                .map_err(|_| Error::InvalidBraid(format!("`{tok}` is not an integer")))
        })
        .collect::<Result<Vec<_>>>()?;
    let needed = 1 + letters
        .iter()
        .map(|l| l.unsigned_abs() as usize)
        .max()
        .unwrap_or(0);
    BraidWord::new(strands.unwrap_or(needed), letters)
}

/// Generator names for a Wirtinger presentation on `n` strands.
fn strand_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// Wirtinger presentation of the closure of a knotted braid.
///
/// Generators are the top strands (`a, b, c, …`). The braid acts on the free
/// group by `σ_i: x_i ↦ x_i x_{i+1} x_i⁻¹, x_{i+1} ↦ x_i`; the relators are
/// `x_i · β(x_i)⁻¹` with the last one dropped as a consequence of the others.
/// The meridian is the first generator.
pub fn braid_closure_presentation(b: &BraidWord) -> Result<Presentation> {
    let n = b.strands;
    let components = b.components();
    if components != 1 {
        return Err(Error::NotAKnot(components));
    }
    let mut images: Vec<Word> = (0..n).map(Word::generator).collect();
    for &l in &b.letters {
        let i = l.unsigned_abs() as usize - 1;
        let xi = Word::generator(i);
        let xj = Word::generator(i + 1);
        let mut letter: Vec<Word> = (0..n).map(Word::generator).collect();
        if l > 0 {
            letter[i] = &(&xi * &xj) * &xi.inverse();
            letter[i + 1] = xi;
        } else {
            letter[i] = xj.clone();
            letter[i + 1] = &(&xj.inverse() * &xi) * &xj;
        }
        images = images.iter().map(|w| w.substitute(&letter)).collect();
    }
    let relators = (0..n.saturating_sub(1))
        .map(|i| &Word::generator(i) * &images[i].inverse())
        .collect();
    Presentation::new(strand_names(n), relators, Some(Word::generator(0)))
}

/// `(r, s)` with `p·r + q·s = 1` and `0 ≤ s < p`.
pub fn torus_meridian_exponents(p: i64, q: i64) -> Result<(i64, i64)> {
    if p < 2 || q < 2 || p.gcd(&q) != 1 {
        return Err(Error::InvalidTorusParameters { p, q });
    }
    let ext = q.extended_gcd(&p);
    let s = ext.x.rem_euclid(p);
    let r = (1 - q * s) / p;
    debug_assert_eq!(p * r + q * s, 1);
    Ok((r, s))
}

/// `⟨x, y | x^p y^-q⟩` with meridian `x^s y^r`, `pr + qs = 1`, `0 ≤ s < p`.
pub fn torus_presentation(p: i64, q: i64) -> Result<Presentation> {
    let (r, s) = torus_meridian_exponents(p, q)?;
    let relator = Word::from_pairs([(0, p), (1, -q)]);
    let meridian = Word::from_pairs([(0, s), (1, r)]);
    Presentation::new(vec!["x".into(), "y".into()], vec![relator], Some(meridian))
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    Presentation::parse(text)
}

/// User-declared classification of the input knot. Never computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KnotClass {
    Trivial,
    Torus { p: i64, q: i64 },
    Hyperbolic,
    PrimeSatellite,
    Unknown,
}

impl KnotClass {
    pub fn torus(p: i64, q: i64) -> Result<Self> {
        torus_meridian_exponents(p, q)?;
        Ok(KnotClass::Torus { p, q })
    }

    /// Whether the class asserts a nontrivial knot.
    pub fn is_nontrivial(&self) -> bool {
        !matches!(self, KnotClass::Trivial | KnotClass::Unknown)
    }
}

/// `trivial`, `torus:p,q`, `hyperbolic`, `prime-satellite`, `unknown`.
impl FromStr for KnotClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "trivial" => Ok(KnotClass::Trivial),
            "hyperbolic" => Ok(KnotClass::Hyperbolic),
            "prime-satellite" | "prime_satellite" => Ok(KnotClass::PrimeSatellite),
            "unknown" => Ok(KnotClass::Unknown),
            _ => {
                let bad = || Error::InvalidKnotClass(s.to_string());
                let params = s.strip_prefix("torus:").ok_or_else(bad)?;
                let (p, q) = params.split_once(',').ok_or_else(bad)?;
                let p = p.trim().parse().map_err(|_| bad())?;
                let q = q.trim().parse().map_err(|_| bad())?;
                KnotClass::torus(p, q)
            }
        }
    }
}

impl fmt::Display for KnotClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotClass::Trivial => f.write_str("trivial"),
            KnotClass::Torus { p, q } => write!(f, "torus:{p},{q}"),
            KnotClass::Hyperbolic => f.write_str("hyperbolic"),
            KnotClass::PrimeSatellite => f.write_str("prime-satellite"),
            KnotClass::Unknown => f.write_str("unknown"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnotSource {
    Braid(BraidWord),
    Torus { p: i64, q: i64 },
    Explicit(Presentation),
}

/// A knot as it enters the system, with its declared class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotInput {
    source: KnotSource,
    class: KnotClass,
}

impl KnotInput {
    pub fn new(source: KnotSource, class: KnotClass) -> Result<Self> {
        match &source {
            KnotSource::Explicit(p) => {
                p.require_meridian()?;
            }
            KnotSource::Torus { p, q } => {
                let declared = KnotClass::torus(*p, *q)?;
                if class != declared && class != KnotClass::Unknown {
                    return Err(Error::InvalidKnotClass(format!(
                        "{class} conflicts with torus source ({p}, {q})"
                    )));
                }
                return Ok(KnotInput {
                    source,
                    class: declared,
                });
            }
            KnotSource::Braid(_) => {}
        }
        Ok(KnotInput { source, class })
    }

    pub fn source(&self) -> &KnotSource {
        &self.source
    }

    pub fn class(&self) -> KnotClass {
        self.class
    }

    /// Knot group presentation with meridian.
    pub fn presentation(&self) -> Result<Presentation> {
        match &self.source {
            KnotSource::Braid(b) => braid_closure_presentation(b),
            KnotSource::Torus { p, q } => torus_presentation(*p, *q),
            KnotSource::Explicit(p) => Ok(p.clone()),
        }
    }
}

/// `σ₁³`
pub fn trefoil_braid() -> BraidWord {
    BraidWord::new(2, vec![1, 1, 1]).expect("valid braid")
}

/// `σ₁ σ₂⁻¹ σ₁ σ₂⁻¹`
pub fn figure_eight_braid() -> BraidWord {
    BraidWord::new(3, vec![1, -2, 1, -2]).expect("valid braid")
}
