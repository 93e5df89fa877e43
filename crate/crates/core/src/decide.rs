//! Conservative triviality verdicts for single, double and iterated twist
//! spins of a classical knot.
//!
//! Rules, in precedence order:
//!
//! | rule                        | fires when                                   | verdict    |
//! |-----------------------------|----------------------------------------------|------------|
//! | `trivial-knot`              | the knot is declared trivial                 | Trivial    |
//! | `unit-twist`                | single spin with `k = 1`                     | Trivial    |
//! | `unit-twist-stage`          | iterated spin with some `m_i = 1`            | Trivial    |
//! | `coprime-double-spin`       | double spin with `gcd(m_1, m_2) = 1`         | Trivial    |
//! | `nontrivial-twist-spin`     | single spin, nontrivial knot, `k ≥ 2`        | NonTrivial |
//! | `central-quotient`          | double spin, `m = gcd ≥ 2`, orbifold center trivial | NonTrivial |
//! | `iterated-central-quotient` | iterated spin, `m = gcd ≥ 2`, orbifold center trivial | NonTrivial |
//!
//! The trivial rules require `gcd = 1` or a declared trivial knot; the
//! nontrivial ones require `gcd ≥ 2` and a nontrivial class, so no input can
//! reach both. Everything else is `Unknown`.

use std::fmt;

use crate::abelian::{AbelianInvariants, Abelianization};
use crate::error::{Error, Result};
use crate::fpgroup::{Presentation, Word};
use crate::knotio::KnotClass;
use crate::spin::{central_quotient, torus_center_witness, CenterWitnessReport, SpinSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Trivial,
    NonTrivial,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Trivial => "Trivial",
            Status::NonTrivial => "NonTrivial",
            Status::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CenterState {
    TrivialCenter,
    NonTrivialCenter,
    Unknown,
}

impl fmt::Display for CenterState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CenterState::TrivialCenter => "TrivialCenter",
            CenterState::NonTrivialCenter => "NonTrivialCenter",
            CenterState::Unknown => "Unknown",
        })
    }
}

/// What is known about the center of the `m`-fold orbifold group of a knot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterStatus {
    pub status: CenterState,
    pub source: String,
    pub witness: Option<CenterWitnessReport>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Abelianization of the central quotient; `Z/m` certifies that the
    /// quotient of the spun-knot group by its center is nontrivial.
    CentralQuotient {
        m: u64,
        abelianization: AbelianInvariants,
    },
    /// The torus-knot center report behind an `Unknown`.
    Center(CenterWitnessReport),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub rule: String,
    pub class: KnotClass,
    pub spins: Vec<u64>,
    /// `gcd` of the spins for double and iterated spins.
    pub m: Option<u64>,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn new(status: Status, rule: &str, class: KnotClass, spins: &[u64]) -> Self {
        Verdict {
            status,
            rule: rule.to_string(),
            class,
            spins: spins.to_vec(),
            m: None,
            witness: None,
        }
    }

    fn with_m(mut self, m: u64) -> Self {
        self.m = Some(m);
        self
    }
}

pub fn center_status(class: KnotClass, m: u64) -> Result<CenterStatus> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "orbifold index {m} must be at least 2"
        )));
    }
    let status = |status, source: &str| CenterStatus {
        status,
        source: source.to_string(),
        witness: None,
    };
    Ok(match class {
        KnotClass::Hyperbolic if m >= 3 => status(CenterState::TrivialCenter, "hyperbolic, m >= 3"),
        KnotClass::Hyperbolic => status(CenterState::Unknown, "hyperbolic, m = 2"),
        KnotClass::PrimeSatellite => status(CenterState::TrivialCenter, "prime satellite, m >= 2"),
        KnotClass::Torus { p, q } => {
            let report = torus_center_witness(p, q, m)?;
            if report.formula_image != 0 {
                CenterStatus {
                    status: CenterState::NonTrivialCenter,
                    source: "torus knot, m does not divide pq".into(),
                    witness: Some(report),
                }
            } else {
                CenterStatus {
                    status: CenterState::Unknown,
                    source: "torus knot, m divides pq".into(),
                    witness: Some(report),
                }
            }
        }
        KnotClass::Trivial | KnotClass::Unknown => {
            status(CenterState::Unknown, "no rule for this class")
        }
    })
}

pub fn decide_single(class: KnotClass, k: u64) -> Verdict {
    let spins = [k];
    if class == KnotClass::Trivial {
        return Verdict::new(Status::Trivial, "trivial-knot", class, &spins);
    }
    if k == 1 {
        return Verdict::new(Status::Trivial, "unit-twist", class, &spins);
    }
    if class.is_nontrivial() && k >= 2 {
        return Verdict::new(Status::NonTrivial, "nontrivial-twist-spin", class, &spins);
    }
    let reason = if k == 0 {
        "zero-twist"
    } else {
        "unknown-class"
    };
    Verdict::new(Status::Unknown, reason, class, &spins)
}

/// Makes the meridian a bare generator, adding one if needed (`t = μ`).
fn with_generator_meridian(p: &Presentation) -> Result<Presentation> {
    let mu = p.require_meridian()?.clone();
    if mu.as_generator().is_some() {
        return Ok(p.clone());
    }
    let (q, t) = p.add_generator(p.fresh_name("t"))?;
    let tw = Word::generator(t);
    q.add_relators([&tw.inverse() * &mu])?
        .with_meridian(Some(tw))
}

fn central_quotient_witness(p: &Presentation, seq: &SpinSequence) -> Result<Witness> {
    let cq = central_quotient(&with_generator_meridian(p)?, seq)?;
    Ok(Witness::CentralQuotient {
        m: cq.m,
        abelianization: Abelianization::of(&cq.presentation).invariants().clone(),
    })
}

/// Applies the center rule for `m = gcd ≥ 2`.
fn center_rule(
    class: KnotClass,
    spins: &[u64],
    m: u64,
    rule: &str,
    knot: Option<&Presentation>,
) -> Result<Verdict> {
    let center = center_status(class, m)?;
    match center.status {
        CenterState::TrivialCenter if class.is_nontrivial() => {
            let mut v = Verdict::new(Status::NonTrivial, rule, class, spins).with_m(m);
            if let Some(p) = knot {
                let seq = SpinSequence::new(spins.to_vec())?;
                v.witness = Some(central_quotient_witness(p, &seq)?);
            }
            Ok(v)
        }
        CenterState::NonTrivialCenter => {
            let mut v = Verdict::new(Status::Unknown, "center-nontrivial", class, spins).with_m(m);
            v.witness = center.witness.map(Witness::Center);
            Ok(v)
        }
        _ => {
            let mut v = Verdict::new(Status::Unknown, "center-unknown", class, spins).with_m(m);
            v.witness = center.witness.map(Witness::Center);
            Ok(v)
        }
    }
}

/// Double twist spin `τ_{m2}(τ_{m1}(K))`. With a knot presentation, a
/// `NonTrivial` verdict carries the abelianization of the central quotient.
pub fn decide_double(
    class: KnotClass,
    m1: u64,
    m2: u64,
    knot: Option<&Presentation>,
) -> Result<Verdict> {
    if m1 < 1 || m2 < 1 {
        return Err(Error::InvalidSpinSequence(
            "double spins need m1, m2 >= 1".into(),
        ));
    }
    let spins = [m1, m2];
    if class == KnotClass::Trivial {
        return Ok(Verdict::new(Status::Trivial, "trivial-knot", class, &spins));
    }
    let m = SpinSequence::new(spins.to_vec())?.gcd();
    if m == 1 {
        return Ok(Verdict::new(Status::Trivial, "coprime-double-spin", class, &spins).with_m(1));
    }
    center_rule(class, &spins, m, "central-quotient", knot)
}

/// Spin sequences of length at least three.
pub fn decide_iterated(
    class: KnotClass,
    seq: &SpinSequence,
    knot: Option<&Presentation>,
) -> Result<Verdict> {
    let spins = seq.values();
    if spins.len() < 3 {
        return Err(Error::InvalidSpinSequence(
            "iterated spins need at least three entries".into(),
        ));
    }
    if spins.contains(&0) {
        return Err(Error::InvalidSpinSequence(
            "iterated spins need entries >= 1".into(),
        ));
    }
    if class == KnotClass::Trivial {
        return Ok(Verdict::new(Status::Trivial, "trivial-knot", class, spins));
    }
    if spins.contains(&1) {
        return Ok(
            Verdict::new(Status::Trivial, "unit-twist-stage", class, spins).with_m(seq.gcd()),
        );
    }
    let m = seq.gcd();
    if m == 1 {
        return Ok(Verdict::new(Status::Unknown, "coprime-iterated-open", class, spins).with_m(1));
    }
    center_rule(class, spins, m, "iterated-central-quotient", knot)
}

/// Dispatches on the sequence length: one entry is a single spin, two a
/// double spin, more an iterated spin.
pub fn decide(
    class: KnotClass,
    seq: &SpinSequence,
    knot: Option<&Presentation>,
) -> Result<Verdict> {
    match seq.values() {
        [k] => Ok(decide_single(class, *k)),
        [m1, m2] => decide_double(class, *m1, *m2, knot),
        _ => decide_iterated(class, seq, knot),
    }
}
