//! Greedy Tietze simplification.
//!
//! Each pass removes one generator that occurs exactly once, with exponent
//! ±1, in some relator: that relator defines the generator in terms of the
//! others, so it is substituted everywhere (meridian included) and both the
//! generator and its defining relator are dropped. Relators are kept
//! cyclically reduced and deduplicated throughout.

use num_traits::One;

use super::presentation::Presentation;
use super::word::Word;

/// Pass budget used when the caller has no preference.
pub const DEFAULT_TIETZE_BUDGET: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TietzeOutcome {
    pub presentation: Presentation,
    /// Number of eliminations performed.
    pub passes: usize,
    /// `false` when the budget ran out while a move was still available.
    pub converged: bool,
    /// Names of eliminated generators, in elimination order.
    pub eliminated: Vec<String>,
}

/// Highest-index generator first; within a generator, relators in list order.
fn find_elimination(p: &Presentation) -> Option<(usize, usize, usize)> {
    (0..p.num_generators()).rev().find_map(|g| {
        p.relators().iter().enumerate().find_map(|(ri, r)| {
            if r.occurrences(g) != 1 {
                return None;
            }
            let pos = r.syllables().iter().position(|s| s.generator == g)?;
            r.syllables()[pos]
                .exponent
                .magnitude()
                .is_one()
                .then_some((g, ri, pos))
        })
    })
}

fn eliminate(p: &Presentation, g: usize, ri: usize, pos: usize) -> Presentation {
    let r = &p.relators()[ri];
    let rotated = r.rotated(pos);
    let (head, tail) = rotated.syllables().split_first().expect("nonempty relator");
    let rest = Word::from_syllables(tail.iter().cloned());
    // g^e · rest = 1
    let value = if head.exponent.is_one() {
        rest.inverse()
    } else {
        rest
    };

    let images: Vec<Word> = (0..p.num_generators())
        .map(|i| {
            if i == g {
                value.clone()
            } else {
                Word::generator(i)
            }
        })
        .collect();
    let relators: Vec<Word> = p
        .relators()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != ri)
        .map(|(_, w)| w.substitute(&images))
        .collect();
    let meridian = p.meridian().map(|m| m.substitute(&images));
    Presentation::from_parts_unchecked(p.generators().to_vec(), relators, meridian)
        .remove_unused_generator(g)
}

/// Simplifies `p` for at most `budget` eliminations. Deterministic.
pub fn tietze_simplify(p: &Presentation, budget: usize) -> TietzeOutcome {
    let mut current = Presentation::from_parts_unchecked(
        p.generators().to_vec(),
        p.relators().to_vec(),
        p.meridian().cloned(),
    );
    let mut eliminated = Vec::new();
    let mut passes = 0;
    while passes < budget {
        let Some((g, ri, pos)) = find_elimination(&current) else {
            return TietzeOutcome {
                presentation: current,
                passes,
                converged: true,
                eliminated,
            };
        };
        eliminated.push(current.generators()[g].clone());
        current = eliminate(&current, g, ri, pos);
        passes += 1;
    }
    let converged = find_elimination(&current).is_none();
    TietzeOutcome {
        presentation: current,
        passes,
        converged,
        eliminated,
    }
}
