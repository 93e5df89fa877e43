//! Finitely presented groups: reduced words, presentations, Tietze moves.

mod presentation;
mod tietze;
mod word;

pub use presentation::Presentation;
pub use tietze::{tietze_simplify, TietzeOutcome, DEFAULT_TIETZE_BUDGET};
pub use word::{free_reduce, Syllable, Word, WordDisplay};
