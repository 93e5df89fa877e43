//! Finitely presented groups of twist-spun knots.
//!
//! Builds presentations for the complements of (iterated) twist spins of a
//! classical knot and for the orbifold groups of its cyclic branched covers,
//! computes abelian invariants through Smith normal form, counts
//! homomorphisms into small finite groups, and turns the known
//! triviality results into a conservative decision procedure.
//!
//! ```
//! use twistspin_core::{knotio, spin, abelian::Abelianization};
//!
//! let trefoil = knotio::torus_presentation(2, 3).unwrap();
//! let orbifold = spin::orbifold_presentation(&trefoil, 2).unwrap();
//! assert_eq!(Abelianization::of(&orbifold).invariants().to_string(), "Z/2");
//! ```

pub mod abelian;
pub mod decide;
mod error;
pub mod finquot;
pub mod fpgroup;
pub mod knotio;
pub mod par;
pub mod spin;
pub mod verify;

pub use error::{Error, Result};
pub use fpgroup::{Presentation, Word};
pub use par::Execution;
