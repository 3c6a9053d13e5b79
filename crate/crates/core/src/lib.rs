//! Exact computations for genus-1 Lefschetz fibrations over the disc.
//!
//! The crate works entirely in homology of the one-holed torus and in a
//! faithful (matrix, abelianization) model of its mapping class group:
//!
//! * [`lattice`]: intersection pairing, Dehn twist action, basis completion.
//! * [`mcg`]: group elements, twists, the boundary twist `delta`, discriminants.
//! * [`factorization`]: twist-block factorizations, Hurwitz moves, global
//!   conjugation and the registry of the fourteen extremal rational types.
//! * [`markov`]: the Markov-type equations, Vieta mutations and reduction to
//!   minimal solutions.
//! * [`classifier`]: reduction of any extremal rational factorization to its
//!   canonical form, with a replayable [`Certificate`].
//! * [`auroux`]: the Auroux invariant of two-fiber factorizations and the count
//!   of their equivalence classes.
//! * [`fuzz`]: seeded scrambling harness used by the CLI and the tests.
//!
//! No floating point is used anywhere; integers escalate from `i64` to
//! arbitrary precision on overflow (see [`Int`]).

pub mod auroux;
pub mod classifier;
pub mod error;
pub mod factorization;
pub mod fuzz;
pub mod int;
pub mod lattice;
pub mod markov;
pub mod mcg;

#[cfg(test)]
mod testing;

pub use classifier::{classify, verify_certificate, Certificate, OrientedConfiguration};
pub use error::{Error, Result, Stage};
pub use factorization::{canonical_registry, CanonicalRow, Direction, Factorization, TwistFactor};
pub use int::Int;
pub use lattice::HomologyClass;
pub use markov::{MarkovTriple, MarkovType};
pub use mcg::{Mat2, McgElement};
