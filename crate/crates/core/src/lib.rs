//! Exact computational workbench for alternating forms over commutative
//! rings: Pfaffians, the standard symplectic forms, representative-level
//! Witt-group arithmetic, Suslin matrices, the Vaserstein symbol for
//! unimodular rows of length 3, and brute-force orbit censuses over finite
//! rings that serve as verification oracles.
//!
//! Everything is exact: integers are arbitrary precision, polynomial and
//! quotient-ring elements are kept in canonical form, and no floating point
//! appears anywhere.

pub mod altform;
pub mod census;
pub mod error;
pub mod generators;
pub mod jsonio;
pub mod matrix;
pub mod ring;
pub mod vaserstein;
pub mod witt;

pub use altform::AlternatingMatrix;
pub use error::{Error, Result};
pub use matrix::ExactMatrix;
pub use ring::{MonomialOrder, RingElement, RingHandle, UnitStatus};
pub use vaserstein::UnimodularRow;
pub use witt::{GroupFlag, WittRep, WitnessWord};
