//! Hochschild cohomology of toupie algebras.
//!
//! A toupie algebra is a quotient of the path algebra of a quiver with one
//! source, one sink, and disjoint branches between them, by an admissible
//! ideal generated by monomial relations (each inside a single branch) and
//! linear combinations of whole branches. This crate computes, exactly over
//! the rationals:
//!
//! * the full cohomology ring data: dimensions and explicitly labeled bases
//!   in every degree, from the minimal resolution indexed by arrows,
//!   relations, and ambiguities;
//! * the Gerstenhaber bracket on degree 1 (a Lie algebra) and its action on
//!   every higher degree, including the closed-form structure-constant
//!   table;
//! * structural reports: abelianness, center, radical, the Levi-style
//!   decomposition with its `sl_a` part, and the decomposition of each
//!   cohomology space as a module over degree 1;
//! * an independent brute-force verification pass through the reduced bar
//!   complex, with the comparison morphisms between the two resolutions.
//!
//! The `toupie` binary exposes all of this behind `validate`, `report`,
//! `oracle`, and `bracket` subcommands.

pub mod algebra;
pub mod ambiguity;
pub mod bar;
pub mod cohomology;
pub mod gerstenhaber;
pub mod input;
pub mod lie;
pub mod matrix;
pub mod rat;
pub mod report;
pub mod samples;

pub use algebra::{BuildError, Element, Path, QuiverSpec, ToupieAlgebra};
pub use cohomology::{Cohomology, CohomologyClass, Label};
pub use rat::Rat;
