//! Exact-arithmetic toolkit for finite pseudo effect algebras.
//!
//! A pseudo effect algebra is a partial algebra `(E; +, 0, 1)` whose addition
//! is conditionally associative and need not be commutative; effect algebras,
//! orthomodular posets, Boolean algebras and MV-algebras are all special
//! cases. This crate provides:
//!
//! - validated finite tables for the partial addition, with the derived order,
//!   differences and complements ([`pea`]);
//! - deciders for the Riesz interpolation and decomposition properties, both
//!   for finite tables and for windowed po-group cones ([`riesz`]);
//! - concrete partially ordered groups (free Abelian with a choice of cone,
//!   lexicographic extensions, a semidirect product of `Z` with `Z^2`) with
//!   strong units and interval algebras `[0, u]` ([`pogroup`]);
//! - pseudo MV-algebras as total algebras, with conversion to and from
//!   tables satisfying the strong Riesz decomposition property ([`pmv`]);
//! - exact rational state-space polytopes: vertex enumeration by the double
//!   description method, simplex classification, barycentric representing
//!   measures and Jensen certificates ([`statespace`]);
//! - the lattice of relatively bounded homomorphisms of `Z^n` into the reals,
//!   with sups and infs computed over cone decompositions ([`homlattice`]).
//!
//! All polytope arithmetic is arbitrary-precision rational; no floating point
//! enters any kernel. Rationals serialize as exact `p/q` strings.

pub mod corpus;
pub mod fileio;
pub mod homlattice;
pub mod linalg;
pub mod pea;
pub mod pmv;
pub mod pogroup;
pub mod ratio;
pub mod report;
pub mod riesz;
pub mod statespace;

pub use pea::{AxiomReport, ElementId, FiniteTable, OrderRelation};
pub use statespace::{StatePolytope, StateVector};

/// Crate version, embedded in analysis reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
