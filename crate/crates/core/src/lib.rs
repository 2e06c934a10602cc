//! Clots, positive cones and normal submonoids.
//!
//! A submonoid `M` of a monoid `A` is a *clot*, a *positive cone* or a
//! *normal submonoid* when it is the zero-class `{u : 1 R u}` of some internal
//! reflexive relation, internal preorder or congruence `R` on `A`. This crate
//! decides the three notions for finite monoids along several independent
//! routes and cross-checks them:
//!
//! - elementwise conditions on `x, y ∈ A`, `u ∈ M` ([`syntactic`]),
//! - zero-classes of the syntactic relations of `M` ([`syntactic`]),
//! - zero-classes of the least internal relations containing `{1} × M`
//!   ([`generated`]), themselves checked against exhaustive enumeration.
//!
//! [`effective`] runs bounded witness searches on infinite monoids (free,
//! bicyclic, integers, endofunctions) and [`census`] sweeps every monoid of
//! small order.

pub mod catalog;
pub mod census;
pub mod classify;
pub mod effective;
pub mod generated;
pub mod io;
pub mod monoid;
pub mod relation;
pub mod syntactic;
pub mod witness;

pub use classify::{classify_submonoid, ClassificationReport, ClassifyError};
pub use monoid::{FiniteMonoid, MonoidError, SizeCapExceeded, SubsetMask};
pub use relation::{BinaryRelation, MonoidMorphism, RelationKind};
pub use witness::{Witness, WitnessKind};
