//! Root systems of finite-type Cartan data, the monoid presented by the
//! rank-two straightening relations, and its realization through generic
//! extensions of representations of quivers with automorphism.
//!
//! Layers:
//! - [`roots`]: Cartan data, positive roots, the Euler form, Kostant
//!   partitions and directed enumerations.
//! - [`rewrite`]: defining relations, normal forms by straightening,
//!   parametrizations and congruence-class oracles.
//! - [`repcalc`]: quivers with automorphism, folding, representations,
//!   Hom/Ext dimensions and indecomposables.
//! - [`genext`]: generic extensions and the comparison with normal forms.
//! - [`ring`]: the monoid ring and its graded dimensions.
//! - [`json`]: serialized forms.

#![allow(clippy::needless_range_loop)]

pub mod genext;
pub mod json;
pub mod linalg;
pub mod repcalc;
pub mod rewrite;
pub mod ring;
pub mod roots;
pub mod scalar;

/// Exact rationals, the default scalar field.
pub type Q = num_rational::BigRational;

pub type Matrix = linalg::Matrix<Q>;
pub type Representation = repcalc::Representation<Q>;
pub type IndecTable = repcalc::IndecTable<Q>;
pub type Realization = genext::Realization<Q>;
pub type RingElem = ring::RingElem<Q>;

pub use genext::GammaMonoidElem;
pub use repcalc::Quiver;
pub use rewrite::{MonoidElem, RelationSet, Word};
pub use roots::{CartanDatum, DirectedPartition, MultFn, RootSystem};
pub use scalar::Field;
