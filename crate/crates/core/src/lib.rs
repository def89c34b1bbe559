//! Degrees of satisfiability over finite Heyting algebras.
//!
//! This crate is `no_std` (it needs `alloc`). It covers:
//!
//! * finite Heyting algebras with precomputed operation tables ([`algebra`]),
//! * the standard families and an isomorphism-free enumeration built on
//!   downset lattices of finite posets ([`construct`], [`enumerate`]),
//! * terms, equations and first-order formulas, a parser for them, and a
//!   terminating proof search for intuitionistic propositional logic
//!   ([`term`], [`parse`], [`formula`], [`ipc`], [`rn`], [`classical`]),
//! * exact degree-of-satisfiability counting, gap scans and the one-variable
//!   classification ([`ds`], [`witness`]),
//! * central decompositions, maximal non-central elements and finite
//!   topologies ([`structure`], [`topology`]),
//! * black-box Heyting algebras and the one-sided Boolean recognition test
//!   ([`blackbox`]).
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod blackbox;
pub mod classical;
pub mod construct;
pub mod ds;
pub mod enumerate;
mod error;
pub mod formula;
pub mod ipc;
mod iso;
pub mod parse;
pub mod rn;
pub mod structure;
pub mod term;
pub mod topology;
pub mod witness;

pub use algebra::{ElementId, ElementSet, HeytingAlgebra, Loci, Poset};
pub use error::{Error, Result};
pub use num_bigint::BigUint;

/// Exact non-negative rational used for every degree of satisfiability.
pub type Rational = num_rational::Ratio<BigUint>;

/// Largest carrier the table-based representation accepts.
///
/// Three `size × size` tables of 16-bit ids are stored per algebra, so this
/// keeps a single algebra around 25 MB.
pub const MAX_ALGEBRA_SIZE: usize = 2048;
