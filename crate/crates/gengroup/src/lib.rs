//! Computational algebra for generalized groups.
//!
//! A *generalized group* (equivalently, a completely simple semigroup) is a
//! semigroup in which every element `x` has a unique local identity `e(x)`
//! with `e(x)·x = x·e(x) = x` and an inverse `y` with `x·y = y·x = e(x)`.
//! Groups are exactly the generalized groups with a single idempotent, and
//! many group-theoretic notions (components, homomorphisms, direct products)
//! carry over with local identities in place of the global one.
//!
//! The crate has three layers:
//!
//! * **Finite structures** — [`finite`] stores validated multiplication
//!   tables, [`rees`] builds generalized groups from a base group and a
//!   sandwich matrix, and [`hom`] checks and enumerates structure-preserving
//!   maps between them.
//! * **Infinite carrier** — [`seq`] implements finitely supported integer
//!   sequences under both coordinatewise addition and a period-three star
//!   operation that makes the carrier a generalized group which is not a
//!   group.
//! * **Classification and claims** — [`slender`] computes Smith normal forms
//!   and decides slenderness for finitely generated abelian groups;
//!   [`claims`] runs bounded, seeded checks of structural claims about
//!   homomorphisms out of the sequence carrier, reporting
//!   verified / falsified / skipped per claim.
//!
//! All checks here are exhaustive or bounded searches at desk scale: they
//! verify or falsify concrete finite instances, and the reports say exactly
//! what was checked.

#![forbid(unsafe_code)]

pub mod claims;
pub mod finite;
pub mod hom;
pub mod rees;
pub mod seq;
pub mod slender;

pub use claims::{ClaimReport, ClaimStatus};
pub use finite::{verify_axioms, AxiomReport, FiniteGenGroup, FiniteGroup, TableError};
pub use hom::HomTable;
pub use rees::ReesSpec;
pub use seq::FinSeq;
pub use slender::{smith_normal_form, FgAbelian, IntMatrix, SnfResult};
