//! Parasimplices and a desk-scale model of the bivariant S•-construction.
//!
//! The crate realizes the 2-category of parasimplices by exact integer
//! combinatorics ([`paramap`], [`homposet`]) and models a stable derivator by
//! strictly commutative poset-indexed diagrams of chain complexes over a
//! prime field ([`chain`], [`dgmcalc`]). On top of that sit the derivators
//! `D_{n,k}` with their symmetries and structure morphisms ([`snk`]), the
//! duality equivalences and Toda brackets ([`duality`]), and a registry of
//! named verification suites ([`verify`]).

pub mod chain;
pub mod dgmcalc;
pub mod duality;
pub mod error;
pub mod homposet;
pub mod paramap;
pub mod snk;
pub mod verify;

pub use error::{Error, Result};
