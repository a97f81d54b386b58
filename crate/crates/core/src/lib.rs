//! Exact computation of polynomial-identity invariants for finite-dimensional
//! algebras with a group grading and a graded involution.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod exactla;
pub mod freepoly;
pub mod group;
pub mod invariants;
pub mod symrep;

pub use error::{Error, Result};
