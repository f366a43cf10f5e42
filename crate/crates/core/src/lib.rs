//! Natural orders in cyclic algebras over ℤ, ℤ[i] and ℤ[ω], their finite
//! quotient rings, explicit isomorphisms to matrix rings, two-sided ideal
//! lattices, and coset space-time codes with minimum-determinant bounds.

#![allow(clippy::needless_range_loop)]

pub mod acceptance;
pub mod base;
pub mod coding;
pub mod error;
pub mod exec;
pub mod extension;
pub mod io;
pub mod linalg;
pub mod order;
pub mod residue;
pub mod structure;

pub use error::{AlgebraError, Result};
