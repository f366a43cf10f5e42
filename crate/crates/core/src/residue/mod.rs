//! Finite rings: finite fields, `O_K/mO_K`, the generalized cyclic algebras
//! `Λ/mΛ`, CRT splitting, and an exhaustive two-sided ideal search.

pub mod component;
pub mod crt;
pub mod field;
pub mod ideals;
pub mod poly;
pub mod quotient;
pub mod ring;

pub use component::FieldComponent;
pub use crt::CrtDecomposition;
pub use field::FiniteField;
pub use ideals::{all_two_sided_ideals, skew_poly_ideal_chain, ElementSet, IdealClosure, SkewIdeal};
pub use poly::FpPoly;
pub use quotient::{GcaElement, QuotientRing};
pub use ring::{KResidue, ResidueRing};
