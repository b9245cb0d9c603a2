//! Free brace algebras over the rationals: normal forms, brace products,
//! one-relator ideals, two-generated subalgebras and rank-2 automorphisms.

pub mod algebra;
pub mod automorphisms;
pub mod budget;
pub mod cli;
pub mod error;
pub mod onerelator;
pub mod subalgebras;
pub mod text;
pub mod words;

pub use algebra::{Homomorphism, Polynomial, Rational};
pub use budget::Budget;
pub use error::{Error, Result};
pub use words::{GeneralWord, Letter, NormalWord};
