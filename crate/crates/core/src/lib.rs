//! Monomial ideals, their LCM-duals, Ferrers and strongly stable ideals,
//! special fiber relations, and the cellular resolution of the dual of a
//! strongly stable degree-2 ideal.
//!
//! All arithmetic is exact: exponents are integers and linear algebra runs
//! over the rationals.

pub mod cellres;
pub mod exactlinalg;
pub mod ferrers;
pub mod fiber;
pub mod monomial;
pub mod sampling;
pub mod text;

pub use monomial::{Monomial, MonomialError, MonomialIdeal};
