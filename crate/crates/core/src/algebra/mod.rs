//! Finite fields, polynomials over them, and multisequence prefixes.

mod field;
mod poly;
mod sequence;

pub use field::{Field, FieldElement, MAX_ORDER};
pub use poly::{Degree, Polynomial};
pub use sequence::{residual_coeff, SequencePrefix};
