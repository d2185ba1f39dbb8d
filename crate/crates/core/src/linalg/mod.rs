//! Exact linear algebra over Q, F_p and Z.

pub mod complex;
pub mod matrix;
pub mod ring;
pub mod smith;

pub use complex::{prime_factors, DegreeHomology, FreeComplex, HomologySummary};
pub use matrix::Matrix;
pub use ring::{is_prime, BaseRing, RingElem};
pub use smith::{smith_form, SmithForm};
