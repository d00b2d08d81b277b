//! The Weil representation of a discriminant form, and vector-valued
//! modular forms given by explicit component expansions.

mod form;
mod rep;

pub use form::{gamma0_prime_split, reduce_to_smaller, VectorValuedForm};
pub use rep::{RelationReport, WeilRepresentation};
