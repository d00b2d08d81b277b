//! Even lattices given by Gram matrices: signature, discriminant forms via the
//! Smith normal form, exact short-vector enumeration, coset theta series and
//! named constructors.

pub mod constructors;
mod discriminant;
mod even;

pub use constructors::{a_n, d_n, direct_sum, e8, hyperbolic_plane, leech, odd_unimodular_even_part, rescale};
pub use discriminant::{DiscriminantForm, Element};
pub use even::{EvenLattice, LatticeVector};
