//! Computations on Lorentzian lattices of signature `(1, b⁻)`: Weyl vectors
//! at a cusp, wall crossing and the piecewise linear function they define,
//! vector systems, constant-term congruences and reflectivity certificates.

mod frame;
mod identities;
mod reflective;
mod walls;
mod weyl;

pub use frame::CuspFrame;
pub use identities::{
    congruence_check, vector_system_check, weyl_inner_product, CongruenceReport, VectorSystemReport,
};
pub use reflective::{reflective_certificate, ReflectiveClass, ReflectiveReport};
pub use walls::{phi_eval_hyperbolic, separating_walls, wall_crossing_delta};
pub use weyl::{phi_negdef_constant, weyl_vector, Convention, WeylVector};
