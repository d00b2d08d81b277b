pub mod arith;
pub mod cli;
pub mod corpus;
pub mod enumerate;
pub mod error;
pub mod hyperbolic;
pub mod lattice;
pub mod linalg;
pub mod products;
pub mod qseries;
pub mod shimura;
pub mod weilrep;

pub use error::{Error, Result};
