//! Truncated q-expansions with rational exponents and the classical forms
//! built from them: η, Eisenstein series, Δ, j, Bernoulli data, Hurwitz class
//! numbers and the two-component form G₁.

mod bernoulli;
mod forms;
mod hurwitz;
mod series;

pub use bernoulli::{bernoulli_number, bernoulli_poly, bernoulli_poly_coeffs, periodic_bernoulli};
pub use forms::{delta, eisenstein, eta, j_invariant};
pub use hurwitz::{hurwitz_class_numbers, zagier_g, zagier_g1, HurwitzTable};
pub use series::{parse_json_rational, FracPowerSeries};
