//! Exact arithmetic: arbitrary precision rationals and elements of cyclotomic
//! fields in canonical reduced form.

mod cyclotomic;
mod gauss;
mod rational;

pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic};
pub use gauss::{gauss_sum, milgram_holds, milgram_squared_holds};
pub use rational::{
    ceil_q, floor_q, frac, int, lcm_denominators, parse_rational, q, rational_to_string, Q,
};
