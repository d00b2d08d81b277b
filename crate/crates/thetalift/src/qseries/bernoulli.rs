use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{frac, Q};

fn binomial(n: u64, k: u64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Bernoulli number `B_m` with `B_1 = -1/2`.
pub fn bernoulli_number(m: u64) -> Q {
    let mut b: Vec<Q> = Vec::with_capacity(m as usize + 1);
    b.push(Q::one());
    for n in 1..=m {
        // Σ_{k=0}^{n} C(n+1, k) B_k = 0
        let mut s = Q::zero();
        for (k, bk) in b.iter().enumerate() {
            s += Q::from_integer(binomial(n + 1, k as u64)) * bk;
        }
        b.push(-s / Q::from_integer(BigInt::from(n + 1)));
    }
    b.pop().unwrap()
}

/// Coefficients of the Bernoulli polynomial `B_m(x)`, constant term first.
pub fn bernoulli_poly_coeffs(m: u64) -> Vec<Q> {
    (0..=m)
        .map(|j| Q::from_integer(binomial(m, j)) * bernoulli_number(m - j))
        .collect()
}

/// `B_m(x)`.
pub fn bernoulli_poly(m: u64, x: &Q) -> Q {
    let c = bernoulli_poly_coeffs(m);
    c.iter().rev().fold(Q::zero(), |acc, a| acc * x + a)
}

/// The periodic function `𝔅_m(x) = B_m(x mod 1)`, with `𝔅_1` vanishing at
/// integers.
pub fn periodic_bernoulli(m: u64, x: &Q) -> Q {
    let r = frac(x);
    if m == 1 && r.is_zero() {
        return Q::zero();
    }
    bernoulli_poly(m, &r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, q};

    #[test]
    fn known_values() {
        assert_eq!(bernoulli_number(1), q(-1, 2));
        assert_eq!(bernoulli_number(2), q(1, 6));
        assert_eq!(bernoulli_number(4), q(-1, 30));
        assert_eq!(bernoulli_number(12), q(-691, 2730));
        assert_eq!(bernoulli_number(7), int(0));
        assert_eq!(bernoulli_poly_coeffs(2), vec![q(1, 6), int(-1), int(1)]);
        assert_eq!(periodic_bernoulli(1, &int(0)), int(0));
        assert_eq!(periodic_bernoulli(1, &q(1, 4)), q(-1, 4));
        assert_eq!(periodic_bernoulli(2, &q(5, 4)), q(-1, 48));
    }
}
