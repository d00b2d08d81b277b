use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::bernoulli::bernoulli_number;
use super::series::FracPowerSeries;
use crate::arith::{int, q, Q};
use crate::error::{Error, Result};

/// `η(scale·τ) = q^{scale/24} Π_{n>0} (1 − q^{scale·n})`, truncated at `prec`.
///
/// The product is expanded with Euler's pentagonal number theorem.
pub fn eta(scale: u64, prec: &Q) -> FracPowerSeries {
    assert!(scale > 0, "eta scale must be positive");
    let s = Q::from_integer(BigInt::from(scale));
    let lead = &s * q(1, 24);
    let mut terms = Vec::new();
    // Exponent of the k-th pentagonal term: scale·k(3k−1)/2 for k ∈ ℤ.
    let mut k: i64 = 0;
    loop {
        let mut any = false;
        for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
            let pent = kk * (3 * kk - 1) / 2;
            let e = &lead + &s * int(pent);
            if &e < prec {
                any = true;
                terms.push((e, if kk.rem_euclid(2) == 0 { int(1) } else { int(-1) }));
            }
        }
        if !any && k > 0 {
            break;
        }
        k += 1;
    }
    FracPowerSeries::from_terms(terms, Some(prec.clone()))
}

fn sigma(n: u64, k: u32) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

/// Normalized Eisenstein series `E_k = 1 − (2k/B_k) Σ σ_{k−1}(n) qⁿ` for even
/// `k ≥ 2`, truncated at `prec`. `E_2` is the quasimodular one.
pub fn eisenstein(k: u64, prec: &Q) -> Result<FracPowerSeries> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::Invalid(format!("Eisenstein series needs even k ≥ 2, got {k}")));
    }
    let factor = -Q::from_integer(BigInt::from(2 * k)) / bernoulli_number(k);
    let top = prec.ceil().to_integer().to_i64().unwrap_or(0).max(0);
    let mut vals = Vec::new();
    for n in 0..top {
        vals.push(if n == 0 {
            Q::one()
        } else {
            &factor * Q::from_integer(sigma(n as u64, (k - 1) as u32))
        });
    }
    Ok(FracPowerSeries::from_dense(1, 0, vals, Some(prec.clone())))
}

/// `Δ = q Π (1 − qⁿ)²⁴`, truncated at `prec`.
pub fn delta(prec: &Q) -> FracPowerSeries {
    let p = eta(1, &(prec - Q::one() + q(1, 24)))
        .shift(&q(-1, 24))
        .pow(24)
        .expect("positive power");
    p.shift(&Q::one()).truncate(prec)
}

/// `j = E₄³/Δ = q⁻¹ + 744 + 196884q + …`, truncated at `prec`.
pub fn j_invariant(prec: &Q) -> FracPowerSeries {
    let e4 = eisenstein(4, &(prec + Q::one())).expect("weight 4");
    let d = delta(&(prec + int(2)));
    e4.pow(3)
        .expect("positive power")
        .mul(&d.invert().expect("Δ is a unit"))
        .truncate(prec)
}
