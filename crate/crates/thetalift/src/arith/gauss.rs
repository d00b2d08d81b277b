use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::cyclotomic::Cyclotomic;
use super::rational::Q;
use crate::lattice::DiscriminantForm;

/// Multiplicities of `q(γ)·n mod n` over `γ ∈ D`, where `n` is the level.
fn value_counts(d: &DiscriminantForm) -> (u64, Vec<i128>) {
    let qs: Vec<Q> = d.elements().map(|e| d.q(&e)).collect();
    let n = qs
        .iter()
        .fold(1u64, |acc, x| acc.lcm(&x.denom().to_u64().expect("level fits u64")));
    let mut counts = vec![0i128; n as usize];
    for x in &qs {
        let k = (x * Q::from_integer(BigInt::from(n))).to_integer().to_usize().unwrap();
        counts[k] += 1;
    }
    (n, counts)
}

/// `Σ_{γ ∈ D} e(q(γ))`.
pub fn gauss_sum(d: &DiscriminantForm) -> Cyclotomic {
    let (n, counts) = value_counts(d);
    Cyclotomic::from_integer_poly(n, &counts)
}

/// Squared form of Milgram's formula: `gauss_sum² = |D|·e((b⁺ − b⁻)/4)`.
///
/// The square is formed as a cyclic convolution of integer multiplicities
/// in `ℤ[x]/(xᵐ − 1)`, `m = lcm(level, 4)`, and reduced once at the end.
pub fn milgram_squared_holds(d: &DiscriminantForm) -> bool {
    let (n, counts) = value_counts(d);
    let m = n.lcm(&4) as usize;
    let step = m / n as usize;
    let support: Vec<(usize, i128)> = counts
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(k, c)| (k * step, *c))
        .collect();
    let mut square = vec![0i128; m];
    for &(i, a) in &support {
        for &(j, b) in &support {
            square[(i + j) % m] += a * b;
        }
    }
    let k = (d.signature_mod8().rem_euclid(4) as usize) * (m / 4);
    square[k] -= d.order() as i128;
    Cyclotomic::from_integer_poly(m as u64, &square).is_zero()
}

/// Squared identity checked exactly, then the sign of the unsquared identity
/// `gauss_sum = √|D|·e((b⁺ − b⁻)/8)` confirmed numerically.
pub fn milgram_holds(d: &DiscriminantForm) -> bool {
    if !milgram_squared_holds(d) {
        return false;
    }
    let (re, im) = gauss_sum(d).to_complex();
    let r = (d.order() as f64).sqrt();
    let t = 2.0 * std::f64::consts::PI * d.signature_mod8() as f64 / 8.0;
    let (er, ei) = (r * t.cos(), r * t.sin());
    ((re - er).powi(2) + (im - ei).powi(2)).sqrt() < 1e-9 * r.max(1.0)
}
