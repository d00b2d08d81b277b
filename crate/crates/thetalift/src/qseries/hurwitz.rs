use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::series::FracPowerSeries;
use crate::arith::{int, q, Q};
use crate::lattice::{constructors, EvenLattice};
use crate::weilrep::VectorValuedForm;

/// Hurwitz class numbers `H(0), …, H(nmax)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HurwitzTable {
    pub values: Vec<Q>,
}

impl HurwitzTable {
    pub fn get(&self, n: usize) -> Option<&Q> {
        self.values.get(n)
    }
}

/// Weighted count of classes of positive definite binary quadratic forms of
/// discriminant `−n`, counting reduced forms `(a, b, c)`. Classes of multiples
/// of `x² + y²` count 1/2, of `x² + xy + y²` count 1/3; `H(0) = −1/12`.
pub fn hurwitz_class_numbers(nmax: usize) -> HurwitzTable {
    let mut values = vec![q(-1, 12)];
    for n in 1..=nmax as i64 {
        let mut h = Q::zero();
        if n % 4 == 0 || n % 4 == 3 {
            let mut a = 1i64;
            while 3 * a * a <= n {
                for b in -a..=a {
                    let num = b * b + n;
                    if num % (4 * a) != 0 {
                        continue;
                    }
                    let c = num / (4 * a);
                    if c < a {
                        continue;
                    }
                    if (b.abs() == a || a == c) && b < 0 {
                        continue;
                    }
                    h += if a == b && b == c {
                        q(1, 3)
                    } else if a == c && b == 0 {
                        q(1, 2)
                    } else {
                        int(1)
                    };
                }
                a += 1;
            }
        }
        values.push(h);
    }
    HurwitzTable { values }
}

/// `G = Σ_{n≥0} H(n) qⁿ`, truncated at the integer `prec`.
pub fn zagier_g(prec: usize) -> FracPowerSeries {
    let t = hurwitz_class_numbers(prec.saturating_sub(1));
    FracPowerSeries::from_dense(1, 0, t.values, Some(Q::from_integer(BigInt::from(prec))))
}

/// The two components of G₁ on the discriminant form of `A₁(−1)`:
/// `e₀ Σ H(4n) qⁿ + e₁ Σ H(4n−1) q^{n−1/4}`, both truncated at the integer
/// `prec`.
pub fn zagier_g1(prec: usize) -> VectorValuedForm {
    let table = hurwitz_class_numbers(4 * prec);
    let e0: Vec<(Q, Q)> = (0..prec).map(|n| (int(n as i64), table.values[4 * n].clone())).collect();
    let e1: Vec<(Q, Q)> = (1..=prec)
        .map(|n| (q(4 * n as i64 - 1, 4), table.values[4 * n - 1].clone()))
        .collect();
    let trunc = Some(int(prec as i64));
    let lattice: EvenLattice = constructors::rescale(&constructors::a_n(1), -1);
    let disc = lattice.discriminant_form();
    let mut comps = BTreeMap::new();
    comps.insert(disc.zero(), FracPowerSeries::from_terms(e0, trunc.clone()));
    comps.insert(disc.element_at(1), FracPowerSeries::from_terms(e1, trunc));
    VectorValuedForm::new(lattice, (q(3, 2), int(0)), (0, 0), comps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_class_numbers() {
        let t = hurwitz_class_numbers(24);
        assert_eq!(t.values[3], q(1, 3));
        assert_eq!(t.values[4], q(1, 2));
        assert_eq!(t.values[7], int(1));
        assert_eq!(t.values[8], int(1));
        assert_eq!(t.values[12], q(4, 3));
        assert_eq!(t.values[15], int(2));
        assert_eq!(t.values[23], int(3));
        assert!(t.values[1].is_zero() && t.values[2].is_zero() && t.values[5].is_zero());
    }
}
