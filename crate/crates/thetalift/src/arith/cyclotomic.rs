use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{frac, Q};

static CYCLOTOMIC_CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
///
/// Computed once per order by dividing `x^n - 1` by the cyclotomic
/// polynomials of all proper divisors of `n`, then cached.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic order must be positive");
    let cache = CYCLOTOMIC_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = exact_monic_div(&num, &phi_d);
        }
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

fn exact_monic_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quo = vec![0i64; num.len() - dn];
    for i in (0..quo.len()).rev() {
        let c = rem[i + dn];
        quo[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] = rem[i + j]
                    .checked_sub(c.checked_mul(dj).expect("cyclotomic coefficient overflow"))
                    .expect("cyclotomic coefficient overflow");
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quo
}

fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// An element of the cyclotomic field of order `n`, stored as its canonical
/// remainder modulo the `n`-th cyclotomic polynomial in the power basis of
/// `ζ_n = e(1/n)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<Q>,
}

impl Cyclotomic {
    /// The rational `x` viewed in the field of order 1.
    pub fn rational(x: Q) -> Self {
        Cyclotomic { order: 1, coeffs: vec![x] }
    }

    pub fn zero() -> Self {
        Self::rational(Q::zero())
    }

    pub fn one() -> Self {
        Self::rational(Q::one())
    }

    /// The root of unity `e(x) = exp(2πix)`, living in the field whose order
    /// is the denominator of `x mod 1`.
    pub fn e(x: &Q) -> Self {
        let r = frac(x);
        let n = r.denom().to_u64().expect("root of unity order too large");
        let k = r.numer().to_u64().unwrap();
        Self::zeta_power(n, k)
    }

    /// `ζ_n^k`.
    pub fn zeta_power(n: u64, k: u64) -> Self {
        let mut poly = vec![0i128; (k % n) as usize + 1];
        poly[(k % n) as usize] = 1;
        Self::from_integer_poly(n, &poly)
    }

    /// Reduces `Σ a_k ζ_n^k` with integer coefficients into canonical form.
    pub fn from_integer_poly(n: u64, poly: &[i128]) -> Self {
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        let mut p: Vec<i128> = poly.to_vec();
        if p.len() < deg {
            p.resize(deg, 0);
        }
        for i in (deg..p.len()).rev() {
            let c = p[i];
            if c != 0 {
                for (j, &pj) in phi.iter().enumerate() {
                    p[i - deg + j] -= c * pj as i128;
                }
            }
        }
        p.truncate(deg);
        Cyclotomic {
            order: n,
            coeffs: p.into_iter().map(|c| Q::from_integer(BigInt::from(c))).collect(),
        }
    }

    /// Reduces a rational coefficient polynomial in `ζ_n` into canonical form.
    pub fn from_poly(n: u64, mut p: Vec<Q>) -> Self {
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        if p.len() < deg {
            p.resize(deg, Q::zero());
        }
        for i in (deg..p.len()).rev() {
            if !p[i].is_zero() {
                let c = p[i].clone();
                for (j, &pj) in phi.iter().enumerate() {
                    if pj != 0 {
                        p[i - deg + j] -= &c * Q::from_integer(BigInt::from(pj));
                    }
                }
            }
        }
        p.truncate(deg);
        Cyclotomic { order: n, coeffs: p }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it lies in ℚ.
    pub fn to_rational(&self) -> Option<Q> {
        if self.order <= 2 {
            return Some(self.coeffs[0].clone());
        }
        self.to_order(1).map(|c| c.coeffs[0].clone())
    }

    /// Re-expresses the element in the field of order `m`, a multiple of the
    /// current order.
    pub fn lift(&self, m: u64) -> Self {
        assert!(m % self.order == 0, "lift target {m} is not a multiple of {}", self.order);
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as usize;
        let mut p = vec![Q::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            p[k * step] = c.clone();
        }
        Self::from_poly(m, p)
    }

    /// Expresses the element in the field of order `d`, if it lies there.
    /// `d` must divide the current order or be a multiple of it.
    pub fn to_order(&self, d: u64) -> Option<Self> {
        if self.order % d != 0 {
            return (d % self.order == 0).then(|| self.lift(d));
        }
        if d == self.order {
            return Some(self.clone());
        }
        // Solve lift(b) = self for b in the power basis of order d.
        let m = self.order;
        let phi_d = euler_phi(d) as usize;
        let phi_m = self.coeffs.len();
        let columns: Vec<Vec<Q>> = (0..phi_d)
            .map(|k| Self::zeta_power(d, k as u64).lift(m).coeffs)
            .collect();
        let mut rows: Vec<Vec<Q>> = (0..phi_m)
            .map(|r| {
                let mut row: Vec<Q> = columns.iter().map(|c| c[r].clone()).collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let sol = crate::linalg::solve_augmented(&mut rows, phi_d)?;
        Some(Cyclotomic { order: d, coeffs: sol })
    }

    /// The smallest order in which this element can be written.
    pub fn minimal(&self) -> Self {
        let mut divisors: Vec<u64> = (1..=self.order).filter(|d| self.order % d == 0).collect();
        divisors.sort_unstable();
        for d in divisors {
            if d == self.order {
                break;
            }
            if let Some(c) = self.to_order(d) {
                return c;
            }
        }
        self.clone()
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let m = a.order.lcm(&b.order);
        (a.lift(m), b.lift(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Cyclotomic { order: a.order, coeffs }
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Q) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        if a.order <= 2 {
            return Cyclotomic {
                order: a.order,
                coeffs: vec![&a.coeffs[0] * &b.coeffs[0]],
            };
        }
        let mut p = vec![Q::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    p[i + j] += x * y;
                }
            }
        }
        Self::from_poly(a.order, p)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut result = Cyclotomic::one().lift(self.order);
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&b);
            }
            b = b.mul(&b);
            k >>= 1;
        }
        Some(result)
    }

    /// Complex conjugation, sending `e(x)` to `e(-x)`.
    pub fn conj(&self) -> Self {
        let n = self.order;
        let mut p = vec![Q::zero(); n as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            let idx = ((n - k as u64 % n) % n) as usize;
            p[idx] += c;
        }
        Self::from_poly(n, p)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.order;
        let phi = self.coeffs.len();
        // Columns: self * ζ^k for k < φ(n).
        let columns: Vec<Vec<Q>> = (0..phi)
            .map(|k| self.mul(&Self::zeta_power(n, k as u64)).coeffs)
            .collect();
        let mut rows: Vec<Vec<Q>> = (0..phi)
            .map(|r| {
                let mut row: Vec<Q> = columns.iter().map(|c| c[r].clone()).collect();
                row.push(if r == 0 { Q::one() } else { Q::zero() });
                row
            })
            .collect();
        let sol = crate::linalg::solve_augmented(&mut rows, phi)?;
        Some(Cyclotomic { order: n, coeffs: sol })
    }

    /// Floating point value `(re, im)`; used only for display and for the
    /// sign tiebreaker in the Milgram check.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let v = rational_to_f64(c);
            let t = 2.0 * std::f64::consts::PI * k as f64 / n;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }
}

pub(crate) fn rational_to_f64(x: &Q) -> f64 {
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
        _ => {
            // Scale down very large numerators and denominators together.
            let shift = x.numer().bits().max(x.denom().bits()).saturating_sub(1000);
            let a = (x.numer() >> shift).to_f64().unwrap_or(0.0);
            let b = (x.denom() >> shift).to_f64().unwrap_or(1.0);
            a / b
        }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.minimal();
        let mut parts = Vec::new();
        for (k, c) in m.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = super::rational::rational_to_string(c);
            parts.push(match k {
                0 => cs,
                _ if c.is_one() => format!("z{}^{}", m.order, k),
                _ if (-c).is_one() => format!("-z{}^{}", m.order, k),
                _ => format!("{}*z{}^{}", cs, m.order, k),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
        }
    }
}

impl Cyclotomic {
    /// Absolute value of the largest numerator, a cheap size measure.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.numer().abs())
            .max()
            .unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, q};

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(105).len() - 1, 48);
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn named_roots_of_unity() {
        assert_eq!(Cyclotomic::e(&int(0)), Cyclotomic::one());
        assert_eq!(Cyclotomic::e(&q(1, 2)), Cyclotomic::rational(int(-1)));
        let i = Cyclotomic::e(&q(1, 4));
        let e8 = Cyclotomic::e(&q(1, 8));
        assert_eq!(e8.mul(&e8), i);
        assert_eq!(i.coeffs(), &[int(0), int(1)]);
        let sum = Cyclotomic::one()
            .add(&Cyclotomic::e(&q(1, 3)))
            .add(&Cyclotomic::e(&q(2, 3)));
        assert!(sum.is_zero());
        assert_eq!(Cyclotomic::e(&q(1, 5)).mul(&Cyclotomic::e(&q(4, 5))), Cyclotomic::one());
        assert_eq!(e8.conj(), Cyclotomic::e(&q(7, 8)));
    }

    #[test]
    fn order_changes_round_trip() {
        let x = Cyclotomic::e(&q(1, 3)).add(&Cyclotomic::rational(q(2, 7)));
        let lifted = x.lift(12);
        assert_eq!(lifted.order(), 12);
        assert_eq!(lifted.to_order(3).unwrap().coeffs(), x.coeffs());
        assert_eq!(Cyclotomic::e(&q(1, 4)).to_order(2), None);
        assert_eq!(Cyclotomic::e(&q(1, 8)).lift(24).minimal().order(), 8);
        assert_eq!(Cyclotomic::e(&q(1, 6)).minimal().order(), 3);
        assert_eq!(Cyclotomic::e(&q(1, 3)).add(&Cyclotomic::e(&q(2, 3))).to_rational(), Some(int(-1)));
    }

    #[test]
    fn inverse_and_powers() {
        let x = Cyclotomic::one().add(&Cyclotomic::e(&q(1, 5)));
        assert_eq!(x.mul(&x.inv().unwrap()), Cyclotomic::one());
        let two = Cyclotomic::rational(int(2));
        assert_eq!(two.pow(-4).unwrap(), Cyclotomic::rational(q(1, 16)));
        assert!(Cyclotomic::zero().inv().is_none());
        let (re, im) = Cyclotomic::e(&q(1, 8)).to_complex();
        assert!((re - 0.5f64.sqrt()).abs() < 1e-12 && (im - 0.5f64.sqrt()).abs() < 1e-12);
    }
}
