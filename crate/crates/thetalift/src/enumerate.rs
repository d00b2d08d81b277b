//! Exact short-vector enumeration for positive definite integer quadratic
//! forms.
//!
//! The search runs over integer vectors `y` with prescribed residues
//! `y_k ≡ r_k (mod m)` and `yᵀ A y ≤ β`. Partial norms are tracked through
//! fraction-free LDLᵀ data: with `D_k` the leading principal minors of `A`
//! and `P` the Bareiss column entries, the quantity `I_k = D_k · (norm of the
//! projection of y orthogonal to the first k basis vectors)` is an integer
//! satisfying `I_k = (I_{k+1} D_k + (y_k D_{k+1} + S_k)²) / D_{k+1}`, so every
//! bound test is an exact integer comparison. A checked `i128` path handles
//! the common case and falls back to arbitrary precision on overflow.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::Error;
use crate::linalg::{lll_gram, transpose, IMat};

trait EInt: Clone + Send + Sync + Ord + std::fmt::Debug {
    fn from_big(x: &BigInt) -> Option<Self>;
    fn from_i64(x: i64) -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div_exact(&self, o: &Self) -> Self;
    fn div_floor(&self, o: &Self) -> Self;
    fn div_ceil(&self, o: &Self) -> Self;
    fn isqrt(&self) -> Self;
    fn is_neg(&self) -> bool;
    fn as_i64(&self) -> Option<i64>;
}

impl EInt for i128 {
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_i128()
    }
    fn from_i64(x: i64) -> Self {
        x as i128
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert_eq!(self % o, 0);
        self / o
    }
    fn div_floor(&self, o: &Self) -> Self {
        Integer::div_floor(self, o)
    }
    fn div_ceil(&self, o: &Self) -> Self {
        -Integer::div_floor(&-self, o)
    }
    fn isqrt(&self) -> Self {
        Roots::sqrt(self)
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn as_i64(&self) -> Option<i64> {
        i64::try_from(*self).ok()
    }
}

impl EInt for BigInt {
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert!((self % o).is_zero());
        self / o
    }
    fn div_floor(&self, o: &Self) -> Self {
        Integer::div_floor(self, o)
    }
    fn div_ceil(&self, o: &Self) -> Self {
        -Integer::div_floor(&-self, o)
    }
    fn isqrt(&self) -> Self {
        Roots::sqrt(self)
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn as_i64(&self) -> Option<i64> {
        ToPrimitive::to_i64(self)
    }
}

struct Overflow;

/// Fraction-free LDLᵀ data of a positive definite matrix.
struct Ldl<T> {
    n: usize,
    /// `d[k]` = leading principal minor of size k (`d[0] = 1`).
    d: Vec<T>,
    /// `p[j][k]` for `j > k`: Bareiss numerators of the unit lower factor.
    p: Vec<Vec<T>>,
    modulus: T,
    residues: Vec<T>,
    bound: T,
}

impl<T: EInt> Ldl<T> {
    fn new(a: &IMat, modulus: &BigInt, residues: &[BigInt], bound: &BigInt) -> Option<Self> {
        let n = a.len();
        let mut m = a.clone();
        let mut prev = BigInt::one();
        let mut d = vec![T::from_i64(1)];
        let mut p = vec![vec![T::from_i64(0); n]; n];
        for k in 0..n {
            let piv = m[k][k].clone();
            assert!(piv.is_positive(), "enumeration requires a positive definite form");
            d.push(T::from_big(&piv)?);
            for j in k + 1..n {
                p[j][k] = T::from_big(&m[j][k])?;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (&m[i][j] * &piv - &m[i][k] * &m[k][j]) / &prev;
                }
            }
            prev = piv;
        }
        Some(Ldl {
            n,
            d,
            p,
            modulus: T::from_big(modulus)?,
            residues: residues.iter().map(T::from_big).collect::<Option<_>>()?,
            bound: T::from_big(bound)?,
        })
    }

    /// Candidate range for coordinate `k` given `I_{k+1}` and `S_k`.
    fn range(&self, k: usize, i_next: &T, s: &T) -> Result<Option<(T, T)>, Overflow> {
        let dk = &self.d[k];
        let dk1 = &self.d[k + 1];
        let w = self
            .bound
            .mul(dk)
            .and_then(|x| x.mul(dk1))
            .and_then(|x| x.sub(&i_next.mul(dk)?))
            .ok_or(Overflow)?;
        if w.is_neg() {
            return Ok(None);
        }
        let r = w.isqrt();
        let lo = r.add(s).ok_or(Overflow)?;
        let lo = T::from_i64(0).sub(&lo).ok_or(Overflow)?.div_ceil(dk1);
        let hi = r.sub(s).ok_or(Overflow)?.div_floor(dk1);
        // Align to the residue class.
        let m = &self.modulus;
        let res = &self.residues[k];
        let off = lo.sub(res).ok_or(Overflow)?;
        let rem = off.sub(&off.div_floor(m).mul(m).ok_or(Overflow)?).ok_or(Overflow)?;
        let first = if rem == T::from_i64(0) {
            lo
        } else {
            lo.add(&m.sub(&rem).ok_or(Overflow)?).ok_or(Overflow)?
        };
        if first > hi {
            return Ok(None);
        }
        Ok(Some((first, hi)))
    }

    fn s_value(&self, k: usize, y: &[i64]) -> Result<T, Overflow> {
        let mut s = T::from_i64(0);
        for j in k + 1..self.n {
            if y[j] != 0 && self.p[j][k] != T::from_i64(0) {
                s = s
                    .add(&self.p[j][k].mul(&T::from_i64(y[j])).ok_or(Overflow)?)
                    .ok_or(Overflow)?;
            }
        }
        Ok(s)
    }

    fn next_i(&self, k: usize, i_next: &T, yk: &T, s: &T) -> Result<T, Overflow> {
        let t = yk.mul(&self.d[k + 1]).and_then(|x| x.add(s)).ok_or(Overflow)?;
        let num = i_next
            .mul(&self.d[k])
            .and_then(|x| x.add(&t.mul(&t)?))
            .ok_or(Overflow)?;
        Ok(num.div_exact(&self.d[k + 1]))
    }

    fn walk(
        &self,
        k: usize,
        i_next: &T,
        y: &mut Vec<i64>,
        visit: &mut dyn FnMut(&[i64], i64),
    ) -> Result<(), Overflow> {
        let s = self.s_value(k, y)?;
        let Some((lo, hi)) = self.range(k, i_next, &s)? else {
            return Ok(());
        };
        let mut v = lo;
        while v <= hi {
            y[k] = v.as_i64().ok_or(Overflow)?;
            let ik = self.next_i(k, i_next, &v, &s)?;
            if k == 0 {
                visit(y, ik.as_i64().ok_or(Overflow)?);
            } else {
                self.walk(k - 1, &ik, y, visit)?;
            }
            v = v.add(&self.modulus).ok_or(Overflow)?;
        }
        y[k] = 0;
        Ok(())
    }

    /// Values of the outermost coordinate, for splitting work across tasks.
    fn top_values(&self) -> Result<Vec<i64>, Overflow> {
        let k = self.n - 1;
        let zero = T::from_i64(0);
        let Some((lo, hi)) = self.range(k, &zero, &zero)? else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        let mut v = lo;
        while v <= hi {
            out.push(v.as_i64().ok_or(Overflow)?);
            v = v.add(&self.modulus).ok_or(Overflow)?;
        }
        Ok(out)
    }

    fn walk_top(&self, top: i64, visit: &mut dyn FnMut(&[i64], i64)) -> Result<(), Overflow> {
        let k = self.n - 1;
        let zero = T::from_i64(0);
        let mut y = vec![0i64; self.n];
        y[k] = top;
        let ik = self.next_i(k, &zero, &T::from_i64(top), &zero)?;
        if k == 0 {
            visit(&y, ik.as_i64().ok_or(Overflow)?);
            Ok(())
        } else {
            self.walk(k - 1, &ik, &mut y, visit)
        }
    }
}

/// A positive definite integer form prepared for repeated enumeration,
/// internally LLL-reduced.
pub struct ShortVectors {
    n: usize,
    reduced: IMat,
    /// Rows are reduced basis vectors in original coordinates.
    transform: IMat,
}

impl ShortVectors {
    pub fn new(a: &IMat) -> Self {
        let (reduced, transform) = lll_gram(a);
        ShortVectors { n: a.len(), reduced, transform }
    }

    /// Residues in reduced coordinates: `y = Tᵀ y'` so `y' = (Tᵀ)⁻¹ y`.
    fn reduced_residues(&self, modulus: &BigInt, residues: &[BigInt]) -> Vec<BigInt> {
        if modulus.is_one() {
            return vec![BigInt::zero(); self.n];
        }
        let tt = transpose(&self.transform);
        let inv = crate::linalg::inverse_q(&crate::linalg::to_qmat(&tt)).expect("unimodular");
        (0..self.n)
            .map(|i| {
                let mut acc = crate::arith::Q::zero();
                for (j, r) in residues.iter().enumerate() {
                    acc += &inv[i][j] * crate::arith::Q::from_integer(r.clone());
                }
                debug_assert!(acc.is_integer());
                acc.to_integer().mod_floor(modulus)
            })
            .collect()
    }

    fn to_original(&self, yr: &[i64]) -> Vec<i64> {
        let mut y = vec![0i64; self.n];
        for (i, &c) in yr.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, t) in self.transform[i].iter().enumerate() {
                y[j] += c * t.to_i64().expect("transform entry fits i64");
            }
        }
        y
    }

    fn run<R: Send>(
        &self,
        modulus: &BigInt,
        residues: &[BigInt],
        bound: &BigInt,
        make: impl Fn() -> R + Sync,
        step: impl Fn(&mut R, &[i64], i64) + Sync,
    ) -> crate::Result<Vec<R>> {
        if self.n == 0 {
            let mut r = make();
            if !bound.is_negative() {
                step(&mut r, &[], 0);
            }
            return Ok(vec![r]);
        }
        if bound.is_negative() {
            return Ok(Vec::new());
        }
        let res = self.reduced_residues(modulus, residues);
        if let Some(ldl) = Ldl::<i128>::new(&self.reduced, modulus, &res, bound) {
            if let Ok(tops) = ldl.top_values() {
                let attempt: Result<Vec<R>, Overflow> = tops
                    .par_iter()
                    .map(|&t| {
                        let mut acc = make();
                        ldl.walk_top(t, &mut |y, nrm| step(&mut acc, y, nrm))?;
                        Ok(acc)
                    })
                    .collect();
                if let Ok(v) = attempt {
                    return Ok(v);
                }
            }
        }
        let too_big = || Error::Unsupported("enumeration leaves the 64-bit coordinate range".into());
        let ldl = Ldl::<BigInt>::new(&self.reduced, modulus, &res, bound).ok_or_else(too_big)?;
        let tops = ldl.top_values().map_err(|_| too_big())?;
        tops.par_iter()
            .map(|&t| {
                let mut acc = make();
                ldl.walk_top(t, &mut |y, nrm| step(&mut acc, y, nrm)).map_err(|_| too_big())?;
                Ok(acc)
            })
            .collect()
    }

    /// All `y ≡ residues (mod modulus)` with `yᵀ A y ≤ bound`, with their
    /// norms, in original coordinates, sorted by norm then coordinates.
    pub fn collect(&self, modulus: &BigInt, residues: &[BigInt], bound: &BigInt) -> crate::Result<Vec<(Vec<i64>, i64)>> {
        let parts = self.run(modulus, residues, bound, Vec::new, |acc: &mut Vec<(Vec<i64>, i64)>, y, nrm| {
            acc.push((self.to_original(y), nrm))
        })?;
        let mut all: Vec<(Vec<i64>, i64)> = parts.into_iter().flatten().collect();
        all.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        Ok(all)
    }

    /// Number of admissible vectors of each norm up to `bound`.
    pub fn count_by_norm(&self, modulus: &BigInt, residues: &[BigInt], bound: &BigInt) -> crate::Result<BTreeMap<i64, u64>> {
        let parts = self.run(modulus, residues, bound, BTreeMap::new, |acc: &mut BTreeMap<i64, u64>, _, nrm| {
            *acc.entry(nrm).or_insert(0) += 1
        })?;
        let mut total = BTreeMap::new();
        for p in parts {
            for (k, v) in p {
                *total.entry(k).or_insert(0) += v;
            }
        }
        Ok(total)
    }
}
