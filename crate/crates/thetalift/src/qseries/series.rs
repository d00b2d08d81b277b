use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arith::{parse_rational, rational_to_string, Q};
use crate::error::{Error, Result};

/// A truncated Laurent series in `q` with rational exponents of bounded
/// denominator and exact rational coefficients.
///
/// Coefficient of `q^{k/den}` is stored under key `k`. Exponents at or above
/// the truncation order are unknown; a series without truncation is an exact
/// finite sum.
#[derive(Clone, Debug)]
pub struct FracPowerSeries {
    den: u64,
    coeffs: BTreeMap<i64, Q>,
    trunc: Option<Q>,
}

fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

fn min_trunc(a: &Option<Q>, b: &Option<Q>) -> Option<Q> {
    match (a, b) {
        (None, x) | (x, None) => x.clone(),
        (Some(x), Some(y)) => Some(x.min(y).clone()),
    }
}

impl FracPowerSeries {
    /// The zero series known to vanish below `trunc`.
    pub fn zero(trunc: Q) -> Self {
        FracPowerSeries { den: 1, coeffs: BTreeMap::new(), trunc: Some(trunc) }
    }

    /// The exact zero series.
    pub fn exact_zero() -> Self {
        FracPowerSeries { den: 1, coeffs: BTreeMap::new(), trunc: None }
    }

    /// The exact monomial `c·q^e`.
    pub fn monomial(e: &Q, c: Q) -> Self {
        let den = e.denom().to_u64().expect("exponent denominator too large");
        let k = e.numer().to_i64().expect("exponent too large");
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        let mut s = FracPowerSeries { den, coeffs, trunc: None };
        s.canonicalize();
        s
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(&Q::zero(), c)
    }

    /// Builds a series from `(exponent, coefficient)` pairs; terms at or
    /// above the truncation order are dropped.
    pub fn from_terms(terms: impl IntoIterator<Item = (Q, Q)>, trunc: Option<Q>) -> Self {
        let terms: Vec<(Q, Q)> = terms.into_iter().collect();
        let den = terms
            .iter()
            .fold(1u64, |acc, (e, _)| lcm(acc, e.denom().to_u64().expect("denominator")));
        let mut coeffs: BTreeMap<i64, Q> = BTreeMap::new();
        for (e, c) in terms {
            if trunc.as_ref().is_some_and(|t| &e >= t) {
                continue;
            }
            let k = (e * Q::from_integer(BigInt::from(den))).to_integer().to_i64().expect("exponent");
            *coeffs.entry(k).or_insert_with(Q::zero) += c;
        }
        let mut s = FracPowerSeries { den, coeffs, trunc };
        s.canonicalize();
        s
    }

    /// Series `Σ c_n q^{n/den}` from a dense list starting at index `start`.
    pub fn from_dense(den: u64, start: i64, values: Vec<Q>, trunc: Option<Q>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (i, v) in values.into_iter().enumerate() {
            if !v.is_zero() {
                coeffs.insert(start + i as i64, v);
            }
        }
        let mut s = FracPowerSeries { den, coeffs, trunc };
        s.drop_beyond_trunc();
        s.canonicalize();
        s
    }

    fn canonicalize(&mut self) {
        self.coeffs.retain(|_, v| !v.is_zero());
        let g = self
            .coeffs
            .keys()
            .fold(self.den as i64, |acc, &k| acc.gcd(&k))
            .unsigned_abs()
            .max(1);
        if g > 1 {
            self.den /= g;
            let old = std::mem::take(&mut self.coeffs);
            self.coeffs = old.into_iter().map(|(k, v)| (k / g as i64, v)).collect();
        }
    }

    fn limit_index(&self, den: u64) -> Option<i64> {
        self.trunc.as_ref().map(|t| {
            (t * Q::from_integer(BigInt::from(den)))
                .ceil()
                .to_integer()
                .to_i64()
                .expect("truncation index")
        })
    }

    fn drop_beyond_trunc(&mut self) {
        if let Some(lim) = self.limit_index(self.den) {
            self.coeffs.retain(|&k, _| k < lim);
        }
    }

    fn with_den(&self, den: u64) -> BTreeMap<i64, Q> {
        let f = (den / self.den) as i64;
        self.coeffs.iter().map(|(k, v)| (k * f, v.clone())).collect()
    }

    pub fn exp_denominator(&self) -> u64 {
        self.den
    }

    /// Truncation order; `None` for an exact series.
    pub fn truncation(&self) -> Option<&Q> {
        self.trunc.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    /// Nonzero terms as `(exponent, coefficient)` in increasing order.
    pub fn terms(&self) -> impl Iterator<Item = (Q, &Q)> + '_ {
        let d = BigInt::from(self.den);
        self.coeffs
            .iter()
            .map(move |(k, v)| (Q::new(BigInt::from(*k), d.clone()), v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<Q> {
        self.coeffs
            .keys()
            .next()
            .map(|&k| Q::new(BigInt::from(k), BigInt::from(self.den)))
    }

    /// Lower bound for the exponents that may be nonzero: the valuation, or
    /// the truncation order of a zero series.
    fn support_floor(&self) -> Option<Q> {
        self.valuation().or_else(|| self.trunc.clone())
    }

    /// Coefficient of `q^e`; errors if `e` is at or beyond the truncation.
    pub fn coefficient(&self, e: &Q) -> Result<Q> {
        if let Some(t) = &self.trunc {
            if e >= t {
                return Err(Error::Precision(format!(
                    "coefficient of q^{} requested but series is known only below q^{}",
                    rational_to_string(e),
                    rational_to_string(t)
                )));
            }
        }
        let scaled = e * Q::from_integer(BigInt::from(self.den));
        if !scaled.is_integer() {
            return Ok(Q::zero());
        }
        let k = scaled.to_integer().to_i64().unwrap_or(i64::MAX);
        Ok(self.coeffs.get(&k).cloned().unwrap_or_else(Q::zero))
    }

    pub fn coefficient_int(&self, n: i64) -> Result<Q> {
        self.coefficient(&Q::from_integer(BigInt::from(n)))
    }

    pub fn constant_term(&self) -> Result<Q> {
        self.coefficient(&Q::zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let den = lcm(self.den, other.den);
        let mut coeffs = self.with_den(den);
        for (k, v) in other.with_den(den) {
            *coeffs.entry(k).or_insert_with(Q::zero) += v;
        }
        let mut s = FracPowerSeries { den, coeffs, trunc: min_trunc(&self.trunc, &other.trunc) };
        s.drop_beyond_trunc();
        s.canonicalize();
        s
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut s = self.clone();
        for v in s.coeffs.values_mut() {
            *v *= c;
        }
        s.canonicalize();
        s
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: &Q) -> Self {
        self.mul(&Self::monomial(e, Q::one()))
    }

    /// Product with the tightest sound truncation
    /// `min(trunc(f) + val(g), trunc(g) + val(f))`.
    pub fn mul(&self, other: &Self) -> Self {
        let t1 = match (&self.trunc, other.support_floor()) {
            (Some(t), Some(v)) => Some(t + v),
            _ => None,
        };
        let t2 = match (&other.trunc, self.support_floor()) {
            (Some(t), Some(v)) => Some(t + v),
            _ => None,
        };
        // An exact zero factor annihilates everything.
        if (self.is_exact() && self.is_zero()) || (other.is_exact() && other.is_zero()) {
            return Self::exact_zero();
        }
        let trunc = min_trunc(&t1, &t2);
        let den = lcm(self.den, other.den);
        let a = self.with_den(den);
        let b = other.with_den(den);
        let lim = trunc.as_ref().map(|t| {
            (t * Q::from_integer(BigInt::from(den))).ceil().to_integer().to_i64().expect("index")
        });
        let mut coeffs: BTreeMap<i64, Q> = BTreeMap::new();
        for (i, x) in &a {
            for (j, y) in &b {
                let k = i + j;
                if lim.is_some_and(|l| k >= l) {
                    break;
                }
                *coeffs.entry(k).or_insert_with(Q::zero) += x * y;
            }
        }
        let mut s = FracPowerSeries { den, coeffs, trunc };
        s.canonicalize();
        s
    }

    /// Multiplicative inverse. The leading coefficient must be nonzero; an
    /// exact series must be a monomial.
    pub fn invert(&self) -> Result<Self> {
        let Some(v) = self.valuation() else {
            return Err(Error::Invalid("cannot invert a series with zero leading coefficient".into()));
        };
        let (&k0, c0) = self.coeffs.iter().next().unwrap();
        let cinv = Q::one() / c0;
        let Some(t) = self.trunc.clone() else {
            if self.coeffs.len() == 1 {
                return Ok(Self::monomial(&-v, cinv));
            }
            return Err(Error::Precision(
                "inverse of an exact non-monomial series needs a truncation order".into(),
            ));
        };
        // Normalized unit u = f / (c0 q^v) = 1 + Σ a_j q^{j/den}, known for j < n.
        let den = self.den;
        let n = ((&t - &v) * Q::from_integer(BigInt::from(den)))
            .ceil()
            .to_integer()
            .to_usize()
            .unwrap_or(0);
        let mut a = vec![Q::zero(); n];
        for (k, c) in &self.coeffs {
            let j = (k - k0) as usize;
            if j < n {
                a[j] = c * &cinv;
            }
        }
        let mut b = vec![Q::zero(); n];
        if n > 0 {
            b[0] = Q::one();
        }
        for m in 1..n {
            let mut s = Q::zero();
            for j in 1..=m {
                if !a[j].is_zero() && !b[m - j].is_zero() {
                    s += &a[j] * &b[m - j];
                }
            }
            b[m] = -s;
        }
        let new_trunc = &t - &v - &v;
        let start = -k0;
        let vals: Vec<Q> = b.into_iter().map(|x| x * &cinv).collect();
        Ok(Self::from_dense(den, start, vals, Some(new_trunc)))
    }

    /// Integer power; negative powers go through [`invert`](Self::invert).
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut result = Self::constant(Q::one());
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        Ok(result)
    }

    /// Substitutes `q ↦ q^r` for a positive rational `r`.
    pub fn rescale_exponents(&self, r: &Q) -> Self {
        assert!(r.is_positive(), "exponent rescaling factor must be positive");
        let terms = self.terms().map(|(e, c)| (e * r, c.clone())).collect::<Vec<_>>();
        let trunc = self.trunc.as_ref().map(|t| t * r);
        Self::from_terms(terms, trunc)
    }

    /// Lowers the truncation order to `t` (no-op if already lower).
    pub fn truncate(&self, t: &Q) -> Self {
        let trunc = min_trunc(&self.trunc, &Some(t.clone()));
        let mut s = FracPowerSeries { den: self.den, coeffs: self.coeffs.clone(), trunc };
        s.drop_beyond_trunc();
        s.canonicalize();
        s
    }

    /// Keeps only the terms whose exponent satisfies `keep`.
    pub fn filter_exponents(&self, keep: impl Fn(&Q) -> bool) -> Self {
        let terms: Vec<(Q, Q)> = self.terms().filter(|(e, _)| keep(e)).map(|(e, c)| (e, c.clone())).collect();
        Self::from_terms(terms, self.trunc.clone())
    }

    /// Equality of all coefficients below the smaller truncation order.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(e, c)| json!({"exp": rational_to_string(&e), "val": rational_to_string(c)}))
            .collect();
        json!({
            "expDenominator": self.den,
            "terms": terms,
            "truncation": self.trunc.as_ref().map(rational_to_string),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("series must be an object".into()))?;
        let den = match obj.get("expDenominator") {
            None => 1,
            Some(d) => d
                .as_u64()
                .filter(|&d| d > 0)
                .ok_or_else(|| Error::Parse("expDenominator must be a positive integer".into()))?,
        };
        let trunc = match obj.get("truncation") {
            None | Some(Value::Null) => None,
            Some(t) => Some(parse_json_rational(t)?),
        };
        let mut terms = Vec::new();
        for t in obj
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("series needs a terms array".into()))?
        {
            let e = parse_json_rational(t.get("exp").ok_or_else(|| Error::Parse("term without exp".into()))?)?;
            let c = parse_json_rational(t.get("val").ok_or_else(|| Error::Parse("term without val".into()))?)?;
            if (&e * Q::from_integer(BigInt::from(den))).denom() != &BigInt::one() {
                return Err(Error::Parse(format!(
                    "exponent {} is not a multiple of 1/{den}",
                    rational_to_string(&e)
                )));
            }
            if trunc.as_ref().is_some_and(|t| &e >= t) {
                return Err(Error::Parse(format!(
                    "term q^{} lies at or beyond the truncation order",
                    rational_to_string(&e)
                )));
            }
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms, trunc))
    }
}

/// Accepts a rational written as a string or a JSON integer.
pub fn parse_json_rational(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Q::from_integer(BigInt::from(n.as_i64().unwrap()))),
        _ => Err(Error::Parse(format!("expected a rational string, got {v}"))),
    }
}

impl PartialEq for FracPowerSeries {
    fn eq(&self, other: &Self) -> bool {
        self.trunc == other.trunc && self.agrees_with(other)
    }
}

impl fmt::Display for FracPowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in self.terms() {
            let cs = rational_to_string(c);
            let mono = if e.is_zero() {
                String::new()
            } else if e.is_one() {
                "q".to_string()
            } else {
                format!("q^{}", rational_to_string(&e))
            };
            parts.push(if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{mono}")
            } else {
                format!("{cs}{mono}")
            });
        }
        if let Some(t) = &self.trunc {
            parts.push(format!("O(q^{})", rational_to_string(t)));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, q};

    fn poly(den: u64, vals: &[i64], trunc: i64) -> FracPowerSeries {
        FracPowerSeries::from_dense(den, 0, vals.iter().map(|&v| int(v)).collect(), Some(int(trunc)))
    }

    #[test]
    fn multiplication_truncates_tightly() {
        let f = poly(1, &[1, 1], 5);
        let g = FracPowerSeries::monomial(&int(-1), int(1)).add(&FracPowerSeries::zero(int(3)));
        let h = f.mul(&g);
        assert_eq!(h.truncation(), Some(&int(3)));
        assert_eq!(h.coefficient_int(-1).unwrap(), int(1));
        assert_eq!(h.coefficient_int(2).unwrap(), int(0));
        assert!(h.coefficient_int(3).is_err());
    }

    #[test]
    fn inverse_of_geometric_series() {
        let f = poly(1, &[1, -1], 10);
        let g = f.invert().unwrap();
        for n in 0..10 {
            assert_eq!(g.coefficient_int(n).unwrap(), int(1));
        }
        assert_eq!(f.mul(&g), FracPowerSeries::constant(int(1)).add(&FracPowerSeries::zero(int(10))));
        assert!(FracPowerSeries::zero(int(3)).invert().is_err());
    }

    #[test]
    fn fractional_exponents_and_json() {
        let f = FracPowerSeries::from_terms(vec![(q(-1, 4), int(1)), (q(3, 4), int(36))], Some(q(7, 4)));
        assert_eq!(f.exp_denominator(), 4);
        let back = FracPowerSeries::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        let g = f.rescale_exponents(&int(2));
        assert_eq!(g.coefficient(&q(3, 2)).unwrap(), int(36));
        assert_eq!(g.truncation(), Some(&q(7, 2)));
        assert_eq!(f.to_string(), "q^-1/4 + 36q^3/4 + O(q^7/4)");
    }
}
