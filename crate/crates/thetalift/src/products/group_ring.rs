use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arith::{rational_to_string, Cyclotomic, Q};
use crate::error::{Error, Result};

/// A truncated element of the group ring `ℚ(ζ_N)[K′ + ρ]`.
///
/// Exponents are `ρ + λ` with `λ ∈ K′` stored through its dual coordinates
/// `x = G·λ`, so that heights `(λ, h) = x·h` and sums are exact integer
/// operations on the keys. Terms with `(ρ + λ, h)` above the bound are
/// never stored.
#[derive(Clone, Debug)]
pub struct GroupRingSeries {
    pub(crate) offset: Vec<Q>,
    pub(crate) height_vector: Vec<Q>,
    pub(crate) height_bound: Q,
    pub(crate) order: u64,
    pub(crate) gram: Vec<Vec<Q>>,
    pub(crate) gram_inverse: Vec<Vec<Q>>,
    pub(crate) terms: HashMap<Vec<i64>, Cyclotomic>,
}

/// One term of a [`GroupRingSeries`] in `K`-coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub exponent: Vec<Q>,
    pub height: Q,
    pub coefficient: Cyclotomic,
}

impl GroupRingSeries {
    pub(crate) fn monomial(
        offset: Vec<Q>,
        height_vector: Vec<Q>,
        height_bound: Q,
        order: u64,
        gram: Vec<Vec<Q>>,
    ) -> Result<Self> {
        let gram_inverse = crate::linalg::inverse_q(&gram).ok_or(Error::Singular)?;
        let mut terms = HashMap::new();
        terms.insert(vec![0; offset.len()], Cyclotomic::one().lift(order));
        Ok(GroupRingSeries { offset, height_vector, height_bound, order, gram, gram_inverse, terms })
    }

    pub fn height_vector(&self) -> &[Q] {
        &self.height_vector
    }

    pub fn height_bound(&self) -> &Q {
        &self.height_bound
    }

    /// The order `N` of the roots of unity in the coefficients.
    pub fn order(&self) -> u64 {
        self.order
    }

    fn relative_height(&self, x: &[i64]) -> Q {
        x.iter()
            .zip(&self.height_vector)
            .fold(Q::zero(), |acc, (a, h)| acc + Q::from_integer(BigInt::from(*a)) * h)
    }

    /// `(ρ, h)`.
    pub fn offset_height(&self) -> Q {
        let gh: Vec<Q> = self
            .gram
            .iter()
            .map(|row| row.iter().zip(&self.height_vector).fold(Q::zero(), |acc, (a, b)| acc + a * b))
            .collect();
        self.offset.iter().zip(&gh).fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }

    fn exponent(&self, x: &[i64]) -> Vec<Q> {
        self.gram_inverse
            .iter()
            .zip(&self.offset)
            .map(|(row, o)| {
                row.iter()
                    .zip(x)
                    .fold(o.clone(), |acc, (a, b)| acc + a * Q::from_integer(BigInt::from(*b)))
            })
            .collect()
    }

    /// Multiplies by `Σ_k coeffs[k-1]·X^{kλ}` plus 1, dropping terms whose
    /// relative height exceeds `room`. `lambda_height` must be positive.
    pub(crate) fn mul_sparse_powers(&mut self, x: &[i64], lambda_height: &Q, room: &Q, coeffs: &[Cyclotomic]) {
        let mut out = self.terms.clone();
        for (y, a) in &self.terms {
            let mut h = self.relative_height(y);
            let mut key = y.clone();
            for c in coeffs {
                h += lambda_height;
                if &h > room {
                    break;
                }
                for (k, d) in key.iter_mut().zip(x) {
                    *k += d;
                }
                if c.is_zero() {
                    continue;
                }
                let entry = out.entry(key.clone()).or_insert_with(|| Cyclotomic::zero().lift(self.order));
                *entry = entry.add(&a.mul(c));
            }
        }
        out.retain(|_, c| !c.is_zero());
        self.terms = out;
    }

    /// Nonzero terms sorted by height and then by exponent.
    pub fn terms(&self) -> Vec<Term> {
        let base = self.offset_height();
        let mut out: Vec<Term> = self
            .terms
            .iter()
            .map(|(x, c)| Term {
                exponent: self.exponent(x),
                height: &base + self.relative_height(x),
                coefficient: c.minimal(),
            })
            .collect();
        out.sort_by(|a, b| a.height.cmp(&b.height).then_with(|| a.exponent.cmp(&b.exponent)));
        out
    }

    /// The coefficient of `e((ρ + λ, Z))` for an exponent given in
    /// `K`-coordinates.
    pub fn coefficient(&self, exponent: &[Q]) -> Result<Cyclotomic> {
        let Some(key) = self.key_of(exponent)? else { return Ok(Cyclotomic::zero()) };
        let h = self.offset_height() + self.relative_height(&key);
        if h > self.height_bound {
            return Err(Error::Precision(format!(
                "height {} lies above the bound {}",
                rational_to_string(&h),
                rational_to_string(&self.height_bound)
            )));
        }
        Ok(self.terms.get(&key).map(Cyclotomic::minimal).unwrap_or_else(Cyclotomic::zero))
    }

    /// Adds `c` to the coefficient of an exponent; used to exercise detectors.
    pub fn insert_term(&mut self, exponent: &[Q], c: Cyclotomic) -> Result<()> {
        let key = self
            .key_of(exponent)?
            .ok_or_else(|| Error::Invalid("exponent is not in ρ + K′".into()))?;
        let entry = self.terms.entry(key).or_insert_with(|| Cyclotomic::zero().lift(self.order));
        *entry = entry.add(&c);
        Ok(())
    }

    fn key_of(&self, exponent: &[Q]) -> Result<Option<Vec<i64>>> {
        if exponent.len() != self.offset.len() {
            return Err(Error::Invalid("exponent has the wrong number of coordinates".into()));
        }
        let diff: Vec<Q> = exponent.iter().zip(&self.offset).map(|(a, b)| a - b).collect();
        let mut key = Vec::with_capacity(diff.len());
        for row in &self.gram {
            let s = row.iter().zip(&diff).fold(Q::zero(), |acc, (a, b)| acc + a * b);
            if !s.is_integer() {
                return Ok(None);
            }
            key.push(s.to_integer().to_i64().ok_or_else(|| Error::Invalid("exponent too large".into()))?);
        }
        Ok(Some(key))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `[{"lambda": [...], "phase": "a/N", "coeff": "p/q"}, ...]`, one entry
    /// per power-basis coordinate of each coefficient.
    pub fn to_json(&self) -> Value {
        let mut rows = Vec::new();
        for t in self.terms() {
            let c = t.coefficient.lift(self.order.lcm(&t.coefficient.order()));
            let lambda: Vec<String> = t.exponent.iter().map(rational_to_string).collect();
            for (k, a) in c.coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                rows.push(json!({
                    "lambda": lambda,
                    "height": rational_to_string(&t.height),
                    "phase": format!("{k}/{}", c.order()),
                    "coeff": rational_to_string(a),
                }));
            }
        }
        Value::Array(rows)
    }
}
