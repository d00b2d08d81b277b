//! The singular lift for a lattice of signature `(2, 1)` whose norm 0
//! vectors split off a hyperbolic plane, read at the cusp as a Shimura-type
//! correspondence.
//!
//! The input is the coefficient stream `c(n)` of a plus-space form (the
//! single component picture of a form on the rank one lattice of norm 2).
//! The output is the weight `2m⁺` series
//!
//! `−c(0)B_{m⁺}/2m⁺ + Σ_{n ≥ 1} b(n)qⁿ`, `b(n) = Σ_{d|n} d^{m⁺−1} c(n²/d²)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arith::{int, parse_rational, rational_to_string, Cyclotomic, Q};
use crate::error::{Error, Result};
use crate::qseries::{bernoulli_number, bernoulli_poly, delta, eisenstein, FracPowerSeries};

/// Coefficient stream of a plus-space form together with the weight
/// parameter of the lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShimuraInput {
    m_plus: u32,
    coeffs: BTreeMap<i64, Q>,
    trunc: i64,
}

impl ShimuraInput {
    /// `coeffs` lists `(n, c(n))`; every `c(n)` with `n < trunc` that is not
    /// listed is zero. Nonzero coefficients must sit at `n ≡ 0, 1 mod 4`.
    pub fn new(m_plus: u32, coeffs: impl IntoIterator<Item = (i64, Q)>, trunc: i64) -> Result<Self> {
        if m_plus < 2 {
            return Err(Error::Unsupported(format!(
                "m⁺ = {m_plus}: the lift needs m⁺ ≥ 2; at m⁺ = 1 the constant term picks up a \
                 Weyl-vector contribution of the rank one lattice, which is not implemented"
            )));
        }
        let mut map = BTreeMap::new();
        for (n, c) in coeffs {
            if n >= trunc {
                return Err(Error::Invalid(format!("c({n}) lies at or above the truncation {trunc}")));
            }
            if c.is_zero() {
                continue;
            }
            if n.rem_euclid(4) > 1 {
                return Err(Error::Invalid(format!(
                    "c({n}) = {} violates the plus-space condition n ≡ 0, 1 mod 4",
                    rational_to_string(&c)
                )));
            }
            if map.insert(n, c).is_some() {
                return Err(Error::Invalid(format!("c({n}) is listed twice")));
            }
        }
        Ok(ShimuraInput { m_plus, coeffs: map, trunc })
    }

    /// Parses `[{"exp": n, "val": "p/q"}, …]`.
    pub fn from_json(m_plus: u32, v: &Value, trunc: i64) -> Result<Self> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::Parse("the coefficient stream must be a JSON array".into()))?;
        let mut coeffs = Vec::with_capacity(rows.len());
        for row in rows {
            let n = row
                .get("exp")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::Parse("each entry needs an integer \"exp\"".into()))?;
            let c = match row.get("val") {
                Some(Value::String(s)) => parse_rational(s)?,
                Some(Value::Number(x)) => x
                    .as_i64()
                    .map(int)
                    .ok_or_else(|| Error::Parse("numeric \"val\" must be an integer".into()))?,
                _ => return Err(Error::Parse("each entry needs a \"val\"".into())),
            };
            coeffs.push((n, c));
        }
        Self::new(m_plus, coeffs, trunc)
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(n, c)| json!({"exp": n, "val": rational_to_string(c)}))
            .collect();
        Value::Array(rows)
    }

    pub fn m_plus(&self) -> u32 {
        self.m_plus
    }

    /// Coefficients are known for exponents strictly below this.
    pub fn truncation(&self) -> i64 {
        self.trunc
    }

    pub fn c(&self, n: i64) -> Result<Q> {
        if n >= self.trunc {
            return Err(Error::Precision(format!(
                "c({n}) is needed but the input is known only below q^{}",
                self.trunc
            )));
        }
        Ok(self.coeffs.get(&n).cloned().unwrap_or_else(Q::zero))
    }

    /// Largest `P` such that every `b(n)`, `n < P`, is determined.
    pub fn max_precision(&self) -> i64 {
        let mut p = 1i64;
        while p * p < self.trunc {
            p += 1;
        }
        p
    }
}

fn power(d: i64, e: u32) -> Q {
    Q::from_integer(BigInt::from(d).pow(e))
}

fn check_precision(input: &ShimuraInput, prec: i64) -> Result<()> {
    if prec > input.max_precision() {
        return Err(Error::Precision(format!(
            "b(n) for n < {prec} needs c up to {}, but the input is known only below q^{}; \
             the largest feasible precision is {}",
            (prec - 1) * (prec - 1),
            input.trunc,
            input.max_precision()
        )));
    }
    Ok(())
}

/// The constant term `−Σ_δ c_δ(0) Σ_{0<ε≤N} N^{m⁺−1} e(δε/N) B_{m⁺}(ε/N)/2m⁺`
/// for a level `N` frame, with `c0` listing `(δ mod N, c_δ(0))`.
pub fn constant_term(m_plus: u32, level: u64, c0: &[(u64, Q)]) -> Result<Cyclotomic> {
    if level == 0 {
        return Err(Error::Invalid("the level must be positive".into()));
    }
    let nq = Q::from_integer(BigInt::from(level));
    let scale = Q::from_integer(BigInt::from(level).pow(m_plus - 1)) / int(2 * m_plus as i64);
    let mut total = Cyclotomic::zero();
    for (delta, c) in c0 {
        if c.is_zero() {
            continue;
        }
        for eps in 1..=level {
            let x = Q::new(BigInt::from(eps), BigInt::from(level));
            let b = bernoulli_poly(m_plus as u64, &x);
            let phase = Cyclotomic::e(&(Q::from_integer(BigInt::from(delta * eps)) / &nq));
            total = total.add(&phase.scale(&(-(c * &b) * &scale)));
        }
    }
    Ok(total)
}

/// `b(n) = Σ_{d|n} d^{m⁺−1} c(n²/d²)` for `n ≥ 1`.
pub fn divisor_sum_coefficient(input: &ShimuraInput, n: i64) -> Result<Q> {
    if n < 1 {
        return Err(Error::Invalid(format!("b(n) needs n ≥ 1, got {n}")));
    }
    let mut b = Q::zero();
    for d in 1..=n {
        if n % d == 0 {
            let m = n / d;
            b += power(d, input.m_plus - 1) * input.c(m * m)?;
        }
    }
    Ok(b)
}

/// The lift through `q^{prec−1}`, from the double sum
/// `Σ_{n,m>0} n^{m⁺−1} c(m²) q^{mn}` plus the constant term.
pub fn shimura_lift(input: &ShimuraInput, prec: i64) -> Result<FracPowerSeries> {
    check_precision(input, prec)?;
    let mut b: Vec<Q> = vec![Q::zero(); prec.max(1) as usize];
    if prec > 0 {
        let b_m = bernoulli_number(input.m_plus as u64);
        b[0] = -input.c(0)? * b_m / int(2 * input.m_plus as i64);
    }
    for m in 1..prec {
        let c = input.c(m * m)?;
        if c.is_zero() {
            continue;
        }
        let mut n = 1;
        while m * n < prec {
            b[(m * n) as usize] += power(n, input.m_plus - 1) * &c;
            n += 1;
        }
    }
    Ok(FracPowerSeries::from_dense(1, 0, b, Some(int(prec))))
}

/// Outcome of [`verify_eta_quotient`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotientCheck {
    pub equal: bool,
    /// Coefficients were compared for exponents below this.
    pub compared_below: i64,
    /// The lift is known to fewer terms than requested.
    pub precision_limited: bool,
    /// `64Δ/E₄²` through the compared range.
    pub expected: Vec<Q>,
}

/// Compares a lift with `64Δ/E₄²` coefficientwise below `q^prec`, or below
/// the truncation of `lift` if that is smaller.
pub fn verify_eta_quotient(lift: &FracPowerSeries, prec: i64) -> Result<EtaQuotientCheck> {
    let known = lift
        .truncation()
        .map(|t| t.floor().to_integer().to_i64().unwrap_or(i64::MAX))
        .unwrap_or(prec);
    let upto = prec.min(known).max(0);
    let pq = int(upto.max(1));
    let target = delta(&pq).mul(&eisenstein(4, &pq)?.pow(2)?.invert()?).scale(&int(64));
    let mut expected = Vec::with_capacity(upto as usize);
    let mut equal = upto > 0;
    for n in 0..upto {
        let e = target.coefficient_int(n)?;
        if lift.coefficient_int(n)? != e {
            equal = false;
        }
        expected.push(e);
    }
    Ok(EtaQuotientCheck { equal, compared_below: upto, precision_limited: upto < prec, expected })
}

/// `binom(x, k)` for integers with `binom(x, k) = 0` when `k < 0`; a negative
/// top argument uses the falling factorial.
pub fn binomial(x: i64, k: i64) -> Q {
    if k < 0 {
        return Q::zero();
    }
    let mut r = Q::one();
    for i in 0..k {
        r = r * int(x - i) / int(i + 1);
    }
    r
}

/// Both sides of
/// `Σ_j (−1)^j binom(C, j) binom(A−2j+C−B−1, A−2j) = Σ_j (−1)^j binom(C, A−j) binom(B, j)`.
pub fn binomial_vanishing(a: i64, b: i64, c: i64) -> (Q, Q) {
    let sign = |j: i64| if j % 2 == 0 { Q::one() } else { -Q::one() };
    let mut lhs = Q::zero();
    let mut j = 0;
    while a - 2 * j >= 0 {
        lhs += sign(j) * binomial(c, j) * binomial(a - 2 * j + c - b - 1, a - 2 * j);
        j += 1;
    }
    let mut rhs = Q::zero();
    for j in 0..=a.max(-1) {
        rhs += sign(j) * binomial(c, a - j) * binomial(b, j);
    }
    (lhs, rhs)
}

/// Whether the identity predicts that both sides vanish.
pub fn vanishing_predicted(a: i64, b: i64, c: i64) -> bool {
    b >= 0 && c >= 0 && b + c < a
}

/// JSON report of a lift.
pub fn lift_report(input: &ShimuraInput, lift: &FracPowerSeries) -> Value {
    json!({
        "mPlus": input.m_plus,
        "weight": 2 * input.m_plus,
        "inputTruncation": input.trunc,
        "series": lift.to_json(),
    })
}
