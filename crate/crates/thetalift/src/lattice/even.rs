use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::discriminant::{DiscriminantForm, Element};
use crate::arith::{lcm_denominators, Q};
use crate::enumerate::ShortVectors;
use crate::error::{Error, Result};
use crate::linalg::{bilinear, det_int, inertia, inverse_q, to_qmat, IMat, QMat};
use crate::qseries::FracPowerSeries;

/// An even lattice: a nondegenerate symmetric integer Gram matrix with even
/// diagonal, plus its signature.
#[derive(Clone)]
pub struct EvenLattice {
    name: String,
    gram: IMat,
    signature: (usize, usize),
    enumerator: OnceLock<Arc<ShortVectors>>,
}

/// A vector in `L ⊗ ℚ` given by rational coordinates in the lattice basis,
/// with its norm `v²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeVector {
    pub coords: Vec<Q>,
    pub norm: Q,
}

impl fmt::Debug for EvenLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EvenLattice")
            .field("name", &self.name)
            .field("signature", &self.signature)
            .field("gram", &self.gram)
            .finish()
    }
}

impl PartialEq for EvenLattice {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram
    }
}

impl EvenLattice {
    pub fn new(name: impl Into<String>, gram: Vec<Vec<i64>>) -> Result<Self> {
        Self::from_gram(name, crate::linalg::to_imat(&gram))
    }

    pub fn from_gram(name: impl Into<String>, gram: IMat) -> Result<Self> {
        let n = gram.len();
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Invalid("Gram matrix must be square".into()));
            }
            if row[i].is_odd() {
                return Err(Error::Invalid(format!("diagonal entry {i} is odd; lattice is not even")));
            }
            for j in 0..i {
                if row[j] != gram[j][i] {
                    return Err(Error::Invalid("Gram matrix must be symmetric".into()));
                }
            }
        }
        let signature = inertia(&to_qmat(&gram))?;
        Ok(EvenLattice { name: name.into(), gram, signature, enumerator: OnceLock::new() })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &IMat {
        &self.gram
    }

    pub fn det(&self) -> BigInt {
        det_int(&self.gram)
    }

    /// `(b⁺, b⁻)`.
    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature.1 == 0
    }

    pub fn is_negative_definite(&self) -> bool {
        self.signature.0 == 0
    }

    pub fn inner(&self, x: &[Q], y: &[Q]) -> Q {
        bilinear(&self.gram, x, y)
    }

    pub fn norm(&self, x: &[Q]) -> Q {
        self.inner(x, x)
    }

    /// `G⁻¹`, whose columns are the dual basis.
    pub fn inverse_gram(&self) -> QMat {
        inverse_q(&to_qmat(&self.gram)).expect("nondegenerate Gram matrix")
    }

    /// Whether `v` pairs integrally with every basis vector.
    pub fn is_dual_vector(&self, v: &[Q]) -> bool {
        self.gram.iter().all(|row| {
            row.iter()
                .zip(v)
                .fold(Q::zero(), |acc, (g, x)| acc + Q::from_integer(g.clone()) * x)
                .is_integer()
        })
    }

    /// Whether `v` has integer coordinates.
    pub fn contains(&self, v: &[Q]) -> bool {
        v.iter().all(Q::is_integer)
    }

    pub fn discriminant_form(&self) -> DiscriminantForm {
        DiscriminantForm::of_lattice(self)
    }

    /// Milgram's formula in squared form with a numerical sign check.
    pub fn milgram_check(&self) -> bool {
        crate::arith::milgram_holds(&self.discriminant_form())
    }

    fn shortvectors(&self) -> Result<Arc<ShortVectors>> {
        let sign = self.definite_sign()?;
        Ok(self
            .enumerator
            .get_or_init(|| {
                let a: IMat = self
                    .gram
                    .iter()
                    .map(|r| r.iter().map(|x| x * BigInt::from(sign)).collect())
                    .collect();
                Arc::new(ShortVectors::new(&a))
            })
            .clone())
    }

    fn definite_sign(&self) -> Result<i64> {
        if self.is_positive_definite() {
            Ok(1)
        } else if self.is_negative_definite() {
            Ok(-1)
        } else {
            Err(Error::Indefinite)
        }
    }

    fn coset_data(&self, coset: &[Q]) -> Result<(BigInt, Vec<BigInt>)> {
        if coset.len() != self.rank() {
            return Err(Error::Invalid(format!(
                "coset vector has {} coordinates, lattice has rank {}",
                coset.len(),
                self.rank()
            )));
        }
        let den = lcm_denominators(coset);
        let dq = Q::from_integer(den.clone());
        let res = coset
            .iter()
            .map(|c| (c * &dq).to_integer().mod_floor(&den))
            .collect();
        Ok((den, res))
    }

    /// All `v ∈ coset + L` with `|v²| ≤ 2·bound`, sorted by `|v²|` and then
    /// by coordinates.
    pub fn enumerate_short(&self, coset: &[Q], bound: &Q) -> Result<Vec<LatticeVector>> {
        let sign = self.definite_sign()?;
        if bound.is_negative() {
            return Ok(Vec::new());
        }
        let sv = self.shortvectors()?;
        let (den, res) = self.coset_data(coset)?;
        let den2 = Q::from_integer(&den * &den);
        let b = (bound * Q::from_integer(BigInt::from(2)) * &den2).floor().to_integer();
        let dq = Q::from_integer(den.clone());
        Ok(sv
            .collect(&den, &res, &b)?
            .into_iter()
            .map(|(y, nrm)| LatticeVector {
                coords: y.iter().map(|&c| Q::from_integer(BigInt::from(c)) / &dq).collect(),
                norm: Q::from_integer(BigInt::from(sign * nrm)) / &den2,
            })
            .collect())
    }

    /// Number of vectors of `coset + L` of each absolute norm `|v²| ≤ 2·bound`.
    pub fn norm_counts(&self, coset: &[Q], bound: &Q) -> Result<Vec<(Q, u64)>> {
        self.definite_sign()?;
        if bound.is_negative() {
            return Ok(Vec::new());
        }
        let sv = self.shortvectors()?;
        let (den, res) = self.coset_data(coset)?;
        let den2 = Q::from_integer(&den * &den);
        let b = (bound * Q::from_integer(BigInt::from(2)) * &den2).floor().to_integer();
        Ok(sv
            .count_by_norm(&den, &res, &b)?
            .into_iter()
            .map(|(nrm, c)| (Q::from_integer(BigInt::from(nrm)) / &den2, c))
            .collect())
    }

    /// `Σ_{v ∈ coset + L} q^{|v²|/2}`, truncated at `prec`.
    pub fn theta_series(&self, coset: &[Q], prec: &Q) -> Result<FracPowerSeries> {
        let counts = self.norm_counts(coset, prec)?;
        let two = Q::from_integer(BigInt::from(2));
        let terms = counts
            .into_iter()
            .map(|(nrm, c)| (nrm / &two, Q::from_integer(BigInt::from(c))))
            .filter(|(e, _)| e < prec);
        Ok(FracPowerSeries::from_terms(terms, Some(prec.clone())))
    }

    /// Theta series of every coset `L + γ`, `γ ∈ L′/L`, truncated at `prec`.
    pub fn class_theta_series(&self, prec: &Q) -> Result<Vec<(Element, FracPowerSeries)>> {
        let d = self.discriminant_form();
        d.elements()
            .map(|g| {
                let rep = d.representative(&g);
                self.theta_series(&rep, prec).map(|t| (g, t))
            })
            .collect()
    }

    /// All vectors of `L′` with `|v²| ≤ 2·bound`, tagged with their class.
    pub fn dual_vectors(&self, bound: &Q) -> Result<Vec<(Element, LatticeVector)>> {
        let d = self.discriminant_form();
        let mut out = Vec::new();
        for g in d.elements() {
            let rep = d.representative(&g);
            for v in self.enumerate_short(&rep, bound)? {
                out.push((g.clone(), v));
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let gram: Vec<Vec<i64>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().expect("Gram entry fits i64")).collect())
            .collect();
        json!({"name": self.name, "gram": gram})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let name = v.get("name").and_then(Value::as_str).unwrap_or("lattice");
        let rows = v
            .get("gram")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("lattice needs a gram array".into()))?;
        let mut gram = Vec::new();
        for r in rows {
            let row = r
                .as_array()
                .ok_or_else(|| Error::Parse("gram rows must be arrays".into()))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| Error::Parse("gram entries must be integers".into())))
                .collect::<Result<Vec<i64>>>()?;
            gram.push(row);
        }
        let l = Self::new(name, gram)?;
        if l.det().is_zero() {
            return Err(Error::Singular);
        }
        Ok(l)
    }

    /// Unit vector `e_i` as rational coordinates.
    pub fn basis_vector(&self, i: usize) -> Vec<Q> {
        (0..self.rank()).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, q};
    use crate::lattice::constructors::*;

    #[test]
    fn a1_coset_vectors() {
        let a1 = a_n(1);
        let v = a1.enumerate_short(&[q(1, 2)], &q(1, 4)).unwrap();
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(|x| x.norm == q(1, 2)));
        let t = a1.theta_series(&[int(0)], &int(10)).unwrap();
        for n in 0..10i64 {
            let expected = match n {
                0 => 1,
                1 | 4 | 9 => 2,
                _ => 0,
            };
            assert_eq!(t.coefficient_int(n).unwrap(), int(expected));
        }
    }

    #[test]
    fn rejects_bad_gram_and_indefinite_enumeration() {
        assert!(EvenLattice::new("odd", vec![vec![1]]).is_err());
        assert!(EvenLattice::new("asym", vec![vec![2, 1], vec![0, 2]]).is_err());
        let u = hyperbolic_plane(1);
        assert_eq!(u.enumerate_short(&[int(0), int(0)], &int(1)), Err(Error::Indefinite));
    }

    #[test]
    fn zero_bound_gives_origin_only() {
        let v = e8().enumerate_short(&vec![int(0); 8], &int(0)).unwrap();
        assert_eq!(v.len(), 1);
        assert!(v[0].coords.iter().all(Zero::is_zero));
    }
}
