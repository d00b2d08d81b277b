use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{frac, Q};
use crate::error::{Error, Result};
use crate::lattice::{DiscriminantForm, Element, EvenLattice};
use crate::linalg::{gcd_combination, hnf_rows, integer_kernel, inverse_q, to_qmat, IMat, QMat};

/// A primitive norm 0 vector `z` of `M` with a dual vector `z′`,
/// `(z, z′) = 1`, and the lattice `K = (M ∩ z^⊥)/ℤz` realized inside
/// `z^⊥ ∩ z′^⊥`.
///
/// Every `v ∈ M ⊗ ℚ` decomposes as `v = k + a·z′ + b·z` with `k ∈ K ⊗ ℚ`,
/// `a = (v, z)` and `b = (v, z′) − a·z′²`.
#[derive(Clone, Debug)]
pub struct CuspFrame {
    lattice: EvenLattice,
    z: Vec<Q>,
    zprime: Vec<Q>,
    zprime_norm: Q,
    level: BigInt,
    gz: Vec<BigInt>,
    shift: Vec<BigInt>,
    k: EvenLattice,
    kbasis: Vec<Vec<Q>>,
    k_gram_inv: QMat,
    m_disc: DiscriminantForm,
    k_disc: DiscriminantForm,
}

impl CuspFrame {
    pub fn new(m: &EvenLattice, z: &[i64], zprime: Option<&[Q]>) -> Result<Self> {
        let n = m.rank();
        if z.len() != n {
            return Err(Error::Invalid(format!("z has {} coordinates, lattice has rank {n}", z.len())));
        }
        let zi: Vec<BigInt> = z.iter().map(|&x| BigInt::from(x)).collect();
        let (g, coef) = gcd_combination(&zi);
        if g.is_zero() {
            return Err(Error::Invalid("z must be nonzero".into()));
        }
        if !g.is_one() {
            return Err(Error::Invalid("z is not primitive".into()));
        }
        let zq: Vec<Q> = zi.iter().map(|x| Q::from_integer(x.clone())).collect();
        if !m.norm(&zq).is_zero() {
            return Err(Error::Invalid("z does not have norm 0".into()));
        }
        let gram = m.gram();
        let gz: Vec<BigInt> = gram
            .iter()
            .map(|row| row.iter().zip(&zi).fold(BigInt::zero(), |acc, (a, b)| acc + a * b))
            .collect();
        let (level, shift) = gcd_combination(&gz);
        let zprime: Vec<Q> = match zprime {
            Some(zp) => {
                if zp.len() != n {
                    return Err(Error::Invalid("z′ has the wrong number of coordinates".into()));
                }
                if !m.is_dual_vector(zp) {
                    return Err(Error::Invalid("z′ is not in the dual lattice".into()));
                }
                if m.inner(&zq, zp) != Q::one() {
                    return Err(Error::Invalid("(z, z′) ≠ 1".into()));
                }
                zp.to_vec()
            }
            None => {
                let e: Vec<Q> = coef.iter().map(|x| Q::from_integer(x.clone())).collect();
                let ginv = m.inverse_gram();
                ginv.iter()
                    .map(|row| row.iter().zip(&e).fold(Q::zero(), |acc, (a, b)| acc + a * b))
                    .collect()
            }
        };
        let zprime_norm = m.norm(&zprime);

        // L = M ∩ z^⊥, then K = π(L) with π(l) = l − (l, z′) z.
        let lbasis = integer_kernel(&vec![gz.clone()], n);
        let mut images: IMat = Vec::new();
        for l in &lbasis {
            let lq: Vec<Q> = l.iter().map(|x| Q::from_integer(x.clone())).collect();
            let c = m.inner(&lq, &zprime);
            debug_assert!(c.is_integer());
            let c = c.to_integer();
            images.push(l.iter().zip(&zi).map(|(a, b)| a - &c * b).collect());
        }
        let (kb, _, _) = hnf_rows(&images);
        if kb.len() + 2 != n {
            return Err(Error::Invalid("could not split off a hyperbolic plane at z".into()));
        }
        let kbasis: Vec<Vec<Q>> = kb
            .iter()
            .map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect())
            .collect();
        let kgram: Vec<Vec<BigInt>> = kbasis
            .iter()
            .map(|a| kbasis.iter().map(|b| m.inner(a, b).to_integer()).collect())
            .collect();
        let k = EvenLattice::from_gram("K", kgram)?;
        let k_gram_inv = inverse_q(&to_qmat(k.gram())).ok_or(Error::Singular)?;
        let m_disc = m.discriminant_form();
        let k_disc = k.discriminant_form();
        Ok(CuspFrame {
            lattice: m.clone(),
            z: zq,
            zprime,
            zprime_norm,
            level,
            gz,
            shift,
            k,
            kbasis,
            k_gram_inv,
            m_disc,
            k_disc,
        })
    }

    pub fn lattice(&self) -> &EvenLattice {
        &self.lattice
    }

    pub fn z(&self) -> &[Q] {
        &self.z
    }

    pub fn zprime(&self) -> &[Q] {
        &self.zprime
    }

    pub fn zprime_norm(&self) -> &Q {
        &self.zprime_norm
    }

    /// The smallest positive value of `(z, M)`.
    pub fn level(&self) -> &BigInt {
        &self.level
    }

    pub fn k(&self) -> &EvenLattice {
        &self.k
    }

    /// Basis of `K`, each vector written in the coordinates of `M`.
    pub fn k_basis(&self) -> &[Vec<Q>] {
        &self.kbasis
    }

    pub fn m_disc(&self) -> &DiscriminantForm {
        &self.m_disc
    }

    pub fn k_disc(&self) -> &DiscriminantForm {
        &self.k_disc
    }

    /// `K`-coordinates to `M`-coordinates.
    pub fn k_to_m(&self, kc: &[Q]) -> Vec<Q> {
        let n = self.lattice.rank();
        let mut v = vec![Q::zero(); n];
        for (c, b) in kc.iter().zip(&self.kbasis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        v
    }

    /// Coordinates in the `K` basis of a vector of `K ⊗ ℚ` given in `M`.
    pub fn m_to_k(&self, v: &[Q]) -> Vec<Q> {
        let pair: Vec<Q> = self.kbasis.iter().map(|b| self.lattice.inner(b, v)).collect();
        self.k_gram_inv
            .iter()
            .map(|row| row.iter().zip(&pair).fold(Q::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    /// `v ↦ (k, a, b)` with `k` in `K`-coordinates.
    pub fn decompose(&self, v: &[Q]) -> (Vec<Q>, Q, Q) {
        let a = self.lattice.inner(v, &self.z);
        let b = self.lattice.inner(v, &self.zprime) - &a * &self.zprime_norm;
        let kpart: Vec<Q> = v
            .iter()
            .zip(&self.zprime)
            .zip(&self.z)
            .map(|((x, zp), z)| x - &a * zp - &b * z)
            .collect();
        (self.m_to_k(&kpart), a, b)
    }

    /// Inverse of [`decompose`](Self::decompose).
    pub fn compose(&self, kc: &[Q], a: &Q, b: &Q) -> Vec<Q> {
        let mut v = self.k_to_m(kc);
        for ((x, zp), z) in v.iter_mut().zip(&self.zprime).zip(&self.z) {
            *x += a * zp + b * z;
        }
        v
    }

    /// The class in `K′/K` of `δ|L`, or `None` when `δ` does not restrict to
    /// `L` (that is, `(δ, z) ≢ 0 mod N` for every representative).
    pub fn restrict_class(&self, delta: &Element) -> Result<Option<Element>> {
        let rep = self.m_disc.representative(delta);
        let c = self.lattice.inner(&rep, &self.z);
        debug_assert!(c.is_integer());
        let c = c.to_integer();
        if !c.is_multiple_of(&self.level) {
            return Ok(None);
        }
        let t = c / &self.level;
        let moved: Vec<Q> = rep
            .iter()
            .zip(&self.shift)
            .map(|(x, s)| x - Q::from_integer(&t * s))
            .collect();
        let b = self.lattice.inner(&moved, &self.zprime);
        let kpart: Vec<Q> = moved.iter().zip(&self.z).map(|(x, z)| x - &b * z).collect();
        self.k_disc.class_of(&self.m_to_k(&kpart)).map(Some)
    }

    /// The `b` (unique mod `1/N`) with `v + b·z ∈ M′`, if one exists.
    pub fn dual_offset(&self, v: &[Q]) -> Option<Q> {
        let gv: Vec<Q> = self
            .lattice
            .gram()
            .iter()
            .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (g, x)| acc + Q::from_integer(g.clone()) * x))
            .collect();
        let b = -gv
            .iter()
            .zip(&self.shift)
            .fold(Q::zero(), |acc, (x, u)| acc + x * Q::from_integer(u.clone()))
            / Q::from_integer(self.level.clone());
        let moved: Vec<Q> = v.iter().zip(&self.z).map(|(x, z)| x + &b * z).collect();
        self.lattice.is_dual_vector(&moved).then_some(b)
    }

    /// All classes `δ ∈ M′/M` with `δ|L = λ` for a vector `λ ∈ K′` (given in
    /// `K`-coordinates), paired with `(δ, z′)` reduced to `[0, 1)`.
    pub fn lifts(&self, lam: &[Q]) -> Result<Vec<(Element, Q)>> {
        let lm = self.k_to_m(lam);
        let b0 = self
            .dual_offset(&lm)
            .ok_or_else(|| Error::Invalid("vector is not in the dual of K".into()))?;
        let nn: u64 = (&self.level)
            .try_into()
            .map_err(|_| Error::Unsupported("level too large".into()))?;
        let mut out = Vec::with_capacity(nn as usize);
        for j in 0..nn {
            let b = &b0 + Q::new(BigInt::from(j), self.level.clone());
            let delta: Vec<Q> = lm.iter().zip(&self.z).map(|(x, z)| x + &b * z).collect();
            out.push((self.m_disc.class_of(&delta)?, frac(&b)));
        }
        Ok(out)
    }

    /// `(z, e_i)` for the basis vectors of `M`.
    pub fn z_pairings(&self) -> &[BigInt] {
        &self.gz
    }

    /// Solves for `K`-coordinates of `v` and reports whether `v` lies in
    /// `K ⊗ ℚ`.
    pub fn k_coordinates_checked(&self, v: &[Q]) -> Option<Vec<Q>> {
        let kc = self.m_to_k(v);
        (self.k_to_m(&kc) == v).then_some(kc)
    }

    /// Norm of a vector in `K`-coordinates.
    pub fn k_norm(&self, kc: &[Q]) -> Q {
        self.k.norm(kc)
    }
}
