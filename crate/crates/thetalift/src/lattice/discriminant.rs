use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::even::EvenLattice;
use crate::arith::{frac, Q};
use crate::error::{Error, Result};
use crate::linalg::{bilinear, smith_normal_form, IMat, QMat};

/// An element of a discriminant group, as coordinates reduced against the
/// Smith invariants.
pub type Element = Vec<u64>;

/// The finite quadratic module `M′/M` of an even lattice.
#[derive(Clone, Debug)]
pub struct DiscriminantForm {
    invariants: Vec<u64>,
    generators: Vec<Vec<Q>>,
    gen_gram: QMat,
    u_rows: IMat,
    gram: IMat,
    signature: (usize, usize),
}

impl DiscriminantForm {
    pub(crate) fn of_lattice(l: &EvenLattice) -> Self {
        let g = l.gram().clone();
        let n = g.len();
        let snf = smith_normal_form(&g);
        let mut invariants = Vec::new();
        let mut generators: Vec<Vec<Q>> = Vec::new();
        let mut u_rows = Vec::new();
        for i in 0..n {
            let d = snf.diag[i].abs();
            assert!(!d.is_zero(), "degenerate lattice");
            if d.is_one() {
                continue;
            }
            invariants.push(d.to_u64().expect("discriminant group too large"));
            let dq = Q::from_integer(d.clone());
            generators.push((0..n).map(|r| Q::from_integer(snf.v[r][i].clone()) / &dq).collect());
            // Sign of the diagonal entry is absorbed into the coordinate map.
            let sign = if snf.diag[i].is_negative() { -BigInt::one() } else { BigInt::one() };
            u_rows.push(snf.u[i].iter().map(|x| x * &sign).collect());
        }
        let gen_gram: QMat = generators
            .iter()
            .map(|a| generators.iter().map(|b| bilinear(&g, a, b)).collect())
            .collect();
        DiscriminantForm { invariants, generators, gen_gram, u_rows, gram: g, signature: l.signature() }
    }

    /// Orders of the cyclic factors (all > 1).
    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }

    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    /// `b⁺ − b⁻ mod 8` in `0..8`.
    pub fn signature_mod8(&self) -> i64 {
        (self.signature.0 as i64 - self.signature.1 as i64).rem_euclid(8)
    }

    pub fn zero(&self) -> Element {
        vec![0; self.invariants.len()]
    }

    /// The element with the given mixed-radix index (first coordinate most
    /// significant).
    pub fn element_at(&self, mut idx: u64) -> Element {
        let mut e = vec![0; self.invariants.len()];
        for i in (0..self.invariants.len()).rev() {
            e[i] = idx % self.invariants[i];
            idx /= self.invariants[i];
        }
        e
    }

    pub fn index_of(&self, e: &Element) -> u64 {
        e.iter().zip(&self.invariants).fold(0, |acc, (a, d)| acc * d + a)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order()).map(|i| self.element_at(i))
    }

    pub fn is_element(&self, e: &Element) -> bool {
        e.len() == self.invariants.len() && e.iter().zip(&self.invariants).all(|(a, d)| a < d)
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        a.iter()
            .zip(b)
            .zip(&self.invariants)
            .map(|((x, y), d)| (x + y) % d)
            .collect()
    }

    pub fn neg(&self, a: &Element) -> Element {
        a.iter().zip(&self.invariants).map(|(x, d)| (d - x) % d).collect()
    }

    pub fn scale(&self, k: i64, a: &Element) -> Element {
        a.iter()
            .zip(&self.invariants)
            .map(|(x, d)| ((*x as i128 * k as i128).rem_euclid(*d as i128)) as u64)
            .collect()
    }

    /// Exact norm `λ²` of the standard representative `Σ aᵢ gᵢ`.
    fn rep_norm(&self, a: &Element) -> Q {
        let mut s = Q::zero();
        for (i, ai) in a.iter().enumerate() {
            if *ai == 0 {
                continue;
            }
            for (j, aj) in a.iter().enumerate() {
                if *aj != 0 {
                    s += &self.gen_gram[i][j] * Q::from_integer(BigInt::from(ai * aj));
                }
            }
        }
        s
    }

    /// `q(γ) = γ²/2 mod 1` in `[0, 1)`.
    pub fn q(&self, a: &Element) -> Q {
        frac(&(self.rep_norm(a) / Q::from_integer(BigInt::from(2))))
    }

    /// `(γ, δ) mod 1` in `[0, 1)`.
    pub fn bilinear(&self, a: &Element, b: &Element) -> Q {
        let mut s = Q::zero();
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                if *ai != 0 && *bj != 0 {
                    s += &self.gen_gram[i][j] * Q::from_integer(BigInt::from(ai * bj));
                }
            }
        }
        frac(&s)
    }

    /// A dual-lattice vector representing the class.
    pub fn representative(&self, a: &Element) -> Vec<Q> {
        let n = self.gram.len();
        let mut v = vec![Q::zero(); n];
        for (i, ai) in a.iter().enumerate() {
            if *ai == 0 {
                continue;
            }
            let c = Q::from_integer(BigInt::from(*ai));
            for (r, x) in v.iter_mut().enumerate() {
                *x += &c * &self.generators[i][r];
            }
        }
        v
    }

    /// The class of a dual-lattice vector given in lattice coordinates.
    pub fn class_of(&self, v: &[Q]) -> Result<Element> {
        let n = self.gram.len();
        if v.len() != n {
            return Err(Error::Invalid("vector dimension does not match the lattice".into()));
        }
        let mut x = Vec::with_capacity(n);
        for row in &self.gram {
            let s = row
                .iter()
                .zip(v)
                .fold(Q::zero(), |acc, (g, c)| acc + Q::from_integer(g.clone()) * c);
            if !s.is_integer() {
                return Err(Error::Invalid("vector is not in the dual lattice".into()));
            }
            x.push(s.to_integer());
        }
        Ok(self
            .u_rows
            .iter()
            .zip(&self.invariants)
            .map(|(u, d)| {
                let s = u.iter().zip(&x).fold(BigInt::zero(), |acc, (a, b)| acc + a * b);
                s.mod_floor(&BigInt::from(*d)).to_u64().unwrap()
            })
            .collect())
    }

    /// Smallest `N > 0` with `N·q(γ) ∈ ℤ` for every `γ`.
    pub fn level(&self) -> u64 {
        let mut n: u64 = 1;
        for i in 0..self.invariants.len() {
            let mut e = vec![0; self.invariants.len()];
            e[i] = 1;
            n = n.lcm(&self.q(&e).denom().to_u64().unwrap());
            for j in 0..i {
                n = n.lcm(&frac(&self.gen_gram[i][j]).denom().to_u64().unwrap());
            }
        }
        n
    }

    /// Elements of exact order dividing 2 (those with `γ = −γ`).
    pub fn two_torsion(&self) -> Vec<Element> {
        self.elements().filter(|e| self.neg(e) == *e).collect()
    }

    pub fn element_label(e: &Element) -> String {
        e.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::lattice::constructors::*;

    #[test]
    fn a1_and_unimodular_forms() {
        let d = a_n(1).discriminant_form();
        assert_eq!(d.order(), 2);
        assert_eq!(d.q(&vec![1]), q(1, 4));
        assert_eq!(e8().discriminant_form().order(), 1);
        let d = rescale(&a_n(1), -1).discriminant_form();
        assert_eq!(d.q(&vec![1]), q(3, 4));
    }

    #[test]
    fn even_part_of_odd_unimodular_2_10() {
        let l = odd_unimodular_even_part(2, 10);
        assert_eq!(l.signature(), (2, 10));
        let d = l.discriminant_form();
        assert_eq!(d.invariants(), &[2, 2]);
        let halves: Vec<_> = d.elements().filter(|e| d.q(e) == q(1, 2)).collect();
        assert_eq!(halves.len(), 1);
        assert_eq!(d.elements().filter(|e| d.q(e).is_zero()).count(), 3);
    }

    #[test]
    fn class_of_inverts_representative() {
        let l = direct_sum(&a_n(2), &d_n(4));
        let d = l.discriminant_form();
        assert_eq!(d.order(), 12);
        for e in d.elements() {
            assert_eq!(d.class_of(&d.representative(&e)).unwrap(), e);
            assert_eq!(d.q(&d.neg(&e)), d.q(&e));
            for f in d.elements() {
                let lhs = d.bilinear(&e, &f);
                let rhs = frac(&(d.q(&d.add(&e, &f)) - d.q(&e) - d.q(&f)));
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(d.level(), 6);
    }
}
