use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith::{gauss_sum, Cyclotomic, Q};
use crate::lattice::{DiscriminantForm, Element};

type CMat = Vec<Vec<Cyclotomic>>;

/// Exact matrices of `ρ_M(T)`, `ρ_M(S)` and `Z = S²` on `ℂ[M′/M]`, indexed by
/// the element enumeration order of the discriminant form.
///
/// Column `γ` of a matrix is the image of `e_γ`. The scalar
/// `√i^{b⁻−b⁺}/√|D|` in `S` is realized exactly as `conj(G)/|D|`, where `G` is
/// the Gauss sum of `D`.
#[derive(Clone, Debug)]
pub struct WeilRepresentation {
    pub disc: DiscriminantForm,
    pub elements: Vec<Element>,
    pub t: Vec<Cyclotomic>,
    pub s: CMat,
    pub z: CMat,
    order: u64,
}

/// Outcome of [`WeilRepresentation::check_relations`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub s_squared_is_z: bool,
    pub st_cubed_is_z: bool,
    pub z_fourth_is_identity: bool,
    pub z_action: bool,
    pub s_symmetric: bool,
    pub unitary: bool,
}

impl RelationReport {
    pub fn all(&self) -> bool {
        self.s_squared_is_z
            && self.st_cubed_is_z
            && self.z_fourth_is_identity
            && self.z_action
            && self.s_symmetric
            && self.unitary
    }
}

fn mat_mul(a: &CMat, b: &CMat) -> CMat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = Cyclotomic::zero();
                    for k in 0..n {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            acc = acc.add(&a[i][k].mul(&b[k][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn diag(d: &[Cyclotomic]) -> CMat {
    let n = d.len();
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { d[i].clone() } else { Cyclotomic::zero() }).collect())
        .collect()
}

fn identity(n: usize) -> CMat {
    diag(&vec![Cyclotomic::one(); n])
}

impl WeilRepresentation {
    pub fn build(d: &DiscriminantForm) -> Self {
        let elements: Vec<Element> = d.elements().collect();
        let mut order: u64 = 8;
        for a in &elements {
            order = order.lcm(&d.q(a).denom().to_u64().unwrap());
            for b in &elements {
                order = order.lcm(&d.bilinear(a, b).denom().to_u64().unwrap());
            }
        }
        let size = Q::from_integer(BigInt::from(d.order()));
        let prefactor = gauss_sum(d).conj().scale(&(Q::from_integer(BigInt::from(1)) / size)).lift(order);
        let t: Vec<Cyclotomic> = elements.iter().map(|a| Cyclotomic::e(&d.q(a)).lift(order)).collect();
        let s: CMat = elements
            .iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| prefactor.mul(&Cyclotomic::e(&-d.bilinear(a, b))))
                    .collect()
            })
            .collect();
        let z = mat_mul(&s, &s);
        WeilRepresentation { disc: d.clone(), elements, t, s, z, order }
    }

    pub fn dimension(&self) -> usize {
        self.elements.len()
    }

    /// Verifies `S² = Z`, `(ST)³ = Z`, `Z⁴ = 1`, `Z e_γ = i^{b⁻−b⁺} e_{−γ}`,
    /// symmetry of `S` and unitarity, all by exact arithmetic.
    pub fn check_relations(&self) -> RelationReport {
        let n = self.dimension();
        let t = diag(&self.t);
        let st = mat_mul(&self.s, &t);
        let st3 = mat_mul(&mat_mul(&st, &st), &st);
        let z2 = mat_mul(&self.z, &self.z);
        let z4 = mat_mul(&z2, &z2);
        let (bp, bm) = self.disc.signature();
        let phase = Cyclotomic::e(&Q::new(BigInt::from(bm as i64 - bp as i64), BigInt::from(4)));
        let mut z_action = true;
        for (j, g) in self.elements.iter().enumerate() {
            let neg = self.disc.neg(g);
            for (i, h) in self.elements.iter().enumerate() {
                let expected = if *h == neg { phase.clone() } else { Cyclotomic::zero() };
                if self.z[i][j] != expected {
                    z_action = false;
                }
            }
        }
        let s_conj_t: CMat = (0..n).map(|i| (0..n).map(|j| self.s[j][i].conj()).collect()).collect();
        let unit = mat_mul(&self.s, &s_conj_t);
        let s_symmetric = (0..n).all(|i| (0..n).all(|j| self.s[i][j] == self.s[j][i]));
        RelationReport {
            s_squared_is_z: mat_mul(&self.s, &self.s) == self.z,
            st_cubed_is_z: st3 == self.z,
            z_fourth_is_identity: z4 == identity(n),
            z_action,
            s_symmetric,
            unitary: unit == identity(n),
        }
    }

    /// Field order in which all entries are expressed.
    pub fn field_order(&self) -> u64 {
        self.order
    }

    /// Whether every entry of `S` has absolute value `1/√|D|` (checked as
    /// `|S_{γδ}|² = 1/|D|`).
    pub fn s_entries_have_uniform_modulus(&self) -> bool {
        let target = Cyclotomic::rational(Q::new(BigInt::from(1), BigInt::from(self.disc.order())));
        self.s
            .iter()
            .flatten()
            .all(|x| !x.is_zero() && x.mul(&x.conj()) == target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, q};
    use crate::lattice::constructors::*;

    #[test]
    fn trivial_group_gives_scalar() {
        let rep = WeilRepresentation::build(&e8().discriminant_form());
        assert_eq!(rep.s[0][0], Cyclotomic::e(&int(0)));
        let rep = WeilRepresentation::build(&hyperbolic_plane(1).discriminant_form());
        assert!(rep.check_relations().all());
        let l = direct_sum(&rescale(&e8(), -1), &a_n(1));
        let rep = WeilRepresentation::build(&l.discriminant_form());
        assert!(rep.check_relations().all());
        let rep = WeilRepresentation::build(&rescale(&e8(), -1).discriminant_form());
        assert_eq!(rep.s[0][0], Cyclotomic::one());
    }

    #[test]
    fn a1_representation() {
        let rep = WeilRepresentation::build(&a_n(1).discriminant_form());
        assert!(rep.check_relations().all());
        assert!(rep.s_entries_have_uniform_modulus());
        assert!(rep.t[1] == Cyclotomic::e(&q(1, 4)));
        // Z e_0 = i^{-1} e_0 for signature (1,0).
        assert!(rep.z[0][0] == Cyclotomic::e(&q(-1, 4)));
    }
}
