use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::weyl::{phi_negdef_constant, theta_pairing};
use crate::arith::{int, rational_to_string, Q};
use crate::error::{Error, Result};
use crate::lattice::EvenLattice;
use crate::linalg::{gcd_combination, integer_kernel, inverse_q, to_qmat, QMat};
use crate::qseries::{zagier_g1, FracPowerSeries};
use crate::weilrep::VectorValuedForm;

/// Outcome of [`vector_system_check`].
#[derive(Clone, Debug)]
pub struct VectorSystemReport {
    pub holds: bool,
    pub index: Q,
    /// `Σ c_λ(λ²/2)·(λ, e_i)(λ, e_j)`.
    pub moments: QMat,
    /// `−2·index·(e_i, e_j)`.
    pub expected: QMat,
}

/// Checks `Σ_{λ∈K′} c_λ(λ²/2)(λ, μ)² = −2·index·μ²` for all `μ`, by comparing
/// the second moment matrix with the Gram matrix. Equality of the symmetric
/// matrices is the identity on the basis vectors and their pairwise sums.
pub fn vector_system_check(f: &VectorValuedForm) -> Result<VectorSystemReport> {
    let k = f.lattice();
    let index = phi_negdef_constant(f)? / int(24);
    let r = k.rank();
    let gk = to_qmat(k.gram());
    let mut moments = vec![vec![Q::zero(); r]; r];
    let two = int(2);
    for (g, lam) in k.dual_vectors(&f.pole_order())? {
        let c = f.coefficient(&g, &(&lam.norm / &two))?;
        if c.is_zero() {
            continue;
        }
        let pairs: Vec<Q> = gk
            .iter()
            .map(|row| row.iter().zip(&lam.coords).fold(Q::zero(), |acc, (a, b)| acc + a * b))
            .collect();
        for i in 0..r {
            for j in 0..r {
                moments[i][j] += &c * &pairs[i] * &pairs[j];
            }
        }
    }
    let expected: QMat = gk
        .iter()
        .map(|row| row.iter().map(|x| -&two * &index * x).collect())
        .collect();
    let mut holds = true;
    for i in 0..r {
        for j in i..r {
            let lhs = &moments[i][i] + &moments[j][j] + &two * &moments[i][j];
            let rhs = &expected[i][i] + &expected[j][j] + &two * &expected[i][j];
            let basis = moments[i][i] == expected[i][i];
            if lhs != rhs || !basis {
                holds = false;
            }
        }
    }
    Ok(VectorSystemReport { holds, index, moments, expected })
}

/// `(ρ, λ)` for a primitive `λ ∈ M` of norm 2 in the closure of the chamber,
/// as the constant term of `−Σ_j g_j · Σ_γ f_γ φ̄_{γ,j}` where `g_0, g_1` are
/// the components of the Zagier form on `A₁(−1)` and
/// `φ̄_{γ,j} = Σ q^{−v⊥²/2}` over `v ∈ M + γ` with `(v, λ) ≡ j mod 2`,
/// `v⊥ = v − (v, λ)λ/2`.
pub fn weyl_inner_product(f: &VectorValuedForm, lam: &[i64]) -> Result<Q> {
    let m = f.lattice();
    let n = m.rank();
    if lam.len() != n {
        return Err(Error::Invalid("vector dimension does not match the lattice".into()));
    }
    let li: Vec<BigInt> = lam.iter().map(|&x| BigInt::from(x)).collect();
    if !gcd_combination(&li).0.is_one() {
        return Err(Error::Invalid("λ must be primitive".into()));
    }
    let lq: Vec<Q> = li.iter().map(|x| Q::from_integer(x.clone())).collect();
    let norm = m.norm(&lq);
    if norm != int(2) {
        if norm.is_positive() && norm.is_integer() {
            return Err(Error::Unsupported(format!(
                "only λ² = 2 is supported, got λ² = {}",
                rational_to_string(&norm)
            )));
        }
        return Err(Error::Invalid(format!("λ² must be 2, got {}", rational_to_string(&norm))));
    }
    let gl: Vec<BigInt> = m
        .gram()
        .iter()
        .map(|row| row.iter().zip(&li).fold(BigInt::zero(), |acc, (a, b)| acc + a * b))
        .collect();
    let (g, u) = gcd_combination(&gl);
    let kernel = integer_kernel(&vec![gl.clone()], n);
    let basis: Vec<Vec<Q>> = kernel
        .iter()
        .map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect())
        .collect();
    let gram: Vec<Vec<BigInt>> = basis
        .iter()
        .map(|a| basis.iter().map(|b| m.inner(a, b).to_integer()).collect())
        .collect();
    let perp = EvenLattice::from_gram("perp", gram)?;
    if !perp.is_negative_definite() {
        return Err(Error::Invalid("λ^⊥ must be negative definite".into()));
    }
    let perp_inv = inverse_q(&to_qmat(perp.gram())).ok_or(Error::Singular)?;

    let pole = f.pole_order();
    let prec = &pole + Q::one();
    let disc = f.disc();
    let two = BigInt::from(2);
    let mut fj = [FracPowerSeries::exact_zero(), FracPowerSeries::exact_zero()];
    for (gamma, series) in f.components() {
        if series.is_zero() && series.is_exact() {
            continue;
        }
        let rep = disc.representative(gamma);
        let r = m.inner(&rep, &lq);
        debug_assert!(r.is_integer());
        let r = r.to_integer();
        for (j, slot) in fj.iter_mut().enumerate() {
            let mut t = BigInt::from(j as i64) - &r;
            if !t.is_multiple_of(&g) {
                t += &two;
                if !t.is_multiple_of(&g) {
                    continue;
                }
            }
            let steps = &t / &g;
            let v0: Vec<Q> = rep
                .iter()
                .zip(&u)
                .map(|(x, ui)| x + Q::from_integer(&steps * ui))
                .collect();
            let jp = m.inner(&v0, &lq);
            let vperp: Vec<Q> = v0.iter().zip(&lq).map(|(x, l)| x - &jp * l / int(2)).collect();
            let pairs: Vec<Q> = basis.iter().map(|b| m.inner(b, &vperp)).collect();
            let coords: Vec<Q> = perp_inv
                .iter()
                .map(|row| row.iter().zip(&pairs).fold(Q::zero(), |acc, (a, b)| acc + a * b))
                .collect();
            let theta = perp.theta_series(&coords, &prec)?;
            *slot = slot.add(&series.mul(&theta));
        }
    }
    let gprec = prec.ceil().to_integer().try_into().unwrap_or(1usize) + 1;
    let g1 = zagier_g1(gprec);
    let gdisc = g1.disc();
    let g0 = g1.component(&gdisc.zero());
    let g1c = g1.component(&gdisc.element_at(1));
    let total = g0.mul(&fj[0]).add(&g1c.mul(&fj[1]));
    Ok(-total.constant_term()?)
}

/// Outcome of [`congruence_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceReport {
    /// Constant term of `Θ̄_K · F`.
    pub constant: Q,
    /// Generator of the ideal `(K, K)`.
    pub ideal: BigInt,
    /// `ideal · constant`.
    pub product: Q,
    pub divisible: bool,
}

/// Computes the constant term of `Θ̄_K F` for a definite lattice `K`,
/// multiplies it by the generator `N` of `(K, K)` and tests divisibility of
/// the product by 24.
pub fn congruence_check(f: &VectorValuedForm) -> Result<CongruenceReport> {
    let k = f.lattice();
    let constant = if f.is_zero() && f.truncation().is_none() {
        Q::zero()
    } else {
        theta_pairing(f, &Q::one())?.constant_term()?
    };
    let ideal = k
        .gram()
        .iter()
        .flatten()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let ideal = if ideal.is_zero() { BigInt::one() } else { ideal };
    let product = Q::from_integer(ideal.clone()) * &constant;
    let divisible = (&product / int(24)).is_integer();
    Ok(CongruenceReport { constant, ideal, product, divisible })
}
