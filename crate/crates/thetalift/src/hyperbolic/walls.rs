use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::weyl::WeylVector;
use crate::arith::{lcm_denominators, rational_to_string, Q};
use crate::enumerate::ShortVectors;
use crate::error::{Error, Result};
use crate::linalg::{gcd_combination, inverse_q, to_qmat};
use crate::weilrep::VectorValuedForm;

fn pole_bound(f: &VectorValuedForm) -> Q {
    f.pole_order() * Q::from_integer(BigInt::from(2))
}

/// `ρ(W₁) − ρ(W₂) = −Σ c_λ(λ²/2)·λ` over the multiples `λ = xλ₀ ∈ M′` of
/// a wall vector with `(λ, W₁) > 0`, where `W₁` is the chamber containing
/// `side` and `W₂` its neighbour across `λ₀^⊥`.
pub fn wall_crossing_delta(f: &VectorValuedForm, wall: &[i64], side: &[Q]) -> Result<Vec<Q>> {
    let m = f.lattice();
    if wall.len() != m.rank() || side.len() != m.rank() {
        return Err(Error::Invalid("vector dimension does not match the lattice".into()));
    }
    let wi: Vec<BigInt> = wall.iter().map(|&x| BigInt::from(x)).collect();
    let (content, _) = gcd_combination(&wi);
    if !content.is_one() {
        return Err(Error::Invalid("wall vector must be primitive".into()));
    }
    let l0: Vec<Q> = wi.iter().map(|x| Q::from_integer(x.clone())).collect();
    let n0 = m.norm(&l0);
    if !n0.is_negative() {
        return Err(Error::Invalid(format!("wall vector has norm {} ≥ 0", rational_to_string(&n0))));
    }
    let orient = m.inner(&l0, side);
    if orient.is_zero() {
        return Err(Error::Invalid("the side vector lies on the wall".into()));
    }
    let sign = if orient.is_positive() { Q::one() } else { -Q::one() };
    let gl: Vec<BigInt> = m
        .gram()
        .iter()
        .map(|row| row.iter().zip(&wi).fold(BigInt::zero(), |acc, (a, b)| acc + a * b))
        .collect();
    let (g, _) = gcd_combination(&gl);
    let disc = f.disc();
    let pole = f.pole_order();
    let two = Q::from_integer(BigInt::from(2));
    let mut delta = vec![Q::zero(); m.rank()];
    let mut k = BigInt::one();
    loop {
        let x = Q::new(k.clone(), g.clone());
        let n = &x * &x * &n0 / &two;
        if -&n > pole {
            break;
        }
        let lam: Vec<Q> = l0.iter().map(|c| &sign * &x * c).collect();
        let c = f.coefficient(&disc.class_of(&lam)?, &n)?;
        if !c.is_zero() {
            for (d, l) in delta.iter_mut().zip(&lam) {
                *d -= &c * l;
            }
        }
        k += 1;
    }
    Ok(delta)
}

/// The vectors `λ ∈ M′` with `c_λ(λ²/2) ≠ 0`, `λ² < 0`, positive on the
/// chamber of `weyl` and negative on `v`, with their coefficients. These are
/// exactly the walls separating that chamber from `v`.
pub fn separating_walls(weyl: &WeylVector, f: &VectorValuedForm, v: &[Q]) -> Result<Vec<(Vec<Q>, Q)>> {
    let frame = weyl.frame();
    let m = frame.lattice();
    if f.lattice() != m {
        return Err(Error::Invalid("the form belongs to a different lattice".into()));
    }
    if v.len() != m.rank() {
        return Err(Error::Invalid("vector dimension does not match the lattice".into()));
    }
    let vv = m.norm(v);
    if !vv.is_positive() {
        return Err(Error::Invalid("the vector must have positive norm".into()));
    }
    let (vk, mv, _) = frame.decompose(v);
    if !mv.is_positive() {
        return Err(Error::Invalid("the vector lies in the opposite cone (its pairing with z is not positive)".into()));
    }
    let big_b = pole_bound(f);
    let k = frame.k();
    let r = k.rank();
    let gk = to_qmat(k.gram());
    let gk_inv = inverse_q(&gk).ok_or(Error::Singular)?;
    let w: Vec<Q> = gk
        .iter()
        .map(|row| row.iter().zip(&vk).fold(Q::zero(), |acc, (a, b)| acc + a * b))
        .collect();
    // Positive definite form (m_v λ_K − a v_K)ᵀ(−G⁻¹)(…) + a²v² in dual coordinates.
    let h: Vec<Vec<Q>> = gk_inv.iter().map(|row| row.iter().map(|x| -x).collect()).collect();
    let hw: Vec<Q> = h
        .iter()
        .map(|row| row.iter().zip(&w).fold(Q::zero(), |acc, (a, b)| acc + a * b))
        .collect();
    let whw = hw.iter().zip(&w).fold(Q::zero(), |acc, (a, b)| acc + a * b);
    let mut a = vec![vec![Q::zero(); r + 1]; r + 1];
    for i in 0..r {
        for j in 0..r {
            a[i][j] = &mv * &mv * &h[i][j];
        }
        a[i][r] = -&mv * &hw[i];
        a[r][i] = a[i][r].clone();
    }
    a[r][r] = whw + &vv;
    let den = lcm_denominators(a.iter().flatten());
    let dq = Q::from_integer(den.clone());
    let ia: Vec<Vec<BigInt>> = a.iter().map(|row| row.iter().map(|x| (x * &dq).to_integer()).collect()).collect();
    let bound = (&mv * &mv * &big_b * &dq).floor().to_integer();
    let sv = ShortVectors::new(&ia);
    let zeros = vec![BigInt::zero(); r + 1];
    let candidates = sv.collect(&BigInt::one(), &zeros, &bound)?;

    let level = Q::from_integer(frame.level().clone());
    let step = Q::one() / &level;
    let two = Q::from_integer(BigInt::from(2));
    let disc = f.disc();
    let mut out = Vec::new();
    for (y, _) in candidates {
        let av = Q::from_integer(BigInt::from(y[r]));
        if av.is_negative() {
            continue;
        }
        let x: Vec<Q> = y[..r].iter().map(|&c| Q::from_integer(BigInt::from(c))).collect();
        let lk: Vec<Q> = gk_inv
            .iter()
            .map(|row| row.iter().zip(&x).fold(Q::zero(), |acc, (p, q)| acc + p * q))
            .collect();
        let base = frame.compose(&lk, &av, &Q::zero());
        let Some(b0) = frame.dual_offset(&base) else { continue };
        let lk2 = k.norm(&lk);
        let pair0 = m.inner(&base, v);
        // b ≤ hi from (λ, v) ≤ 0.
        let hi = -&pair0 / &mv;
        let (lo, lo_strict, hi_norm) = if av.is_zero() {
            if !(lk2.is_negative() && -&lk2 <= big_b) {
                continue;
            }
            let positive_at_zero = k.inner(&lk, &weyl.witness).is_positive();
            (Q::zero(), !positive_at_zero, None)
        } else {
            let two_a = &two * &av;
            let rest = &lk2 + &av * &av * frame.zprime_norm();
            ((-&big_b - &rest) / &two_a, false, Some(-rest / &two_a))
        };
        // First admissible b on the grid b0 + ℤ/N at or above lo.
        let mut b = &b0 + ((&lo - &b0) / &step).ceil() * &step;
        if lo_strict && b == lo {
            b += &step;
        }
        while b <= hi && hi_norm.as_ref().is_none_or(|h| b < *h) {
            let lam = frame.compose(&lk, &av, &b);
            let n = m.norm(&lam) / &two;
            let c = f.coefficient(&disc.class_of(&lam)?, &n)?;
            if !c.is_zero() {
                if m.inner(&lam, v).is_zero() {
                    return Err(Error::Invalid("the vector lies on a wall".into()));
                }
                out.push((lam, c));
            }
            b += &step;
        }
    }
    out.sort();
    Ok(out)
}

/// Resolves the chamber of `v` by crossing every separating wall from the
/// chamber of `weyl`; returns its Weyl vector and `(ρ(W(v)), v)`.
pub fn phi_eval_hyperbolic(weyl: &WeylVector, f: &VectorValuedForm, v: &[Q]) -> Result<(WeylVector, Q)> {
    let mut rho = weyl.to_m();
    for (lam, c) in separating_walls(weyl, f, v)? {
        for (r, l) in rho.iter_mut().zip(&lam) {
            *r += &c * l;
        }
    }
    let m = weyl.frame().lattice();
    let value = m.inner(&rho, v);
    Ok((weyl.with_rho(&rho), value))
}

