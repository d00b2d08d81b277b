use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::CuspFrame;
use crate::arith::{int, rational_to_string, Q};
use crate::error::{Error, Result};
use crate::qseries::{bernoulli_poly, eisenstein, FracPowerSeries};
use crate::weilrep::{reduce_to_smaller, VectorValuedForm};

/// Treatment of the `λ = 0` terms in the `ρ_z` sum.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Convention {
    /// The `λ = 0` terms enter with half weight, `¼ Σ_{δ|L=0} c_δ(0) B₂((δ, z′))`.
    #[default]
    BoundaryIncluded,
    /// Only `λ` with `(λ, μ) > 0` contribute.
    BoundaryExcluded,
}

impl Convention {
    pub fn as_str(&self) -> &'static str {
        match self {
            Convention::BoundaryIncluded => "boundary-included",
            Convention::BoundaryExcluded => "boundary-excluded",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "boundary-included" => Ok(Convention::BoundaryIncluded),
            "boundary-excluded" => Ok(Convention::BoundaryExcluded),
            _ => Err(Error::Parse(format!("unknown convention {s:?}"))),
        }
    }
}

/// The Weyl vector `ρ = ρ_K + ρ_{z′}·z′ + ρ_z·z` of the chamber at the cusp
/// `z` singled out by the witness `μ ∈ K ⊗ ℚ`.
#[derive(Clone, Debug)]
pub struct WeylVector {
    /// `ρ_K` in the coordinates of the `K` basis.
    pub rho_k: Vec<Q>,
    pub rho_zprime: Q,
    pub rho_z: Q,
    pub witness: Vec<Q>,
    pub convention: Convention,
    frame: CuspFrame,
}

impl WeylVector {
    pub fn frame(&self) -> &CuspFrame {
        &self.frame
    }

    /// `ρ` in the coordinates of `M`.
    pub fn to_m(&self) -> Vec<Q> {
        self.frame.compose(&self.rho_k, &self.rho_zprime, &self.rho_z)
    }

    /// `ρ_K² + 2ρ_{z′}ρ_z + ρ_{z′}²z′²`.
    pub fn norm(&self) -> Q {
        self.frame.k().norm(&self.rho_k)
            + Q::from_integer(BigInt::from(2)) * &self.rho_zprime * &self.rho_z
            + &self.rho_zprime * &self.rho_zprime * self.frame.zprime_norm()
    }

    pub fn is_zero(&self) -> bool {
        self.rho_zprime.is_zero() && self.rho_z.is_zero() && self.rho_k.iter().all(Zero::is_zero)
    }

    pub(crate) fn with_rho(&self, m: &[Q]) -> WeylVector {
        let (k, a, b) = self.frame.decompose(m);
        WeylVector { rho_k: k, rho_zprime: a, rho_z: b, ..self.clone() }
    }

    pub fn to_json(&self) -> Value {
        let s = |v: &[Q]| v.iter().map(rational_to_string).collect::<Vec<_>>();
        json!({
            "rhoK": s(&self.rho_k),
            "rhoZprime": rational_to_string(&self.rho_zprime),
            "rhoZ": rational_to_string(&self.rho_z),
            "rho": s(&self.to_m()),
            "norm": rational_to_string(&self.norm()),
            "witness": s(&self.witness),
            "convention": self.convention.as_str(),
        })
    }
}

/// `Σ_γ f_γ · θ_{K+γ}` for a definite lattice `K`, where `θ` counts vectors
/// by `|λ²|/2`. The theta series are computed far enough to fix every
/// coefficient below `upto`.
pub(crate) fn theta_pairing(f: &VectorValuedForm, upto: &Q) -> Result<FracPowerSeries> {
    let k = f.lattice();
    if !k.is_negative_definite() && !k.is_positive_definite() {
        return Err(Error::Indefinite);
    }
    let prec = upto + f.pole_order();
    let mut acc = FracPowerSeries::exact_zero();
    for (g, theta) in k.class_theta_series(&prec)? {
        let fg = f.component(&g);
        if fg.is_zero() && fg.is_exact() {
            continue;
        }
        acc = acc.add(&fg.mul(&theta));
    }
    Ok(acc)
}

/// Constant term of `Θ̄_K · F_K · E₂` for a negative definite `K`.
pub fn phi_negdef_constant(f: &VectorValuedForm) -> Result<Q> {
    let k = f.lattice();
    if !k.is_negative_definite() {
        return Err(Error::Invalid("the lattice must be negative definite".into()));
    }
    let bm = k.signature().1 as i64;
    if f.weight() != &(Q::new(BigInt::from(-bm), BigInt::from(2)), Q::zero()) {
        return Err(Error::Invalid(format!(
            "weight must be (-{bm}/2, 0), got ({}, {})",
            rational_to_string(&f.weight().0),
            rational_to_string(&f.weight().1)
        )));
    }
    if f.is_zero() && f.truncation().is_none() {
        return Ok(Q::zero());
    }
    let one = Q::one();
    let pair = theta_pairing(f, &one)?;
    let e2 = eisenstein(2, &(f.pole_order() + &one))?;
    pair.mul(&e2).constant_term().map_err(|_| {
        Error::Precision(format!(
            "the form must be known beyond q^0; its pole order is {}",
            rational_to_string(&f.pole_order())
        ))
    })
}

/// Validates the form against a Lorentzian cusp frame and returns `b⁻`.
pub(crate) fn check_lorentzian(frame: &CuspFrame, f: &VectorValuedForm) -> Result<usize> {
    if frame.lattice() != f.lattice() {
        return Err(Error::Invalid("the frame belongs to a different lattice".into()));
    }
    let (bp, bm) = f.lattice().signature();
    if bp != 1 {
        return Err(Error::Invalid(format!("expected signature (1, b⁻), got ({bp}, {bm})")));
    }
    let expected = (Q::new(BigInt::from(1 - bm as i64), BigInt::from(2)), Q::zero());
    if f.weight() != &expected {
        return Err(Error::Invalid(format!(
            "weight must be ({}, 0), got ({}, {})",
            rational_to_string(&expected.0),
            rational_to_string(&f.weight().0),
            rational_to_string(&f.weight().1)
        )));
    }
    Ok(bm)
}

/// The Weyl vector of the chamber at the cusp `z` containing `z′ + εμ + Tz`
/// for small `ε > 0` and large `T`.
///
/// `ρ_{z′}` is `1/24` of [`phi_negdef_constant`] of the reduced form, and
///
/// * `ρ_K = ½ Σ_{(λ,μ)>0} Σ_{δ|L=λ} c_δ(λ²/2) (2(δ,z′) − 1) λ`,
/// * `ρ_z = −ρ_{z′}z′²/2 + ½ Σ_{(λ,μ)>0} Σ_{δ|L=λ} c_δ(λ²/2) B₂((δ,z′))`,
///
/// plus the `λ = 0` terms selected by `convention`, with `(δ, z′)` taken in
/// `[0, 1)`.
pub fn weyl_vector(
    frame: &CuspFrame,
    f: &VectorValuedForm,
    witness: &[Q],
    convention: Convention,
) -> Result<WeylVector> {
    check_lorentzian(frame, f)?;
    let k = frame.k();
    if witness.len() != k.rank() {
        return Err(Error::Invalid(format!("witness needs {} coordinates", k.rank())));
    }
    let fk = reduce_to_smaller(f, frame)?;
    let rho_zprime = phi_negdef_constant(&fk)? / int(24);
    let half = Q::new(BigInt::one(), BigInt::from(2));
    let quarter = Q::new(BigInt::one(), BigInt::from(4));
    let two = int(2);
    let pole = f.pole_order();
    let mut rho_k = vec![Q::zero(); k.rank()];
    let mut rho_z = -&rho_zprime * frame.zprime_norm() / &two;
    for (_, lam) in k.dual_vectors(&pole)? {
        let n = &lam.norm / &two;
        assert!(-&n <= pole, "enumeration returned a vector beyond the pole bound");
        let is_zero = lam.coords.iter().all(Zero::is_zero);
        let t = k.inner(&lam.coords, witness);
        for (delta, d) in frame.lifts(&lam.coords)? {
            let c = f.coefficient(&delta, &n)?;
            if c.is_zero() {
                continue;
            }
            let b2 = bernoulli_poly(2, &d);
            if is_zero {
                if convention == Convention::BoundaryIncluded {
                    rho_z += &quarter * &c * b2;
                }
                continue;
            }
            if t.is_zero() {
                return Err(Error::NonGeneric(format!(
                    "witness is orthogonal to the relevant vector ({})",
                    lam.coords.iter().map(rational_to_string).collect::<Vec<_>>().join(", ")
                )));
            }
            if t.is_positive() {
                let w = &half * &c * (&two * &d - Q::one());
                for (r, x) in rho_k.iter_mut().zip(&lam.coords) {
                    *r += &w * x;
                }
                rho_z += &half * &c * b2;
            }
        }
    }
    Ok(WeylVector {
        rho_k,
        rho_zprime,
        rho_z,
        witness: witness.to_vec(),
        convention,
        frame: frame.clone(),
    })
}
