use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{weyl_vector, Convention, CuspFrame, WeylVector};
use crate::arith::{int, rational_to_string, Q};
use crate::error::Result;
use crate::lattice::DiscriminantForm;
use crate::weilrep::VectorValuedForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReflectiveClass {
    FiniteIndex,
    VirtuallyAbelian,
    NoConclusion,
}

impl ReflectiveClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            ReflectiveClass::FiniteIndex => "finite index reflection group",
            ReflectiveClass::VirtuallyAbelian => "virtually abelian quotient",
            ReflectiveClass::NoConclusion => "no conclusion",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReflectiveReport {
    /// One message per vector type whose reflection does not preserve `M`.
    pub failures: Vec<String>,
    pub weyl: WeylVector,
    pub norm: Q,
    pub class: ReflectiveClass,
}

impl ReflectiveReport {
    pub fn reflections_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that every `λ ∈ M′` with `λ² < 0` and `c_λ(λ²/2) ≠ 0` defines a
/// reflection of `M`, then classifies by the norm of the Weyl vector.
///
/// Write such a `λ` as `g·λ₁` with `λ₁` primitive in `M′`. The reflection in
/// `λ` preserves `M` exactly when `s = 2/λ₁²` is an integer and `s·λ₁ ∈ M`,
/// so it depends only on the class `δ` of `λ₁` and on `n/g²`. Every such
/// type compatible with a nonzero coefficient is checked.
pub fn reflective_certificate(
    frame: &CuspFrame,
    f: &VectorValuedForm,
    witness: &[Q],
    convention: Convention,
) -> Result<ReflectiveReport> {
    let weyl = weyl_vector(frame, f, witness, convention)?;
    let disc = f.disc();
    let level = disc.level() as i64;
    let mut failures = Vec::new();
    for (gamma, n, _) in f.principal_part() {
        let limit = {
            let bound = -&n * int(level);
            let mut g: i64 = 1;
            while int((g + 1) * (g + 1)) <= bound {
                g += 1;
            }
            g
        };
        for g in 1..=limit {
            let gq = int(g);
            let n1 = &n / (&gq * &gq);
            for delta in disc.elements() {
                if disc.scale(g, &delta) != gamma || disc.q(&delta) != crate::arith::frac(&n1) {
                    continue;
                }
                let s = Q::from_integer(BigInt::from(1)) / &n1;
                let ok = s.is_integer() && {
                    let si = s.to_integer();
                    let si: i64 = (&si).try_into().unwrap_or(0);
                    si != 0 && disc.scale(si, &delta) == disc.zero()
                };
                if !ok {
                    failures.push(format!(
                        "vectors {}·λ₁ with λ₁ in class [{}] of norm {} (coefficient at q^{} of [{}])",
                        g,
                        DiscriminantForm::element_label(&delta),
                        rational_to_string(&(&n1 * int(2))),
                        rational_to_string(&n),
                        DiscriminantForm::element_label(&gamma)
                    ));
                }
            }
        }
    }
    let norm = weyl.norm();
    let class = if norm.is_positive() {
        ReflectiveClass::FiniteIndex
    } else if norm.is_zero() && !weyl.is_zero() {
        ReflectiveClass::VirtuallyAbelian
    } else {
        ReflectiveClass::NoConclusion
    };
    Ok(ReflectiveReport { failures, weyl, norm, class })
}
