//! Named lattices and the explicit forms used throughout the examples,
//! tests and command-line regressions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{int, parse_rational, q, Q};
use crate::error::{Error, Result};
use crate::hyperbolic::{Convention, CuspFrame};
use crate::products::ProductDatum;
use crate::lattice::{self, constructors, EvenLattice};
use crate::qseries::{delta, eisenstein, eta, FracPowerSeries};
use crate::weilrep::VectorValuedForm;

/// Resolves a lattice description such as `"E8"`, `"A1(-1)"`,
/// `"U+E8(-1)"`, `"II1,25"`, `"Leech(-1)"` or `"I1,19even"`.
///
/// Summands are separated by `+`; each may carry a trailing `(k)` that
/// rescales the form by `k`.
pub fn lattice(name: &str) -> Result<EvenLattice> {
    let parts: Vec<&str> = name.split('+').map(str::trim).collect();
    let mut acc: Option<EvenLattice> = None;
    for part in parts {
        let l = summand(part)?;
        acc = Some(match acc {
            None => l,
            Some(a) => constructors::direct_sum(&a, &l),
        });
    }
    let l = acc.ok_or_else(|| Error::Parse("empty lattice name".into()))?;
    Ok(l.with_name(name))
}

fn summand(s: &str) -> Result<EvenLattice> {
    let bad = || Error::Parse(format!("unknown lattice {s:?}"));
    let (base, scale) = match s.strip_suffix(')').and_then(|t| t.rsplit_once('(')) {
        Some((b, k)) => (b, k.trim().parse::<i64>().map_err(|_| bad())?),
        None => (s, 1),
    };
    if scale == 0 {
        return Err(bad());
    }
    let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
    let l = if base == "U" {
        return Ok(constructors::hyperbolic_plane(scale));
    } else if base == "E8" {
        constructors::e8()
    } else if base == "Leech" {
        constructors::leech()
    } else if let Some(n) = base.strip_prefix("II") {
        let (p, q) = n.split_once(',').ok_or_else(bad)?;
        even_unimodular(num(p)?, num(q)?)?
    } else if let Some(n) = base.strip_prefix('I').and_then(|t| t.strip_suffix("even")) {
        let (p, q) = n.split_once(',').ok_or_else(bad)?;
        constructors::odd_unimodular_even_part(num(p)?, num(q)?)
    } else if let Some(n) = base.strip_prefix('A') {
        let n = num(n)?;
        if n == 0 {
            return Err(bad());
        }
        constructors::a_n(n)
    } else if let Some(n) = base.strip_prefix('D') {
        let n = num(n)?;
        if n < 2 {
            return Err(bad());
        }
        constructors::d_n(n)
    } else {
        return Err(bad());
    };
    Ok(if scale == 1 { l } else { lattice::rescale(&l, scale) })
}

/// `II_{p,q}` as `U^{min} ⊕ E8(±1)^k`.
fn even_unimodular(p: usize, q: usize) -> Result<EvenLattice> {
    if (p as i64 - q as i64).rem_euclid(8) != 0 || p + q == 0 {
        return Err(Error::Invalid(format!("no even unimodular lattice of signature ({p},{q})")));
    }
    let h = p.min(q);
    let mut parts: Vec<EvenLattice> = (0..h).map(|_| constructors::hyperbolic_plane(1)).collect();
    let e = if q > p { lattice::rescale(&constructors::e8(), -1) } else { constructors::e8() };
    for _ in 0..(p.max(q) - h) / 8 {
        parts.push(e.clone());
    }
    let mut it = parts.into_iter();
    let first = it.next().expect("nonempty");
    Ok(it.fold(first, |a, b| constructors::direct_sum(&a, &b)))
}

fn unit_vector(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|j| i64::from(i == j)).collect()
}

/// `E₄^a · E₆^b / Δ^c`, truncated at `prec`.
pub fn eisenstein_quotient(a: i64, b: i64, c: i64, prec: &Q) -> Result<FracPowerSeries> {
    let work = prec + int(2 * c + 2);
    let mut f = FracPowerSeries::constant(Q::one());
    if a != 0 {
        f = f.mul(&eisenstein(4, &work)?.pow(a)?);
    }
    if b != 0 {
        f = f.mul(&eisenstein(6, &work)?.pow(b)?);
    }
    if c != 0 {
        f = f.mul(&delta(&work).pow(-c)?);
    }
    Ok(f.truncate(prec))
}

/// `1/Δ = q⁻¹ + 24 + 324q + …`.
pub fn inverse_delta(prec: &Q) -> FracPowerSeries {
    eisenstein_quotient(0, 0, 1, prec).expect("Δ is invertible")
}

/// A scalar form on a unimodular lattice of signature `(1, b⁻)` with weight
/// `1/2 − b⁻/2`.
pub fn lorentzian_scalar_form(m: EvenLattice, f: FracPowerSeries) -> VectorValuedForm {
    let bm = m.signature().1 as i64;
    VectorValuedForm::scalar(m, (Q::new(BigInt::from(1 - bm), BigInt::from(2)), Q::zero()), f)
}

/// A Lorentzian lattice `U ⊕ K`, its scalar-valued input form and the
/// cusp frame at the first basis vector of `U`.
#[derive(Clone, Debug)]
pub struct HyperbolicExample {
    pub form: VectorValuedForm,
    pub frame: CuspFrame,
}

impl HyperbolicExample {
    fn new(m: EvenLattice, form: VectorValuedForm) -> Result<Self> {
        let frame = CuspFrame::new(&m, &unit_vector(m.rank(), 0), None)?;
        Ok(HyperbolicExample { form, frame })
    }

    /// A witness in `K ⊗ ℚ` whose pairings with the `K` basis are
    /// `−1, −1000, −1000², …`, so no short dual vector is orthogonal to it.
    pub fn generic_witness(&self) -> Vec<Q> {
        let r = self.frame.k().rank();
        let pairs: Vec<Q> = (0..r).map(|i| -Q::from_integer(BigInt::from(1000).pow(i as u32))).collect();
        self.frame
            .k()
            .inverse_gram()
            .iter()
            .map(|row| row.iter().zip(&pairs).fold(Q::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }
}

/// `II₁,₉ = U ⊕ E₈(−1)` with `F = E₄²/Δ`.
pub fn ii_1_9_e4sq(prec: &Q) -> Result<HyperbolicExample> {
    let m = lattice("U+E8(-1)")?;
    let f = lorentzian_scalar_form(m.clone(), eisenstein_quotient(2, 0, 1, prec)?);
    HyperbolicExample::new(m, f)
}

/// `II₁,₁₇ = U ⊕ E₈(−1)²` with the weight `−8` form `E₄/Δ`.
pub fn ii_1_17_e4(prec: &Q) -> Result<HyperbolicExample> {
    let m = lattice("U+E8(-1)+E8(-1)")?;
    let f = lorentzian_scalar_form(m.clone(), eisenstein_quotient(1, 0, 1, prec)?);
    HyperbolicExample::new(m, f)
}

/// `II₁,₂₅ = U ⊕ Λ(−1)` with `F = 1/Δ`.
pub fn ii_1_25_leech(prec: &Q) -> Result<HyperbolicExample> {
    let m = constructors::direct_sum(&constructors::hyperbolic_plane(1), &lattice::rescale(&constructors::leech(), -1))
        .with_name("U+Leech(-1)");
    let f = lorentzian_scalar_form(m.clone(), inverse_delta(prec));
    HyperbolicExample::new(m, f)
}

/// `II₁,₂₅ = U ⊕ E₈(−1)³` with `F = 1/Δ`.
pub fn ii_1_25_e8cubed(prec: &Q) -> Result<HyperbolicExample> {
    let m = lattice("U+E8(-1)+E8(-1)+E8(-1)")?;
    let f = lorentzian_scalar_form(m.clone(), inverse_delta(prec));
    HyperbolicExample::new(m, f)
}

/// `II₁,₁` with `F = 1`.
pub fn ii_1_1_constant() -> Result<HyperbolicExample> {
    let m = constructors::hyperbolic_plane(1);
    let f = lorentzian_scalar_form(m.clone(), FracPowerSeries::constant(Q::one()));
    HyperbolicExample::new(m, f)
}

/// The even sublattice of `I₁,₁₉`, modelled as `U ⊕ D₁₈(−1)`, with
/// `F = Θ_{D₆}/Δ` matched componentwise by the value of `q(γ)`.
pub fn i_1_19_theta_d6(prec: &Q) -> Result<HyperbolicExample> {
    let m = lattice("U+D18(-1)")?;
    let d6 = constructors::d_n(6);
    let work = prec + int(2);
    let mut by_q: BTreeMap<Q, FracPowerSeries> = BTreeMap::new();
    for (g, theta) in d6.class_theta_series(&work)? {
        by_q.entry(d6.discriminant_form().q(&g)).or_insert(theta);
    }
    let inv = inverse_delta(&work);
    let disc = m.discriminant_form();
    let mut comps = BTreeMap::new();
    for g in disc.elements() {
        let theta = by_q
            .get(&disc.q(&g))
            .ok_or_else(|| Error::Invalid("no matching class of D6".into()))?;
        comps.insert(g, theta.mul(&inv).truncate(prec));
    }
    let f = VectorValuedForm::new(m.clone(), (int(-9), Q::zero()), (0, 0), comps);
    HyperbolicExample::new(m, f)
}

/// The form on `A₁(−1)` with `f₀ = 10 + O(q)` and `f₁ = q^{−1/4} + O(q^{3/4})`.
pub fn a1_congruence_form() -> VectorValuedForm {
    let l = lattice::rescale(&constructors::a_n(1), -1);
    let d = l.discriminant_form();
    let mut comps = BTreeMap::new();
    comps.insert(d.zero(), FracPowerSeries::from_terms([(int(0), int(10))], Some(int(1))));
    comps.insert(d.element_at(1), FracPowerSeries::from_terms([(q(-1, 4), int(1))], Some(q(3, 4))));
    VectorValuedForm::new(l, (q(-1, 2), Q::zero()), (0, 0), comps)
}

/// The toy Lorentzian lattice `U ⊕ A₁(−1)` carrying the form of
/// [`a1_congruence_form`] on its `A₁` part. Its walls at the cusp are
/// the vectors of norm `−1/2` in `M′`.
pub fn toy_u_plus_a1() -> Result<HyperbolicExample> {
    let m = lattice("U+A1(-1)")?;
    let small = a1_congruence_form();
    let disc = m.discriminant_form();
    let mut comps = BTreeMap::new();
    for g in disc.elements() {
        let rep = disc.representative(&g);
        let kpart = small.disc().class_of(&rep[2..])?;
        comps.insert(g, small.component(&kpart));
    }
    let f = VectorValuedForm::new(m.clone(), (q(-1, 2), Q::zero()), (0, 0), comps);
    HyperbolicExample::new(m, f)
}

/// The four components `(f₀₀, f₁₀, f₀₁, f₁₁)`:
/// `f₀₀ = 8η(2τ)⁸/η(τ)¹⁶`, `f₁₀ = f₀₁ = −f₀₀`,
/// `f₁₁ = f₀₀ + η(τ/2)⁸/η(τ)¹⁶`.
pub fn level_two_components(prec: &Q) -> Result<[FracPowerSeries; 4]> {
    let work = prec + int(3);
    let inv16 = eta(1, &work).pow(-16)?;
    let f00 = eta(2, &work).pow(8)?.mul(&inv16).scale(&int(8)).truncate(prec);
    let half = eta(1, &(&work * int(2))).rescale_exponents(&q(1, 2)).pow(8)?;
    let f11 = f00.add(&half.mul(&inv16)).truncate(prec);
    let f10 = f00.neg();
    Ok([f00, f10.clone(), f10, f11])
}

/// `M = II₁,₉ ⊕ II₁,₁(2)` of signature `(2, 10)` with the weight `−4` form
/// whose components are [`level_two_components`]. The last two basis vectors
/// `e, f` span `II₁,₁(2)`; the classes `e/2`, `f/2`, `(e+f)/2` carry
/// `f₁₀`, `f₀₁`, `f₁₁`.
pub fn level_two_form(prec: &Q) -> Result<VectorValuedForm> {
    let m = lattice("U+E8(-1)+U(2)")?;
    let [f00, f10, f01, f11] = level_two_components(prec)?;
    let disc = m.discriminant_form();
    let n = m.rank();
    let mut v = vec![Q::zero(); n];
    let mut comps = BTreeMap::new();
    comps.insert(disc.zero(), f00);
    v[n - 2] = q(1, 2);
    comps.insert(disc.class_of(&v)?, f10);
    v[n - 2] = Q::zero();
    v[n - 1] = q(1, 2);
    comps.insert(disc.class_of(&v)?, f01);
    v[n - 2] = q(1, 2);
    comps.insert(disc.class_of(&v)?, f11);
    Ok(VectorValuedForm::new(m, (int(-4), Q::zero()), (0, 0), comps))
}

/// A witness in `K ⊗ ℚ` whose pairings with the basis of `K` are
/// `−1, −base, −base², …`.
pub fn witness_with_pairings(k: &EvenLattice, base: i64) -> Vec<Q> {
    let pairs: Vec<Q> = (0..k.rank()).map(|i| -Q::from_integer(BigInt::from(base).pow(i as u32))).collect();
    k.inverse_gram()
        .iter()
        .map(|row| row.iter().zip(&pairs).fold(Q::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

fn datum_with_witness(form: VectorValuedForm, z: &[i64], z2: &[i64]) -> Result<ProductDatum> {
    let frame = CuspFrame::new(form.lattice(), z, None)?;
    let kframe = CuspFrame::new(frame.k(), z2, None)?;
    let mu = witness_with_pairings(kframe.k(), 3);
    ProductDatum::new(form, z, None, z2, &mu, Convention::default())
}

/// [`level_two_form`] at the level 2 cusp `z = e` of `II₁,₁(2)`. Then
/// `K = II₁,₉` with coordinates the first ten basis vectors of `M`, and the
/// chamber is described at the cusp `e` of its `U` summand.
pub fn level_two_datum(prec: &Q) -> Result<ProductDatum> {
    let form = level_two_form(prec)?;
    let n = form.lattice().rank();
    datum_with_witness(form, &unit_vector(n, n - 2), &unit_vector(n - 2, 0))
}

/// [`level_two_form`] at the level 1 cusp `z = e` of the first `U`. Then
/// `K = E₈(−1) ⊕ II₁,₁(2)`, and the chamber is described at the level 1
/// norm 0 vector `α₀ + α₁ + e + f` of `K`.
pub fn level_one_datum(prec: &Q) -> Result<ProductDatum> {
    let form = level_two_form(prec)?;
    let n = form.lattice().rank();
    datum_with_witness(form, &unit_vector(n, 0), &[1, 1, 0, 0, 0, 0, 0, 0, 1, 1])
}

/// `II₂,₂₆ = U ⊕ U ⊕ Λ(−1)` with `F = 1/Δ`, at the cusp `e` of the first
/// `U`; the chamber of `K = U ⊕ Λ(−1)` is described at the cusp `e` of `U`.
pub fn fake_monster_datum(prec: &Q) -> Result<ProductDatum> {
    let m = constructors::direct_sum(&constructors::hyperbolic_plane(1), &constructors::hyperbolic_plane(1));
    let m = constructors::direct_sum(&m, &lattice::rescale(&constructors::leech(), -1)).with_name("U+U+Leech(-1)");
    let form = VectorValuedForm::scalar(m, (int(-12), Q::zero()), inverse_delta(prec));
    datum_with_witness(form, &unit_vector(28, 0), &unit_vector(26, 0))
}

/// Plus-space coefficient stream `c(n)` of the weight `1/2` input to the
/// one-variable lift, listed through `q¹¹`.
pub fn shimura_stream() -> (Vec<(i64, Q)>, i64) {
    let data: [(i64, i64); 6] =
        [(-3, 1), (1, 64), (4, -32384), (5, 131535), (8, -4257024), (9, 11535936)];
    (data.iter().map(|&(e, c)| (e, int(c))).collect(), 12)
}

/// Parses a rational-valued CLI or JSON argument, treating an empty string
/// as absent.
pub fn optional_rational(s: Option<&str>) -> Result<Option<Q>> {
    s.filter(|t| !t.is_empty()).map(parse_rational).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        assert_eq!(lattice("II1,9").unwrap().signature(), (1, 9));
        assert_eq!(lattice("II2,26").unwrap().rank(), 28);
        assert_eq!(lattice("A1(-1)").unwrap().det(), BigInt::from(-2));
        assert_eq!(lattice("U(2)+A2").unwrap().signature(), (3, 1));
        assert!(lattice("II1,2").is_err());
        assert!(lattice("Z5").is_err());
        assert_eq!(lattice("I2,10even").unwrap().discriminant_form().order(), 4);
    }

    #[test]
    fn level_two_components_match_listed_values() {
        let [f00, f10, _, f11] = level_two_components(&int(3)).unwrap();
        assert_eq!(f00.coefficient_int(0).unwrap(), int(8));
        assert_eq!(f00.coefficient_int(1).unwrap(), int(128));
        assert_eq!(f00.coefficient_int(2).unwrap(), int(1152));
        assert_eq!(f10.coefficient_int(1).unwrap(), int(-128));
        assert_eq!(f11.coefficient(&q(-1, 2)).unwrap(), int(1));
        assert_eq!(f11.coefficient(&q(1, 2)).unwrap(), int(36));
        assert_eq!(f11.coefficient(&q(3, 2)).unwrap(), int(402));
        assert_eq!(f11.coefficient_int(1).unwrap(), int(0));
        let f = level_two_form(&int(3)).unwrap();
        assert!(f.validate().is_empty(), "{:?}", f.validate());
    }

    #[test]
    fn theta_d6_form_is_valid() {
        let ex = i_1_19_theta_d6(&int(2)).unwrap();
        assert!(ex.form.validate().is_empty());
        assert_eq!(ex.form.pole_order(), int(1));
    }

    #[test]
    fn inverse_delta_start() {
        let f = inverse_delta(&int(3));
        assert_eq!(f.coefficient_int(-1).unwrap(), int(1));
        assert_eq!(f.coefficient_int(0).unwrap(), int(24));
        assert_eq!(f.coefficient_int(1).unwrap(), int(324));
    }
}
