use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::arith::{frac, int, rational_to_string, Q};
use crate::error::{Error, Result};
use crate::hyperbolic::CuspFrame;
use crate::lattice::{constructors, DiscriminantForm, Element, EvenLattice};
use crate::qseries::FracPowerSeries;

/// A vector-valued modular form of type `ρ_M`, stored as one q-expansion per
/// element of `M′/M`. Missing components are exactly zero.
#[derive(Clone, Debug)]
pub struct VectorValuedForm {
    lattice: EvenLattice,
    disc: DiscriminantForm,
    weight: (Q, Q),
    parity: (i64, i64),
    components: BTreeMap<Element, FracPowerSeries>,
}

impl PartialEq for VectorValuedForm {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice
            && self.weight == other.weight
            && self.parity == other.parity
            && self.disc.elements().all(|g| self.component(&g) == other.component(&g))
    }
}

impl VectorValuedForm {
    pub fn new(
        lattice: EvenLattice,
        weight: (Q, Q),
        parity: (i64, i64),
        components: BTreeMap<Element, FracPowerSeries>,
    ) -> Self {
        let disc = lattice.discriminant_form();
        VectorValuedForm { lattice, disc, weight, parity, components }
    }

    /// The zero form with exact zero components.
    pub fn zero(lattice: EvenLattice, weight: (Q, Q), parity: (i64, i64)) -> Self {
        Self::new(lattice, weight, parity, BTreeMap::new())
    }

    /// A form on a unimodular lattice given by a single scalar series.
    pub fn scalar(lattice: EvenLattice, weight: (Q, Q), f: FracPowerSeries) -> Self {
        let mut comps = BTreeMap::new();
        let disc = lattice.discriminant_form();
        comps.insert(disc.zero(), f);
        Self::new(lattice, weight, (0, 0), comps)
    }

    pub fn lattice(&self) -> &EvenLattice {
        &self.lattice
    }

    pub fn disc(&self) -> &DiscriminantForm {
        &self.disc
    }

    pub fn weight(&self) -> &(Q, Q) {
        &self.weight
    }

    pub fn parity(&self) -> (i64, i64) {
        self.parity
    }

    pub fn components(&self) -> &BTreeMap<Element, FracPowerSeries> {
        &self.components
    }

    pub fn component(&self, g: &Element) -> FracPowerSeries {
        self.components.get(g).cloned().unwrap_or_else(FracPowerSeries::exact_zero)
    }

    /// Coefficient `c_γ(n)`.
    pub fn coefficient(&self, g: &Element, n: &Q) -> Result<Q> {
        match self.components.get(g) {
            Some(f) => f.coefficient(n),
            None => Ok(Q::zero()),
        }
    }

    /// Smallest exponent carrying a nonzero coefficient in any component.
    pub fn min_exponent(&self) -> Option<Q> {
        self.components.values().filter_map(FracPowerSeries::valuation).min()
    }

    /// `max(0, −min_exponent)`, the size of the principal part.
    pub fn pole_order(&self) -> Q {
        match self.min_exponent() {
            Some(e) if e.is_negative() => -e,
            _ => Q::zero(),
        }
    }

    /// Smallest truncation order over all components (`None` when exact).
    pub fn truncation(&self) -> Option<Q> {
        self.components.values().filter_map(|f| f.truncation().cloned()).min()
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(FracPowerSeries::is_zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = self.clone();
        for f in out.components.values_mut() {
            *f = f.scale(c);
        }
        out
    }

    pub fn with_component(mut self, g: Element, f: FracPowerSeries) -> Self {
        self.components.insert(g, f);
        self
    }

    /// Nonzero terms `(γ, n, c_γ(n))` with `n < 0`.
    pub fn principal_part(&self) -> Vec<(Element, Q, Q)> {
        let mut out = Vec::new();
        for (g, f) in &self.components {
            for (e, c) in f.terms() {
                if e.is_negative() {
                    out.push((g.clone(), e, c.clone()));
                }
            }
        }
        out
    }

    /// Structural violations: unknown elements, exponents not congruent to
    /// `q(γ)` mod 1, and failures of `f_{−γ} = (−1)^{m⁺+m⁻} f_γ`.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (g, f) in &self.components {
            if !self.disc.is_element(g) {
                out.push(format!("component [{}] is not an element of the discriminant group", DiscriminantForm::element_label(g)));
                continue;
            }
            let qg = self.disc.q(g);
            for (e, c) in f.terms() {
                if !c.is_zero() && frac(&(&e - &qg)) != Q::zero() {
                    out.push(format!(
                        "component [{}] has exponent {} but q(γ) = {} mod 1",
                        DiscriminantForm::element_label(g),
                        rational_to_string(&e),
                        rational_to_string(&qg)
                    ));
                }
            }
        }
        let sign = if (self.parity.0 + self.parity.1).rem_euclid(2) == 0 { Q::one() } else { -Q::one() };
        for g in self.disc.elements() {
            let ng = self.disc.neg(&g);
            if ng < g {
                continue;
            }
            let a = self.component(&g);
            let b = self.component(&ng).scale(&sign);
            if !a.agrees_with(&b) {
                out.push(format!(
                    "components [{}] and [{}] violate the ± symmetry",
                    DiscriminantForm::element_label(&g),
                    DiscriminantForm::element_label(&ng)
                ));
            }
        }
        out
    }

    pub fn to_json(&self, lattice_ref: Value) -> Value {
        let comps: Vec<Value> = self
            .components
            .iter()
            .map(|(g, f)| json!({"element": g, "series": f.to_json()}))
            .collect();
        json!({
            "lattice": lattice_ref,
            "weight": [rational_to_string(&self.weight.0), rational_to_string(&self.weight.1)],
            "parity": [self.parity.0, self.parity.1],
            "components": comps,
        })
    }

    /// Parses the form JSON; the `lattice` field must already be resolved by
    /// the caller and is passed in.
    pub fn from_json(v: &Value, lattice: EvenLattice) -> Result<Self> {
        let w = v
            .get("weight")
            .and_then(Value::as_array)
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Parse("form needs a two-entry weight".into()))?;
        let weight = (
            crate::qseries::parse_json_rational(&w[0])?,
            crate::qseries::parse_json_rational(&w[1])?,
        );
        let parity = match v.get("parity") {
            None => (0, 0),
            Some(p) => {
                let a = p
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| Error::Parse("parity must be two integers".into()))?;
                let m = |x: &Value| x.as_i64().ok_or_else(|| Error::Parse("parity entries must be integers".into()));
                (m(&a[0])?, m(&a[1])?)
            }
        };
        let disc = lattice.discriminant_form();
        let mut comps = BTreeMap::new();
        for c in v
            .get("components")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("form needs a components array".into()))?
        {
            let el: Element = c
                .get("element")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("component needs an element array".into()))?
                .iter()
                .map(|x| x.as_u64().ok_or_else(|| Error::Parse("element entries must be non-negative integers".into())))
                .collect::<Result<_>>()?;
            if !disc.is_element(&el) {
                return Err(Error::Parse(format!("[{}] is not an element of the discriminant group", DiscriminantForm::element_label(&el))));
            }
            let s = FracPowerSeries::from_json(c.get("series").ok_or_else(|| Error::Parse("component needs a series".into()))?)?;
            if comps.insert(el.clone(), s).is_some() {
                return Err(Error::Parse(format!("duplicate component [{}]", DiscriminantForm::element_label(&el))));
            }
        }
        Ok(Self::new(lattice, weight, parity, comps))
    }
}

/// Pushes `F_M` forward to the lattice `K` of a cusp frame:
/// `f_{K+γ} = Σ_{δ|L = γ} f_{M+δ}`.
pub fn reduce_to_smaller(f: &VectorValuedForm, frame: &CuspFrame) -> Result<VectorValuedForm> {
    if frame.lattice() != f.lattice() {
        return Err(Error::Invalid("the frame belongs to a different lattice".into()));
    }
    let mut comps: BTreeMap<Element, FracPowerSeries> = BTreeMap::new();
    for (delta, series) in f.components() {
        if let Some(k) = frame.restrict_class(delta)? {
            let entry = comps.entry(k).or_insert_with(FracPowerSeries::exact_zero);
            *entry = entry.add(series);
        }
    }
    Ok(VectorValuedForm::new(frame.k().clone(), f.weight.clone(), f.parity, comps))
}

/// Splits a scalar form `f = Σ c(n) qⁿ` with `c(0) = 0` into a form of type
/// `ρ` on `II₁,₁(2)`:
/// `f₀₀ = f + Σ c(2n)qⁿ`, `f₁₀ = f₀₁ = Σ c(2n)qⁿ`, `f₁₁ = Σ_{n odd} c(n) q^{n/2}`.
pub fn gamma0_prime_split(f: &FracPowerSeries, weight: &Q, level: u64) -> Result<VectorValuedForm> {
    if level != 2 {
        return Err(Error::Unsupported(format!("only level 2 is implemented, got {level}")));
    }
    for (e, _) in f.terms() {
        if !e.is_integer() {
            return Err(Error::Invalid("the scalar form must have integral exponents".into()));
        }
    }
    let c0 = f.coefficient(&Q::zero())?;
    if !c0.is_zero() {
        return Err(Error::Invalid(format!("constant term must vanish, found {}", rational_to_string(&c0))));
    }
    let two = BigInt::from(2);
    let half = Q::new(BigInt::one(), two.clone());
    let even = f
        .filter_exponents(|e| e.to_integer().is_even())
        .rescale_exponents(&half);
    let odd = f
        .filter_exponents(|e| !e.to_integer().is_even())
        .rescale_exponents(&half);
    let lattice = constructors::hyperbolic_plane(2);
    let disc = lattice.discriminant_form();
    let e_half = disc.class_of(&[half.clone(), Q::zero()])?;
    let f_half = disc.class_of(&[Q::zero(), half.clone()])?;
    let both = disc.class_of(&[half.clone(), half])?;
    let mut comps = BTreeMap::new();
    comps.insert(disc.zero(), f.add(&even));
    comps.insert(e_half, even.clone());
    comps.insert(f_half, even);
    comps.insert(both, odd);
    Ok(VectorValuedForm::new(lattice, (weight.clone(), int(0)), (0, 0), comps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    fn series(terms: &[(Q, i64)], trunc: Q) -> FracPowerSeries {
        FracPowerSeries::from_terms(terms.iter().map(|(e, c)| (e.clone(), int(*c))), Some(trunc))
    }

    #[test]
    fn split_of_q() {
        let f = series(&[(int(1), 1)], int(6));
        let v = gamma0_prime_split(&f, &int(0), 2).unwrap();
        assert!(v.validate().is_empty(), "{:?}", v.validate());
        let d = v.disc().clone();
        let zero = d.zero();
        assert_eq!(v.coefficient(&zero, &int(1)).unwrap(), int(1));
        let odd = d.class_of(&[q(1, 2), q(1, 2)]).unwrap();
        assert_eq!(v.coefficient(&odd, &q(1, 2)).unwrap(), int(1));
        let e = d.class_of(&[q(1, 2), int(0)]).unwrap();
        assert!(v.component(&e).is_zero());
    }

    #[test]
    fn split_rejects_constant_term() {
        let f = series(&[(int(0), 3), (int(1), 1)], int(4));
        assert!(gamma0_prime_split(&f, &int(0), 2).is_err());
    }

    #[test]
    fn validation_flags_integral_exponent_in_odd_slot() {
        let f = series(&[(int(-1), 1), (int(1), 5)], int(4));
        let mut v = gamma0_prime_split(&f, &int(0), 2).unwrap();
        assert!(v.validate().is_empty());
        let odd = v.disc().class_of(&[q(1, 2), q(1, 2)]).unwrap();
        let bad = v.component(&odd).add(&FracPowerSeries::monomial(&int(0), int(1)));
        v = v.with_component(odd, bad);
        assert_eq!(v.validate().len(), 1);
    }

    #[test]
    fn symmetry_violation_detected() {
        let l = constructors::a_n(2);
        let d = l.discriminant_form();
        let g = d.element_at(1);
        let mut comps = BTreeMap::new();
        comps.insert(g.clone(), FracPowerSeries::monomial(&d.q(&g), int(1)));
        let v = VectorValuedForm::new(l.clone(), (int(1), int(0)), (0, 0), comps.clone());
        assert_eq!(v.validate().len(), 1);
        comps.insert(d.neg(&g), FracPowerSeries::monomial(&d.q(&g), int(1)));
        let v = VectorValuedForm::new(l, (int(1), int(0)), (0, 0), comps);
        assert!(v.validate().is_empty());
    }

    #[test]
    fn json_round_trip() {
        let f = series(&[(int(-1), 1), (int(2), 7)], int(5));
        let v = gamma0_prime_split(&f, &q(-1, 2), 2).unwrap();
        let j = v.to_json(json!("U(2)"));
        let back = VectorValuedForm::from_json(&j, v.lattice().clone()).unwrap();
        assert_eq!(back, v);
    }
}
