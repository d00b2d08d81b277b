//! Infinite product expansions of the lift at a cusp.
//!
//! A [`ProductDatum`] fixes a lattice `M` of signature `(2, b⁻)`, a form `F`
//! of weight `1 − b⁻/2`, a primitive norm 0 vector `z` of level `N` and a
//! Weyl chamber of the Lorentzian lattice `K`. The expansion is
//!
//! `e((ρ, Z)) Π_{λ∈K′, (λ,W)>0} Π_{δ|L=λ} (1 − e((λ, Z) + (δ, z′)))^{c_δ(λ²/2)}`
//!
//! truncated by a height functional `(·, h)` with `h` in the chamber.

mod group_ring;

pub use group_ring::{GroupRingSeries, Term};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arith::{int, lcm_denominators, rational_to_string, Cyclotomic, Q};
use crate::enumerate::ShortVectors;
use crate::error::{Error, Result};
use crate::hyperbolic::{separating_walls, weyl_vector, Convention, CuspFrame, WeylVector};
use crate::linalg::{gcd_combination, integer_kernel, inverse_q, to_qmat};
use crate::weilrep::{reduce_to_smaller, VectorValuedForm};

/// Input to the product expansion.
#[derive(Clone, Debug)]
pub struct ProductDatum {
    form: VectorValuedForm,
    frame: CuspFrame,
    reduced: VectorValuedForm,
    weyl: WeylVector,
}

impl ProductDatum {
    /// Builds the datum. `z2` is a primitive norm 0 vector of `K` (in
    /// `K`-coordinates) selecting the cusp of `K` at which the Weyl chamber
    /// is described, and `witness` the chamber witness in the negative
    /// definite lattice at that cusp.
    pub fn new(
        form: VectorValuedForm,
        z: &[i64],
        zprime: Option<&[Q]>,
        z2: &[i64],
        witness: &[Q],
        convention: Convention,
    ) -> Result<Self> {
        let m = form.lattice();
        let (bp, bm) = m.signature();
        if bp != 2 {
            return Err(Error::Invalid(format!("expected signature (2, b⁻), got ({bp}, {bm})")));
        }
        let expected = Q::new(BigInt::from(2 - bm as i64), BigInt::from(2));
        if form.weight() != &(expected.clone(), Q::zero()) {
            return Err(Error::Invalid(format!("weight must be ({}, 0)", rational_to_string(&expected))));
        }
        for (g, n, c) in form.principal_part() {
            if !c.is_integer() {
                return Err(Error::Invalid(format!(
                    "coefficient {} at q^{} of component [{}] is not an integer",
                    rational_to_string(&c),
                    rational_to_string(&n),
                    crate::lattice::DiscriminantForm::element_label(&g)
                )));
            }
        }
        let frame = CuspFrame::new(m, z, zprime)?;
        let reduced = reduce_to_smaller(&form, &frame)?;
        let kframe = CuspFrame::new(frame.k(), z2, None)?;
        let weyl = weyl_vector(&kframe, &reduced, witness, convention)?;
        Ok(ProductDatum { form, frame, reduced, weyl })
    }

    pub fn form(&self) -> &VectorValuedForm {
        &self.form
    }

    pub fn frame(&self) -> &CuspFrame {
        &self.frame
    }

    /// `F_K` on the Lorentzian lattice `K`.
    pub fn reduced_form(&self) -> &VectorValuedForm {
        &self.reduced
    }

    /// The Weyl vector `ρ(K, W, F_K)`; its lattice coordinates are
    /// `K`-coordinates.
    pub fn weyl(&self) -> &WeylVector {
        &self.weyl
    }

    fn level_u64(&self) -> Result<u64> {
        self.frame
            .level()
            .to_u64()
            .ok_or_else(|| Error::Unsupported("level too large".into()))
    }
}

/// Weight `c₀(0)/2` of the lift and whether it equals `(b⁻ − 2)/2`.
pub fn lift_weight(datum: &ProductDatum) -> Result<(Q, bool)> {
    let f = datum.form();
    let w = f.coefficient(&f.disc().zero(), &Q::zero())? / int(2);
    let bm = f.lattice().signature().1 as i64;
    let singular = w == Q::new(BigInt::from(bm - 2), BigInt::from(2));
    Ok((w, singular))
}

/// Order of the lift along `λ^⊥`: `Σ_{x>0, xλ∈M′} c_{xλ}(x²λ²/2)`.
pub fn zero_orders(f: &VectorValuedForm, lam: &[Q]) -> Result<Q> {
    let m = f.lattice();
    if lam.len() != m.rank() {
        return Err(Error::Invalid("vector dimension does not match the lattice".into()));
    }
    let n0 = m.norm(lam);
    if !n0.is_negative() {
        return Err(Error::Invalid(format!("λ² must be negative, got {}", rational_to_string(&n0))));
    }
    // Scale λ to a primitive integral vector, then xλ ∈ M′ iff x ∈ (1/g)ℤ
    // with g the content of Gλ.
    let den = lcm_denominators(lam.iter());
    let li: Vec<BigInt> = lam.iter().map(|x| (x * Q::from_integer(den.clone())).to_integer()).collect();
    let (content, _) = gcd_combination(&li);
    let prim: Vec<Q> = li.iter().map(|x| Q::new(x.clone(), content.clone())).collect();
    let gl: Vec<BigInt> = m
        .gram()
        .iter()
        .map(|row| row.iter().zip(&prim).fold(Q::zero(), |acc, (a, b)| acc + Q::from_integer(a.clone()) * b))
        .map(|x| x.to_integer())
        .collect();
    let (g, _) = gcd_combination(&gl);
    let pn = m.norm(&prim);
    let pole = f.pole_order();
    let two = int(2);
    let disc = f.disc();
    let mut total = Q::zero();
    let mut k = BigInt::one();
    loop {
        let x = Q::new(k.clone(), g.clone());
        let n = &x * &x * &pn / &two;
        if -&n > pole {
            break;
        }
        let v: Vec<Q> = prim.iter().map(|c| &x * c).collect();
        total += f.coefficient(&disc.class_of(&v)?, &n)?;
        k += 1;
    }
    Ok(total)
}

/// The constant `Π_{0<δ<N} (1 − e(δ/N))^{c_{δz/N}(0)/2}`. When some exponent
/// is a half-integer the square of the constant is returned and the flag
/// is set.
pub fn scalar_constant(datum: &ProductDatum) -> Result<(Cyclotomic, bool)> {
    let n = datum.level_u64()?;
    let f = datum.form();
    let z = datum.frame.z();
    let mut exps = Vec::new();
    for d in 1..n {
        let v: Vec<Q> = z.iter().map(|c| c * Q::new(BigInt::from(d), BigInt::from(n))).collect();
        let c = f.coefficient(&f.disc().class_of(&v)?, &Q::zero())?;
        if !c.is_integer() {
            return Err(Error::Invalid("constant term of a cusp component is not an integer".into()));
        }
        exps.push((d, c.to_integer()));
    }
    let squared = exps.iter().any(|(_, c)| c.is_odd());
    let mut acc = Cyclotomic::one();
    for (d, c) in exps {
        let e = if squared { c } else { c / 2 };
        let e = e.to_i64().ok_or_else(|| Error::Invalid("exponent too large".into()))?;
        let base = Cyclotomic::one().sub(&Cyclotomic::zeta_power(n, d));
        let p = base.pow(e).ok_or_else(|| Error::Invalid("zero base with negative exponent".into()))?;
        acc = acc.mul(&p);
    }
    Ok((acc.minimal(), squared))
}

/// One factor `(1 − ζ X^λ)^c` of the product.
#[derive(Clone, Debug)]
pub struct Factor {
    /// `λ` in `K`-coordinates.
    pub lambda: Vec<Q>,
    pub phase: Q,
    pub exponent: Q,
}

fn binomial_coefficients(c: &Q, kmax: usize) -> Result<Vec<Q>> {
    if !c.is_integer() {
        return Err(Error::Invalid(format!(
            "exponent {} is not an integer; the binomial expansion needs integral exponents",
            rational_to_string(c)
        )));
    }
    let mut out = Vec::with_capacity(kmax);
    let mut b = Q::one();
    for k in 1..=kmax {
        b = b * (c - int(k as i64 - 1)) / int(k as i64);
        out.push(b.clone());
    }
    Ok(out)
}

fn pair(g: &[Vec<Q>], x: &[Q], y: &[Q]) -> Q {
    g.iter().zip(x).fold(Q::zero(), |acc, (row, a)| {
        acc + a * row.iter().zip(y).fold(Q::zero(), |s, (gij, b)| s + gij * b)
    })
}

/// Vectors `λ ∈ K′` with `0 < (λ, h) ≤ room` and `λ² ≥ −2·pole`, one height
/// at a time. In dual coordinates `x = Gλ` the height is `x·h`; the slice
/// `x·h = t` is a coset of the kernel lattice, on which `−λ²` is positive
/// definite.
fn height_slices(gk_inv: &[Vec<Q>], h: &[Q], hh: &Q, room: &Q, pole: &Q) -> Result<Vec<Vec<Q>>> {
    let r = h.len();
    let hden = lcm_denominators(h.iter());
    let hq = Q::from_integer(hden.clone());
    let hint: Vec<BigInt> = h.iter().map(|x| (x * &hq).to_integer()).collect();
    let (g, u) = gcd_combination(&hint);
    let kernel = integer_kernel(&vec![hint.clone()], r);
    let s = kernel.len();
    let apply = |x: &[Q]| -> Vec<Q> {
        gk_inv
            .iter()
            .map(|row| row.iter().zip(x).fold(Q::zero(), |acc, (p, q)| acc + p * q))
            .collect()
    };
    let kq: Vec<Vec<Q>> = kernel
        .iter()
        .map(|row| row.iter().map(|c| Q::from_integer(c.clone())).collect())
        .collect();
    let kimg: Vec<Vec<Q>> = kq.iter().map(|b| apply(b)).collect();
    // M = −B G⁻¹ Bᵀ on the kernel.
    let mq: Vec<Vec<Q>> = kq
        .iter()
        .map(|a| kimg.iter().map(|b| -dot(a, b)).collect())
        .collect();
    let m_inv = if s > 0 { inverse_q(&mq).ok_or(Error::Singular)? } else { Vec::new() };
    let mden = lcm_denominators(mq.iter().flatten());
    let mdq = Q::from_integer(mden.clone());
    let ia: Vec<Vec<BigInt>> = mq.iter().map(|row| row.iter().map(|x| (x * &mdq).to_integer()).collect()).collect();
    let sv = (s > 0).then(|| ShortVectors::new(&ia));

    let unit = Q::new(g.clone(), hden);
    let mut out = Vec::new();
    let mut t = unit.clone();
    while &t <= room {
        let steps = (&t / &unit).to_integer();
        let x0: Vec<Q> = u.iter().map(|c| Q::from_integer(c * &steps)).collect();
        let l0 = apply(&x0);
        let budget = Q::from_integer(BigInt::from(2)) * pole + &t * &t / hh;
        if s == 0 {
            if !(-dot(&x0, &l0)).gt(&budget) {
                out.push(l0);
            }
            t += &unit;
            continue;
        }
        // Centre c* = −M⁻¹m with m_i = −b_iᵀG⁻¹x0.
        let m: Vec<Q> = kq.iter().map(|b| -dot(b, &l0)).collect();
        let centre: Vec<Q> = m_inv.iter().map(|row| -dot(row, &m)).collect();
        let cden = lcm_denominators(centre.iter());
        let cq = Q::from_integer(cden.clone());
        let residues: Vec<BigInt> = centre.iter().map(|c| (-(c * &cq)).to_integer().mod_floor(&cden)).collect();
        let bound = (&budget * &mdq * &cq * &cq).floor().to_integer();
        if bound.is_negative() {
            t += &unit;
            continue;
        }
        let sv = sv.as_ref().expect("kernel is nonempty");
        for (y, _) in sv.collect(&cden, &residues, &bound)? {
            let c: Vec<Q> = y
                .iter()
                .zip(&centre)
                .map(|(&yi, ci)| Q::from_integer(BigInt::from(yi)) / &cq + ci)
                .collect();
            let mut x = x0.clone();
            for (ci, b) in c.iter().zip(&kq) {
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi += ci * bi;
                }
            }
            out.push(apply(&x));
        }
        t += &unit;
    }
    Ok(out)
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Factors `(1 − e((λ,Z) + (δ,z′)))^{c_δ(λ²/2)}` with `0 < (λ, h) ≤ room`.
/// With `ray = Some(w)` only `λ` on the ray `ℚ_{>0}·w` are considered.
pub fn product_factors(datum: &ProductDatum, h: &[Q], room: &Q, ray: Option<&[Q]>) -> Result<Vec<Factor>> {
    let k = datum.frame.k();
    let r = k.rank();
    let gk = to_qmat(k.gram());
    let gk_inv = inverse_q(&gk).ok_or(Error::Singular)?;
    let f = datum.form();
    let pole = f.pole_order();
    let two = int(2);
    let hh = pair(&gk, h, h);

    let candidates: Vec<Vec<Q>> = match ray {
        Some(w) => {
            if w.len() != r {
                return Err(Error::Invalid("ray vector has the wrong number of coordinates".into()));
            }
            let wh = pair(&gk, w, h);
            if !wh.is_positive() {
                return Err(Error::Invalid("the ray must have positive height".into()));
            }
            // t·w ∈ K′ iff t·Gw is integral.
            let gw: Vec<Q> = gk
                .iter()
                .map(|row| row.iter().zip(w).fold(Q::zero(), |acc, (a, b)| acc + a * b))
                .collect();
            let den = lcm_denominators(gw.iter());
            let ints: Vec<BigInt> = gw.iter().map(|x| (x * Q::from_integer(den.clone())).to_integer()).collect();
            let (g, _) = gcd_combination(&ints);
            let step = Q::from_integer(den) / Q::from_integer(g);
            let step = Q::one() / step;
            let mut out = Vec::new();
            let mut t = step.clone();
            while &t * &wh <= *room {
                out.push(w.iter().map(|x| &t * x).collect());
                t += &step;
            }
            out
        }
        None => {
            if !hh.is_positive() {
                return Err(Error::Invalid("the height vector must have positive norm".into()));
            }
            height_slices(&gk_inv, h, &hh, room, &pole)?
        }
    };

    let mut out = Vec::new();
    for lam in candidates {
        let ht = pair(&gk, &lam, h);
        if !ht.is_positive() || &ht > room {
            continue;
        }
        let n = k.norm(&lam) / &two;
        if -&n > pole {
            continue;
        }
        for (delta, d) in datum.frame.lifts(&lam)? {
            let c = f.coefficient(&delta, &n)?;
            if !c.is_zero() {
                out.push(Factor { lambda: lam.clone(), phase: d, exponent: c });
            }
        }
    }
    out.sort_by(|a, b| a.lambda.cmp(&b.lambda).then_with(|| a.phase.cmp(&b.phase)));
    Ok(out)
}

/// Expands the product to height `bound` along `h`. With `ray = Some(w)`
/// only factors with `λ` on the ray through `w` are used; when `ρ` and `w`
/// span a face of the closed positive cone this reproduces exactly the
/// coefficients of the full expansion on `ρ + ℚ_{>0}w`.
pub fn product_expansion(datum: &ProductDatum, h: &[Q], bound: &Q, ray: Option<&[Q]>) -> Result<GroupRingSeries> {
    let k = datum.frame.k();
    if h.len() != k.rank() {
        return Err(Error::Invalid(format!("the height vector needs {} coordinates", k.rank())));
    }
    let gk = to_qmat(k.gram());
    if !pair(&gk, h, h).is_positive() {
        return Err(Error::Invalid("the height vector must have positive norm".into()));
    }
    if !separating_walls(&datum.weyl, &datum.reduced, h)?.is_empty() {
        return Err(Error::Invalid("the height vector is not in the chamber of the Weyl vector".into()));
    }
    let rho = datum.weyl.to_m();
    let rho_h = pair(&gk, &rho, h);
    if &rho_h > bound {
        return Err(Error::Invalid(format!(
            "the Weyl vector has height {} above the bound {}",
            rational_to_string(&rho_h),
            rational_to_string(bound)
        )));
    }
    let room = bound - &rho_h;
    let n = datum.level_u64()?;
    let mut series = GroupRingSeries::monomial(rho, h.to_vec(), bound.clone(), n, gk.clone())?;
    for factor in product_factors(datum, h, &room, ray)? {
        let ht = pair(&gk, &factor.lambda, h);
        let kmax = (&room / &ht).floor().to_integer().to_usize().unwrap_or(0);
        let zeta = Cyclotomic::e(&factor.phase).lift(n);
        let minus_zeta = zeta.neg();
        let binoms = binomial_coefficients(&factor.exponent, kmax)?;
        let mut power = Cyclotomic::one().lift(n);
        let mut coeffs = Vec::with_capacity(kmax);
        for b in binoms {
            power = power.mul(&minus_zeta);
            coeffs.push(power.scale(&b));
        }
        let x: Vec<i64> = gk
            .iter()
            .map(|row| row.iter().zip(&factor.lambda).fold(Q::zero(), |acc, (a, b)| acc + a * b))
            .map(|v| v.to_integer().to_i64().ok_or_else(|| Error::Invalid("coordinate too large".into())))
            .collect::<Result<_>>()?;
        series.mul_sparse_powers(&x, &ht, &room, &coeffs);
    }
    Ok(series)
}

/// Coefficients of `e((ρ + n·w, Z))` for `n = 0, 1, …` as long as the
/// height stays within the bound of the series.
pub fn ray_coefficients(series: &GroupRingSeries, w: &[Q]) -> Result<Vec<Cyclotomic>> {
    let base = series.offset_height();
    let gram = &series.gram;
    let wh = pair(gram, w, series.height_vector());
    if !wh.is_positive() {
        return Err(Error::Invalid("the ray must have positive height".into()));
    }
    let mut out = Vec::new();
    let mut n = 0i64;
    while &base + int(n) * &wh <= *series.height_bound() {
        let e: Vec<Q> = series.offset.iter().zip(w).map(|(r, x)| r + int(n) * x).collect();
        out.push(series.coefficient(&e)?);
        n += 1;
    }
    Ok(out)
}

/// Terms whose exponent does not have norm 0. Only meaningful at the
/// singular weight.
pub fn singular_weight_support(series: &GroupRingSeries, datum: &ProductDatum) -> Result<Vec<Term>> {
    let (_, singular) = lift_weight(datum)?;
    if !singular {
        return Err(Error::Invalid("the lift does not have singular weight".into()));
    }
    let k = datum.frame.k();
    Ok(series
        .terms()
        .into_iter()
        .filter(|t| !k.norm(&t.exponent).is_zero())
        .collect())
}

/// A point of the chamber of the Weyl vector: `T·z₂′ + μ + T²·z₂` in the
/// frame of `K` at `z₂`, for the first `T = 1, 2, 4, …` that is separated
/// from the chamber by no wall.
pub fn chamber_point(datum: &ProductDatum) -> Result<Vec<Q>> {
    let kframe = datum.weyl.frame();
    let mut t = Q::one();
    for _ in 0..40 {
        let v = kframe.compose(&datum.weyl.witness, &t, &(&t * &t));
        if kframe.lattice().norm(&v).is_positive() && separating_walls(&datum.weyl, &datum.reduced, &v)?.is_empty() {
            return Ok(v);
        }
        t *= int(2);
    }
    Err(Error::Invalid("no chamber point found along the witness direction".into()))
}

/// JSON summary of a datum: weight, Weyl vector and constant.
pub fn datum_report(datum: &ProductDatum) -> Result<Value> {
    let (w, singular) = lift_weight(datum)?;
    let (c, squared) = scalar_constant(datum)?;
    Ok(json!({
        "weight": rational_to_string(&w),
        "singularWeight": singular,
        "level": datum.frame.level().to_string(),
        "weylVector": datum.weyl.to_json(),
        "constant": c.to_string(),
        "constantSquared": squared,
    }))
}
