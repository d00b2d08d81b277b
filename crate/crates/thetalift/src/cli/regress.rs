//! Regression checks against the worked values shipped in the corpus.
//!
//! Check ids are `area/name`; `--filter` selects by id prefix.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::arith::{int, q, rational_to_string, Q};
use crate::corpus;
use crate::error::Result;
use crate::hyperbolic::{
    congruence_check, phi_eval_hyperbolic, reflective_certificate, vector_system_check, weyl_inner_product,
    weyl_vector, Convention, ReflectiveClass,
};
use crate::lattice::{constructors, EvenLattice};
use crate::products::{lift_weight, product_expansion, ray_coefficients, scalar_constant, singular_weight_support, zero_orders};
use crate::qseries::{eisenstein, eta, FracPowerSeries};
use crate::shimura::{binomial_vanishing, shimura_lift, vanishing_predicted, verify_eta_quotient, ShimuraInput};
use crate::weilrep::{reduce_to_smaller, WeilRepresentation};

/// One regression: an id, a one-line description and the check itself,
/// which returns whether it passed and a short detail string.
pub struct Check {
    pub id: &'static str,
    pub title: &'static str,
    pub run: fn() -> Result<(bool, String)>,
}

/// Result of running one [`Check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub detail: String,
}

/// The lattices on which the Weil representation relations are checked.
pub fn weil_corpus() -> Vec<EvenLattice> {
    ["A1", "A1(-1)", "E8", "U", "U(2)", "I2,10even", "A2"]
        .iter()
        .map(|n| corpus::lattice(n).expect("corpus lattice"))
        .collect()
}

fn coeffs(s: &FracPowerSeries, range: std::ops::Range<i64>) -> Result<Vec<Q>> {
    range.map(|n| s.coefficient_int(n)).collect()
}

fn show(v: &[Q]) -> String {
    v.iter().map(rational_to_string).collect::<Vec<_>>().join(", ")
}

fn weil_relations() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for l in weil_corpus() {
        if !WeilRepresentation::build(&l.discriminant_form()).check_relations().all() {
            bad.push(l.name().to_string());
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { "7 lattices".into() } else { format!("failed: {}", bad.join(", ")) }))
}

fn milgram() -> Result<(bool, String)> {
    let ok = weil_corpus().iter().all(EvenLattice::milgram_check);
    Ok((ok, "7 lattices".into()))
}

fn j_expansion() -> Result<(bool, String)> {
    let s = super::expr::evaluate("E4^3 / Delta", &int(2))?;
    let got = coeffs(&s, -1..2)?;
    Ok((got == [int(1), int(744), int(196884)], show(&got)))
}

fn level_two_eta_quotient() -> Result<(bool, String)> {
    let p = int(4);
    let s = eta(1, &p).pow(16)?.mul(&eta(2, &p).pow(-8)?);
    let got = coeffs(&s, 0..4)?;
    Ok((got == [int(1), int(-16), int(112), int(-448)], show(&got)))
}

fn e8_theta() -> Result<(bool, String)> {
    let p = int(11);
    let t = constructors::e8().theta_series(&vec![Q::zero(); 8], &p)?;
    let e4 = eisenstein(4, &p)?;
    Ok((t == e4, "through q^10".into()))
}

fn leech_shells() -> Result<(bool, String)> {
    let counts = constructors::leech().norm_counts(&vec![Q::zero(); 24], &int(2))?;
    let ok = counts == vec![(int(0), 1), (int(4), 196560)];
    Ok((ok, format!("{} shells up to norm 4", counts.len())))
}

fn weyl_norm(ex: Result<corpus::HyperbolicExample>, want: i64) -> Result<(bool, String)> {
    let ex = ex?;
    let w = weyl_vector(&ex.frame, &ex.form, &ex.generic_witness(), Convention::default())?;
    let n = w.norm();
    Ok((n == int(want), format!("ρ² = {}", rational_to_string(&n))))
}

fn weyl_ii19() -> Result<(bool, String)> {
    weyl_norm(corpus::ii_1_9_e4sq(&int(2)), 1240)
}

fn weyl_ii117() -> Result<(bool, String)> {
    weyl_norm(corpus::ii_1_17_e4(&int(2)), 620)
}

fn weyl_ii125() -> Result<(bool, String)> {
    let (a, _) = weyl_norm(corpus::ii_1_25_leech(&int(2)), 0)?;
    let (b, d) = weyl_norm(corpus::ii_1_25_e8cubed(&int(2)), 0)?;
    Ok((a && b, d))
}

fn weyl_ii11() -> Result<(bool, String)> {
    let ex = corpus::ii_1_1_constant()?;
    let w = weyl_vector(&ex.frame, &ex.form, &ex.generic_witness(), Convention::default())?;
    let scaled: Vec<Q> = w.to_m().iter().map(|x| x * int(24)).collect();
    let ok = scaled == [int(1), int(1)];
    Ok((ok, format!("24ρ = ({})", show(&scaled))))
}

fn weyl_inner() -> Result<(bool, String)> {
    let ex = corpus::ii_1_9_e4sq(&int(2))?;
    let w = weyl_vector(&ex.frame, &ex.form, &ex.generic_witness(), Convention::default())?;
    let m = ex.frame.lattice();
    let mut ok = true;
    let mut values = Vec::new();
    let eps = [1234, 5678, 9012, 3457, 7891, 2345, 6789, 1357, 2468, 9753];
    for lam in [[1i64, 1, 0, 0, 0, 0, 0, 0, 0, 0], [2, 1, 1, 0, 0, 0, 0, 0, 0, 0], [3, 1, 1, 1, 0, 0, 0, 0, 0, 0]] {
        let lq: Vec<Q> = lam.iter().map(|&x| int(x)).collect();
        let v: Vec<Q> = lq.iter().zip(eps).map(|(x, e)| x + q(e, 1_000_003)).collect();
        let (chamber, _) = phi_eval_hyperbolic(&w, &ex.form, &v)?;
        let direct = weyl_inner_product(&ex.form, &lam)?;
        ok &= m.inner(&chamber.to_m(), &lq) == direct;
        values.push(direct);
    }
    Ok((ok, format!("(ρ, λ) = {}", show(&values))))
}

fn congruence_e8cubed() -> Result<(bool, String)> {
    let ex = corpus::ii_1_25_e8cubed(&int(2))?;
    let r = congruence_check(&reduce_to_smaller(&ex.form, &ex.frame)?)?;
    Ok((r.constant == int(744) && r.divisible, format!("constant {}", rational_to_string(&r.constant))))
}

fn congruence_leech() -> Result<(bool, String)> {
    let ex = corpus::ii_1_25_leech(&int(2))?;
    let r = congruence_check(&reduce_to_smaller(&ex.form, &ex.frame)?)?;
    Ok((r.constant == int(24) && r.divisible, format!("constant {}", rational_to_string(&r.constant))))
}

fn congruence_a1() -> Result<(bool, String)> {
    let r = congruence_check(&corpus::a1_congruence_form())?;
    let ok = r.constant == int(12) && r.ideal == BigInt::from(2) && r.divisible;
    Ok((ok, format!("constant {}, N = {}", rational_to_string(&r.constant), r.ideal)))
}

fn vector_systems() -> Result<(bool, String)> {
    let ex = corpus::ii_1_9_e4sq(&int(2))?;
    let a = vector_system_check(&reduce_to_smaller(&ex.form, &ex.frame)?)?;
    let ex = corpus::ii_1_25_leech(&int(2))?;
    let b = vector_system_check(&reduce_to_smaller(&ex.form, &ex.frame)?)?;
    let ok = a.holds && b.holds && a.index == int(30) && b.index.is_zero();
    Ok((ok, format!("indices {} and {}", rational_to_string(&a.index), rational_to_string(&b.index))))
}

fn reflective() -> Result<(bool, String)> {
    let ex = corpus::ii_1_9_e4sq(&int(2))?;
    let r = reflective_certificate(&ex.frame, &ex.form, &ex.generic_witness(), Convention::default())?;
    Ok((r.reflections_ok() && r.class == ReflectiveClass::FiniteIndex, r.class.as_str().into()))
}

fn level_two_ray() -> Result<(bool, String)> {
    let d = corpus::level_two_datum(&int(3))?;
    let mut h = vec![Q::zero(); 10];
    h[0] = int(1);
    h[1] = int(6);
    let mut w = vec![Q::zero(); 10];
    w[1] = int(1);
    let s = product_expansion(&d, &h, &int(5), Some(&w))?;
    let got: Vec<Q> = ray_coefficients(&s, &w)?
        .iter()
        .map(|c| c.to_rational().unwrap_or_else(|| int(i64::MAX)))
        .collect();
    let p = int(6);
    let oracle = eta(1, &p).pow(16)?.mul(&eta(2, &p).pow(-8)?);
    let want = coeffs(&oracle, 0..6)?;
    Ok((got == want, show(&got)))
}

fn level_two_weight() -> Result<(bool, String)> {
    let d = corpus::level_two_datum(&int(3))?;
    let (w, singular) = lift_weight(&d)?;
    let (c, squared) = scalar_constant(&d)?;
    let ok = w == int(4) && singular && !squared && c.to_rational() == Some(q(1, 16));
    Ok((ok, format!("weight {}, constant {c}", rational_to_string(&w))))
}

fn level_two_support() -> Result<(bool, String)> {
    let d = corpus::level_two_datum(&int(3))?;
    let mut h = vec![Q::zero(); 10];
    h[0] = int(1);
    h[1] = int(3);
    let s = product_expansion(&d, &h, &int(4), None)?;
    let bad = singular_weight_support(&s, &d)?;
    Ok((bad.is_empty(), format!("{} terms, {} off the null cone", s.len(), bad.len())))
}

fn level_two_divisor() -> Result<(bool, String)> {
    let d = corpus::level_two_datum(&int(3))?;
    let mut lam = vec![Q::zero(); 12];
    lam[10] = q(1, 2);
    lam[11] = q(-1, 2);
    let o = zero_orders(d.form(), &lam)?;
    Ok((o.is_one(), format!("order {}", rational_to_string(&o))))
}

fn shimura_coefficients() -> Result<(bool, String)> {
    let (c, trunc) = corpus::shimura_stream();
    let lift = shimura_lift(&ShimuraInput::new(2, c, trunc)?, 4)?;
    let got = coeffs(&lift, 1..4)?;
    let check = verify_eta_quotient(&lift, 4)?;
    Ok((check.equal && got == [int(64), int(-32256), int(11536128)], show(&got)))
}

fn binomial_grid() -> Result<(bool, String)> {
    let mut ok = true;
    for a in 0..=8 {
        for b in 0..=8 {
            for c in 0..=8 {
                let (l, r) = binomial_vanishing(a, b, c);
                ok &= l == r && (!vanishing_predicted(a, b, c) || l.is_zero());
            }
        }
    }
    Ok((ok, "0 ≤ A, B, C ≤ 8".into()))
}

/// Every regression, in a fixed order.
pub fn checks() -> Vec<Check> {
    vec![
        Check { id: "weil/relations", title: "S² = Z, (ST)³ = Z, Z⁴ = 1 on the lattice corpus", run: weil_relations },
        Check { id: "weil/milgram", title: "squared Milgram formula on the lattice corpus", run: milgram },
        Check { id: "series/j", title: "E4³/Δ = q⁻¹ + 744 + 196884q", run: j_expansion },
        Check { id: "series/eta-quotient", title: "η¹⁶/η(2τ)⁸ = 1 − 16q + 112q² − 448q³", run: level_two_eta_quotient },
        Check { id: "lattice/e8-theta", title: "Θ(E8) = E4 through q¹⁰", run: e8_theta },
        Check { id: "lattice/leech-shells", title: "Leech: no roots, 196560 vectors of norm 4", run: leech_shells },
        Check { id: "weyl/ii19-norm", title: "II₁,₉ with E4²/Δ: ρ² = 1240", run: weyl_ii19 },
        Check { id: "weyl/ii117-norm", title: "II₁,₁₇ with E4/Δ: ρ² = 620", run: weyl_ii117 },
        Check { id: "weyl/ii125-norm", title: "II₁,₂₅ with 1/Δ: ρ² = 0 (Leech and E8³ models)", run: weyl_ii125 },
        Check { id: "weyl/ii11-primitive", title: "II₁,₁ with F = 1: 24ρ primitive", run: weyl_ii11 },
        Check { id: "weyl/inner-product", title: "(ρ, λ) from the Weyl vector equals the theta constant term", run: weyl_inner },
        Check { id: "weyl/congruence-e8cubed", title: "E8(−1)³ with 1/Δ: constant 744 divisible by 24", run: congruence_e8cubed },
        Check { id: "weyl/congruence-leech", title: "Leech(−1) with 1/Δ: constant 24 divisible by 24", run: congruence_leech },
        Check { id: "weyl/congruence-a1", title: "A1(−1) form: constant 12 with N = 2", run: congruence_a1 },
        Check { id: "weyl/vector-system", title: "vector systems of index 30 and 0", run: vector_systems },
        Check { id: "weyl/reflective-ii19", title: "II₁,₉ reflective certificate", run: reflective },
        Check { id: "product/level-two-ray", title: "level 2 ray expansion equals η¹⁶/η(2τ)⁸ through q⁵", run: level_two_ray },
        Check { id: "product/level-two-weight", title: "level 2 lift: weight 4 = singular weight, constant 1/16", run: level_two_weight },
        Check { id: "product/level-two-support", title: "level 2 lift: support on the null cone to height 4", run: level_two_support },
        Check { id: "product/level-two-divisor", title: "level 2 lift: norm −1 divisors have order 1", run: level_two_divisor },
        Check { id: "shimura/coefficients", title: "lift of the plus-space stream equals 64Δ/E4²", run: shimura_coefficients },
        Check { id: "shimura/binomial-grid", title: "binomial identity on 0 ≤ A, B, C ≤ 8", run: binomial_grid },
    ]
}

/// Runs every check whose id starts with `filter`.
pub fn run(filter: Option<&str>) -> Vec<CheckResult> {
    checks()
        .into_iter()
        .filter(|c| filter.is_none_or(|f| c.id.starts_with(f)))
        .map(|c| {
            let (passed, detail) = match (c.run)() {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            CheckResult { id: c.id.into(), title: c.title.into(), passed, detail }
        })
        .collect()
}

pub fn to_json(results: &[CheckResult]) -> Value {
    let rows: Vec<Value> = results
        .iter()
        .map(|r| json!({"id": r.id, "title": r.title, "passed": r.passed, "detail": r.detail}))
        .collect();
    json!({
        "checks": rows,
        "passed": results.iter().filter(|r| r.passed).count(),
        "failed": results.iter().filter(|r| !r.passed).count(),
    })
}
