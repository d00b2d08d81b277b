//! Acceptance run: one line per criterion, nonzero exit if any fails or
//! overruns its time budget. All comparisons are exact.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thetalift::arith::{int, lcm_denominators, milgram_holds, milgram_squared_holds, q, rational_to_string, Q};
use thetalift::cli::regress::weil_corpus;
use thetalift::corpus;
use thetalift::hyperbolic::{
    congruence_check, phi_eval_hyperbolic, separating_walls, vector_system_check, wall_crossing_delta,
    weyl_inner_product, weyl_vector, Convention,
};
use thetalift::lattice::{e8, leech, EvenLattice};
use thetalift::products::{lift_weight, product_expansion, ray_coefficients, singular_weight_support, zero_orders};
use thetalift::qseries::{delta, eisenstein, eta, hurwitz_class_numbers, zagier_g, zagier_g1, FracPowerSeries};
use thetalift::shimura::{binomial_vanishing, shimura_lift, vanishing_predicted, ShimuraInput};
use thetalift::weilrep::{reduce_to_smaller, WeilRepresentation};

type Outcome = Result<String, String>;

const RANDOM_LATTICES: usize = 20;
const RANDOM_SEED: u64 = 0x5eed_2024;
const RANDOM_MAX_RANK: usize = 6;
const RANDOM_MAX_ENTRY: i64 = 10;
const RANDOM_MAX_DET: i64 = 2000;
const E8_THETA_PRECISION: i64 = 11;
const LEECH_HALF_NORM: i64 = 3;
const RAY_PRECISION: i64 = 6;
const SUPPORT_HEIGHT: i64 = 4;
const SHIMURA_PRECISION: i64 = 4;
const GRID: i64 = 8;
const HURWITZ_MAX: usize = 12;

struct Criterion {
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn ensure(ok: bool, detail: impl Into<String>) -> Outcome {
    let detail = detail.into();
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn show(v: &[Q]) -> String {
    v.iter().map(rational_to_string).collect::<Vec<_>>().join(", ")
}

fn coeffs(s: &FracPowerSeries, range: std::ops::Range<i64>) -> Result<Vec<Q>, String> {
    range.map(|n| s.coefficient_int(n).map_err(|e| e.to_string())).collect()
}

fn ints(xs: &[i64]) -> Vec<Q> {
    xs.iter().map(|&x| int(x)).collect()
}

fn weil_relations() -> Outcome {
    let corpus = weil_corpus();
    for l in &corpus {
        let r = WeilRepresentation::build(&l.discriminant_form()).check_relations();
        let ok = r.s_squared_is_z && r.st_cubed_is_z && r.z_fourth_is_identity && r.z_action;
        if !ok {
            return Err(format!("{}: {r:?}", l.name()));
        }
    }
    Ok(format!("{} lattices", corpus.len()))
}

/// An even lattice of rank at most six: a block sum of unary and binary
/// forms conjugated by elementary integer operations.
fn random_even_lattice(rng: &mut ChaCha8Rng) -> EvenLattice {
    loop {
        let n = rng.gen_range(1..=RANDOM_MAX_RANK);
        let mut g = vec![vec![0i64; n]; n];
        let mut at = 0;
        while at < n {
            let c = loop {
                let c = rng.gen_range(-5i64..=5);
                if c != 0 {
                    break c;
                }
            };
            if at + 1 < n && rng.gen_bool(0.6) {
                g[at][at] = 2 * rng.gen_range(1i64..=5);
                let b = rng.gen_range(-5i64..=5);
                g[at][at + 1] = b;
                g[at + 1][at] = b;
                g[at + 1][at + 1] = 2 * c;
                at += 2;
            } else {
                g[at][at] = 2 * c;
                at += 1;
            }
        }
        for _ in 0..rng.gen_range(0..6) {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let s = if rng.gen_bool(0.5) { 1 } else { -1 };
            if i == j {
                continue;
            }
            for row in g.iter_mut() {
                row[i] += s * row[j];
            }
            for c in 0..n {
                g[i][c] += s * g[j][c];
            }
        }
        if g.iter().flatten().any(|x| x.abs() > RANDOM_MAX_ENTRY) {
            continue;
        }
        let Ok(l) = EvenLattice::new("random", g) else { continue };
        let d = l.det().abs();
        if !d.is_zero() && d <= BigInt::from(RANDOM_MAX_DET) {
            return l;
        }
    }
}

fn milgram() -> Outcome {
    for l in weil_corpus() {
        let d = l.discriminant_form();
        if !(milgram_squared_holds(&d) && milgram_holds(&d)) {
            return Err(format!("corpus lattice {}", l.name()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let mut signatures = std::collections::BTreeSet::new();
    for _ in 0..RANDOM_LATTICES {
        let l = random_even_lattice(&mut rng);
        if !milgram_squared_holds(&l.discriminant_form()) {
            return Err(format!("random lattice {:?}", l.gram()));
        }
        signatures.insert(l.signature());
    }
    Ok(format!("corpus and {RANDOM_LATTICES} random lattices, {} signatures", signatures.len()))
}

fn series_engine() -> Outcome {
    let p = int(4);
    let j = eisenstein(4, &p)
        .and_then(|e| e.pow(3))
        .and_then(|e| Ok(e.mul(&delta(&p).invert()?)))
        .map_err(|e| e.to_string())?;
    let jc = coeffs(&j, -1..2)?;
    let quotient = eta(1, &p).pow(16).and_then(|a| Ok(a.mul(&eta(2, &p).pow(-8)?))).map_err(|e| e.to_string())?;
    let ec = coeffs(&quotient, 0..4)?;
    ensure(
        jc == ints(&[1, 744, 196884]) && ec == ints(&[1, -16, 112, -448]),
        format!("j: {}; eta quotient: {}", show(&jc), show(&ec)),
    )
}

fn theta_enumeration() -> Outcome {
    let p = int(E8_THETA_PRECISION);
    let t = e8().theta_series(&vec![Q::zero(); 8], &p).map_err(|e| e.to_string())?;
    let e4 = eisenstein(4, &p).map_err(|e| e.to_string())?;
    if t != e4 {
        return Err("E8 theta differs from E4".into());
    }
    // E4³ − 720Δ is the theta series of the Leech lattice.
    let hp = int(LEECH_HALF_NORM + 1);
    let oracle = eisenstein(4, &hp)
        .and_then(|e| e.pow(3))
        .map(|e| e.sub(&delta(&hp).scale(&int(720))))
        .map_err(|e| e.to_string())?;
    let want = coeffs(&oracle, 0..LEECH_HALF_NORM + 1)?;
    let counts = leech().norm_counts(&vec![Q::zero(); 24], &int(LEECH_HALF_NORM)).map_err(|e| e.to_string())?;
    let mut got = vec![Q::zero(); (LEECH_HALF_NORM + 1) as usize];
    for (norm, c) in &counts {
        let n = (norm / int(2)).to_integer().to_usize().ok_or("bad norm")?;
        got[n] += int(*c as i64);
    }
    ensure(
        got == want && got[1].is_zero() && got[2] == int(196560),
        format!("E8 through q^10; Leech {}", show(&got)),
    )
}

fn weyl_vectors() -> Outcome {
    let mut norms = Vec::new();
    for ex in [corpus::ii_1_9_e4sq(&int(2)), corpus::ii_1_25_leech(&int(2)), corpus::ii_1_17_e4(&int(2))] {
        let ex = ex.map_err(|e| e.to_string())?;
        let w = weyl_vector(&ex.frame, &ex.form, &ex.generic_witness(), Convention::default()).map_err(|e| e.to_string())?;
        norms.push(w.norm());
    }
    let ex = corpus::ii_1_1_constant().map_err(|e| e.to_string())?;
    let w = weyl_vector(&ex.frame, &ex.form, &ex.generic_witness(), Convention::default()).map_err(|e| e.to_string())?;
    let scaled: Vec<Q> = w.to_m().iter().map(|x| x * int(24)).collect();
    let primitive = scaled.iter().all(|x| x.is_integer())
        && scaled.iter().fold(BigInt::zero(), |g, x| num_integer::gcd(g, x.to_integer())).is_one();
    ensure(
        norms == ints(&[1240, 0, 620]) && primitive,
        format!("ρ² = {}; 24ρ = ({}) in II1,1", show(&norms), show(&scaled)),
    )
}

fn inner_product() -> Outcome {
    let ex = corpus::ii_1_9_e4sq(&int(2)).map_err(|e| e.to_string())?;
    let w = weyl_vector(&ex.frame, &ex.form, &ex.generic_witness(), Convention::default()).map_err(|e| e.to_string())?;
    let m = ex.frame.lattice();
    let lam = [1i64, 1, 0, 0, 0, 0, 0, 0, 0, 0];
    let lq = ints(&lam);
    if m.norm(&lq) != int(2) {
        return Err("λ does not have norm 2".into());
    }
    // Resolve the chamber whose closure contains λ from a nearby point.
    let eps = [1234, 5678, 9012, 3457, 7891, 2345, 6789, 1357, 2468, 9753];
    let v: Vec<Q> = lq.iter().zip(eps).map(|(x, e)| x + q(e, 1_000_003)).collect();
    let (chamber, _) = phi_eval_hyperbolic(&w, &ex.form, &v).map_err(|e| e.to_string())?;
    let from_rho = m.inner(&chamber.to_m(), &lq);
    let from_theta = weyl_inner_product(&ex.form, &lam).map_err(|e| e.to_string())?;
    ensure(from_rho == from_theta, format!("(ρ, λ) = {} both ways", rational_to_string(&from_rho)))
}

fn congruences() -> Outcome {
    let mut parts = Vec::new();
    for (ex, want) in [(corpus::ii_1_25_e8cubed(&int(2)), 744), (corpus::ii_1_25_leech(&int(2)), 24)] {
        let ex = ex.map_err(|e| e.to_string())?;
        let small = reduce_to_smaller(&ex.form, &ex.frame).map_err(|e| e.to_string())?;
        let r = congruence_check(&small).map_err(|e| e.to_string())?;
        if r.constant != int(want) || !r.divisible || !(&r.constant / int(24)).is_integer() {
            return Err(format!("constant {}", rational_to_string(&r.constant)));
        }
        parts.push(rational_to_string(&r.constant));
    }
    let r = congruence_check(&corpus::a1_congruence_form()).map_err(|e| e.to_string())?;
    let ok = r.constant == int(12) && r.ideal == BigInt::from(2) && r.divisible;
    parts.push(format!("{} with N = {}", rational_to_string(&r.constant), r.ideal));
    ensure(ok, format!("constants {}", parts.join(", ")))
}

fn vector_systems() -> Outcome {
    let mut indices = Vec::new();
    for (ex, want) in [(corpus::ii_1_9_e4sq(&int(2)), 30), (corpus::ii_1_25_leech(&int(2)), 0)] {
        let ex = ex.map_err(|e| e.to_string())?;
        let small = reduce_to_smaller(&ex.form, &ex.frame).map_err(|e| e.to_string())?;
        let r = vector_system_check(&small).map_err(|e| e.to_string())?;
        if !r.holds || r.index != int(want) {
            return Err(format!("index {}", rational_to_string(&r.index)));
        }
        indices.push(r.index);
    }
    Ok(format!("indices {}", show(&indices)))
}

fn level_two_product() -> Outcome {
    let d = corpus::level_two_datum(&int(3)).map_err(|e| e.to_string())?;
    let mut h = vec![Q::zero(); 10];
    h[0] = int(1);
    h[1] = int(6);
    let mut w = vec![Q::zero(); 10];
    w[1] = int(1);
    let s = product_expansion(&d, &h, &int(RAY_PRECISION - 1), Some(&w)).map_err(|e| e.to_string())?;
    let got: Vec<Q> = ray_coefficients(&s, &w)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|c| c.to_rational().ok_or("non-rational coefficient"))
        .collect::<Result<_, _>>()?;
    let p = int(RAY_PRECISION);
    let oracle = eta(1, &p).pow(16).and_then(|a| Ok(a.mul(&eta(2, &p).pow(-8)?))).map_err(|e| e.to_string())?;
    let want = coeffs(&oracle, 0..RAY_PRECISION)?;
    if got != want || got[..4] != ints(&[1, -16, 112, -448]) {
        return Err(format!("ray {}", show(&got)));
    }

    let (weight, singular) = lift_weight(&d).map_err(|e| e.to_string())?;
    if weight != int(4) || !singular {
        return Err(format!("weight {}", rational_to_string(&weight)));
    }

    h[1] = int(3);
    let s = product_expansion(&d, &h, &int(SUPPORT_HEIGHT), None).map_err(|e| e.to_string())?;
    let off_cone = singular_weight_support(&s, &d).map_err(|e| e.to_string())?;
    if !off_cone.is_empty() {
        return Err(format!("{} terms off the null cone", off_cone.len()));
    }

    let mut lam = vec![Q::zero(); 12];
    lam[10] = q(1, 2);
    lam[11] = q(-1, 2);
    if d.form().lattice().norm(&lam) != int(-1) {
        return Err("divisor vector does not have norm −1".into());
    }
    let order = zero_orders(d.form(), &lam).map_err(|e| e.to_string())?;
    ensure(
        order.is_one(),
        format!("ray {}; weight 4 singular; {} terms on the null cone; zero order {}", show(&got), s.len(), order),
    )
}

fn shimura() -> Outcome {
    let (c, trunc) = corpus::shimura_stream();
    let input = ShimuraInput::new(2, c, trunc).map_err(|e| e.to_string())?;
    let lift = shimura_lift(&input, SHIMURA_PRECISION).map_err(|e| e.to_string())?;
    let got = coeffs(&lift, 1..SHIMURA_PRECISION)?;
    let p = int(SHIMURA_PRECISION);
    let oracle = eisenstein(4, &p)
        .and_then(|e| e.pow(-2))
        .map(|e| e.mul(&delta(&p)).scale(&int(64)))
        .map_err(|e| e.to_string())?;
    let want = coeffs(&oracle, 1..SHIMURA_PRECISION)?;
    ensure(got == want && got == ints(&[64, -32256, 11536128]), format!("b(1..3) = {}", show(&got)))
}

fn binomial_grid() -> Outcome {
    let mut vanishing = 0;
    for a in 0..=GRID {
        for b in 0..=GRID {
            for c in 0..=GRID {
                let (l, r) = binomial_vanishing(a, b, c);
                if l != r {
                    return Err(format!("identity fails at ({a}, {b}, {c})"));
                }
                if vanishing_predicted(a, b, c) {
                    if !l.is_zero() {
                        return Err(format!("no vanishing at ({a}, {b}, {c})"));
                    }
                    vanishing += 1;
                }
            }
        }
    }
    Ok(format!("{} triples, {vanishing} vanishing", (GRID + 1).pow(3)))
}

/// The primitive integer vector on the line through `v`.
fn primitive(v: &[Q]) -> Vec<i64> {
    let den = lcm_denominators(v.iter());
    let scaled: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(den.clone())).to_integer()).collect();
    let g = scaled.iter().fold(BigInt::zero(), |g, x| num_integer::gcd(g, x.clone()));
    scaled.iter().map(|x| (x / &g).to_i64().unwrap()).collect()
}

/// `ρ(W) − ρ(W(v))` as a telescoped sum of single wall crossings, starting
/// from a point `side` of the chamber of `weyl`.
fn telescoped(weyl: &thetalift::hyperbolic::WeylVector, f: &thetalift::weilrep::VectorValuedForm, side: &[Q], v: &[Q]) -> Result<Vec<Q>, String> {
    let mut walls: Vec<Vec<i64>> = separating_walls(weyl, f, v)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|(lam, _)| primitive(lam))
        .collect();
    walls.sort();
    walls.dedup();
    let mut total = vec![Q::zero(); v.len()];
    for wall in &walls {
        let d = wall_crossing_delta(f, wall, side).map_err(|e| e.to_string())?;
        for (t, x) in total.iter_mut().zip(d) {
            *t += x;
        }
    }
    Ok(total)
}

fn path_independence() -> Result<usize, String> {
    let ex = corpus::toy_u_plus_a1().map_err(|e| e.to_string())?;
    let f = &ex.form;
    let plus = weyl_vector(&ex.frame, f, &[q(1, 2)], Convention::default()).map_err(|e| e.to_string())?;
    let minus = weyl_vector(&ex.frame, f, &[q(-1, 2)], Convention::default()).map_err(|e| e.to_string())?;
    let plus_side = ex.frame.compose(&[q(1, 1000)], &int(1), &int(1000));
    let minus_side = ex.frame.compose(&[q(-1, 1000)], &int(1), &int(1000));
    let diff = |a: &[Q], b: &[Q]| a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<Q>>();
    let mut chambers = std::collections::BTreeSet::new();
    chambers.insert(plus.to_m());
    chambers.insert(minus.to_m());
    for p in [[3i64, 1, 1], [7, 2, -3], [1, 5, 2], [20, 1, 4], [9, 9, -5]] {
        let v: Vec<Q> = p.iter().zip([1, 3, 7]).map(|(&x, c)| int(x) + q(c, 997)).collect();
        let (via_plus, val_plus) = phi_eval_hyperbolic(&plus, f, &v).map_err(|e| e.to_string())?;
        let (via_minus, val_minus) = phi_eval_hyperbolic(&minus, f, &v).map_err(|e| e.to_string())?;
        let target = via_plus.to_m();
        if target != via_minus.to_m() || val_plus != val_minus {
            return Err(format!("paths to {p:?} disagree"));
        }
        if telescoped(&plus, f, &plus_side, &v)? != diff(&plus.to_m(), &target)
            || telescoped(&minus, f, &minus_side, &v)? != diff(&minus.to_m(), &target)
        {
            return Err(format!("telescoped crossings to {p:?} disagree"));
        }
        chambers.insert(target);
    }
    Ok(chambers.len())
}

fn hurwitz() -> Result<(), String> {
    let known = [
        q(-1, 12), int(0), int(0), q(1, 3), q(1, 2), int(0), int(0), int(1), int(1), int(0), int(0), int(1), q(4, 3),
    ];
    let table = hurwitz_class_numbers(HURWITZ_MAX);
    let g = zagier_g(HURWITZ_MAX + 1);
    if table.values != known || coeffs(&g, 0..HURWITZ_MAX as i64 + 1)? != known {
        return Err("Hurwitz table".into());
    }
    // θ³ counts sums of three squares: r₃(n) = 12(H(4n) − 2H(n)).
    let p = int(4);
    let theta = FracPowerSeries::from_terms((-2i64..=2).map(|k| (int(k * k), int(1))), Some(p.clone()));
    let r3 = coeffs(&theta.pow(3).map_err(|e| e.to_string())?, 0..4)?;
    for (n, r) in r3.iter().enumerate() {
        if *r != int(12) * (&known[4 * n] - int(2) * &known[n]) {
            return Err(format!("sums of three squares at n = {n}"));
        }
    }
    let g1 = zagier_g1(2);
    let d = g1.disc().clone();
    let (e0, e1) = (d.zero(), d.element_at(1));
    let shown = [(&e0, int(0), q(-1, 12)), (&e0, int(1), q(1, 2)), (&e1, q(3, 4), q(1, 3)), (&e1, q(7, 4), int(1))];
    for (g, n, want) in shown {
        if g1.coefficient(g, &n).map_err(|e| e.to_string())? != want {
            return Err("G1 components".into());
        }
    }
    ensure(g1.validate().is_empty(), "").map(|_| ())
}

const CLI_CASES: &[&[&str]] = &[
    &["latt-info", "--lattice", "I2,10even"],
    &["latt-theta", "--lattice", "A2", "--coset", "1/3,2/3"],
    &["weil-check", "--lattice", "U(2)"],
    &["vvf-validate", "--form", "toy-u-a1"],
    &["weyl-vector", "--form", "ii19-e4sq"],
    &["weyl-phi", "--form", "toy-u-a1", "--vector", "3/1000,1,1/997"],
    &["weyl-crossing", "--form", "toy-u-a1", "--wall", "0,0,1", "--side", "1000,1,1/1000"],
    &["weyl-congruence", "--form", "a1-congruence"],
    &["weyl-reflective", "--form", "ii19-e4sq"],
    &["lift-product", "--datum", "level-two", "--height-vector", "1,3,0,0,0,0,0,0,0,0", "--height-bound", "3"],
    &["lift-shimura", "--mplus", "2"],
    &["series-eval", "eta^16 / eta(2)^8"],
    &["paper-regress", "--filter", "shimura"],
];

fn cli_determinism() -> Result<usize, String> {
    let bin = env!("CARGO_BIN_EXE_thetalift");
    for args in CLI_CASES {
        let a = Command::new(bin).args(*args).output().map_err(|e| e.to_string())?;
        let b = Command::new(bin).args(*args).output().map_err(|e| e.to_string())?;
        if !a.status.success() {
            return Err(format!("{args:?} failed: {}", String::from_utf8_lossy(&a.stderr)));
        }
        if a.stdout != b.stdout || a.stderr != b.stderr || a.status != b.status {
            return Err(format!("{args:?} is not deterministic"));
        }
    }
    Ok(CLI_CASES.len())
}

fn property_suites() -> Outcome {
    let chambers = path_independence()?;
    if chambers < 3 {
        return Err(format!("only {chambers} chambers visited"));
    }
    hurwitz()?;
    let commands = cli_determinism()?;
    Ok(format!("{chambers} chambers agree; Hurwitz and G1 tables; {commands} commands byte-identical"))
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { title: "Weil representation relations on the corpus", budget: secs(30), run: weil_relations },
        Criterion { title: "squared Milgram formula, corpus and random lattices", budget: secs(60), run: milgram },
        Criterion { title: "series engine: j and the level 2 eta quotient", budget: secs(5), run: series_engine },
        Criterion { title: "theta series of E8 and Leech", budget: secs(300), run: theta_enumeration },
        Criterion { title: "Weyl vector norms and the II1,1 Weyl vector", budget: secs(120), run: weyl_vectors },
        Criterion { title: "(ρ, λ) from the Weyl vector and from the theta lift", budget: secs(120), run: inner_product },
        Criterion { title: "theta constant congruences", budget: secs(60), run: congruences },
        Criterion { title: "vector systems", budget: secs(120), run: vector_systems },
        Criterion { title: "level 2 product expansion", budget: secs(300), run: level_two_product },
        Criterion { title: "Shimura lift against 64Δ/E4²", budget: secs(10), run: shimura },
        Criterion { title: "binomial identity grid", budget: secs(1), run: binomial_grid },
        Criterion { title: "wall crossing, Hurwitz tables, CLI determinism", budget: secs(120), run: property_suites },
    ]
}

fn main() {
    let mut failures = 0;
    for (i, c) in criteria().iter().enumerate() {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if elapsed <= c.budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget")),
            Err(d) => (false, d),
        };
        if !ok {
            failures += 1;
        }
        println!(
            "{} {:>2} {} [{:.2}s / {}s] {}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            c.title,
            elapsed.as_secs_f64(),
            c.budget.as_secs(),
            detail
        );
    }
    println!("{} of 12 criteria passed", 12 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
