use proptest::prelude::*;
use thetalift::arith::{int, q, Q};
use thetalift::qseries::{
    bernoulli_number, bernoulli_poly, delta, eisenstein, eta, hurwitz_class_numbers, j_invariant, periodic_bernoulli,
    zagier_g, zagier_g1, FracPowerSeries,
};

fn series() -> impl Strategy<Value = FracPowerSeries> {
    (
        prop::collection::vec((-4i64..12, 1i64..4, -20i64..20), 0..8),
        8i64..14,
    )
        .prop_map(|(terms, t)| {
            let terms = terms.into_iter().map(|(n, d, c)| (q(n, d), int(c)));
            FracPowerSeries::from_terms(terms, Some(int(t)))
        })
}

/// Power series with constant term 1, so that they are units.
fn unit() -> impl Strategy<Value = FracPowerSeries> {
    (prop::collection::vec(-9i64..9, 1..10), 4i64..12).prop_map(|(cs, t)| {
        let mut vals = vec![int(1)];
        vals.extend(cs.into_iter().map(int));
        FracPowerSeries::from_dense(2, 0, vals, Some(int(t)))
    })
}

fn coefficients(s: &FracPowerSeries, n: i64) -> Vec<Q> {
    (0..n).map(|k| s.coefficient_int(k).unwrap()).collect()
}

#[test]
fn eta_to_the_24_is_delta() {
    let p = int(20);
    let lhs = eta(1, &p).pow(24).unwrap();
    let d = delta(&p);
    assert!(lhs.agrees_with(&d));
    assert_eq!(d.coefficient_int(2).unwrap(), int(-24));
    assert_eq!(d.coefficient_int(3).unwrap(), int(252));
}

#[test]
fn e4_cubed_minus_e6_squared() {
    let p = int(16);
    let e4 = eisenstein(4, &p).unwrap();
    let e6 = eisenstein(6, &p).unwrap();
    let lhs = e4.pow(3).unwrap().sub(&e6.pow(2).unwrap());
    assert!(lhs.agrees_with(&delta(&p).scale(&int(1728))));
}

#[test]
fn j_has_the_familiar_coefficients() {
    let j = j_invariant(&int(3));
    assert_eq!(j.coefficient_int(-1).unwrap(), int(1));
    assert_eq!(j.constant_term().unwrap(), int(744));
    assert_eq!(j.coefficient_int(1).unwrap(), int(196884));
    assert_eq!(j.coefficient_int(2).unwrap(), int(21493760));
}

#[test]
fn level_two_eta_quotient() {
    let p = int(4);
    let s = eta(1, &p).pow(16).unwrap().mul(&eta(2, &p).pow(-8).unwrap());
    assert_eq!(coefficients(&s, 4), [int(1), int(-16), int(112), int(-448)]);
}

#[test]
fn truncation_is_tracked() {
    let a = FracPowerSeries::from_terms([(int(0), int(1)), (int(1), int(1))], Some(int(5)));
    let b = FracPowerSeries::from_terms([(int(2), int(3))], Some(int(4)));
    assert_eq!(a.mul(&b).truncation(), Some(&int(4)));
    assert_eq!(a.add(&b).truncation(), Some(&int(4)));
    assert!(a.coefficient_int(5).is_err());
    let exact = FracPowerSeries::from_terms([(int(0), int(1)), (int(1), int(1))], None);
    assert!(exact.invert().is_err());
}

#[test]
fn hurwitz_table_matches_the_g_expansion() {
    let g = zagier_g(13);
    let expected = [
        (0, q(-1, 12)),
        (3, q(1, 3)),
        (4, q(1, 2)),
        (7, int(1)),
        (8, int(1)),
        (11, int(1)),
        (12, q(4, 3)),
    ];
    for n in 0..13 {
        let want = expected.iter().find(|(k, _)| *k == n).map(|(_, v)| v.clone()).unwrap_or_else(|| int(0));
        assert_eq!(g.coefficient_int(n).unwrap(), want, "H({n})");
    }
}

#[test]
fn g1_components_match_the_displayed_values() {
    let g1 = zagier_g1(2);
    let d = g1.disc().clone();
    let e0 = d.zero();
    let e1 = d.element_at(1);
    assert_eq!(g1.coefficient(&e0, &int(0)).unwrap(), q(-1, 12));
    assert_eq!(g1.coefficient(&e0, &int(1)).unwrap(), q(1, 2));
    assert_eq!(g1.coefficient(&e1, &q(3, 4)).unwrap(), q(1, 3));
    assert_eq!(g1.coefficient(&e1, &q(7, 4)).unwrap(), int(1));
    assert!(g1.validate().is_empty());
}

#[test]
fn g1_components_reassemble_g() {
    // H(n) vanishes unless n ≡ 0, 3 mod 4, so G(τ) = g₀(4τ) + g₁(4τ).
    let prec = 4usize;
    let g1 = zagier_g1(prec);
    let d = g1.disc().clone();
    let e0 = g1.component(&d.zero()).rescale_exponents(&int(4));
    let e1 = g1.component(&d.element_at(1)).rescale_exponents(&int(4));
    let g = zagier_g(4 * prec);
    assert!(e0.add(&e1).agrees_with(&g));
    assert_eq!(hurwitz_class_numbers(12).values, coefficients(&g, 13));
}

#[test]
fn bernoulli_numbers() {
    assert_eq!(bernoulli_number(4), q(-1, 30));
    assert_eq!(bernoulli_number(6), q(1, 42));
    assert_eq!(bernoulli_number(12), q(-691, 2730));
    assert_eq!(bernoulli_poly(2, &q(1, 2)), q(-1, 12));
}

proptest! {
    #[test]
    fn multiplication_is_associative(f in series(), g in series(), h in series()) {
        let lhs = f.mul(&g).mul(&h);
        let rhs = f.mul(&g.mul(&h));
        prop_assert!(lhs.agrees_with(&rhs));
        prop_assert_eq!(lhs.truncation(), rhs.truncation());
    }

    #[test]
    fn multiplication_distributes(f in series(), g in series(), h in series()) {
        prop_assert!(f.mul(&g.add(&h)).agrees_with(&f.mul(&g).add(&f.mul(&h))));
    }

    #[test]
    fn inverse_is_two_sided(u in unit(), shift in -3i64..4) {
        let u = u.shift(&int(shift));
        let inv = u.invert().unwrap();
        let one = FracPowerSeries::constant(int(1));
        prop_assert!(u.mul(&inv).agrees_with(&one));
        prop_assert!(inv.mul(&u).agrees_with(&one));
        let expected = u.truncation().map(|t| t - int(shift));
        prop_assert_eq!(u.mul(&inv).truncation().cloned(), expected);
    }

    #[test]
    fn periodic_bernoulli_has_period_one(m in 1u64..=6, n in -40i64..40, d in 1i64..13, k in -5i64..6) {
        let x = q(n, d);
        prop_assert_eq!(periodic_bernoulli(m, &x), periodic_bernoulli(m, &(&x + int(k))));
    }
}
