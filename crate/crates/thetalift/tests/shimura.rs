use proptest::prelude::*;
use thetalift::arith::{int, Q};
use thetalift::corpus::shimura_stream;
use thetalift::qseries::bernoulli_number;
use thetalift::shimura::*;
use thetalift::Error;

fn plus_space_input() -> ShimuraInput {
    let (coeffs, trunc) = shimura_stream();
    ShimuraInput::new(2, coeffs, trunc).unwrap()
}

#[test]
fn listed_stream_lifts_to_the_expected_form() {
    let input = plus_space_input();
    let lift = shimura_lift(&input, 4).unwrap();
    assert_eq!(lift.coefficient_int(0).unwrap(), int(0));
    assert_eq!(lift.coefficient_int(1).unwrap(), int(64));
    assert_eq!(lift.coefficient_int(2).unwrap(), int(-32256));
    assert_eq!(lift.coefficient_int(2).unwrap(), int(64 * -504));
    assert_eq!(lift.coefficient_int(3).unwrap(), int(11536128));
    assert_eq!(lift.coefficient_int(3).unwrap(), int(64 * 180252));

    let check = verify_eta_quotient(&lift, 4).unwrap();
    assert!(check.equal);
    assert!(!check.precision_limited);
    assert_eq!(check.expected[1..].to_vec(), vec![int(64), int(-32256), int(11536128)]);
}

#[test]
fn fourth_coefficient_is_precision_limited() {
    let input = plus_space_input();
    assert!(matches!(shimura_lift(&input, 5), Err(Error::Precision(_))));
    assert!(matches!(divisor_sum_coefficient(&input, 4), Err(Error::Precision(_))));

    let lift = shimura_lift(&input, 4).unwrap();
    let check = verify_eta_quotient(&lift, 5).unwrap();
    assert!(check.precision_limited);
    assert_eq!(check.compared_below, 4);

    // Supplying c(16) extends the comparison. The value is forced by
    // b(4) = c(16) + 2c(4) + 4c(1) = 64·(−56364992).
    let (mut coeffs, _) = shimura_stream();
    let c16 = int(64 * -56364992) - int(2 * -32384) - int(4 * 64);
    coeffs.push((16, c16));
    let extended = ShimuraInput::new(2, coeffs, 17).unwrap();
    let lift = shimura_lift(&extended, 5).unwrap();
    let check = verify_eta_quotient(&lift, 5).unwrap();
    assert!(check.equal && !check.precision_limited);
}

#[test]
fn zero_input_is_reported_unequal() {
    let input = ShimuraInput::new(2, [], 12).unwrap();
    let lift = shimura_lift(&input, 4).unwrap();
    assert!(lift.is_zero());
    assert!(!verify_eta_quotient(&lift, 4).unwrap().equal);
}

#[test]
fn bernoulli_constant_only() {
    let input = ShimuraInput::new(2, [(0, int(1))], 50).unwrap();
    let lift = shimura_lift(&input, 7).unwrap();
    assert_eq!(lift.constant_term().unwrap(), Q::new((-1).into(), 24.into()));
    for n in 1..7 {
        assert_eq!(lift.coefficient_int(n).unwrap(), int(0));
    }
}

#[test]
fn m_plus_one_is_rejected() {
    let (coeffs, trunc) = shimura_stream();
    let err = ShimuraInput::new(1, coeffs, trunc).unwrap_err();
    assert!(matches!(err, Error::Unsupported(_)));
}

#[test]
fn level_one_constant_term_reduces_to_bernoulli_number() {
    // The general constant is linear in c(0); its coefficient at N = 1 must
    // be −B_{m⁺}/2m⁺.
    for m in [2u32, 4, 6] {
        let c = constant_term(m, 1, &[(0, int(1))]).unwrap();
        assert_eq!(c.to_rational(), Some(-bernoulli_number(m as u64) / int(2 * m as i64)));
        let input = ShimuraInput::new(m, [(0, int(7))], 10).unwrap();
        let lift = shimura_lift(&input, 2).unwrap();
        let general = constant_term(m, 1, &[(0, int(7))]).unwrap();
        assert_eq!(general.to_rational(), Some(lift.constant_term().unwrap()));
    }
}

#[test]
fn binomial_identity_on_grid() {
    for a in 0..=8 {
        for b in 0..=8 {
            for c in 0..=8 {
                let (lhs, rhs) = binomial_vanishing(a, b, c);
                assert_eq!(lhs, rhs, "A={a} B={b} C={c}");
                if vanishing_predicted(a, b, c) {
                    assert_eq!(lhs, int(0), "A={a} B={b} C={c}");
                }
            }
        }
    }
}

#[test]
fn binomial_identity_examples() {
    assert_eq!(binomial_vanishing(1, 0, 0), (int(0), int(0)));
    assert_eq!(binomial_vanishing(3, 1, 1), (int(0), int(0)));
    // A = 2, B = C = 1: rhs = binom(1,2) − binom(1,1)·binom(1,1) = −1.
    assert_eq!(binomial_vanishing(2, 1, 1), (int(-1), int(-1)));
}

fn stream() -> impl Strategy<Value = (u32, Vec<(i64, i64)>)> {
    (2u32..7, prop::collection::vec(-50i64..50, 30)).prop_map(|(m, vals)| {
        let coeffs = vals
            .into_iter()
            .enumerate()
            .map(|(i, v)| (i as i64 - 3, v))
            .filter(|(n, _)| n.rem_euclid(4) <= 1)
            .collect();
        (m, coeffs)
    })
}

proptest! {
    #[test]
    fn double_sum_matches_divisor_sum((m, coeffs) in stream()) {
        let input = ShimuraInput::new(m, coeffs.into_iter().map(|(n, c)| (n, int(c))), 27).unwrap();
        let prec = input.max_precision();
        let lift = shimura_lift(&input, prec).unwrap();
        for n in 1..prec {
            prop_assert_eq!(lift.coefficient_int(n).unwrap(), divisor_sum_coefficient(&input, n).unwrap());
        }
    }

    #[test]
    fn lift_is_linear((m, a) in stream(), (_, b) in stream()) {
        let mk = |v: &[(i64, i64)]| ShimuraInput::new(m, v.iter().map(|&(n, c)| (n, int(c))), 27).unwrap();
        let sum: Vec<(i64, i64)> = a.iter().zip(&b).map(|(x, y)| (x.0, x.1 + y.1)).collect();
        let la = shimura_lift(&mk(&a), 6).unwrap();
        let lb = shimura_lift(&mk(&b), 6).unwrap();
        let ls = shimura_lift(&mk(&sum), 6).unwrap();
        prop_assert_eq!(la.add(&lb), ls);
    }
}
