use num_bigint::BigInt;
use proptest::prelude::*;
use thetalift::arith::{
    gauss_sum, milgram_holds, milgram_squared_holds, parse_rational, q, rational_to_string, Cyclotomic, Q,
};
use thetalift::cli::regress::weil_corpus;
use thetalift::lattice::EvenLattice;

fn rational() -> impl Strategy<Value = Q> {
    (-60i64..60, prop::sample::select(vec![1i64, 2, 3, 4, 5, 6, 8, 10, 12])).prop_map(|(n, d)| q(n, d))
}

fn element() -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec((rational(), -3i64..4), 1..4).prop_map(|terms| {
        terms
            .iter()
            .fold(Cyclotomic::zero(), |acc, (x, c)| acc.add(&Cyclotomic::e(x).scale(&Q::from_integer(BigInt::from(*c)))))
    })
}

/// Small symmetric Gram matrices with even diagonal; singular ones are
/// filtered out.
fn even_lattice() -> impl Strategy<Value = EvenLattice> {
    (1usize..=6)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(-2i64..=2, n * n)))
        .prop_filter_map("singular Gram matrix", |(n, raw)| {
            let mut g = vec![vec![0i64; n]; n];
            for i in 0..n {
                for j in 0..=i {
                    let x = raw[i * n + j];
                    if i == j {
                        g[i][i] = 2 * x;
                    } else {
                        g[i][j] = x;
                        g[j][i] = x;
                    }
                }
            }
            let l = EvenLattice::new("random", g).ok()?;
            let d = l.det();
            (d != BigInt::from(0) && d.magnitude() <= &200u32.into()).then_some(l)
        })
}

#[test]
fn milgram_on_the_corpus() {
    for l in weil_corpus() {
        let d = l.discriminant_form();
        assert!(milgram_squared_holds(&d), "{}", l.name());
        assert!(milgram_holds(&d), "{}", l.name());
    }
}

#[test]
fn gauss_sum_of_trivial_group_is_one() {
    let l = thetalift::lattice::e8();
    assert_eq!(gauss_sum(&l.discriminant_form()), Cyclotomic::one());
}

#[test]
fn rational_strings_round_trip() {
    for s in ["0", "-3", "7/12", "-1/24"] {
        assert_eq!(rational_to_string(&parse_rational(s).unwrap()), s);
    }
    assert_eq!(parse_rational("4/6").unwrap(), q(2, 3));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("x").is_err());
}

proptest! {
    #[test]
    fn roots_of_unity_multiply(x in rational(), y in rational()) {
        let lhs = Cyclotomic::e(&x).mul(&Cyclotomic::e(&y));
        prop_assert_eq!(lhs, Cyclotomic::e(&(&x + &y)));
    }

    #[test]
    fn root_times_conjugate_is_one(x in rational()) {
        let z = Cyclotomic::e(&x);
        prop_assert_eq!(z.mul(&z.conj()), Cyclotomic::one());
    }

    #[test]
    fn canonical_form_is_idempotent(a in element()) {
        let m = a.minimal();
        prop_assert_eq!(m.minimal().order(), m.order());
        prop_assert_eq!(&m, &a);
        prop_assert_eq!(a.lift(3 * a.order()), a.clone());
    }

    #[test]
    fn field_operations(a in element(), b in element()) {
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        if let Some(inv) = b.inv() {
            prop_assert_eq!(a.mul(&b).mul(&inv), a.clone());
        } else {
            prop_assert!(b.is_zero());
        }
    }

    #[test]
    fn squared_milgram_on_random_lattices(l in even_lattice()) {
        prop_assert!(milgram_squared_holds(&l.discriminant_form()), "{:?}", l);
    }
}
