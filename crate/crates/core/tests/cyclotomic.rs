use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use sl2triv::cyclotomic::{gauss_sqrt_q0, sum_all};
use sl2triv::CycNum;

fn z(m: u64, k: i64) -> CycNum {
    CycNum::zeta(m, k)
}

#[test]
fn sums_of_roots() {
    for m in [2u64, 3, 4, 5, 6, 8, 9, 12, 15, 16, 27] {
        let s = sum_all((0..m as i64).map(|k| z(m, k)));
        assert!(s.is_zero(), "sum of {m}-th roots");
    }
    // 1 + z3 + z3^2 = 0 and z4^2 = -1
    assert_eq!(&z(3, 1) + &z(3, 2), CycNum::from_int(-1));
    assert_eq!(z(4, 1).pow(2), CycNum::from_int(-1));
    assert_eq!(z(8, 1).pow(4), CycNum::from_int(-1));
    assert_eq!(z(6, 1), -z(3, 2));
}

#[test]
fn conjugate_and_rationality() {
    let x = &z(7, 1) + &z(7, 6);
    assert_eq!(x.conjugate(), x);
    assert!(!x.is_rational());
    assert!(x.to_rational().is_err());
    let y = &z(5, 2) + &z(5, 3) + (&z(5, 1) + &z(5, 4));
    assert_eq!(y.to_rational().unwrap(), BigRational::from_integer(BigInt::from(-1)));
    assert_eq!(z(12, 5).conjugate(), z(12, 7));
    assert_eq!(CycNum::frac(3, 6), CycNum::frac(1, 2));
}

#[test]
fn gauss_sums() {
    // q0 = -3, 5, 9
    for (q, q0) in [(3u64, -3i64), (5, 5), (7, -7), (9, 9), (13, 13), (25, 25), (27, -27)] {
        let g = gauss_sqrt_q0(q).unwrap();
        assert_eq!(g.pow(2), CycNum::from_int(q0), "q = {q}");
    }
    // sqrt(-3) = z3 - z3^2 with the trace form
    let g3 = gauss_sqrt_q0(3).unwrap();
    assert_eq!(g3, &z(3, 1) - &z(3, 2));
    // Davenport-Hasse: g(GF(p^2)) = -g(GF(p))^2
    assert_eq!(gauss_sqrt_q0(9).unwrap(), CycNum::from_int(3));
    assert_eq!(gauss_sqrt_q0(25).unwrap(), CycNum::from_int(-5));
    assert!(gauss_sqrt_q0(8).is_err());
    assert!(gauss_sqrt_q0(12).is_err());
}

#[test]
fn approximations() {
    let a = z(8, 1).approx();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    assert!((a.re - r).abs() < 1e-12 && (a.im - r).abs() < 1e-12);
    let g = gauss_sqrt_q0(5).unwrap().approx();
    assert!((g.re - 5f64.sqrt()).abs() < 1e-12 && g.im.abs() < 1e-12);
}

#[test]
fn json_round_trip() {
    let x = &z(15, 4).scale_int(3) + &CycNum::frac(-2, 7);
    let s = serde_json::to_string(&x).unwrap();
    let y: CycNum = serde_json::from_str(&s).unwrap();
    assert_eq!(x, y);
}

fn arb() -> impl Strategy<Value = CycNum> {
    let moduli = prop::sample::select(vec![1u64, 3, 4, 5, 8, 12, 15, 24]);
    (moduli, prop::collection::vec((0i64..24, -5i64..6, 1i64..4), 0..5)).prop_map(|(m, ts)| {
        sum_all(ts.into_iter().map(|(k, a, b)| z(m, k).scale(&BigRational::new(a.into(), b.into()))))
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in arb(), b in arb(), c in arb()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &CycNum::one(), a.clone());
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
    }

    #[test]
    fn roots_have_order_m(m in 1u64..40, k in -50i64..50) {
        prop_assert_eq!(z(m, k).pow(m as u32), CycNum::one());
        prop_assert_eq!(&z(m, k) * &z(m, -k), CycNum::one());
    }

    #[test]
    fn galois_is_multiplicative(a in arb(), b in arb(), t in prop::sample::select(vec![1i64, 7, 11, 13, 17, 19, 23])) {
        prop_assert_eq!((&a * &b).galois(t), &a.galois(t) * &b.galois(t));
    }
}
