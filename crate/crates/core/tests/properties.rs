use assocpoly::arith::BigInt;
use assocpoly::assoc::{
    construct, evaluate, has_even_tail, offsets_to_triple, sign_pattern_holds, triple_to_offsets, FermatTriple,
    OffsetPair, Variant,
};
use assocpoly::intpoly::{IntPoly, SturmChain};
use assocpoly::roots::{all_roots_numeric, integer_roots_divisor, integer_roots_sturm, DivisorOutcome};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn odd_coprime_pair() -> impl Strategy<Value = (i64, i64)> {
    (-49i64..=49, -49i64..=49)
        .prop_map(|(a, b)| (2 * a + 1, 2 * b + 1))
        .prop_filter("coprime", |(d, e)| num_integer::gcd(*d, *e) == 1)
}

fn prime_exponent() -> impl Strategy<Value = u32> {
    prop_oneof![Just(3u32), Just(5), Just(7)]
}

/// `(x - d)^n + (x - e)^n - x^n` by repeated multiplication.
fn expand(d: i64, e: i64, n: u32, x: &BigInt, positive: bool) -> BigInt {
    let pw = |b: BigInt| (0..n).fold(BigInt::one(), |acc, _| acc * &b);
    let (d, e) = (BigInt::from(d), BigInt::from(e));
    if positive {
        pw(x + d) + pw(x + e) - pw(x.clone())
    } else {
        pw(x - d) + pw(x - e) - pw(x.clone())
    }
}

fn from_roots(roots: &[i64], extra: &IntPoly) -> IntPoly {
    roots
        .iter()
        .fold(extra.clone(), |acc, &r| acc.mul(&IntPoly::linear(&BigInt::from(r))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn expansion_identity((d, e) in odd_coprime_pair(), n in prime_exponent(), x in -10_000i64..=10_000, positive in any::<bool>()) {
        let variant = if positive { Variant::Positive } else { Variant::Alternating };
        let pair = OffsetPair::new(d, e, variant).unwrap();
        let p = construct(&pair, n).unwrap();
        let x = BigInt::from(x);
        prop_assert_eq!(evaluate(&p, &x), expand(d, e, n, &x, positive));
    }

    #[test]
    fn alternating_tail_is_even((d, e) in odd_coprime_pair(), n in prime_exponent()) {
        let p = construct(&OffsetPair::alternating(d, e).unwrap(), n).unwrap();
        prop_assert!(has_even_tail(&p));
    }

    #[test]
    fn sign_structure((d, e) in odd_coprime_pair(), n in prime_exponent(), positive in any::<bool>()) {
        let (d, e) = (d.abs(), e.abs());
        let variant = if positive { Variant::Positive } else { Variant::Alternating };
        let p = construct(&OffsetPair::new(d, e, variant).unwrap(), n).unwrap();
        prop_assert!(sign_pattern_holds(&p));
    }

    #[test]
    fn triple_round_trip(a in -200i64..=200, b in -200i64..=200, c in -200i64..=200, n in prime_exponent()) {
        let t = FermatTriple::new(a, b, c, n);
        if let Ok(pair) = triple_to_offsets(&t) {
            let back_plain = offsets_to_triple(&pair, &t.c, n);
            let back_pos = offsets_to_triple(&pair, &t.b, n);
            let back_swapped = offsets_to_triple(&pair, &t.a, n);
            let swapped = FermatTriple::new(b, a, c, n);
            match pair.variant() {
                Variant::Alternating => prop_assert_eq!(back_plain, t),
                Variant::Positive => prop_assert!(back_pos == t || back_swapped == swapped),
            }
        }
    }

    #[test]
    fn deciders_agree_on_planted_roots(
        roots in prop::collection::vec(-60i64..=60, 0..4),
        q in prop::collection::vec(-30i64..=30, 0..3),
    ) {
        let mut extra = vec![1i64];
        extra.extend(q);
        let p = from_roots(&roots, &IntPoly::from_i64s(&extra));
        prop_assume!(p.degree() > 0);
        let sturm = integer_roots_sturm(&p);
        for r in &sturm {
            prop_assert!(p.eval(r).is_zero());
        }
        let mut planted: Vec<BigInt> = roots.iter().map(|&r| BigInt::from(r)).collect();
        planted.sort();
        // every planted root appears, with at least its planted multiplicity
        for r in &planted {
            let want = planted.iter().filter(|x| *x == r).count();
            prop_assert!(sturm.iter().filter(|x| *x == r).count() >= want);
        }
        // exhaustive candidates within the Cauchy bound are the ground truth
        let bound: i64 = p.cauchy_bound().try_into().unwrap();
        let brute: Vec<BigInt> = (-bound..=bound).map(BigInt::from).filter(|x| p.eval(x).is_zero()).collect();
        let mut distinct = sturm.clone();
        distinct.dedup();
        prop_assert_eq!(&distinct, &brute);
        if let DivisorOutcome::Complete { roots, .. } = integer_roots_divisor(&p) {
            prop_assert_eq!(roots, distinct);
        }
    }

    #[test]
    fn yun_factors_multiply_back(roots in prop::collection::vec(-9i64..=9, 1..6), q in -5i64..=5) {
        let p = from_roots(&roots, &IntPoly::from_i64s(&[1, 0, q]));
        let mut back = IntPoly::from_i64s(&[1]);
        for (f, m) in p.squarefree_decomposition() {
            for _ in 0..m {
                back = back.mul(&f);
            }
        }
        prop_assert_eq!(back, p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn numeric_roots_are_consistent((d, e) in odd_coprime_pair(), n in prime_exponent(), positive in any::<bool>()) {
        let variant = if positive { Variant::Positive } else { Variant::Alternating };
        let pair = OffsetPair::new(d, e, variant).unwrap();
        let p = construct(&pair, n).unwrap();
        let rs = all_roots_numeric(&p, 128).unwrap();
        prop_assert!(rs.count_is_consistent());

        // completeness against an independent Sturm count on the square-free part
        let ip = p.as_intpoly();
        let sqf = ip.div_exact(&ip.gcd(&ip.derivative())).unwrap();
        let b = BigRational::from(sqf.cauchy_bound());
        let count = SturmChain::new(&sqf).count_in(&-b.clone(), &b);
        prop_assert_eq!(count, rs.listed_distinct_real());

        // sum and product against the coefficients
        let all = rs.all_roots();
        let sum: f64 = all.iter().map(|z| z.re.to_f64()).sum();
        let c1 = ip.coeffs()[1].to_string().parse::<f64>().unwrap();
        prop_assert!((sum + c1).abs() <= 1e-9 * c1.abs().max(1.0));
        prop_assert!(rs.vieta_relative_error(ip) < 1e-9);

        // conjugate closure: every stored pair has a positive imaginary part
        for c in &rs.complex_pairs {
            prop_assert!(c.im.signum() > 0);
            prop_assert!(c.residual < 1e-20 * (1.0 + c1.abs()).powi(n as i32));
        }
    }
}

#[test]
fn round_trip_exhaustive_small_box() {
    let mut checked = 0;
    for a in -40i64..=40 {
        for b in -40i64..=40 {
            for c in -40i64..=40 {
                let t = FermatTriple::new(a, b, c, 3);
                let Ok(pair) = triple_to_offsets(&t) else { continue };
                checked += 1;
                let back = match pair.variant() {
                    Variant::Alternating => offsets_to_triple(&pair, &t.c, 3),
                    Variant::Positive if b % 2 == 0 => offsets_to_triple(&pair, &t.b, 3),
                    // A was the even member; the map works on (B, A, C)
                    Variant::Positive => {
                        let s = offsets_to_triple(&pair, &t.a, 3);
                        FermatTriple::new(s.b, s.a, s.c, 3)
                    }
                };
                assert_eq!(back, t);
            }
        }
    }
    assert!(checked > 100_000, "{checked}");
}
