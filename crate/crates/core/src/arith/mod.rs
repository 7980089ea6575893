//! Exact integer and rational primitives.
//!
//! Integers and rationals are the `num` types; this module adds the handful of
//! number-theoretic operations the rest of the crate needs (binomials, gcd,
//! factorization) plus a small binary floating-point type for the numeric
//! root finder.

pub mod factor;
pub mod mpfloat;

use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use factor::{factor, factor_with, is_prime, FactorBudget, Factorization};
pub use mpfloat::{MpComplex, MpFloat};

/// `n choose k`, exact.
pub fn binomial(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 || k < 0 {
        return Err(Error::arg(format!("binomial({n}, {k}): negative argument")));
    }
    if k > n {
        return Err(Error::arg(format!("binomial({n}, {k}): k exceeds n")));
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc * (n - i) is always divisible by (i + 1) at this point
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Ok(acc)
}

/// Nonnegative greatest common divisor; `gcd(0, 0) == 0`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

pub fn is_odd(a: &BigInt) -> bool {
    a.is_odd()
}

/// Least nonnegative residue of `a` modulo `m` (`m > 0`).
pub fn modulo(a: &BigInt, m: u32) -> u32 {
    let r = a.mod_floor(&BigInt::from(m));
    // r in [0, m)
    r.iter_u32_digits().next().unwrap_or(0)
}

/// Product of a slice of integers (empty product is 1).
pub fn product(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::one(), |acc, v| acc * v)
}

/// Smallest integer `>= q`.
pub fn ceil(q: &BigRational) -> BigInt {
    q.ceil().to_integer()
}

/// Largest integer `<= q`.
pub fn floor(q: &BigRational) -> BigInt {
    q.floor().to_integer()
}

/// Serde adapters that write big integers as decimal strings.
pub mod decimal {
    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(D::Error::custom)
    }

    pub(crate) fn parse(s: &str) -> Result<BigInt, String> {
        let t = s.trim();
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("not a decimal integer: {s:?}"));
        }
        t.parse::<BigInt>().map_err(|e| format!("{s:?}: {e}"))
    }

    pub mod vec {
        use num_bigint::BigInt;
        use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&x.to_str_radix(10))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
            let raw = Vec::<String>::deserialize(d)?;
            raw.iter().map(|s| super::parse(s).map_err(D::Error::custom)).collect()
        }
    }

    pub mod option {
        use num_bigint::BigInt;
        use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(x) => s.serialize_some(&x.to_str_radix(10)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
            let raw = Option::<String>::deserialize(d)?;
            raw.map(|s| super::parse(&s).map_err(D::Error::custom)).transpose()
        }
    }
}

/// Rational as `"p/q"` (or `"p"` when integral).
pub fn rational_to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn factorial(n: i64) -> BigInt {
        (1..=n).fold(BigInt::one(), |acc, i| acc * i)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(3, 1).unwrap(), BigInt::from(3));
        assert_eq!(binomial(7, 3).unwrap(), factorial(7) / (factorial(3) * factorial(4)));
        assert_eq!(binomial(7, 3).unwrap(), BigInt::from(35));
        assert_eq!(binomial(5, 0).unwrap(), BigInt::one());
    }

    #[test]
    fn binomial_rejects_bad_arguments() {
        assert!(binomial(3, 4).is_err());
        assert!(binomial(-1, 0).is_err());
        assert!(binomial(3, -1).is_err());
    }

    #[test]
    fn binomial_rows_sum_to_powers_of_two() {
        for n in 0..=30i64 {
            let sum: BigInt = (0..=n).map(|k| binomial(n, k).unwrap()).sum();
            assert_eq!(sum, BigInt::one() << n as usize, "row {n}");
        }
    }

    #[test]
    fn gcd_examples() {
        let g = |a: i64, b: i64| gcd(&BigInt::from(a), &BigInt::from(b));
        assert_eq!(g(12, 18), BigInt::from(6));
        assert_eq!(g(7, 0), BigInt::from(7));
        assert_eq!(g(1, 3), BigInt::one());
        assert_eq!(g(0, 0), BigInt::zero());
        assert_eq!(g(-12, 18), BigInt::from(6));
    }

    #[test]
    fn modulo_is_nonnegative() {
        assert_eq!(modulo(&BigInt::from(-1), 4), 3);
        assert_eq!(modulo(&BigInt::from(34), 4), 2);
    }

    #[test]
    fn decimal_parse_rejects_junk() {
        assert!(decimal::parse("12a").is_err());
        assert!(decimal::parse("").is_err());
        assert!(decimal::parse("1e5").is_err());
        assert_eq!(decimal::parse("-28").unwrap(), BigInt::from(-28));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn gcd_is_greatest_common_divisor(a in -1_000_000i64..=1_000_000, b in -1_000_000i64..=1_000_000) {
            let (ba, bb) = (BigInt::from(a), BigInt::from(b));
            let g = gcd(&ba, &bb);
            prop_assert!(g >= BigInt::zero());
            if g.is_zero() {
                prop_assert!(a == 0 && b == 0);
            } else {
                prop_assert!((&ba % &g).is_zero());
                prop_assert!((&bb % &g).is_zero());
                // every common divisor up to a small bound divides g
                for d in 1..=50i64 {
                    if a % d == 0 && b % d == 0 {
                        prop_assert!((&g % d).is_zero());
                    }
                }
            }
        }

        #[test]
        fn rational_add_sub_is_exact(
            a in -10_000i64..10_000, b in 1i64..10_000,
            c in -10_000i64..10_000, d in 1i64..10_000,
        ) {
            let x = BigRational::new(a.into(), b.into());
            let y = BigRational::new(c.into(), d.into());
            let back = (&x + &y) - &y;
            prop_assert_eq!(&back, &x);
            prop_assert!(back.denom() > &BigInt::zero());
            prop_assert!(gcd(back.numer(), back.denom()).is_one() || back.numer().is_zero());
        }
    }
}
