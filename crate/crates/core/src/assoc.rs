//! Associated polynomials of the Fermat equation and the maps between Fermat
//! triples and offset pairs.
//!
//! Substituting `A = C - D`, `B = C - E` into `A^n + B^n - C^n` gives the
//! monic polynomial
//!
//! ```text
//! P(C) = C^n + sum_{k=1..n} (-1)^k binom(n,k) (D^k + E^k) C^(n-k)
//! ```
//!
//! (the *alternating* family). When `B` is the even member, the offsets
//! `F = -B - A`, `G = C - B` and odd `n` give the all-plus family
//!
//! ```text
//! P(B) = B^n + sum_{k=1..n} binom(n,k) (F^k + G^k) B^(n-k)
//! ```
//!
//! (the *positive* family). An integer root of either is exactly a solution
//! of `A^n + B^n = C^n` for that pair.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, decimal, gcd, is_prime};
use crate::error::{Error, Result};
use crate::intpoly::IntPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `(D, E) = (C - A, C - B)`, signs alternate.
    Alternating,
    /// `(F, G) = (-B - A, C - B)`, all coefficients carry `+`.
    Positive,
}

impl Variant {
    fn letters(self) -> (&'static str, &'static str) {
        match self {
            Variant::Alternating => ("D", "E"),
            Variant::Positive => ("F", "G"),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Alternating => "alternating",
            Variant::Positive => "positive",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "alternating" | "alt" | "de" => Ok(Variant::Alternating),
            "positive" | "pos" | "fg" => Ok(Variant::Positive),
            other => Err(Error::arg(format!(
                "unknown variant {other:?} (expected alternating|positive)"
            ))),
        }
    }
}

/// A validated offset pair: both members odd and coprime.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OffsetPair {
    #[serde(with = "decimal")]
    d: BigInt,
    #[serde(with = "decimal")]
    e: BigInt,
    variant: Variant,
}

impl OffsetPair {
    pub fn new(d: impl Into<BigInt>, e: impl Into<BigInt>, variant: Variant) -> Result<Self> {
        let (d, e) = (d.into(), e.into());
        let (dn, en) = variant.letters();
        if d.is_even() {
            return Err(Error::Invariant(format!("{dn} must be odd (got {d})")));
        }
        if e.is_even() {
            return Err(Error::Invariant(format!("{en} must be odd (got {e})")));
        }
        let g = gcd(&d, &e);
        if !g.is_one() {
            return Err(Error::Invariant(format!(
                "{dn} and {en} must be coprime (gcd({d}, {e}) = {g})"
            )));
        }
        Ok(OffsetPair { d, e, variant })
    }

    pub fn alternating(d: i64, e: i64) -> Result<Self> {
        Self::new(d, e, Variant::Alternating)
    }

    pub fn positive(f: i64, g: i64) -> Result<Self> {
        Self::new(f, g, Variant::Positive)
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn e(&self) -> &BigInt {
        &self.e
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }
}

impl fmt::Display for OffsetPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (dn, en) = self.variant.letters();
        write!(f, "{dn}={}, {en}={}", self.d, self.e)
    }
}

/// Reject anything but an odd prime `n >= 3`.
pub fn check_exponent(n: u32) -> Result<()> {
    if n < 3 || n.is_multiple_of(2) || !is_prime(&BigInt::from(n)) {
        return Err(Error::Invariant(format!("n must be an odd prime (got {n})")));
    }
    Ok(())
}

/// `binom(n,k) (d^k + e^k)` for `k = 1..=n`.
pub fn offset_terms(pair: &OffsetPair, n: u32) -> Vec<BigInt> {
    (1..=n)
        .map(|k| {
            let b = binomial(n as i64, k as i64).expect("k <= n");
            b * (pair.d.pow(k) + pair.e.pow(k))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociatedPolynomial {
    n: u32,
    source: OffsetPair,
    poly: IntPoly,
}

impl AssociatedPolynomial {
    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn source(&self) -> &OffsetPair {
        &self.source
    }

    pub fn variant(&self) -> Variant {
        self.source.variant
    }

    /// Leading-first; the first entry is always 1.
    pub fn coefficients(&self) -> &[BigInt] {
        self.poly.coeffs()
    }

    pub fn as_intpoly(&self) -> &IntPoly {
        &self.poly
    }

    /// The Fermat triple whose residual `P(x)` measures, for a candidate root
    /// `x`.
    pub fn triple_at(&self, x: &BigInt) -> FermatTriple {
        offsets_to_triple(&self.source, x, self.n)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolyJson::from(self)).expect("serializable")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&PolyJson::from(self)).expect("serializable")
    }

    /// Parse and re-validate: the stored coefficients must equal the ones
    /// reconstructed from `(n, variant, d, e)`.
    pub fn from_json(s: &str) -> Result<Self> {
        let raw: PolyJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        raw.try_into()
    }
}

impl AsRef<IntPoly> for AssociatedPolynomial {
    fn as_ref(&self) -> &IntPoly {
        &self.poly
    }
}

/// Build the degree-`n` associated polynomial of `pair`.
pub fn construct(pair: &OffsetPair, n: u32) -> Result<AssociatedPolynomial> {
    check_exponent(n)?;
    // re-check in case the pair was built through deserialization
    let pair = OffsetPair::new(pair.d.clone(), pair.e.clone(), pair.variant)?;
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    coeffs.push(BigInt::one());
    for (i, term) in offset_terms(&pair, n).into_iter().enumerate() {
        let k = i + 1;
        let negate = pair.variant == Variant::Alternating && k % 2 == 1;
        coeffs.push(if negate { -term } else { term });
    }
    Ok(AssociatedPolynomial {
        n,
        source: pair,
        poly: IntPoly::new(coeffs),
    })
}

/// Horner evaluation.
pub fn evaluate(p: &AssociatedPolynomial, x: &BigInt) -> BigInt {
    p.poly.eval(x)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PolyJson {
    n: u32,
    variant: Variant,
    d: String,
    e: String,
    coefficients: Vec<String>,
}

impl From<&AssociatedPolynomial> for PolyJson {
    fn from(p: &AssociatedPolynomial) -> Self {
        PolyJson {
            n: p.n,
            variant: p.source.variant,
            d: p.source.d.to_string(),
            e: p.source.e.to_string(),
            coefficients: p.coefficients().iter().map(|c| c.to_string()).collect(),
        }
    }
}

impl TryFrom<PolyJson> for AssociatedPolynomial {
    type Error = Error;

    fn try_from(raw: PolyJson) -> Result<Self> {
        let d = decimal::parse(&raw.d).map_err(Error::Parse)?;
        let e = decimal::parse(&raw.e).map_err(Error::Parse)?;
        let coeffs = raw
            .coefficients
            .iter()
            .map(|c| decimal::parse(c).map_err(Error::Parse))
            .collect::<Result<Vec<_>>>()?;
        let pair = OffsetPair::new(d, e, raw.variant)?;
        let p = construct(&pair, raw.n)?;
        if p.coefficients() != coeffs.as_slice() {
            return Err(Error::Parse(format!(
                "coefficients do not match the {} polynomial for {pair}, n={}",
                raw.variant, raw.n
            )));
        }
        Ok(p)
    }
}

/// Which member of a primitive triple is even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ParityCase {
    /// A, B odd; C even.
    Case1,
    /// A odd, B even, C odd.
    Case2,
    /// A even, B odd, C odd.
    Case3,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FermatTriple {
    #[serde(with = "decimal")]
    pub a: BigInt,
    #[serde(with = "decimal")]
    pub b: BigInt,
    #[serde(with = "decimal")]
    pub c: BigInt,
    pub n: u32,
}

impl FermatTriple {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, n: u32) -> Self {
        FermatTriple {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            n,
        }
    }

    /// `A^n + B^n - C^n`.
    pub fn residual(&self) -> BigInt {
        self.a.pow(self.n) + self.b.pow(self.n) - self.c.pow(self.n)
    }

    pub fn is_solution(&self) -> bool {
        self.residual().is_zero()
    }

    /// At least one of A, B, C is zero.
    pub fn is_trivial(&self) -> bool {
        self.a.is_zero() || self.b.is_zero() || self.c.is_zero()
    }

    pub fn is_pairwise_coprime(&self) -> bool {
        gcd(&self.a, &self.b).is_one() && gcd(&self.a, &self.c).is_one() && gcd(&self.b, &self.c).is_one()
    }

    fn swapped(&self) -> FermatTriple {
        FermatTriple {
            a: self.b.clone(),
            b: self.a.clone(),
            c: self.c.clone(),
            n: self.n,
        }
    }
}

impl fmt::Display for FermatTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}; n={})", self.a, self.b, self.c, self.n)
    }
}

pub fn classify_parity_case(t: &FermatTriple) -> Result<ParityCase> {
    let evens = [t.a.is_even(), t.b.is_even(), t.c.is_even()];
    match evens {
        [false, false, true] => Ok(ParityCase::Case1),
        [false, true, false] => Ok(ParityCase::Case2),
        [true, false, false] => Ok(ParityCase::Case3),
        _ => {
            let count = evens.iter().filter(|&&e| e).count();
            Err(Error::Classification(format!(
                "{t}: exactly one member must be even, found {count}"
            )))
        }
    }
}

/// Case 1 gives `(D, E) = (C - A, C - B)`; cases 2 and 3 give
/// `(F, G) = (-B - A, C - B)`, after exchanging A and B in case 3.
pub fn triple_to_offsets(t: &FermatTriple) -> Result<OffsetPair> {
    match classify_parity_case(t)? {
        ParityCase::Case1 => OffsetPair::new(&t.c - &t.a, &t.c - &t.b, Variant::Alternating),
        ParityCase::Case2 => OffsetPair::new(-&t.b - &t.a, &t.c - &t.b, Variant::Positive),
        ParityCase::Case3 => triple_to_offsets(&t.swapped()),
    }
}

/// Inverse map: `x` is C for the alternating family and B for the positive
/// one.
pub fn offsets_to_triple(pair: &OffsetPair, x: &BigInt, n: u32) -> FermatTriple {
    match pair.variant {
        Variant::Alternating => FermatTriple::new(x - &pair.d, x - &pair.e, x.clone(), n),
        Variant::Positive => FermatTriple::new(-x - &pair.d, x.clone(), x + &pair.e, n),
    }
}

/// Whether every non-leading coefficient is even.
pub fn has_even_tail(p: &AssociatedPolynomial) -> bool {
    p.coefficients()[1..].iter().all(|c| c.is_even())
}

/// Sign pattern check: strictly alternating (alternating family with
/// positive offsets) or strictly positive (positive family with positive
/// offsets).
pub fn sign_pattern_holds(p: &AssociatedPolynomial) -> bool {
    let c = p.coefficients();
    match p.variant() {
        Variant::Alternating => c
            .iter()
            .enumerate()
            .all(|(k, v)| if k % 2 == 0 { v.is_positive() } else { v.is_negative() }),
        Variant::Positive => c.iter().all(|v| v.is_positive()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// `(x-d)^n + (x-e)^n - x^n` by repeated multiplication of the
    /// coefficient vectors, no binomials involved.
    fn brute_expansion(d: i64, e: i64, n: u32, sign: i64) -> Vec<BigInt> {
        let pow = |r: i64| {
            let mut acc = vec![BigInt::one()];
            for _ in 0..n {
                let mut next = vec![BigInt::zero(); acc.len() + 1];
                for (i, c) in acc.iter().enumerate() {
                    next[i] += c;
                    next[i + 1] += c * BigInt::from(-sign * r);
                }
                acc = next;
            }
            acc
        };
        let (pd, pe) = (pow(d), pow(e));
        let mut out: Vec<BigInt> = pd.iter().zip(&pe).map(|(a, b)| a + b).collect();
        out[0] -= 1;
        out
    }

    #[test]
    fn construct_examples() {
        let p = construct(&OffsetPair::alternating(1, 1).unwrap(), 3).unwrap();
        assert_eq!(p.coefficients(), ints(&[1, -6, 6, -2]).as_slice());
        assert_eq!(p.coefficients(), brute_expansion(1, 1, 3, 1).as_slice());

        let p = construct(&OffsetPair::alternating(1, 3).unwrap(), 3).unwrap();
        assert_eq!(p.coefficients(), ints(&[1, -12, 30, -28]).as_slice());
        assert_eq!(p.coefficients(), brute_expansion(1, 3, 3, 1).as_slice());

        let p = construct(&OffsetPair::positive(1, 3).unwrap(), 3).unwrap();
        assert_eq!(p.coefficients(), ints(&[1, 12, 30, 28]).as_slice());
        assert_eq!(p.coefficients(), brute_expansion(1, 3, 3, -1).as_slice());
    }

    #[test]
    fn construct_rejects_bad_input() {
        let pair = OffsetPair::alternating(1, 3).unwrap();
        for n in [0, 1, 2, 4, 9, 15] {
            let err = construct(&pair, n).unwrap_err();
            assert!(err.to_string().contains("n must be an odd prime"), "{err}");
        }
        let err = OffsetPair::alternating(1, 2).unwrap_err();
        assert!(err.to_string().contains("E must be odd"), "{err}");
        let err = OffsetPair::alternating(3, 9).unwrap_err();
        assert!(err.to_string().contains("coprime"), "{err}");
        let err = OffsetPair::positive(2, 3).unwrap_err();
        assert!(err.to_string().contains("F must be odd"), "{err}");
    }

    #[test]
    fn evaluate_examples() {
        let p11 = construct(&OffsetPair::alternating(1, 1).unwrap(), 3).unwrap();
        assert_eq!(evaluate(&p11, &BigInt::from(2)), BigInt::from(-6));
        assert_eq!(BigInt::from(1 + 1 - 8), BigInt::from(-6));
        let p13 = construct(&OffsetPair::alternating(1, 3).unwrap(), 3).unwrap();
        assert_eq!(evaluate(&p13, &BigInt::zero()), BigInt::from(-28));
    }

    #[test]
    fn trivial_solution_is_a_root() {
        // D = -E = 1: C = 0 gives A = -1, B = 1, a solution with ABC = 0
        for n in [3, 5, 7] {
            let p = construct(&OffsetPair::alternating(1, -1).unwrap(), n).unwrap();
            assert!(evaluate(&p, &BigInt::zero()).is_zero());
            let t = p.triple_at(&BigInt::zero());
            assert!(t.is_trivial() && t.is_solution());
        }
    }

    #[test]
    fn triple_offset_examples() {
        let t = FermatTriple::new(3, 5, 8, 3);
        let pair = triple_to_offsets(&t).unwrap();
        assert_eq!(pair, OffsetPair::alternating(5, 3).unwrap());
        assert_eq!(offsets_to_triple(&pair, &BigInt::from(8), 3), t);

        let t = FermatTriple::new(3, 8, 5, 3);
        let pair = triple_to_offsets(&t).unwrap();
        assert_eq!(pair, OffsetPair::positive(-11, -3).unwrap());
        assert_eq!(offsets_to_triple(&pair, &BigInt::from(8), 3), t);

        let err = triple_to_offsets(&FermatTriple::new(2, 4, 6, 3)).unwrap_err();
        assert!(matches!(err, Error::Classification(_)));
    }

    #[test]
    fn inverse_map_residual_matches_evaluate() {
        let pair = OffsetPair::alternating(1, 1).unwrap();
        let t = offsets_to_triple(&pair, &BigInt::from(2), 3);
        assert_eq!(t, FermatTriple::new(1, 1, 2, 3));
        assert_eq!(t.residual(), BigInt::from(-6));
        let p = construct(&pair, 3).unwrap();
        assert_eq!(evaluate(&p, &BigInt::from(2)), t.residual());
    }

    #[test]
    fn parity_cases() {
        let c = |a, b, cc| classify_parity_case(&FermatTriple::new(a, b, cc, 3));
        assert_eq!(c(3, 5, 8).unwrap(), ParityCase::Case1);
        assert_eq!(c(3, 8, 5).unwrap(), ParityCase::Case2);
        assert_eq!(c(8, 3, 5).unwrap(), ParityCase::Case3);
        assert!(c(3, 5, 7).is_err());
        assert!(c(2, 4, 7).is_err());
    }

    #[test]
    fn case_three_reduces_to_case_two_by_swap() {
        let t = FermatTriple::new(8, 3, 5, 3);
        let pair = triple_to_offsets(&t).unwrap();
        assert_eq!(pair.variant(), Variant::Positive);
        assert_eq!(offsets_to_triple(&pair, &BigInt::from(8), 3), t.swapped());
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let p = construct(&OffsetPair::positive(-11, -3).unwrap(), 5).unwrap();
        let s = p.to_json();
        assert_eq!(
            s,
            r#"{"n":5,"variant":"positive","d":"-11","e":"-3","coefficients":["1","-70","1300","-13580","73610","-161294"]}"#
        );
        let back = AssociatedPolynomial::from_json(&s).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.to_json(), s);
    }

    #[test]
    fn json_with_tampered_coefficients_is_rejected() {
        let bad = r#"{"n":3,"variant":"alternating","d":"1","e":"3","coefficients":["1","-12","30","-27"]}"#;
        assert!(matches!(AssociatedPolynomial::from_json(bad), Err(Error::Parse(_))));
        let bad = r#"{"n":3,"variant":"alternating","d":"1","e":"3","coefficients":["1","-12","30","-28.0"]}"#;
        assert!(AssociatedPolynomial::from_json(bad).is_err());
    }

    #[test]
    fn sign_patterns() {
        let p = construct(&OffsetPair::alternating(5, 3).unwrap(), 7).unwrap();
        assert!(sign_pattern_holds(&p));
        assert!(has_even_tail(&p));
        let p = construct(&OffsetPair::positive(7, 9).unwrap(), 5).unwrap();
        assert!(sign_pattern_holds(&p));
    }
}
