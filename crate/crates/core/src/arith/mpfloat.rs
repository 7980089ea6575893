//! Binary floating point with a caller-chosen mantissa width.
//!
//! A value is `mant * 2^exp` with `|mant| < 2^prec` after rounding. Only the
//! operations the Aberth iteration and the symmetric-function checks need are
//! provided; rounding is to nearest on the magnitude.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub struct MpFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn ldexp(x: f64, e: i64) -> f64 {
    let mut x = x;
    let mut e = e;
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

impl MpFloat {
    pub fn zero(prec: u32) -> Self {
        MpFloat {
            mant: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        Self::rounded(v.clone(), 0, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::from_bigint(&BigInt::from(v), prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let n = Self::from_bigint(q.numer(), prec + 2);
        let d = Self::from_bigint(q.denom(), prec + 2);
        (&n / &d).with_prec(prec)
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        assert!(v.is_finite(), "non-finite f64");
        if v == 0.0 {
            return Self::zero(prec);
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Self::rounded(BigInt::from(m) * sign, e, prec)
    }

    fn rounded(mant: BigInt, exp: i64, prec: u32) -> Self {
        if mant.is_zero() {
            return Self::zero(prec);
        }
        let bits = mant.bits();
        if bits <= prec as u64 {
            return MpFloat { mant, exp, prec };
        }
        let shift = bits - prec as u64;
        let (sign, mag) = mant.into_parts();
        let half = num_bigint::BigUint::one() << (shift - 1);
        let mag = (mag + half) >> shift;
        let mant = BigInt::from_biguint(sign, mag);
        let exp = exp + shift as i64;
        if mant.bits() > prec as u64 {
            Self::rounded(mant, exp, prec)
        } else {
            MpFloat { mant, exp, prec }
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::rounded(self.mant.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        MpFloat {
            mant: self.mant.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    /// Approximate `log2 |x|`; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.mant.bits();
        let top = if bits > 60 {
            (self.mant.abs() >> (bits - 60)).to_f64().unwrap_or(1.0)
        } else {
            self.mant.abs().to_f64().unwrap_or(1.0)
        };
        let shift = bits.saturating_sub(60) as f64;
        top.log2() + shift + self.exp as f64
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        if bits > 64 {
            let shift = bits - 64;
            let top = (&self.mant >> shift).to_f64().unwrap_or(0.0);
            ldexp(top, self.exp + shift as i64)
        } else {
            ldexp(self.mant.to_f64().unwrap_or(0.0), self.exp)
        }
    }

    /// Nearest integer (ties away from negative infinity).
    pub fn round_to_bigint(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << self.exp as usize;
        }
        let s = (-self.exp) as usize;
        let half = BigInt::one() << (s - 1);
        // BigInt shifts floor toward negative infinity
        (&self.mant + half) >> s
    }

    /// `|x - round(x)|`.
    pub fn distance_to_integer(&self) -> f64 {
        let r = MpFloat::from_bigint(&self.round_to_bigint(), self.prec);
        (self - &r).abs().to_f64()
    }

    /// Fixed-point decimal rendering with `frac_digits` digits after the point.
    pub fn to_decimal(&self, frac_digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(frac_digits as u32);
        let scaled = MpFloat {
            mant: &self.mant * &scale,
            exp: self.exp,
            prec: u32::MAX,
        }
        .round_to_bigint();
        let neg = scaled.is_negative();
        let digits = scaled.abs().to_str_radix(10);
        let digits = if digits.len() <= frac_digits {
            format!("{}{}", "0".repeat(frac_digits + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int_part, frac_part) = digits.split_at(digits.len() - frac_digits);
        let sign = if neg { "-" } else { "" };
        if frac_digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }

    /// Decimal digits carried by the mantissa width.
    pub fn decimal_digits(&self) -> usize {
        (self.prec as f64 * std::f64::consts::LOG10_2).floor() as usize
    }

    pub fn recip(&self) -> Self {
        &MpFloat::from_i64(1, self.prec) / self
    }
}

impl PartialEq for MpFloat {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for MpFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let d = self - other;
        Some(d.signum().cmp(&0))
    }
}

impl fmt::Display for MpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or_else(|| self.decimal_digits());
        f.write_str(&self.to_decimal(digits))
    }
}

impl<'a> Add<&'a MpFloat> for &'a MpFloat {
    type Output = MpFloat;

    fn add(self, rhs: &MpFloat) -> MpFloat {
        let prec = self.prec.max(rhs.prec);
        if rhs.is_zero() {
            return self.with_prec(prec);
        }
        if self.is_zero() {
            return rhs.with_prec(prec);
        }
        let top_a = self.exp + self.mant.bits() as i64;
        let top_b = rhs.exp + rhs.mant.bits() as i64;
        // an addend entirely below the rounding position only affects the
        // sticky bit; drop it
        if top_b < top_a - prec as i64 - 4 {
            return self.with_prec(prec);
        }
        if top_a < top_b - prec as i64 - 4 {
            return rhs.with_prec(prec);
        }
        let exp = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - exp) as usize;
        let b = &rhs.mant << (rhs.exp - exp) as usize;
        MpFloat::rounded(a + b, exp, prec)
    }
}

impl<'a> Sub<&'a MpFloat> for &'a MpFloat {
    type Output = MpFloat;

    fn sub(self, rhs: &MpFloat) -> MpFloat {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a MpFloat> for &'a MpFloat {
    type Output = MpFloat;

    fn mul(self, rhs: &MpFloat) -> MpFloat {
        let prec = self.prec.max(rhs.prec);
        MpFloat::rounded(&self.mant * &rhs.mant, self.exp + rhs.exp, prec)
    }
}

impl<'a> Div<&'a MpFloat> for &'a MpFloat {
    type Output = MpFloat;

    fn div(self, rhs: &MpFloat) -> MpFloat {
        assert!(!rhs.is_zero(), "MpFloat division by zero");
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return MpFloat::zero(prec);
        }
        let want = prec as i64 + 2 + rhs.mant.bits() as i64 - self.mant.bits() as i64;
        let shift = want.max(0);
        let q = (&self.mant << shift as usize) / &rhs.mant;
        MpFloat::rounded(q, self.exp - rhs.exp - shift, prec)
    }
}

impl Neg for &MpFloat {
    type Output = MpFloat;

    fn neg(self) -> MpFloat {
        MpFloat {
            mant: -&self.mant,
            exp: self.exp,
            prec: self.prec,
        }
    }
}

impl Neg for MpFloat {
    type Output = MpFloat;

    fn neg(self) -> MpFloat {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<MpFloat> for MpFloat {
            type Output = MpFloat;
            fn $method(self, rhs: MpFloat) -> MpFloat {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a MpFloat> for MpFloat {
            type Output = MpFloat;
            fn $method(self, rhs: &MpFloat) -> MpFloat {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

/// Complex number over [`MpFloat`].
#[derive(Clone, Debug, PartialEq)]
pub struct MpComplex {
    pub re: MpFloat,
    pub im: MpFloat,
}

impl MpComplex {
    pub fn new(re: MpFloat, im: MpFloat) -> Self {
        MpComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        MpComplex::new(MpFloat::zero(prec), MpFloat::zero(prec))
    }

    pub fn real(re: MpFloat) -> Self {
        let prec = re.prec();
        MpComplex::new(re, MpFloat::zero(prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        MpComplex::new(MpFloat::from_f64(re, prec), MpFloat::from_f64(im, prec))
    }

    pub fn conj(&self) -> Self {
        MpComplex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> MpFloat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    /// Approximate `log2 |z|`.
    pub fn log2_abs(&self) -> f64 {
        let a = self.re.log2_abs();
        let b = self.im.log2_abs();
        let hi = a.max(b);
        if hi == f64::NEG_INFINITY {
            return hi;
        }
        let lo = a.min(b);
        hi + 0.5 * (1.0 + 2f64.powf(2.0 * (lo - hi))).log2()
    }

    pub fn abs_f64(&self) -> f64 {
        self.log2_abs().exp2()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl<'a> Add<&'a MpComplex> for &'a MpComplex {
    type Output = MpComplex;
    fn add(self, rhs: &MpComplex) -> MpComplex {
        MpComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a MpComplex> for &'a MpComplex {
    type Output = MpComplex;
    fn sub(self, rhs: &MpComplex) -> MpComplex {
        MpComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a MpComplex> for &'a MpComplex {
    type Output = MpComplex;
    fn mul(self, rhs: &MpComplex) -> MpComplex {
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        MpComplex::new(re, im)
    }
}

impl<'a> Div<&'a MpComplex> for &'a MpComplex {
    type Output = MpComplex;
    fn div(self, rhs: &MpComplex) -> MpComplex {
        let den = rhs.norm_sqr();
        let num = self * &rhs.conj();
        MpComplex::new(&num.re / &den, &num.im / &den)
    }
}

impl Neg for &MpComplex {
    type Output = MpComplex;
    fn neg(self) -> MpComplex {
        MpComplex::new(-&self.re, -&self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    fn f(v: f64) -> MpFloat {
        MpFloat::from_f64(v, P)
    }

    #[test]
    fn f64_round_trip() {
        for v in [1.0, -2.5, 1e-300, 3.0e200, 0.1, -7.0 / 3.0] {
            assert_eq!(MpFloat::from_f64(v, P).to_f64(), v);
        }
    }

    #[test]
    fn arithmetic_matches_exact_rationals() {
        let a = BigRational::new(BigInt::from(1), BigInt::from(3));
        let b = BigRational::new(BigInt::from(-22), BigInt::from(7));
        let fa = MpFloat::from_rational(&a, P);
        let fb = MpFloat::from_rational(&b, P);
        let check = |got: MpFloat, want: BigRational| {
            let diff = &got - &MpFloat::from_rational(&want, P);
            assert!(diff.log2_abs() < -(P as f64) + 4.0, "{got} vs {want}");
        };
        check(&fa + &fb, &a + &b);
        check(&fa - &fb, &a - &b);
        check(&fa * &fb, &a * &b);
        check(&fa / &fb, &a / &b);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(f(2.5).to_decimal(3), "2.500");
        assert_eq!(f(-0.125).to_decimal(2), "-0.12");
        assert_eq!(f(-0.126).to_decimal(2), "-0.13");
        assert_eq!(f(0.0).to_decimal(2), "0.00");
        assert_eq!(f(1234.0).to_decimal(0), "1234");
    }

    #[test]
    fn rounding_to_integers() {
        assert_eq!(f(2.4).round_to_bigint(), BigInt::from(2));
        assert_eq!(f(-2.6).round_to_bigint(), BigInt::from(-3));
        assert_eq!(f(7.0).round_to_bigint(), BigInt::from(7));
        assert!((f(2.25).distance_to_integer() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn tiny_addend_is_absorbed() {
        let big = f(1.0);
        let tiny = MpFloat::from_f64(1e-200, P);
        assert_eq!((&big + &tiny).to_f64(), 1.0);
        assert_eq!((&tiny + &big).to_f64(), 1.0);
    }

    #[test]
    fn complex_division_inverts_multiplication() {
        let a = MpComplex::from_f64(1.5, -2.0, P);
        let b = MpComplex::from_f64(-0.25, 3.0, P);
        let back = &(&a * &b) / &b;
        let err = (&back - &a).log2_abs();
        assert!(err < -120.0, "{err}");
        assert!((MpComplex::from_f64(3.0, 4.0, P).abs_f64() - 5.0).abs() < 1e-12);
    }
}
