//! Dense univariate polynomials over the integers, coefficients stored
//! leading-first.
//!
//! This is the exact machinery underneath the root engine: evaluation at
//! integers and rationals, sign-preserving pseudo-remainders, primitive gcd,
//! square-free decomposition, and Sturm chains.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::decimal;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntPoly {
    #[serde(with = "decimal::vec")]
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Leading-first coefficients; leading zeros are stripped.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let first = coeffs.iter().position(|c| !c.is_zero());
        match first {
            Some(i) => IntPoly {
                coeffs: coeffs[i..].to_vec(),
            },
            None => IntPoly { coeffs: Vec::new() },
        }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x - r`
    pub fn linear(r: &BigInt) -> Self {
        IntPoly {
            coeffs: vec![BigInt::one(), -r],
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    pub fn constant(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.first().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Sign of `p(q)`, computed on the homogenized integer form.
    pub fn sign_at(&self, q: &BigRational) -> Ordering {
        let (a, b) = (q.numer(), q.denom());
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                bpow *= b;
            }
            acc = acc * a + c * &bpow;
        }
        // denominator is positive, so b^deg does not flip the sign
        acc.sign_cmp()
    }

    pub fn derivative(&self) -> IntPoly {
        let d = self.degree();
        if d == 0 {
            return IntPoly::new(Vec::new());
        }
        IntPoly::new(
            self.coeffs[..d]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(d - i))
                .collect(),
        )
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the (positive) content; signs are preserved.
    pub fn primitive(&self) -> IntPoly {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    fn with_positive_leading(self) -> IntPoly {
        if self.leading().is_negative() {
            IntPoly {
                coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
            }
        } else {
            self
        }
    }

    /// Pseudo-remainder scaled by a positive power of `|lc(divisor)|`, so its
    /// sign pattern matches the true remainder.
    pub fn signed_pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        assert!(!divisor.is_zero(), "pseudo-remainder by zero polynomial");
        let dl = divisor.leading();
        let scale = dl.abs();
        let flip = dl.is_negative();
        let dd = divisor.degree();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let lead = r[0].clone();
            if lead.is_zero() {
                r.remove(0);
                continue;
            }
            let factor = if flip { -lead } else { lead };
            for c in r.iter_mut() {
                *c *= &scale;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                r[i] -= &factor * dc;
            }
            debug_assert!(r[0].is_zero());
            r.remove(0);
        }
        IntPoly::new(r)
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self` over Z.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.degree() < divisor.degree() {
            return None;
        }
        let dl = divisor.leading();
        let mut r = self.coeffs.clone();
        let qlen = self.degree() - divisor.degree() + 1;
        let mut q = Vec::with_capacity(qlen);
        for i in 0..qlen {
            let (qi, rem) = r[i].div_rem(&dl);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                r[i + j] -= &qi * dc;
            }
            q.push(qi);
        }
        if r[qlen..].iter().all(Zero::is_zero) {
            Some(IntPoly::new(q))
        } else {
            None
        }
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive(), other.primitive())
        } else {
            (other.primitive(), self.primitive())
        };
        while !b.is_zero() {
            let r = a.signed_pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.with_positive_leading()
    }

    /// Yun square-free decomposition: `(factor, multiplicity)` pairs with
    /// primitive, positive-leading, pairwise coprime square-free factors
    /// whose product (with multiplicities) is the primitive part of `self`.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, usize)> {
        let f = self.primitive().with_positive_leading();
        if f.degree() == 0 {
            return Vec::new();
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        // a0 is primitive, so both quotients are exact over Z (Gauss)
        let mut b = f.div_exact(&a0).expect("gcd divides f");
        let mut c = df.div_exact(&a0).expect("gcd divides f'");
        let mut out = Vec::new();
        let mut i = 1;
        while b.degree() > 0 {
            let d = c.sub(&b.derivative());
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).expect("square-free factor divides b");
            c = d.div_exact(&a).expect("square-free factor divides d");
            i += 1;
        }
        out
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let pad = |p: &IntPoly| -> Vec<BigInt> {
            let mut v = vec![BigInt::zero(); n - p.coeffs.len()];
            v.extend(p.coeffs.iter().cloned());
            v
        };
        let (a, b) = (pad(self), pad(other));
        IntPoly::new(a.into_iter().zip(b).map(|(x, y)| x - y).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Strict bound `1 + max |c_i / c_0|`: every complex root has modulus
    /// below it.
    pub fn cauchy_bound(&self) -> BigInt {
        let lead = self.leading().abs();
        let max = self.coeffs[1..].iter().map(|c| c.abs()).max().unwrap_or_default();
        BigInt::one() + max.div_ceil(&lead)
    }

    /// Unique positive root of `|c_0| x^n - sum |c_i| x^(n-i)`, i.e. the
    /// tight Cauchy radius, computed in floating point.
    pub fn cauchy_radius(&self) -> f64 {
        use num_traits::ToPrimitive;
        let n = self.degree();
        if n == 0 {
            return 0.0;
        }
        let c: Vec<f64> = self
            .coeffs
            .iter()
            .map(|c| c.abs().to_f64().unwrap_or(f64::MAX))
            .collect();
        let g = |x: f64| {
            let mut acc = c[0];
            for ci in &c[1..] {
                acc = acc * x - ci;
            }
            acc
        };
        if c[1..].iter().all(|&v| v == 0.0) {
            return 0.0;
        }
        let mut hi = 1.0;
        while g(hi) <= 0.0 {
            hi *= 2.0;
        }
        let mut lo = 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) <= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    }
}

impl AsRef<IntPoly> for IntPoly {
    fn as_ref(&self) -> &IntPoly {
        self
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

/// Sturm chain of a square-free polynomial, each member reduced to its
/// primitive part.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Self {
        let mut chain = vec![p.clone(), p.derivative().primitive()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() || chain[n - 1].degree() == 0 {
                break;
            }
            let r = chain[n - 2].signed_pseudo_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            let neg = IntPoly::new(r.coeffs().iter().map(|c| -c).collect()).primitive();
            chain.push(neg);
        }
        chain.retain(|q| !q.is_zero());
        SturmChain { chain }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn sign_variations(&self, x: &BigRational) -> usize {
        let signs = self
            .chain
            .iter()
            .map(|p| p.sign_at(x))
            .filter(|s| *s != Ordering::Equal);
        count_variations(signs)
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.sign_variations(a).saturating_sub(self.sign_variations(b))
    }
}

fn count_variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut prev = None;
    let mut n = 0;
    for s in signs {
        if let Some(p) = prev {
            if p != s {
                n += 1;
            }
        }
        prev = Some(s);
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn evaluation_and_signs() {
        let f = p(&[1, -12, 30, -28]);
        assert_eq!(f.eval(&BigInt::from(9)), BigInt::from(-1));
        assert_eq!(f.eval(&BigInt::from(10)), BigInt::from(72));
        assert_eq!(f.sign_at(&q(19, 2)), Ordering::Greater);
        assert_eq!(p(&[2, -1]).sign_at(&q(1, 2)), Ordering::Equal);
    }

    #[test]
    fn exact_division() {
        let cube = p(&[1, -6, 12, -8]);
        let lin = IntPoly::linear(&BigInt::from(2));
        assert_eq!(cube.div_exact(&lin), Some(p(&[1, -4, 4])));
        assert_eq!(cube.div_exact(&IntPoly::linear(&BigInt::from(3))), None);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let a = p(&[1, -3, 2]); // (x-1)(x-2)
        let b = p(&[1, -5, 6]); // (x-2)(x-3)
        assert_eq!(a.gcd(&b), p(&[1, -2]));
        assert_eq!(p(&[2, 4]).gcd(&p(&[3, 6])), p(&[1, 2]));
    }

    #[test]
    fn yun_recovers_multiplicities() {
        // (x-2)^3 (x^2+1)
        let f = p(&[1, -6, 12, -8]).mul(&p(&[1, 0, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(p(&[1, 0, 1]), 1), (p(&[1, -2]), 3)]);

        // (x^2-2)^2 (x+1)
        let g = p(&[1, 0, -2]).mul(&p(&[1, 0, -2])).mul(&p(&[1, 1]));
        let dec = g.squarefree_decomposition();
        assert_eq!(dec, vec![(p(&[1, 1]), 1), (p(&[1, 0, -2]), 2)]);
    }

    #[test]
    fn sturm_counts_real_roots() {
        let f = p(&[1, 0, -2]); // +-sqrt 2
        let s = SturmChain::new(&f);
        assert_eq!(s.count_in(&q(-2, 1), &q(2, 1)), 2);
        assert_eq!(s.count_in(&q(0, 1), &q(2, 1)), 1);
        let g = p(&[1, -12, 30, -28]);
        let s = SturmChain::new(&g);
        let b = BigRational::from(g.cauchy_bound());
        assert_eq!(s.count_in(&-b.clone(), &b), 1);
        assert_eq!(s.count_in(&q(9, 1), &q(10, 1)), 1);
    }

    #[test]
    fn root_bounds_enclose_roots() {
        let f = p(&[1, -12, 30, -28]);
        assert_eq!(f.cauchy_bound(), BigInt::from(31));
        let r = f.cauchy_radius();
        assert!(r > 9.0175 && r < 31.0, "{r}");
    }
}
