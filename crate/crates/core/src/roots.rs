//! Root engine.
//!
//! Integer-root decisions are exact: square-free reduction, Sturm isolation
//! over the Cauchy bound, bisection in rational arithmetic, and exact
//! evaluation of the surviving integer candidates. The divisor route (rational
//! root theorem over the factored constant term) is kept as an independent
//! cross-check. Non-real roots are approximated by Aberth iteration on each
//! square-free factor and classified against the conjugate-pair model.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, decimal, factor, rational_to_string, Factorization, MpComplex, MpFloat};
use crate::error::{Error, Result};
use crate::intpoly::{IntPoly, SturmChain};

pub const DEFAULT_PRECISION: u32 = 128;
pub const DEFAULT_TOLERANCE: f64 = 1e-6;
/// Largest remaining-root count for which every matching is enumerated.
pub const EXHAUSTIVE_PAIRING_LIMIT: usize = 13;

const GUARD_BITS: u32 = 64;
const REPORT_INTERVAL_BITS: u32 = 40;
const MAX_ABERTH_ITERATIONS: usize = 2_000;

enum Refined {
    Exact(BigRational),
    Interval(BigRational, BigRational),
}

fn dyadic(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits as usize)
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

fn midpoint(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / BigInt::from(2)
}

/// Isolating intervals `(lo, hi]` of the distinct real roots of a
/// square-free polynomial, ascending.
pub fn isolate_real_roots(f: &IntPoly) -> Vec<(BigRational, BigRational)> {
    if f.degree() == 0 {
        return Vec::new();
    }
    let chain = SturmChain::new(f);
    let bound = BigRational::from(f.cauchy_bound());
    let lo = -bound.clone();
    let (vlo, vhi) = (chain.sign_variations(&lo), chain.sign_variations(&bound));
    let mut out = Vec::new();
    isolate_rec(&chain, lo, vlo, bound, vhi, &mut out);
    out
}

fn isolate_rec(
    chain: &SturmChain,
    a: BigRational,
    va: usize,
    b: BigRational,
    vb: usize,
    out: &mut Vec<(BigRational, BigRational)>,
) {
    match va.saturating_sub(vb) {
        0 => {}
        1 => out.push((a, b)),
        _ => {
            let m = midpoint(&a, &b);
            let vm = chain.sign_variations(&m);
            isolate_rec(chain, a, va, m.clone(), vm, out);
            isolate_rec(chain, m, vm, b, vb, out);
        }
    }
}

/// Bisect `(a, b]`, which holds exactly one simple root of `f`, until it is
/// narrower than `width` or the root is hit exactly. Only the sign at the
/// right end is used, so `a` may itself be a root of `f`.
fn refine(f: &IntPoly, mut a: BigRational, mut b: BigRational, width: &BigRational) -> Refined {
    let sb = f.sign_at(&b);
    if sb.is_eq() {
        return Refined::Exact(b);
    }
    while &(&b - &a) >= width {
        let m = midpoint(&a, &b);
        let sm = f.sign_at(&m);
        if sm.is_eq() {
            return Refined::Exact(m);
        }
        if sm == sb {
            b = m;
        } else {
            a = m;
        }
    }
    Refined::Interval(a, b)
}

/// The integer in `(a, b]` that is a root of `f`, if any.
fn integer_root_in(f: &IntPoly, a: &BigRational, b: &BigRational) -> Option<BigInt> {
    let mut m = arith::ceil(a);
    let hi = arith::floor(b);
    while m <= hi {
        if BigRational::from(m.clone()) > *a && f.eval(&m).is_zero() {
            return Some(m);
        }
        m += 1;
    }
    None
}

fn squarefree_integer_roots(f: &IntPoly) -> Vec<BigInt> {
    let mut out = Vec::new();
    for (a, b) in isolate_real_roots(f) {
        match refine(f, a, b, &half()) {
            Refined::Exact(q) => {
                if q.is_integer() {
                    out.push(q.to_integer());
                }
            }
            Refined::Interval(a, b) => out.extend(integer_root_in(f, &a, &b)),
        }
    }
    out
}

/// All integer roots with multiplicity, ascending.
pub fn integer_roots_sturm<P: AsRef<IntPoly> + ?Sized>(p: &P) -> Vec<BigInt> {
    let p = p.as_ref();
    if p.degree() == 0 {
        return Vec::new();
    }
    let g = p.gcd(&p.derivative());
    let sqf = p.div_exact(&g).expect("primitive gcd divides p");
    let mut out = Vec::new();
    for r in squarefree_integer_roots(&sqf) {
        let lin = IntPoly::linear(&r);
        let mut q = p.clone();
        while let Some(next) = q.div_exact(&lin) {
            out.push(r.clone());
            q = next;
        }
    }
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DivisorOutcome {
    /// Distinct integer roots, ascending.
    Complete {
        #[serde(with = "decimal::vec")]
        roots: Vec<BigInt>,
        candidates_tested: usize,
    },
    /// The constant term could not be fully factored within budget.
    Incomplete {
        #[serde(with = "decimal")]
        cofactor: BigInt,
    },
}

impl DivisorOutcome {
    pub fn roots(&self) -> Option<&[BigInt]> {
        match self {
            DivisorOutcome::Complete { roots, .. } => Some(roots),
            DivisorOutcome::Incomplete { .. } => None,
        }
    }
}

fn divisors_from_primes(primes: &[BigInt]) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    let mut i = 0;
    while i < primes.len() {
        let p = &primes[i];
        let mut j = i;
        while j < primes.len() && &primes[j] == p {
            j += 1;
        }
        let mult = j - i;
        let mut next = Vec::with_capacity(divs.len() * (mult + 1));
        for d in &divs {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..mult {
                pk *= p;
                next.push(pk.clone());
            }
        }
        divs = next;
        i = j;
    }
    divs.sort();
    divs
}

/// Integer roots by the rational root theorem: every integer root divides
/// the constant term. Zero constant terms contribute the root 0 and the
/// search continues on the deflated polynomial.
pub fn integer_roots_divisor<P: AsRef<IntPoly> + ?Sized>(p: &P) -> DivisorOutcome {
    let mut q = p.as_ref().clone();
    let mut roots = Vec::new();
    let x = IntPoly::linear(&BigInt::zero());
    while q.degree() > 0 && q.constant().is_zero() {
        if roots.is_empty() {
            roots.push(BigInt::zero());
        }
        q = q.div_exact(&x).expect("x divides a polynomial with zero constant term");
    }
    let mut tested = 0;
    if q.degree() > 0 {
        let c = q.constant().abs();
        let primes = match factor(&c).expect("nonzero constant") {
            Factorization::Complete(primes) => primes,
            Factorization::Incomplete { cofactor, .. } => return DivisorOutcome::Incomplete { cofactor },
        };
        for d in divisors_from_primes(&primes) {
            for cand in [-&d, d] {
                tested += 1;
                if q.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    DivisorOutcome::Complete {
        roots,
        candidates_tested: tested,
    }
}

fn horner_with_derivative(coeffs: &[MpComplex], z: &MpComplex) -> (MpComplex, MpComplex) {
    let prec = z.re.prec();
    let mut p = coeffs[0].clone();
    let mut dp = MpComplex::zero(prec);
    for c in &coeffs[1..] {
        dp = &(&dp * z) + &p;
        p = &(&p * z) + c;
    }
    (p, dp)
}

fn eval_complex(poly: &IntPoly, z: &MpComplex) -> MpComplex {
    let prec = z.re.prec();
    poly.coeffs().iter().fold(MpComplex::zero(prec), |acc, c| {
        &(&acc * z) + &MpComplex::real(MpFloat::from_bigint(c, prec))
    })
}

/// All complex roots of a square-free polynomial by Aberth-Ehrlich
/// iteration, started on a rotated circle whose radius is the Cauchy root
/// bound. Every correction must fall below `2^-(precision_bits + 16)`
/// relative to `max(1, |z|)`.
pub fn aberth(f: &IntPoly, precision_bits: u32) -> Result<Vec<MpComplex>> {
    let n = f.degree();
    let work = precision_bits + GUARD_BITS;
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        let c = f.coeffs();
        let root = BigRational::new(-c[1].clone(), c[0].clone());
        return Ok(vec![MpComplex::real(MpFloat::from_rational(&root, work))]);
    }
    let coeffs: Vec<MpComplex> = f
        .coeffs()
        .iter()
        .map(|c| MpComplex::real(MpFloat::from_bigint(c, work)))
        .collect();
    let radius = f.cauchy_radius().max(1e-3);
    let mut z: Vec<MpComplex> = (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            MpComplex::from_f64(radius * theta.cos(), radius * theta.sin(), work)
        })
        .collect();
    let one = MpComplex::real(MpFloat::from_i64(1, work));
    let target = -(precision_bits as f64 + 16.0);
    let mut worst = f64::INFINITY;
    for _ in 0..MAX_ABERTH_ITERATIONS {
        let mut converged = true;
        worst = f64::NEG_INFINITY;
        for i in 0..n {
            let (p, dp) = horner_with_derivative(&coeffs, &z[i]);
            if p.is_zero() {
                continue;
            }
            if dp.is_zero() {
                // nudge off a critical point
                let nudge = MpComplex::from_f64(1e-3 * radius, 1e-3 * radius, work);
                z[i] = &z[i] + &nudge;
                converged = false;
                continue;
            }
            let ratio = &p / &dp;
            let mut repulsion = MpComplex::zero(work);
            for j in 0..n {
                if j != i {
                    let diff = &z[i] - &z[j];
                    if !diff.is_zero() {
                        repulsion = &repulsion + &(&one / &diff);
                    }
                }
            }
            let denom = &one - &(&ratio * &repulsion);
            let w = if denom.is_zero() { ratio } else { &ratio / &denom };
            z[i] = &z[i] - &w;
            let scale = z[i].log2_abs().max(0.0);
            let rel = w.log2_abs() - scale;
            worst = worst.max(rel);
            if rel > target {
                converged = false;
            }
        }
        if converged {
            return Ok(z);
        }
    }
    Err(Error::NonConvergence {
        iterations: MAX_ABERTH_ITERATIONS,
        max_correction: worst.exp2(),
        partial: z.iter().map(MpComplex::to_f64).collect(),
    })
}

/// An irrational real root with an exact isolating interval `(lo, hi]` and
/// a high-precision value.
#[derive(Debug, Clone)]
pub struct RealRoot {
    pub lo: BigRational,
    pub hi: BigRational,
    pub value: MpFloat,
}

/// `re ± i·im` with `im > 0`; `residual` bounds `|P|` at both members.
#[derive(Debug, Clone)]
pub struct ComplexPair {
    pub re: MpFloat,
    pub im: MpFloat,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct RootSet {
    pub degree: usize,
    pub precision_bits: u32,
    /// With multiplicity, ascending.
    pub integer_roots: Vec<BigInt>,
    /// With multiplicity, ascending.
    pub real_irrational: Vec<RealRoot>,
    /// With multiplicity.
    pub complex_pairs: Vec<ComplexPair>,
    /// Distinct real roots counted by a Sturm chain of the square-free part.
    pub distinct_real_roots: usize,
}

/// Every root of a monic integer polynomial: exact integer roots, isolated
/// irrational real roots, and conjugate pairs approximated at
/// `precision_bits`.
pub fn all_roots_numeric<P: AsRef<IntPoly> + ?Sized>(p: &P, precision_bits: u32) -> Result<RootSet> {
    let p = p.as_ref();
    if precision_bits < 64 {
        return Err(Error::arg(format!(
            "precision must be at least 64 bits (got {precision_bits})"
        )));
    }
    if !p.is_monic() {
        return Err(Error::arg("root engine expects a monic polynomial"));
    }
    let work = precision_bits + GUARD_BITS;
    let mut integer_roots = Vec::new();
    let mut real_irrational = Vec::new();
    let mut complex_pairs = Vec::new();

    for (f, mult) in p.squarefree_decomposition() {
        let intervals = isolate_real_roots(&f);
        let real_count = intervals.len();
        for (a, b) in intervals {
            let found = match refine(&f, a, b, &half()) {
                Refined::Exact(q) => Err(q),
                Refined::Interval(a, b) => match integer_root_in(&f, &a, &b) {
                    Some(m) => Err(BigRational::from(m)),
                    None => Ok((a, b)),
                },
            };
            match found {
                Err(q) => {
                    // factors of a monic integer polynomial are monic, so a
                    // rational root is an integer
                    debug_assert!(q.is_integer());
                    integer_roots.extend(std::iter::repeat_n(q.to_integer(), mult));
                }
                Ok((a, b)) => {
                    let (lo, hi) = match refine(&f, a, b, &dyadic(REPORT_INTERVAL_BITS)) {
                        Refined::Interval(lo, hi) => (lo, hi),
                        Refined::Exact(q) => {
                            return Err(Error::Verification(format!(
                                "non-integer rational root {q} of a monic factor"
                            )))
                        }
                    };
                    let value = match refine(&f, lo.clone(), hi.clone(), &dyadic(work)) {
                        Refined::Interval(a, b) => MpFloat::from_rational(&midpoint(&a, &b), work),
                        Refined::Exact(q) => MpFloat::from_rational(&q, work),
                    };
                    let root = RealRoot { lo, hi, value };
                    real_irrational.extend(std::iter::repeat_n(root, mult));
                }
            }
        }

        let ncomplex = f.degree() - real_count;
        if ncomplex == 0 {
            continue;
        }
        let mut zs = aberth(&f, precision_bits)?;
        zs.sort_by(|a, b| b.im.abs().partial_cmp(&a.im.abs()).unwrap_or(std::cmp::Ordering::Equal));
        zs.truncate(ncomplex);
        let (upper, lower): (Vec<_>, Vec<_>) = zs.into_iter().partition(|z| z.im.signum() > 0);
        if upper.len() != lower.len() {
            return Err(Error::Verification(format!(
                "non-real roots do not close under conjugation ({} above, {} below the axis)",
                upper.len(),
                lower.len()
            )));
        }
        let mut lower: Vec<Option<MpComplex>> = lower.into_iter().map(Some).collect();
        for u in upper {
            let conj = u.conj();
            let (k, _) = lower
                .iter()
                .enumerate()
                .filter_map(|(k, l)| l.as_ref().map(|l| (k, (l - &conj).log2_abs())))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
                .expect("partner available");
            let l = lower[k].take().expect("unused partner");
            let two = MpFloat::from_i64(2, work);
            let re = &(&u.re + &l.re) / &two;
            let im = &(&u.im - &l.im) / &two;
            // evaluated with twice the working precision so the residual is
            // not swamped by cancellation
            let wide = MpComplex::new(re.with_prec(2 * work), im.with_prec(2 * work));
            let residual = eval_complex(p, &wide)
                .log2_abs()
                .max(eval_complex(p, &wide.conj()).log2_abs())
                .exp2()
                * (1.0 + 1e-9);
            let pair = ComplexPair { re, im, residual };
            complex_pairs.extend(std::iter::repeat_n(pair, mult));
        }
    }

    integer_roots.sort();
    real_irrational.sort_by(|a, b| a.lo.cmp(&b.lo));
    complex_pairs.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });

    let sqf = p.div_exact(&p.gcd(&p.derivative())).expect("primitive gcd divides p");
    let bound = BigRational::from(sqf.cauchy_bound());
    let distinct_real_roots = SturmChain::new(&sqf).count_in(&-bound.clone(), &bound);

    let rs = RootSet {
        degree: p.degree(),
        precision_bits,
        integer_roots,
        real_irrational,
        complex_pairs,
        distinct_real_roots,
    };
    let err = rs.vieta_relative_error(p);
    let allowed = (-(precision_bits as f64) / 2.0).exp2();
    if err.is_nan() || err > allowed {
        return Err(Error::Verification(format!(
            "reconstructed coefficients deviate by {err:e} (allowed {allowed:e})"
        )));
    }
    Ok(rs)
}

impl RootSet {
    /// Integer roots, then irrational real roots, then each complex pair as
    /// `(re + i im, re - i im)`.
    pub fn all_roots(&self) -> Vec<MpComplex> {
        let work = self.precision_bits + GUARD_BITS;
        let mut out: Vec<MpComplex> = self
            .integer_roots
            .iter()
            .map(|r| MpComplex::real(MpFloat::from_bigint(r, work)))
            .collect();
        out.extend(self.real_irrational.iter().map(|r| MpComplex::real(r.value.clone())));
        for pair in &self.complex_pairs {
            let z = MpComplex::new(pair.re.clone(), pair.im.clone());
            out.push(z.conj().conj());
            out.push(z.conj());
        }
        out
    }

    pub fn count_is_consistent(&self) -> bool {
        self.integer_roots.len() + self.real_irrational.len() + 2 * self.complex_pairs.len() == self.degree
    }

    /// Distinct real roots as listed (integers and irrationals).
    pub fn listed_distinct_real(&self) -> usize {
        let mut ints = self.integer_roots.clone();
        ints.dedup();
        let mut n = ints.len();
        let mut prev: Option<&BigRational> = None;
        for r in &self.real_irrational {
            if prev != Some(&r.lo) {
                n += 1;
            }
            prev = Some(&r.lo);
        }
        n
    }

    /// Largest relative deviation between the elementary symmetric
    /// functions of the listed roots and the signed coefficients of `p`,
    /// measured against `max(1, |coefficient|)`.
    pub fn vieta_relative_error(&self, p: &IntPoly) -> f64 {
        let work = self.precision_bits + GUARD_BITS;
        let e = elementary_symmetric(&self.all_roots(), work);
        let coeffs = p.coeffs();
        if e.len() != coeffs.len() {
            return f64::INFINITY;
        }
        let mut worst: f64 = 0.0;
        for (k, (ek, ck)) in e.iter().zip(coeffs).enumerate().skip(1) {
            let target = if k % 2 == 1 { -ck } else { ck.clone() };
            let t = MpComplex::real(MpFloat::from_bigint(&target, work));
            let diff = (ek - &t).log2_abs();
            let scale = t.log2_abs().max(0.0);
            worst = worst.max((diff - scale).exp2());
        }
        worst
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(RootSetJson::from(self)).expect("serializable")
    }
}

/// `e_0 .. e_m` of the given values (`e_0 = 1`).
pub fn elementary_symmetric(values: &[MpComplex], prec: u32) -> Vec<MpComplex> {
    let mut e = vec![MpComplex::real(MpFloat::from_i64(1, prec))];
    for z in values {
        let mut next = e.clone();
        next.push(MpComplex::zero(prec));
        for k in 1..next.len() {
            next[k] = &e.get(k).cloned().unwrap_or_else(|| MpComplex::zero(prec)) + &(z * &e[k - 1]);
        }
        e = next;
    }
    e
}

/// Decimal rendering of a complex approximation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Approx {
    pub re: String,
    pub im: String,
}

impl Approx {
    pub fn new(z: &MpComplex, digits: usize) -> Self {
        Approx {
            re: z.re.to_decimal(digits),
            im: z.im.to_decimal(digits),
        }
    }
}

fn digits_for(precision_bits: u32) -> usize {
    (precision_bits as f64 * std::f64::consts::LOG10_2).floor() as usize
}

#[derive(Serialize)]
struct IntervalJson {
    interval: [String; 2],
    value: String,
}

#[derive(Serialize)]
struct PairJson {
    re: String,
    im: String,
    residual: f64,
}

#[derive(Serialize)]
struct RootSetJson {
    degree: usize,
    precision_bits: u32,
    distinct_real_roots: usize,
    integer_roots: Vec<String>,
    real_irrational: Vec<IntervalJson>,
    complex_pairs: Vec<PairJson>,
}

impl From<&RootSet> for RootSetJson {
    fn from(r: &RootSet) -> Self {
        let digits = digits_for(r.precision_bits);
        RootSetJson {
            degree: r.degree,
            precision_bits: r.precision_bits,
            distinct_real_roots: r.distinct_real_roots,
            integer_roots: r.integer_roots.iter().map(|x| x.to_string()).collect(),
            real_irrational: r
                .real_irrational
                .iter()
                .map(|x| IntervalJson {
                    interval: [rational_to_string(&x.lo), rational_to_string(&x.hi)],
                    value: x.value.to_decimal(digits),
                })
                .collect(),
            complex_pairs: r
                .complex_pairs
                .iter()
                .map(|x| PairJson {
                    re: x.re.to_decimal(digits),
                    im: x.im.to_decimal(digits),
                    residual: x.residual,
                })
                .collect(),
        }
    }
}

impl Serialize for RootSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RootSetJson::from(self).serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairModel {
    /// Two real roots `α ± √β` with integer sum and product.
    QuadraticConjugate,
    /// `a ± bi` with integer sum and product.
    ComplexConjugate,
    Unpaired,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairVerdict {
    /// Every non-excluded root sits in a pair with integer sum and product.
    Consistent,
    Violation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairEntry {
    /// Indices into [`RootSet::all_roots`].
    pub indices: Vec<usize>,
    pub sum: Option<Approx>,
    pub product: Option<Approx>,
    pub sum_is_integer: bool,
    pub product_is_integer: bool,
    /// Nearest integers to `S` and `M` when both are integral.
    #[serde(with = "decimal::option")]
    pub sum_int: Option<BigInt>,
    #[serde(with = "decimal::option")]
    pub product_int: Option<BigInt>,
    /// `S^2 - 4M`, i.e. `4β` when the pair is `S/2 ± √β`.
    #[serde(with = "decimal::option")]
    pub radicand_times_4: Option<BigInt>,
    pub model: PairModel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnpairedRoot {
    pub index: usize,
    pub root: Approx,
    /// Partner minimizing the worse of the two residuals below.
    pub best_partner: Option<usize>,
    pub sum_residual: f64,
    pub product_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairWitness {
    pub excluded_index: Option<usize>,
    /// A trivial root was designated but is not among the integer roots.
    pub trivial_root_missing: bool,
    /// The number of roots left to pair is odd.
    pub odd_remaining: bool,
    pub unpaired: Vec<UnpairedRoot>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairClassification {
    pub roots: Vec<Approx>,
    pub tolerance: f64,
    pub exhaustive: bool,
    pub pairing: Vec<PairEntry>,
    pub verdict: PairVerdict,
    pub witness: Option<PairWitness>,
}

/// Distance of a complex value from the nearest Gaussian integer on the
/// real axis: `max(|im|, |re - round(re)|)`.
pub fn integer_residual(z: &MpComplex) -> f64 {
    z.im.abs().to_f64().max(z.re.distance_to_integer())
}

struct PairStats {
    sum: MpComplex,
    product: MpComplex,
    sum_res: f64,
    product_res: f64,
}

impl PairStats {
    fn new(a: &MpComplex, b: &MpComplex) -> Self {
        let sum = a + b;
        let product = a * b;
        let sum_res = integer_residual(&sum);
        let product_res = integer_residual(&product);
        PairStats {
            sum,
            product,
            sum_res,
            product_res,
        }
    }

    fn good(&self, tol: f64) -> bool {
        self.sum_res <= tol && self.product_res <= tol
    }
}

/// Matching quality: good pairs first, then lower total residual.
type Score = (usize, f64);

fn better(a: Score, b: Score) -> bool {
    a.0 > b.0 || (a.0 == b.0 && a.1 < b.1)
}

/// Best matching over `items`: the most good pairs, ties broken by the
/// smallest summed residual. At most one item stays single (only when the
/// count is odd). `edge` gives whether a pair is good and its residual.
fn exhaustive_matching(items: &[usize], edge: &dyn Fn(usize, usize) -> (bool, f64)) -> Vec<(usize, Option<usize>)> {
    let m = items.len();
    let mut memo: HashMap<u32, Score> = HashMap::new();

    fn score(mask: u32, m: usize, edge: &dyn Fn(usize, usize) -> (bool, f64), memo: &mut HashMap<u32, Score>) -> Score {
        if mask == 0 {
            return (0, 0.0);
        }
        if let Some(&v) = memo.get(&mask) {
            return v;
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut best: Option<Score> = None;
        for j in (i + 1)..m {
            if rest & (1 << j) != 0 {
                let v = with_edge(edge(i, j), score(rest & !(1 << j), m, edge, memo));
                if best.is_none_or(|b| better(v, b)) {
                    best = Some(v);
                }
            }
        }
        if mask.count_ones() % 2 == 1 {
            let v = score(rest, m, edge, memo);
            if best.is_none_or(|b| better(v, b)) {
                best = Some(v);
            }
        }
        let best = best.expect("odd masks can leave one item single");
        memo.insert(mask, best);
        best
    }

    fn with_edge(e: (bool, f64), rest: Score) -> Score {
        (rest.0 + e.0 as usize, rest.1 + e.1)
    }

    let mut out = Vec::new();
    let mut mask: u32 = if m == 0 { 0 } else { (1u32 << m) - 1 };
    while mask != 0 {
        let target = score(mask, m, edge, &mut memo);
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        // same arithmetic in the same order, so the optimum is met exactly
        let chosen = ((i + 1)..m)
            .filter(|j| rest & (1 << j) != 0)
            .find(|&j| with_edge(edge(i, j), score(rest & !(1 << j), m, edge, &mut memo)) == target);
        match chosen {
            Some(j) => {
                out.push((items[i], Some(items[j])));
                mask = rest & !(1 << j);
            }
            None => {
                out.push((items[i], None));
                mask = rest;
            }
        }
    }
    out
}

fn greedy_matching(items: &[usize], good: &dyn Fn(usize, usize) -> bool) -> Vec<(usize, Option<usize>)> {
    let m = items.len();
    let mut used = vec![false; m];
    let mut out = Vec::new();
    for i in 0..m {
        if used[i] {
            continue;
        }
        if let Some(j) = ((i + 1)..m).find(|&j| !used[j] && good(i, j)) {
            used[i] = true;
            used[j] = true;
            out.push((items[i], Some(items[j])));
        }
    }
    let left: Vec<usize> = (0..m).filter(|&i| !used[i]).collect();
    for chunk in left.chunks(2) {
        match chunk {
            [a, b] => out.push((items[*a], Some(items[*b]))),
            [a] => out.push((items[*a], None)),
            _ => unreachable!(),
        }
    }
    out
}

/// Pair the roots (after removing the designated trivial root, when it is
/// one of the integer roots) so that as many pairs as possible have sums and
/// products within `tolerance` of integers.
pub fn classify_pairs(r: &RootSet, trivial_root: Option<&BigInt>, tolerance: f64) -> PairClassification {
    let roots = r.all_roots();
    let digits = digits_for(r.precision_bits);
    let excluded_index = trivial_root.and_then(|t| r.integer_roots.iter().position(|x| x == t));
    let trivial_root_missing = trivial_root.is_some() && excluded_index.is_none();
    let remaining: Vec<usize> = (0..roots.len()).filter(|&i| Some(i) != excluded_index).collect();

    let m = remaining.len();
    let mut stats: HashMap<(usize, usize), PairStats> = HashMap::new();
    for (a, &i) in remaining.iter().enumerate() {
        for &j in &remaining[a + 1..] {
            stats.insert((i, j), PairStats::new(&roots[i], &roots[j]));
        }
    }
    let key = |i: usize, j: usize| if i < j { (i, j) } else { (j, i) };
    let good_idx = |a: usize, b: usize| stats[&key(remaining[a], remaining[b])].good(tolerance);
    let cost_idx = |a: usize, b: usize| {
        let st = &stats[&key(remaining[a], remaining[b])];
        st.sum_res.max(st.product_res)
    };

    let exhaustive = m <= EXHAUSTIVE_PAIRING_LIMIT;
    let local: Vec<usize> = (0..m).collect();
    let matching = if exhaustive {
        exhaustive_matching(&local, &|a, b| (good_idx(a, b), cost_idx(a, b)))
    } else {
        greedy_matching(&local, &good_idx)
    };

    let is_real = |z: &MpComplex| z.im.abs().to_f64() <= tolerance;
    let mut pairing = Vec::new();
    let mut unpaired_idx = Vec::new();
    for (a, b) in matching {
        let i = remaining[a];
        match b {
            Some(b) => {
                let j = remaining[b];
                let st = &stats[&key(i, j)];
                let (si, pi) = (st.sum_res <= tolerance, st.product_res <= tolerance);
                let good = si && pi;
                let (sum_int, product_int, radicand_times_4) = if good {
                    let s = st.sum.re.round_to_bigint();
                    let p = st.product.re.round_to_bigint();
                    let rad = &s * &s - BigInt::from(4) * &p;
                    (Some(s), Some(p), Some(rad))
                } else {
                    (None, None, None)
                };
                let model = match (good, is_real(&roots[i]) && is_real(&roots[j])) {
                    (false, _) => PairModel::Unpaired,
                    (true, true) => PairModel::QuadraticConjugate,
                    (true, false) => PairModel::ComplexConjugate,
                };
                if !good {
                    unpaired_idx.push(i);
                    unpaired_idx.push(j);
                }
                pairing.push(PairEntry {
                    indices: vec![i, j],
                    sum: Some(Approx::new(&st.sum, digits)),
                    product: Some(Approx::new(&st.product, digits)),
                    sum_is_integer: si,
                    product_is_integer: pi,
                    sum_int,
                    product_int,
                    radicand_times_4,
                    model,
                });
            }
            None => {
                unpaired_idx.push(i);
                pairing.push(PairEntry {
                    indices: vec![i],
                    sum: None,
                    product: None,
                    sum_is_integer: false,
                    product_is_integer: false,
                    sum_int: None,
                    product_int: None,
                    radicand_times_4: None,
                    model: PairModel::Unpaired,
                });
            }
        }
    }

    let verdict = if unpaired_idx.is_empty() {
        PairVerdict::Consistent
    } else {
        PairVerdict::Violation
    };
    let witness = (verdict == PairVerdict::Violation || trivial_root_missing).then(|| {
        unpaired_idx.sort_unstable();
        let unpaired = unpaired_idx
            .iter()
            .map(|&i| {
                let best = remaining
                    .iter()
                    .filter(|&&j| j != i)
                    .map(|&j| {
                        let st = &stats[&key(i, j)];
                        (j, st.sum_res, st.product_res)
                    })
                    .min_by(|a, b| {
                        a.1.max(a.2)
                            .partial_cmp(&b.1.max(b.2))
                            .unwrap_or(std::cmp::Ordering::Equal)
                    });
                UnpairedRoot {
                    index: i,
                    root: Approx::new(&roots[i], digits),
                    best_partner: best.map(|b| b.0),
                    sum_residual: best.map_or(f64::NAN, |b| b.1),
                    product_residual: best.map_or(f64::NAN, |b| b.2),
                }
            })
            .collect();
        PairWitness {
            excluded_index,
            trivial_root_missing,
            odd_remaining: m % 2 == 1,
            unpaired,
        }
    });

    PairClassification {
        roots: roots.iter().map(|z| Approx::new(z, digits)).collect(),
        tolerance,
        exhaustive,
        pairing,
        verdict,
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Every integer in `[-bound, bound]` tested directly.
    fn brute_integer_roots(f: &IntPoly, bound: i64) -> Vec<BigInt> {
        (-bound..=bound)
            .map(BigInt::from)
            .filter(|x| f.eval(x).is_zero())
            .collect()
    }

    #[test]
    fn sturm_decider_examples() {
        assert!(integer_roots_sturm(&p(&[1, -6, 6, -2])).is_empty());
        assert!(brute_integer_roots(&p(&[1, -6, 6, -2]), 7).is_empty());
        assert!(integer_roots_sturm(&p(&[1, -12, 30, -28])).is_empty());
        assert!(brute_integer_roots(&p(&[1, -12, 30, -28]), 31).is_empty());
        assert_eq!(integer_roots_sturm(&p(&[1, -6, 12, -8])), ints(&[2, 2, 2]));
    }

    #[test]
    fn sturm_decider_finds_mixed_roots() {
        // (x+3)(x-5)^2(x^2-2)(x^2+1)
        let f = p(&[1, 3])
            .mul(&p(&[1, -5]))
            .mul(&p(&[1, -5]))
            .mul(&p(&[1, 0, -2]))
            .mul(&p(&[1, 0, 1]));
        assert_eq!(integer_roots_sturm(&f), ints(&[-3, 5, 5]));
        // adjacent integer roots share an interval endpoint during isolation
        let g = p(&[1, 0]).mul(&p(&[1, -1])).mul(&p(&[1, 1]));
        assert_eq!(integer_roots_sturm(&g), ints(&[-1, 0, 1]));
    }

    #[test]
    fn divisor_decider_examples() {
        match integer_roots_divisor(&p(&[1, -12, 30, -28])) {
            DivisorOutcome::Complete {
                roots,
                candidates_tested,
            } => {
                assert!(roots.is_empty());
                assert_eq!(candidates_tested, 12); // +-{1,2,4,7,14,28}
            }
            other => panic!("{other:?}"),
        }
        match integer_roots_divisor(&p(&[1, -6, 6, -2])) {
            DivisorOutcome::Complete {
                roots,
                candidates_tested,
            } => {
                assert!(roots.is_empty());
                assert_eq!(candidates_tested, 4);
            }
            other => panic!("{other:?}"),
        }
        // x^3 + 6x has constant term zero
        assert_eq!(
            integer_roots_divisor(&p(&[1, 0, 6, 0])).roots().unwrap(),
            ints(&[0]).as_slice()
        );
        // x^2 (x - 3)
        assert_eq!(
            integer_roots_divisor(&p(&[1, -3, 0, 0])).roots().unwrap(),
            ints(&[0, 3]).as_slice()
        );
    }

    #[test]
    fn isolation_intervals_are_tight_and_exclusive() {
        let f = p(&[1, 0, -2]);
        let iv = isolate_real_roots(&f);
        assert_eq!(iv.len(), 2);
        let chain = SturmChain::new(&f);
        for (a, b) in iv {
            assert_eq!(chain.count_in(&a, &b), 1);
        }
    }

    #[test]
    fn numeric_roots_of_cubic_with_one_real_root() {
        let f = p(&[1, -12, 30, -28]);
        let rs = all_roots_numeric(&f, 128).unwrap();
        assert!(rs.integer_roots.is_empty());
        assert_eq!(rs.real_irrational.len(), 1);
        assert_eq!(rs.complex_pairs.len(), 1);
        let r = &rs.real_irrational[0];
        assert!(r.lo >= BigRational::from(BigInt::from(9)));
        assert!(r.hi <= BigRational::from(BigInt::from(10)));
        assert!(&r.hi - &r.lo < dyadic(REPORT_INTERVAL_BITS));
        assert!((r.value.to_f64() - 9.017_463_51).abs() < 1e-8);
        let c = &rs.complex_pairs[0];
        assert!((c.re.to_f64() - 1.491_268_25).abs() < 1e-8);
        assert!((c.im.to_f64() - 0.938_725_23).abs() < 1e-8);
        assert!(c.residual < 1e-30);
        assert!(rs.vieta_relative_error(&f) < 1e-30);
        assert!(rs.count_is_consistent());
        assert_eq!(rs.distinct_real_roots, 1);
    }

    #[test]
    fn numeric_roots_follow_sturm_count() {
        let f = p(&[1, -6, 6, -2]);
        let rs = all_roots_numeric(&f, 128).unwrap();
        let bound = BigRational::from(f.cauchy_bound());
        let sturm = SturmChain::new(&f).count_in(&-bound.clone(), &bound);
        assert_eq!(rs.real_irrational.len(), sturm);
        assert_eq!(rs.real_irrational.len() + 2 * rs.complex_pairs.len(), 3);
    }

    #[test]
    fn numeric_roots_of_perfect_cube() {
        let rs = all_roots_numeric(&p(&[1, -6, 12, -8]), 128).unwrap();
        assert_eq!(rs.integer_roots, ints(&[2, 2, 2]));
        assert!(rs.real_irrational.is_empty() && rs.complex_pairs.is_empty());
    }

    #[test]
    fn numeric_roots_with_repeated_irrational_and_complex_factors() {
        // (x^2 - 2)^2 (x^2 + x + 1)^2 (x - 4)
        let f = p(&[1, 0, -2])
            .mul(&p(&[1, 0, -2]))
            .mul(&p(&[1, 1, 1]))
            .mul(&p(&[1, 1, 1]))
            .mul(&p(&[1, -4]));
        let rs = all_roots_numeric(&f, 96).unwrap();
        assert_eq!(rs.integer_roots, ints(&[4]));
        assert_eq!(rs.real_irrational.len(), 4);
        assert_eq!(rs.complex_pairs.len(), 2);
        assert!(rs.count_is_consistent());
        assert_eq!(rs.listed_distinct_real(), rs.distinct_real_roots);
    }

    #[test]
    fn rejects_low_precision_and_non_monic() {
        assert!(all_roots_numeric(&p(&[1, 0, -2]), 32).is_err());
        assert!(all_roots_numeric(&p(&[2, 0, -1]), 128).is_err());
    }

    #[test]
    fn cubic_without_integer_root_violates_pairing() {
        let rs = all_roots_numeric(&p(&[1, -12, 30, -28]), 128).unwrap();
        let pc = classify_pairs(&rs, None, DEFAULT_TOLERANCE);
        assert_eq!(pc.verdict, PairVerdict::Violation);
        assert!(pc.witness.as_ref().unwrap().odd_remaining);
        // the conjugate pair is the closest candidate: S ~ 2.98254, M ~ 3.10509
        let pair = pc.pairing.iter().find(|e| e.indices == vec![1, 2]).unwrap();
        let s: f64 = pair.sum.as_ref().unwrap().re.parse().unwrap();
        let m: f64 = pair.product.as_ref().unwrap().re.parse().unwrap();
        assert!((s - 2.982_536_5).abs() < 1e-6, "{s}");
        assert!((m - 3.105_086).abs() < 1e-5, "{m}");
        assert!(!pair.sum_is_integer && !pair.product_is_integer);
    }

    #[test]
    fn surd_pair_is_quadratic_conjugate() {
        let rs = all_roots_numeric(&p(&[1, -2, -1]), 128).unwrap();
        let pc = classify_pairs(&rs, None, DEFAULT_TOLERANCE);
        assert_eq!(pc.verdict, PairVerdict::Consistent);
        assert_eq!(pc.pairing.len(), 1);
        let e = &pc.pairing[0];
        assert_eq!(e.model, PairModel::QuadraticConjugate);
        assert_eq!(e.sum_int, Some(BigInt::from(2)));
        assert_eq!(e.product_int, Some(BigInt::from(-1)));
        assert_eq!(e.radicand_times_4, Some(BigInt::from(8)));
        assert!(pc.witness.is_none());
    }

    #[test]
    fn gaussian_pair_is_complex_conjugate() {
        // (x - 2)(x^2 - 2x + 2): roots 2, 1 +- i
        let rs = all_roots_numeric(&p(&[1, -4, 6, -4]), 128).unwrap();
        let pc = classify_pairs(&rs, Some(&BigInt::from(2)), DEFAULT_TOLERANCE);
        assert_eq!(pc.verdict, PairVerdict::Consistent);
        assert_eq!(pc.pairing.len(), 1);
        assert_eq!(pc.pairing[0].model, PairModel::ComplexConjugate);
        assert_eq!(pc.pairing[0].sum_int, Some(BigInt::from(2)));
        assert_eq!(pc.pairing[0].product_int, Some(BigInt::from(2)));
    }

    #[test]
    fn missing_trivial_root_is_reported() {
        let rs = all_roots_numeric(&p(&[1, -2, -1]), 128).unwrap();
        let pc = classify_pairs(&rs, Some(&BigInt::from(7)), DEFAULT_TOLERANCE);
        assert_eq!(pc.verdict, PairVerdict::Consistent);
        assert!(pc.witness.as_ref().unwrap().trivial_root_missing);
    }

    #[test]
    fn greedy_and_exhaustive_agree_on_small_sets() {
        // good edges: 0-1, 2-3 and a decoy 1-2; a naive first-fit picks 0-1
        let good = |a: usize, b: usize| matches!((a.min(b), a.max(b)), (0, 1) | (2, 3) | (1, 2));
        let items = [0, 1, 2, 3];
        let ex = exhaustive_matching(&items, &|a, b| (good(a, b), 0.0));
        let count = |m: &[(usize, Option<usize>)]| m.iter().filter(|(a, b)| b.is_some_and(|b| good(*a, b))).count();
        assert_eq!(count(&ex), 2);
        assert_eq!(count(&greedy_matching(&items, &good)), 2);
    }

    #[test]
    fn exhaustive_matching_beats_first_fit() {
        // only perfect matching with two good pairs is 0-2, 1-3; 0-1 is a trap
        let good = |a: usize, b: usize| matches!((a.min(b), a.max(b)), (0, 1) | (0, 2) | (1, 3));
        let ex = exhaustive_matching(&[0, 1, 2, 3], &|a, b| (good(a, b), 0.0));
        assert_eq!(ex, vec![(0, Some(2)), (1, Some(3))]);
        let odd = exhaustive_matching(&[0, 1, 2], &|a, b| ((a.min(b), a.max(b)) == (1, 2), 0.0));
        assert_eq!(odd, vec![(0, None), (1, Some(2))]);
        // no good pair at all: the cheapest pair wins
        let cost = |a: usize, b: usize| (false, if (a.min(b), a.max(b)) == (1, 2) { 0.1 } else { 5.0 });
        assert_eq!(exhaustive_matching(&[0, 1, 2], &cost), vec![(0, None), (1, Some(2))]);
    }

    #[test]
    fn elementary_symmetric_of_small_set() {
        let prec = 128;
        let vals: Vec<MpComplex> = [2.0, 3.0, 5.0]
            .iter()
            .map(|&v| MpComplex::from_f64(v, 0.0, prec))
            .collect();
        let e = elementary_symmetric(&vals, prec);
        let got: Vec<f64> = e.iter().map(|z| z.re.to_f64()).collect();
        assert_eq!(got, vec![1.0, 10.0, 31.0, 30.0]);
    }

    #[test]
    fn root_set_json_shape() {
        let rs = all_roots_numeric(&p(&[1, -12, 30, -28]), 64).unwrap();
        let v = rs.to_json_value();
        assert_eq!(v["degree"], 3);
        assert_eq!(v["integer_roots"].as_array().unwrap().len(), 0);
        let iv = &v["real_irrational"][0]["interval"];
        assert!(iv[0].as_str().unwrap().contains('/'));
        assert!(v["complex_pairs"][0]["residual"].is_f64());
        assert!(v["complex_pairs"][0]["re"].as_str().unwrap().starts_with("1.4912682"));
    }
}
