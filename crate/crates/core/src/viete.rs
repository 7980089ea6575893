//! Coefficient/root identities of the associated polynomials and the parity
//! facts that follow from them.
//!
//! For the alternating family the coefficient of `x^(n-k)` is
//! `(-1)^k lhs_k` with `lhs_k = binom(n,k) (D^k + E^k)`, so Vieta gives
//! `e_k(roots) = lhs_k`. Splitting off one designated root `g` and writing
//! `t_k` for the elementary symmetric functions of the others,
//! `e_k = g t_(k-1) + t_k` with `t_0 = 1` and `t_n = 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{decimal, modulo, MpComplex, MpFloat};
use crate::assoc::{check_exponent, construct, offset_terms, OffsetPair, Variant};
use crate::error::Result;
use crate::intpoly::IntPoly;
use crate::roots::{all_roots_numeric, elementary_symmetric, integer_residual, integer_roots_sturm, Approx, RootSet};
use crate::witness::Witness;

/// Absolute bound on `|g t_(k-1) + t_k - lhs_k|` accepted as an identity.
pub const EQUATION_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(v: &BigInt) -> Self {
        if v.is_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Integrality {
    Integer,
    NonInteger,
}

/// `binom(n,k) (D^k + E^k)` for `k = 1..=n`.
pub fn viete_lhs(pair: &OffsetPair, n: u32) -> Result<Vec<BigInt>> {
    check_exponent(n)?;
    Ok(offset_terms(pair, n))
}

/// Which root plays the distinguished role, and why.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Designation {
    /// Index into [`RootSet::all_roots`].
    pub index: usize,
    pub is_integer: bool,
    /// No integer root exists, so the largest real root stands in.
    pub premise_unsatisfied: bool,
}

/// Prefer an integer root (0 first, when present); otherwise the real root
/// of largest magnitude; otherwise the root of largest modulus.
pub fn designate_gamma1(r: &RootSet) -> Designation {
    if !r.integer_roots.is_empty() {
        let index = r
            .integer_roots
            .iter()
            .position(|x| x.sign() == num_bigint::Sign::NoSign)
            .unwrap_or(0);
        return Designation {
            index,
            is_integer: true,
            premise_unsatisfied: false,
        };
    }
    let offset = r.integer_roots.len();
    let best_real = r
        .real_irrational
        .iter()
        .enumerate()
        .max_by(|a, b| {
            a.1.value
                .abs()
                .partial_cmp(&b.1.value.abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .map(|(i, _)| offset + i);
    let index = best_real.unwrap_or_else(|| {
        r.all_roots()
            .iter()
            .enumerate()
            .max_by(|a, b| {
                a.1.log2_abs()
                    .partial_cmp(&b.1.log2_abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .map(|(i, _)| i)
            .unwrap_or(0)
    });
    Designation {
        index,
        is_integer: false,
        premise_unsatisfied: true,
    }
}

/// `t_1 .. t_(n-1)`: elementary symmetric functions of every root except
/// the designated one.
pub fn tail_sums(r: &RootSet, gamma1_index: usize) -> Vec<MpComplex> {
    let prec = r.precision_bits + 64;
    let rest: Vec<MpComplex> = r
        .all_roots()
        .into_iter()
        .enumerate()
        .filter(|(i, _)| *i != gamma1_index)
        .map(|(_, z)| z)
        .collect();
    elementary_symmetric(&rest, prec).into_iter().skip(1).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquationCheck {
    pub k: u32,
    #[serde(with = "decimal")]
    pub lhs: BigInt,
    /// `g t_(k-1) + t_k`, real part.
    pub rhs: String,
    pub residual: f64,
    pub relative_residual: f64,
}

/// Outcome of the tail-sum parity chain on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailParity {
    /// Some `t_k`, or the designated root, is not an integer.
    NotApplicable,
    /// All values integral; an even designated root leaves every `t_k` even.
    Holds,
    Fails {
        k: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VieteReport {
    pub pair: OffsetPair,
    pub n: u32,
    pub precision_bits: u32,
    pub tolerance: f64,
    #[serde(with = "decimal::vec")]
    pub lhs: Vec<BigInt>,
    pub lhs_parity: Vec<Parity>,
    pub lhs_mod4: Vec<u32>,
    pub gamma1: Approx,
    pub designation: Designation,
    pub t_values: Vec<Approx>,
    pub t_integrality: Vec<Integrality>,
    pub equation_checks: Vec<EquationCheck>,
    pub vieta_relative_error: f64,
    pub tail_parity: TailParity,
}

impl VieteReport {
    pub fn max_residual(&self) -> f64 {
        self.equation_checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn residual_sum(&self) -> f64 {
        self.equation_checks.iter().map(|c| c.residual).sum()
    }
}

fn digits(precision_bits: u32) -> usize {
    (precision_bits as f64 * std::f64::consts::LOG10_2).floor() as usize
}

/// Check every coefficient identity of `pair`'s polynomial against its own
/// roots `r`.
pub fn audit_equations(pair: &OffsetPair, n: u32, r: &RootSet, tolerance: f64) -> Result<VieteReport> {
    let lhs = viete_lhs(pair, n)?;
    let prec = r.precision_bits + 64;
    let digits = digits(r.precision_bits);
    let roots = r.all_roots();
    let designation = designate_gamma1(r);
    let g = roots[designation.index].clone();
    let mut t = vec![MpComplex::real(MpFloat::from_i64(1, prec))];
    t.extend(tail_sums(r, designation.index));
    t.push(MpComplex::zero(prec));

    let mut equation_checks = Vec::with_capacity(n as usize);
    for k in 1..=n as usize {
        // for the positive family e_k = (-1)^k lhs_k
        let target = match pair.variant() {
            Variant::Positive if k % 2 == 1 => -&lhs[k - 1],
            _ => lhs[k - 1].clone(),
        };
        let rhs = &(&g * &t[k - 1]) + &t[k];
        let diff = &rhs - &MpComplex::real(MpFloat::from_bigint(&target, prec));
        let residual = diff.log2_abs().exp2();
        let scale = MpFloat::from_bigint(&target, prec).log2_abs().max(0.0).exp2();
        equation_checks.push(EquationCheck {
            k: k as u32,
            lhs: target,
            rhs: rhs.re.to_decimal(digits),
            residual,
            relative_residual: residual / scale,
        });
    }

    let t_inner = &t[1..n as usize];
    let t_integrality: Vec<Integrality> = t_inner
        .iter()
        .map(|z| {
            if integer_residual(z) <= tolerance {
                Integrality::Integer
            } else {
                Integrality::NonInteger
            }
        })
        .collect();

    let tail_parity = if !designation.is_integer || t_integrality.contains(&Integrality::NonInteger) {
        TailParity::NotApplicable
    } else {
        let g_int = g.re.round_to_bigint();
        let odd_t = t_inner.iter().position(|z| z.re.round_to_bigint().is_odd());
        match (g_int.is_even(), odd_t) {
            (true, Some(i)) => TailParity::Fails { k: i as u32 + 1 },
            _ => TailParity::Holds,
        }
    };

    let poly = construct(pair, n)?;
    Ok(VieteReport {
        pair: pair.clone(),
        n,
        precision_bits: r.precision_bits,
        tolerance,
        lhs_parity: lhs.iter().map(Parity::of).collect(),
        lhs_mod4: lhs.iter().map(|v| modulo(v, 4)).collect(),
        lhs,
        gamma1: Approx::new(&g, digits),
        designation,
        t_values: t_inner.iter().map(|z| Approx::new(z, digits)).collect(),
        t_integrality,
        equation_checks,
        vieta_relative_error: r.vieta_relative_error(poly.as_intpoly()),
        tail_parity,
    })
}

/// Roots plus the full equation audit for one instance.
pub fn audit_instance(pair: &OffsetPair, n: u32, precision_bits: u32, tolerance: f64) -> Result<VieteReport> {
    let poly = construct(pair, n)?;
    let r = all_roots_numeric(&poly, precision_bits)?;
    audit_equations(pair, n, &r, tolerance)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimId {
    /// Every `lhs_k` is even for odd offsets.
    LhsParity,
    /// `D^(n-1) + E^(n-1) = 2 (mod 4)`, so `lhs_(n-1)` is never divisible by 4.
    SecondLastMod4,
    /// `X^m + Y^m = 2 (mod 4)` for odd `X, Y` and even `m`.
    OddPowerSumMod4,
    /// Any integer root of an associated polynomial is even.
    EvenIntegerRoot,
    /// An even designated root forces every tail sum to be even.
    TailSumParity,
}

impl std::fmt::Display for ClaimId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ClaimId::LhsParity => "lhs_parity",
            ClaimId::SecondLastMod4 => "second_last_mod4",
            ClaimId::OddPowerSumMod4 => "odd_power_sum_mod4",
            ClaimId::EvenIntegerRoot => "even_integer_root",
            ClaimId::TailSumParity => "tail_sum_parity",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParityVerdict {
    pub claim: ClaimId,
    /// Human-readable description of the instance set.
    pub grid: String,
    pub instances_checked: u64,
    /// Instances skipped because the claim does not apply.
    pub not_applicable: u64,
    /// Integer roots met along the way (root-based claims only).
    pub integer_roots_found: Option<u64>,
    /// Instances whose integer-root count is odd (root-based claims only).
    pub odd_root_count_instances: Option<u64>,
    pub violations: Vec<Witness>,
}

impl ParityVerdict {
    fn new(claim: ClaimId, grid: String) -> Self {
        ParityVerdict {
            claim,
            grid,
            instances_checked: 0,
            not_applicable: 0,
            integer_roots_found: None,
            odd_root_count_instances: None,
            violations: Vec::new(),
        }
    }

    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Odd coprime offset pairs with both members in `[lo, hi]`, in row-major
/// order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairGrid {
    pub variant: Variant,
    pub lo: i64,
    pub hi: i64,
}

impl PairGrid {
    pub fn new(variant: Variant, lo: i64, hi: i64) -> Self {
        PairGrid { variant, lo, hi }
    }

    pub fn pairs(&self) -> Vec<OffsetPair> {
        let odd: Vec<i64> = (self.lo..=self.hi).filter(|v| v % 2 != 0).collect();
        let mut out = Vec::new();
        for &d in &odd {
            for &e in &odd {
                if let Ok(p) = OffsetPair::new(d, e, self.variant) {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn cells(&self, n_set: &[u32]) -> Vec<(OffsetPair, u32)> {
        let mut out = Vec::new();
        for p in self.pairs() {
            for &n in n_set {
                out.push((p.clone(), n));
            }
        }
        out
    }

    pub fn describe(&self, n_set: &[u32]) -> String {
        let (a, b) = match self.variant {
            Variant::Alternating => ("D", "E"),
            Variant::Positive => ("F", "G"),
        };
        let ns: Vec<String> = n_set.iter().map(u32::to_string).collect();
        format!(
            "{a},{b} odd coprime in [{}, {}], n in {{{}}}",
            self.lo,
            self.hi,
            ns.join(",")
        )
    }
}

fn check_exponents(n_set: &[u32]) -> Result<()> {
    n_set.iter().try_for_each(|&n| check_exponent(n))
}

/// Evenness of every `lhs_k` over the grid.
pub fn audit_lhs_parity(grid: &PairGrid, n_set: &[u32]) -> Result<ParityVerdict> {
    check_exponents(n_set)?;
    Ok(audit_lhs_parity_cells(&grid.cells(n_set), grid.describe(n_set)))
}

pub fn audit_lhs_parity_cells(cells: &[(OffsetPair, u32)], label: String) -> ParityVerdict {
    let mut v = ParityVerdict::new(ClaimId::LhsParity, label);
    let found: Vec<Vec<Witness>> = cells
        .par_iter()
        .map(|(pair, n)| lhs_parity_witnesses(pair, *n))
        .collect();
    v.instances_checked = cells.len() as u64;
    v.violations = found.into_iter().flatten().collect();
    v
}

pub fn lhs_parity_witnesses(pair: &OffsetPair, n: u32) -> Vec<Witness> {
    offset_terms(pair, n)
        .into_iter()
        .enumerate()
        .filter(|(_, v)| v.is_odd())
        .map(|(k, value)| Witness::LhsParity {
            pair: pair.clone(),
            n,
            k: k as u32 + 1,
            value,
        })
        .collect()
}

/// `D^(n-1) + E^(n-1) = 2 (mod 4)` over the grid; the verdict also records
/// `lhs_(n-1) mod 4`.
pub fn audit_second_last_mod4(grid: &PairGrid, n_set: &[u32]) -> Result<ParityVerdict> {
    check_exponents(n_set)?;
    Ok(audit_mod4_cells(&grid.cells(n_set), grid.describe(n_set)))
}

pub fn audit_mod4_cells(cells: &[(OffsetPair, u32)], label: String) -> ParityVerdict {
    let mut v = ParityVerdict::new(ClaimId::SecondLastMod4, label);
    let found: Vec<Option<Witness>> = cells
        .par_iter()
        .map(|(pair, n)| second_last_mod4_witness(pair, *n))
        .collect();
    v.instances_checked = cells.len() as u64;
    v.violations = found.into_iter().flatten().collect();
    v
}

/// `(power_sum mod 4, lhs_(n-1) mod 4)`.
pub fn second_last_residues(pair: &OffsetPair, n: u32) -> (u32, u32) {
    let m = n - 1;
    let power_sum = pair.d().pow(m) + pair.e().pow(m);
    let lhs = BigInt::from(n) * &power_sum;
    (modulo(&power_sum, 4), modulo(&lhs, 4))
}

pub fn second_last_mod4_witness(pair: &OffsetPair, n: u32) -> Option<Witness> {
    let (power_sum_mod4, lhs_mod4) = second_last_residues(pair, n);
    (power_sum_mod4 != 2).then(|| Witness::SecondLastMod4 {
        pair: pair.clone(),
        n,
        power_sum_mod4,
        lhs_mod4,
    })
}

/// `X^m + Y^m = 2 (mod 4)` for every odd `X, Y` in `[1, x_max]` and even
/// `m` in `[2, n_max]`, evaluated with full-size integers.
pub fn audit_power_sum_mod4(x_max: u64, n_max: u32) -> ParityVerdict {
    let odd: Vec<u64> = (1..=x_max).step_by(2).collect();
    let exps: Vec<u32> = (2..=n_max).step_by(2).collect();
    let mut v = ParityVerdict::new(
        ClaimId::OddPowerSumMod4,
        format!("X,Y odd in [1, {x_max}], even n in [2, {n_max}]"),
    );
    let found: Vec<Vec<Witness>> = odd
        .par_iter()
        .map(|&x| {
            let mut out = Vec::new();
            let bx = BigInt::from(x);
            for &m in &exps {
                let xm = bx.pow(m);
                for &y in &odd {
                    let s = &xm + BigInt::from(y).pow(m);
                    let residue = modulo(&s, 4);
                    if residue != 2 {
                        out.push(Witness::PowerSumMod4 {
                            x: bx.clone(),
                            y: BigInt::from(y),
                            n: m,
                            residue,
                        });
                    }
                }
            }
            out
        })
        .collect();
    v.instances_checked = (odd.len() * odd.len() * exps.len()) as u64;
    v.violations = found.into_iter().flatten().collect();
    v
}

/// The evenness rule for the integer roots of one polynomial.
pub fn odd_root_witness(poly: &IntPoly, roots: &[BigInt], source: Option<(&OffsetPair, u32)>) -> Option<Witness> {
    roots.iter().find(|r| r.is_odd()).map(|root| Witness::OddIntegerRoot {
        coefficients: poly.coeffs().to_vec(),
        root: root.clone(),
        source: source.map(|(p, n)| (p.clone(), n)),
    })
}

/// Integer roots over the grid, each checked for evenness.
pub fn audit_even_root_necessity(grid: &PairGrid, n_set: &[u32]) -> Result<ParityVerdict> {
    check_exponents(n_set)?;
    Ok(audit_even_root_cells(&grid.cells(n_set), grid.describe(n_set)))
}

pub fn audit_even_root_cells(cells: &[(OffsetPair, u32)], label: String) -> ParityVerdict {
    let mut v = ParityVerdict::new(ClaimId::EvenIntegerRoot, label);
    let per_cell: Vec<(usize, Option<Witness>)> = cells
        .par_iter()
        .map(|(pair, n)| {
            let poly = construct(pair, *n).expect("validated cell");
            let roots = integer_roots_sturm(&poly);
            let w = odd_root_witness(poly.as_intpoly(), &roots, Some((pair, *n)));
            (roots.len(), w)
        })
        .collect();
    v.instances_checked = cells.len() as u64;
    v.integer_roots_found = Some(per_cell.iter().map(|(c, _)| *c as u64).sum());
    v.odd_root_count_instances = Some(per_cell.iter().filter(|(c, _)| c % 2 == 1).count() as u64);
    v.violations = per_cell.into_iter().filter_map(|(_, w)| w).collect();
    v
}

/// Tail-sum parity chain, on the instances where it applies.
pub fn audit_tail_parity(grid: &PairGrid, n_set: &[u32], precision_bits: u32, tolerance: f64) -> Result<ParityVerdict> {
    check_exponents(n_set)?;
    let cells = grid.cells(n_set);
    let reports: Vec<VieteReport> = cells
        .par_iter()
        .map(|(pair, n)| audit_instance(pair, *n, precision_bits, tolerance))
        .collect::<Result<_>>()?;
    Ok(tail_parity_verdict(&reports, grid.describe(n_set)))
}

/// Tail-sum parity verdict from already computed equation audits.
pub fn tail_parity_verdict(reports: &[VieteReport], label: String) -> ParityVerdict {
    let mut v = ParityVerdict::new(ClaimId::TailSumParity, label);
    v.instances_checked = reports.len() as u64;
    for r in reports {
        match r.tail_parity {
            TailParity::NotApplicable => v.not_applicable += 1,
            TailParity::Holds => {}
            TailParity::Fails { k } => v.violations.push(Witness::TailSumParity {
                pair: r.pair.clone(),
                n: r.n,
                k,
            }),
        }
    }
    v
}
