//! Self-contained violation records. Each witness carries exactly the inputs
//! needed to recompute the violating value from scratch.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{decimal, gcd, modulo};
use crate::assoc::{construct, offset_terms, FermatTriple, OffsetPair};
use crate::error::{Error, Result};
use crate::intpoly::IntPoly;
use crate::roots::{all_roots_numeric, classify_pairs, PairVerdict, UnpairedRoot};
use crate::viete::{audit_instance, second_last_residues, TailParity, EQUATION_TOLERANCE};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `lhs_k` is odd.
    LhsParity {
        pair: OffsetPair,
        n: u32,
        k: u32,
        #[serde(with = "decimal")]
        value: BigInt,
    },
    /// `D^(n-1) + E^(n-1)` is not `2 mod 4`.
    SecondLastMod4 {
        pair: OffsetPair,
        n: u32,
        power_sum_mod4: u32,
        lhs_mod4: u32,
    },
    /// `X^n + Y^n` is not `2 mod 4`.
    PowerSumMod4 {
        #[serde(with = "decimal")]
        x: BigInt,
        #[serde(with = "decimal")]
        y: BigInt,
        n: u32,
        residue: u32,
    },
    /// An odd integer root.
    OddIntegerRoot {
        #[serde(with = "decimal::vec")]
        coefficients: Vec<BigInt>,
        #[serde(with = "decimal")]
        root: BigInt,
        source: Option<(OffsetPair, u32)>,
    },
    /// An integer root of an arbitrary integer polynomial.
    PolynomialRoot {
        #[serde(with = "decimal::vec")]
        coefficients: Vec<BigInt>,
        #[serde(with = "decimal")]
        root: BigInt,
    },
    /// An even designated root with an odd `t_k`.
    TailSumParity { pair: OffsetPair, n: u32, k: u32 },
    /// Roots that fit no integer-sum, integer-product pairing.
    UnpairedRoots {
        pair: OffsetPair,
        n: u32,
        precision_bits: u32,
        tolerance: f64,
        #[serde(with = "decimal::option")]
        trivial_root: Option<BigInt>,
        unpaired: Vec<UnpairedRoot>,
    },
    /// A coefficient identity that fails numerically.
    EquationResidual {
        pair: OffsetPair,
        n: u32,
        precision_bits: u32,
        k: u32,
        residual: f64,
    },
    /// An integer root of an associated polynomial, with its triple.
    IntegerRoot {
        pair: OffsetPair,
        n: u32,
        #[serde(with = "decimal")]
        root: BigInt,
        triple: FermatTriple,
    },
    /// A non-trivial solution of `A^n + B^n = C^n` with `n >= 3`.
    Counterexample { triple: FermatTriple },
    /// A gcd identity (or the coprimality premise) failing on a solution.
    GcdCorollary {
        triple: FermatTriple,
        check: GcdCheck,
        #[serde(with = "decimal")]
        value: BigInt,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GcdCheck {
    /// `gcd(A+B, C-A)`
    SumVsCMinusA,
    /// `gcd(A+B, C-B)`
    SumVsCMinusB,
    /// `gcd(C-A, C-B)`
    CMinusAVsCMinusB,
    /// `A, B, C` pairwise coprime; `value` is the largest pairwise gcd.
    PairwiseCoprime,
}

impl GcdCheck {
    pub const ALL: [GcdCheck; 4] = [
        GcdCheck::PairwiseCoprime,
        GcdCheck::SumVsCMinusA,
        GcdCheck::SumVsCMinusB,
        GcdCheck::CMinusAVsCMinusB,
    ];

    pub fn evaluate(self, t: &FermatTriple) -> BigInt {
        let (a, b, c) = (&t.a, &t.b, &t.c);
        match self {
            GcdCheck::SumVsCMinusA => gcd(&(a + b), &(c - a)),
            GcdCheck::SumVsCMinusB => gcd(&(a + b), &(c - b)),
            GcdCheck::CMinusAVsCMinusB => gcd(&(c - a), &(c - b)),
            GcdCheck::PairwiseCoprime => gcd(a, b).max(gcd(a, c)).max(gcd(b, c)),
        }
    }
}

impl Witness {
    /// Recompute from the stored inputs; `true` when the violation shows up
    /// again.
    pub fn replay(&self) -> Result<bool> {
        Ok(match self {
            Witness::LhsParity { pair, n, k, value } => {
                let terms = offset_terms(pair, *n);
                let got = terms
                    .get(*k as usize - 1)
                    .ok_or_else(|| Error::Argument(format!("k = {k} out of range for n = {n}")))?;
                got == value && got.is_odd()
            }
            Witness::SecondLastMod4 {
                pair,
                n,
                power_sum_mod4,
                ..
            } => {
                let (ps, _) = second_last_residues(pair, *n);
                ps == *power_sum_mod4 && ps != 2
            }
            Witness::PowerSumMod4 { x, y, n, residue } => {
                let r = modulo(&(x.pow(*n) + y.pow(*n)), 4);
                r == *residue && r != 2
            }
            Witness::OddIntegerRoot { coefficients, root, .. } => {
                let p = IntPoly::new(coefficients.clone());
                p.eval(root).is_zero() && root.is_odd()
            }
            Witness::PolynomialRoot { coefficients, root } => IntPoly::new(coefficients.clone()).eval(root).is_zero(),
            Witness::TailSumParity { pair, n, k } => {
                let poly = construct(pair, *n)?;
                let r = all_roots_numeric(&poly, 128)?;
                let rep = crate::viete::audit_equations(pair, *n, &r, crate::roots::DEFAULT_TOLERANCE)?;
                rep.tail_parity == TailParity::Fails { k: *k }
            }
            Witness::UnpairedRoots {
                pair,
                n,
                precision_bits,
                tolerance,
                trivial_root,
                ..
            } => {
                let poly = construct(pair, *n)?;
                let r = all_roots_numeric(&poly, *precision_bits)?;
                classify_pairs(&r, trivial_root.as_ref(), *tolerance).verdict == PairVerdict::Violation
            }
            Witness::EquationResidual {
                pair,
                n,
                precision_bits,
                k,
                ..
            } => {
                let rep = audit_instance(pair, *n, *precision_bits, crate::roots::DEFAULT_TOLERANCE)?;
                rep.equation_checks
                    .get(*k as usize - 1)
                    .is_some_and(|c| c.residual.is_nan() || c.residual >= EQUATION_TOLERANCE)
            }
            Witness::IntegerRoot { pair, n, root, triple } => {
                let poly = construct(pair, *n)?;
                poly.as_intpoly().eval(root).is_zero() && triple.is_solution()
            }
            Witness::Counterexample { triple } => triple.n >= 3 && triple.is_solution() && !triple.is_trivial(),
            Witness::GcdCorollary { triple, check, value } => {
                let v = check.evaluate(triple);
                &v == value && !v.is_one()
            }
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Witness::LhsParity { .. } => "lhs_parity",
            Witness::SecondLastMod4 { .. } => "second_last_mod4",
            Witness::PowerSumMod4 { .. } => "power_sum_mod4",
            Witness::OddIntegerRoot { .. } => "odd_integer_root",
            Witness::PolynomialRoot { .. } => "polynomial_root",
            Witness::TailSumParity { .. } => "tail_sum_parity",
            Witness::UnpairedRoots { .. } => "unpaired_roots",
            Witness::EquationResidual { .. } => "equation_residual",
            Witness::IntegerRoot { .. } => "integer_root",
            Witness::Counterexample { .. } => "counterexample",
            Witness::GcdCorollary { .. } => "gcd_corollary",
        }
    }
}

/// Witnesses for every failing gcd check of one triple.
pub fn gcd_witnesses(t: &FermatTriple) -> Vec<Witness> {
    GcdCheck::ALL
        .iter()
        .filter_map(|&check| {
            let value = check.evaluate(t);
            (!value.is_one()).then(|| Witness::GcdCorollary {
                triple: t.clone(),
                check,
                value,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::DEFAULT_TOLERANCE;

    #[test]
    fn json_is_tagged_by_kind() {
        let w = Witness::PowerSumMod4 {
            x: 3.into(),
            y: 5.into(),
            n: 2,
            residue: 2,
        };
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"kind":"power_sum_mod4","x":"3","y":"5","n":2,"residue":2}"#);
        let back: Witness = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
        // 34 = 2 mod 4, so this record does not reproduce
        assert!(!w.replay().unwrap());
    }

    #[test]
    fn unpaired_roots_replay() {
        let pair = OffsetPair::alternating(1, 3).unwrap();
        let poly = construct(&pair, 3).unwrap();
        let r = all_roots_numeric(&poly, 128).unwrap();
        let pc = classify_pairs(&r, None, DEFAULT_TOLERANCE);
        assert_eq!(pc.verdict, PairVerdict::Violation);
        let w = Witness::UnpairedRoots {
            pair,
            n: 3,
            precision_bits: 128,
            tolerance: DEFAULT_TOLERANCE,
            trivial_root: None,
            unpaired: pc.witness.unwrap().unpaired,
        };
        let back: Witness = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
        assert!(back.replay().unwrap());
    }

    #[test]
    fn gcd_checks() {
        let t = FermatTriple::new(3, 4, 5, 2);
        assert!(gcd_witnesses(&t).is_empty());
        assert_eq!(GcdCheck::SumVsCMinusA.evaluate(&t), BigInt::one());
        let bad = FermatTriple::new(6, 8, 10, 2);
        let ws = gcd_witnesses(&bad);
        assert!(ws.iter().any(|w| matches!(
            w,
            Witness::GcdCorollary {
                check: GcdCheck::PairwiseCoprime,
                ..
            }
        )));
        assert!(ws.iter().all(|w| w.replay().unwrap()));
    }

    #[test]
    fn counterexample_replay_rejects_trivial_and_n2() {
        let w = Witness::Counterexample {
            triple: FermatTriple::new(3, 4, 5, 2),
        };
        assert!(!w.replay().unwrap());
        let w = Witness::Counterexample {
            triple: FermatTriple::new(0, 7, 7, 3),
        };
        assert!(!w.replay().unwrap());
    }
}
