//! Exhaustive searches: direct `A^n + B^n = C^n` testing over a box, and
//! sweeps over offset grids that decide integer roots of every associated
//! polynomial in the grid.
//!
//! Cells are processed in parallel but results are collected in cell order,
//! so the output does not depend on the worker count.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{decimal, gcd};
use crate::assoc::{check_exponent, construct, evaluate, offsets_to_triple, FermatTriple, OffsetPair, Variant};
use crate::error::{Error, Result};
use crate::roots::{integer_roots_divisor, integer_roots_sturm, DivisorOutcome};
use crate::viete::{lhs_parity_witnesses, odd_root_witness, second_last_mod4_witness, PairGrid};
use crate::witness::{gcd_witnesses, Witness};

pub const DEFAULT_NEAR_MISS_THRESHOLD: u64 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Triples,
    Offsets,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "triples" => Ok(Mode::Triples),
            "offsets" => Ok(Mode::Offsets),
            other => Err(Error::arg(format!(
                "unknown mode '{other}' (expected triples or offsets)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub mode: Mode,
    /// Inclusive bounds for every coordinate (A, B, C or the two offsets).
    pub min: i64,
    pub max: i64,
    pub n_set: Vec<u32>,
    pub variant: Variant,
    pub near_miss_threshold: u64,
    pub seed: u64,
    /// Worker count. Never part of the canonical output.
    #[serde(default = "default_jobs", skip_serializing)]
    pub jobs: usize,
}

fn default_jobs() -> usize {
    1
}

impl CampaignConfig {
    pub fn triples(max: i64, n_set: Vec<u32>) -> Self {
        CampaignConfig {
            mode: Mode::Triples,
            min: 1,
            max,
            n_set,
            variant: Variant::Alternating,
            near_miss_threshold: DEFAULT_NEAR_MISS_THRESHOLD,
            seed: 0,
            jobs: 1,
        }
    }

    pub fn offsets(variant: Variant, min: i64, max: i64, n_set: Vec<u32>) -> Self {
        CampaignConfig {
            mode: Mode::Offsets,
            min,
            max,
            n_set,
            variant,
            near_miss_threshold: DEFAULT_NEAR_MISS_THRESHOLD,
            seed: 0,
            jobs: 1,
        }
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.min > self.max {
            return Err(Error::arg(format!("empty bounds [{}, {}]", self.min, self.max)));
        }
        if self.n_set.is_empty() {
            return Err(Error::arg("exponent set is empty"));
        }
        if self.jobs == 0 {
            return Err(Error::arg("jobs must be at least 1"));
        }
        match self.mode {
            Mode::Triples => {
                if self.min < 0 {
                    return Err(Error::arg("triple bounds must be nonnegative"));
                }
                if let Some(n) = self.n_set.iter().find(|&&n| n < 2) {
                    return Err(Error::arg(format!("exponent must be at least 2 (got {n})")));
                }
            }
            Mode::Offsets => {
                for &n in &self.n_set {
                    check_exponent(n)?;
                }
                if self.grid().pairs().is_empty() {
                    return Err(Error::arg(format!(
                        "no odd coprime pairs in [{}, {}]",
                        self.min, self.max
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> PairGrid {
        PairGrid::new(self.variant, self.min, self.max)
    }

    /// Number of cells the campaign will visit.
    pub fn predicted_cells(&self) -> u64 {
        let ns = self.n_set.len() as u64;
        match self.mode {
            Mode::Triples => {
                let w = (self.max - self.min + 1).max(0) as u64;
                w * (w + 1) / 2 * w * ns
            }
            Mode::Offsets => self.grid().pairs().len() as u64 * ns,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearMiss {
    pub triple: FermatTriple,
    /// `A^n + B^n - C^n`.
    #[serde(with = "decimal")]
    pub residual: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerRootInstance {
    pub pair: OffsetPair,
    pub n: u32,
    #[serde(with = "decimal::vec")]
    pub roots: Vec<BigInt>,
    /// The triple each root maps back to.
    pub triples: Vec<FermatTriple>,
    /// Every triple satisfies its equation exactly.
    pub verified: bool,
}

/// One row of an offset sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellSummary {
    #[serde(with = "decimal")]
    pub d: BigInt,
    #[serde(with = "decimal")]
    pub e: BigInt,
    pub n: u32,
    pub integer_roots: usize,
    /// `complete`, `incomplete` or `disagree`.
    pub divisor_check: String,
    pub candidates_tested: usize,
    pub lhs_all_even: bool,
    pub second_last_mod4: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub pair: OffsetPair,
    pub n: u32,
    #[serde(with = "decimal::vec")]
    pub sturm: Vec<BigInt>,
    #[serde(with = "decimal::vec")]
    pub divisor: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub elapsed_ms: u128,
    pub jobs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignResult {
    pub config: CampaignConfig,
    pub cells_processed: u64,
    pub predicted_cells: u64,
    /// Exact solutions that are not counterexamples (`n = 2` or trivial).
    pub solutions: Vec<FermatTriple>,
    /// Non-trivial exact solutions with `n >= 3`.
    pub counterexamples: Vec<FermatTriple>,
    pub near_misses: Vec<NearMiss>,
    pub integer_root_instances: Vec<IntegerRootInstance>,
    pub decider_disagreements: Vec<Disagreement>,
    /// Cells where the constant term did not factor within budget.
    pub divisor_incomplete: u64,
    /// Seeded spot checks of the expansion identity.
    pub spot_checks: u64,
    pub spot_check_failures: Vec<String>,
    /// Gcd identities checked on primitive `n = 2` solutions.
    pub gcd_corollary_violations: Vec<Witness>,
    /// Parity hooks and any other replayable violation.
    pub witnesses: Vec<Witness>,
    pub cells: Vec<CellSummary>,
    pub metadata: Metadata,
}

impl CampaignResult {
    /// Anything that should turn the exit status to failure.
    pub fn has_violation(&self) -> bool {
        !self.counterexamples.is_empty()
            || !self.integer_root_instances.is_empty()
            || !self.decider_disagreements.is_empty()
            || !self.spot_check_failures.is_empty()
            || !self.gcd_corollary_violations.is_empty()
            || !self.witnesses.is_empty()
    }

    /// Counterexamples as witnesses, followed by every other witness.
    pub fn all_witnesses(&self) -> Vec<Witness> {
        let mut out: Vec<Witness> = self
            .counterexamples
            .iter()
            .map(|t| Witness::Counterexample { triple: t.clone() })
            .collect();
        out.extend(self.gcd_corollary_violations.iter().cloned());
        out.extend(self.witnesses.iter().cloned());
        out
    }

    /// JSON without the run metadata; identical configs give identical bytes.
    pub fn to_canonical_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("serializable");
        v.as_object_mut().expect("object").remove("metadata");
        serde_json::to_string_pretty(&v).expect("serializable")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// One row per cell for offset sweeps, one row per solution, counterexample
    /// or near miss for triple searches.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match self.config.mode {
            Mode::Offsets => {
                out.push_str("d,e,n,integer_roots,divisor_check,candidates_tested,lhs_all_even,second_last_mod4\n");
                for c in &self.cells {
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{},{}\n",
                        c.d,
                        c.e,
                        c.n,
                        c.integer_roots,
                        c.divisor_check,
                        c.candidates_tested,
                        c.lhs_all_even,
                        c.second_last_mod4
                    ));
                }
            }
            Mode::Triples => {
                out.push_str("kind,a,b,c,n,residual\n");
                let rows = self
                    .solutions
                    .iter()
                    .map(|t| ("solution", t, BigInt::zero()))
                    .chain(
                        self.counterexamples
                            .iter()
                            .map(|t| ("counterexample", t, BigInt::zero())),
                    )
                    .chain(
                        self.near_misses
                            .iter()
                            .map(|m| ("near_miss", &m.triple, m.residual.clone())),
                    );
                for (kind, t, r) in rows {
                    out.push_str(&format!("{kind},{},{},{},{},{r}\n", t.a, t.b, t.c, t.n));
                }
            }
        }
        out
    }
}

/// Run `f` on a dedicated pool of `jobs` workers.
pub fn with_jobs<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::arg(format!("cannot start {jobs} workers: {e}")))?;
    Ok(pool.install(f))
}

pub fn run(cfg: &CampaignConfig) -> Result<CampaignResult> {
    match cfg.mode {
        Mode::Triples => search_triples(cfg),
        Mode::Offsets => sweep_offsets(cfg),
    }
}

fn empty_result(cfg: &CampaignConfig) -> CampaignResult {
    CampaignResult {
        config: cfg.clone(),
        cells_processed: 0,
        predicted_cells: cfg.predicted_cells(),
        solutions: Vec::new(),
        counterexamples: Vec::new(),
        near_misses: Vec::new(),
        integer_root_instances: Vec::new(),
        decider_disagreements: Vec::new(),
        divisor_incomplete: 0,
        spot_checks: 0,
        spot_check_failures: Vec::new(),
        gcd_corollary_violations: Vec::new(),
        witnesses: Vec::new(),
        cells: Vec::new(),
        metadata: Metadata {
            elapsed_ms: 0,
            jobs: cfg.jobs,
        },
    }
}

#[derive(Default)]
struct TripleHits {
    cells: u64,
    exact: Vec<FermatTriple>,
    near: Vec<NearMiss>,
}

/// `A^n` for `A` in `[min, max]`, if `2 max^n` fits in 128 bits.
fn power_table(min: i64, max: i64, n: u32) -> Option<Vec<u128>> {
    let top = (max as u128).checked_pow(n)?;
    top.checked_mul(2)?;
    Some((min..=max).map(|v| (v as u128).pow(n)).collect())
}

fn scan_row(a: i64, cfg: &CampaignConfig, n: u32, table: Option<&[u128]>) -> TripleHits {
    let mut hits = TripleHits::default();
    let thr = cfg.near_miss_threshold;
    let idx = |v: i64| (v - cfg.min) as usize;
    for b in a..=cfg.max {
        match table {
            Some(t) => {
                let s = t[idx(a)] + t[idx(b)];
                for c in cfg.min..=cfg.max {
                    let cn = t[idx(c)];
                    let diff = s.abs_diff(cn);
                    if diff == 0 {
                        hits.exact.push(FermatTriple::new(a, b, c, n));
                    } else if diff <= thr as u128 {
                        let r = BigInt::from(s) - BigInt::from(cn);
                        hits.near.push(NearMiss {
                            triple: FermatTriple::new(a, b, c, n),
                            residual: r,
                        });
                    }
                }
            }
            None => {
                let s = BigInt::from(a).pow(n) + BigInt::from(b).pow(n);
                for c in cfg.min..=cfg.max {
                    let r = &s - BigInt::from(c).pow(n);
                    if r.is_zero() {
                        hits.exact.push(FermatTriple::new(a, b, c, n));
                    } else if r.magnitude() <= &thr.into() {
                        hits.near.push(NearMiss {
                            triple: FermatTriple::new(a, b, c, n),
                            residual: r,
                        });
                    }
                }
            }
        }
        hits.cells += (cfg.max - cfg.min + 1) as u64;
    }
    hits
}

/// Test `A^n + B^n = C^n` for every `A <= B` and every `C` in the box.
pub fn search_triples(cfg: &CampaignConfig) -> Result<CampaignResult> {
    if cfg.mode != Mode::Triples {
        return Err(Error::arg("search_triples needs triples mode"));
    }
    cfg.validate()?;
    let start = Instant::now();
    let mut out = empty_result(cfg);
    let rows: Vec<(i64, u32)> = (cfg.min..=cfg.max)
        .flat_map(|a| cfg.n_set.iter().map(move |&n| (a, n)))
        .collect();
    let tables: Vec<(u32, Option<Vec<u128>>)> = cfg
        .n_set
        .iter()
        .map(|&n| (n, power_table(cfg.min, cfg.max, n)))
        .collect();
    let table_for = |n: u32| tables.iter().find(|(m, _)| *m == n).and_then(|(_, t)| t.as_deref());
    let hits: Vec<TripleHits> = with_jobs(cfg.jobs, || {
        rows.par_iter()
            .map(|&(a, n)| scan_row(a, cfg, n, table_for(n)))
            .collect()
    })?;
    for h in hits {
        out.cells_processed += h.cells;
        for t in h.exact {
            if t.n >= 3 && !t.is_trivial() {
                out.counterexamples.push(t);
            } else {
                out.solutions.push(t);
            }
        }
        out.near_misses.extend(h.near);
    }
    out.solutions.sort();
    out.counterexamples.sort();
    out.near_misses.sort_by(|x, y| x.triple.cmp(&y.triple));
    let primitive: Vec<FermatTriple> = out
        .solutions
        .iter()
        .filter(|t| !t.is_trivial() && t.is_pairwise_coprime())
        .cloned()
        .collect();
    out.gcd_corollary_violations = check_gcd_corollaries(&primitive)?;
    out.metadata.elapsed_ms = start.elapsed().as_millis();
    Ok(out)
}

struct CellOutcome {
    summary: CellSummary,
    instance: Option<IntegerRootInstance>,
    counterexamples: Vec<FermatTriple>,
    disagreement: Option<Disagreement>,
    incomplete: bool,
    spot_failure: Option<String>,
    witnesses: Vec<Witness>,
}

/// The polynomial, written directly from the offsets, at `x`.
fn expansion_at(pair: &OffsetPair, n: u32, x: &BigInt) -> BigInt {
    match pair.variant() {
        Variant::Alternating => (x - pair.d()).pow(n) + (x - pair.e()).pow(n) - x.pow(n),
        Variant::Positive => (x + pair.d()).pow(n) + (x + pair.e()).pow(n) - x.pow(n),
    }
}

fn sweep_cell(index: usize, pair: &OffsetPair, n: u32, seed: u64) -> CellOutcome {
    let poly = construct(pair, n).expect("grid cells are valid");
    let roots = integer_roots_sturm(&poly);

    let mut distinct = roots.clone();
    distinct.dedup();
    let (divisor_check, candidates_tested, disagreement, incomplete) = match integer_roots_divisor(&poly) {
        DivisorOutcome::Complete {
            roots: div,
            candidates_tested,
        } => {
            if div == distinct {
                ("complete", candidates_tested, None, false)
            } else {
                let d = Disagreement {
                    pair: pair.clone(),
                    n,
                    sturm: distinct.clone(),
                    divisor: div,
                };
                ("disagree", candidates_tested, Some(d), false)
            }
        }
        DivisorOutcome::Incomplete { .. } => ("incomplete", 0, None, true),
    };

    let mut witnesses = lhs_parity_witnesses(pair, n);
    let lhs_all_even = witnesses.is_empty();
    witnesses.extend(second_last_mod4_witness(pair, n));
    witnesses.extend(odd_root_witness(poly.as_intpoly(), &roots, Some((pair, n))));

    let mut counterexamples = Vec::new();
    let instance = (!distinct.is_empty()).then(|| {
        let triples: Vec<FermatTriple> = distinct.iter().map(|r| offsets_to_triple(pair, r, n)).collect();
        let verified = triples.iter().all(FermatTriple::is_solution);
        for (r, t) in distinct.iter().zip(&triples) {
            if t.is_solution() && !t.is_trivial() {
                counterexamples.push(t.clone());
            }
            witnesses.push(Witness::IntegerRoot {
                pair: pair.clone(),
                n,
                root: r.clone(),
                triple: t.clone(),
            });
        }
        IntegerRootInstance {
            pair: pair.clone(),
            n,
            roots: roots.clone(),
            triples,
            verified,
        }
    });

    // per-cell stream keyed by the campaign seed and the cell position
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let x = BigInt::from(rng.gen_range(-1_000_000i64..=1_000_000));
    let spot_failure = (evaluate(&poly, &x) != expansion_at(pair, n, &x))
        .then(|| format!("{pair}, n={n}: expansion mismatch at x={x}"));

    CellOutcome {
        summary: CellSummary {
            d: pair.d().clone(),
            e: pair.e().clone(),
            n,
            integer_roots: roots.len(),
            divisor_check: divisor_check.to_string(),
            candidates_tested,
            lhs_all_even,
            second_last_mod4: crate::viete::second_last_residues(pair, n).1,
        },
        instance,
        counterexamples,
        disagreement,
        incomplete,
        spot_failure,
        witnesses,
    }
}

/// Decide integer roots for every `(pair, n)` in the grid with the Sturm
/// decider, cross-check with the divisor decider, and run the parity hooks.
pub fn sweep_offsets(cfg: &CampaignConfig) -> Result<CampaignResult> {
    if cfg.mode != Mode::Offsets {
        return Err(Error::arg("sweep_offsets needs offsets mode"));
    }
    cfg.validate()?;
    let start = Instant::now();
    let mut out = empty_result(cfg);
    let cells = cfg.grid().cells(&cfg.n_set);
    let outcomes: Vec<CellOutcome> = with_jobs(cfg.jobs, || {
        cells
            .par_iter()
            .enumerate()
            .map(|(i, (pair, n))| sweep_cell(i, pair, *n, cfg.seed))
            .collect()
    })?;
    for o in outcomes {
        out.cells_processed += 1;
        out.spot_checks += 1;
        out.cells.push(o.summary);
        out.integer_root_instances.extend(o.instance);
        out.counterexamples.extend(o.counterexamples);
        out.decider_disagreements.extend(o.disagreement);
        out.divisor_incomplete += o.incomplete as u64;
        out.spot_check_failures.extend(o.spot_failure);
        out.witnesses.extend(o.witnesses);
    }
    out.metadata.elapsed_ms = start.elapsed().as_millis();
    Ok(out)
}

/// Gcd identities on exact solutions; every input must satisfy its equation.
pub fn check_gcd_corollaries(triples: &[FermatTriple]) -> Result<Vec<Witness>> {
    if let Some(t) = triples.iter().find(|t| !t.is_solution()) {
        return Err(Error::arg(format!("{t} does not satisfy its equation")));
    }
    Ok(triples.iter().flat_map(gcd_witnesses).collect())
}

/// Primitive Pythagorean triples `(m^2 - k^2, 2mk, m^2 + k^2)` for
/// `m > k > 0`, coprime and of opposite parity, `m <= m_max`.
pub fn primitive_pythagorean(m_max: i64) -> Vec<FermatTriple> {
    let mut out = Vec::new();
    for m in 2..=m_max {
        for k in 1..m {
            if (m - k) % 2 == 1 && gcd(&m.into(), &k.into()).is_one() {
                out.push(FermatTriple::new(m * m - k * k, 2 * m * k, m * m + k * k, 2));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pythagorean_box() {
        let r = search_triples(&CampaignConfig::triples(50, vec![2])).unwrap();
        for (a, b, c) in [(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25), (6, 8, 10)] {
            assert!(r.solutions.contains(&FermatTriple::new(a, b, c, 2)));
        }
        assert!(r.counterexamples.is_empty());
        assert!(r.gcd_corollary_violations.is_empty());
        assert_eq!(r.cells_processed, r.predicted_cells);
        assert!(!r.has_violation());
    }

    #[test]
    fn near_miss_recorded() {
        let r = search_triples(&CampaignConfig::triples(12, vec![3])).unwrap();
        let m = r
            .near_misses
            .iter()
            .find(|m| m.triple == FermatTriple::new(6, 8, 9, 3))
            .unwrap();
        assert_eq!(m.residual, BigInt::from(-1));
        assert!(r.counterexamples.is_empty());
    }

    #[test]
    fn bigint_fallback_agrees_with_table() {
        // 60^23 overflows 128 bits
        assert!(power_table(1, 60, 23).is_none());
        let cfg = CampaignConfig::triples(12, vec![3]);
        let fast = scan_row(6, &cfg, 3, power_table(1, 12, 3).as_deref());
        let slow = scan_row(6, &cfg, 3, None);
        assert_eq!(fast.cells, slow.cells);
        assert_eq!(fast.near, slow.near);
        assert_eq!(fast.exact, slow.exact);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(search_triples(&CampaignConfig::triples(0, vec![3])).is_err());
        assert!(search_triples(&CampaignConfig::triples(10, vec![])).is_err());
        assert!(search_triples(&CampaignConfig::triples(10, vec![1])).is_err());
        let cfg = CampaignConfig::offsets(Variant::Alternating, 1, 11, vec![4]);
        assert!(sweep_offsets(&cfg).is_err());
        let cfg = CampaignConfig::offsets(Variant::Alternating, 2, 2, vec![3]);
        assert!(sweep_offsets(&cfg).is_err());
    }

    #[test]
    fn small_offset_sweep() {
        let cfg = CampaignConfig::offsets(Variant::Alternating, 1, 15, vec![3, 5]);
        let r = sweep_offsets(&cfg).unwrap();
        assert_eq!(r.cells_processed, r.predicted_cells);
        assert!(r.integer_root_instances.is_empty());
        assert!(r.decider_disagreements.is_empty());
        assert!(r.spot_check_failures.is_empty());
        assert!(!r.has_violation());
        assert_eq!(
            (r.cells[0].d.clone(), r.cells[0].e.clone()),
            (BigInt::one(), BigInt::one())
        );
    }

    #[test]
    fn sweep_through_trivial_root() {
        // (1, -1) has the root 0, mapping to the trivial triple (-1, 1, 0)
        let cfg = CampaignConfig::offsets(Variant::Alternating, -1, 1, vec![3]);
        let r = sweep_offsets(&cfg).unwrap();
        assert_eq!(r.integer_root_instances.len(), 2);
        assert!(r.integer_root_instances.iter().all(|i| i.verified));
        assert!(r.counterexamples.is_empty());
    }

    #[test]
    fn positive_sweep() {
        let cfg = CampaignConfig::offsets(Variant::Positive, -15, -1, vec![3]);
        let r = sweep_offsets(&cfg).unwrap();
        assert!(r.integer_root_instances.is_empty());
        assert!(r.decider_disagreements.is_empty());
    }

    #[test]
    fn canonical_output_ignores_workers() {
        let base = CampaignConfig::offsets(Variant::Alternating, 1, 21, vec![3, 5]);
        let a = sweep_offsets(&base.clone().with_jobs(1)).unwrap();
        let b = sweep_offsets(&base.with_jobs(4)).unwrap();
        assert_eq!(a.to_canonical_json(), b.to_canonical_json());
        assert!(!a.to_canonical_json().contains("elapsed"));
        assert!(a.to_json().contains("elapsed_ms"));
    }

    #[test]
    fn gcd_corollaries() {
        let triples = primitive_pythagorean(50);
        assert_eq!(triples.len(), 518);
        assert!(check_gcd_corollaries(&triples).unwrap().is_empty());
        assert!(check_gcd_corollaries(&[FermatTriple::new(1, 2, 3, 2)]).is_err());
        let bad = check_gcd_corollaries(&[FermatTriple::new(6, 8, 10, 2)]).unwrap();
        assert!(!bad.is_empty());
    }

    #[test]
    fn csv_shapes() {
        let r = search_triples(&CampaignConfig::triples(5, vec![2])).unwrap();
        let csv = r.to_csv();
        assert!(csv.starts_with("kind,a,b,c,n,residual\n"));
        assert!(csv.contains("solution,3,4,5,2,0"));
        let r = sweep_offsets(&CampaignConfig::offsets(Variant::Alternating, 1, 3, vec![3])).unwrap();
        let csv = r.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 1 + r.cells.len());
        assert_eq!(lines[1], "1,1,3,0,complete,4,true,2");
    }
}
