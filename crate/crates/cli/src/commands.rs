use std::fmt::Write;
use std::time::Instant;

use assocpoly::assoc::{construct, offsets_to_triple, AssociatedPolynomial, OffsetPair, Variant};
use assocpoly::intpoly::IntPoly;
use assocpoly::report;
use assocpoly::roots::{
    all_roots_numeric, classify_pairs, integer_roots_divisor, integer_roots_sturm, DivisorOutcome, PairClassification,
    PairVerdict, DEFAULT_PRECISION, DEFAULT_TOLERANCE,
};
use assocpoly::search::{self, CampaignConfig, Mode, DEFAULT_NEAR_MISS_THRESHOLD};
use assocpoly::viete::{
    self, audit_equations, audit_even_root_cells, audit_lhs_parity_cells, audit_mod4_cells, tail_parity_verdict,
    PairGrid, ParityVerdict, VieteReport, EQUATION_TOLERANCE,
};
use assocpoly::witness::Witness;
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::args::{AuditArgs, Claim, ConstructArgs, Format, PairArgs, RootsArgs, SearchArgs};
use crate::config::{merge, FileConfig};
use crate::output::Outcome;

type CmdResult<T> = Result<T, String>;

fn fail(e: assocpoly::Error) -> String {
    e.to_string()
}

fn variant_of(flag: &Option<String>, cfg: &FileConfig) -> CmdResult<Variant> {
    merge(flag.clone(), cfg.get::<String>("variant"))?
        .map(|s| s.parse::<Variant>().map_err(fail))
        .transpose()
        .map(|v| v.unwrap_or(Variant::Alternating))
}

/// Both offsets, or neither.
fn pair_of(args: &PairArgs, cfg: &FileConfig) -> CmdResult<Option<OffsetPair>> {
    let d = merge(args.d.clone(), cfg.get::<BigInt>("d"))?;
    let e = merge(args.e.clone(), cfg.get::<BigInt>("e"))?;
    let variant = variant_of(&args.variant, cfg)?;
    match (d, e) {
        (Some(d), Some(e)) => OffsetPair::new(d, e, variant).map(Some).map_err(fail),
        (None, None) => Ok(None),
        _ => Err("--d and --e must be given together".into()),
    }
}

fn precision_of(flag: Option<u32>, cfg: &FileConfig) -> CmdResult<u32> {
    let p = merge(flag, cfg.get("precision"))?.unwrap_or(DEFAULT_PRECISION);
    if p < 64 {
        return Err(format!("precision must be at least 64 bits (got {p})"));
    }
    Ok(p)
}

fn tolerance_of(flag: Option<f64>, cfg: &FileConfig) -> CmdResult<f64> {
    let t = merge(flag, cfg.get("tolerance"))?.unwrap_or(DEFAULT_TOLERANCE);
    if !(t > 0.0 && t < 0.5) {
        return Err(format!("tolerance must lie in (0, 0.5) (got {t})"));
    }
    Ok(t)
}

fn jobs_of(flag: Option<usize>, cfg: &FileConfig) -> CmdResult<usize> {
    let j = merge(flag, cfg.get("jobs"))?.unwrap_or(1);
    if j == 0 {
        return Err("jobs must be at least 1".into());
    }
    Ok(j)
}

fn exponents_of(flag: &Option<Vec<u32>>, cfg: &FileConfig, default: &[u32]) -> CmdResult<Vec<u32>> {
    let ns = merge(flag.clone(), cfg.get_list("n"))?.unwrap_or_else(|| default.to_vec());
    if ns.is_empty() {
        return Err("exponent list is empty".into());
    }
    Ok(ns)
}

fn pair_json(p: &OffsetPair) -> Value {
    json!({"variant": p.variant(), "d": p.d().to_string(), "e": p.e().to_string()})
}

pub fn construct_cmd(a: &ConstructArgs, cfg: &FileConfig) -> CmdResult<AssociatedPolynomial> {
    let pair = pair_of(&a.pair, cfg)?.ok_or("--d and --e are required")?;
    let n = merge(a.n, cfg.get("n"))?.ok_or("--n is required")?;
    construct(&pair, n).map_err(fail)
}

/// `x^3 - 12x^2 + 30x - 28`.
pub fn poly_to_string(p: &IntPoly) -> String {
    let deg = p.degree();
    let mut s = String::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        let k = deg - i;
        if c.sign() == num_bigint::Sign::NoSign {
            continue;
        }
        let neg = c.sign() == num_bigint::Sign::Minus;
        let mag = c.magnitude().to_string();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let show_mag = k == 0 || mag != "1";
        if show_mag {
            s.push_str(&mag);
        }
        match k {
            0 => {}
            1 => s.push('x'),
            _ => {
                let _ = write!(s, "x^{k}");
            }
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

enum Input {
    Assoc(AssociatedPolynomial),
    Raw(IntPoly),
}

fn read_poly_json(path: &std::path::Path) -> CmdResult<Input> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| format!("malformed input: {e}"))?;
    if v.get("n").is_some() || v.get("d").is_some() {
        return AssociatedPolynomial::from_json(&text).map(Input::Assoc).map_err(fail);
    }
    let list = match &v {
        Value::Array(_) => &v,
        Value::Object(o) => o
            .get("coefficients")
            .ok_or("malformed input: expected a coefficient list")?,
        _ => return Err("malformed input: expected a coefficient list".into()),
    };
    let coeffs = list
        .as_array()
        .ok_or("malformed input: coefficients must be a list")?
        .iter()
        .map(|c| match c {
            Value::String(s) => s.parse::<BigInt>().map_err(|e| format!("malformed input: {e}")),
            Value::Number(n) if n.is_i64() => Ok(BigInt::from(n.as_i64().unwrap())),
            other => Err(format!("malformed input: coefficient {other} is not an integer")),
        })
        .collect::<CmdResult<Vec<_>>>()?;
    Ok(Input::Raw(IntPoly::new(coeffs)))
}

pub fn roots_cmd(a: &RootsArgs, cfg: &FileConfig) -> CmdResult<Outcome> {
    let start = Instant::now();
    let precision = precision_of(a.precision, cfg)?;
    let tolerance = tolerance_of(a.tolerance, cfg)?;
    let coeffs = merge(a.coeffs.clone(), cfg.get_list::<BigInt>("coeffs"))?;
    let poly_json = merge(a.poly_json.clone(), cfg.get("poly-json"))?;
    let input = if let Some(c) = coeffs {
        Input::Raw(IntPoly::new(c))
    } else if let Some(path) = poly_json {
        read_poly_json(&path)?
    } else {
        let pair = pair_of(&a.pair, cfg)?.ok_or("give --coeffs, --poly-json, or --d/--e/--n")?;
        let n = merge(a.n, cfg.get("n"))?.ok_or("--n is required with --d/--e")?;
        Input::Assoc(construct(&pair, n).map_err(fail)?)
    };
    let (poly, source) = match &input {
        Input::Assoc(p) => (p.as_intpoly().clone(), Some((p.source().clone(), p.degree()))),
        Input::Raw(p) => (p.clone(), None),
    };
    if poly.is_zero() {
        return Err("the zero polynomial has no finite root set".into());
    }

    let settings = json!({
        "input": match &source {
            Some((pair, n)) => json!({"pair": pair_json(pair), "n": n}),
            None => json!({"coefficients": poly.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>()}),
        },
        "precision": precision,
        "tolerance": tolerance,
    });
    let mut o = Outcome::new("roots", settings);

    let sturm = integer_roots_sturm(&poly);
    let divisor = integer_roots_divisor(&poly);
    let numeric = if poly.is_monic() && poly.degree() > 0 {
        Some(all_roots_numeric(&poly, precision).map_err(fail)?)
    } else {
        None
    };
    let zero = BigInt::from(0);
    let trivial = sturm.contains(&zero).then_some(&zero);
    let pairing = numeric.as_ref().map(|rs| classify_pairs(rs, trivial, tolerance));

    let mut distinct = sturm.clone();
    distinct.dedup();
    let mut triples = Vec::new();
    for r in &distinct {
        match &source {
            Some((pair, n)) => {
                let t = offsets_to_triple(pair, r, *n);
                if !t.is_trivial() {
                    o.witnesses.push(Witness::IntegerRoot {
                        pair: pair.clone(),
                        n: *n,
                        root: r.clone(),
                        triple: t.clone(),
                    });
                    if t.is_solution() {
                        o.witnesses.push(Witness::Counterexample { triple: t.clone() });
                    }
                }
                triples.push(t);
            }
            None => o.witnesses.push(Witness::PolynomialRoot {
                coefficients: poly.coeffs().to_vec(),
                root: r.clone(),
            }),
        }
    }
    o.exit = if o.witnesses.is_empty() { 0 } else { 1 };

    let mut s = String::new();
    let _ = writeln!(s, "polynomial: {} (degree {})", poly_to_string(&poly), poly.degree());
    if let Some((pair, n)) = &source {
        let _ = writeln!(s, "source: {pair}, n={n}");
    }
    let roots_text: Vec<String> = sturm.iter().map(BigInt::to_string).collect();
    let _ = writeln!(
        s,
        "integer roots: {}",
        if roots_text.is_empty() {
            "none".to_string()
        } else {
            roots_text.join(", ")
        }
    );
    match &divisor {
        DivisorOutcome::Complete {
            candidates_tested,
            roots,
        } => {
            let agree = *roots == distinct;
            let _ = writeln!(
                s,
                "divisor check: {candidates_tested} candidates, {}",
                if agree { "agrees" } else { "DISAGREES" }
            );
        }
        DivisorOutcome::Incomplete { cofactor } => {
            let _ = writeln!(s, "divisor check: incomplete (unfactored cofactor {cofactor})");
        }
    }
    for t in &triples {
        let kind = if t.is_trivial() { "trivial" } else { "non-trivial" };
        let _ = writeln!(s, "  maps to {kind} triple {t}");
    }
    match &numeric {
        Some(rs) => {
            let digits = 30.min((precision as f64 * std::f64::consts::LOG10_2) as usize);
            let _ = writeln!(s, "irrational real roots: {}", rs.real_irrational.len());
            for r in &rs.real_irrational {
                let _ = writeln!(s, "  {}", r.value.to_decimal(digits));
            }
            let _ = writeln!(s, "complex pairs: {}", rs.complex_pairs.len());
            for c in &rs.complex_pairs {
                let _ = writeln!(
                    s,
                    "  {} +- {}i  (|P| <= {:.1e})",
                    c.re.to_decimal(digits),
                    c.im.to_decimal(digits),
                    c.residual
                );
            }
            if let Some(pc) = &pairing {
                let _ = writeln!(s, "pairing: {:?}", pc.verdict);
            }
        }
        None => {
            let _ = writeln!(s, "numeric roots skipped: polynomial is not monic");
        }
    }
    o.summary = s;
    o.result = json!({
        "polynomial": poly.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "integer_roots": roots_text,
        "divisor_check": divisor,
        "triples": triples,
        "numeric": numeric.as_ref().map(|r| r.to_json_value()),
        "pairing": pairing,
    });
    o.elapsed_ms = start.elapsed().as_millis();
    Ok(o)
}

fn claims_of(c: Claim) -> Vec<Claim> {
    match c {
        Claim::All => vec![
            Claim::LhsParity,
            Claim::Mod4,
            Claim::PowerSumMod4,
            Claim::EvenRoots,
            Claim::Equations,
            Claim::TailParity,
            Claim::Pairs,
        ],
        other => vec![other],
    }
}

fn classify_cell(pair: &OffsetPair, n: u32, precision: u32, tol: f64) -> assocpoly::Result<PairClassification> {
    let poly = construct(pair, n)?;
    let rs = all_roots_numeric(&poly, precision)?;
    let zero = BigInt::from(0);
    let trivial = rs.integer_roots.contains(&zero).then_some(&zero);
    Ok(classify_pairs(&rs, trivial, tol))
}

fn equations_cell(pair: &OffsetPair, n: u32, precision: u32, tol: f64) -> assocpoly::Result<VieteReport> {
    let poly = construct(pair, n)?;
    let rs = all_roots_numeric(&poly, precision)?;
    audit_equations(pair, n, &rs, tol)
}

/// Verdicts, pairing and equation details, extra witnesses, markdown.
type AuditParts = (Vec<ParityVerdict>, Option<Value>, Option<Value>, Vec<Witness>, String);

pub fn audit_cmd(a: &AuditArgs, cfg: &FileConfig) -> CmdResult<Outcome> {
    use rayon::prelude::*;

    let start = Instant::now();
    let claim = merge(a.claim, cfg.get_enum::<Claim>("claim"))?.ok_or("--claim is required")?;
    let single = pair_of(&a.pair, cfg)?;
    let variant = variant_of(&a.pair.variant, cfg)?;
    let n_set = exponents_of(&a.n, cfg, &[3, 5, 7])?;
    let min = merge(a.min, cfg.get("min"))?.unwrap_or(1);
    let max = merge(a.max, cfg.get("max"))?.unwrap_or(51);
    let x_max = merge(a.x_max, cfg.get("x-max"))?.unwrap_or(999);
    let n_max = merge(a.n_max, cfg.get("n-max"))?.unwrap_or(20);
    let precision = precision_of(a.precision, cfg)?;
    let tolerance = tolerance_of(a.tolerance, cfg)?;
    let jobs = jobs_of(a.jobs, cfg)?;
    let claims = claims_of(claim);

    let needs_cells = claims.iter().any(|c| *c != Claim::PowerSumMod4);
    if needs_cells {
        for &n in &n_set {
            assocpoly::assoc::check_exponent(n).map_err(fail)?;
        }
    }
    let grid = PairGrid::new(variant, min, max);
    let (cells, label) = match &single {
        Some(pair) => (
            n_set.iter().map(|&n| (pair.clone(), n)).collect::<Vec<_>>(),
            format!("{pair}, n in {n_set:?}"),
        ),
        None => (grid.cells(&n_set), grid.describe(&n_set)),
    };
    if needs_cells && cells.is_empty() {
        return Err(format!("no odd coprime pairs in [{min}, {max}]"));
    }

    let mut settings = json!({
        "claim": format!("{claim:?}"),
        "precision": precision,
        "tolerance": tolerance,
    });
    if needs_cells {
        settings["n"] = json!(n_set);
        match &single {
            Some(pair) => settings["pair"] = pair_json(pair),
            None => settings["grid"] = json!({"variant": variant, "min": min, "max": max}),
        }
    }
    if claims.contains(&Claim::PowerSumMod4) {
        settings["x_max"] = json!(x_max);
        settings["n_max"] = json!(n_max);
    }
    let mut o = Outcome::new("audit", settings);
    o.jobs = Some(jobs);

    let run = || -> CmdResult<AuditParts> {
        let mut verdicts = Vec::new();
        let mut extra_witnesses = Vec::new();
        let mut pairs_json = None;
        let mut eq_json = None;
        let mut md = String::new();
        let mut eq_reports: Option<Vec<VieteReport>> = None;
        let mut equations_needed = claims.contains(&Claim::Equations) || claims.contains(&Claim::TailParity);
        for c in &claims {
            match c {
                Claim::LhsParity => verdicts.push(audit_lhs_parity_cells(&cells, label.clone())),
                Claim::Mod4 => verdicts.push(audit_mod4_cells(&cells, label.clone())),
                Claim::PowerSumMod4 => verdicts.push(viete::audit_power_sum_mod4(x_max, n_max)),
                Claim::EvenRoots => verdicts.push(audit_even_root_cells(&cells, label.clone())),
                Claim::Equations | Claim::TailParity => {
                    if equations_needed {
                        equations_needed = false;
                        let reports: Vec<VieteReport> = cells
                            .par_iter()
                            .map(|(p, n)| equations_cell(p, *n, precision, tolerance))
                            .collect::<assocpoly::Result<_>>()
                            .map_err(fail)?;
                        eq_reports = Some(reports);
                    }
                    let reports = eq_reports.as_ref().expect("computed above");
                    if *c == Claim::TailParity {
                        verdicts.push(tail_parity_verdict(reports, label.clone()));
                        continue;
                    }
                    let mut ws = Vec::new();
                    for r in reports {
                        if let Some(chk) = r
                            .equation_checks
                            .iter()
                            .find(|c| c.residual.is_nan() || c.residual >= EQUATION_TOLERANCE)
                        {
                            ws.push(Witness::EquationResidual {
                                pair: r.pair.clone(),
                                n: r.n,
                                precision_bits: r.precision_bits,
                                k: chk.k,
                                residual: chk.residual,
                            });
                        }
                    }
                    let max_res = reports.iter().map(VieteReport::max_residual).fold(0.0, f64::max);
                    let max_vieta = reports.iter().map(|r| r.vieta_relative_error).fold(0.0, f64::max);
                    let premise_unsatisfied = reports.iter().filter(|r| r.designation.premise_unsatisfied).count();
                    let _ = writeln!(md, "## coefficient identities\n\n{label}\n");
                    if single.is_some() {
                        md.push_str(&report::equations_table(reports));
                    } else {
                        let _ = writeln!(
                            md,
                            "{} instances, max residual {max_res:.3e}, max Vieta relative error {max_vieta:.3e}",
                            reports.len()
                        );
                    }
                    md.push('\n');
                    eq_json = Some(json!({
                        "instances": reports.len(),
                        "residual_bound": EQUATION_TOLERANCE,
                        "max_residual": max_res,
                        "max_vieta_relative_error": max_vieta,
                        "designated_root_not_integer": premise_unsatisfied,
                        "violations": ws.len(),
                        "reports": if single.is_some() { json!(reports) } else { Value::Null },
                    }));
                    extra_witnesses.extend(ws);
                }
                Claim::Pairs => {
                    let classes: Vec<PairClassification> = cells
                        .par_iter()
                        .map(|(p, n)| classify_cell(p, *n, precision, tolerance))
                        .collect::<assocpoly::Result<_>>()
                        .map_err(fail)?;
                    let mut ws = Vec::new();
                    let _ = writeln!(md, "## root pairing\n\n{label}\n");
                    for ((pair, n), pc) in cells.iter().zip(&classes) {
                        if pc.verdict == PairVerdict::Violation {
                            ws.push(Witness::UnpairedRoots {
                                pair: pair.clone(),
                                n: *n,
                                precision_bits: precision,
                                tolerance,
                                trivial_root: pc
                                    .witness
                                    .as_ref()
                                    .and_then(|w| w.excluded_index)
                                    .map(|_| BigInt::from(0)),
                                unpaired: pc.witness.as_ref().map(|w| w.unpaired.clone()).unwrap_or_default(),
                            });
                        }
                        if single.is_some() {
                            md.push_str(&report::pairs_markdown(&format!("{pair}, n={n}"), pc));
                            md.push('\n');
                        }
                    }
                    let consistent = classes.iter().filter(|c| c.verdict == PairVerdict::Consistent).count();
                    if single.is_none() {
                        let _ = writeln!(
                            md,
                            "{} instances, {consistent} consistent, {} violations\n",
                            classes.len(),
                            ws.len()
                        );
                    }
                    pairs_json = Some(json!({
                        "instances": classes.len(),
                        "consistent": consistent,
                        "violations": ws.len(),
                        "classifications": if single.is_some() { json!(classes) } else { Value::Null },
                    }));
                    extra_witnesses.extend(ws);
                }
                Claim::All => unreachable!("expanded above"),
            }
        }
        Ok((verdicts, pairs_json, eq_json, extra_witnesses, md))
    };
    let (verdicts, pairs_json, eq_json, extra, sections) = search::with_jobs(jobs, run).map_err(fail)??;

    for v in &verdicts {
        o.witnesses.extend(v.violations.iter().cloned());
    }
    o.witnesses.extend(extra);
    o.exit = if o.witnesses.is_empty() { 0 } else { 1 };

    let mut s = String::new();
    for v in &verdicts {
        let mut line = format!(
            "{}: {} instances, {} violations",
            v.claim,
            v.instances_checked,
            v.violations.len()
        );
        if v.not_applicable > 0 {
            let _ = write!(line, ", {} not applicable", v.not_applicable);
        }
        if let Some(r) = v.integer_roots_found {
            let _ = write!(line, ", {r} integer roots");
        }
        let _ = writeln!(s, "{line}");
    }
    if let Some(p) = &pairs_json {
        let _ = writeln!(
            s,
            "pairs: {} instances, {} consistent, {} violations",
            p["instances"], p["consistent"], p["violations"]
        );
    }
    if let Some(e) = &eq_json {
        let _ = writeln!(
            s,
            "equations: {} instances, max residual {:.3e}, {} violations",
            e["instances"],
            e["max_residual"].as_f64().unwrap_or(f64::NAN),
            e["violations"]
        );
    }
    let _ = writeln!(
        s,
        "{}",
        if o.exit == 0 {
            "all audited claims held"
        } else {
            "violations found"
        }
    );
    o.summary = s;

    let mut md = String::from("# audit\n\n");
    if !verdicts.is_empty() {
        md.push_str(&report::verdicts_table(&verdicts));
        md.push('\n');
    }
    md.push_str(&sections);
    if !o.witnesses.is_empty() {
        md.push_str("## witnesses\n\n");
        md.push_str(&report::witness_list(&o.witnesses, 50));
    }
    o.markdown = Some(md);
    o.result = json!({
        "verdicts": verdicts,
        "pairs": pairs_json,
        "equations": eq_json,
    });
    o.elapsed_ms = start.elapsed().as_millis();
    Ok(o)
}

pub fn search_cmd(a: &SearchArgs, cfg: &FileConfig) -> CmdResult<Outcome> {
    let mode: Mode = merge(a.mode.clone(), cfg.get::<String>("mode"))?
        .map(|m| m.parse().map_err(fail))
        .transpose()?
        .unwrap_or(Mode::Triples);
    let variant = variant_of(&a.variant, cfg)?;
    let mut c = match mode {
        Mode::Triples => CampaignConfig::triples(51, vec![3, 5, 7]),
        Mode::Offsets => CampaignConfig::offsets(variant, 1, 51, vec![3, 5, 7]),
    };
    c.min = merge(a.min, cfg.get("min"))?.unwrap_or(c.min);
    c.max = merge(a.max, cfg.get("max"))?.unwrap_or(c.max);
    c.n_set = exponents_of(&a.n, cfg, &c.n_set)?;
    c.jobs = jobs_of(a.jobs, cfg)?;
    c.near_miss_threshold = merge(a.near_miss, cfg.get("near-miss"))?.unwrap_or(DEFAULT_NEAR_MISS_THRESHOLD);
    c.seed = merge(a.seed, cfg.get("seed"))?.unwrap_or(0);
    let format = merge(a.format, cfg.get_enum::<Format>("format"))?.unwrap_or(Format::Json);
    c.validate().map_err(fail)?;

    let settings = serde_json::to_value(&c).expect("serializable");
    let mut o = Outcome::new("search", settings);
    o.jobs = Some(c.jobs);
    let r = search::run(&c).map_err(fail)?;
    o.elapsed_ms = r.metadata.elapsed_ms;
    o.exit = if r.counterexamples.is_empty() { 0 } else { 1 };
    o.witnesses = r.all_witnesses();

    let mut s = String::new();
    match mode {
        Mode::Triples => {
            let _ = writeln!(
                s,
                "triple search over [{}, {}], n in {:?}: {} cells",
                c.min, c.max, c.n_set, r.cells_processed
            );
            let _ = writeln!(s, "counterexamples (n >= 3, non-trivial): {}", r.counterexamples.len());
            for t in &r.counterexamples {
                let _ = writeln!(s, "  {t}");
            }
            if !r.solutions.is_empty() {
                let _ = writeln!(s, "other exact solutions: {}", r.solutions.len());
                for t in r.solutions.iter().take(50) {
                    let tag = if t.is_pairwise_coprime() { " primitive" } else { "" };
                    let _ = writeln!(s, "  {t}{tag}");
                }
                if r.solutions.len() > 50 {
                    let _ = writeln!(s, "  ... {} more", r.solutions.len() - 50);
                }
                let _ = writeln!(
                    s,
                    "gcd checks on primitive n=2 solutions (surrogate): {} failures",
                    r.gcd_corollary_violations.len()
                );
            }
            let _ = writeln!(
                s,
                "near misses (|residual| <= {}): {}",
                c.near_miss_threshold,
                r.near_misses.len()
            );
        }
        Mode::Offsets => {
            let _ = writeln!(
                s,
                "offset sweep ({}) over [{}, {}], n in {:?}: {} cells",
                c.variant, c.min, c.max, c.n_set, r.cells_processed
            );
            let _ = writeln!(s, "integer-root instances: {}", r.integer_root_instances.len());
            let _ = writeln!(s, "counterexamples: {}", r.counterexamples.len());
            let _ = writeln!(
                s,
                "divisor cross-check: {} disagreements, {} incomplete",
                r.decider_disagreements.len(),
                r.divisor_incomplete
            );
            let _ = writeln!(s, "parity hooks: {} witnesses", r.witnesses.len());
        }
    }
    o.summary = s;
    let mut result = serde_json::to_value(&r).expect("serializable");
    if let Some(obj) = result.as_object_mut() {
        obj.remove("metadata");
        obj.remove("config");
    }
    o.result = result;
    if format == Format::Csv {
        o.csv = Some(r.to_csv());
    }
    Ok(o)
}

/// Witnesses from a report (`witnesses` array), a bare witness, or a list.
pub fn load_witnesses(path: &std::path::Path) -> CmdResult<Vec<Witness>> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| format!("malformed input: {e}"))?;
    let list = match v {
        Value::Object(ref o) if o.contains_key("witnesses") => o["witnesses"].clone(),
        Value::Object(_) => Value::Array(vec![v]),
        Value::Array(_) => v,
        _ => return Err("malformed input: expected a report or witness".into()),
    };
    serde_json::from_value(list).map_err(|e| format!("malformed witness: {e}"))
}

/// Replays every witness; 1 when any reproduces.
pub fn replay_cmd(path: &std::path::Path) -> CmdResult<u8> {
    let ws = load_witnesses(path)?;
    if ws.is_empty() {
        println!("no witnesses to replay");
        return Ok(0);
    }
    let mut reproduced = 0;
    for (i, w) in ws.iter().enumerate() {
        let ok = w.replay().map_err(fail)?;
        reproduced += ok as usize;
        println!(
            "[{i}] {}: {}",
            w.kind(),
            if ok { "reproduced" } else { "not reproduced" }
        );
    }
    println!("{reproduced} of {} witnesses reproduced", ws.len());
    Ok(if reproduced > 0 { 1 } else { 0 })
}
