//! Markdown renderings for human readers. Machine output is plain serde JSON
//! of the result types themselves.

use std::fmt::Write;

use crate::roots::{PairClassification, PairModel};
use crate::search::{CampaignResult, Mode};
use crate::viete::{ParityVerdict, VieteReport};
use crate::witness::Witness;

fn witness_line(w: &Witness) -> String {
    format!(
        "- `{}`: `{}`",
        w.kind(),
        serde_json::to_string(w).expect("serializable")
    )
}

/// Witness list, truncated after `limit` entries.
pub fn witness_list(ws: &[Witness], limit: usize) -> String {
    let mut s = String::new();
    for w in ws.iter().take(limit) {
        let _ = writeln!(s, "{}", witness_line(w));
    }
    if ws.len() > limit {
        let _ = writeln!(s, "- ... {} more (see the JSON report)", ws.len() - limit);
    }
    s
}

pub fn verdicts_table(vs: &[ParityVerdict]) -> String {
    let mut s = String::from("| claim | instances | not applicable | integer roots | violations | grid |\n");
    s.push_str("|---|---:|---:|---:|---:|---|\n");
    for v in vs {
        let roots = v.integer_roots_found.map_or("-".to_string(), |r| r.to_string());
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} | {} |",
            v.claim,
            v.instances_checked,
            v.not_applicable,
            roots,
            v.violations.len(),
            v.grid
        );
    }
    s
}

pub fn pairs_markdown(label: &str, pc: &PairClassification) -> String {
    let mut s = format!(
        "### {label}\n\nverdict: **{:?}** (tolerance {:e})\n\n",
        pc.verdict, pc.tolerance
    );
    s.push_str("| roots | S | M | model |\n|---|---|---|---|\n");
    for e in &pc.pairing {
        let idx: Vec<String> = e.indices.iter().map(usize::to_string).collect();
        let show = |a: &Option<crate::roots::Approx>| {
            a.as_ref()
                .map_or("-".to_string(), |a| format!("{} + {}i", short(&a.re), short(&a.im)))
        };
        let model = match e.model {
            PairModel::QuadraticConjugate => "quadratic conjugate",
            PairModel::ComplexConjugate => "complex conjugate",
            PairModel::Unpaired => "unpaired",
        };
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} |",
            idx.join(", "),
            show(&e.sum),
            show(&e.product),
            model
        );
    }
    s
}

fn short(dec: &str) -> String {
    match dec.find('.') {
        Some(p) if dec.len() > p + 13 => dec[..p + 13].to_string(),
        _ => dec.to_string(),
    }
}

pub fn equations_table(reports: &[VieteReport]) -> String {
    let mut s =
        String::from("| pair | n | designated root | integer? | max residual | vieta rel. error | tail parity |\n");
    s.push_str("|---|---:|---|---|---:|---:|---|\n");
    for r in reports {
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {:.3e} | {:.3e} | {:?} |",
            r.pair,
            r.n,
            short(&r.gamma1.re),
            r.designation.is_integer,
            r.max_residual(),
            r.vieta_relative_error,
            r.tail_parity
        );
    }
    s
}

pub fn campaign_markdown(r: &CampaignResult) -> String {
    let mut s = String::new();
    let mode = match r.config.mode {
        Mode::Triples => "triple search",
        Mode::Offsets => "offset sweep",
    };
    let ns: Vec<String> = r.config.n_set.iter().map(u32::to_string).collect();
    let _ = writeln!(
        s,
        "## {mode}\n\nbounds [{}, {}], n in {{{}}}\n",
        r.config.min,
        r.config.max,
        ns.join(",")
    );
    let rows = [
        ("cells processed", r.cells_processed.to_string()),
        ("cells predicted", r.predicted_cells.to_string()),
        ("counterexamples (n >= 3)", r.counterexamples.len().to_string()),
        ("other exact solutions", r.solutions.len().to_string()),
        ("near misses", r.near_misses.len().to_string()),
        ("integer-root instances", r.integer_root_instances.len().to_string()),
        ("decider disagreements", r.decider_disagreements.len().to_string()),
        ("divisor check incomplete", r.divisor_incomplete.to_string()),
        (
            "gcd checks failed (n = 2 surrogate)",
            r.gcd_corollary_violations.len().to_string(),
        ),
    ];
    s.push_str("| quantity | value |\n|---|---:|\n");
    for (k, v) in rows {
        let _ = writeln!(s, "| {k} | {v} |");
    }
    let ws = r.all_witnesses();
    if !ws.is_empty() {
        s.push_str("\n### witnesses\n\n");
        s.push_str(&witness_list(&ws, 50));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{search_triples, CampaignConfig};

    #[test]
    fn campaign_table_lists_counts() {
        let r = search_triples(&CampaignConfig::triples(20, vec![2])).unwrap();
        let md = campaign_markdown(&r);
        assert!(md.contains("| counterexamples (n >= 3) | 0 |"));
        assert!(md.contains(&format!("| cells processed | {} |", r.cells_processed)));
    }

    #[test]
    fn decimal_shortening() {
        assert_eq!(short("1.4912682500000000000001"), "1.491268250000");
        assert_eq!(short("2"), "2");
    }
}
