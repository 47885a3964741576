//! Human-readable report text.

use std::fmt::Write;

use fusionring::{
    CheckEntry, CheckReport, CheckStatus, Diagnosis, FreenessViolation, FusionRing,
    LadderCertificate, StandardSubring, TerminalStatus, Verdict,
};

use crate::StabilizerEntry;

fn status(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "PASS",
        CheckStatus::Fail => "FAIL",
        CheckStatus::SkippedUnknown => "SKIP",
    }
}

fn entry_line(out: &mut String, indent: &str, c: &CheckEntry) {
    let _ = writeln!(
        out,
        "{indent}{:<4} {:<24} evaluated {:>5}  skipped {:>5}  failed {:>5}",
        status(c.status),
        c.name,
        c.evaluated,
        c.skipped,
        c.failed
    );
    if let Some(w) = &c.witness {
        let _ = writeln!(
            out,
            "{indent}     witness ({}): {} != {}",
            w.items.join(", "),
            w.lhs,
            w.rhs
        );
    }
}

pub fn check(
    ring: &FusionRing,
    axioms: &CheckReport,
    stabilizers: &[StabilizerEntry],
    violation: bool,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ring {} (rank {})", ring.name(), ring.rank());
    let _ = writeln!(out, "axioms:");
    for c in &axioms.checks {
        entry_line(&mut out, "  ", c);
    }
    let _ = writeln!(out, "stabilizer law:");
    for s in stabilizers {
        match (&s.report, &s.skipped) {
            (Some(report), _) => {
                let failed = report.has_failures();
                let _ = writeln!(
                    out,
                    "  {:<4} {}",
                    if failed { "FAIL" } else { "PASS" },
                    s.element
                );
                for c in report
                    .checks
                    .iter()
                    .filter(|c| c.status == CheckStatus::Fail)
                {
                    entry_line(&mut out, "    ", c);
                }
            }
            (None, reason) => {
                let _ = writeln!(
                    out,
                    "  SKIP {} ({})",
                    s.element,
                    reason.as_deref().unwrap_or("unknown")
                );
            }
        }
    }
    let _ = writeln!(
        out,
        "result: {}",
        if violation { "violations found" } else { "ok" }
    );
    out
}

pub fn verdict(ring: &FusionRing, v: &Verdict) -> String {
    let mut out = format!("ring {}\nverdict: {v}\n", ring.name());
    match v {
        Verdict::ConclusionII { certificate: c } => out.push_str(&certificate(c)),
        Verdict::Obstruction {
            diagnosis: Some(d), ..
        } => {
            let _ = writeln!(out, "diagnosis: {}", diagnosis(d));
        }
        _ => {}
    }
    out
}

fn terms(t: &[(String, i64)]) -> String {
    if t.is_empty() {
        return "0".to_string();
    }
    t.iter()
        .map(|(l, m)| {
            if *m == 1 {
                l.clone()
            } else {
                format!("{m}{l}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn certificate(c: &LadderCertificate) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "ladder from {} in {}: depth {}",
        c.x3, c.ring, c.depth_reached
    );
    for rel in &c.relations {
        let _ = writeln!(
            out,
            "  n={:<3} {} {} = {}",
            rel.n,
            rel.left,
            c.x3,
            terms(&rel.decomposition)
        );
    }
    for t in &c.tie_breaks {
        let _ = writeln!(
            out,
            "  tie at n={}: {} -> {}",
            t.n,
            t.candidates.join(", "),
            t.chosen
        );
    }
    match &c.terminal_status {
        TerminalStatus::TruncationReached { depth, cause } => {
            let _ = writeln!(out, "stopped at depth {depth}: {cause}");
        }
        TerminalStatus::FailureBranch { diagnosis: d } => {
            let _ = writeln!(out, "failure branch: {}", diagnosis(d));
        }
    }
    out
}

fn diagnosis(d: &Diagnosis) -> String {
    match d {
        Diagnosis::FrobeniusMismatch {
            n,
            forward,
            backward,
        } => {
            format!("reciprocity mismatch at n={n}: {forward} vs {backward}")
        }
        Diagnosis::NonBasicRemainder {
            n,
            minimal,
            remainder,
        } => {
            format!(
                "at n={n} the rest after {minimal} is {}, not one basic element",
                terms(remainder)
            )
        }
        Diagnosis::ChainBroken { n, chain, detail } => {
            format!("descending chain at n={n} ({}): {detail}", chain.join(", "))
        }
        Diagnosis::ChainTooLong { n, chain } => {
            format!("chain at n={n} too long: {}", chain.join(", "))
        }
        Diagnosis::DescentRelationViolated {
            n,
            t,
            expected,
            found,
        } => {
            format!(
                "at n={n}, t={t}: expected {expected}, found {}",
                terms(found)
            )
        }
        Diagnosis::ShortChainImpossible { n, k, chain } => {
            format!(
                "chain of length {k} < {n} is impossible ({})",
                chain.join(", ")
            )
        }
        Diagnosis::TerminalNotGrouplike { n, element } => {
            format!("chain end {element} at n={n} is not grouplike")
        }
        Diagnosis::GrouplikeOrderTwo { n, grouplike } => {
            format!("grouplike {grouplike} of order 2 found at n={n}")
        }
        Diagnosis::OrderTwoContradiction {
            n,
            grouplike,
            square,
        } => {
            format!("at n={n}, {grouplike}^2 = {} instead of 1", terms(square))
        }
        Diagnosis::TerminalDegreeBound { n, remainder } => {
            format!("non-basic remainder {} at n={n} > 1", terms(remainder))
        }
        Diagnosis::TerminalShape { detail } => format!("terminal configuration: {detail}"),
        Diagnosis::TerminalFreeness {
            stabilizer,
            inner,
            outer,
            violations,
        } => {
            let mut s = format!(
                "terminal configuration with stabilizer {{{}}}: subrings of dimension {} inside {}",
                stabilizer.join(", "),
                inner.hopf_dimension,
                outer.hopf_dimension
            );
            for v in violations {
                let _ = write!(
                    s,
                    "; freeness violated: {} does not divide {}",
                    v.inner_dimension, v.outer_dimension
                );
            }
            s
        }
    }
}

pub fn subrings(
    ring: &FusionRing,
    subrings: &[StandardSubring],
    violations: &[FreenessViolation],
) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "ring {}: {} dual-closed standard subring(s)",
        ring.name(),
        subrings.len()
    );
    for s in subrings {
        let _ = writeln!(
            out,
            "  dim {:>5}  {{{}}}",
            s.hopf_dimension,
            s.members.join(", ")
        );
    }
    if violations.is_empty() {
        let _ = writeln!(out, "freeness: ok");
    }
    for v in violations {
        let _ = writeln!(
            out,
            "freeness violation: ({}, {}) {{{}}} inside {{{}}}",
            v.inner_dimension,
            v.outer_dimension,
            v.inner.join(", "),
            v.outer.join(", ")
        );
    }
    out
}
