//! Line-oriented text format for fusion rings.
//!
//! ```text
//! # cyclic group of order 3
//! ring Z3
//! partial false
//! basis 1 1 1
//! basis g1 1 g2
//! basis g2 1 g1
//! unit 1
//! prod g1 g1 : g2 1
//! prod g1 g2 : 1 1
//! prod g2 g1 : 1 1
//! prod g2 g2 : g1 1
//! ```
//!
//! Pairs involving the unit may be omitted and follow the unit law. Other
//! omitted pairs are unknown in a `partial true` ring and an error otherwise.
//! [`write_spec`] emits canonical order, so writing a parsed file reproduces
//! the writer's output byte for byte.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::chartable::tokenize;
use crate::ring::{Entry, FusionRing, ProductLine, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{}{source}", line_prefix(.line))]
    Semantic {
        line: Option<usize>,
        source: RingError,
    },
}

fn line_prefix(line: &Option<usize>) -> String {
    line.map(|l| format!("line {l}: ")).unwrap_or_default()
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> SpecError {
    SpecError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_spec(text: &str) -> Result<FusionRing, SpecError> {
    let mut name: Option<String> = None;
    let mut partial: Option<bool> = None;
    let mut truncation: Option<u64> = None;
    let mut unit: Option<String> = None;
    let mut basis_lines: HashMap<String, usize> = HashMap::new();
    let mut prod_lines: HashMap<(String, String), usize> = HashMap::new();
    let mut basis_decls: Vec<(String, u64, String)> = Vec::new();
    let mut products: Vec<ProductLine> = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        let (head, tail) = match content.find(':') {
            Some(p) => (&content[..p], Some((p, &content[p + 1..]))),
            None => (content, None),
        };
        let tokens = tokenize(head);
        let Some(&(col, keyword)) = tokens.first() else {
            if let Some((p, _)) = tail {
                return Err(syntax(line, p + 1, "unexpected `:`"));
            }
            continue;
        };
        if keyword != "prod" {
            if let Some((p, _)) = tail {
                return Err(syntax(line, p + 1, "unexpected `:`"));
            }
        }
        let end = head.trim_end().len() + 1;
        let arity = |n: usize| -> Result<(), SpecError> {
            if tokens.len() < n + 1 {
                return Err(syntax(
                    line,
                    end,
                    format!("`{keyword}` expects {n} argument(s)"),
                ));
            }
            if let Some(&(c, t)) = tokens.get(n + 1) {
                return Err(syntax(line, c, format!("unexpected token `{t}`")));
            }
            Ok(())
        };
        let once = |present: bool| -> Result<(), SpecError> {
            if present {
                Err(syntax(line, col, format!("duplicate `{keyword}` line")))
            } else {
                Ok(())
            }
        };
        match keyword {
            "ring" => {
                arity(1)?;
                once(name.is_some())?;
                name = Some(tokens[1].1.to_string());
            }
            "partial" => {
                arity(1)?;
                once(partial.is_some())?;
                partial = Some(match tokens[1].1 {
                    "true" => true,
                    "false" => false,
                    other => {
                        return Err(syntax(
                            line,
                            tokens[1].0,
                            format!("expected true or false, found `{other}`"),
                        ))
                    }
                });
            }
            "truncation" => {
                arity(1)?;
                once(truncation.is_some())?;
                let (c, t) = tokens[1];
                let bound: u64 = t.parse().ok().filter(|b: &u64| b % 2 == 1).ok_or_else(|| {
                    syntax(
                        line,
                        c,
                        format!("expected an odd positive integer, found `{t}`"),
                    )
                })?;
                truncation = Some(bound);
            }
            "basis" => {
                arity(3)?;
                let (c, t) = tokens[2];
                let degree: u64 = t.parse().ok().filter(|d| *d > 0).ok_or_else(|| {
                    syntax(line, c, format!("expected a positive degree, found `{t}`"))
                })?;
                basis_lines.entry(tokens[1].1.to_string()).or_insert(line);
                basis_decls.push((tokens[1].1.to_string(), degree, tokens[3].1.to_string()));
            }
            "unit" => {
                arity(1)?;
                once(unit.is_some())?;
                unit = Some(tokens[1].1.to_string());
            }
            "prod" => {
                let Some((colon, rhs)) = tail else {
                    return Err(syntax(line, end, "`prod` expects `<a> <b> : ...`"));
                };
                if tokens.len() != 3 {
                    let c = tokens.get(3).map(|t| t.0).unwrap_or(colon + 1);
                    return Err(syntax(
                        line,
                        c,
                        "`prod` expects exactly two factors before `:`",
                    ));
                }
                let key = (tokens[1].1.to_string(), tokens[2].1.to_string());
                if let Some(first) = prod_lines.get(&key) {
                    return Err(SpecError::Semantic {
                        line: Some(line),
                        source: RingError::DuplicateProduct {
                            left: key.0.clone(),
                            right: format!("{} (first declared on line {first})", key.1),
                        },
                    });
                }
                prod_lines.insert(key.clone(), line);
                let terms = parse_terms(rhs, line, colon + 2)?;
                products.push((key.0, key.1, terms));
            }
            other => return Err(syntax(line, col, format!("unknown directive `{other}`"))),
        }
    }

    let name = name.ok_or_else(|| syntax(1, 1, "missing `ring <name>` line"))?;
    let mut builder = FusionRing::builder(name);
    for (label, degree, dual) in basis_decls {
        builder.push_basis(label, degree, dual);
    }
    for (a, b, terms) in products {
        builder.push_product(a, b, terms);
    }
    builder.set_partial(partial.unwrap_or(false));
    builder.set_truncation(truncation);
    if let Some(u) = unit {
        builder.set_unit(u);
    }

    let locate = |err: RingError| {
        let line = match &err {
            RingError::DanglingDual { label, .. }
            | RingError::DualNotInvolution(label)
            | RingError::DualDegreeMismatch { label, .. }
            | RingError::DuplicateLabel(label)
            | RingError::InvalidLabel(label)
            | RingError::ZeroDegree(label) => basis_lines.get(label).copied(),
            RingError::DegreeSumMismatch { left, right, .. }
            | RingError::DuplicateProduct { left, right } => {
                prod_lines.get(&(left.clone(), right.clone())).copied()
            }
            _ => None,
        };
        SpecError::Semantic { line, source: err }
    };
    let ring = builder.build().map_err(locate)?;
    ring.validate_degree_sums().map_err(locate)?;
    Ok(ring)
}

fn parse_terms(rhs: &str, line: usize, offset: usize) -> Result<Vec<(String, u64)>, SpecError> {
    let mut out = Vec::new();
    if rhs.trim().is_empty() {
        return Ok(out);
    }
    let mut base = offset;
    for piece in rhs.split(',') {
        let toks = tokenize(piece);
        match toks.as_slice() {
            [(_, label), (c, mult)] => {
                let n: u64 = mult.parse().ok().filter(|n| *n > 0).ok_or_else(|| {
                    syntax(
                        line,
                        base + c - 1,
                        format!("expected a positive multiplicity, found `{mult}`"),
                    )
                })?;
                out.push((label.to_string(), n));
            }
            [] => return Err(syntax(line, base, "empty term")),
            [(c, _)] => return Err(syntax(line, base + c - 1, "term needs `<label> <mult>`")),
            [_, _, (c, t), ..] => {
                return Err(syntax(
                    line,
                    base + c - 1,
                    format!("unexpected token `{t}` (missing comma?)"),
                ))
            }
        }
        base += piece.len() + 1;
    }
    Ok(out)
}

/// Canonical text for `ring`. Unknown pairs are omitted (and the ring is
/// marked partial); unit pairs are written only when they break the unit law.
pub fn write_spec(ring: &FusionRing) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ring {}", ring.name());
    let _ = writeln!(out, "partial {}", ring.is_partial());
    if let Some(t) = ring.truncation() {
        let _ = writeln!(out, "truncation {t}");
    }
    for b in ring.basis() {
        let _ = writeln!(out, "basis {} {} {}", b.label, b.degree, b.dual_label);
    }
    let _ = writeln!(out, "unit {}", ring.label(ring.unit()));
    let u = ring.unit();
    for a in 0..ring.rank() {
        for b in 0..ring.rank() {
            let Entry::Known(row) = ring.entry(a, b) else {
                continue;
            };
            if a == u || b == u {
                let other = if a == u { b } else { a };
                if row.as_slice() == [(other, 1)] {
                    continue;
                }
            }
            let terms: Vec<String> = row
                .iter()
                .map(|&(c, n)| format!("{} {n}", ring.label(c)))
                .collect();
            let _ = writeln!(
                out,
                "prod {} {} : {}",
                ring.label(a),
                ring.label(b),
                terms.join(", ")
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::check_axioms;
    use crate::oracles::{cyclic_group_ring, so3_truncated};

    const Z3: &str = "\
ring Z3
basis 1 1 1
basis a 1 b
basis b 1 a
unit 1
prod 1 1 : 1 1
prod 1 a : a 1
prod 1 b : b 1
prod a 1 : a 1
prod a a : b 1
prod a b : 1 1
prod b 1 : b 1
prod b a : 1 1
prod b b : a 1
";

    #[test]
    fn parses_z3() {
        let ring = parse_spec(Z3).unwrap();
        assert_eq!(ring.rank(), 3);
        assert!(check_axioms(&ring).all_pass_no_skips());
    }

    #[test]
    fn dangling_dual() {
        let err = parse_spec("ring r\nbasis 1 1 1\nbasis a 3 b\nunit 1\n").unwrap_err();
        assert!(matches!(
            err,
            SpecError::Semantic {
                line: Some(3),
                source: RingError::DanglingDual { .. }
            }
        ));
    }

    #[test]
    fn duplicate_product_line() {
        let text = "ring r\npartial true\nbasis 1 1 1\nbasis a 3 a\nunit 1\nprod a a : 1 1, a 1\nprod a a : 1 1\n";
        let err = parse_spec(text).unwrap_err();
        assert!(matches!(
            err,
            SpecError::Semantic {
                line: Some(7),
                source: RingError::DuplicateProduct { .. }
            }
        ));
    }

    #[test]
    fn degree_sum_mismatch() {
        let text = "ring r\nbasis 1 1 1\nbasis a 1 a\nunit 1\nprod a a : 1 2\n";
        let err = parse_spec(text).unwrap_err();
        assert!(matches!(
            err,
            SpecError::Semantic {
                line: Some(5),
                source: RingError::DegreeSumMismatch { .. }
            }
        ));
    }

    #[test]
    fn missing_pair_in_complete_ring() {
        let text = "ring r\nbasis 1 1 1\nbasis a 1 a\nunit 1\n";
        let err = parse_spec(text).unwrap_err();
        assert!(matches!(
            err,
            SpecError::Semantic {
                source: RingError::MissingProduct { .. },
                ..
            }
        ));
    }

    #[test]
    fn syntax_positions() {
        let err = parse_spec("ring r\nbasis 1 x 1\n").unwrap_err();
        assert_eq!(
            err,
            SpecError::Syntax {
                line: 2,
                column: 9,
                message: "expected a positive degree, found `x`".into()
            }
        );
        let err = parse_spec("ring r\nfrob a\n").unwrap_err();
        assert!(matches!(
            err,
            SpecError::Syntax {
                line: 2,
                column: 1,
                ..
            }
        ));
        let err = parse_spec("ring r\nprod a b : c 1 d 1\n").unwrap_err();
        assert!(
            matches!(
                err,
                SpecError::Syntax {
                    line: 2,
                    column: 16,
                    ..
                }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn round_trip_partial_ring() {
        let ring = so3_truncated(9);
        let text = write_spec(&ring);
        let back = parse_spec(&text).unwrap();
        assert_eq!(back, ring);
        assert_eq!(write_spec(&back), text);
    }

    #[test]
    fn writer_omits_unit_rows() {
        let text = write_spec(&cyclic_group_ring(2));
        assert_eq!(
            text,
            "ring Z2\npartial false\nbasis 1 1 1\nbasis g1 1 g1\nunit 1\nprod g1 g1 : 1 1\n"
        );
    }
}
