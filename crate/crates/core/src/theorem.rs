//! Procedures for rings with a basic element of degree 3 and only odd
//! degrees: the grouplike / `u + v` dichotomy for `x x*`, the self-dual
//! chain, the triple decomposition check, the ladder construction and the
//! overall verdict.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::axioms::check_axioms;
use crate::ring::{FusionRing, RingElement, RingError};
use crate::subring::{
    closure, freeness_obstructions, group_on, grouplike_group, stabilizer_group, Closure,
    FreenessViolation, StandardSubring, SubringError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Subring(#[from] SubringError),
    #[error("`{label}` has degree {degree}, expected 3")]
    NotDegreeThree { label: String, degree: u64 },
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
}

impl TheoremError {
    /// True when the error only reflects a missing structure constant.
    pub fn is_unknown_product(&self) -> bool {
        matches!(
            self,
            TheoremError::Ring(RingError::UnknownProduct { .. })
                | TheoremError::Subring(SubringError::Ring(RingError::UnknownProduct { .. }))
        )
    }
}

type Result<T> = std::result::Result<T, TheoremError>;

fn require_degree_three(ring: &FusionRing, x: usize) -> Result<()> {
    match ring.degree_of(x) {
        3 => Ok(()),
        degree => Err(TheoremError::NotDegreeThree {
            label: ring.label(x).to_string(),
            degree,
        }),
    }
}

fn terms(ring: &FusionRing, z: &RingElement) -> Vec<(String, i64)> {
    ring.decompose(z)
}

/// Outcome of analysing `x x*` for a degree-3 basic element `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Lemma32Result {
    /// A nontrivial grouplike of order 2 or 3 exists.
    GrouplikeFound { label: String, order: u64 },
    /// `x x* = 1 + u + v` with `|u| = 3`, `|v| = 5`.
    Uv { u: String, v: String },
    /// The decomposition of `x x*` is inconsistent with the hypotheses.
    Obstruction { description: String },
}

/// Classifies `x x*` for a basic element `x` of degree 3.
pub fn lemma32_cases(ring: &FusionRing, x: usize) -> Result<Lemma32Result> {
    require_degree_three(ring, x)?;
    if let Some(e) = ring.has_even_degree() {
        return Ok(Lemma32Result::Obstruction {
            description: format!(
                "basic element {} has even degree {}",
                ring.label(e),
                ring.degree_of(e)
            ),
        });
    }
    let xx = ring.product(x, ring.dual_index(x))?;
    let obstruction = |description: String| Ok(Lemma32Result::Obstruction { description });
    let unit_mult = xx.coefficient(ring.unit());
    if unit_mult != 1 {
        return obstruction(format!("unit occurs {unit_mult} times in x x*"));
    }
    // grouplike components counted with multiplicity toward the degree 8
    let mut count = 0i64;
    let mut repeated = None;
    let mut members = vec![ring.unit()];
    for g in ring.grouplikes().into_iter().filter(|&g| g != ring.unit()) {
        let c = xx.coefficient(g);
        if c > 0 {
            count += c;
            members.push(g);
        }
        if c > 1 {
            repeated.get_or_insert((g, c));
        }
    }
    match count {
        1 | 2 | 3 | 5 | 8 if repeated.is_some() => {
            let (g, c) = repeated.expect("checked");
            obstruction(format!(
                "grouplike {} occurs {c} times in x x*, but g x = x forces multiplicity 1",
                ring.label(g)
            ))
        }
        0 => {
            let rest: Vec<(usize, i64)> = xx.terms().filter(|&(i, _)| i != ring.unit()).collect();
            let shape: Vec<(u64, i64)> = rest.iter().map(|&(i, c)| (ring.degree_of(i), c)).collect();
            let (u, v) = match shape.as_slice() {
                [(3, 1), (5, 1)] => (rest[0].0, rest[1].0),
                [(5, 1), (3, 1)] => (rest[1].0, rest[0].0),
                _ => {
                    return obstruction(format!(
                        "x x* - 1 = {} is not a sum of basic elements of degrees 3 and 5",
                        ring.display(&RingElement::from_terms(rest))
                    ))
                }
            };
            Ok(Lemma32Result::Uv {
                u: ring.label(u).to_string(),
                v: ring.label(v).to_string(),
            })
        }
        1 | 2 | 3 | 5 | 8 => match group_on(ring, members) {
            Ok(group) => match group.element_of_order_two_or_three() {
                Some((g, order)) => Ok(Lemma32Result::GrouplikeFound {
                    label: ring.label(g).to_string(),
                    order,
                }),
                None => obstruction(format!(
                    "grouplikes in x x* form a group of order {} without elements of order 2 or 3",
                    group.order()
                )),
            },
            Err(SubringError::Ring(e)) => Err(e.into()),
            Err(e) => obstruction(format!("grouplikes in x x* do not form a group: {e}")),
        },
        n => obstruction(format!(
            "{n} grouplike components leave degree {} in x x*, which odd degrees of at least 3 cannot fill",
            8 - n
        )),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Lemma33Result {
    GrouplikeFound {
        label: String,
        order: u64,
    },
    /// A self-dual degree-3 element with `x^2 = 1 + x + x5`.
    SelfDual {
        x3: String,
        x5: String,
        chain_length: usize,
    },
    ChainFailure {
        trace: Vec<String>,
        reason: String,
    },
}

/// Follows `x -> u` where `x x* = 1 + u + v` until `u` repeats the current
/// element (a self-dual `x` with `x^2 = 1 + x + v`).
pub fn lemma33_selfdual_chain(ring: &FusionRing, x: usize) -> Result<Lemma33Result> {
    require_degree_three(ring, x)?;
    let bound = ring.basis().iter().filter(|b| b.degree == 3).count();
    let mut trace = vec![x];
    let mut current = x;
    let labels = |t: &[usize]| {
        t.iter()
            .map(|&i| ring.label(i).to_string())
            .collect::<Vec<_>>()
    };
    loop {
        match lemma32_cases(ring, current)? {
            Lemma32Result::GrouplikeFound { label, order } => {
                return Ok(Lemma33Result::GrouplikeFound { label, order })
            }
            Lemma32Result::Obstruction { description } => {
                return Ok(Lemma33Result::ChainFailure {
                    trace: labels(&trace),
                    reason: description,
                })
            }
            Lemma32Result::Uv { u, v } => {
                let ui = ring.index_of(&u)?;
                let vi = ring.index_of(&v)?;
                if ring.dual_index(ui) != ui || ring.dual_index(vi) != vi {
                    return Ok(Lemma33Result::ChainFailure {
                        trace: labels(&trace),
                        reason: format!(
                            "{} = 1 + {u} + {v} with a non-self-dual component",
                            product_name(ring, current)
                        ),
                    });
                }
                if ui == current {
                    return Ok(Lemma33Result::SelfDual {
                        x3: u,
                        x5: v,
                        chain_length: trace.len() - 1,
                    });
                }
                if trace.contains(&ui) {
                    trace.push(ui);
                    return Ok(Lemma33Result::ChainFailure {
                        trace: labels(&trace),
                        reason: "chain revisits an element".to_string(),
                    });
                }
                trace.push(ui);
                if trace.len() > bound + 1 {
                    return Ok(Lemma33Result::ChainFailure {
                        trace: labels(&trace),
                        reason: "chain longer than the number of degree-3 elements".to_string(),
                    });
                }
                current = ui;
            }
        }
    }
}

fn product_name(ring: &FusionRing, x: usize) -> String {
    format!("{} {}", ring.label(x), ring.label(ring.dual_index(x)))
}

/// Result of [`validate_triple`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum TripleOutcome {
    /// Every decomposition `a x3 = a' + v + c = u + b + c` with `c != 0` has
    /// `v = b` and `u = a'`; `c` is the common remainder.
    Forced {
        c: Vec<(String, i64)>,
        decompositions: usize,
    },
    /// A decomposition with `v != b` or `u != a'`.
    Violation {
        c: Vec<(String, i64)>,
        u: Vec<(String, i64)>,
        v: Vec<(String, i64)>,
    },
}

const TRIPLE_SEARCH_LIMIT: u64 = 1_000_000;

/// Checks that `a x3` splits as `a' + b + c` in only one way, for basic `a`,
/// `b` with `|a| = |a'| < |b|` and `a'` a nonnegative element.
///
/// All candidate remainders `c` (nonzero, with `a x3 - b - c` and
/// `a x3 - a' - c` nonnegative) are enumerated.
pub fn validate_triple(
    ring: &FusionRing,
    x3: usize,
    a: usize,
    aprime: &RingElement,
    b: usize,
) -> Result<TripleOutcome> {
    require_degree_three(ring, x3)?;
    let unmet = |m: String| Err(TheoremError::PreconditionUnmet(m));
    if let Some(e) = ring.has_even_degree() {
        return unmet(format!("{} has even degree", ring.label(e)));
    }
    if !aprime.is_nonnegative() || aprime.is_zero() {
        return unmet("a' must be a nonzero nonnegative element".to_string());
    }
    let deg_a = ring.degree_of(a) as i64;
    if ring.degree(aprime)? != deg_a || deg_a >= ring.degree_of(b) as i64 {
        return unmet("degrees must satisfy |a| = |a'| < |b|".to_string());
    }
    let prod = ring.product(a, x3)?;
    let minus_b = prod.checked_sub(&RingElement::basic(b))?;
    let minus_a = prod.checked_sub(aprime)?;
    if !minus_b.is_nonnegative() || !minus_a.is_nonnegative() {
        return unmet(format!(
            "{} does not contain both a' and b",
            ring.display(&prod)
        ));
    }
    let bounds: Vec<(usize, i64)> = minus_b
        .terms()
        .map(|(i, c)| (i, c.min(minus_a.coefficient(i))))
        .filter(|&(_, c)| c > 0)
        .collect();
    let size = bounds
        .iter()
        .try_fold(1u64, |acc, &(_, c)| acc.checked_mul(c as u64 + 1));
    if size.is_none_or(|s| s > TRIPLE_SEARCH_LIMIT) {
        return unmet("too many candidate decompositions".to_string());
    }

    let mut counts = vec![0i64; bounds.len()];
    let mut found = 0usize;
    loop {
        // odometer increment; the all-zero state is skipped
        let mut pos = 0;
        while pos < counts.len() && counts[pos] == bounds[pos].1 {
            counts[pos] = 0;
            pos += 1;
        }
        if pos == counts.len() {
            break;
        }
        counts[pos] += 1;
        let c = RingElement::from_terms(bounds.iter().zip(&counts).map(|(&(i, _), &k)| (i, k)));
        let u = minus_b.checked_sub(&c)?;
        let v = minus_a.checked_sub(&c)?;
        if v != RingElement::basic(b) || &u != aprime {
            return Ok(TripleOutcome::Violation {
                c: terms(ring, &c),
                u: terms(ring, &u),
                v: terms(ring, &v),
            });
        }
        found += 1;
    }
    if found == 0 {
        return unmet("no decomposition with nonzero remainder".to_string());
    }
    let c = minus_a.checked_sub(&RingElement::basic(b))?;
    Ok(TripleOutcome::Forced {
        c: terms(ring, &c),
        decompositions: found,
    })
}

/// One relation `x_{2n+1} x3 = x_{2n-1} + x'_{2n+1} + x_{2n+3}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LadderRelation {
    pub n: usize,
    pub left: String,
    pub decomposition: Vec<(String, i64)>,
}

/// Several components of minimal degree; the canonically first was taken.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TieBreak {
    pub n: usize,
    pub candidates: Vec<String>,
    pub chosen: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum Diagnosis {
    /// `m(x_{2n+1}, x_{2n+3} x3)` differs from 1.
    FrobeniusMismatch {
        n: usize,
        forward: i64,
        backward: i64,
    },
    /// The minimal component has the right degree but the rest is not a
    /// single basic element of the next degree.
    NonBasicRemainder {
        n: usize,
        minimal: String,
        remainder: Vec<(String, i64)>,
    },
    /// The descending chain does not behave as the step requires.
    ChainBroken {
        n: usize,
        chain: Vec<String>,
        detail: String,
    },
    ChainTooLong {
        n: usize,
        chain: Vec<String>,
    },
    /// `y_{k-t} = y_k x_{2t+1}` fails.
    DescentRelationViolated {
        n: usize,
        t: usize,
        expected: String,
        found: Vec<(String, i64)>,
    },
    /// A chain shorter than the ladder height has no consistent degrees.
    ShortChainImpossible {
        n: usize,
        k: usize,
        chain: Vec<String>,
    },
    TerminalNotGrouplike {
        n: usize,
        element: String,
    },
    /// `x_{2n+3} x3` contains `x_{2n+1} + g x_{2n+3} + z` with `z` basic:
    /// the grouplike `g` has order 2.
    GrouplikeOrderTwo {
        n: usize,
        grouplike: String,
    },
    OrderTwoContradiction {
        n: usize,
        grouplike: String,
        square: Vec<(String, i64)>,
    },
    /// A non-basic remainder is only possible at the bottom of the ladder.
    TerminalDegreeBound {
        n: usize,
        remainder: Vec<(String, i64)>,
    },
    TerminalShape {
        detail: String,
    },
    /// Bottom configuration: the stabilizer `V` of `x5` yields nested
    /// subrings `V + x5` inside `V + x3 + x5` that violate freeness.
    TerminalFreeness {
        stabilizer: Vec<String>,
        inner: StandardSubring,
        outer: StandardSubring,
        violations: Vec<FreenessViolation>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TerminalStatus {
    /// Construction stopped at an unknown product or the depth limit.
    TruncationReached {
        depth: usize,
        cause: String,
    },
    FailureBranch {
        diagnosis: Diagnosis,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LadderCertificate {
    pub ring: String,
    pub x3: String,
    /// `x_family[i]` has degree `2i + 1`; entry 0 is the unit.
    pub x_family: Vec<String>,
    /// `xprime_family[i]` has degree `2i + 3`.
    pub xprime_family: Vec<String>,
    pub depth_reached: usize,
    pub relations: Vec<LadderRelation>,
    pub tie_breaks: Vec<TieBreak>,
    pub terminal_status: TerminalStatus,
}

impl LadderCertificate {
    /// Recomputes every recorded relation against `ring`.
    pub fn verify(&self, ring: &FusionRing) -> std::result::Result<(), String> {
        let idx = |l: &str| ring.index_of(l).map_err(|e| e.to_string());
        let d = self.depth_reached;
        if self.x_family.len() != d + 2
            || self.xprime_family.len() != d
            || self.relations.len() != d
        {
            return Err("family lengths do not match the depth".to_string());
        }
        let xs = self
            .x_family
            .iter()
            .map(|l| idx(l))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let xps = self
            .xprime_family
            .iter()
            .map(|l| idx(l))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let x3 = idx(&self.x3)?;
        if xs[0] != ring.unit() {
            return Err("x_family must start at the unit".to_string());
        }
        for (i, &x) in xs.iter().enumerate() {
            if ring.degree_of(x) != 2 * i as u64 + 1 {
                return Err(format!(
                    "{} has degree {}",
                    ring.label(x),
                    ring.degree_of(x)
                ));
            }
        }
        for (i, &x) in xps.iter().enumerate() {
            if ring.degree_of(x) != 2 * i as u64 + 3 {
                return Err(format!(
                    "{} has degree {}",
                    ring.label(x),
                    ring.degree_of(x)
                ));
            }
        }
        for (k, rel) in self.relations.iter().enumerate() {
            let n = k + 1;
            if rel.n != n || rel.left != ring.label(xs[n]) {
                return Err(format!("relation {k} is out of order"));
            }
            let actual = ring.product(xs[n], x3).map_err(|e| e.to_string())?;
            let expected =
                RingElement::from_terms([(xs[n - 1], 1), (xps[n - 1], 1), (xs[n + 1], 1)]);
            if actual != expected || ring.decompose(&actual) != rel.decomposition {
                return Err(format!(
                    "{} {} = {}, certificate expects {}",
                    ring.label(xs[n]),
                    self.x3,
                    ring.display(&actual),
                    ring.display(&expected)
                ));
            }
        }
        Ok(())
    }
}

/// Minimal-degree components of `z` in canonical order.
fn minimal_components(ring: &FusionRing, z: &RingElement) -> Vec<usize> {
    let min = z.support().map(|i| ring.degree_of(i)).min();
    z.support()
        .filter(|&i| Some(ring.degree_of(i)) == min)
        .collect()
}

enum Step<T> {
    Done(T),
    Unknown(String),
}

fn known<T>(r: std::result::Result<T, RingError>) -> Result<Step<T>> {
    match r {
        Ok(v) => Ok(Step::Done(v)),
        Err(e @ RingError::UnknownProduct { .. }) => Ok(Step::Unknown(e.to_string())),
        Err(e) => Err(e.into()),
    }
}

macro_rules! need {
    ($e:expr, $on_unknown:expr) => {
        match known($e)? {
            Step::Done(v) => v,
            Step::Unknown(cause) => return Ok($on_unknown(cause)),
        }
    };
}

/// Builds the ladder `x_1 = 1, x3, x5, ..` from a self-dual `x3` with
/// `x3^2 = 1 + x3 + x5`, until an unknown product, `max_depth` relations,
/// or a failure branch.
pub fn ladder_build(ring: &FusionRing, x3: usize, max_depth: usize) -> Result<LadderCertificate> {
    require_degree_three(ring, x3)?;
    let unmet = |m: String| Err(TheoremError::PreconditionUnmet(m));
    if let Some(e) = ring.has_even_degree() {
        return unmet(format!("{} has even degree", ring.label(e)));
    }
    if ring.dual_index(x3) != x3 {
        return unmet(format!("{} is not self-dual", ring.label(x3)));
    }
    if max_depth == 0 {
        return unmet("depth must be at least 1".to_string());
    }
    let mut cert = LadderCertificate {
        ring: ring.name().to_string(),
        x3: ring.label(x3).to_string(),
        x_family: vec![
            ring.label(ring.unit()).to_string(),
            ring.label(x3).to_string(),
        ],
        xprime_family: Vec::new(),
        depth_reached: 0,
        relations: Vec::new(),
        tie_breaks: Vec::new(),
        terminal_status: TerminalStatus::TruncationReached {
            depth: 0,
            cause: String::new(),
        },
    };
    let square = match known(ring.product(x3, x3))? {
        Step::Done(p) => p,
        Step::Unknown(cause) => {
            cert.terminal_status = TerminalStatus::TruncationReached { depth: 0, cause };
            return Ok(cert);
        }
    };
    let x5 = square
        .checked_sub(&RingElement::from_terms([(ring.unit(), 1), (x3, 1)]))?
        .as_basic()
        .filter(|&v| ring.degree_of(v) == 5);
    let Some(x5) = x5 else {
        return unmet(format!(
            "{}^2 = {} is not 1 + {} + x5",
            ring.label(x3),
            ring.display(&square),
            ring.label(x3)
        ));
    };
    let mut xs = vec![ring.unit(), x3, x5];
    let mut xps = vec![x3];
    cert.x_family.push(ring.label(x5).to_string());
    cert.xprime_family.push(ring.label(x3).to_string());
    cert.relations.push(LadderRelation {
        n: 1,
        left: ring.label(x3).to_string(),
        decomposition: ring.decompose(&square),
    });

    let status = extend_ladder(ring, x3, max_depth, &mut xs, &mut xps, &mut cert)?;
    cert.depth_reached = cert.relations.len();
    cert.terminal_status = status;
    Ok(cert)
}

fn extend_ladder(
    ring: &FusionRing,
    x3: usize,
    max_depth: usize,
    xs: &mut Vec<usize>,
    xps: &mut Vec<usize>,
    cert: &mut LadderCertificate,
) -> Result<TerminalStatus> {
    loop {
        let n = cert.relations.len();
        let truncated = |cause: String| TerminalStatus::TruncationReached { depth: n, cause };
        if n >= max_depth {
            return Ok(truncated(format!("depth limit {max_depth}")));
        }
        let top = xs[n + 1];
        let prev = xs[n];
        let p = need!(ring.product(top, x3), truncated);
        let forward = p.coefficient(prev);
        let backward = ring.product(prev, x3)?.coefficient(top);
        if forward != 1 || backward != 1 {
            return Ok(failure(Diagnosis::FrobeniusMismatch {
                n,
                forward,
                backward,
            }));
        }
        let rest = p.checked_sub(&RingElement::basic(prev))?;
        let mins = minimal_components(ring, &rest);
        let Some(&y0) = mins.first() else {
            return Ok(failure(Diagnosis::ChainBroken {
                n,
                chain: Vec::new(),
                detail: "product has no component besides the previous rung".to_string(),
            }));
        };
        if mins.len() > 1 {
            cert.tie_breaks.push(TieBreak {
                n,
                candidates: mins.iter().map(|&i| ring.label(i).to_string()).collect(),
                chosen: ring.label(y0).to_string(),
            });
        }
        let want = 2 * n as u64 + 3;
        if ring.degree_of(y0) >= want {
            let z0 = rest.checked_sub(&RingElement::basic(y0))?;
            match z0.as_basic() {
                Some(z) if ring.degree_of(y0) == want && ring.degree_of(z) == want + 2 => {
                    xps.push(y0);
                    xs.push(z);
                    cert.xprime_family.push(ring.label(y0).to_string());
                    cert.x_family.push(ring.label(z).to_string());
                    cert.relations.push(LadderRelation {
                        n: n + 1,
                        left: ring.label(top).to_string(),
                        decomposition: ring.decompose(&p),
                    });
                }
                _ => {
                    return Ok(failure(Diagnosis::NonBasicRemainder {
                        n,
                        minimal: ring.label(y0).to_string(),
                        remainder: ring.decompose(&z0),
                    }))
                }
            }
        } else {
            return diagnose_chain(ring, x3, xs, n, &p, y0);
        }
    }
}

fn failure(diagnosis: Diagnosis) -> TerminalStatus {
    TerminalStatus::FailureBranch { diagnosis }
}

/// Follows the descending chain `y_0, y_1, ..` with `y_{i-1} x3 ⊇ y_{i-2}`
/// and minimal components, then applies the degree and freeness arguments.
fn diagnose_chain(
    ring: &FusionRing,
    x3: usize,
    xs: &[usize],
    n: usize,
    p: &RingElement,
    y0: usize,
) -> Result<TerminalStatus> {
    let truncated = |cause: String| TerminalStatus::TruncationReached { depth: n, cause };
    let names = |ys: &[usize]| {
        ys.iter()
            .map(|&i| ring.label(i).to_string())
            .collect::<Vec<_>>()
    };
    let mut ys = vec![y0];
    let mut above = xs[n + 1];
    loop {
        let cur = *ys.last().expect("chain is nonempty");
        let q = need!(ring.product(cur, x3), truncated);
        if q.as_basic() == Some(above) {
            break;
        }
        if q.coefficient(above) < 1 {
            return Ok(failure(Diagnosis::ChainBroken {
                n,
                chain: names(&ys),
                detail: format!(
                    "{} x3 does not contain {}",
                    ring.label(cur),
                    ring.label(above)
                ),
            }));
        }
        let rest = q.checked_sub(&RingElement::basic(above))?;
        let next = minimal_components(ring, &rest)[0];
        if ring.degree_of(next) >= ring.degree_of(cur) {
            return Ok(failure(Diagnosis::ChainBroken {
                n,
                chain: names(&ys),
                detail: format!("{} does not descend", ring.label(next)),
            }));
        }
        ys.push(next);
        if ys.len() > n + 1 {
            return Ok(failure(Diagnosis::ChainTooLong {
                n,
                chain: names(&ys),
            }));
        }
        above = cur;
    }
    let k = ys.len() - 1;
    let yk = ys[k];
    for t in 1..=k + 1 {
        let expected = if t <= k { ys[k - t] } else { xs[n + 1] };
        let found = need!(ring.product(yk, xs[t]), truncated);
        if found.as_basic() != Some(expected) {
            return Ok(failure(Diagnosis::DescentRelationViolated {
                n,
                t,
                expected: ring.label(expected).to_string(),
                found: ring.decompose(&found),
            }));
        }
    }
    if k < n {
        return Ok(failure(Diagnosis::ShortChainImpossible {
            n,
            k,
            chain: names(&ys),
        }));
    }
    if ring.degree_of(yk) != 1 {
        return Ok(failure(Diagnosis::TerminalNotGrouplike {
            n,
            element: ring.label(yk).to_string(),
        }));
    }
    let g = yk;
    let z0 = p.checked_sub(&RingElement::from_terms([(xs[n], 1), (y0, 1)]))?;
    if !z0.is_nonnegative() {
        return Ok(failure(Diagnosis::ChainBroken {
            n,
            chain: names(&ys),
            detail: "chain start is not a component".to_string(),
        }));
    }
    if z0.as_basic().is_some() {
        let square = need!(ring.product(g, g), truncated);
        return Ok(failure(if square.as_basic() == Some(ring.unit()) {
            Diagnosis::GrouplikeOrderTwo {
                n,
                grouplike: ring.label(g).to_string(),
            }
        } else {
            Diagnosis::OrderTwoContradiction {
                n,
                grouplike: ring.label(g).to_string(),
                square: ring.decompose(&square),
            }
        }));
    }
    if n > 1 {
        return Ok(failure(Diagnosis::TerminalDegreeBound {
            n,
            remainder: ring.decompose(&z0),
        }));
    }
    terminal_configuration(ring, x3, xs[2], &z0)
}

/// Bottom of the ladder: `x5 x3 = x3 + g x3 + u1 + u2 + u3`. Each `ui` is a
/// grouplike translate of `x3`; the stabilizer `V` of `x5` then produces
/// nested subrings whose dimensions are compared.
fn terminal_configuration(
    ring: &FusionRing,
    x3: usize,
    x5: usize,
    z0: &RingElement,
) -> Result<TerminalStatus> {
    let shape = |detail: String| Ok(failure(Diagnosis::TerminalShape { detail }));
    let comps: Vec<(usize, i64)> = z0.terms().collect();
    if comps.len() != 3 || comps.iter().any(|&(i, c)| c != 1 || ring.degree_of(i) != 3) {
        return shape(format!(
            "remainder {} is not three distinct degree-3 elements",
            ring.display(z0)
        ));
    }
    for &(u, _) in &comps {
        let translate = ring
            .grouplikes()
            .into_iter()
            .any(|h| ring.product(h, x3).ok().and_then(|p| p.as_basic()) == Some(u));
        if !translate {
            return shape(format!(
                "{} is not a grouplike translate of x3",
                ring.label(u)
            ));
        }
    }
    let stabilizer = match stabilizer_group(ring, x5) {
        Ok(v) => v,
        Err(SubringError::Ring(e)) => return Err(e.into()),
        Err(e) => return shape(format!("stabilizer of x5: {e}")),
    };
    let mut seed = stabilizer.indices.clone();
    seed.push(x5);
    let inner = closure(ring, &seed, true);
    seed.push(x3);
    let outer = closure(ring, &seed, true);
    let (Closure::Complete(inner), Closure::Complete(outer)) = (inner, outer) else {
        return shape("closure of the stabilizer with x3, x5 is not determined".to_string());
    };
    let violations = freeness_obstructions(&[inner.clone(), outer.clone()]);
    Ok(failure(Diagnosis::TerminalFreeness {
        stabilizer: stabilizer.elements,
        inner,
        outer,
        violations,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryNote {
    pub dimension: u64,
    pub divisible_by_three: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// A nontrivial grouplike of order 2 or 3.
    ConclusionI {
        grouplike: String,
        order: u64,
        source: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        corollary: Option<CorollaryNote>,
    },
    /// The ladder extends to the truncation bound.
    #[serde(rename = "conclusion_ii")]
    ConclusionII {
        certificate: LadderCertificate,
    },
    NoDegree3,
    /// An even-degree basic element is present.
    HypothesisUnmet {
        detail: String,
    },
    /// Every degree-3 element is blocked by unknown products.
    Undetermined {
        detail: String,
    },
    Obstruction {
        detail: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        diagnosis: Option<Diagnosis>,
    },
}

impl Verdict {
    pub fn is_obstruction(&self) -> bool {
        matches!(self, Verdict::Obstruction { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::ConclusionI {
                grouplike,
                order,
                source,
                corollary,
            } => {
                write!(
                    f,
                    "conclusion (i): grouplike {grouplike} of order {order} ({source})"
                )?;
                if let Some(note) = corollary {
                    let verb = if note.divisible_by_three {
                        "is"
                    } else {
                        "is not"
                    };
                    write!(
                        f,
                        "; odd dimension {} {verb} divisible by 3",
                        note.dimension
                    )?;
                }
                Ok(())
            }
            Verdict::ConclusionII { certificate } => write!(
                f,
                "conclusion (ii): ladder from {} certified to depth {}",
                certificate.x3, certificate.depth_reached
            ),
            Verdict::NoDegree3 => write!(f, "no basic element of degree 3"),
            Verdict::HypothesisUnmet { detail } => write!(f, "hypothesis unmet: {detail}"),
            Verdict::Undetermined { detail } => write!(f, "undetermined: {detail}"),
            Verdict::Obstruction { detail, .. } => write!(f, "obstruction: {detail}"),
        }
    }
}

/// Applies the dichotomy to every degree-3 basic element in canonical order
/// and returns the first decisive outcome.
pub fn theorem_verdict(ring: &FusionRing) -> Result<Verdict> {
    let report = check_axioms(ring);
    if report.has_failures() {
        let names: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        return Ok(Verdict::Obstruction {
            detail: format!("axiom checks failed: {}", names.join(", ")),
            diagnosis: None,
        });
    }
    let degree3: Vec<usize> = (0..ring.rank())
        .filter(|&i| ring.degree_of(i) == 3)
        .collect();
    if degree3.is_empty() {
        return Ok(Verdict::NoDegree3);
    }
    if let Some(e) = ring.has_even_degree() {
        return Ok(Verdict::HypothesisUnmet {
            detail: format!("{} has even degree {}", ring.label(e), ring.degree_of(e)),
        });
    }
    let hint = grouplike_group(ring)
        .ok()
        .and_then(|g| g.element_of_order_two_or_three());
    let from_hint = |source: &str| {
        hint.map(|(g, order)| {
            conclusion_i(ring, ring.label(g).to_string(), order, source.to_string())
        })
    };

    let mut blocked = Vec::new();
    for &x in &degree3 {
        let chain = match lemma33_selfdual_chain(ring, x) {
            Ok(c) => c,
            Err(e) if e.is_unknown_product() => {
                blocked.push(format!("{}: {e}", ring.label(x)));
                continue;
            }
            Err(e) => return Err(e),
        };
        match chain {
            Lemma33Result::GrouplikeFound { label, order } => {
                return Ok(conclusion_i(
                    ring,
                    label,
                    order,
                    format!("grouplike in {}", product_name(ring, x)),
                ))
            }
            Lemma33Result::ChainFailure { trace, reason } => {
                return Ok(
                    from_hint("grouplike group").unwrap_or(Verdict::Obstruction {
                        detail: format!("chain {}: {reason}", trace.join(" -> ")),
                        diagnosis: None,
                    }),
                )
            }
            Lemma33Result::SelfDual { x3, .. } => {
                let x3i = ring.index_of(&x3)?;
                let cert = ladder_build(ring, x3i, usize::MAX)?;
                match &cert.terminal_status {
                    TerminalStatus::TruncationReached { .. } => {
                        return Ok(Verdict::ConclusionII { certificate: cert })
                    }
                    TerminalStatus::FailureBranch {
                        diagnosis: Diagnosis::GrouplikeOrderTwo { grouplike, .. },
                    } => {
                        return Ok(conclusion_i(
                            ring,
                            grouplike.clone(),
                            2,
                            "ladder failure branch".to_string(),
                        ))
                    }
                    TerminalStatus::FailureBranch { diagnosis } => {
                        return Ok(
                            from_hint("grouplike group").unwrap_or(Verdict::Obstruction {
                                detail: format!("ladder from {x3} fails"),
                                diagnosis: Some(diagnosis.clone()),
                            }),
                        )
                    }
                }
            }
        }
    }
    Ok(Verdict::Undetermined {
        detail: blocked.join("; "),
    })
}

fn conclusion_i(ring: &FusionRing, grouplike: String, order: u64, source: String) -> Verdict {
    let corollary = (ring.is_complete() && ring.dimension() % 2 == 1).then(|| CorollaryNote {
        dimension: ring.dimension(),
        divisible_by_three: ring.dimension().is_multiple_of(3),
    });
    Verdict::ConclusionI {
        grouplike,
        order,
        source,
        corollary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{a4_ring, f21_ring, s3_ring};
    use crate::oracles::{cyclic_group_ring, proof_fragment_ring, so3_truncated};

    fn idx(ring: &FusionRing, l: &str) -> usize {
        ring.index_of(l).unwrap()
    }

    #[test]
    fn lemma32_on_a4_finds_order_three() {
        let ring = a4_ring();
        let r = lemma32_cases(&ring, idx(&ring, "x3")).unwrap();
        assert_eq!(
            r,
            Lemma32Result::GrouplikeFound {
                label: "s".into(),
                order: 3
            }
        );
    }

    #[test]
    fn lemma32_on_f21_finds_uv() {
        let ring = f21_ring();
        // x3 x3bar = 1 + x3 + x3bar + s + s2 in F21, so grouplikes appear
        let r = lemma32_cases(&ring, idx(&ring, "x3")).unwrap();
        assert!(
            matches!(r, Lemma32Result::GrouplikeFound { order: 3, .. }),
            "{r:?}"
        );
    }

    #[test]
    fn lemma32_on_so3() {
        let ring = so3_truncated(9);
        let r = lemma32_cases(&ring, idx(&ring, "x3")).unwrap();
        assert_eq!(
            r,
            Lemma32Result::Uv {
                u: "x3".into(),
                v: "x5".into()
            }
        );
    }

    #[test]
    fn lemma32_rejects_wrong_degree() {
        let ring = so3_truncated(9);
        assert!(matches!(
            lemma32_cases(&ring, idx(&ring, "x5")),
            Err(TheoremError::NotDegreeThree { degree: 5, .. })
        ));
    }

    #[test]
    fn lemma32_even_degree_is_obstruction() {
        let ring = s3_ring();
        // S3 has no degree-3 element; use a unit-degree error path instead
        assert!(lemma32_cases(&ring, idx(&ring, "x2")).is_err());
    }

    #[test]
    fn lemma33_on_so3_is_immediate() {
        let ring = so3_truncated(9);
        let r = lemma33_selfdual_chain(&ring, idx(&ring, "x3")).unwrap();
        assert_eq!(
            r,
            Lemma33Result::SelfDual {
                x3: "x3".into(),
                x5: "x5".into(),
                chain_length: 0
            }
        );
    }

    #[test]
    fn lemma33_follows_one_step() {
        // a3^2 = 1 + b3 + v5 and b3^2 = 1 + b3 + w5
        let ring = FusionRing::builder("chain")
            .basis("1", 1, "1")
            .basis("a3", 3, "a3")
            .basis("b3", 3, "b3")
            .basis("v5", 5, "v5")
            .basis("w5", 5, "w5")
            .unit("1")
            .partial(true)
            .product("a3", "a3", [("1", 1), ("b3", 1), ("v5", 1)])
            .product("b3", "b3", [("1", 1), ("b3", 1), ("w5", 1)])
            .build()
            .unwrap();
        let r = lemma33_selfdual_chain(&ring, idx(&ring, "a3")).unwrap();
        assert_eq!(
            r,
            Lemma33Result::SelfDual {
                x3: "b3".into(),
                x5: "w5".into(),
                chain_length: 1
            }
        );
    }

    #[test]
    fn lemma33_detects_cycles() {
        // a3^2 = 1 + b3 + v5 and b3^2 = 1 + a3 + w5
        let ring = FusionRing::builder("cycle")
            .basis("1", 1, "1")
            .basis("a3", 3, "a3")
            .basis("b3", 3, "b3")
            .basis("v5", 5, "v5")
            .basis("w5", 5, "w5")
            .unit("1")
            .partial(true)
            .product("a3", "a3", [("1", 1), ("b3", 1), ("v5", 1)])
            .product("b3", "b3", [("1", 1), ("a3", 1), ("w5", 1)])
            .build()
            .unwrap();
        let r = lemma33_selfdual_chain(&ring, idx(&ring, "a3")).unwrap();
        let Lemma33Result::ChainFailure { trace, .. } = r else {
            panic!("{r:?}")
        };
        assert_eq!(trace, ["a3", "b3", "a3"]);
    }

    #[test]
    fn triple_forced_in_so3() {
        let ring = so3_truncated(15);
        // x5 x3 = x3 + x5 + x7 with a = x5, a' = x5, b = x7: c = x3
        let r = validate_triple(
            &ring,
            idx(&ring, "x3"),
            idx(&ring, "x5"),
            &RingElement::basic(idx(&ring, "x5")),
            idx(&ring, "x7"),
        )
        .unwrap();
        assert_eq!(
            r,
            TripleOutcome::Forced {
                c: vec![("x3".into(), 1)],
                decompositions: 1
            }
        );
    }

    #[test]
    fn triple_preconditions() {
        let ring = proof_fragment_ring();
        let x3 = idx(&ring, "x3");
        // |a'| != |a|
        let r = validate_triple(
            &ring,
            x3,
            idx(&ring, "x5"),
            &RingElement::basic(x3),
            idx(&ring, "x5"),
        );
        assert!(
            matches!(r, Err(TheoremError::PreconditionUnmet(_))),
            "{r:?}"
        );
        // x3 x3 = 1 + x3 + x5 does not contain gx3
        let r = validate_triple(
            &ring,
            x3,
            x3,
            &RingElement::basic(idx(&ring, "gx3")),
            idx(&ring, "x5"),
        );
        assert!(
            matches!(r, Err(TheoremError::PreconditionUnmet(_))),
            "{r:?}"
        );
    }

    #[test]
    fn triple_violation_detected() {
        use crate::ring::Entry;
        let ring = so3_truncated(15);
        let (x3, x5, x7) = (idx(&ring, "x3"), idx(&ring, "x5"), idx(&ring, "x7"));
        // x5 x3 = 2 x5 + 2 x7 admits c = x5, leaving u = x5 + x7
        let bad = ring.with_entry(x5, x3, Entry::Known(vec![(x5, 2), (x7, 2)]));
        let r = validate_triple(&bad, x3, x5, &RingElement::basic(x5), x7).unwrap();
        assert_eq!(
            r,
            TripleOutcome::Violation {
                c: vec![("x5".into(), 1)],
                u: vec![("x5".into(), 1), ("x7".into(), 1)],
                v: vec![("x7".into(), 2)],
            }
        );
    }

    #[test]
    fn ladder_on_so3_21() {
        let ring = so3_truncated(21);
        let cert = ladder_build(&ring, idx(&ring, "x3"), usize::MAX).unwrap();
        assert_eq!(cert.depth_reached, 9);
        assert_eq!(cert.x_family.last().unwrap(), "x21");
        assert_eq!(cert.xprime_family.len(), 9);
        assert!(cert.tie_breaks.is_empty());
        assert!(matches!(
            cert.terminal_status,
            TerminalStatus::TruncationReached { depth: 9, .. }
        ));
        cert.verify(&ring).unwrap();
    }

    #[test]
    fn ladder_respects_depth_limit() {
        let ring = so3_truncated(21);
        let cert = ladder_build(&ring, idx(&ring, "x3"), 4).unwrap();
        assert_eq!(cert.depth_reached, 4);
        cert.verify(&ring).unwrap();
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let ring = so3_truncated(21);
        let mut cert = ladder_build(&ring, idx(&ring, "x3"), 5).unwrap();
        cert.x_family.swap(2, 3);
        assert!(cert.verify(&ring).is_err());
    }

    #[test]
    fn ladder_on_fragment_reaches_freeness() {
        let ring = proof_fragment_ring();
        let cert = ladder_build(&ring, idx(&ring, "x3"), usize::MAX).unwrap();
        assert_eq!(cert.depth_reached, 1);
        let TerminalStatus::FailureBranch {
            diagnosis:
                Diagnosis::TerminalFreeness {
                    stabilizer,
                    inner,
                    outer,
                    violations,
                },
        } = cert.terminal_status
        else {
            panic!("unexpected terminal status {:?}", cert.terminal_status);
        };
        assert_eq!(stabilizer.len(), 5);
        assert_eq!((inner.hopf_dimension, outer.hopf_dimension), (30, 75));
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].dimensions(), (30, 75));
    }

    #[test]
    fn ladder_preconditions() {
        let ring = a4_ring();
        assert!(matches!(
            ladder_build(&ring, idx(&ring, "x3"), 3),
            Err(TheoremError::PreconditionUnmet(_))
        ));
    }

    #[test]
    fn verdicts() {
        let v = theorem_verdict(&f21_ring()).unwrap();
        let Verdict::ConclusionI {
            order, corollary, ..
        } = v
        else {
            panic!("{v:?}")
        };
        assert_eq!(order, 3);
        assert_eq!(
            corollary,
            Some(CorollaryNote {
                dimension: 21,
                divisible_by_three: true
            })
        );

        assert!(matches!(
            theorem_verdict(&a4_ring()).unwrap(),
            Verdict::ConclusionI { order: 3, .. }
        ));
        assert_eq!(
            theorem_verdict(&cyclic_group_ring(5)).unwrap(),
            Verdict::NoDegree3
        );
        assert!(matches!(
            theorem_verdict(&s3_ring()).unwrap(),
            Verdict::NoDegree3
        ));
        let v = theorem_verdict(&so3_truncated(21)).unwrap();
        let Verdict::ConclusionII { certificate } = v else {
            panic!("{v:?}")
        };
        assert_eq!(certificate.depth_reached, 9);
        let v = theorem_verdict(&proof_fragment_ring()).unwrap();
        assert!(v.is_obstruction(), "{v:?}");
    }
}
