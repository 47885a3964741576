//! Identity checks for Grothendieck rings of cosemisimple Hopf algebras.
//!
//! Every check runs over all applicable basic pairs or triples in canonical
//! order. Instances that need an unknown product are counted as skipped, and
//! the first failing instance in canonical order is kept as the witness.

use rayon::prelude::*;
use serde::Serialize;

use crate::ring::{Entry, FusionRing, RingElement, RingError};

pub const UNIT_LAW: &str = "unit_law";
pub const DUALITY_PAIRING: &str = "duality_pairing";
pub const ASSOCIATIVITY: &str = "associativity";
pub const DEGREE_HOMOMORPHISM: &str = "degree_homomorphism";
pub const DUAL_COMPATIBILITY: &str = "dual_compatibility";
pub const FROBENIUS_RECIPROCITY: &str = "frobenius_reciprocity";
pub const GROUPLIKE_RULE: &str = "grouplike_rule";

pub const STABILIZER_MULTIPLICITY: &str = "stabilizer_multiplicity";
pub const STABILIZER_EQUIVALENCE: &str = "stabilizer_equivalence";
pub const STABILIZER_CLOSURE: &str = "stabilizer_closure";
pub const STABILIZER_ORDER_BOUND: &str = "stabilizer_order_bound";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    SkippedUnknown,
}

/// The offending instance of a failed check, with both sides rendered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub items: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: CheckStatus,
    pub evaluated: usize,
    pub skipped: usize,
    pub failed: usize,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub subject: String,
    pub checks: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn get(&self, name: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn has_failures(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }

    pub fn skipped(&self) -> usize {
        self.checks.iter().map(|c| c.skipped).sum()
    }

    /// Every check passed and nothing was skipped.
    pub fn all_pass_no_skips(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.status == CheckStatus::Pass && c.skipped == 0)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }
}

#[derive(Debug, Default)]
struct Tally {
    evaluated: usize,
    skipped: usize,
    failed: usize,
    witness: Option<Witness>,
}

impl Tally {
    fn pass(&mut self) {
        self.evaluated += 1;
    }

    fn skip(&mut self) {
        self.skipped += 1;
    }

    fn fail(&mut self, witness: impl FnOnce() -> Witness) {
        self.evaluated += 1;
        self.failed += 1;
        if self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        if ok {
            self.pass()
        } else {
            self.fail(witness)
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.evaluated += other.evaluated;
        self.skipped += other.skipped;
        self.failed += other.failed;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        self
    }

    fn finish(self, name: &str) -> CheckEntry {
        let status = if self.failed > 0 {
            CheckStatus::Fail
        } else if self.evaluated == 0 && self.skipped > 0 {
            CheckStatus::SkippedUnknown
        } else {
            CheckStatus::Pass
        };
        CheckEntry {
            name: name.to_string(),
            status,
            evaluated: self.evaluated,
            skipped: self.skipped,
            failed: self.failed,
            witness: self.witness,
        }
    }
}

/// Runs `per_first` for every first index in parallel and merges the
/// tallies in canonical order, so the witness is the same for any schedule.
fn run_indexed(name: &str, rank: usize, per_first: impl Fn(usize) -> Tally + Sync) -> CheckEntry {
    let parts: Vec<Tally> = (0..rank).into_par_iter().map(&per_first).collect();
    parts
        .into_iter()
        .fold(Tally::default(), Tally::merge)
        .finish(name)
}

fn labels(ring: &FusionRing, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| ring.label(i).to_string()).collect()
}

fn witness(ring: &FusionRing, idx: &[usize], lhs: impl ToString, rhs: impl ToString) -> Witness {
    Witness {
        items: labels(ring, idx),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

fn known_coefficient(ring: &FusionRing, a: usize, b: usize, c: usize) -> Option<u64> {
    ring.entry(a, b).coefficient(c)
}

/// Evaluates every axiom on `ring`. Never short-circuits: all seven checks
/// are always present, in a fixed order.
pub fn check_axioms(ring: &FusionRing) -> CheckReport {
    let checks = vec![
        unit_law(ring),
        duality_pairing(ring),
        associativity(ring),
        degree_homomorphism(ring),
        dual_compatibility(ring),
        frobenius_reciprocity(ring),
        grouplike_rule(ring),
    ];
    CheckReport {
        subject: ring.name().to_string(),
        checks,
    }
}

fn unit_law(ring: &FusionRing) -> CheckEntry {
    let u = ring.unit();
    run_indexed(UNIT_LAW, ring.rank(), |b| {
        let mut t = Tally::default();
        let expect = RingElement::basic(b);
        for (l, r) in [(u, b), (b, u)] {
            match ring.product(l, r) {
                Ok(p) => t.check(p == expect, || {
                    witness(ring, &[l, r], ring.display(&p), ring.label(b))
                }),
                Err(_) => t.skip(),
            }
        }
        t
    })
}

fn duality_pairing(ring: &FusionRing) -> CheckEntry {
    let u = ring.unit();
    run_indexed(DUALITY_PAIRING, ring.rank(), |a| {
        let mut t = Tally::default();
        for b in 0..ring.rank() {
            let Some(m) = known_coefficient(ring, a, b, u) else {
                t.skip();
                continue;
            };
            let expected = u64::from(b == ring.dual_index(a));
            t.check(m == expected, || {
                witness(ring, &[a, b], format!("m(1, ab) = {m}"), expected)
            });
        }
        t
    })
}

fn associativity(ring: &FusionRing) -> CheckEntry {
    let r = ring.rank();
    run_indexed(ASSOCIATIVITY, r, |a| {
        let mut t = Tally::default();
        for b in 0..r {
            let ab = ring.product(a, b);
            for c in 0..r {
                let lhs = ab
                    .as_ref()
                    .map_err(Clone::clone)
                    .and_then(|ab| ring.multiply(ab, &RingElement::basic(c)));
                let rhs = ring
                    .product(b, c)
                    .and_then(|bc| ring.multiply(&RingElement::basic(a), &bc));
                match (lhs, rhs) {
                    (Ok(l), Ok(rr)) => t.check(l == rr, || {
                        witness(ring, &[a, b, c], ring.display(&l), ring.display(&rr))
                    }),
                    (Err(RingError::Overflow), _) | (_, Err(RingError::Overflow)) => {
                        t.fail(|| witness(ring, &[a, b, c], "overflow", "overflow"))
                    }
                    _ => t.skip(),
                }
            }
        }
        t
    })
}

fn degree_homomorphism(ring: &FusionRing) -> CheckEntry {
    run_indexed(DEGREE_HOMOMORPHISM, ring.rank(), |a| {
        let mut t = Tally::default();
        for b in 0..ring.rank() {
            let Entry::Known(row) = ring.entry(a, b) else {
                t.skip();
                continue;
            };
            let expected = ring.degree_of(a) * ring.degree_of(b);
            let found: u64 = row.iter().map(|&(c, n)| n * ring.degree_of(c)).sum();
            t.check(found == expected, || {
                witness(
                    ring,
                    &[a, b],
                    format!("|ab| = {found}"),
                    format!("|a||b| = {expected}"),
                )
            });
        }
        t
    })
}

fn dual_compatibility(ring: &FusionRing) -> CheckEntry {
    run_indexed(DUAL_COMPATIBILITY, ring.rank(), |a| {
        let mut t = Tally::default();
        let ad = ring.dual_index(a);
        t.check(
            ring.dual_index(ad) == a && ring.degree_of(ad) == ring.degree_of(a),
            || witness(ring, &[a], ring.label(ring.dual_index(ad)), ring.label(a)),
        );
        for b in 0..ring.rank() {
            let bd = ring.dual_index(b);
            match (ring.product(a, b), ring.product(bd, ad)) {
                (Ok(ab), Ok(bdad)) => {
                    let lhs = ring.dual(&ab);
                    t.check(lhs == bdad, || {
                        witness(ring, &[a, b], ring.display(&lhs), ring.display(&bdad))
                    })
                }
                _ => t.skip(),
            }
        }
        t
    })
}

fn frobenius_reciprocity(ring: &FusionRing) -> CheckEntry {
    let r = ring.rank();
    run_indexed(FROBENIUS_RECIPROCITY, r, |x| {
        let mut t = Tally::default();
        let xd = ring.dual_index(x);
        for y in 0..r {
            let yd = ring.dual_index(y);
            for z in 0..r {
                let zd = ring.dual_index(z);
                // m(x, yz) = m(y*, z x*) = m(y, x z*)
                let first = known_coefficient(ring, y, z, x);
                let second = known_coefficient(ring, z, xd, yd);
                let third = known_coefficient(ring, x, zd, y);
                match (first, second, third) {
                    (Some(p), Some(q), Some(s)) => t.check(p == q && q == s, || {
                        witness(
                            ring,
                            &[x, y, z],
                            format!("m(x,yz) = {p}"),
                            format!("m(y*,zx*) = {q}, m(y,xz*) = {s}"),
                        )
                    }),
                    _ => t.skip(),
                }
            }
        }
        t
    })
}

fn grouplike_rule(ring: &FusionRing) -> CheckEntry {
    let r = ring.rank();
    let grouplikes = ring.grouplikes();
    run_indexed(GROUPLIKE_RULE, r, |x| {
        let mut t = Tally::default();
        let xd = ring.dual_index(x);
        for &g in &grouplikes {
            let target = match ring.product(xd, g) {
                Ok(p) => match p.as_basic() {
                    Some(i) => Some(i),
                    None => {
                        t.fail(|| witness(ring, &[xd, g], ring.display(&p), "a basic element"));
                        continue;
                    }
                },
                Err(_) => None,
            };
            for y in 0..r {
                let (Some(target), Some(m)) = (target, known_coefficient(ring, x, y, g)) else {
                    t.skip();
                    continue;
                };
                let expected = u64::from(y == target);
                t.check(m == expected, || {
                    witness(ring, &[g, x, y], format!("m(g, xy) = {m}"), expected)
                });
            }
        }
        t
    })
}

/// Checks the stabilizer law for the basic element `x`: grouplikes occur in
/// `x x*` with multiplicity at most one, exactly those with `g x = x`, and
/// they form a group of order at most `|x|^2`.
pub fn check_stabilizer_rule(ring: &FusionRing, x: usize) -> Result<CheckReport, RingError> {
    let xxd = ring.product(x, ring.dual_index(x))?;
    let grouplikes = ring.grouplikes();
    let basic_x = RingElement::basic(x);

    let mut mult = Tally::default();
    let mut equiv = Tally::default();
    let mut stabilizer = Vec::new();
    for &g in &grouplikes {
        let m = xxd.coefficient(g);
        mult.check((0..=1).contains(&m), || {
            witness(ring, &[g, x], format!("m(g, xx*) = {m}"), "0 or 1")
        });
        if m == 1 {
            stabilizer.push(g);
        }
        match ring.product(g, x) {
            Ok(gx) => {
                let fixes = gx == basic_x;
                equiv.check(fixes == (m == 1), || {
                    witness(
                        ring,
                        &[g, x],
                        format!("gx = {}", ring.display(&gx)),
                        format!("m(g, xx*) = {m}"),
                    )
                });
            }
            Err(_) => equiv.skip(),
        }
    }

    let mut closure = Tally::default();
    closure.check(stabilizer.contains(&ring.unit()), || {
        witness(ring, &[x], "stabilizer", "must contain 1")
    });
    for &g in &stabilizer {
        for &h in &stabilizer {
            match ring.product(g, h) {
                Ok(gh) => {
                    let inside = gh.as_basic().is_some_and(|i| stabilizer.contains(&i));
                    closure.check(inside, || {
                        witness(
                            ring,
                            &[g, h],
                            ring.display(&gh),
                            "an element of the stabilizer",
                        )
                    });
                }
                Err(_) => closure.skip(),
            }
        }
    }

    let mut bound = Tally::default();
    let limit = ring.degree_of(x) * ring.degree_of(x);
    bound.check(stabilizer.len() as u64 <= limit, || {
        witness(ring, &[x], stabilizer.len(), format!("<= {limit}"))
    });

    Ok(CheckReport {
        subject: format!("{}:{}", ring.name(), ring.label(x)),
        checks: vec![
            mult.finish(STABILIZER_MULTIPLICITY),
            equiv.finish(STABILIZER_EQUIVALENCE),
            closure.finish(STABILIZER_CLOSURE),
            bound.finish(STABILIZER_ORDER_BOUND),
        ],
    })
}
