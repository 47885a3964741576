//! Standard subrings, grouplike groups and the freeness divisibility check.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::ring::{FusionRing, RingError};

/// Default bound on the rank accepted by [`enumerate_standard_subrings`].
pub const DEFAULT_ENUMERATION_BOUND: usize = 20;
/// Largest rank for which the power-set cross-check is allowed.
pub const POWER_SET_BOUND: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubringError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("rank {rank} exceeds the enumeration bound {bound}")]
    RankTooLarge { rank: usize, bound: usize },
    #[error("ring has unknown products; enable incomplete omission to enumerate")]
    IncompleteRing,
    #[error("grouplikes are not closed: {0}")]
    NotClosed(String),
    #[error("stabilizer of `{label}` has order {order}, above the bound {bound}")]
    StabilizerTooLarge {
        label: String,
        order: usize,
        bound: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct StandardSubring {
    pub members: Vec<String>,
    #[serde(skip)]
    pub indices: Vec<usize>,
    pub hopf_dimension: u64,
    pub closed_under_dual: bool,
}

impl StandardSubring {
    fn from_indices(ring: &FusionRing, set: &BTreeSet<usize>) -> Self {
        let indices: Vec<usize> = set.iter().copied().collect();
        StandardSubring {
            members: indices.iter().map(|&i| ring.label(i).to_string()).collect(),
            hopf_dimension: indices
                .iter()
                .map(|&i| ring.degree_of(i) * ring.degree_of(i))
                .sum(),
            closed_under_dual: indices.iter().all(|&i| set.contains(&ring.dual_index(i))),
            indices,
        }
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    pub fn is_subset_of(&self, other: &StandardSubring) -> bool {
        self.indices.iter().all(|&i| other.contains(i))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Closure {
    Complete(StandardSubring),
    /// Closure stalled on a product whose support cannot be bounded.
    Incomplete {
        reached: Vec<String>,
        blocking: (String, String),
    },
}

impl Closure {
    pub fn complete(self) -> Option<StandardSubring> {
        match self {
            Closure::Complete(s) => Some(s),
            Closure::Incomplete { .. } => None,
        }
    }
}

/// Smallest basis subset containing `seed` and the unit that is closed under
/// product supports (and duals when `dual_closed`).
///
/// Unknown products are handled soundly. In a truncated ring they make the
/// closure `Incomplete`. In an untruncated partial ring the basis is the
/// whole universe, so an unknown product `ab` can only reach elements `c`
/// with `|c| <= |a||b|`; each such `c` outside the current set is resolved
/// through the reciprocity rewrites `m(c, ab) = m(a*, b c*) = m(a, c b*)`,
/// and an unresolvable candidate makes the closure `Incomplete`.
pub fn closure(ring: &FusionRing, seed: &[usize], dual_closed: bool) -> Closure {
    let mut set: BTreeSet<usize> = seed.iter().copied().collect();
    set.insert(ring.unit());
    if dual_closed {
        let duals: Vec<usize> = set.iter().map(|&i| ring.dual_index(i)).collect();
        set.extend(duals);
    }

    loop {
        let mut grew = false;
        let current: Vec<usize> = set.iter().copied().collect();
        let mut pending_unknown = Vec::new();
        for &a in &current {
            for &b in &current {
                match ring.entry(a, b).known() {
                    Some(row) => {
                        for &(c, _) in row {
                            grew |= set.insert(c);
                            if dual_closed {
                                grew |= set.insert(ring.dual_index(c));
                            }
                        }
                    }
                    None => pending_unknown.push((a, b)),
                }
            }
        }
        if grew {
            continue;
        }
        // a truncated basis is only a window onto a larger ring
        if set.len() == ring.rank() && ring.truncation().is_none() {
            break;
        }
        for (a, b) in pending_unknown {
            if ring.truncation().is_some() {
                return incomplete(ring, &set, a, b);
            }
            let bound = ring.degree_of(a) * ring.degree_of(b);
            for c in 0..ring.rank() {
                if set.contains(&c) || ring.degree_of(c) > bound {
                    continue;
                }
                let derived = ring
                    .entry(b, ring.dual_index(c))
                    .coefficient(ring.dual_index(a))
                    .or_else(|| ring.entry(c, ring.dual_index(b)).coefficient(a));
                match derived {
                    Some(0) => {}
                    Some(_) => {
                        grew |= set.insert(c);
                        if dual_closed {
                            grew |= set.insert(ring.dual_index(c));
                        }
                    }
                    None => return incomplete(ring, &set, a, b),
                }
            }
        }
        if !grew {
            break;
        }
    }
    Closure::Complete(StandardSubring::from_indices(ring, &set))
}

fn incomplete(ring: &FusionRing, set: &BTreeSet<usize>, a: usize, b: usize) -> Closure {
    Closure::Incomplete {
        reached: set.iter().map(|&i| ring.label(i).to_string()).collect(),
        blocking: (ring.label(a).to_string(), ring.label(b).to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub max_rank: usize,
    /// Drop closures that come back `Incomplete` instead of refusing a
    /// partial ring outright.
    pub allow_incomplete: bool,
    /// Close every subset of the basis (rank at most [`POWER_SET_BOUND`]).
    pub power_set: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            max_rank: DEFAULT_ENUMERATION_BOUND,
            allow_incomplete: false,
            power_set: false,
        }
    }
}

/// All dual-closed standard subrings, sorted by dimension then members.
///
/// Closures of single generators and pairs are computed first; the result is
/// then saturated under joins (closure of a union), which reaches every
/// standard subring because each one is the join of its members' closures.
pub fn enumerate_standard_subrings(
    ring: &FusionRing,
    options: EnumerationOptions,
) -> Result<Vec<StandardSubring>, SubringError> {
    let r = ring.rank();
    if r > options.max_rank {
        return Err(SubringError::RankTooLarge {
            rank: r,
            bound: options.max_rank,
        });
    }
    if !options.allow_incomplete && !ring.is_complete() {
        return Err(SubringError::IncompleteRing);
    }

    let mut found: Vec<StandardSubring> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut push = |s: StandardSubring, found: &mut Vec<StandardSubring>| {
        if seen.insert(s.indices.clone()) {
            found.push(s);
        }
    };

    if options.power_set {
        if r > POWER_SET_BOUND {
            return Err(SubringError::RankTooLarge {
                rank: r,
                bound: POWER_SET_BOUND,
            });
        }
        for mask in 0u32..(1 << r) {
            let seed: Vec<usize> = (0..r).filter(|i| mask & (1 << i) != 0).collect();
            if let Some(s) = closure(ring, &seed, true).complete() {
                push(s, &mut found);
            }
        }
    } else {
        for a in 0..r {
            for b in a..r {
                if let Some(s) = closure(ring, &[a, b], true).complete() {
                    push(s, &mut found);
                }
            }
        }
        let mut frontier = 0;
        while frontier < found.len() {
            let end = found.len();
            for i in 0..end {
                for j in frontier.max(i + 1)..end {
                    let union: Vec<usize> = found[i]
                        .indices
                        .iter()
                        .chain(found[j].indices.iter())
                        .copied()
                        .collect();
                    if let Some(s) = closure(ring, &union, true).complete() {
                        push(s, &mut found);
                    }
                }
            }
            frontier = end;
        }
    }

    found.sort_by(|x, y| (x.hopf_dimension, &x.indices).cmp(&(y.hopf_dimension, &y.indices)));
    Ok(found)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrouplikeGroup {
    pub elements: Vec<String>,
    #[serde(skip)]
    pub indices: Vec<usize>,
    /// `table[i][j]` is the position in `elements` of the product.
    pub table: Vec<Vec<usize>>,
    pub orders: Vec<u64>,
}

impl GrouplikeGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element_order(&self, label: &str) -> Option<u64> {
        self.elements
            .iter()
            .position(|e| e == label)
            .map(|p| self.orders[p])
    }

    /// First element in canonical order whose order is 2 or 3, falling back
    /// to a suitable power of an element whose order is divisible by 2 or 3.
    pub fn element_of_order_two_or_three(&self) -> Option<(usize, u64)> {
        if let Some(p) = self.orders.iter().position(|&o| o == 2 || o == 3) {
            return Some((self.indices[p], self.orders[p]));
        }
        for (p, &o) in self.orders.iter().enumerate() {
            for prime in [2u64, 3] {
                if o % prime == 0 {
                    let q = self.power(p, o / prime);
                    return Some((self.indices[q], prime));
                }
            }
        }
        None
    }

    fn power(&self, p: usize, k: u64) -> usize {
        let mut acc = 0; // position 0 is always the unit
        for _ in 0..k {
            acc = self.table[acc][p];
        }
        acc
    }

    pub fn is_closed_and_associative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| self.table[self.table[a][b]][c] == self.table[a][self.table[b][c]])
            })
        })
    }
}

pub(crate) fn group_on(
    ring: &FusionRing,
    members: Vec<usize>,
) -> Result<GrouplikeGroup, SubringError> {
    let mut members = members;
    members.sort_unstable();
    members.dedup();
    // the unit sorts first among degree-one labels only if it is the smallest
    // label, so move it to the front explicitly
    members.retain(|&i| i != ring.unit());
    members.insert(0, ring.unit());

    let n = members.len();
    let mut table = vec![vec![0usize; n]; n];
    for (i, &a) in members.iter().enumerate() {
        for (j, &b) in members.iter().enumerate() {
            let p = ring.product(a, b)?;
            let pos = p
                .as_basic()
                .and_then(|c| members.iter().position(|&m| m == c))
                .ok_or_else(|| {
                    SubringError::NotClosed(format!(
                        "{} * {} = {}",
                        ring.label(a),
                        ring.label(b),
                        ring.display(&p)
                    ))
                })?;
            table[i][j] = pos;
        }
    }
    let mut orders = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = i;
        let mut k = 1u64;
        while acc != 0 {
            acc = table[acc][i];
            k += 1;
            if k > n as u64 {
                return Err(SubringError::NotClosed(format!(
                    "{} has no finite order",
                    ring.label(members[i])
                )));
            }
        }
        orders.push(k);
    }
    Ok(GrouplikeGroup {
        elements: members.iter().map(|&i| ring.label(i).to_string()).collect(),
        indices: members,
        table,
        orders,
    })
}

/// The group formed by all degree-one basis elements.
pub fn grouplike_group(ring: &FusionRing) -> Result<GrouplikeGroup, SubringError> {
    group_on(ring, ring.grouplikes())
}

/// Subgroup of grouplikes fixing `x` under left multiplication.
pub fn stabilizer_group(ring: &FusionRing, x: usize) -> Result<GrouplikeGroup, SubringError> {
    let mut fixing = Vec::new();
    for g in ring.grouplikes() {
        if ring.product(g, x)?.as_basic() == Some(x) {
            fixing.push(g);
        }
    }
    let group = group_on(ring, fixing)?;
    let bound = ring.degree_of(x) * ring.degree_of(x);
    if group.order() as u64 > bound {
        return Err(SubringError::StabilizerTooLarge {
            label: ring.label(x).to_string(),
            order: group.order(),
            bound,
        });
    }
    Ok(group)
}

/// A nested pair of dual-closed standard subrings whose dimensions violate
/// the freeness divisibility condition (a realizability obstruction).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreenessViolation {
    pub inner: Vec<String>,
    pub inner_dimension: u64,
    pub outer: Vec<String>,
    pub outer_dimension: u64,
}

impl FreenessViolation {
    pub fn dimensions(&self) -> (u64, u64) {
        (self.inner_dimension, self.outer_dimension)
    }
}

/// Checks every strictly nested pair of dual-closed subrings in `subrings`.
pub fn freeness_obstructions(subrings: &[StandardSubring]) -> Vec<FreenessViolation> {
    let mut out = Vec::new();
    for inner in subrings.iter().filter(|s| s.closed_under_dual) {
        for outer in subrings.iter().filter(|s| s.closed_under_dual) {
            if inner.indices.len() < outer.indices.len()
                && inner.is_subset_of(outer)
                && outer.hopf_dimension % inner.hopf_dimension != 0
            {
                out.push(FreenessViolation {
                    inner: inner.members.clone(),
                    inner_dimension: inner.hopf_dimension,
                    outer: outer.members.clone(),
                    outer_dimension: outer.hopf_dimension,
                });
            }
        }
    }
    out.sort_by(|a, b| {
        (a.inner_dimension, a.outer_dimension, &a.inner, &a.outer).cmp(&(
            b.inner_dimension,
            b.outer_dimension,
            &b.inner,
            &b.outer,
        ))
    });
    out
}

/// Enumerates subrings (omitting incomplete closures) and checks freeness.
pub fn ring_freeness_obstructions(
    ring: &FusionRing,
) -> Result<(Vec<StandardSubring>, Vec<FreenessViolation>), SubringError> {
    let subrings = enumerate_standard_subrings(
        ring,
        EnumerationOptions {
            allow_incomplete: true,
            ..EnumerationOptions::default()
        },
    )?;
    let violations = freeness_obstructions(&subrings);
    Ok((subrings, violations))
}
