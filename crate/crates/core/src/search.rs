//! Exhaustive enumeration of small complete fusion rings with prescribed
//! degrees.
//!
//! Structure constants are constant on orbits of the symmetries
//! `N[a][b][c] = N[b][c*][a*] = N[c][b*][a] = N[b*][a*][c*]`, so the search
//! assigns one value per orbit. Rows `(a, b)` are filled in canonical order
//! under the degree-sum constraint, and associativity is checked whenever
//! the rows it needs are complete. Survivors pass the full axiom checker and
//! are deduplicated up to isomorphism.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::axioms::check_axioms;
use crate::ring::FusionRing;

/// Default bound on the rank accepted by [`enumerate_rings`].
pub const DEFAULT_MAX_RANK: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("rank {rank} exceeds the search bound {bound}")]
    RankTooLarge { rank: usize, bound: usize },
    #[error("degree {0} is even")]
    EvenDegree(u64),
    #[error("degree list must contain 1 for the unit")]
    NoUnit,
    #[error("degrees must be positive")]
    ZeroDegree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest structure constant considered.
    pub max_mult: u64,
    pub max_rank: usize,
    /// Reject even degrees up front.
    pub odd_only: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_mult: 2,
            max_rank: DEFAULT_MAX_RANK,
            odd_only: true,
        }
    }
}

/// All complete rings (up to isomorphism) whose basis degrees are `degrees`
/// and whose structure constants are at most `options.max_mult`, sorted by
/// canonical form.
pub fn enumerate_rings(
    degrees: &[u64],
    options: &SearchOptions,
) -> Result<Vec<FusionRing>, SearchError> {
    let mut degrees = degrees.to_vec();
    degrees.sort_unstable();
    let r = degrees.len();
    if r > options.max_rank {
        return Err(SearchError::RankTooLarge {
            rank: r,
            bound: options.max_rank,
        });
    }
    if degrees.contains(&0) {
        return Err(SearchError::ZeroDegree);
    }
    if degrees.first() != Some(&1) {
        return Err(SearchError::NoUnit);
    }
    if options.odd_only {
        if let Some(&d) = degrees.iter().find(|&&d| d % 2 == 0) {
            return Err(SearchError::EvenDegree(d));
        }
    }
    let labels = basis_labels(&degrees);

    let mut tasks = Vec::new();
    for duals in dual_assignments(&degrees) {
        if let Some(problem) = Problem::new(&degrees, duals, options.max_mult) {
            let problem = std::sync::Arc::new(problem);
            let root = problem.root_state();
            if problem.rows.is_empty() {
                tasks.push((problem.clone(), root));
                continue;
            }
            for state in problem.expand(&root, 0) {
                tasks.push((problem.clone(), state));
            }
        }
    }
    let found: Vec<(Vec<usize>, Vec<u64>)> = tasks
        .into_par_iter()
        .flat_map_iter(|(problem, state)| {
            let mut out = Vec::new();
            problem.search(state, problem.rows.len().min(1), &mut out);
            out.into_iter().map(move |t| (problem.duals.clone(), t))
        })
        .collect();

    let mut unique = BTreeMap::new();
    for (duals, table) in found {
        let ring = build_ring("search", &labels, &degrees, &duals, &table);
        if !check_axioms(&ring).all_pass_no_skips() {
            continue;
        }
        unique.entry(ring.canonical_form()).or_insert(ring);
    }
    let stem = degrees
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join("_");
    Ok(unique
        .into_values()
        .enumerate()
        .map(|(i, ring)| {
            let table = dense_table(&ring);
            let duals = (0..r).map(|a| ring.dual_index(a)).collect::<Vec<_>>();
            build_ring(
                &format!("search_{stem}_{i}"),
                &labels,
                &degrees,
                &duals,
                &table,
            )
        })
        .collect())
}

fn basis_labels(degrees: &[u64]) -> Vec<String> {
    let mut out = Vec::with_capacity(degrees.len());
    for (i, &d) in degrees.iter().enumerate() {
        let same = degrees.iter().filter(|&&e| e == d).count();
        let pos = degrees[..i].iter().filter(|&&e| e == d).count();
        out.push(match (d, same) {
            (1, _) if pos == 0 => "1".to_string(),
            (1, _) => format!("g{pos}"),
            (_, 1) => format!("x{d}"),
            _ => format!("x{d}_{}", pos + 1),
        });
    }
    out
}

/// Involutions preserving degrees and fixing the unit, one per pattern of
/// fixed points within each equal-degree block (pairs are taken between
/// consecutive elements, which is canonical up to relabelling).
fn dual_assignments(degrees: &[u64]) -> Vec<Vec<usize>> {
    let r = degrees.len();
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    let mut start = 1;
    for i in 2..=r {
        if i == r || degrees[i] != degrees[start] {
            blocks.push((start, i));
            start = i;
        }
    }
    let mut out = vec![(0..r).collect::<Vec<usize>>()];
    for &(lo, hi) in &blocks {
        let size = hi - lo;
        let mut next = Vec::new();
        for partial in &out {
            for pairs in 0..=size / 2 {
                let mut duals = partial.clone();
                for p in 0..pairs {
                    let (x, y) = (lo + 2 * p, lo + 2 * p + 1);
                    duals[x] = y;
                    duals[y] = x;
                }
                next.push(duals);
            }
        }
        out = next;
    }
    out
}

const UNASSIGNED: i64 = -1;

struct Problem {
    r: usize,
    degrees: Vec<u64>,
    duals: Vec<usize>,
    max_mult: u64,
    /// Orbit of each triple `a * r^2 + b * r + c`.
    orbit: Vec<usize>,
    /// Free orbits appearing in each row, with their degree weight.
    row_orbits: Vec<Vec<(usize, u64)>>,
    /// Rows (and counts of entries) touched by each orbit.
    orbit_rows: Vec<Vec<(usize, usize)>>,
    /// Contribution of fixed orbits to each row's degree sum.
    row_fixed: Vec<u64>,
    row_free_entries: Vec<usize>,
    /// Value of each orbit fixed by the unit law, or `UNASSIGNED`.
    fixed: Vec<i64>,
    /// Non-unit rows in processing order.
    rows: Vec<usize>,
}

#[derive(Clone)]
struct State {
    value: Vec<i64>,
    row_sum: Vec<u64>,
    row_open: Vec<usize>,
}

impl Problem {
    fn new(degrees: &[u64], duals: Vec<usize>, max_mult: u64) -> Option<Problem> {
        let r = degrees.len();
        let id = |a: usize, b: usize, c: usize| (a * r + b) * r + c;
        let mut parent: Vec<usize> = (0..r * r * r).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    let here = id(a, b, c);
                    for other in [
                        id(b, duals[c], duals[a]),
                        id(c, duals[b], a),
                        id(duals[b], duals[a], duals[c]),
                    ] {
                        let (x, y) = (find(&mut parent, here), find(&mut parent, other));
                        parent[x.max(y)] = x.min(y);
                    }
                }
            }
        }
        let roots: Vec<usize> = (0..r * r * r).map(|t| find(&mut parent, t)).collect();
        let mut renumber = BTreeMap::new();
        for &t in &roots {
            let next = renumber.len();
            renumber.entry(t).or_insert(next);
        }
        let orbit: Vec<usize> = roots.iter().map(|t| renumber[t]).collect();
        let count = renumber.len();

        // fixed values from the unit law
        let mut fixed: Vec<Option<i64>> = vec![None; count];
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    let v = if a == 0 {
                        Some((b == c) as i64)
                    } else if b == 0 {
                        Some((a == c) as i64)
                    } else if c == 0 {
                        Some((b == duals[a]) as i64)
                    } else {
                        None
                    };
                    if let Some(v) = v {
                        let o = orbit[id(a, b, c)];
                        match fixed[o] {
                            Some(w) if w != v => return None,
                            _ => fixed[o] = Some(v),
                        }
                    }
                }
            }
        }

        let mut row_orbits = vec![Vec::new(); r * r];
        let mut orbit_rows: Vec<Vec<(usize, usize)>> = vec![Vec::new(); count];
        let mut row_fixed = vec![0u64; r * r];
        let mut row_free_entries = vec![0usize; r * r];
        for a in 1..r {
            for b in 1..r {
                let row = a * r + b;
                let mut weights: BTreeMap<usize, (u64, usize)> = BTreeMap::new();
                for c in 0..r {
                    let o = orbit[id(a, b, c)];
                    match fixed[o] {
                        Some(v) => row_fixed[row] += v as u64 * degrees[c],
                        None => {
                            let w = weights.entry(o).or_insert((0, 0));
                            w.0 += degrees[c];
                            w.1 += 1;
                            row_free_entries[row] += 1;
                        }
                    }
                }
                for (o, (w, n)) in weights {
                    row_orbits[row].push((o, w));
                    orbit_rows[o].push((row, n));
                }
            }
        }
        let rows = (1..r)
            .flat_map(|a| (1..r).map(move |b| a * r + b))
            .collect();
        let problem = Problem {
            r,
            degrees: degrees.to_vec(),
            duals,
            max_mult,
            orbit,
            row_orbits,
            orbit_rows,
            row_fixed,
            row_free_entries,
            fixed: fixed.iter().map(|v| v.unwrap_or(UNASSIGNED)).collect(),
            rows,
        };
        Some(problem)
    }

    fn root_state(&self) -> State {
        State {
            value: self.fixed.clone(),
            row_sum: self.row_fixed.clone(),
            row_open: self.row_free_entries.clone(),
        }
    }

    fn target(&self, row: usize) -> u64 {
        self.degrees[row / self.r] * self.degrees[row % self.r]
    }

    fn n(&self, s: &State, a: usize, b: usize, c: usize) -> i64 {
        s.value[self.orbit[(a * self.r + b) * self.r + c]]
    }

    /// All consistent assignments of the open orbits in row `rows[step]`.
    fn expand(&self, state: &State, step: usize) -> Vec<State> {
        let row = self.rows[step];
        let open: Vec<(usize, u64)> = self.row_orbits[row]
            .iter()
            .copied()
            .filter(|&(o, _)| state.value[o] == UNASSIGNED)
            .collect();
        let remaining = self.target(row).saturating_sub(state.row_sum[row]);
        let mut out = Vec::new();
        let mut current = state.clone();
        self.assign(&open, 0, remaining, &mut current, &mut out);
        out.retain(|s| self.associative_so_far(s));
        out
    }

    fn assign(
        &self,
        open: &[(usize, u64)],
        k: usize,
        remaining: u64,
        s: &mut State,
        out: &mut Vec<State>,
    ) {
        if k == open.len() {
            if remaining == 0 {
                out.push(s.clone());
            }
            return;
        }
        let (o, w) = open[k];
        let cap = self.max_mult.min(remaining / w);
        for v in 0..=cap {
            if self.set(s, o, v) {
                self.assign(open, k + 1, remaining - v * w, s, out);
            }
            self.unset(s, o, v);
        }
    }

    /// Assigns orbit `o` and reports whether every touched row stays feasible.
    fn set(&self, s: &mut State, o: usize, v: u64) -> bool {
        s.value[o] = v as i64;
        let mut ok = true;
        for &(row, n) in &self.orbit_rows[o] {
            s.row_sum[row] += v * self.weight_in_row(row, o);
            s.row_open[row] -= n;
            let t = self.target(row);
            if s.row_sum[row] > t || (s.row_open[row] == 0 && s.row_sum[row] != t) {
                ok = false;
            }
        }
        ok
    }

    fn unset(&self, s: &mut State, o: usize, v: u64) {
        for &(row, n) in &self.orbit_rows[o] {
            s.row_sum[row] -= v * self.weight_in_row(row, o);
            s.row_open[row] += n;
        }
        s.value[o] = UNASSIGNED;
    }

    fn weight_in_row(&self, row: usize, o: usize) -> u64 {
        self.row_orbits[row]
            .iter()
            .find(|&&(p, _)| p == o)
            .map(|&(_, w)| w)
            .expect("orbit listed in row")
    }

    fn row_complete(&self, s: &State, a: usize, b: usize) -> bool {
        a == 0 || b == 0 || s.row_open[a * self.r + b] == 0
    }

    /// `(ab)c = a(bc)` for all triples whose needed rows are complete.
    fn associative_so_far(&self, s: &State) -> bool {
        let r = self.r;
        for a in 1..r {
            for b in 1..r {
                if !self.row_complete(s, a, b) {
                    continue;
                }
                for c in 1..r {
                    if !self.row_complete(s, b, c) {
                        continue;
                    }
                    let left_ready =
                        (0..r).all(|e| self.n(s, a, b, e) == 0 || self.row_complete(s, e, c));
                    let right_ready =
                        (0..r).all(|e| self.n(s, b, c, e) == 0 || self.row_complete(s, a, e));
                    if !left_ready || !right_ready {
                        continue;
                    }
                    for d in 0..r {
                        let left: i64 = (0..r)
                            .map(|e| self.n(s, a, b, e) * self.n(s, e, c, d))
                            .sum();
                        let right: i64 = (0..r)
                            .map(|e| self.n(s, b, c, e) * self.n(s, a, e, d))
                            .sum();
                        if left != right {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn search(&self, state: State, step: usize, out: &mut Vec<Vec<u64>>) {
        if step == self.rows.len() {
            out.push(self.table(&state));
            return;
        }
        for next in self.expand(&state, step) {
            self.search(next, step + 1, out);
        }
    }

    fn table(&self, s: &State) -> Vec<u64> {
        self.orbit.iter().map(|&o| s.value[o] as u64).collect()
    }
}

fn dense_table(ring: &FusionRing) -> Vec<u64> {
    let r = ring.rank();
    let mut t = vec![0u64; r * r * r];
    for a in 0..r {
        for b in 0..r {
            for (c, m) in ring.entry(a, b).known().expect("complete ring") {
                t[(a * r + b) * r + c] = *m;
            }
        }
    }
    t
}

fn build_ring(
    name: &str,
    labels: &[String],
    degrees: &[u64],
    duals: &[usize],
    table: &[u64],
) -> FusionRing {
    let r = labels.len();
    let mut b = FusionRing::builder(name);
    for i in 0..r {
        b.push_basis(labels[i].clone(), degrees[i], labels[duals[i]].clone());
    }
    b.set_unit(labels[0].clone());
    for x in 1..r {
        for y in 1..r {
            let terms: Vec<(String, u64)> = (0..r)
                .filter_map(|c| {
                    let m = table[(x * r + y) * r + c];
                    (m > 0).then(|| (labels[c].clone(), m))
                })
                .collect();
            b.push_product(labels[x].clone(), labels[y].clone(), terms);
        }
    }
    b.build().expect("search output is well formed")
}
