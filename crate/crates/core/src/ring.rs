//! Fusion rings with exact, checked integer arithmetic.
//!
//! A [`FusionRing`] stores its basis in canonical order (ascending degree,
//! then label) and one [`Entry`] per ordered pair of basis elements. An
//! entry is either the full decomposition of the product or `Unknown`, which
//! is how truncated and partially specified rings are represented.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("product {left} * {right} is not known")]
    UnknownProduct { left: String, right: String },
    #[error("integer overflow in ring arithmetic")]
    Overflow,
    #[error("invalid basis label `{0}` (expected [A-Za-z0-9_]+)")]
    InvalidLabel(String),
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("basis element `{0}` has degree 0")]
    ZeroDegree(String),
    #[error("dual of `{label}` is `{dual}`, which is not a basis element")]
    DanglingDual { label: String, dual: String },
    #[error("dual map is not an involution at `{0}`")]
    DualNotInvolution(String),
    #[error("`{label}` and its dual `{dual}` have different degrees")]
    DualDegreeMismatch { label: String, dual: String },
    #[error("no unit declared")]
    MissingUnit,
    #[error("unit `{0}` must have degree 1 and be self-dual")]
    BadUnit(String),
    #[error("product {left} * {right} declared twice")]
    DuplicateProduct { left: String, right: String },
    #[error("product {left} * {right} missing from a complete ring")]
    MissingProduct { left: String, right: String },
    #[error("product {left} * {right} has degree {found}, expected {expected}")]
    DegreeSumMismatch {
        left: String,
        right: String,
        expected: u64,
        found: u64,
    },
}

pub type Result<T, E = RingError> = std::result::Result<T, E>;

pub(crate) fn valid_label(label: &str) -> bool {
    !label.is_empty()
        && label
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisElement {
    pub label: String,
    pub degree: u64,
    pub dual_label: String,
}

/// A structure-constant row: `Known` holds the nonzero multiplicities of the
/// product, sorted by basis index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Entry {
    Known(Vec<(usize, u64)>),
    Unknown,
}

impl Entry {
    pub fn is_known(&self) -> bool {
        matches!(self, Entry::Known(_))
    }

    pub fn known(&self) -> Option<&[(usize, u64)]> {
        match self {
            Entry::Known(row) => Some(row),
            Entry::Unknown => None,
        }
    }

    /// Multiplicity of basis index `c`, or `None` when the row is unknown.
    pub fn coefficient(&self, c: usize) -> Option<u64> {
        self.known().map(|row| {
            row.iter()
                .find(|(i, _)| *i == c)
                .map(|(_, n)| *n)
                .unwrap_or(0)
        })
    }
}

/// Integer combination of basis elements, stored sparsely by basis index.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    coords: BTreeMap<usize, i64>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basic(index: usize) -> Self {
        Self::from_terms([(index, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut out = Self::zero();
        for (i, c) in terms {
            out.add_term(i, c).expect("term overflow");
        }
        out
    }

    pub fn coefficient(&self, index: usize) -> i64 {
        self.coords.get(&index).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coords.iter().map(|(&i, &c)| (i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coords.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Number of basic components counted with multiplicity (nonnegative
    /// elements only; negative coefficients count by absolute value).
    pub fn component_count(&self) -> u64 {
        self.coords.values().map(|c| c.unsigned_abs()).sum()
    }

    /// Membership in the positive cone: every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.coords.values().all(|&c| c >= 0)
    }

    /// The basis index if this element is a single basic element with
    /// coefficient one.
    pub fn as_basic(&self) -> Option<usize> {
        match self.coords.iter().next() {
            Some((&i, &1)) if self.coords.len() == 1 => Some(i),
            _ => None,
        }
    }

    pub fn add_term(&mut self, index: usize, coeff: i64) -> Result<()> {
        if coeff == 0 {
            return Ok(());
        }
        let slot = self.coords.entry(index).or_insert(0);
        *slot = slot.checked_add(coeff).ok_or(RingError::Overflow)?;
        if *slot == 0 {
            self.coords.remove(&index);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i, c)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i, c.checked_neg().ok_or(RingError::Overflow)?)?;
        }
        Ok(out)
    }

    pub fn checked_scale(&self, k: i64) -> Result<Self> {
        let mut out = Self::zero();
        for (i, c) in self.terms() {
            out.add_term(i, c.checked_mul(k).ok_or(RingError::Overflow)?)?;
        }
        Ok(out)
    }

    /// True when `other - self` is nonnegative.
    pub fn le(&self, other: &Self) -> bool {
        self.coords.iter().all(|(i, &c)| other.coefficient(*i) >= c)
    }
}

/// Canonical, immutable fusion ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRing {
    name: String,
    basis: Vec<BasisElement>,
    duals: Vec<usize>,
    unit: usize,
    table: Vec<Entry>,
    partial: bool,
    truncation: Option<u64>,
    index: HashMap<String, usize>,
}

impl FusionRing {
    pub fn builder(name: impl Into<String>) -> FusionRingBuilder {
        FusionRingBuilder::new(name)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn is_partial(&self) -> bool {
        self.partial
    }

    pub fn truncation(&self) -> Option<u64> {
        self.truncation
    }

    /// True when every product is known.
    pub fn is_complete(&self) -> bool {
        self.table.iter().all(Entry::is_known)
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn degree_of(&self, i: usize) -> u64 {
        self.basis[i].degree
    }

    pub fn dual_index(&self, i: usize) -> usize {
        self.duals[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| RingError::UnknownLabel(label.to_string()))
    }

    pub fn entry(&self, a: usize, b: usize) -> &Entry {
        &self.table[a * self.rank() + b]
    }

    /// Degree-one basis elements in canonical order.
    pub fn grouplikes(&self) -> Vec<usize> {
        (0..self.rank())
            .filter(|&i| self.degree_of(i) == 1)
            .collect()
    }

    /// Sum of squared degrees over the basis.
    pub fn dimension(&self) -> u64 {
        self.basis.iter().map(|b| b.degree * b.degree).sum()
    }

    pub fn has_even_degree(&self) -> Option<usize> {
        (0..self.rank()).find(|&i| self.degree_of(i).is_multiple_of(2))
    }

    pub fn element(&self, label: &str) -> Result<RingElement> {
        Ok(RingElement::basic(self.index_of(label)?))
    }

    pub fn unit_element(&self) -> RingElement {
        RingElement::basic(self.unit)
    }

    /// Product of two basis elements; `UnknownProduct` stands for the
    /// three-valued `Unknown` outcome.
    pub fn product(&self, a: usize, b: usize) -> Result<RingElement> {
        match self.entry(a, b) {
            Entry::Known(row) => {
                let mut out = RingElement::zero();
                for &(c, n) in row {
                    out.add_term(c, i64::try_from(n).map_err(|_| RingError::Overflow)?)?;
                }
                Ok(out)
            }
            Entry::Unknown => Err(RingError::UnknownProduct {
                left: self.label(a).to_string(),
                right: self.label(b).to_string(),
            }),
        }
    }

    /// Bilinear extension of the structure constants. Any contributing
    /// unknown basic product makes the whole result unknown.
    pub fn multiply(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        let mut out = RingElement::zero();
        for (i, ca) in a.terms() {
            for (j, cb) in b.terms() {
                let scale = ca.checked_mul(cb).ok_or(RingError::Overflow)?;
                let Entry::Known(row) = self.entry(i, j) else {
                    return Err(RingError::UnknownProduct {
                        left: self.label(i).to_string(),
                        right: self.label(j).to_string(),
                    });
                };
                for &(c, n) in row {
                    let n = i64::try_from(n).map_err(|_| RingError::Overflow)?;
                    out.add_term(c, n.checked_mul(scale).ok_or(RingError::Overflow)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Biadditive multiplicity `m(w, z) = sum_x m(x, w) m(x, z)`.
    pub fn multiplicity(&self, w: &RingElement, z: &RingElement) -> Result<i64> {
        let mut total: i64 = 0;
        for (i, c) in w.terms() {
            let term = c.checked_mul(z.coefficient(i)).ok_or(RingError::Overflow)?;
            total = total.checked_add(term).ok_or(RingError::Overflow)?;
        }
        Ok(total)
    }

    pub fn dual(&self, z: &RingElement) -> RingElement {
        RingElement::from_terms(z.terms().map(|(i, c)| (self.duals[i], c)))
    }

    pub fn degree(&self, z: &RingElement) -> Result<i64> {
        let mut total: i64 = 0;
        for (i, c) in z.terms() {
            let d = i64::try_from(self.degree_of(i)).map_err(|_| RingError::Overflow)?;
            total = c
                .checked_mul(d)
                .and_then(|t| total.checked_add(t))
                .ok_or(RingError::Overflow)?;
        }
        Ok(total)
    }

    /// Nonzero coordinates in canonical basis order.
    pub fn decompose(&self, z: &RingElement) -> Vec<(String, i64)> {
        z.terms()
            .map(|(i, c)| (self.label(i).to_string(), c))
            .collect()
    }

    /// Human-readable form such as `1 + x3 + 2x5`.
    pub fn display(&self, z: &RingElement) -> String {
        if z.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (i, c)) in z.terms().enumerate() {
            let label = self.label(i);
            let (sign, abs) = if c < 0 { ("-", -c) } else { ("+", c) };
            if k == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if abs != 1 {
                out.push_str(&abs.to_string());
            }
            out.push_str(label);
        }
        out
    }

    /// Returns a copy with one product row replaced. Intended for building
    /// corrupted fixtures and for search; no validation is performed.
    pub fn with_entry(&self, a: usize, b: usize, entry: Entry) -> FusionRing {
        let mut out = self.clone();
        let r = out.rank();
        out.table[a * r + b] = entry;
        out
    }

    /// Checks the degree sum of every known row, reporting the first
    /// mismatch in canonical order.
    pub fn validate_degree_sums(&self) -> Result<()> {
        for a in 0..self.rank() {
            for b in 0..self.rank() {
                if let Entry::Known(row) = self.entry(a, b) {
                    let expected = self.degree_of(a) * self.degree_of(b);
                    let found: u64 = row.iter().map(|&(c, n)| n * self.degree_of(c)).sum();
                    if found != expected {
                        return Err(RingError::DegreeSumMismatch {
                            left: self.label(a).to_string(),
                            right: self.label(b).to_string(),
                            expected,
                            found,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Encoding that is invariant under relabelings preserving degrees and
    /// the unit: the lexicographically smallest table over all permutations
    /// within equal-degree blocks.
    pub fn canonical_form(&self) -> Vec<u64> {
        let r = self.rank();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for i in 0..r {
            if i == self.unit {
                continue;
            }
            match blocks.last_mut() {
                Some(block) if self.degree_of(block[0]) == self.degree_of(i) => block.push(i),
                _ => blocks.push(vec![i]),
            }
        }
        let mut best: Option<Vec<u64>> = None;
        let mut perm = vec![0usize; r];
        perm[self.unit] = self.unit;
        let mut slots = Vec::new();
        for block in &blocks {
            slots.push(block.clone());
        }
        fn recurse(
            ring: &FusionRing,
            blocks: &[Vec<usize>],
            depth: usize,
            perm: &mut Vec<usize>,
            best: &mut Option<Vec<u64>>,
        ) {
            if depth == blocks.len() {
                let enc = ring.encode_under(perm);
                if best.as_ref().is_none_or(|b| enc < *b) {
                    *best = Some(enc);
                }
                return;
            }
            let block = &blocks[depth];
            let mut order = block.clone();
            permute_all(&mut order, 0, &mut |p| {
                for (src, dst) in block.iter().zip(p.iter()) {
                    perm[*src] = *dst;
                }
                recurse(ring, blocks, depth + 1, perm, best);
            });
        }
        recurse(self, &slots, 0, &mut perm, &mut best);
        best.unwrap_or_default()
    }

    fn encode_under(&self, perm: &[usize]) -> Vec<u64> {
        // perm maps old index -> new index
        let r = self.rank();
        let mut inv = vec![0usize; r];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let mut enc = Vec::with_capacity(r + r * r * (r + 1));
        for new in 0..r {
            enc.push(perm[self.duals[inv[new]]] as u64);
        }
        for na in 0..r {
            for nb in 0..r {
                match self.entry(inv[na], inv[nb]) {
                    Entry::Unknown => {
                        enc.push(u64::MAX);
                        enc.extend(std::iter::repeat_n(0, r));
                    }
                    Entry::Known(row) => {
                        enc.push(0);
                        let mut dense = vec![0u64; r];
                        for &(c, n) in row {
                            dense[perm[c]] = n;
                        }
                        enc.extend(dense);
                    }
                }
            }
        }
        enc
    }

    /// Isomorphism up to degree- and unit-preserving relabeling.
    pub fn is_isomorphic(&self, other: &FusionRing) -> bool {
        let mut da: Vec<u64> = self.basis.iter().map(|b| b.degree).collect();
        let mut db: Vec<u64> = other.basis.iter().map(|b| b.degree).collect();
        da.sort_unstable();
        db.sort_unstable();
        da == db && self.canonical_form() == other.canonical_form()
    }
}

fn permute_all(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute_all(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Collects labels, duals and product rows, then sorts the basis into
/// canonical order and validates the structural invariants.
/// `(left, right, [(component, multiplicity)])` as declared to a builder.
pub(crate) type ProductLine = (String, String, Vec<(String, u64)>);

#[derive(Debug, Clone)]
pub struct FusionRingBuilder {
    name: String,
    basis: Vec<BasisElement>,
    unit: Option<String>,
    products: Vec<ProductLine>,
    partial: bool,
    truncation: Option<u64>,
}

impl FusionRingBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            basis: Vec::new(),
            unit: None,
            products: Vec::new(),
            partial: false,
            truncation: None,
        }
    }

    pub fn basis(mut self, label: impl Into<String>, degree: u64, dual: impl Into<String>) -> Self {
        self.push_basis(label, degree, dual);
        self
    }

    pub fn push_basis(&mut self, label: impl Into<String>, degree: u64, dual: impl Into<String>) {
        self.basis.push(BasisElement {
            label: label.into(),
            degree,
            dual_label: dual.into(),
        });
    }

    pub fn unit(mut self, label: impl Into<String>) -> Self {
        self.unit = Some(label.into());
        self
    }

    pub fn set_unit(&mut self, label: impl Into<String>) {
        self.unit = Some(label.into());
    }

    pub fn partial(mut self, partial: bool) -> Self {
        self.partial = partial;
        self
    }

    pub fn set_partial(&mut self, partial: bool) {
        self.partial = partial;
    }

    pub fn truncation(mut self, bound: Option<u64>) -> Self {
        self.truncation = bound;
        self
    }

    pub fn set_truncation(&mut self, bound: Option<u64>) {
        self.truncation = bound;
    }

    pub fn product<L: Into<String>>(
        mut self,
        a: impl Into<String>,
        b: impl Into<String>,
        terms: impl IntoIterator<Item = (L, u64)>,
    ) -> Self {
        self.push_product(a, b, terms);
        self
    }

    pub fn push_product<L: Into<String>>(
        &mut self,
        a: impl Into<String>,
        b: impl Into<String>,
        terms: impl IntoIterator<Item = (L, u64)>,
    ) {
        self.products.push((
            a.into(),
            b.into(),
            terms.into_iter().map(|(l, n)| (l.into(), n)).collect(),
        ));
    }

    pub fn build(self) -> Result<FusionRing> {
        let mut basis = self.basis;
        basis.sort_by(|x, y| (x.degree, &x.label).cmp(&(y.degree, &y.label)));

        let mut index = HashMap::with_capacity(basis.len());
        for (i, b) in basis.iter().enumerate() {
            if !valid_label(&b.label) {
                return Err(RingError::InvalidLabel(b.label.clone()));
            }
            if b.degree == 0 {
                return Err(RingError::ZeroDegree(b.label.clone()));
            }
            if index.insert(b.label.clone(), i).is_some() {
                return Err(RingError::DuplicateLabel(b.label.clone()));
            }
        }

        let mut duals = Vec::with_capacity(basis.len());
        for b in &basis {
            let d = *index
                .get(&b.dual_label)
                .ok_or_else(|| RingError::DanglingDual {
                    label: b.label.clone(),
                    dual: b.dual_label.clone(),
                })?;
            duals.push(d);
        }
        for (i, b) in basis.iter().enumerate() {
            if duals[duals[i]] != i {
                return Err(RingError::DualNotInvolution(b.label.clone()));
            }
            if basis[duals[i]].degree != b.degree {
                return Err(RingError::DualDegreeMismatch {
                    label: b.label.clone(),
                    dual: b.dual_label.clone(),
                });
            }
        }

        let unit_label = self.unit.ok_or(RingError::MissingUnit)?;
        let unit = *index
            .get(&unit_label)
            .ok_or_else(|| RingError::UnknownLabel(unit_label.clone()))?;
        if basis[unit].degree != 1 || duals[unit] != unit {
            return Err(RingError::BadUnit(unit_label));
        }

        let r = basis.len();
        let mut table: Vec<Option<Entry>> = vec![None; r * r];
        let lookup = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| RingError::UnknownLabel(l.to_string()))
        };
        for (a, b, terms) in self.products {
            let (ia, ib) = (lookup(&a)?, lookup(&b)?);
            let mut row: BTreeMap<usize, u64> = BTreeMap::new();
            for (l, n) in terms {
                let c = lookup(&l)?;
                let slot = row.entry(c).or_insert(0);
                *slot = slot.checked_add(n).ok_or(RingError::Overflow)?;
            }
            row.retain(|_, n| *n != 0);
            let slot = &mut table[ia * r + ib];
            if slot.is_some() {
                return Err(RingError::DuplicateProduct { left: a, right: b });
            }
            *slot = Some(Entry::Known(row.into_iter().collect()));
        }

        let mut out = Vec::with_capacity(r * r);
        for a in 0..r {
            for b in 0..r {
                let entry = match table[a * r + b].take() {
                    Some(e) => e,
                    None if a == unit => Entry::Known(vec![(b, 1)]),
                    None if b == unit => Entry::Known(vec![(a, 1)]),
                    None if self.partial => Entry::Unknown,
                    None => {
                        return Err(RingError::MissingProduct {
                            left: basis[a].label.clone(),
                            right: basis[b].label.clone(),
                        })
                    }
                };
                out.push(entry);
            }
        }

        Ok(FusionRing {
            name: self.name,
            basis,
            duals,
            unit,
            table: out,
            partial: self.partial,
            truncation: self.truncation,
            index,
        })
    }
}

impl fmt::Display for FusionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (rank {})", self.name, self.rank())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3() -> FusionRing {
        FusionRing::builder("z3")
            .basis("1", 1, "1")
            .basis("g", 1, "g2")
            .basis("g2", 1, "g")
            .unit("1")
            .product("g", "g", [("g2", 1)])
            .product("g", "g2", [("1", 1)])
            .product("g2", "g", [("1", 1)])
            .product("g2", "g2", [("g", 1)])
            .build()
            .unwrap()
    }

    #[test]
    fn element_from_basis() {
        let r = z3();
        assert_eq!(r.element("1").unwrap(), r.unit_element());
        assert_eq!(r.element("g").unwrap(), RingElement::basic(1));
        assert_eq!(r.element("zz"), Err(RingError::UnknownLabel("zz".into())));
    }

    #[test]
    fn group_product_and_inverse() {
        let r = z3();
        let g = r.element("g").unwrap();
        let g2 = r.element("g2").unwrap();
        assert_eq!(r.multiply(&g, &g2).unwrap(), r.unit_element());
        assert_eq!(r.multiply(&r.unit_element(), &g).unwrap(), g);
        assert_eq!(r.dual(&g), g2);
    }

    #[test]
    fn multiplicity_and_degree() {
        let r = z3();
        let one = r.unit_element();
        assert_eq!(r.multiplicity(&one, &one).unwrap(), 1);
        let sum = one.checked_add(&r.element("g").unwrap()).unwrap();
        assert_eq!(r.degree(&sum).unwrap(), 2);
        assert_eq!(r.decompose(&sum), vec![("1".into(), 1), ("g".into(), 1)]);
    }

    #[test]
    fn nonnegativity() {
        let r = z3();
        let g = r.element("g").unwrap();
        assert!(g.checked_add(&r.unit_element()).unwrap().is_nonnegative());
        assert!(!g.checked_sub(&r.unit_element()).unwrap().is_nonnegative());
    }

    #[test]
    fn overflow_is_reported() {
        let r = z3();
        let big = RingElement::from_terms([(1, i64::MAX)]);
        let two = RingElement::from_terms([(1, 2)]);
        assert_eq!(r.multiply(&big, &two), Err(RingError::Overflow));
    }

    #[test]
    fn unknown_products_propagate() {
        let r = FusionRing::builder("p")
            .basis("1", 1, "1")
            .basis("x", 3, "x")
            .unit("1")
            .partial(true)
            .build()
            .unwrap();
        let x = r.element("x").unwrap();
        assert!(matches!(
            r.multiply(&x, &x),
            Err(RingError::UnknownProduct { .. })
        ));
        // unit rows are implied even in partial rings
        assert_eq!(r.multiply(&r.unit_element(), &x).unwrap(), x);
    }

    #[test]
    fn builder_rejects_bad_structure() {
        let dangling = FusionRing::builder("d")
            .basis("1", 1, "1")
            .basis("a", 3, "b")
            .unit("1")
            .build();
        assert!(matches!(dangling, Err(RingError::DanglingDual { .. })));

        let missing = FusionRing::builder("m")
            .basis("1", 1, "1")
            .basis("a", 1, "a")
            .unit("1")
            .build();
        assert!(matches!(missing, Err(RingError::MissingProduct { .. })));

        let bad_unit = FusionRing::builder("u")
            .basis("1", 3, "1")
            .unit("1")
            .build();
        assert_eq!(bad_unit, Err(RingError::BadUnit("1".into())));
    }

    #[test]
    fn canonical_order_is_degree_then_label() {
        let r = FusionRing::builder("o")
            .basis("b", 3, "b")
            .basis("a", 3, "a")
            .basis("1", 1, "1")
            .unit("1")
            .partial(true)
            .build()
            .unwrap();
        let labels: Vec<_> = r.basis().iter().map(|b| b.label.as_str()).collect();
        assert_eq!(labels, ["1", "a", "b"]);
    }

    #[test]
    fn relabeling_preserves_canonical_form() {
        let a = z3();
        let b = FusionRing::builder("z3'")
            .basis("1", 1, "1")
            .basis("p", 1, "q")
            .basis("q", 1, "p")
            .unit("1")
            .product("p", "p", [("q", 1)])
            .product("p", "q", [("1", 1)])
            .product("q", "p", [("1", 1)])
            .product("q", "q", [("p", 1)])
            .build()
            .unwrap();
        assert!(a.is_isomorphic(&b));
    }
}
