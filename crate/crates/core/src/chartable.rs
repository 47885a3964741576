//! Character tables with cyclotomic values and the character rings they
//! determine.
//!
//! Table file format, one directive per line, `#` starts a comment:
//!
//! ```text
//! group A4 12
//! conductor 3
//! class 1
//! class 3
//! class 4
//! class 4
//! char 1 1 1 1 1
//! char s 1 1 1 z z^2
//! char s2 1 1 1 z^2 z
//! char x3 3 3 -1 0 0
//! dualpair 1 2
//! ```
//!
//! A `char` row may start with a label; otherwise the trivial character is
//! labelled `1` and the others `chi<i>`. Values are sums of terms
//! `c`, `z`, `z^k`, `c*z^k` in a primitive `N`-th root of unity `z`.
//! `dualpair` takes zero-based row indices; rows not mentioned are self-dual.

use serde::Serialize;
use thiserror::Error;

use crate::cyclotomic::{CyclotomicError, CyclotomicValue};
use crate::ring::{valid_label, FusionRing, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChartableError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Semantic(String),
    #[error("<{left} {right}, {target}> = {value} / {order} is not a nonnegative integer")]
    NotIntegral {
        left: String,
        right: String,
        target: String,
        value: String,
        order: u64,
    },
    #[error("characters {0} and {1} violate row orthogonality")]
    OrthogonalityFailure(String, String),
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Character {
    pub label: String,
    pub degree: u64,
    #[serde(skip)]
    pub values: Vec<CyclotomicValue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterTable {
    pub name: String,
    pub group_order: u64,
    pub conductor: usize,
    pub class_sizes: Vec<u64>,
    pub characters: Vec<Character>,
    pub conjugate_map: Vec<usize>,
}

impl CharacterTable {
    /// Checks class sizes, degrees, the declared dual pairs and row
    /// orthogonality, all in exact arithmetic.
    pub fn validate(&self) -> Result<(), ChartableError> {
        let total: u64 = self.class_sizes.iter().sum();
        if total != self.group_order {
            return Err(ChartableError::Semantic(format!(
                "class sizes sum to {total}, group order is {}",
                self.group_order
            )));
        }
        if self.class_sizes.first() != Some(&1) {
            return Err(ChartableError::Semantic(
                "the first class must be the identity (size 1)".into(),
            ));
        }
        for ch in &self.characters {
            if ch.values.len() != self.class_sizes.len() {
                return Err(ChartableError::Semantic(format!(
                    "character {} has {} values for {} classes",
                    ch.label,
                    ch.values.len(),
                    self.class_sizes.len()
                )));
            }
            if ch.values[0].as_integer() != Some(ch.degree as i64) {
                return Err(ChartableError::Semantic(format!(
                    "character {} has degree {} but value {} at the identity",
                    ch.label, ch.degree, ch.values[0]
                )));
            }
        }
        for (i, &j) in self.conjugate_map.iter().enumerate() {
            let a = &self.characters[i];
            let b = &self.characters[j];
            let conj_matches = a.values.iter().zip(&b.values).all(|(x, y)| x.conj() == *y);
            if !conj_matches {
                return Err(ChartableError::Semantic(format!(
                    "{} is not the complex conjugate of {}",
                    b.label, a.label
                )));
            }
        }
        for i in 0..self.characters.len() {
            for j in 0..self.characters.len() {
                let inner = self.inner_product(&[i], j)?;
                if inner.as_integer() != Some(if i == j { self.group_order as i64 } else { 0 }) {
                    return Err(ChartableError::OrthogonalityFailure(
                        self.characters[i].label.clone(),
                        self.characters[j].label.clone(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// `|G| <prod_i chi_i, chi_target>` as an exact cyclotomic value.
    fn inner_product(
        &self,
        factors: &[usize],
        target: usize,
    ) -> Result<CyclotomicValue, ChartableError> {
        let n = self.conductor;
        let mut total = CyclotomicValue::zero(n);
        for (c, &size) in self.class_sizes.iter().enumerate() {
            let mut term = self.characters[target].values[c].conj();
            for &f in factors {
                term = term.mul(&self.characters[f].values[c])?;
            }
            total = total.add(&term.scale(size as i64)?)?;
        }
        Ok(total)
    }
}

/// The character ring of `table`: structure constants are the exact inner
/// products `<chi_i chi_j, chi_k>`, and the dual is complex conjugation.
pub fn char_table_ring(table: &CharacterTable) -> Result<FusionRing, ChartableError> {
    table.validate()?;
    let trivial = table
        .characters
        .iter()
        .position(|c| c.degree == 1 && c.values.iter().all(|v| v.as_integer() == Some(1)))
        .ok_or_else(|| ChartableError::Semantic("no trivial character".into()))?;

    let mut builder = FusionRing::builder(table.name.clone());
    for (i, ch) in table.characters.iter().enumerate() {
        builder.push_basis(
            ch.label.clone(),
            ch.degree,
            table.characters[table.conjugate_map[i]].label.clone(),
        );
    }
    builder.set_unit(table.characters[trivial].label.clone());

    let k = table.characters.len();
    for i in 0..k {
        for j in 0..k {
            let mut terms = Vec::new();
            for t in 0..k {
                let raw = table.inner_product(&[i, j], t)?;
                let value = raw
                    .as_integer()
                    .filter(|v| *v >= 0 && (*v as u64).is_multiple_of(table.group_order))
                    .ok_or_else(|| ChartableError::NotIntegral {
                        left: table.characters[i].label.clone(),
                        right: table.characters[j].label.clone(),
                        target: table.characters[t].label.clone(),
                        value: raw.to_string(),
                        order: table.group_order,
                    })?;
                let mult = value as u64 / table.group_order;
                if mult > 0 {
                    terms.push((table.characters[t].label.clone(), mult));
                }
            }
            builder.push_product(
                table.characters[i].label.clone(),
                table.characters[j].label.clone(),
                terms,
            );
        }
    }
    Ok(builder.build()?)
}

/// Character table of the cyclic group of order `n`; the character
/// `g^j -> zeta^(jk)` is labelled `gk` (the trivial one `1`).
pub fn cyclic_character_table(n: usize) -> CharacterTable {
    assert!(n >= 1, "group order must be positive");
    let characters = (0..n)
        .map(|k| Character {
            label: if k == 0 {
                "1".to_string()
            } else {
                format!("g{k}")
            },
            degree: 1,
            values: (0..n)
                .map(|j| CyclotomicValue::monomial(n, 1, (j * k) as i64))
                .collect(),
        })
        .collect();
    CharacterTable {
        name: format!("Z{n}_characters"),
        group_order: n as u64,
        conductor: n,
        class_sizes: vec![1; n],
        characters,
        conjugate_map: (0..n).map(|k| (n - k) % n).collect(),
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ChartableError {
    ChartableError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Parses a cyclotomic value such as `z^3+z^6+z^12`, `-1` or `2*z`.
pub fn parse_value(token: &str, conductor: usize) -> Result<CyclotomicValue, String> {
    let bytes = token.as_bytes();
    let mut value = CyclotomicValue::zero(conductor);
    let mut pos = 0;
    if bytes.is_empty() {
        return Err("empty value".into());
    }
    while pos < bytes.len() {
        let mut sign = 1i64;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            if bytes[pos] == b'-' {
                sign = -1;
            }
            pos += 1;
        } else if pos != 0 {
            return Err(format!("expected + or - at offset {pos}"));
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let coeff: Option<i64> = if pos > start {
            Some(
                token[start..pos]
                    .parse()
                    .map_err(|_| "coefficient out of range")?,
            )
        } else {
            None
        };
        let mut power = 0i64;
        let has_star = pos < bytes.len() && bytes[pos] == b'*';
        if has_star {
            if coeff.is_none() {
                return Err("`*` without a coefficient".into());
            }
            pos += 1;
        }
        if pos < bytes.len() && bytes[pos] == b'z' {
            pos += 1;
            power = 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                let s = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if s == pos {
                    return Err("missing exponent after `^`".into());
                }
                power = token[s..pos].parse().map_err(|_| "exponent out of range")?;
            }
        } else if has_star || coeff.is_none() {
            return Err(format!("expected `z` at offset {pos}"));
        }
        let term = CyclotomicValue::monomial(conductor, sign * coeff.unwrap_or(1), power);
        value = value.add(&term).map_err(|e| e.to_string())?;
    }
    Ok(value)
}

/// Parses the character-table text format described in the module docs.
pub fn parse_character_table(text: &str) -> Result<CharacterTable, ChartableError> {
    let mut name = None;
    let mut order = None;
    let mut conductor: Option<usize> = None;
    let mut classes = Vec::new();
    let mut rows: Vec<(Option<String>, u64, Vec<CyclotomicValue>, usize)> = Vec::new();
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<(usize, &str)> = tokenize(content);
        let Some(&(col, keyword)) = tokens.first() else {
            continue;
        };
        let arg = |k: usize| -> Result<(usize, &str), ChartableError> {
            tokens.get(k).copied().ok_or_else(|| {
                syntax(
                    line_no,
                    content.len() + 1,
                    format!("`{keyword}` needs more arguments"),
                )
            })
        };
        let number = |k: usize| -> Result<u64, ChartableError> {
            let (c, t) = arg(k)?;
            t.parse::<u64>().map_err(|_| {
                syntax(
                    line_no,
                    c,
                    format!("expected a nonnegative integer, found `{t}`"),
                )
            })
        };
        let expect_len = |n: usize| -> Result<(), ChartableError> {
            match tokens.get(n) {
                Some(&(c, t)) => Err(syntax(line_no, c, format!("unexpected token `{t}`"))),
                None => Ok(()),
            }
        };
        match keyword {
            "group" => {
                name = Some(arg(1)?.1.to_string());
                order = Some(number(2)?);
                expect_len(3)?;
            }
            "conductor" => {
                let n = number(1)?;
                if n == 0 {
                    return Err(syntax(line_no, arg(1)?.0, "conductor must be positive"));
                }
                conductor = Some(n as usize);
                expect_len(2)?;
            }
            "class" => {
                classes.push(number(1)?);
                expect_len(2)?;
            }
            "char" => {
                let n = conductor
                    .ok_or_else(|| syntax(line_no, col, "`conductor` must precede `char`"))?;
                let (c1, first) = arg(1)?;
                // a label is present when the line has one token more than
                // `char <degree> <values>` needs for the declared classes
                let labelled = if classes.is_empty() {
                    first.parse::<u64>().is_err()
                } else {
                    tokens.len() == classes.len() + 3
                };
                let (label, degree_at) = if !labelled {
                    (None, 1)
                } else if valid_label(first) {
                    (Some(first.to_string()), 2)
                } else {
                    return Err(syntax(line_no, c1, format!("invalid label `{first}`")));
                };
                let degree = number(degree_at)?;
                let mut values = Vec::new();
                for &(c, t) in &tokens[degree_at + 1..] {
                    values.push(parse_value(t, n).map_err(|m| syntax(line_no, c, m))?);
                }
                rows.push((label, degree, values, line_no));
            }
            "dualpair" => {
                let i = number(1)? as usize;
                let j = number(2)? as usize;
                expect_len(3)?;
                pairs.push((i, j, line_no));
            }
            other => return Err(syntax(line_no, col, format!("unknown directive `{other}`"))),
        }
    }

    let name = name.ok_or_else(|| ChartableError::Semantic("missing `group` line".into()))?;
    let group_order = order.unwrap_or(0);
    let conductor =
        conductor.ok_or_else(|| ChartableError::Semantic("missing `conductor` line".into()))?;

    let mut characters = Vec::with_capacity(rows.len());
    for (i, (label, degree, values, _)) in rows.into_iter().enumerate() {
        let trivial = degree == 1 && values.iter().all(|v| v.as_integer() == Some(1));
        let label = label.unwrap_or_else(|| {
            if trivial {
                "1".into()
            } else {
                format!("chi{i}")
            }
        });
        characters.push(Character {
            label,
            degree,
            values,
        });
    }
    let k = characters.len();
    let mut conjugate_map: Vec<usize> = (0..k).collect();
    for (i, j, line) in pairs {
        if i >= k || j >= k {
            return Err(ChartableError::Semantic(format!(
                "line {line}: dualpair index out of range (have {k} characters)"
            )));
        }
        conjugate_map[i] = j;
        conjugate_map[j] = i;
    }
    let table = CharacterTable {
        name,
        group_order,
        conductor,
        class_sizes: classes,
        characters,
        conjugate_map,
    };
    table.validate()?;
    Ok(table)
}

pub(crate) fn tokenize(content: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &content[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &content[s..]));
    }
    out
}
