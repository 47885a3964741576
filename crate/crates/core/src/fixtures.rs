//! Character-table fixtures shipped with the crate and the reference corpus
//! built from them.

use crate::chartable::{char_table_ring, parse_character_table};
use crate::oracles::{cyclic_group_ring, proof_fragment_ring, so3_truncated};
use crate::ring::FusionRing;

pub const S3_TABLE: &str = include_str!("../fixtures/s3.chartab");
pub const A4_TABLE: &str = include_str!("../fixtures/a4.chartab");
pub const F21_TABLE: &str = include_str!("../fixtures/f21.chartab");
pub const Z5_TABLE: &str = include_str!("../fixtures/z5.chartab");
pub const Z6_TABLE: &str = include_str!("../fixtures/z6.chartab");

pub const CHARACTER_TABLES: [&str; 5] = [S3_TABLE, A4_TABLE, F21_TABLE, Z5_TABLE, Z6_TABLE];

fn table_ring(text: &str) -> FusionRing {
    let table = parse_character_table(text).expect("fixture table parses");
    char_table_ring(&table).expect("fixture table yields a ring")
}

pub fn s3_ring() -> FusionRing {
    table_ring(S3_TABLE)
}

pub fn a4_ring() -> FusionRing {
    table_ring(A4_TABLE)
}

pub fn f21_ring() -> FusionRing {
    table_ring(F21_TABLE)
}

/// Every complete reference ring: cyclic group rings of order 1..=8 and the
/// character rings of all shipped tables.
pub fn complete_corpus() -> Vec<FusionRing> {
    let mut out: Vec<FusionRing> = (1..=8).map(cyclic_group_ring).collect();
    out.extend(CHARACTER_TABLES.iter().map(|t| table_ring(t)));
    out
}

/// The complete corpus plus the partial fixtures (truncated SO(3) rings and
/// the proof fragment).
pub fn full_corpus() -> Vec<FusionRing> {
    let mut out = complete_corpus();
    out.extend([3, 5, 9, 21].into_iter().map(so3_truncated));
    out.push(proof_fragment_ring());
    out
}
