//! Exact arithmetic on fusion rings: axiom checking, standard subrings and
//! freeness, character-table rings, the degree-3 ladder analysis and a small
//! exhaustive ring search.

pub mod axioms;
pub mod chartable;
pub mod cyclotomic;
pub mod fixtures;
pub mod oracles;
pub mod ring;
pub mod search;
pub mod spec_format;
pub mod subring;
pub mod theorem;

pub use axioms::{
    check_axioms, check_stabilizer_rule, CheckEntry, CheckReport, CheckStatus, Witness,
};
pub use chartable::{char_table_ring, parse_character_table, CharacterTable, ChartableError};
pub use cyclotomic::{CyclotomicError, CyclotomicValue};
pub use ring::{BasisElement, Entry, FusionRing, FusionRingBuilder, RingElement, RingError};
pub use search::{enumerate_rings, SearchError, SearchOptions};
pub use spec_format::{parse_spec, write_spec, SpecError};
pub use subring::{
    closure, enumerate_standard_subrings, freeness_obstructions, grouplike_group,
    ring_freeness_obstructions, stabilizer_group, Closure, EnumerationOptions, FreenessViolation,
    GrouplikeGroup, StandardSubring, SubringError,
};
pub use theorem::{
    ladder_build, lemma32_cases, lemma33_selfdual_chain, theorem_verdict, validate_triple,
    Diagnosis, LadderCertificate, Lemma32Result, Lemma33Result, TerminalStatus, TheoremError,
    TripleOutcome, Verdict,
};
