//! Shared inputs for the criterion benchmarks.

use fusionring::fixtures::full_corpus;
use fusionring::oracles::so3_truncated;
use fusionring::FusionRing;

/// Rings used by the axiom-checking benchmarks.
pub fn corpus() -> Vec<FusionRing> {
    full_corpus()
}

/// A truncated ring large enough for the ladder to do real work.
pub fn deep_ladder_ring() -> FusionRing {
    so3_truncated(41)
}
