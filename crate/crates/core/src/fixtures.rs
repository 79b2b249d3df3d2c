//! Bundled example models and samples.

use crate::automaton::Pdfa;
use crate::format::parse_pdfa;
use crate::sample::PreferenceSample;

pub const PARITY_PDFA: &str = include_str!("../fixtures/parity.pdfa.json");
pub const PARITY_SAMPLE: &str = include_str!("../fixtures/parity.sample");
pub const GARDEN_PDFA: &str = include_str!("../fixtures/garden.pdfa.json");

/// Four states tracking the parities of `a` and `b`; ranks `b` and `g` both above `o`.
pub fn parity_pdfa() -> Pdfa {
    parse_pdfa(PARITY_PDFA).expect("bundled automaton is valid")
}

/// Fourteen comparisons consistent with [`parity_pdfa`].
pub fn parity_sample() -> PreferenceSample {
    PreferenceSample::parse(PARITY_SAMPLE).expect("bundled sample is valid")
}

/// Garden-visiting preferences over `n` (no-op), `t`, `d` and `o`.
pub fn garden_pdfa() -> Pdfa {
    parse_pdfa(GARDEN_PDFA).expect("bundled automaton is valid")
}
