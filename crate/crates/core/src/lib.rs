//! Learning preference automata from pairwise comparisons of words.
//!
//! A preference automaton is a complete DFA whose states carry ranks from a
//! partially ordered set; two words compare as their end states' ranks do. The
//! learner folds the prefix tree of a labelled sample into such an automaton and
//! recovers the canonical model whenever the sample is characteristic.

pub mod alphabet;
pub mod automaton;
pub mod characteristic;
pub mod closure;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod learner;
pub mod oracle;
pub mod order;
pub mod prefix_tree;
pub mod sample;

pub use alphabet::{shortlex_compare, Alphabet, Symbol, Word};
pub use automaton::{
    compare_words, equivalent, is_consistent, ConsistencyReport, Equivalence, Pdfa, Pnfa,
    PreferenceModel, StateId,
};
pub use characteristic::{is_characteristic, nucleus, shortest_prefixes, CharacteristicReport};
pub use closure::{close_sample, indifference_graph, rank_partition, ClosedSample, RankPartition};
pub use error::{Error, Result};
pub use learner::{learn_pdfa, Learned, StatePartition};
pub use order::{PartialOrder, PreferenceCategory, Rank};
pub use prefix_tree::{build_prefix_tree, PrefixTree};
pub use sample::{validate_sample, Comparison, Label, PreferenceSample};
