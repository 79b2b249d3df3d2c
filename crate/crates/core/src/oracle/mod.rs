//! Ground truth for testing the learner: sample generation from known automata,
//! exhaustive minimum-size search, the minimum consistent DFA reduction, and the
//! trial runner.

pub mod experiment;
pub mod generate;
pub mod reduction;
pub mod search;

pub use experiment::{run_experiment, to_csv, ExperimentConfig, ExperimentRow};
pub use generate::{draw_words, label_pairs, random_canonical_pdfa, GenerationConfig};
pub use reduction::{brute_force_mcdfa, reduce_mcdfa, McdfaInstance};
pub use search::{brute_force_min_states, min_consistent_pdfa};
