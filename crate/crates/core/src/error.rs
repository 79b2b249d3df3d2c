use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),

    #[error("unknown rank `{0}`")]
    UnknownRank(String),

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("alphabets differ: [{left}] vs [{right}]")]
    AlphabetMismatch { left: String, right: String },

    #[error("rank order has a cycle through {0:?}")]
    OrderCycle(Vec<String>),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    /// The closure derives two triples no preorder can satisfy together.
    #[error("closure conflict{}: derives {first} and {second}", line_suffix(*.line))]
    ClosureConflict {
        first: String,
        second: String,
        line: Option<usize>,
    },

    #[error("strict preferences form a cycle through blocks {blocks:?}{}", line_suffix(*.line))]
    SampleOrderCycle {
        blocks: Vec<String>,
        line: Option<usize>,
    },

    #[error("block {0} holds two distinct defined ranks")]
    RankingInconsistent(String),

    #[error("no block named {0} in the partition")]
    BlockNotInPartition(usize),

    #[error("state `{0}` is unreachable from the initial state")]
    UnreachableState(String),

    #[error("search bounds exceeded: {0}")]
    BoundsExceeded(String),

    #[error("{0} word set is empty")]
    EmptySet(&'static str),

    #[error("word positive/negative sets overlap on `{0}`")]
    OverlappingSets(String),

    #[error("could only draw {drawn} distinct words out of {requested}")]
    RetryExhausted { requested: usize, drawn: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

fn line_suffix(line: Option<usize>) -> String {
    match line {
        Some(l) => format!(" (sample line {l})"),
        None => String::new(),
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
