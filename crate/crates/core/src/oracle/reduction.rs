//! Minimum consistent DFA instances and their translation into preference samples.

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};
use crate::oracle::search::tuples;
use crate::sample::{Comparison, Label, PreferenceSample};

/// Is there a DFA with at most `bound` states accepting every positive word and
/// rejecting every negative one?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McdfaInstance {
    pub alphabet: Alphabet,
    pub positive: Vec<Word>,
    pub negative: Vec<Word>,
    pub bound: usize,
}

impl McdfaInstance {
    pub fn new(
        alphabet: Alphabet,
        positive: Vec<Word>,
        negative: Vec<Word>,
        bound: usize,
    ) -> Result<Self> {
        if positive.is_empty() {
            return Err(Error::EmptySet("positive"));
        }
        if negative.is_empty() {
            return Err(Error::EmptySet("negative"));
        }
        if let Some(w) = positive.iter().find(|w| negative.contains(w)) {
            return Err(Error::OverlappingSets(alphabet.format_word(w)));
        }
        Ok(McdfaInstance {
            alphabet,
            positive,
            negative,
            bound,
        })
    }
}

/// Positive words pairwise indifferent, negative words pairwise indifferent, and
/// every positive word strictly above every negative one. The bound carries over.
pub fn reduce_mcdfa(x: &McdfaInstance) -> (PreferenceSample, usize) {
    let mut out = Vec::new();
    for side in [&x.positive, &x.negative] {
        for w in side {
            for u in side {
                out.push(Comparison::new(w.clone(), u.clone(), Label::Indifferent));
            }
        }
    }
    for w in &x.positive {
        for u in &x.negative {
            out.push(Comparison::new(w.clone(), u.clone(), Label::Strict));
        }
    }
    (PreferenceSample::new(x.alphabet.clone(), out), x.bound)
}

/// Decides the instance by enumerating every DFA with up to `bound` states.
pub fn brute_force_mcdfa(x: &McdfaInstance) -> bool {
    let k = x.alphabet.len();
    (1..=x.bound).any(|n| {
        tuples(n, n * k).into_iter().any(|delta| {
            let end = |w: &Word| w.symbols().iter().fold(0, |q, a| delta[q * k + a.index()]);
            let pos: Vec<usize> = x.positive.iter().map(end).collect();
            let neg: Vec<usize> = x.negative.iter().map(end).collect();
            (0u32..1 << n).any(|accept| {
                pos.iter().all(|&q| accept & (1 << q) != 0)
                    && neg.iter().all(|&q| accept & (1 << q) == 0)
            })
        })
    })
}
