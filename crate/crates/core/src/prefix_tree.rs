//! The prefix-tree automaton of a sample.
//!
//! States are the prefixes of the sample words, numbered in shortlex order, so state
//! `0` is the empty word and a smaller index always means a shortlex-smaller word.

use std::collections::{BTreeSet, HashMap};

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::automaton::{Pnfa, StateId};
use crate::closure::{rank_partition, RankPartition};
use crate::error::Result;
use crate::order::{PartialOrder, Rank};
use crate::sample::PreferenceSample;

#[derive(Clone, Debug)]
pub struct PrefixTree {
    alphabet: Alphabet,
    words: Vec<Word>,
    index: HashMap<Word, StateId>,
    /// `children[q * |Σ| + a]`.
    children: Vec<Option<StateId>>,
    ranking: Vec<Option<Rank>>,
    partition: RankPartition,
}

pub fn build_prefix_tree(sample: &PreferenceSample) -> Result<PrefixTree> {
    let partition = rank_partition(sample)?;
    let mut prefixes = sample.prefixes();
    prefixes.insert(Word::empty());
    Ok(PrefixTree::from_parts(
        sample.alphabet().clone(),
        prefixes,
        partition,
    ))
}

impl PrefixTree {
    fn from_parts(alphabet: Alphabet, prefixes: BTreeSet<Word>, partition: RankPartition) -> Self {
        let words: Vec<Word> = prefixes.into_iter().collect();
        let index: HashMap<Word, StateId> = words
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let k = alphabet.len();
        let mut children = vec![None; words.len() * k];
        for (q, w) in words.iter().enumerate().skip(1) {
            let parent = index[&w.prefix(w.len() - 1)];
            children[parent * k + w.last().unwrap().index()] = Some(q);
        }
        let ranking = words.iter().map(|w| partition.rank_of(w)).collect();
        PrefixTree {
            alphabet,
            words,
            index,
            children,
            ranking,
            partition,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.words.len()
    }

    /// The prefix a state stands for.
    pub fn word(&self, q: StateId) -> &Word {
        &self.words[q]
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn state(&self, w: &Word) -> Option<StateId> {
        self.index.get(w).copied()
    }

    pub fn child(&self, q: StateId, a: Symbol) -> Option<StateId> {
        self.children[q * self.alphabet.len() + a.index()]
    }

    /// Block index of the state's word when it occurs in the sample.
    pub fn rank(&self, q: StateId) -> Option<Rank> {
        self.ranking[q]
    }

    pub fn order(&self) -> &PartialOrder {
        &self.partition.order
    }

    pub fn rank_partition(&self) -> &RankPartition {
        &self.partition
    }

    /// Formatted word of a state.
    pub fn label(&self, q: StateId) -> String {
        self.alphabet.format_word(&self.words[q])
    }

    pub fn to_pnfa(&self) -> Pnfa {
        Pnfa::new(
            self.alphabet.clone(),
            (0..self.num_states()).map(|q| self.label(q)).collect(),
            self.children
                .iter()
                .map(|c| c.iter().copied().collect())
                .collect(),
            0,
            self.order().clone(),
            self.ranking.clone(),
        )
        .expect("prefix tree is a well-formed automaton")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::PreferenceModel;
    use crate::fixtures;

    #[test]
    fn running_example_states() {
        let s = fixtures::parity_sample();
        let t = build_prefix_tree(&s).unwrap();
        let names: Vec<String> = (0..t.num_states()).map(|q| t.label(q)).collect();
        assert_eq!(
            names,
            [
                "eps", "a", "b", "a.a", "a.b", "b.a", "b.b", "a.a.b", "a.b.a", "a.b.b", "b.a.a",
                "b.b.b", "a.a.b.b", "a.b.a.a", "a.b.b.b"
            ]
        );
        assert_eq!(t.rank(0), None);
        assert_eq!(t.rank(7), None);
        assert_eq!(t.rank(1), Some(Rank(0)));
        assert_eq!(t.rank(1), t.rank(8));
        assert_eq!(t.rank(3), Some(Rank(1)));
    }

    #[test]
    fn empty_sample_is_root_only() {
        let s = PreferenceSample::parse("alphabet: a b\n").unwrap();
        let t = build_prefix_tree(&s).unwrap();
        assert_eq!(t.num_states(), 1);
        assert!(t.to_pnfa().missing_transitions().len() == 2);
    }

    #[test]
    fn single_word_sample() {
        let s = PreferenceSample::parse("alphabet: a b\na.b = a.b\n").unwrap();
        let t = build_prefix_tree(&s).unwrap();
        let names: Vec<String> = (0..t.num_states()).map(|q| t.label(q)).collect();
        assert_eq!(names, ["eps", "a", "a.b"]);
        assert_eq!(t.to_pnfa().unranked_states(), vec![0, 1]);
        let w = t.word(2).clone();
        assert_eq!(t.to_pnfa().rank_of(&w), Some(Rank(0)));
    }

    #[test]
    fn tree_addressing() {
        let t = build_prefix_tree(&fixtures::parity_sample()).unwrap();
        let a = t.to_pnfa();
        for (q, w) in t.words().iter().enumerate() {
            assert_eq!(a.run(w), vec![q]);
        }
    }
}
