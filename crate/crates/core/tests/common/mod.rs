//! Test-only oracles and random inputs shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use pdfa_core::oracle::generate::letters;
use pdfa_core::{Comparison, Label, PreferenceSample, Symbol, Word};
use rand::Rng;

pub type Triple = (Word, Word, Label);

/// Closure by naive fixpoint iteration of the six closure rules.
pub fn naive_closure(sample: &PreferenceSample) -> BTreeSet<Triple> {
    let mut set: BTreeSet<Triple> = sample
        .comparisons()
        .iter()
        .map(|c| (c.left.clone(), c.right.clone(), c.label))
        .collect();
    for w in sample.words() {
        set.insert((w.clone(), w, Label::Indifferent));
    }
    loop {
        let mut next = set.clone();
        for (a, b, l) in &set {
            if *l != Label::Strict {
                next.insert((b.clone(), a.clone(), *l));
            }
            for (c, d, m) in &set {
                if b != c {
                    continue;
                }
                let derived = match (l, m) {
                    (Label::Indifferent, Label::Indifferent) => Some(Label::Indifferent),
                    (Label::Strict, Label::Strict)
                    | (Label::Indifferent, Label::Strict)
                    | (Label::Strict, Label::Indifferent) => Some(Label::Strict),
                    (Label::Indifferent, Label::Incomparable)
                    | (Label::Incomparable, Label::Indifferent) => Some(Label::Incomparable),
                    _ => None,
                };
                if let Some(x) = derived {
                    next.insert((a.clone(), d.clone(), x));
                }
            }
        }
        if next.len() == set.len() {
            return set;
        }
        set = next;
    }
}

/// Pairs of triples in a closed set that no preorder satisfies together.
pub fn has_conflict(set: &BTreeSet<Triple>) -> bool {
    set.iter().any(|(a, b, l)| {
        let has = |x: &Word, y: &Word, m: Label| set.contains(&(x.clone(), y.clone(), m));
        match l {
            Label::Strict => {
                has(b, a, Label::Strict)
                    || has(a, b, Label::Indifferent)
                    || has(a, b, Label::Incomparable)
            }
            Label::Incomparable => has(a, b, Label::Indifferent),
            Label::Indifferent => false,
        }
    })
}

/// Number of rule instances the set fails to contain.
pub fn rule_violations(words: &BTreeSet<Word>, set: &BTreeSet<Triple>) -> usize {
    let has = |x: &Word, y: &Word, m: Label| set.contains(&(x.clone(), y.clone(), m));
    let mut missing = words
        .iter()
        .filter(|w| !has(w, w, Label::Indifferent))
        .count();
    for (a, b, l) in set {
        if *l != Label::Strict && !has(b, a, *l) {
            missing += 1;
        }
        for (c, d, m) in set.iter().filter(|t| &t.0 == b) {
            let _ = c;
            let need = match (l, m) {
                (Label::Indifferent, Label::Indifferent) => Some(Label::Indifferent),
                (Label::Strict, Label::Strict)
                | (Label::Indifferent, Label::Strict)
                | (Label::Strict, Label::Indifferent) => Some(Label::Strict),
                (Label::Indifferent, Label::Incomparable)
                | (Label::Incomparable, Label::Indifferent) => Some(Label::Incomparable),
                _ => None,
            };
            if need.is_some_and(|x| !has(a, d, x)) {
                missing += 1;
            }
        }
    }
    missing
}

pub fn random_word<R: Rng>(rng: &mut R, symbols: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word(
        (0..len)
            .map(|_| Symbol(rng.gen_range(0..symbols) as u16))
            .collect(),
    )
}

/// A sample with arbitrary labels over short words on `{a, b}`.
pub fn random_sample<R: Rng>(rng: &mut R, triples: usize, max_len: usize) -> PreferenceSample {
    let comparisons = (0..triples)
        .map(|_| {
            let label = match rng.gen_range(0..5) {
                0 | 1 => Label::Indifferent,
                2 | 3 => Label::Strict,
                _ => Label::Incomparable,
            };
            Comparison::new(
                random_word(rng, 2, max_len),
                random_word(rng, 2, max_len),
                label,
            )
        })
        .collect();
    PreferenceSample::new(letters(2), comparisons)
}
