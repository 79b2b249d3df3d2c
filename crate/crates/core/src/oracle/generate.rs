//! Random words, labelled samples, and random canonical automata.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{Alphabet, Word};
use crate::automaton::{compare_words, Pdfa, PreferenceModel, StateId};
use crate::characteristic::{is_characteristic, nucleus, shortest_prefixes};
use crate::error::{Error, Result};
use crate::order::{PartialOrder, PreferenceCategory, Rank};
use crate::sample::{Comparison, Label, PreferenceSample};

/// Draw attempts allowed per requested word before giving up.
const RETRIES_PER_WORD: usize = 1000;

#[derive(Clone, Debug, PartialEq)]
pub struct GenerationConfig {
    pub word_count: usize,
    /// Probability of ending the word at each step; every symbol shares the rest
    /// equally.
    pub stop_probability: f64,
    /// Fraction of the other words each word is compared with.
    pub comparison_fraction: f64,
    pub seed: u64,
}

impl Default for GenerationConfig {
    fn default() -> Self {
        GenerationConfig {
            word_count: 50,
            stop_probability: 0.25,
            comparison_fraction: 1.0 / 3.0,
            seed: 0,
        }
    }
}

impl GenerationConfig {
    /// Probability of appending one particular symbol at a step.
    pub fn extend_probability(&self, alphabet_len: usize) -> f64 {
        (1.0 - self.stop_probability) / alphabet_len as f64
    }

    /// A generator seeded from `seed`.
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub fn validate(&self) -> Result<()> {
        if self.word_count == 0 {
            return Err(Error::InvalidConfig("word count must be positive".into()));
        }
        if !(self.stop_probability > 0.0 && self.stop_probability <= 1.0) {
            return Err(Error::InvalidConfig(
                "stop probability must lie in (0, 1]".into(),
            ));
        }
        if !(self.comparison_fraction > 0.0 && self.comparison_fraction <= 1.0) {
            return Err(Error::InvalidConfig(
                "comparison fraction must lie in (0, 1]".into(),
            ));
        }
        Ok(())
    }
}

/// One word: at every step stop with `stop_probability`, otherwise append a
/// uniformly chosen symbol.
pub fn draw_word<R: Rng>(alphabet: &Alphabet, stop_probability: f64, rng: &mut R) -> Word {
    let mut symbols = Vec::new();
    while rng.gen::<f64>() >= stop_probability {
        symbols.push(crate::alphabet::Symbol(
            rng.gen_range(0..alphabet.len()) as u16
        ));
    }
    Word(symbols)
}

/// `cfg.word_count` distinct words, in shortlex order.
pub fn draw_words<R: Rng>(
    cfg: &GenerationConfig,
    alphabet: &Alphabet,
    rng: &mut R,
) -> Result<Vec<Word>> {
    cfg.validate()?;
    let mut words = BTreeSet::new();
    let budget = cfg.word_count.saturating_mul(RETRIES_PER_WORD);
    for _ in 0..budget {
        if words.len() == cfg.word_count {
            break;
        }
        words.insert(draw_word(alphabet, cfg.stop_probability, rng));
    }
    if words.len() < cfg.word_count {
        return Err(Error::RetryExhausted {
            requested: cfg.word_count,
            drawn: words.len(),
        });
    }
    Ok(words.into_iter().collect())
}

/// The comparison a complete model records for `(w, u)`.
pub fn label_for(model: &Pdfa, w: &Word, u: &Word) -> Comparison {
    let category = compare_words(model, w, u).expect("words are over the model alphabet");
    let (l, r, label) = match category {
        PreferenceCategory::Indifferent => (w, u, Label::Indifferent),
        PreferenceCategory::FirstStrict => (w, u, Label::Strict),
        PreferenceCategory::SecondStrict => (u, w, Label::Strict),
        _ => (w, u, Label::Incomparable),
    };
    Comparison::new(l.clone(), r.clone(), label)
}

/// Compares every word with `⌈fraction · n⌉` random partners (at most `n - 1`),
/// labelling each unordered pair once from `model`.
pub fn label_pairs<R: Rng>(
    model: &Pdfa,
    words: &[Word],
    fraction: f64,
    rng: &mut R,
) -> PreferenceSample {
    let n = words.len();
    let partners = ((fraction * n as f64).ceil() as usize).min(n.saturating_sub(1));
    let mut pairs = BTreeSet::new();
    for i in 0..n {
        for j in index::sample(rng, n - 1, partners) {
            let j = if j >= i { j + 1 } else { j };
            pairs.insert((i.min(j), i.max(j)));
        }
    }
    let comparisons = pairs
        .into_iter()
        .map(|(i, j)| label_for(model, &words[i], &words[j]))
        .collect();
    PreferenceSample::new(model.alphabet().clone(), comparisons)
}

/// Draws `cfg.word_count` words and labels them from `model`.
pub fn generate_sample<R: Rng>(
    model: &Pdfa,
    cfg: &GenerationConfig,
    rng: &mut R,
) -> Result<PreferenceSample> {
    let words = draw_words(cfg, model.alphabet(), rng)?;
    Ok(label_pairs(model, &words, cfg.comparison_fraction, rng))
}

/// `a`, `b`, `c`, ... for the first `k` letters.
pub fn letters(k: usize) -> Alphabet {
    Alphabet::new((0..k).map(|i| ((b'a' + i as u8) as char).to_string()))
        .expect("letters form a valid alphabet")
}

/// A shortest suffix telling each pair of distinct states apart by rank; equivalent
/// pairs are absent.
pub fn distinguishing_suffixes(a: &Pdfa) -> HashMap<(StateId, StateId), Word> {
    let n = a.num_states();
    let mut out = HashMap::new();
    for p in 0..n {
        for q in p + 1..n {
            let mut seen = BTreeSet::from([(p, q)]);
            let mut queue = VecDeque::from([((p, q), Word::empty())]);
            while let Some(((x, y), w)) = queue.pop_front() {
                if a.rank(x) != a.rank(y) {
                    out.insert((p, q), w);
                    break;
                }
                for s in a.alphabet().symbols() {
                    let next = (a.next(x, s), a.next(y, s));
                    if next.0 != next.1 && seen.insert(next) {
                        queue.push_back((next, w.append(s)));
                    }
                }
            }
        }
    }
    out
}

/// Moore refinement: all states reachable and pairwise distinguishable by rank.
pub fn is_canonical(a: &Pdfa) -> bool {
    if a.reachable().len() != a.num_states() {
        return false;
    }
    let n = a.num_states();
    distinguishing_suffixes(a).len() == n * (n - 1) / 2
}

/// Words whose all-pairs labelling is a characteristic sample for a canonical
/// automaton: shortest prefixes and nucleus, each extended by every
/// distinguishing suffix and by the empty word.
pub fn characteristic_words(a: &Pdfa) -> Result<BTreeSet<Word>> {
    let mut bases: BTreeSet<Word> = shortest_prefixes(a)?.into_iter().collect();
    bases.extend(nucleus(a)?);
    let mut suffixes: BTreeSet<Word> = distinguishing_suffixes(a).into_values().collect();
    suffixes.insert(Word::empty());
    Ok(bases
        .iter()
        .flat_map(|b| suffixes.iter().map(move |y| b.concat(y)))
        .collect())
}

/// Random complete automaton with `1..=max_states` states over `alphabet_len`
/// letters and `1..=max_ranks` ranks, redrawn until canonical.
pub fn random_canonical_pdfa<R: Rng>(
    rng: &mut R,
    max_states: usize,
    alphabet_len: usize,
    max_ranks: usize,
) -> Pdfa {
    let alphabet = letters(alphabet_len);
    loop {
        let n = rng.gen_range(1..=max_states);
        let r = rng.gen_range(1..=max_ranks.min(n));
        let delta: Vec<StateId> = (0..n * alphabet_len).map(|_| rng.gen_range(0..n)).collect();
        let mut ranking: Vec<Rank> = (0..r as u32).map(Rank).collect();
        ranking.extend((r..n).map(|_| Rank(rng.gen_range(0..r as u32))));
        ranking.shuffle(rng);
        let mut topo: Vec<usize> = (0..r).collect();
        topo.shuffle(rng);
        let pairs: Vec<(usize, usize)> = (0..r)
            .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
            .filter(|_| rng.gen_bool(0.5))
            .map(|(i, j)| (topo[i], topo[j]))
            .collect();
        let names = (1..=r).map(|i| i.to_string()).collect();
        let order =
            PartialOrder::from_indices(names, &pairs).expect("pairs follow a topological order");
        let states = (0..n).map(|q| format!("q{q}")).collect();
        let a = Pdfa::new(alphabet.clone(), states, delta, 0, order, ranking)
            .expect("random automaton is well formed");
        if is_canonical(&a) {
            return a;
        }
    }
}

/// Grows a random sample round by round until it is characteristic for `a`.
/// From round `fallback_round` on, all pairs are compared and the words of
/// [`characteristic_words`] are added, which guarantees termination.
pub fn grow_characteristic_sample<R: Rng>(
    a: &Pdfa,
    cfg: &GenerationConfig,
    fallback_round: usize,
    rng: &mut R,
) -> Result<(PreferenceSample, usize)> {
    cfg.validate()?;
    let mut words: BTreeSet<Word> = BTreeSet::new();
    for round in 0.. {
        let target = words.len() + cfg.word_count;
        for _ in 0..cfg.word_count.saturating_mul(RETRIES_PER_WORD) {
            if words.len() >= target {
                break;
            }
            words.insert(draw_word(a.alphabet(), cfg.stop_probability, rng));
        }
        let fraction = if round >= fallback_round {
            words.extend(characteristic_words(a)?);
            1.0
        } else {
            cfg.comparison_fraction
        };
        let list: Vec<Word> = words.iter().cloned().collect();
        let sample = label_pairs(a, &list, fraction, rng);
        if is_characteristic(a, &sample)?.is_characteristic() {
            return Ok((sample, round));
        }
    }
    unreachable!("the fallback round always yields a characteristic sample")
}
