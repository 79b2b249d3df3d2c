//! Preference automata: the complete deterministic [`Pdfa`], the partial and possibly
//! nondeterministic [`Pnfa`], word comparison, sample consistency, and equivalence.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};
use crate::order::{PartialOrder, PreferenceCategory, Rank};
use crate::sample::{Label, PreferenceSample};

pub type StateId = usize;

/// Anything that assigns (possibly undefined) ranks to words under a rank order.
pub trait PreferenceModel {
    fn alphabet(&self) -> &Alphabet;
    fn order(&self) -> &PartialOrder;
    /// Rank of the state reached by `word`; `None` when the run is undefined,
    /// ambiguous, or ends in an unranked state.
    fn rank_of(&self, word: &Word) -> Option<Rank>;
}

fn check_word(alphabet: &Alphabet, w: &Word) -> Result<()> {
    match w.symbols().iter().find(|s| s.index() >= alphabet.len()) {
        Some(s) => Err(Error::UnknownSymbol(format!("#{}", s.0))),
        None => Ok(()),
    }
}

/// Compares two words under the model's preorder.
pub fn compare_words<M: PreferenceModel + ?Sized>(
    model: &M,
    w1: &Word,
    w2: &Word,
) -> Result<PreferenceCategory> {
    check_word(model.alphabet(), w1)?;
    check_word(model.alphabet(), w2)?;
    Ok(match (model.rank_of(w1), model.rank_of(w2)) {
        (Some(r1), Some(r2)) => model.order().compare(r1, r2),
        _ => PreferenceCategory::Unknown,
    })
}

/// The category a sample label asserts for `(w, w')`.
pub fn expected_category(label: Label) -> PreferenceCategory {
    match label {
        Label::Indifferent => PreferenceCategory::Indifferent,
        Label::Strict => PreferenceCategory::FirstStrict,
        Label::Incomparable => PreferenceCategory::Incomparable,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Position of the comparison in the sample.
    pub index: usize,
    pub line: Option<usize>,
    pub expected: Label,
    pub found: PreferenceCategory,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub violations: Vec<Violation>,
    /// Comparisons the model cannot decide (partial models only).
    pub undetermined: Vec<usize>,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lists every comparison of `sample` whose label disagrees with `model`.
pub fn is_consistent<M: PreferenceModel + ?Sized>(
    model: &M,
    sample: &PreferenceSample,
) -> Result<ConsistencyReport> {
    model.alphabet().ensure_same(sample.alphabet())?;
    let mut report = ConsistencyReport::default();
    for (index, c) in sample.comparisons().iter().enumerate() {
        let found = compare_words(model, &c.left, &c.right)?;
        if found == PreferenceCategory::Unknown {
            report.undetermined.push(index);
        } else if found != expected_category(c.label) {
            report.violations.push(Violation {
                index,
                line: c.line,
                expected: c.label,
                found,
            });
        }
    }
    Ok(report)
}

/// A complete deterministic preference automaton with a total, surjective ranking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pdfa {
    alphabet: Alphabet,
    states: Vec<String>,
    delta: Vec<StateId>,
    initial: StateId,
    order: PartialOrder,
    ranking: Vec<Rank>,
}

impl Pdfa {
    /// `delta[q * |Σ| + a]` is the successor of `q` on symbol `a`.
    pub fn new(
        alphabet: Alphabet,
        states: Vec<String>,
        delta: Vec<StateId>,
        initial: StateId,
        order: PartialOrder,
        ranking: Vec<Rank>,
    ) -> Result<Self> {
        let n = states.len();
        if n == 0 {
            return Err(Error::InvalidAutomaton("no states".into()));
        }
        if delta.len() != n * alphabet.len() {
            return Err(Error::InvalidAutomaton(
                "transition table does not cover every (state, symbol)".into(),
            ));
        }
        if let Some(&bad) = delta.iter().find(|&&t| t >= n) {
            return Err(Error::InvalidAutomaton(format!(
                "transition target #{bad} undeclared"
            )));
        }
        if initial >= n {
            return Err(Error::InvalidAutomaton("initial state undeclared".into()));
        }
        if ranking.len() != n {
            return Err(Error::InvalidAutomaton(
                "ranking must cover every state".into(),
            ));
        }
        let mut used = vec![false; order.len()];
        for r in &ranking {
            *used
                .get_mut(r.index())
                .ok_or_else(|| Error::UnknownRank(format!("#{}", r.0)))? = true;
        }
        if let Some(unused) = used.iter().position(|u| !u) {
            return Err(Error::InvalidAutomaton(format!(
                "rank `{}` is assigned to no state",
                order.names()[unused]
            )));
        }
        Ok(Pdfa {
            alphabet,
            states,
            delta,
            initial,
            order,
            ranking,
        })
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.states[q]
    }

    pub fn state(&self, name: &str) -> Result<StateId> {
        self.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn next(&self, q: StateId, a: Symbol) -> StateId {
        self.delta[q * self.alphabet.len() + a.index()]
    }

    pub fn run_from(&self, q: StateId, w: &Word) -> StateId {
        w.symbols().iter().fold(q, |q, &a| self.next(q, a))
    }

    pub fn run(&self, w: &Word) -> StateId {
        self.run_from(self.initial, w)
    }

    pub fn rank(&self, q: StateId) -> Rank {
        self.ranking[q]
    }

    pub fn ranking(&self) -> &[Rank] {
        &self.ranking
    }

    pub fn transitions(&self) -> &[StateId] {
        &self.delta
    }

    /// States in order of their shortlex-minimal access words, with those words.
    pub fn reachable(&self) -> Vec<(StateId, Word)> {
        let mut seen = vec![false; self.num_states()];
        let mut out = Vec::new();
        let mut queue = VecDeque::from([(self.initial, Word::empty())]);
        seen[self.initial] = true;
        while let Some((q, w)) = queue.pop_front() {
            for a in self.alphabet.symbols() {
                let t = self.next(q, a);
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back((t, w.append(a)));
                }
            }
            out.push((q, w));
        }
        out
    }
}

impl PreferenceModel for Pdfa {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn order(&self) -> &PartialOrder {
        &self.order
    }

    fn rank_of(&self, word: &Word) -> Option<Rank> {
        Some(self.ranking[self.run(word)])
    }
}

/// A preference automaton whose transitions may be partial or nondeterministic and
/// whose ranking may be undefined on some states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pnfa {
    alphabet: Alphabet,
    states: Vec<String>,
    delta: Vec<Vec<StateId>>,
    initial: StateId,
    order: PartialOrder,
    ranking: Vec<Option<Rank>>,
}

impl Pnfa {
    /// `delta[q * |Σ| + a]` is the (sorted, deduplicated on construction) successor set.
    pub fn new(
        alphabet: Alphabet,
        states: Vec<String>,
        mut delta: Vec<Vec<StateId>>,
        initial: StateId,
        order: PartialOrder,
        ranking: Vec<Option<Rank>>,
    ) -> Result<Self> {
        let n = states.len();
        if delta.len() != n * alphabet.len() {
            return Err(Error::InvalidAutomaton(
                "transition table does not match states x symbols".into(),
            ));
        }
        for set in delta.iter_mut() {
            set.sort_unstable();
            set.dedup();
            if set.iter().any(|&t| t >= n) {
                return Err(Error::InvalidAutomaton(
                    "transition target undeclared".into(),
                ));
            }
        }
        if initial >= n {
            return Err(Error::InvalidAutomaton("initial state undeclared".into()));
        }
        if ranking.len() != n {
            return Err(Error::InvalidAutomaton(
                "ranking table must list every state".into(),
            ));
        }
        if ranking.iter().flatten().any(|r| r.index() >= order.len()) {
            return Err(Error::InvalidAutomaton(
                "state rank outside the rank set".into(),
            ));
        }
        Ok(Pnfa {
            alphabet,
            states,
            delta,
            initial,
            order,
            ranking,
        })
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.states[q]
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn successors(&self, q: StateId, a: Symbol) -> &[StateId] {
        &self.delta[q * self.alphabet.len() + a.index()]
    }

    pub fn rank(&self, q: StateId) -> Option<Rank> {
        self.ranking[q]
    }

    pub fn is_deterministic(&self) -> bool {
        self.delta.iter().all(|s| s.len() <= 1)
    }

    /// `(state, symbol)` pairs without any successor.
    pub fn missing_transitions(&self) -> Vec<(StateId, Symbol)> {
        let k = self.alphabet.len();
        self.delta
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_empty())
            .map(|(i, _)| (i / k, Symbol((i % k) as u16)))
            .collect()
    }

    pub fn unranked_states(&self) -> Vec<StateId> {
        (0..self.num_states())
            .filter(|&q| self.ranking[q].is_none())
            .collect()
    }

    /// Set of states reached by `w` (empty when the run leaves the transition domain).
    pub fn run(&self, w: &Word) -> Vec<StateId> {
        let mut current = vec![self.initial];
        for &a in w.symbols() {
            let mut next: Vec<StateId> = current
                .iter()
                .flat_map(|&q| self.successors(q, a).iter().copied())
                .collect();
            next.sort_unstable();
            next.dedup();
            if next.is_empty() {
                return next;
            }
            current = next;
        }
        current
    }

    /// Converts to a [`Pdfa`] when deterministic, complete, and totally ranked.
    pub fn to_pdfa(&self) -> Result<Pdfa> {
        if !self.is_deterministic() {
            return Err(Error::InvalidAutomaton(
                "transitions are nondeterministic".into(),
            ));
        }
        if let Some(&(q, a)) = self.missing_transitions().first() {
            return Err(Error::InvalidAutomaton(format!(
                "no transition from `{}` on `{}`",
                self.states[q],
                self.alphabet.token(a)
            )));
        }
        if let Some(&q) = self.unranked_states().first() {
            return Err(Error::InvalidAutomaton(format!(
                "state `{}` has no rank",
                self.states[q]
            )));
        }
        Pdfa::new(
            self.alphabet.clone(),
            self.states.clone(),
            self.delta.iter().map(|s| s[0]).collect(),
            self.initial,
            self.order.clone(),
            self.ranking.iter().map(|r| r.unwrap()).collect(),
        )
    }
}

impl From<&Pdfa> for Pnfa {
    fn from(p: &Pdfa) -> Self {
        Pnfa {
            alphabet: p.alphabet.clone(),
            states: p.states.clone(),
            delta: p.delta.iter().map(|&t| vec![t]).collect(),
            initial: p.initial,
            order: p.order.clone(),
            ranking: p.ranking.iter().map(|&r| Some(r)).collect(),
        }
    }
}

impl PreferenceModel for Pnfa {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn order(&self) -> &PartialOrder {
        &self.order
    }

    fn rank_of(&self, word: &Word) -> Option<Rank> {
        let reached = self.run(word);
        let first = self.ranking[*reached.first()?]?;
        reached
            .iter()
            .all(|&q| self.ranking[q] == Some(first))
            .then_some(first)
    }
}

/// Result of [`equivalent`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    /// Reachable pairs of the synchronized product, in shortlex order of their
    /// access words. For minimal automata this is the state bijection.
    pub correspondence: Vec<(StateId, StateId)>,
    /// A shortest word pair on which the two models disagree.
    pub counterexample: Option<(Word, Word)>,
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Decides whether two PDFAs encode the same preorder over words.
///
/// Every pair of words leads to a pair of reachable product states, so the models
/// agree on all word pairs iff the rank categories agree on all pairs of reachable
/// product states.
pub fn equivalent(a: &Pdfa, b: &Pdfa) -> Result<Equivalence> {
    a.alphabet.ensure_same(&b.alphabet)?;
    let mut index: HashMap<(StateId, StateId), usize> = HashMap::new();
    let mut pairs: Vec<((StateId, StateId), Word)> = Vec::new();
    let start = (a.initial, b.initial);
    index.insert(start, 0);
    pairs.push((start, Word::empty()));
    let mut head = 0;
    while head < pairs.len() {
        let ((p, q), w) = pairs[head].clone();
        head += 1;
        for s in a.alphabet.symbols() {
            let next = (a.next(p, s), b.next(q, s));
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(next) {
                e.insert(pairs.len());
                pairs.push((next, w.append(s)));
            }
        }
    }

    let mut best: Option<(usize, usize, usize)> = None;
    for (i, ((pi, qi), wi)) in pairs.iter().enumerate() {
        for (j, ((pj, qj), wj)) in pairs.iter().enumerate().skip(i + 1) {
            let ca = a.order.compare(a.ranking[*pi], a.ranking[*pj]);
            let cb = b.order.compare(b.ranking[*qi], b.ranking[*qj]);
            if ca != cb {
                let key = (wi.len() + wj.len(), i, j);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
    }
    Ok(Equivalence {
        correspondence: pairs.iter().map(|(pq, _)| *pq).collect(),
        counterexample: best.map(|(_, i, j)| (pairs[i].1.clone(), pairs[j].1.clone())),
    })
}
