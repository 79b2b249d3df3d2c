//! Shortest prefixes, nucleus, and the characteristic-sample test.

use std::collections::BTreeSet;
use std::fmt;

use crate::alphabet::Word;
use crate::automaton::{Pdfa, PreferenceModel, StateId};
use crate::closure::close_sample;
use crate::error::{Error, Result};
use crate::order::PreferenceCategory;
use crate::sample::{Label, PreferenceSample};

/// Witnesses kept per condition.
const MAX_WITNESSES: usize = 5;

/// Shortlex-minimal access word of every state, indexed by state.
pub fn shortest_prefixes(a: &Pdfa) -> Result<Vec<Word>> {
    let mut out: Vec<Option<Word>> = vec![None; a.num_states()];
    for (q, w) in a.reachable() {
        out[q] = Some(w);
    }
    out.into_iter()
        .enumerate()
        .map(|(q, w)| w.ok_or_else(|| Error::UnreachableState(a.state_name(q).to_string())))
        .collect()
}

/// The empty word together with every one-letter extension of a shortest prefix.
pub fn nucleus(a: &Pdfa) -> Result<BTreeSet<Word>> {
    let sp = shortest_prefixes(a)?;
    let mut out = BTreeSet::from([Word::empty()]);
    for u in &sp {
        out.extend(a.alphabet().symbols().map(|s| u.append(s)));
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConditionReport {
    pub violations: usize,
    /// The first few violations, formatted.
    pub witnesses: Vec<String>,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    fn record(&mut self, witness: impl FnOnce() -> String) {
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness());
        }
        self.violations += 1;
    }
}

/// Outcome of the four conditions, in order: nucleus covered by the sample
/// prefixes, distinct states separated, every state reached, and every pair of
/// sample words recorded as the automaton orders it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CharacteristicReport {
    pub conditions: [ConditionReport; 4],
}

impl CharacteristicReport {
    pub fn is_characteristic(&self) -> bool {
        self.conditions.iter().all(ConditionReport::passed)
    }
}

const CONDITION_NAMES: [&str; 4] = [
    "nucleus within sample prefixes",
    "distinct states separated",
    "every state reached",
    "sample pairs recorded",
];

impl fmt::Display for CharacteristicReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "characteristic: {}", self.is_characteristic())?;
        for (i, c) in self.conditions.iter().enumerate() {
            let status = if c.passed() { "pass" } else { "fail" };
            writeln!(
                f,
                "condition {} ({}): {status}, {} violations",
                i + 1,
                CONDITION_NAMES[i],
                c.violations
            )?;
            for w in &c.witnesses {
                writeln!(f, "  {w}")?;
            }
        }
        Ok(())
    }
}

/// Checks whether `sample` is characteristic for the canonical automaton `a`.
pub fn is_characteristic(a: &Pdfa, sample: &PreferenceSample) -> Result<CharacteristicReport> {
    let alphabet = a.alphabet();
    alphabet.ensure_same(sample.alphabet())?;
    let closed = close_sample(sample)?;
    let sp = shortest_prefixes(a)?;
    let nu = nucleus(a)?;
    let words = closed.words();
    let fmt = |w: &Word| alphabet.format_word(w);
    let mut report = CharacteristicReport::default();

    let mut prefixes = sample.prefixes();
    prefixes.insert(Word::empty());
    for u in nu.iter().filter(|u| !prefixes.contains(*u)) {
        report.conditions[0].record(|| format!("nucleus word {} is not a sample prefix", fmt(u)));
    }

    let separated = |w: &Word, u: &Word| {
        words.iter().enumerate().any(|(i, x)| {
            let Some(y) = x.strip_prefix(w) else {
                return false;
            };
            let Some(j) = closed.word_index(&u.concat(&y)) else {
                return false;
            };
            closed.holds(i, j, Label::Strict)
                || closed.holds(j, i, Label::Strict)
                || closed.holds(i, j, Label::Incomparable)
        })
    };
    for w in &sp {
        for u in &nu {
            if a.run(w) != a.run(u) && !separated(w, u) {
                report.conditions[1]
                    .record(|| format!("no separating suffix for ({}, {})", fmt(w), fmt(u)));
            }
        }
    }

    let mut reached = vec![false; a.num_states()];
    for w in words {
        reached[a.run(w)] = true;
    }
    for q in (0..a.num_states()).filter(|&q| !reached[q]) {
        report.conditions[2].record(|| format!("state {} not reached", a.state_name(q)));
    }

    let ends: Vec<StateId> = words.iter().map(|w| a.run(w)).collect();
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            let category = a.order().compare(a.rank(ends[i]), a.rank(ends[j]));
            let ok = match category {
                PreferenceCategory::Indifferent => closed.holds(i, j, Label::Indifferent),
                PreferenceCategory::FirstStrict => closed.holds(i, j, Label::Strict),
                PreferenceCategory::SecondStrict => closed.holds(j, i, Label::Strict),
                _ => {
                    !closed.holds(i, j, Label::Indifferent)
                        && !closed.holds(i, j, Label::Strict)
                        && !closed.holds(j, i, Label::Strict)
                }
            };
            if !ok {
                report.conditions[3].record(|| {
                    format!(
                        "({}, {}) should be {category}",
                        fmt(&words[i]),
                        fmt(&words[j])
                    )
                });
            }
        }
    }
    Ok(report)
}
