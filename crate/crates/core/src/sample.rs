//! Preference samples: labelled pairwise comparisons between words.
//!
//! Text format:
//!
//! ```text
//! alphabet: a b
//! b.b > a.b.b
//! a = a.b.a
//! a.a # b.a
//! ```
//!
//! `>` is strict preference of the left word, `=` indifference and `#`
//! incomparability. Words are `.`-joined symbols; `eps` is the empty word. Blank
//! lines are ignored.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};

/// Comparison outcome recorded in a sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// `0`: the words are indifferent.
    Indifferent,
    /// `1`: the left word is strictly preferred.
    Strict,
    /// `⊥`: the words are incomparable.
    Incomparable,
}

impl Label {
    pub fn token(self) -> &'static str {
        match self {
            Label::Indifferent => "=",
            Label::Strict => ">",
            Label::Incomparable => "#",
        }
    }

    pub fn from_token(tok: &str) -> Option<Label> {
        match tok {
            "=" => Some(Label::Indifferent),
            ">" => Some(Label::Strict),
            "#" => Some(Label::Incomparable),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Indifferent => "0",
            Label::Strict => "1",
            Label::Incomparable => "⊥",
        })
    }
}

/// One triple `(left, right, label)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Comparison {
    pub left: Word,
    pub right: Word,
    pub label: Label,
    /// Source line, when parsed from text.
    pub line: Option<usize>,
}

impl Comparison {
    pub fn new(left: Word, right: Word, label: Label) -> Self {
        Comparison {
            left,
            right,
            label,
            line: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreferenceSample {
    alphabet: Alphabet,
    comparisons: Vec<Comparison>,
}

impl PreferenceSample {
    pub fn new(alphabet: Alphabet, comparisons: Vec<Comparison>) -> Self {
        PreferenceSample {
            alphabet,
            comparisons,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn comparisons(&self) -> &[Comparison] {
        &self.comparisons
    }

    pub fn len(&self) -> usize {
        self.comparisons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comparisons.is_empty()
    }

    pub fn push(&mut self, c: Comparison) {
        self.comparisons.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Comparison>) {
        self.comparisons.extend(cs);
    }

    /// `W_S`, the words occurring in any comparison, in shortlex order.
    pub fn words(&self) -> BTreeSet<Word> {
        self.comparisons
            .iter()
            .flat_map(|c| [c.left.clone(), c.right.clone()])
            .collect()
    }

    /// `Pref(W_S)`.
    pub fn prefixes(&self) -> BTreeSet<Word> {
        self.words()
            .iter()
            .flat_map(|w| w.prefixes().collect::<Vec<_>>())
            .collect()
    }

    /// Strict parse: any malformed line or foreign symbol is an error.
    pub fn parse(text: &str) -> Result<Self> {
        let (sample, diagnostics) = Self::parse_lenient(text)?;
        match diagnostics.into_iter().next() {
            Some(Diagnostic::ForeignSymbol { line, symbol }) => Err(Error::Parse {
                line,
                message: format!("symbol `{symbol}` is not in the alphabet"),
            }),
            Some(d) => unreachable!("lenient parse only reports foreign symbols, got {d}"),
            None => Ok(sample),
        }
    }

    /// Parses, skipping (and reporting) comparisons that use undeclared symbols.
    /// Structural errors (missing header, malformed lines) still fail.
    pub fn parse_lenient(text: &str) -> Result<(Self, Vec<Diagnostic>)> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing `alphabet:` header".into(),
        })?;
        let symbols = header
            .strip_prefix("alphabet:")
            .ok_or_else(|| Error::Parse {
                line: header_line,
                message: "expected `alphabet: s1 s2 ...`".into(),
            })?
            .split_whitespace();
        let alphabet = Alphabet::new(symbols).map_err(|e| Error::Parse {
            line: header_line,
            message: e.to_string(),
        })?;

        let mut comparisons = Vec::new();
        let mut diagnostics = Vec::new();
        for (line, text) in lines {
            let parts: Vec<&str> = text.split_whitespace().collect();
            let [left, rel, right] = parts[..] else {
                return Err(Error::Parse {
                    line,
                    message: format!("expected `W1 <rel> W2`, found `{text}`"),
                });
            };
            let label = Label::from_token(rel).ok_or_else(|| Error::Parse {
                line,
                message: format!("unknown relation `{rel}` (use >, = or #)"),
            })?;
            match (alphabet.parse_word(left), alphabet.parse_word(right)) {
                (Ok(l), Ok(r)) => comparisons.push(Comparison {
                    left: l,
                    right: r,
                    label,
                    line: Some(line),
                }),
                (Err(Error::UnknownSymbol(symbol)), _) | (_, Err(Error::UnknownSymbol(symbol))) => {
                    diagnostics.push(Diagnostic::ForeignSymbol { line, symbol })
                }
                (Err(e), _) | (_, Err(e)) => {
                    return Err(Error::Parse {
                        line,
                        message: e.to_string(),
                    })
                }
            }
        }
        Ok((PreferenceSample::new(alphabet, comparisons), diagnostics))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("alphabet: {}\n", self.alphabet.tokens().join(" "));
        for c in &self.comparisons {
            out.push_str(&format!(
                "{} {} {}\n",
                self.alphabet.display(&c.left),
                c.label.token(),
                self.alphabet.display(&c.right)
            ));
        }
        out
    }
}

/// A problem found by [`validate_sample`] or lenient parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    ConflictingLabels {
        left: String,
        right: String,
        first_line: Option<usize>,
        second_line: Option<usize>,
    },
    SelfStrict {
        word: String,
        line: Option<usize>,
    },
    SelfIncomparable {
        word: String,
        line: Option<usize>,
    },
    ForeignSymbol {
        line: usize,
        symbol: String,
    },
}

fn at(line: &Option<usize>) -> String {
    line.map(|l| format!("line {l}: ")).unwrap_or_default()
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::ConflictingLabels {
                left,
                right,
                first_line,
                second_line,
            } => write!(
                f,
                "{}conflicting labels for {left} and {right}{}",
                at(second_line),
                first_line
                    .map(|l| format!(" (first labelled on line {l})"))
                    .unwrap_or_default()
            ),
            Diagnostic::SelfStrict { word, line } => {
                write!(f, "{}{word} is strictly preferred to itself", at(line))
            }
            Diagnostic::SelfIncomparable { word, line } => {
                write!(f, "{}{word} is incomparable to itself", at(line))
            }
            Diagnostic::ForeignSymbol { line, symbol } => {
                write!(f, "line {line}: symbol `{symbol}` is not in the alphabet")
            }
        }
    }
}

/// Relation a triple asserts about the unordered pair `{w, u}`.
#[derive(Clone, Copy, PartialEq, Eq)]
enum PairRelation {
    Indifferent,
    /// `true` when the shortlex-smaller word is preferred.
    Strict(bool),
    Incomparable,
}

/// Reports label conflicts and self-comparisons that no preorder can satisfy.
pub fn validate_sample(sample: &PreferenceSample) -> Vec<Diagnostic> {
    let fmt = |w: &Word| sample.alphabet.format_word(w);
    let mut out = Vec::new();
    let mut seen: HashMap<(&Word, &Word), (PairRelation, Option<usize>)> = HashMap::new();
    for c in &sample.comparisons {
        if c.left == c.right {
            match c.label {
                Label::Strict => out.push(Diagnostic::SelfStrict {
                    word: fmt(&c.left),
                    line: c.line,
                }),
                Label::Incomparable => out.push(Diagnostic::SelfIncomparable {
                    word: fmt(&c.left),
                    line: c.line,
                }),
                Label::Indifferent => {}
            }
            continue;
        }
        let (key, left_is_small) = if c.left < c.right {
            ((&c.left, &c.right), true)
        } else {
            ((&c.right, &c.left), false)
        };
        let rel = match c.label {
            Label::Indifferent => PairRelation::Indifferent,
            Label::Strict => PairRelation::Strict(left_is_small),
            Label::Incomparable => PairRelation::Incomparable,
        };
        match seen.get(&key) {
            Some(&(prev, prev_line)) if prev != rel => out.push(Diagnostic::ConflictingLabels {
                left: fmt(key.0),
                right: fmt(key.1),
                first_line: prev_line,
                second_line: c.line,
            }),
            Some(_) => {}
            None => {
                seen.insert(key, (rel, c.line));
            }
        }
    }
    out
}
