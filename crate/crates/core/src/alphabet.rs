//! Symbols, alphabets and words.
//!
//! Words are ordered *shortlex*: shorter words first, then the leftmost differing
//! symbol decides by its position in the alphabet declaration. Every ordering in
//! the crate (prefix-tree numbering, block names, shortest prefixes, witness
//! selection) goes through the `Ord` impl of [`Word`].

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Spelling of the empty word in text formats.
pub const EMPTY_WORD: &str = "eps";

/// A symbol, identified by its position in the declaring [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u16);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An ordered set of symbol tokens. Declaration order is the symbol order.
#[derive(Clone, Debug)]
pub struct Alphabet {
    tokens: Vec<String>,
    lookup: HashMap<String, Symbol>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.tokens == other.tokens
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    pub fn new<I, S>(tokens: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let tokens: Vec<String> = tokens.into_iter().map(Into::into).collect();
        if tokens.is_empty() {
            return Err(Error::InvalidAlphabet("no symbols declared".into()));
        }
        if tokens.len() > u16::MAX as usize {
            return Err(Error::InvalidAlphabet("too many symbols".into()));
        }
        let mut lookup = HashMap::with_capacity(tokens.len());
        for (i, tok) in tokens.iter().enumerate() {
            if tok.is_empty() || tok.contains('.') || tok.chars().any(char::is_whitespace) {
                return Err(Error::InvalidAlphabet(format!(
                    "symbol `{tok}` must be non-empty without whitespace or `.`"
                )));
            }
            if tok == EMPTY_WORD {
                return Err(Error::InvalidAlphabet(format!(
                    "`{EMPTY_WORD}` is reserved for the empty word"
                )));
            }
            if lookup.insert(tok.clone(), Symbol(i as u16)).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol `{tok}`")));
            }
        }
        Ok(Alphabet { tokens, lookup })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + Clone {
        (0..self.tokens.len() as u16).map(Symbol)
    }

    pub fn symbol(&self, token: &str) -> Result<Symbol> {
        self.lookup
            .get(token)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(token.to_string()))
    }

    pub fn token(&self, symbol: Symbol) -> &str {
        &self.tokens[symbol.index()]
    }

    /// Parses a `.`-joined word; `eps` is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text == EMPTY_WORD {
            return Ok(Word::empty());
        }
        text.split('.')
            .map(|tok| self.symbol(tok))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn format_word(&self, word: &Word) -> String {
        self.display(word).to_string()
    }

    pub fn display<'a>(&'a self, word: &'a Word) -> DisplayWord<'a> {
        DisplayWord {
            alphabet: self,
            word,
        }
    }

    /// Errors unless both alphabets declare the same tokens in the same order.
    pub fn ensure_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.tokens.join(" "),
                right: other.tokens.join(" "),
            })
        }
    }

    /// All words of length exactly `len`, in shortlex order.
    pub fn words_of_length(&self, len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            out = out
                .iter()
                .flat_map(|w| self.symbols().map(move |a| w.append(a)))
                .collect();
        }
        out
    }
}

pub struct DisplayWord<'a> {
    alphabet: &'a Alphabet,
    word: &'a Word,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str(EMPTY_WORD);
        }
        for (i, s) in self.word.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            f.write_str(self.alphabet.token(*s))?;
        }
        Ok(())
    }
}

/// A finite word. Ordered shortlex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn append(&self, a: Symbol) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(a);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    /// The remainder after `prefix`, if `prefix` is a prefix of `self`.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0
            .strip_prefix(prefix.0.as_slice())
            .map(|rest| Word(rest.to_vec()))
    }

    /// All prefixes, from the empty word up to the word itself.
    pub fn prefixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..=self.0.len()).map(|l| self.prefix(l))
    }

    pub fn last(&self) -> Option<Symbol> {
        self.0.last().copied()
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex comparison of two words.
pub fn shortlex_compare(w1: &Word, w2: &Word) -> Ordering {
    w1.cmp(w2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    #[test]
    fn shortlex_examples() {
        let s = ab();
        let w = |t: &str| s.parse_word(t).unwrap();
        assert_eq!(shortlex_compare(&w("a"), &w("a.a")), Ordering::Less);
        assert_eq!(shortlex_compare(&w("eps"), &w("b")), Ordering::Less);
        assert_eq!(shortlex_compare(&w("a.b"), &w("b.a")), Ordering::Less);
        assert_eq!(shortlex_compare(&w("b"), &w("a.a")), Ordering::Less);
        assert_eq!(shortlex_compare(&w("b.a"), &w("b.a")), Ordering::Equal);
    }

    #[test]
    fn declaration_order_not_codepoint_order() {
        let s = Alphabet::new(["n", "t", "d", "o"]).unwrap();
        let t = s.parse_word("t").unwrap();
        let d = s.parse_word("d").unwrap();
        assert!(t < d);
    }

    #[test]
    fn parse_and_format() {
        let s = ab();
        let w = s.parse_word("a.b.b").unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(s.format_word(&w), "a.b.b");
        assert_eq!(s.format_word(&Word::empty()), "eps");
        assert!(matches!(s.parse_word("a.c"), Err(Error::UnknownSymbol(_))));
    }

    #[test]
    fn rejects_bad_alphabets() {
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(["a.b"]).is_err());
        assert!(Alphabet::new(["eps"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
    }

    #[test]
    fn enumerates_in_shortlex() {
        let s = ab();
        let words: Vec<String> = (0..4)
            .flat_map(|l| s.words_of_length(l))
            .map(|w| s.format_word(&w))
            .collect();
        assert_eq!(
            words,
            [
                "eps", "a", "b", "a.a", "a.b", "b.a", "b.b", "a.a.a", "a.a.b", "a.b.a", "a.b.b",
                "b.a.a", "b.a.b", "b.b.a", "b.b.b"
            ]
        );
    }
}
