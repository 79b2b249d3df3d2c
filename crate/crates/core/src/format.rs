//! JSON document format for preference automata.
//!
//! ```json
//! {
//!   "alphabet": ["a", "b"],
//!   "states": ["00", "10"],
//!   "initial": "00",
//!   "transitions": [["00", "a", "10"], ["10", "a", "00"]],
//!   "ranks": ["x", "y"],
//!   "order": [["x", "y"]],
//!   "ranking": {"00": "x", "10": "y"}
//! }
//! ```
//!
//! `order` lists `[higher, lower]` strict pairs; their transitive closure is implied.
//! Learned automata may omit transitions and ranking entries.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::automaton::{Pdfa, Pnfa, PreferenceModel};
use crate::error::{Error, Result};
use crate::order::PartialOrder;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    alphabet: Vec<String>,
    states: Vec<String>,
    initial: String,
    #[serde(default)]
    transitions: Vec<(String, String, String)>,
    ranks: Vec<String>,
    #[serde(default)]
    order: Vec<(String, String)>,
    #[serde(default)]
    ranking: BTreeMap<String, String>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        message: e.to_string(),
    }
}

/// Reads an automaton that may be partial or nondeterministic.
pub fn parse_automaton(text: &str) -> Result<Pnfa> {
    let doc: Document = serde_json::from_str(text).map_err(json_error)?;
    let alphabet = Alphabet::new(&doc.alphabet)?;
    let states = doc.states.clone();
    let mut index = HashMap::with_capacity(states.len());
    for (i, s) in states.iter().enumerate() {
        if index.insert(s.as_str(), i).is_some() {
            return Err(Error::InvalidAutomaton(format!("duplicate state `{s}`")));
        }
    }
    let state = |s: &str| {
        index
            .get(s)
            .copied()
            .ok_or_else(|| Error::UnknownState(s.to_string()))
    };
    let order = PartialOrder::from_names(doc.ranks, &doc.order)?;

    let k = alphabet.len();
    let mut delta = vec![Vec::new(); doc.states.len() * k];
    for (from, sym, to) in &doc.transitions {
        let a = alphabet.symbol(sym)?;
        delta[state(from)? * k + a.index()].push(state(to)?);
    }
    let mut ranking = vec![None; doc.states.len()];
    for (s, r) in &doc.ranking {
        ranking[state(s)?] = Some(order.rank(r)?);
    }
    Pnfa::new(
        alphabet,
        doc.states,
        delta,
        state(&doc.initial)?,
        order,
        ranking,
    )
}

/// Reads a complete PDFA.
pub fn parse_pdfa(text: &str) -> Result<Pdfa> {
    parse_automaton(text)?.to_pdfa()
}

/// Writes an automaton; transitions are listed by state, then symbol.
pub fn write_automaton(a: &Pnfa) -> String {
    let alphabet = a.alphabet();
    let order = a.order();
    let states = a.state_names().to_vec();
    let mut transitions = Vec::new();
    for q in 0..a.num_states() {
        for s in alphabet.symbols() {
            for &t in a.successors(q, s) {
                transitions.push((
                    states[q].clone(),
                    alphabet.token(s).to_string(),
                    states[t].clone(),
                ));
            }
        }
    }
    let doc = Document {
        alphabet: alphabet.tokens().to_vec(),
        initial: states[a.initial()].clone(),
        transitions,
        ranks: order.names().to_vec(),
        order: order
            .covering_pairs()
            .into_iter()
            .map(|(h, l)| (order.name(h).to_string(), order.name(l).to_string()))
            .collect(),
        ranking: (0..a.num_states())
            .filter_map(|q| {
                a.rank(q)
                    .map(|r| (states[q].clone(), order.name(r).to_string()))
            })
            .collect(),
        states,
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("document serializes");
    out.push('\n');
    out
}

pub fn write_pdfa(a: &Pdfa) -> String {
    write_automaton(&Pnfa::from(a))
}
