//! Exhaustive search for a smallest automaton consistent with a sample.
//!
//! [`min_consistent_pdfa`] enumerates transition functions lazily along the prefix
//! tree of the sample (states are numbered in order of first use, so each
//! automaton is visited once up to renaming) and prunes as soon as the words
//! placed so far admit no rank order. [`brute_force_min_states`] enumerates every
//! complete automaton, ranking and order outright and is only meant to
//! cross-check the former on tiny inputs.

use std::collections::BTreeSet;

use crate::alphabet::Word;
use crate::automaton::{Pdfa, StateId};
use crate::closure::{close_sample, ClosedSample, UnionFind};
use crate::error::{Error, Result};
use crate::order::{PartialOrder, Rank};
use crate::sample::{Label, PreferenceSample};

pub const MAX_STATES: usize = 5;
pub const MAX_SYMBOLS: usize = 3;
pub const MAX_RANKS: usize = 4;

fn check_bounds(sample: &PreferenceSample, k: usize, max_ranks: usize) -> Result<()> {
    let symbols = sample.alphabet().len();
    if k > MAX_STATES || symbols > MAX_SYMBOLS || max_ranks > MAX_RANKS {
        return Err(Error::BoundsExceeded(format!(
            "states {k} (max {MAX_STATES}), symbols {symbols} (max {MAX_SYMBOLS}), \
             ranks {max_ranks} (max {MAX_RANKS})"
        )));
    }
    Ok(())
}

/// Class-level constraints of a closed sample.
struct Constraints {
    /// Indifference class of each sample word.
    class_of: Vec<usize>,
    classes: usize,
    strict: Vec<(usize, usize)>,
    incomparable: Vec<(usize, usize)>,
}

impl Constraints {
    fn new(closed: &ClosedSample) -> Self {
        let reps: Vec<usize> = closed.classes().iter().map(|c| c[0]).collect();
        let m = reps.len();
        let mut strict = Vec::new();
        let mut incomparable = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if closed.holds(reps[i], reps[j], Label::Strict) {
                    strict.push((i, j));
                }
                if i < j && closed.holds(reps[i], reps[j], Label::Incomparable) {
                    incomparable.push((i, j));
                }
            }
        }
        Constraints {
            class_of: (0..closed.words().len())
                .map(|w| closed.class_of(w))
                .collect(),
            classes: m,
            strict,
            incomparable,
        }
    }

    /// Groups of states forced to share a rank, given the end state of each
    /// placed word, plus the strict edges between those groups. `None` when the
    /// placement admits no rank order.
    fn groups(&self, n: usize, ends: &[Option<StateId>]) -> Option<Groups> {
        let mut uf = UnionFind::new(n);
        let mut class_state: Vec<Option<StateId>> = vec![None; self.classes];
        for (w, end) in ends.iter().enumerate() {
            if let Some(q) = *end {
                let c = self.class_of[w];
                match class_state[c] {
                    Some(p) => {
                        uf.union(p, q);
                    }
                    None => class_state[c] = Some(q),
                }
            }
        }
        let group: Vec<Option<usize>> = class_state.iter().map(|s| s.map(|q| uf.find(q))).collect();
        let mut edges = Vec::new();
        for &(i, j) in &self.strict {
            if let (Some(gi), Some(gj)) = (group[i], group[j]) {
                if gi == gj {
                    return None;
                }
                edges.push((gi, gj));
            }
        }
        let above = closure_matrix(n, &edges)?;
        for &(i, j) in &self.incomparable {
            if let (Some(gi), Some(gj)) = (group[i], group[j]) {
                if gi == gj || above[gi][gj] || above[gj][gi] {
                    return None;
                }
            }
        }
        Some((group, edges))
    }
}

/// Group of each placed word, and strict edges between groups.
type Groups = (Vec<Option<usize>>, Vec<(usize, usize)>);

/// Transitive closure of `edges` over `n` nodes; `None` when cyclic.
fn closure_matrix(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<bool>>> {
    let mut m = vec![vec![false; n]; n];
    for &(a, b) in edges {
        m[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if m[i][k] {
                let row = m[k].clone();
                for (cell, reach) in m[i].iter_mut().zip(row) {
                    *cell |= reach;
                }
            }
        }
    }
    (0..n).all(|i| !m[i][i]).then_some(m)
}

struct Search<'a> {
    cons: &'a Constraints,
    symbols: usize,
    /// Prefix-tree nodes in shortlex order: parent node and symbol (root excluded).
    nodes: Vec<(usize, usize)>,
    /// Sample word ending at each node.
    word_at: Vec<Option<usize>>,
    n: usize,
    max_ranks: usize,
    delta: Vec<Option<StateId>>,
    state_of: Vec<StateId>,
    ends: Vec<Option<StateId>>,
}

/// A finished automaton skeleton: transitions, ranking, and order pairs.
type Found = (Vec<StateId>, usize, Vec<Rank>, usize, Vec<(usize, usize)>);

impl Search<'_> {
    fn run(&mut self, pos: usize, used: usize) -> Option<Found> {
        let mut pos = pos;
        while pos < self.nodes.len() {
            let node = pos + 1;
            let (parent, a) = self.nodes[pos];
            let slot = self.state_of[parent] * self.symbols + a;
            match self.delta[slot] {
                Some(t) => self.place(node, t),
                None => {
                    self.cons.groups(self.n, &self.ends)?;
                    let mut found = None;
                    for t in 0..(used + 1).min(self.n) {
                        self.delta[slot] = Some(t);
                        let saved = self.ends.clone();
                        self.place(node, t);
                        found = self.run(pos + 1, used.max(t + 1));
                        self.ends = saved;
                        if found.is_some() {
                            break;
                        }
                    }
                    self.delta[slot] = None;
                    return found;
                }
            }
            pos += 1;
        }
        self.finish(used)
    }

    fn place(&mut self, node: usize, q: StateId) {
        self.state_of[node] = q;
        if let Some(w) = self.word_at[node] {
            self.ends[w] = Some(q);
        }
    }

    /// Assigns ranks to the groups, merging groups when there are too many.
    fn finish(&self, used: usize) -> Option<Found> {
        let (group, edges) = self.cons.groups(self.n, &self.ends)?;
        let mut roots: Vec<usize> = group.iter().flatten().copied().collect();
        roots.sort_unstable();
        roots.dedup();
        let delta: Vec<StateId> = self.delta[..used * self.symbols]
            .iter()
            .map(|t| t.unwrap_or(0))
            .collect();
        if roots.is_empty() {
            return Some((delta, used, vec![Rank(0); used], 1, Vec::new()));
        }
        let g = roots.len();
        let local = |x: usize| roots.binary_search(&x).expect("edge endpoints are groups");
        let edges: BTreeSet<(usize, usize)> =
            edges.iter().map(|&(a, b)| (local(a), local(b))).collect();
        let incomparable: Vec<(usize, usize)> = self
            .cons
            .incomparable
            .iter()
            .filter_map(|&(i, j)| Some((local(group[i]?), local(group[j]?))))
            .collect();
        for blocks in set_partitions(g, self.max_ranks) {
            let r = blocks.iter().max().map_or(0, |m| m + 1);
            let merged: Vec<(usize, usize)> =
                edges.iter().map(|&(a, b)| (blocks[a], blocks[b])).collect();
            if merged.iter().any(|&(a, b)| a == b) {
                continue;
            }
            let Some(above) = closure_matrix(r, &merged) else {
                continue;
            };
            if incomparable.iter().any(|&(a, b)| {
                let (x, y) = (blocks[a], blocks[b]);
                x == y || above[x][y] || above[y][x]
            }) {
                continue;
            }
            let mut uf = UnionFind::new(self.n);
            for (w, end) in self.ends.iter().enumerate() {
                if let (Some(q), Some(root)) = (end, group[self.cons.class_of[w]]) {
                    uf.union(*q, root);
                }
            }
            let ranking = (0..used)
                .map(|q| {
                    let root = uf.find(q);
                    roots
                        .binary_search(&root)
                        .map_or(Rank(0), |i| Rank(blocks[i] as u32))
                })
                .collect();
            let pairs: BTreeSet<(usize, usize)> = merged.into_iter().collect();
            return Some((delta, used, ranking, r, pairs.into_iter().collect()));
        }
        None
    }
}

/// Restricted-growth strings: every partition of `0..g` into at most `max_blocks`
/// blocks, finest first.
fn set_partitions(g: usize, max_blocks: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, g: usize, max_blocks: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == g {
            out.push(prefix.clone());
            return;
        }
        let next = prefix.iter().max().map_or(0, |m| m + 1);
        for b in 0..=next.min(max_blocks.saturating_sub(1)) {
            prefix.push(b);
            go(prefix, g, max_blocks, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), g, max_blocks, &mut out);
    out.sort_by_key(|p| std::cmp::Reverse(p.iter().max().copied()));
    out
}

/// A consistent automaton with at most `k` states and `max_ranks` ranks, as small
/// as possible, or `None` if there is none.
pub fn min_consistent_pdfa(
    sample: &PreferenceSample,
    k: usize,
    max_ranks: usize,
) -> Result<Option<Pdfa>> {
    check_bounds(sample, k, max_ranks)?;
    if max_ranks == 0 {
        return Ok(None);
    }
    let Ok(closed) = close_sample(sample) else {
        return Ok(None);
    };
    let cons = Constraints::new(&closed);
    let alphabet = sample.alphabet();
    let symbols = alphabet.len();

    let mut prefixes: BTreeSet<Word> = sample.prefixes();
    prefixes.insert(Word::empty());
    let prefixes: Vec<Word> = prefixes.into_iter().collect();
    let node_of = |w: &Word| prefixes.binary_search(w).expect("prefix closed");
    let nodes: Vec<(usize, usize)> = prefixes[1..]
        .iter()
        .map(|w| (node_of(&w.prefix(w.len() - 1)), w.last().unwrap().index()))
        .collect();
    let mut word_at = vec![None; prefixes.len()];
    for (i, w) in closed.words().iter().enumerate() {
        word_at[node_of(w)] = Some(i);
    }

    for n in 1..=k {
        let mut search = Search {
            cons: &cons,
            symbols,
            nodes: nodes.clone(),
            word_at: word_at.clone(),
            n,
            max_ranks,
            delta: vec![None; n * symbols],
            state_of: vec![0; prefixes.len()],
            ends: vec![None; closed.words().len()],
        };
        search.place(0, 0);
        if let Some((delta, used, ranking, r, pairs)) = search.run(0, 1) {
            let names = (1..=r).map(|i| i.to_string()).collect();
            let order = PartialOrder::from_indices(names, &pairs)?;
            let states = (0..used).map(|q| format!("q{q}")).collect();
            return Ok(Some(Pdfa::new(
                alphabet.clone(),
                states,
                delta,
                0,
                order,
                ranking,
            )?));
        }
    }
    Ok(None)
}

/// Smallest state count of any consistent automaton with at most `k` states and
/// `max_ranks` ranks, by enumerating every transition function, ranking, and
/// rank order.
pub fn brute_force_min_states(
    sample: &PreferenceSample,
    k: usize,
    max_ranks: usize,
) -> Result<Option<usize>> {
    check_bounds(sample, k, max_ranks)?;
    let symbols = sample.alphabet().len();
    for n in 1..=k {
        for delta in tuples(n, n * symbols) {
            let end = |w: &Word| {
                w.symbols()
                    .iter()
                    .fold(0, |q, a| delta[q * symbols + a.index()])
            };
            let ends: Vec<(StateId, StateId, Label)> = sample
                .comparisons()
                .iter()
                .map(|c| (end(&c.left), end(&c.right), c.label))
                .collect();
            for r in 1..=max_ranks.min(n) {
                for ranking in tuples(r, n) {
                    if (0..r).any(|x| !ranking.contains(&x)) {
                        continue;
                    }
                    for above in orders(r) {
                        let ok = ends.iter().all(|&(p, q, label)| {
                            let (x, y) = (ranking[p], ranking[q]);
                            match label {
                                Label::Indifferent => x == y,
                                Label::Strict => above[x][y],
                                Label::Incomparable => x != y && !above[x][y] && !above[y][x],
                            }
                        });
                        if ok {
                            return Ok(Some(n));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// All vectors of `len` values in `0..base`.
pub(crate) fn tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

/// Every strict partial order over `r` elements as a closed relation matrix.
fn orders(r: usize) -> Vec<Vec<Vec<bool>>> {
    let pairs: Vec<(usize, usize)> = (0..r)
        .flat_map(|i| (0..r).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out: Vec<Vec<Vec<bool>>> = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let chosen: Vec<(usize, usize)> = (0..pairs.len())
            .filter(|&b| mask & (1 << b) != 0)
            .map(|b| pairs[b])
            .collect();
        if let Some(m) = closure_matrix(r, &chosen) {
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    out
}
