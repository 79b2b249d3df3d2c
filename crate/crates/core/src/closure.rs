//! Transitive closure of a sample, the indifference graph, and the rank partition
//! derived from it.
//!
//! The closure of a sample is fully described at the level of indifference
//! classes: two words are indifferent iff they share a connected component of the
//! indifference graph, strict preference lifts to a transitively closed relation
//! between components, and incomparability lifts (symmetrically, not transitively)
//! between components.

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};
use crate::order::{cyclic_members, transitive_closure, PartialOrder, Rank};
use crate::sample::{Label, PreferenceSample};

/// Disjoint-set forest with path halving.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Joins the sets; the smaller root index survives.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> usize {
        let (ra, rb) = (self.find(a), self.find(b));
        let (keep, drop) = if ra <= rb { (ra, rb) } else { (rb, ra) };
        self.parent[drop] = keep;
        keep
    }
}

/// Undirected graph over `W_S` with an edge per indifferent pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndifferenceGraph {
    /// `W_S` in shortlex order.
    pub vertices: Vec<Word>,
    /// Index pairs `(i, j)` with `i < j`.
    pub edges: BTreeSet<(usize, usize)>,
}

impl IndifferenceGraph {
    /// Connected components as vertex index lists, ordered by their smallest word.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertices.len());
        for &(i, j) in &self.edges {
            uf.union(i, j);
        }
        let mut slot: HashMap<usize, usize> = HashMap::new();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.vertices.len() {
            let root = uf.find(v);
            let next = out.len();
            let c = *slot.entry(root).or_insert(next);
            if c == out.len() {
                out.push(Vec::new());
            }
            out[c].push(v);
        }
        out
    }
}

pub fn indifference_graph(sample: &PreferenceSample) -> IndifferenceGraph {
    let vertices: Vec<Word> = sample.words().into_iter().collect();
    let index: HashMap<&Word, usize> = vertices.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let edges = sample
        .comparisons()
        .iter()
        .filter(|c| c.label == Label::Indifferent && c.left != c.right)
        .map(|c| {
            let (i, j) = (index[&c.left], index[&c.right]);
            (i.min(j), i.max(j))
        })
        .collect();
    IndifferenceGraph { vertices, edges }
}

/// Components plus the raw strict edges between them.
struct Grouping {
    alphabet: Alphabet,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    /// Transitively closed strict relation between classes (may be cyclic).
    above: Vec<FixedBitSet>,
    /// First sample line that produced each raw class edge.
    edge_line: HashMap<(usize, usize), Option<usize>>,
}

impl Grouping {
    fn new(sample: &PreferenceSample) -> Self {
        let graph = indifference_graph(sample);
        let classes = graph.components();
        let mut class_of = vec![0; graph.vertices.len()];
        for (c, members) in classes.iter().enumerate() {
            for &v in members {
                class_of[v] = c;
            }
        }
        let words = graph.vertices;
        let index: HashMap<Word, usize> = words
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let mut raw = vec![FixedBitSet::with_capacity(classes.len()); classes.len()];
        let mut edge_line = HashMap::new();
        for c in sample
            .comparisons()
            .iter()
            .filter(|c| c.label == Label::Strict)
        {
            let (hi, lo) = (class_of[index[&c.left]], class_of[index[&c.right]]);
            raw[hi].insert(lo);
            edge_line.entry((hi, lo)).or_insert(c.line);
        }
        Grouping {
            alphabet: sample.alphabet().clone(),
            words,
            index,
            class_of,
            classes,
            above: transitive_closure(raw),
            edge_line,
        }
    }

    fn fmt(&self, word: usize) -> String {
        self.alphabet.format_word(&self.words[word])
    }

    fn block_text(&self, class: usize) -> String {
        let members: Vec<String> = self.classes[class].iter().map(|&w| self.fmt(w)).collect();
        format!("{{{}}}", members.join(", "))
    }

    fn cycle_line(&self, cycle: &[usize]) -> Option<usize> {
        cycle
            .iter()
            .flat_map(|&i| cycle.iter().map(move |&j| (i, j)))
            .filter_map(|e| self.edge_line.get(&e).copied().flatten())
            .min()
    }

    /// Reports a strict cycle as a pair of contradictory derived triples.
    fn cycle_conflict(&self, cycle: &[usize]) -> Error {
        let line = self.cycle_line(cycle);
        let triple =
            |l: usize, r: usize, b: Label| format!("({}, {}, {b})", self.fmt(l), self.fmt(r));
        let (first, second) = if cycle.len() == 1 {
            // Strict edge inside one indifference class.
            let members = &self.classes[cycle[0]];
            let (l, r) = (members[0], *members.last().unwrap());
            (
                triple(l, r, Label::Strict),
                triple(l, r, Label::Indifferent),
            )
        } else {
            let (l, r) = (self.classes[cycle[0]][0], self.classes[cycle[1]][0]);
            (triple(l, r, Label::Strict), triple(r, l, Label::Strict))
        };
        Error::ClosureConflict {
            first,
            second,
            line,
        }
    }

    fn order_cycle(&self, cycle: &[usize]) -> Error {
        Error::SampleOrderCycle {
            blocks: cycle.iter().map(|&c| self.block_text(c)).collect(),
            line: self.cycle_line(cycle),
        }
    }

    /// Adds incomparable pairs, rejecting those that clash with the rest.
    fn finish(self, sample: &PreferenceSample) -> Result<ClosedSample> {
        let n = self.classes.len();
        let mut incomparable = vec![FixedBitSet::with_capacity(n); n];
        for c in sample
            .comparisons()
            .iter()
            .filter(|c| c.label == Label::Incomparable)
        {
            let (l, r) = (self.index[&c.left], self.index[&c.right]);
            let (cl, cr) = (self.class_of[l], self.class_of[r]);
            let clash = if cl == cr {
                Some(Label::Indifferent)
            } else if self.above[cl].contains(cr) || self.above[cr].contains(cl) {
                Some(Label::Strict)
            } else {
                None
            };
            if let Some(other) = clash {
                let (hl, hr) = if self.above[cr].contains(cl) {
                    (r, l)
                } else {
                    (l, r)
                };
                return Err(Error::ClosureConflict {
                    first: format!("({}, {}, ⊥)", self.fmt(l), self.fmt(r)),
                    second: format!("({}, {}, {other})", self.fmt(hl), self.fmt(hr)),
                    line: c.line,
                });
            }
            incomparable[cl].insert(cr);
            incomparable[cr].insert(cl);
        }
        Ok(ClosedSample {
            alphabet: self.alphabet,
            words: self.words,
            index: self.index,
            class_of: self.class_of,
            classes: self.classes,
            above: self.above,
            incomparable,
        })
    }
}

/// The transitive closure `S°` of a sample.
#[derive(Clone, Debug)]
pub struct ClosedSample {
    alphabet: Alphabet,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    above: Vec<FixedBitSet>,
    incomparable: Vec<FixedBitSet>,
}

impl ClosedSample {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// `W_S` in shortlex order.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word_index(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        self.index.contains_key(w)
    }

    /// Indifference class of word `i`, numbered by the class's smallest word.
    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Does `S°` contain `(words[i], words[j], label)`?
    pub fn holds(&self, i: usize, j: usize, label: Label) -> bool {
        let (ci, cj) = (self.class_of[i], self.class_of[j]);
        match label {
            Label::Indifferent => ci == cj,
            Label::Strict => self.above[ci].contains(cj),
            Label::Incomparable => self.incomparable[ci].contains(cj),
        }
    }

    /// Word-level [`holds`](Self::holds); false for words outside `W_S`.
    pub fn contains(&self, w: &Word, u: &Word, label: Label) -> bool {
        match (self.word_index(w), self.word_index(u)) {
            (Some(i), Some(j)) => self.holds(i, j, label),
            _ => false,
        }
    }

    /// The label `S°` records for the ordered pair, if any.
    pub fn label(&self, i: usize, j: usize) -> Option<Label> {
        [Label::Indifferent, Label::Strict, Label::Incomparable]
            .into_iter()
            .find(|&l| self.holds(i, j, l))
    }

    /// All triples of `S°` as index triples.
    pub fn triples(&self) -> Vec<(usize, usize, Label)> {
        let n = self.words.len();
        (0..n)
            .flat_map(|i| (0..n).filter_map(move |j| self.label(i, j).map(|l| (i, j, l))))
            .collect()
    }

    pub fn len(&self) -> usize {
        let sizes: Vec<usize> = self.classes.iter().map(Vec::len).collect();
        let mut total = 0;
        for (ci, &si) in sizes.iter().enumerate() {
            total += si * si;
            for cj in self.above[ci].ones().chain(self.incomparable[ci].ones()) {
                total += si * sizes[cj];
            }
        }
        total
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Materializes `S°` as a sample (one comparison per triple).
    pub fn to_sample(&self) -> PreferenceSample {
        let comparisons = self
            .triples()
            .into_iter()
            .map(|(i, j, l)| {
                crate::sample::Comparison::new(self.words[i].clone(), self.words[j].clone(), l)
            })
            .collect();
        PreferenceSample::new(self.alphabet.clone(), comparisons)
    }
}

/// Computes `S°`, failing when the closure contains contradictory triples.
pub fn close_sample(sample: &PreferenceSample) -> Result<ClosedSample> {
    let grouping = Grouping::new(sample);
    if let Some(cycle) = cyclic_members(&grouping.above) {
        return Err(grouping.cycle_conflict(&cycle));
    }
    grouping.finish(sample)
}

/// Indifference blocks of `W_S` and the partial order induced between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankPartition {
    /// Blocks in index order; block `i` has rank `Rank(i)` and name `i + 1`.
    pub blocks: Vec<Vec<Word>>,
    /// `(i, j)`: some word of block `i` is strictly preferred to some word of block `j`
    /// in the closed sample.
    pub relation: Vec<(usize, usize)>,
    pub order: PartialOrder,
    block_of: HashMap<Word, usize>,
}

impl RankPartition {
    pub fn from_closed(closed: &ClosedSample) -> Self {
        let blocks: Vec<Vec<Word>> = closed
            .classes
            .iter()
            .map(|c| c.iter().map(|&w| closed.words[w].clone()).collect())
            .collect();
        let relation: Vec<(usize, usize)> = closed
            .above
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.ones().map(move |j| (i, j)))
            .collect();
        let names = (1..=blocks.len()).map(|i| i.to_string()).collect();
        let order =
            PartialOrder::from_indices(names, &relation).expect("closure was checked acyclic");
        let block_of = closed
            .words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), closed.class_of[i]))
            .collect();
        RankPartition {
            blocks,
            relation,
            order,
            block_of,
        }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, w: &Word) -> Option<usize> {
        self.block_of.get(w).copied()
    }

    pub fn rank_of(&self, w: &Word) -> Option<Rank> {
        self.block_of(w).map(|b| Rank(b as u32))
    }
}

/// Blocks, relation and partial order of a sample. A strict cycle between blocks is
/// reported as [`Error::SampleOrderCycle`]; incomparability clashes as
/// [`Error::ClosureConflict`].
pub fn rank_partition(sample: &PreferenceSample) -> Result<RankPartition> {
    let grouping = Grouping::new(sample);
    if let Some(cycle) = cyclic_members(&grouping.above) {
        return Err(grouping.order_cycle(&cycle));
    }
    let closed = grouping.finish(sample)?;
    Ok(RankPartition::from_closed(&closed))
}
