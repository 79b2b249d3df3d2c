//! State-merging learner over the prefix tree.
//!
//! Blocks of a [`StatePartition`] are identified by their name: the smallest prefix
//! tree state they contain, which is also their shortlex-smallest word.

use std::collections::BTreeSet;
use std::fmt;

use crate::automaton::{Pdfa, Pnfa, StateId};
use crate::error::{Error, Result};
use crate::order::Rank;
use crate::prefix_tree::PrefixTree;

const NO_BLOCK: u32 = u32::MAX;

/// A partition of prefix-tree states.
#[derive(Clone, Debug)]
pub struct StatePartition {
    /// Internal block id of each state.
    block_of: Vec<u32>,
    /// Members per block id; empty once absorbed.
    members: Vec<Vec<StateId>>,
    /// Smallest member per block id.
    name: Vec<StateId>,
    /// Block id per block name, `NO_BLOCK` when the state names no block.
    by_name: Vec<u32>,
    rank: Vec<Option<Rank>>,
    /// Set when a join put two distinct defined ranks in one block.
    conflicted: Vec<bool>,
}

/// Reversal record for one in-place merge.
struct Undo {
    keep: u32,
    absorbed: u32,
    moved: usize,
    keep_name: StateId,
    absorbed_name: StateId,
    keep_rank: Option<Rank>,
    keep_conflicted: bool,
}

impl StatePartition {
    /// One block per prefix-tree state.
    pub fn singletons(tree: &PrefixTree) -> Self {
        let n = tree.num_states();
        StatePartition {
            block_of: (0..n as u32).collect(),
            members: (0..n).map(|q| vec![q]).collect(),
            name: (0..n).collect(),
            by_name: (0..n as u32).collect(),
            rank: (0..n).map(|q| tree.rank(q)).collect(),
            conflicted: vec![false; n],
        }
    }

    pub fn num_states(&self) -> usize {
        self.block_of.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.by_name.iter().filter(|&&b| b != NO_BLOCK).count()
    }

    /// Name of the block containing `q`.
    pub fn block_name(&self, q: StateId) -> StateId {
        self.name[self.block_of[q] as usize]
    }

    pub fn is_block(&self, name: StateId) -> bool {
        self.by_name.get(name).is_some_and(|&b| b != NO_BLOCK)
    }

    /// Block names in ascending order.
    pub fn block_names(&self) -> Vec<StateId> {
        (0..self.by_name.len())
            .filter(|&q| self.is_block(q))
            .collect()
    }

    /// Sorted members of the named block.
    pub fn block(&self, name: StateId) -> Result<Vec<StateId>> {
        let id = self.id(name)?;
        let mut m = self.members[id as usize].clone();
        m.sort_unstable();
        Ok(m)
    }

    /// All blocks, ordered by name, members sorted.
    pub fn blocks(&self) -> Vec<Vec<StateId>> {
        self.block_names()
            .into_iter()
            .map(|b| self.block(b).expect("listed block exists"))
            .collect()
    }

    /// The defined rank of the named block, if any.
    pub fn block_rank(&self, name: StateId) -> Result<Option<Rank>> {
        Ok(self.rank[self.id(name)? as usize])
    }

    /// Within every block, all defined ranks agree.
    pub fn is_ranking_consistent(&self) -> bool {
        !self.conflicted.iter().any(|&c| c)
    }

    fn id(&self, name: StateId) -> Result<u32> {
        match self.by_name.get(name) {
            Some(&b) if b != NO_BLOCK => Ok(b),
            _ => Err(Error::BlockNotInPartition(name)),
        }
    }

    /// The partition with the two named blocks replaced by their union.
    pub fn join(&self, bi: StateId, bj: StateId) -> Result<StatePartition> {
        let (i, j) = (self.id(bi)?, self.id(bj)?);
        if i == j {
            return Err(Error::InvalidConfig(format!(
                "cannot join block {bi} with itself"
            )));
        }
        let mut out = self.clone();
        out.merge(i, j);
        Ok(out)
    }

    /// Merges two distinct blocks in place, moving the smaller member list.
    fn merge(&mut self, a: u32, b: u32) -> Undo {
        let (keep, absorbed) = if self.members[a as usize].len() >= self.members[b as usize].len() {
            (a, b)
        } else {
            (b, a)
        };
        let (k, x) = (keep as usize, absorbed as usize);
        let undo = Undo {
            keep,
            absorbed,
            moved: self.members[x].len(),
            keep_name: self.name[k],
            absorbed_name: self.name[x],
            keep_rank: self.rank[k],
            keep_conflicted: self.conflicted[k],
        };
        let moved = std::mem::take(&mut self.members[x]);
        for &q in &moved {
            self.block_of[q] = keep;
        }
        self.members[k].extend(moved);
        let merged_name = undo.keep_name.min(undo.absorbed_name);
        self.by_name[undo.keep_name] = NO_BLOCK;
        self.by_name[undo.absorbed_name] = NO_BLOCK;
        self.by_name[merged_name] = keep;
        self.name[k] = merged_name;
        self.conflicted[k] |= self.conflicted[x]
            || matches!((self.rank[k], self.rank[x]), (Some(r), Some(s)) if r != s);
        self.rank[k] = self.rank[k].or(self.rank[x]);
        undo
    }

    fn undo(&mut self, u: Undo) {
        let (k, x) = (u.keep as usize, u.absorbed as usize);
        let at = self.members[k].len() - u.moved;
        let moved = self.members[k].split_off(at);
        for &q in &moved {
            self.block_of[q] = u.absorbed;
        }
        self.members[x] = moved;
        self.by_name[self.name[k]] = NO_BLOCK;
        self.name[k] = u.keep_name;
        self.by_name[u.keep_name] = u.keep;
        self.by_name[u.absorbed_name] = u.absorbed;
        self.rank[k] = u.keep_rank;
        self.conflicted[k] = u.keep_conflicted;
    }

    /// Distinct successor blocks of block `id` on each symbol, by ascending name,
    /// for the first symbol with at least two.
    fn nondeterminism(&self, tree: &PrefixTree, id: u32) -> Option<(u32, u32)> {
        let mut succ: Vec<u32> = Vec::new();
        for a in tree.alphabet().symbols() {
            succ.clear();
            for &q in &self.members[id as usize] {
                if let Some(c) = tree.child(q, a) {
                    let b = self.block_of[c];
                    if !succ.contains(&b) {
                        succ.push(b);
                    }
                }
            }
            if succ.len() >= 2 {
                succ.sort_unstable_by_key(|&b| self.name[b as usize]);
                return Some((succ[0], succ[1]));
            }
        }
        None
    }

    /// Resolves nondeterminism in place, starting from the named candidate blocks.
    /// Every block outside `dirty` must already be deterministic and the partition
    /// ranking-consistent. Returns `false` when two blocks with distinct defined
    /// ranks would have to merge.
    fn determinize_in_place(
        &mut self,
        tree: &PrefixTree,
        mut dirty: BTreeSet<StateId>,
        log: &mut Vec<Undo>,
        cascade: &mut Vec<(StateId, StateId)>,
    ) -> bool {
        while let Some(&name) = dirty.first() {
            let id = self.by_name[name];
            let Some((bi, bj)) = self.nondeterminism(tree, id) else {
                dirty.remove(&name);
                continue;
            };
            let (ni, nj) = (self.name[bi as usize], self.name[bj as usize]);
            if let (Some(r), Some(s)) = (self.rank[bi as usize], self.rank[bj as usize]) {
                if r != s {
                    return false;
                }
            }
            dirty.remove(&ni);
            dirty.remove(&nj);
            log.push(self.merge(bi, bj));
            cascade.push((ni, nj));
            dirty.insert(ni.min(nj));
            dirty.insert(self.block_name(name));
        }
        true
    }

    fn rollback(&mut self, log: &mut Vec<Undo>) {
        while let Some(u) = log.pop() {
            self.undo(u);
        }
    }
}

/// Merges blocks until the quotient is deterministic; `None` when that forces two
/// distinct defined ranks together.
pub fn determinize(tree: &PrefixTree, partition: &StatePartition) -> Option<StatePartition> {
    if !partition.is_ranking_consistent() {
        return None;
    }
    let mut out = partition.clone();
    let dirty = out.block_names().into_iter().collect();
    let mut log = Vec::new();
    out.determinize_in_place(tree, dirty, &mut log, &mut Vec::new())
        .then_some(out)
}

/// [`StatePartition::join`] followed by [`determinize`].
pub fn deterministic_join(
    tree: &PrefixTree,
    partition: &StatePartition,
    bi: StateId,
    bj: StateId,
) -> Result<Option<StatePartition>> {
    Ok(determinize(tree, &partition.join(bi, bj)?))
}

/// The automaton over blocks; state `sK` is the K-th block by name.
pub fn quotient(tree: &PrefixTree, partition: &StatePartition) -> Result<Pnfa> {
    if let Some(id) = partition.conflicted.iter().position(|&c| c) {
        return Err(Error::RankingInconsistent(tree.label(partition.name[id])));
    }
    let names = partition.block_names();
    let mut index = vec![usize::MAX; partition.num_states()];
    for (i, &b) in names.iter().enumerate() {
        index[b] = i;
    }
    let k = tree.alphabet().len();
    let mut delta = vec![Vec::new(); names.len() * k];
    for q in 0..partition.num_states() {
        let from = index[partition.block_name(q)];
        for a in tree.alphabet().symbols() {
            if let Some(c) = tree.child(q, a) {
                delta[from * k + a.index()].push(index[partition.block_name(c)]);
            }
        }
    }
    let ranking = names
        .iter()
        .map(|&b| partition.block_rank(b).expect("listed block exists"))
        .collect();
    Pnfa::new(
        tree.alphabet().clone(),
        (0..names.len()).map(|i| format!("s{i}")).collect(),
        delta,
        index[partition.block_name(0)],
        tree.order().clone(),
        ranking,
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AttemptOutcome {
    /// Both blocks carry distinct defined ranks.
    RankConflict,
    /// Determinization had to merge two distinctly ranked blocks.
    Undefined,
    /// Committed, together with the determinization merges it triggered (by name).
    Accepted { cascade: Vec<(StateId, StateId)> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attempt {
    /// Name of the earlier block tried against the current state.
    pub block: StateId,
    pub outcome: AttemptOutcome,
}

/// One pass of the outer loop for a state that still names its own block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iteration {
    pub index: usize,
    pub attempts: Vec<Attempt>,
}

impl Iteration {
    pub fn accepted(&self) -> Option<&Attempt> {
        self.attempts
            .iter()
            .find(|a| matches!(a.outcome, AttemptOutcome::Accepted { .. }))
    }
}

#[derive(Clone, Debug)]
pub struct Learned {
    pub tree: PrefixTree,
    pub partition: StatePartition,
    /// Deterministic quotient; possibly partial for non-characteristic samples.
    pub automaton: Pnfa,
    pub trace: Vec<Iteration>,
    pub warnings: Vec<String>,
}

impl Learned {
    /// Final blocks as formatted words.
    pub fn block_words(&self) -> Vec<Vec<String>> {
        self.partition
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&q| self.tree.label(q)).collect())
            .collect()
    }

    /// One line per iteration: `i=<n> u_i=<word> tried=[...] accepted=<word|none>`.
    pub fn trace_lines(&self) -> Vec<String> {
        self.trace
            .iter()
            .map(|it| {
                TraceLine {
                    tree: &self.tree,
                    it,
                }
                .to_string()
            })
            .collect()
    }

    pub fn to_pdfa(&self) -> Result<Pdfa> {
        self.automaton.to_pdfa()
    }
}

struct TraceLine<'a> {
    tree: &'a PrefixTree,
    it: &'a Iteration,
}

impl fmt::Display for TraceLine<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tried: Vec<String> = self
            .it
            .attempts
            .iter()
            .map(|a| self.tree.label(a.block))
            .collect();
        let accepted = self
            .it
            .accepted()
            .map_or("none".to_string(), |a| self.tree.label(a.block));
        write!(
            f,
            "i={} u_i={} tried=[{}] accepted={}",
            self.it.index,
            self.tree.label(self.it.index),
            tried.join(","),
            accepted
        )
    }
}

/// Tries to fold each state, in shortlex order, into the earliest compatible earlier
/// block; states already absorbed by an earlier merge are skipped.
pub fn learn_pdfa(tree: &PrefixTree) -> Result<Learned> {
    let mut part = StatePartition::singletons(tree);
    let mut trace = Vec::new();
    let mut log = Vec::new();
    for i in 1..tree.num_states() {
        if part.block_name(i) != i {
            continue;
        }
        let mut attempts = Vec::new();
        let candidates: Vec<StateId> = (0..i).filter(|&b| part.is_block(b)).collect();
        for b in candidates {
            let (bid, iid) = (part.by_name[b], part.by_name[i]);
            if let (Some(r), Some(s)) = (part.rank[bid as usize], part.rank[iid as usize]) {
                if r != s {
                    attempts.push(Attempt {
                        block: b,
                        outcome: AttemptOutcome::RankConflict,
                    });
                    continue;
                }
            }
            log.push(part.merge(bid, iid));
            let mut cascade = Vec::new();
            if part.determinize_in_place(tree, BTreeSet::from([b]), &mut log, &mut cascade) {
                log.clear();
                attempts.push(Attempt {
                    block: b,
                    outcome: AttemptOutcome::Accepted { cascade },
                });
                break;
            }
            part.rollback(&mut log);
            attempts.push(Attempt {
                block: b,
                outcome: AttemptOutcome::Undefined,
            });
        }
        trace.push(Iteration { index: i, attempts });
    }

    let automaton = quotient(tree, &part)?;
    let mut warnings = Vec::new();
    let unranked = automaton.unranked_states();
    if !unranked.is_empty() {
        let names: Vec<&str> = unranked.iter().map(|&q| automaton.state_name(q)).collect();
        warnings.push(format!("unranked states: {}", names.join(", ")));
    }
    let missing = automaton.missing_transitions();
    if !missing.is_empty() {
        let items: Vec<String> = missing
            .iter()
            .map(|&(q, a)| {
                format!(
                    "({}, {})",
                    automaton.state_name(q),
                    tree.alphabet().token(a)
                )
            })
            .collect();
        warnings.push(format!("missing transitions: {}", items.join(", ")));
    }
    Ok(Learned {
        tree: tree.clone(),
        partition: part,
        automaton,
        trace,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::equivalent;
    use crate::fixtures;
    use crate::prefix_tree::build_prefix_tree;
    use crate::sample::PreferenceSample;

    fn tree() -> PrefixTree {
        build_prefix_tree(&fixtures::parity_sample()).unwrap()
    }

    fn state(t: &PrefixTree, w: &str) -> StateId {
        t.state(&t.alphabet().parse_word(w).unwrap()).unwrap()
    }

    fn labels(t: &PrefixTree, p: &StatePartition) -> Vec<Vec<String>> {
        p.blocks()
            .iter()
            .map(|b| b.iter().map(|&q| t.label(q)).collect())
            .collect()
    }

    #[test]
    fn join_and_quotient() {
        let t = tree();
        let p0 = StatePartition::singletons(&t);
        assert_eq!(quotient(&t, &p0).unwrap().num_states(), t.num_states());
        let p = p0.join(0, state(&t, "a")).unwrap();
        assert_eq!(p.num_blocks(), t.num_states() - 1);
        assert_eq!(p.block(0).unwrap(), vec![0, 1]);
        let q = quotient(&t, &p).unwrap();
        assert!(!q.is_deterministic());
        assert_eq!(q.successors(0, t.alphabet().symbol("a").unwrap()).len(), 2);
        assert!(matches!(p.join(1, 2), Err(Error::BlockNotInPartition(1))));
        assert!(determinize(&t, &p).is_none());
        assert!(determinize(&t, &p0).is_some());
    }

    #[test]
    fn quotient_rejects_mixed_ranks() {
        let t = tree();
        let p = StatePartition::singletons(&t)
            .join(state(&t, "a"), state(&t, "a.a"))
            .unwrap();
        assert!(!p.is_ranking_consistent());
        assert!(matches!(
            quotient(&t, &p),
            Err(Error::RankingInconsistent(_))
        ));
    }

    #[test]
    fn deterministic_join_cascade() {
        let t = tree();
        let p = StatePartition::singletons(&t);
        let p = deterministic_join(&t, &p, 0, state(&t, "a.a"))
            .unwrap()
            .unwrap();
        let blocks = labels(&t, &p);
        assert!(blocks.contains(&vec!["eps".into(), "a.a".into()]));
        assert!(blocks.contains(&vec!["b".into(), "a.a.b".into()]));
        assert!(blocks.contains(&vec!["b.b".into(), "a.a.b.b".into()]));
        assert_eq!(p.num_blocks(), t.num_states() - 3);
    }

    #[test]
    fn running_example_partition() {
        let t = tree();
        let learned = learn_pdfa(&t).unwrap();
        assert_eq!(
            learned.block_words(),
            vec![
                vec!["eps", "a.a", "b.b", "a.a.b.b"],
                vec!["a", "a.b.b"],
                vec!["b", "a.a.b", "a.b.a", "b.a.a", "b.b.b"],
                vec!["a.b", "b.a", "a.b.a.a", "a.b.b.b"],
            ]
        );
        assert!(learned.warnings.is_empty());
        let a = learned.to_pdfa().unwrap();
        assert!(equivalent(&a, &fixtures::parity_pdfa())
            .unwrap()
            .is_equivalent());
    }

    #[test]
    fn trace_lines() {
        let learned = learn_pdfa(&tree()).unwrap();
        let lines = learned.trace_lines();
        assert_eq!(lines[0], "i=1 u_i=a tried=[eps] accepted=none");
        assert_eq!(lines[1], "i=2 u_i=b tried=[eps,a] accepted=none");
        assert_eq!(lines[2], "i=3 u_i=a.a tried=[eps] accepted=eps");
    }

    #[test]
    fn trivial_sample() {
        let s = PreferenceSample::parse("alphabet: a\neps = eps\n").unwrap();
        let learned = learn_pdfa(&build_prefix_tree(&s).unwrap()).unwrap();
        assert_eq!(learned.automaton.num_states(), 1);
        assert_eq!(learned.warnings.len(), 1);
    }

    #[test]
    fn rollback_restores_partition() {
        let t = tree();
        let mut p = StatePartition::singletons(&t);
        let before = labels(&t, &p);
        let mut log = vec![p.merge(0, 1)];
        assert!(!p.determinize_in_place(&t, BTreeSet::from([0]), &mut log, &mut Vec::new()));
        p.rollback(&mut log);
        assert_eq!(labels(&t, &p), before);
        assert!(p.is_ranking_consistent());
    }
}
