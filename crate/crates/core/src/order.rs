//! Ranks, partial orders over ranks, and the four-way preference categories.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Index of a rank inside a [`PartialOrder`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rank(pub u32);

impl Rank {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Outcome of comparing two ranks or two words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PreferenceCategory {
    Indifferent,
    FirstStrict,
    SecondStrict,
    Incomparable,
    /// The model cannot answer (partial transitions or unranked state).
    Unknown,
}

impl PreferenceCategory {
    /// The category seen from the other argument's side.
    pub fn flip(self) -> Self {
        match self {
            Self::FirstStrict => Self::SecondStrict,
            Self::SecondStrict => Self::FirstStrict,
            other => other,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Indifferent => "indifferent",
            Self::FirstStrict => "first-strict",
            Self::SecondStrict => "second-strict",
            Self::Incomparable => "incomparable",
            Self::Unknown => "unknown",
        }
    }
}

impl fmt::Display for PreferenceCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A finite partial order over named ranks.
///
/// The strict relation is stored transitively closed; construction fails when the
/// closure relates two distinct ranks in both directions (or a rank to itself).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialOrder {
    names: Vec<String>,
    above: Vec<FixedBitSet>,
}

impl PartialOrder {
    /// Builds the order from rank names and `(higher, lower)` pairs of indices.
    pub fn from_indices(names: Vec<String>, strict_pairs: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut seen = HashMap::with_capacity(n);
        for name in &names {
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(Error::InvalidAutomaton(format!("duplicate rank `{name}`")));
            }
        }
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for &(hi, lo) in strict_pairs {
            if hi >= n || lo >= n {
                return Err(Error::UnknownRank(format!("#{}", hi.max(lo))));
            }
            above[hi].insert(lo);
        }
        let above = transitive_closure(above);
        if let Some(cycle) = cyclic_members(&above) {
            return Err(Error::OrderCycle(
                cycle.into_iter().map(|i| names[i].clone()).collect(),
            ));
        }
        Ok(PartialOrder { names, above })
    }

    /// Builds the order from rank names and `(higher, lower)` name pairs.
    pub fn from_names<S: AsRef<str>>(names: Vec<String>, strict_pairs: &[(S, S)]) -> Result<Self> {
        let idx: HashMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let lookup = |s: &str| {
            idx.get(s)
                .copied()
                .ok_or_else(|| Error::UnknownRank(s.to_string()))
        };
        let pairs = strict_pairs
            .iter()
            .map(|(h, l)| Ok((lookup(h.as_ref())?, lookup(l.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        PartialOrder::from_indices(names, &pairs)
    }

    /// A discrete order (no strict pairs) over `n` ranks named `1..=n`.
    pub fn discrete(n: usize) -> Self {
        let names = (1..=n).map(|i| i.to_string()).collect();
        PartialOrder::from_indices(names, &[]).expect("discrete order is acyclic")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ranks(&self) -> impl Iterator<Item = Rank> {
        (0..self.names.len() as u32).map(Rank)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, r: Rank) -> &str {
        &self.names[r.index()]
    }

    pub fn rank(&self, name: &str) -> Result<Rank> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Rank(i as u32))
            .ok_or_else(|| Error::UnknownRank(name.to_string()))
    }

    /// `true` when `hi` is strictly above `lo`.
    pub fn strictly_above(&self, hi: Rank, lo: Rank) -> bool {
        self.above[hi.index()].contains(lo.index())
    }

    /// All strict pairs `(higher, lower)` of the closed relation, sorted.
    pub fn strict_pairs(&self) -> Vec<(Rank, Rank)> {
        self.above
            .iter()
            .enumerate()
            .flat_map(|(h, row)| row.ones().map(move |l| (Rank(h as u32), Rank(l as u32))))
            .collect()
    }

    /// Pairs of the transitive reduction (the Hasse diagram).
    pub fn covering_pairs(&self) -> Vec<(Rank, Rank)> {
        self.strict_pairs()
            .into_iter()
            .filter(|&(h, l)| {
                !self.above[h.index()]
                    .ones()
                    .any(|m| m != l.index() && self.above[m].contains(l.index()))
            })
            .collect()
    }

    pub fn compare(&self, o1: Rank, o2: Rank) -> PreferenceCategory {
        if o1 == o2 {
            PreferenceCategory::Indifferent
        } else if self.strictly_above(o1, o2) {
            PreferenceCategory::FirstStrict
        } else if self.strictly_above(o2, o1) {
            PreferenceCategory::SecondStrict
        } else {
            PreferenceCategory::Incomparable
        }
    }

    /// Name-level comparison; errors on unknown rank names.
    pub fn rank_compare(&self, o1: &str, o2: &str) -> Result<PreferenceCategory> {
        Ok(self.compare(self.rank(o1)?, self.rank(o2)?))
    }
}

/// Warshall over bit rows.
pub(crate) fn transitive_closure(mut rows: Vec<FixedBitSet>) -> Vec<FixedBitSet> {
    let n = rows.len();
    for k in 0..n {
        let row_k = rows[k].clone();
        for row in rows.iter_mut() {
            if row.contains(k) {
                row.union_with(&row_k);
            }
        }
    }
    rows
}

/// Members lying on a cycle of a closed relation, if any.
pub(crate) fn cyclic_members(closed: &[FixedBitSet]) -> Option<Vec<usize>> {
    let start = (0..closed.len()).find(|&i| closed[i].contains(i))?;
    Some(
        (0..closed.len())
            .filter(|&j| closed[start].contains(j) && closed[j].contains(start))
            .collect(),
    )
}
