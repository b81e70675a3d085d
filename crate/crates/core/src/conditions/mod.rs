//! Alphabets, letter sets and the Muller / Rabin / parity acceptance
//! conditions, evaluated on sets of letters seen infinitely often.

mod alphabet;
mod file;
mod lasso;
mod muller;
mod parity;
mod rabin;

use std::collections::HashSet;

pub use alphabet::{Alphabet, LetterSet};
pub use file::ConditionFile;
pub use lasso::{all_lassos, all_words, LassoWord};
pub use muller::MullerCondition;
pub(crate) use muller::maximal_flipped_subsets;
pub use parity::ParityCondition;
pub use rabin::{PairColour, RabinCondition, RabinPair};

use crate::error::{Error, Result};
use crate::graph::ColouredGraph;

/// `true` iff `set` is in the Muller family. The empty set never is.
pub fn satisfies_muller(condition: &MullerCondition, set: &LetterSet) -> Result<bool> {
    condition.satisfies(set)
}

/// `true` iff some Rabin pair sees green and no red in `set`.
pub fn satisfies_rabin(condition: &RabinCondition, set: &LetterSet) -> Result<bool> {
    condition.satisfies(set)
}

/// `true` iff the largest priority in `set` is even.
pub fn satisfies_parity(condition: &ParityCondition, set: &LetterSet) -> Result<bool> {
    condition.satisfies(set)
}

/// The restriction of a Muller condition to a sub-alphabet.
pub fn restrict(condition: &MullerCondition, letters: &LetterSet) -> Result<MullerCondition> {
    condition.restrict(letters)
}

/// The letters occurring infinitely often in a lasso word.
pub fn inf_set(word: &LassoWord, alphabet: &Alphabet) -> LetterSet {
    word.inf_set(alphabet.len())
}

/// Any of the three acceptance conditions, over its own alphabet of colours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Acceptance {
    Muller(MullerCondition),
    Rabin(RabinCondition),
    Parity(ParityCondition),
}

/// Budget for the exponential cycle searches on Muller conditions.
pub(crate) const DEFAULT_CYCLE_BUDGET: u64 = 1 << 20;

impl Acceptance {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Acceptance::Muller(m) => m.alphabet(),
            Acceptance::Rabin(r) => r.alphabet(),
            Acceptance::Parity(p) => p.alphabet(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Acceptance::Muller(_) => "Muller",
            Acceptance::Rabin(_) => "Rabin",
            Acceptance::Parity(_) => "parity",
        }
    }

    /// Unchecked evaluation; the empty set is rejected by every condition.
    pub fn accepts(&self, set: &LetterSet) -> bool {
        match self {
            Acceptance::Muller(m) => m.accepts(set),
            Acceptance::Rabin(r) => r.accepts(set),
            Acceptance::Parity(p) => p.accepts(set),
        }
    }

    pub fn satisfies(&self, set: &LetterSet) -> Result<bool> {
        match self {
            Acceptance::Muller(m) => m.satisfies(set),
            Acceptance::Rabin(r) => r.satisfies(set),
            Acceptance::Parity(p) => p.satisfies(set),
        }
    }

    /// Children of a Zielonka-tree node labelled `set`: the maximal nonempty
    /// subsets of `set` with the opposite acceptance status.
    pub(crate) fn flipped_children(&self, set: &LetterSet) -> Result<Vec<LetterSet>> {
        Ok(match self {
            Acceptance::Muller(m) => {
                let family = m.mask_set()?;
                let n = set.universe();
                let mask = set.mask().ok_or(Error::AlphabetTooLarge(n, 64))?;
                maximal_flipped_subsets(mask, |x| family.contains(&x))
                    .into_iter()
                    .map(|x| LetterSet::from_mask(n, x))
                    .collect()
            }
            Acceptance::Rabin(r) => {
                if r.accepts(set) {
                    let sub = r.maximal_rejecting_subset(set);
                    if sub.is_empty() {
                        vec![]
                    } else {
                        vec![sub]
                    }
                } else {
                    r.maximal_accepting_subsets(set)
                }
            }
            Acceptance::Parity(p) => p.maximal_flipped_subset(set).into_iter().collect(),
        })
    }

    /// Colour set of some closed walk of `graph` accepted by the condition.
    pub(crate) fn find_accepting_cycle(&self, graph: &ColouredGraph) -> Option<LetterSet> {
        match self {
            Acceptance::Muller(m) => {
                let present = present_colours(graph);
                m.accepting()
                    .filter(|a| a.is_subset(&present))
                    .find_map(|target| {
                        graph
                            .components(|e| e.colour.is_none_or(|c| target.contains(c)))
                            .into_iter()
                            .find(|comp| &comp.colours == target)
                            .map(|comp| comp.colours)
                    })
            }
            Acceptance::Rabin(r) => rabin_accepting_cycle(graph, r.pairs()),
            Acceptance::Parity(p) => rabin_accepting_cycle(graph, &p.to_rabin_pairs()),
        }
    }

    /// Colour set of some closed walk of `graph` rejected by the condition.
    /// Closed walks using only uncoloured edges are ignored.
    pub(crate) fn find_rejecting_cycle(
        &self,
        graph: &ColouredGraph,
        budget: u64,
    ) -> Result<Option<LetterSet>> {
        match self {
            Acceptance::Muller(m) => muller_rejecting_cycle(graph, m, budget),
            Acceptance::Rabin(r) => Ok(streett_bad_cycle(graph, r.pairs())),
            Acceptance::Parity(p) => {
                let mut odds: Vec<u32> = p.priorities().iter().copied().filter(|q| q % 2 == 1).collect();
                odds.sort_unstable();
                odds.dedup();
                for q in odds {
                    let found = graph
                        .components(|e| e.colour.is_none_or(|c| p.priority(c) <= q))
                        .into_iter()
                        .find(|comp| comp.colours.iter().any(|c| p.priority(c) == q));
                    if let Some(comp) = found {
                        return Ok(Some(comp.colours));
                    }
                }
                Ok(None)
            }
        }
    }
}

fn present_colours(graph: &ColouredGraph) -> LetterSet {
    LetterSet::from_letters(graph.colours, graph.edges.iter().filter_map(|e| e.colour))
}

fn rabin_accepting_cycle(graph: &ColouredGraph, pairs: &[RabinPair]) -> Option<LetterSet> {
    pairs.iter().find_map(|p| {
        graph
            .components(|e| e.colour.is_none_or(|c| !p.red.contains(c)))
            .into_iter()
            .find(|comp| comp.colours.intersects(&p.green))
            .map(|comp| comp.colours)
    })
}

/// Searches a closed walk failing every pair: inside each SCC, pairs that the
/// SCC would satisfy force their green edges out, and the search recurses.
fn streett_bad_cycle(graph: &ColouredGraph, pairs: &[RabinPair]) -> Option<LetterSet> {
    let all: Vec<usize> = (0..graph.edges.len()).collect();
    let mut work = vec![all];
    while let Some(edge_ids) = work.pop() {
        for comp in graph.components_of(&edge_ids) {
            if comp.colours.is_empty() {
                continue;
            }
            let violated: Vec<&RabinPair> = pairs
                .iter()
                .filter(|p| comp.colours.intersects(&p.green) && !comp.colours.intersects(&p.red))
                .collect();
            if violated.is_empty() {
                return Some(comp.colours);
            }
            let kept: Vec<usize> = comp
                .edges
                .iter()
                .copied()
                .filter(|&i| {
                    graph.edges[i]
                        .colour
                        .is_none_or(|c| violated.iter().all(|p| !p.green.contains(c)))
                })
                .collect();
            if !kept.is_empty() {
                work.push(kept);
            }
        }
    }
    None
}

/// Walks down the lattice of allowed colour sets: an accepting SCC colour set
/// is refined by forbidding one of its colours at a time.
fn muller_rejecting_cycle(
    graph: &ColouredGraph,
    m: &MullerCondition,
    budget: u64,
) -> Result<Option<LetterSet>> {
    let mut seen: HashSet<LetterSet> = HashSet::new();
    let start = present_colours(graph);
    let mut work = vec![start.clone()];
    seen.insert(start);
    while let Some(allowed) = work.pop() {
        if seen.len() as u64 > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        for comp in graph.components(|e| e.colour.is_none_or(|c| allowed.contains(c))) {
            if comp.colours.is_empty() {
                continue;
            }
            if !m.accepts(&comp.colours) {
                return Ok(Some(comp.colours));
            }
            for c in comp.colours.iter() {
                let mut next = comp.colours.clone();
                next.remove(c);
                if !next.is_empty() && seen.insert(next.clone()) {
                    work.push(next);
                }
            }
        }
    }
    Ok(None)
}
