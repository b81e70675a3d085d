use super::alphabet::{Alphabet, LetterSet};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RabinPair {
    pub green: LetterSet,
    pub red: LetterSet,
}

/// What a single colour means to a Rabin pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairColour {
    Green,
    Red,
    Orange,
}

/// A Rabin condition: a list of (green, red) pairs over an output alphabet.
/// A set is accepted when some pair sees green and no red.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RabinCondition {
    alphabet: Alphabet,
    pairs: Vec<RabinPair>,
    names: Vec<String>,
}

impl RabinCondition {
    pub fn new(alphabet: Alphabet, pairs: Vec<RabinPair>) -> Result<Self> {
        let names = (0..pairs.len()).map(|i| i.to_string()).collect();
        Self::with_names(alphabet, pairs, names)
    }

    pub fn with_names(alphabet: Alphabet, pairs: Vec<RabinPair>, names: Vec<String>) -> Result<Self> {
        assert_eq!(pairs.len(), names.len());
        for (i, p) in pairs.iter().enumerate() {
            for set in [&p.green, &p.red] {
                if set.universe() != alphabet.len() {
                    return Err(Error::AlphabetMismatch {
                        expected: alphabet.len(),
                        found: set.universe(),
                    });
                }
            }
            if p.green.intersects(&p.red) {
                return Err(Error::OverlappingRabinPair(i));
            }
        }
        Ok(RabinCondition {
            alphabet,
            pairs,
            names,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn pairs(&self) -> &[RabinPair] {
        &self.pairs
    }

    pub fn pair_names(&self) -> &[String] {
        &self.names
    }

    pub fn colour_for_pair(&self, pair: usize, colour: usize) -> PairColour {
        let p = &self.pairs[pair];
        if p.green.contains(colour) {
            PairColour::Green
        } else if p.red.contains(colour) {
            PairColour::Red
        } else {
            PairColour::Orange
        }
    }

    /// Index of the first pair accepting `set`, if any.
    pub fn accepting_pair(&self, set: &LetterSet) -> Option<usize> {
        self.pairs
            .iter()
            .position(|p| set.intersects(&p.green) && !set.intersects(&p.red))
    }

    pub fn accepts(&self, set: &LetterSet) -> bool {
        self.accepting_pair(set).is_some()
    }

    pub fn satisfies(&self, set: &LetterSet) -> Result<bool> {
        if set.universe() != self.alphabet.len() {
            return Err(Error::AlphabetMismatch {
                expected: self.alphabet.len(),
                found: set.universe(),
            });
        }
        if set.is_empty() {
            return Err(Error::EmptyInfinitySet);
        }
        Ok(self.accepts(set))
    }

    /// The unique maximal rejecting subset of an accepting set (possibly empty).
    pub(crate) fn maximal_rejecting_subset(&self, set: &LetterSet) -> LetterSet {
        let mut current = set.clone();
        loop {
            let mut changed = false;
            for p in &self.pairs {
                if current.intersects(&p.green) && !current.intersects(&p.red) {
                    current = current.difference(&p.green);
                    changed = true;
                }
            }
            if !changed {
                return current;
            }
        }
    }

    /// Maximal accepting subsets of a rejecting set.
    pub(crate) fn maximal_accepting_subsets(&self, set: &LetterSet) -> Vec<LetterSet> {
        let mut candidates: Vec<LetterSet> = self
            .pairs
            .iter()
            .map(|p| set.difference(&p.red))
            .filter(|s| {
                self.pairs
                    .iter()
                    .any(|p| s.intersects(&p.green) && !s.intersects(&p.red))
            })
            .collect();
        candidates.sort();
        candidates.dedup();
        let maximal: Vec<LetterSet> = candidates
            .iter()
            .filter(|c| !candidates.iter().any(|d| d != *c && c.is_subset(d)))
            .cloned()
            .collect();
        maximal
    }
}
