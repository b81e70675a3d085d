use super::alphabet::{Alphabet, LetterSet};
use crate::error::{Error, Result};

/// A max-even parity condition: a set is accepted when the largest
/// priority among its colours is even.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityCondition {
    alphabet: Alphabet,
    priorities: Vec<u32>,
}

impl ParityCondition {
    pub fn new(alphabet: Alphabet, priorities: Vec<u32>) -> Result<Self> {
        if priorities.len() != alphabet.len() {
            return Err(Error::MissingPriority(priorities.len().min(alphabet.len())));
        }
        Ok(ParityCondition {
            alphabet,
            priorities,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn priority(&self, colour: usize) -> u32 {
        self.priorities[colour]
    }

    pub fn priorities(&self) -> &[u32] {
        &self.priorities
    }

    pub fn max_priority(&self) -> u32 {
        self.priorities.iter().copied().max().unwrap_or(0)
    }

    pub fn max_in(&self, set: &LetterSet) -> Option<u32> {
        set.iter().map(|c| self.priorities[c]).max()
    }

    pub fn accepts(&self, set: &LetterSet) -> bool {
        self.max_in(set).is_some_and(|p| p % 2 == 0)
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

    /// The maximal subset of `set` whose acceptance differs from `set`'s:
    /// every colour up to the largest priority of the opposite parity.
    pub(crate) fn maximal_flipped_subset(&self, set: &LetterSet) -> Option<LetterSet> {
        let top = self.max_in(set)?;
        let bound = set
            .iter()
            .map(|c| self.priorities[c])
            .filter(|&p| p % 2 != top % 2)
            .max()?;
        Some(LetterSet::from_letters(
            set.universe(),
            set.iter().filter(|&c| self.priorities[c] <= bound),
        ))
    }

    /// The equivalent Rabin pairs: one pair per even priority `p`, green on
    /// `p`, red on everything above it.
    pub fn to_rabin_pairs(&self) -> Vec<super::RabinPair> {
        let n = self.alphabet.len();
        let mut evens: Vec<u32> = self.priorities.iter().copied().filter(|p| p % 2 == 0).collect();
        evens.sort_unstable();
        evens.dedup();
        evens
            .into_iter()
            .map(|p| super::RabinPair {
                green: LetterSet::from_letters(n, (0..n).filter(|&c| self.priorities[c] == p)),
                red: LetterSet::from_letters(n, (0..n).filter(|&c| self.priorities[c] > p)),
            })
            .collect()
    }
}
