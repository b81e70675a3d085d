use std::collections::{BTreeSet, HashSet};

use super::alphabet::{Alphabet, LetterSet};
use crate::error::{Error, Result};

/// A Muller condition: an alphabet and a family of nonempty accepting sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MullerCondition {
    alphabet: Alphabet,
    accepting: BTreeSet<LetterSet>,
}

impl MullerCondition {
    pub fn new<I>(alphabet: Alphabet, accepting: I) -> Result<Self>
    where
        I: IntoIterator<Item = LetterSet>,
    {
        let mut family = BTreeSet::new();
        for set in accepting {
            if set.universe() != alphabet.len() {
                return Err(Error::AlphabetMismatch {
                    expected: alphabet.len(),
                    found: set.universe(),
                });
            }
            if set.is_empty() {
                return Err(Error::EmptyAcceptingSet);
            }
            if family.contains(&set) {
                return Err(Error::DuplicateAcceptingSet(alphabet.render(&set)));
            }
            family.insert(set);
        }
        Ok(MullerCondition {
            alphabet,
            accepting: family,
        })
    }

    /// Convenience constructor from symbol names.
    pub fn from_symbols<S: AsRef<str>>(symbols: &[S], accepting: &[&[S]]) -> Result<Self> {
        let alphabet = Alphabet::new(symbols.iter().map(|s| s.as_ref().to_string()))?;
        let sets = accepting
            .iter()
            .map(|set| alphabet.set(set.iter().map(|s| s.as_ref())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, sets)
    }

    /// Builds a condition from 64-bit masks over an alphabet of at most 64 letters.
    pub fn from_masks<I: IntoIterator<Item = u64>>(alphabet: Alphabet, masks: I) -> Result<Self> {
        let n = alphabet.len();
        if n > 64 {
            return Err(Error::AlphabetTooLarge(n, 64));
        }
        let sets: Vec<LetterSet> = masks
            .into_iter()
            .map(|m| LetterSet::from_mask(n, m))
            .collect();
        Self::new(alphabet, sets)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn accepting(&self) -> impl Iterator<Item = &LetterSet> {
        self.accepting.iter()
    }

    pub fn len(&self) -> usize {
        self.accepting.len()
    }

    pub fn is_empty(&self) -> bool {
        self.accepting.is_empty()
    }

    /// Unchecked membership test.
    pub fn accepts(&self, set: &LetterSet) -> bool {
        self.accepting.contains(set)
    }

    /// `true` iff `set` belongs to the family; the empty set never does.
    pub fn satisfies(&self, set: &LetterSet) -> Result<bool> {
        self.check_universe(set)?;
        Ok(self.accepts(set))
    }

    fn check_universe(&self, set: &LetterSet) -> Result<()> {
        if set.universe() != self.alphabet.len() {
            return Err(Error::AlphabetMismatch {
                expected: self.alphabet.len(),
                found: set.universe(),
            });
        }
        Ok(())
    }

    /// The condition restricted to the sub-alphabet `letters`, keeping only
    /// the accepting sets contained in it. The new alphabet lists the kept
    /// letters in their original order.
    pub fn restrict(&self, letters: &LetterSet) -> Result<MullerCondition> {
        self.check_universe(letters)?;
        if letters.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let kept: Vec<usize> = letters.iter().collect();
        let alphabet = Alphabet::new(kept.iter().map(|&l| self.alphabet.symbol(l).to_string()))?;
        let sets = self
            .accepting
            .iter()
            .filter(|s| s.is_subset(letters))
            .map(|s| {
                LetterSet::from_letters(
                    kept.len(),
                    s.iter().map(|l| kept.binary_search(&l).expect("subset of kept letters")),
                )
            })
            .collect::<Vec<_>>();
        MullerCondition::new(alphabet, sets)
    }

    /// The accepting sets as masks, for alphabets of at most 64 letters.
    pub(crate) fn mask_set(&self) -> Result<HashSet<u64>> {
        if self.alphabet.len() > 64 {
            return Err(Error::AlphabetTooLarge(self.alphabet.len(), 64));
        }
        Ok(self
            .accepting
            .iter()
            .map(|s| s.mask().expect("universe at most 64"))
            .collect())
    }
}

/// Maximal nonempty subsets of `label` whose membership differs from
/// `label`'s own, found level by level from the largest cardinality down.
///
/// Only subsets sharing `label`'s membership are expanded, so every
/// returned set has all of its strict supersets within `label` on the
/// opposite side.
pub(crate) fn maximal_flipped_subsets(label: u64, accepts: impl Fn(u64) -> bool) -> Vec<u64> {
    let own = accepts(label);
    let mut kept: Vec<u64> = Vec::new();
    let mut frontier: Vec<u64> = vec![label];
    while !frontier.is_empty() {
        let mut next: HashSet<u64> = HashSet::new();
        for &set in &frontier {
            let mut bits = set;
            while bits != 0 {
                let low = bits & bits.wrapping_neg();
                bits ^= low;
                let sub = set & !low;
                if sub != 0 {
                    next.insert(sub);
                }
            }
        }
        let mut level: Vec<u64> = next.into_iter().collect();
        level.sort_unstable();
        frontier.clear();
        let mut found = Vec::new();
        for sub in level {
            if accepts(sub) == own {
                frontier.push(sub);
            } else if !kept.iter().any(|&k| sub & !k == 0) {
                found.push(sub);
            }
        }
        kept.extend(found);
    }
    kept.sort_unstable();
    kept
}
