use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A finite, nonempty, ordered set of named symbols.
///
/// Symbol `i` is the letter with index `i`; indices are stable for the
/// lifetime of the alphabet.
#[derive(Clone, Debug)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, usize>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    /// Alphabet `{1, ..., n}` with decimal symbol names.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, letter: usize) -> &str {
        &self.symbols[letter]
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn index_of(&self, symbol: &str) -> Result<usize> {
        self.index
            .get(symbol)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    pub fn empty_set(&self) -> LetterSet {
        LetterSet::empty(self.len())
    }

    pub fn full_set(&self) -> LetterSet {
        LetterSet::full(self.len())
    }

    /// Builds the set of the named symbols.
    pub fn set<I, S>(&self, symbols: I) -> Result<LetterSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = self.empty_set();
        for s in symbols {
            set.insert(self.index_of(s.as_ref())?);
        }
        Ok(set)
    }

    /// Renders a set as `{a,b}` using this alphabet's symbol names.
    pub fn render(&self, set: &LetterSet) -> String {
        let names: Vec<&str> = set.iter().map(|i| self.symbol(i)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// A subset of a fixed alphabet, stored as a bit vector.
///
/// Sets carry the size of their universe so that sets over different
/// alphabets never compare equal. Ordering compares the bit patterns as
/// unsigned integers (letter 0 is the least significant bit).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LetterSet {
    universe: usize,
    words: SmallVec<[u64; 2]>,
}

fn word_count(universe: usize) -> usize {
    universe.div_ceil(64).max(1)
}

impl LetterSet {
    pub fn empty(universe: usize) -> Self {
        LetterSet {
            universe,
            words: SmallVec::from_elem(0, word_count(universe)),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for i in 0..universe {
            set.insert(i);
        }
        set
    }

    pub fn singleton(universe: usize, letter: usize) -> Self {
        let mut set = Self::empty(universe);
        set.insert(letter);
        set
    }

    /// Builds a set from a 64-bit mask. Bits at or above `universe` are dropped.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        let mut set = Self::empty(universe);
        let keep = if universe >= 64 {
            u64::MAX
        } else {
            (1u64 << universe) - 1
        };
        set.words[0] = mask & keep;
        set
    }

    pub fn from_letters<I: IntoIterator<Item = usize>>(universe: usize, letters: I) -> Self {
        let mut set = Self::empty(universe);
        for l in letters {
            set.insert(l);
        }
        set
    }

    /// The low 64 bits as a mask; `None` if the universe exceeds 64 letters.
    pub fn mask(&self) -> Option<u64> {
        (self.universe <= 64).then(|| self.words[0])
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, letter: usize) {
        assert!(letter < self.universe, "letter {letter} outside universe {}", self.universe);
        self.words[letter / 64] |= 1 << (letter % 64);
    }

    pub fn remove(&mut self, letter: usize) {
        if letter < self.universe {
            self.words[letter / 64] &= !(1 << (letter % 64));
        }
    }

    pub fn contains(&self, letter: usize) -> bool {
        letter < self.universe && self.words[letter / 64] & (1 << (letter % 64)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        LetterSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn union_with(&mut self, other: &Self) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            let mut rest = bits;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(w * 64 + b)
                }
            })
        })
    }

    /// Same bits over a different universe; letters outside the new universe
    /// are dropped.
    pub fn with_universe(&self, universe: usize) -> Self {
        LetterSet::from_letters(universe, self.iter().filter(|&l| l < universe))
    }
}

impl Ord for LetterSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe.cmp(&other.universe).then_with(|| {
            self.words
                .iter()
                .rev()
                .cmp(other.words.iter().rev())
        })
    }
}

impl PartialOrd for LetterSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_rejects_duplicates_and_empty() {
        assert_eq!(Alphabet::new(Vec::<String>::new()), Err(Error::EmptyAlphabet));
        assert_eq!(
            Alphabet::new(["a", "b", "a"]),
            Err(Error::DuplicateSymbol("a".into()))
        );
    }

    #[test]
    fn wide_sets() {
        let mut s = LetterSet::empty(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(s.len(), 3);
        let t = LetterSet::from_letters(130, [64]);
        assert!(t.is_subset(&s));
        assert!(!s.is_subset(&t));
        assert_eq!(s.difference(&t).iter().collect::<Vec<_>>(), vec![0, 129]);
        assert!(t < s);
    }

    #[test]
    fn order_is_bit_pattern() {
        let a = LetterSet::from_mask(3, 0b011);
        let b = LetterSet::from_mask(3, 0b100);
        assert!(a < b);
        assert_eq!(LetterSet::from_mask(2, 0b111).mask(), Some(0b11));
    }
}
