use std::fmt;

use super::alphabet::{Alphabet, LetterSet};
use crate::error::{Error, Result};

/// An ultimately periodic word `prefix · period^ω`, letters given by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LassoWord {
    prefix: Vec<usize>,
    period: Vec<usize>,
}

impl LassoWord {
    pub fn new(prefix: Vec<usize>, period: Vec<usize>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(LassoWord { prefix, period })
    }

    /// Parses whitespace-free symbol strings where every symbol is one character.
    pub fn from_chars(alphabet: &Alphabet, prefix: &str, period: &str) -> Result<Self> {
        let parse = |s: &str| {
            s.chars()
                .map(|c| alphabet.index_of(&c.to_string()))
                .collect::<Result<Vec<_>>>()
        };
        Self::new(parse(prefix)?, parse(period)?)
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn period(&self) -> &[usize] {
        &self.period
    }

    /// Position `i` of the infinite word.
    pub fn letter_at(&self, i: usize) -> usize {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    /// Letters occurring infinitely often, i.e. the letters of the period.
    pub fn inf_set(&self, universe: usize) -> LetterSet {
        LetterSet::from_letters(universe, self.period.iter().copied())
    }

    pub fn check_alphabet(&self, size: usize) -> Result<()> {
        match self.prefix.iter().chain(&self.period).find(|&&l| l >= size) {
            Some(&index) => Err(Error::LetterOutOfRange { index, size }),
            None => Ok(()),
        }
    }

    /// The same infinite word with the first period letter moved into the prefix.
    pub fn rotated(&self) -> LassoWord {
        let mut prefix = self.prefix.clone();
        prefix.push(self.period[0]);
        let mut period = self.period[1..].to_vec();
        period.push(self.period[0]);
        LassoWord { prefix, period }
    }

    /// The same infinite word with the period doubled.
    pub fn pumped(&self) -> LassoWord {
        let mut period = self.period.clone();
        period.extend_from_slice(&self.period);
        LassoWord {
            prefix: self.prefix.clone(),
            period,
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        DisplayLasso {
            word: self,
            alphabet,
        }
    }
}

struct DisplayLasso<'a> {
    word: &'a LassoWord,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplayLasso<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |w: &[usize]| {
            w.iter()
                .map(|&l| self.alphabet.symbol(l))
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(f, "[{}] ([{}])^w", join(&self.word.prefix), join(&self.word.period))
    }
}

/// All lassos with `|prefix| <= max_prefix` and `1 <= |period| <= max_period`.
pub fn all_lassos(letters: usize, max_prefix: usize, max_period: usize) -> Vec<LassoWord> {
    let prefixes = all_words(letters, 0, max_prefix);
    let periods = all_words(letters, 1, max_period);
    let mut out = Vec::with_capacity(prefixes.len() * periods.len());
    for u in &prefixes {
        for v in &periods {
            out.push(LassoWord {
                prefix: u.clone(),
                period: v.clone(),
            });
        }
    }
    out
}

/// Every word over `letters` symbols with length in `min..=max`, shortest first.
pub fn all_words(letters: usize, min: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for len in 0..=max {
        if len >= min {
            out.extend(layer.iter().cloned());
        }
        if len == max {
            break;
        }
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..letters).map(move |l| {
                    let mut x = w.clone();
                    x.push(l);
                    x
                })
            })
            .collect();
    }
    out
}
