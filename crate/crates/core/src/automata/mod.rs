//! Transition-based ω-automata whose transitions emit output colours, with
//! Muller, Rabin or parity acceptance on the colours seen infinitely often.

mod dot;
mod hoa;
mod simplify;

use std::collections::HashMap;

pub use hoa::parse_hoa;

use crate::conditions::{Acceptance, Alphabet, LassoWord, LetterSet, DEFAULT_CYCLE_BUDGET};
use crate::error::{Error, Result};
use crate::graph::ColouredGraph;

/// `src --letter : colour--> dst`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub src: usize,
    pub letter: usize,
    pub colour: usize,
    pub dst: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    state_names: Vec<String>,
    input: Alphabet,
    initial: Vec<usize>,
    transitions: Vec<Transition>,
    acceptance: Acceptance,
    /// Transition ids per `state * |input| + letter`.
    index: Vec<Vec<usize>>,
}

/// A run on a lasso word: a finite prefix of transitions followed by a
/// cycle of transitions repeated forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub prefix: Vec<Transition>,
    pub cycle: Vec<Transition>,
}

impl Run {
    /// Output colours on the cycle.
    pub fn cycle_colours(&self, colours: usize) -> LetterSet {
        LetterSet::from_letters(colours, self.cycle.iter().map(|t| t.colour))
    }
}

impl Automaton {
    /// Exact duplicate transitions are stored once, first occurrence kept.
    pub fn new(
        state_names: Vec<String>,
        input: Alphabet,
        initial: Vec<usize>,
        transitions: Vec<Transition>,
        acceptance: Acceptance,
    ) -> Result<Automaton> {
        let n = state_names.len();
        if initial.is_empty() {
            return Err(Error::NoInitialState);
        }
        if let Some(&q) = initial.iter().find(|&&q| q >= n) {
            return Err(Error::StateOutOfRange(q));
        }
        let colours = acceptance.alphabet().len();
        let mut seen = std::collections::HashSet::new();
        let mut kept = Vec::with_capacity(transitions.len());
        for t in transitions {
            if t.src >= n {
                return Err(Error::StateOutOfRange(t.src));
            }
            if t.dst >= n {
                return Err(Error::StateOutOfRange(t.dst));
            }
            if t.letter >= input.len() {
                return Err(Error::LetterOutOfRange {
                    index: t.letter,
                    size: input.len(),
                });
            }
            if t.colour >= colours {
                return Err(Error::LetterOutOfRange {
                    index: t.colour,
                    size: colours,
                });
            }
            if seen.insert(t) {
                kept.push(t);
            }
        }
        let mut index = vec![Vec::new(); n * input.len()];
        for (i, t) in kept.iter().enumerate() {
            index[t.src * input.len() + t.letter].push(i);
        }
        Ok(Automaton {
            state_names,
            input,
            initial,
            transitions: kept,
            acceptance,
            index,
        })
    }

    /// States named `1..=n`.
    pub fn numbered_states(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.state_names
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.state_names[q]
    }

    pub fn input(&self) -> &Alphabet {
        &self.input
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn acceptance(&self) -> &Acceptance {
        &self.acceptance
    }

    pub fn colours(&self) -> &Alphabet {
        self.acceptance.alphabet()
    }

    /// Transitions leaving `q` on `letter`.
    pub fn successors(&self, q: usize, letter: usize) -> impl Iterator<Item = &Transition> + '_ {
        self.index[q * self.input.len() + letter]
            .iter()
            .map(move |&i| &self.transitions[i])
    }

    /// One initial state and exactly one transition per (state, letter).
    pub fn is_deterministic(&self) -> bool {
        self.initial.len() == 1 && self.index.iter().all(|ts| ts.len() == 1)
    }

    /// The unique transition from `q` on `letter` of a deterministic automaton.
    pub fn step(&self, q: usize, letter: usize) -> Result<Transition> {
        match self.index[q * self.input.len() + letter].as_slice() {
            [i] => Ok(self.transitions[*i]),
            _ => Err(Error::NotDeterministic),
        }
    }

    /// The unique run on `word` and whether it is accepting. The cycle is
    /// found by iterating the period until a (state, phase) pair repeats.
    pub fn run_deterministic(&self, word: &LassoWord) -> Result<(Run, bool)> {
        if !self.is_deterministic() {
            return Err(Error::NotDeterministic);
        }
        word.check_alphabet(self.input.len())?;
        let mut q = self.initial[0];
        let mut prefix = Vec::new();
        for &a in word.prefix() {
            let t = self.step(q, a)?;
            prefix.push(t);
            q = t.dst;
        }
        let period = word.period();
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        let mut steps: Vec<Transition> = Vec::new();
        let mut phase = 0;
        let start = loop {
            if let Some(&k) = seen.get(&(q, phase)) {
                break k;
            }
            seen.insert((q, phase), steps.len());
            let t = self.step(q, period[phase])?;
            steps.push(t);
            q = t.dst;
            phase = (phase + 1) % period.len();
        };
        let cycle = steps.split_off(start);
        prefix.extend(steps);
        let run = Run { prefix, cycle };
        let accepted = self.acceptance.accepts(&run.cycle_colours(self.colours().len()));
        Ok((run, accepted))
    }

    /// The product of the automaton with the positions of `word`, restricted
    /// to what is reachable from the initial states. Vertex `q * len + pos`.
    fn lasso_product(&self, word: &LassoWord) -> ColouredGraph {
        let u = word.prefix().len();
        let len = u + word.period().len();
        let next = |pos: usize| if pos + 1 < len { pos + 1 } else { u };
        let mut g = ColouredGraph::new(self.num_states() * len, self.colours().len());
        for q in 0..self.num_states() {
            for pos in 0..len {
                for t in self.successors(q, word.letter_at(pos)) {
                    g.add_edge(q * len + pos, Some(t.colour), t.dst * len + next(pos));
                }
            }
        }
        let roots: Vec<usize> = self.initial.iter().map(|&q| q * len).collect();
        g.restrict_to_reachable(&roots)
    }

    /// Whether some run on `word` is accepting.
    pub fn accepts_lasso(&self, word: &LassoWord) -> Result<bool> {
        word.check_alphabet(self.input.len())?;
        Ok(self.acceptance.find_accepting_cycle(&self.lasso_product(word)).is_some())
    }

    /// Whether some run on `word` is rejecting (a run exists and fails the
    /// condition). Muller conditions use the default search budget.
    pub fn has_rejecting_run(&self, word: &LassoWord) -> Result<bool> {
        word.check_alphabet(self.input.len())?;
        Ok(self
            .acceptance
            .find_rejecting_cycle(&self.lasso_product(word), DEFAULT_CYCLE_BUDGET)?
            .is_some())
    }

    /// Some pair of states joined by two transitions on the same letter
    /// with different colours.
    pub fn has_duplicated_edges(&self) -> bool {
        let mut first: HashMap<(usize, usize, usize), usize> = HashMap::new();
        self.transitions.iter().any(|t| {
            let c = *first.entry((t.src, t.letter, t.dst)).or_insert(t.colour);
            c != t.colour
        })
    }

    /// A copy with another acceptance condition over the same colour count.
    pub fn with_acceptance(&self, acceptance: Acceptance) -> Result<Automaton> {
        Automaton::new(
            self.state_names.clone(),
            self.input.clone(),
            self.initial.clone(),
            self.transitions.clone(),
            acceptance,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditions::{ParityCondition, RabinPair};
    use crate::RabinCondition;

    fn one_state_parity(priority: u32) -> Automaton {
        let input = Alphabet::new(["a"]).unwrap();
        let acc = ParityCondition::new(Alphabet::new(["x"]).unwrap(), vec![priority]).unwrap();
        Automaton::new(
            Automaton::numbered_states(1),
            input,
            vec![0],
            vec![Transition { src: 0, letter: 0, colour: 0, dst: 0 }],
            Acceptance::Parity(acc),
        )
        .unwrap()
    }

    #[test]
    fn deterministic_run_on_even_loop() {
        let a = one_state_parity(2);
        let w = LassoWord::new(vec![], vec![0]).unwrap();
        let (run, ok) = a.run_deterministic(&w).unwrap();
        assert!(ok);
        assert_eq!(run.cycle.len(), 1);
        assert!(!one_state_parity(1).run_deterministic(&w).unwrap().1);
    }

    #[test]
    fn missing_letter_means_no_run() {
        let input = Alphabet::new(["a", "b"]).unwrap();
        let colours = Alphabet::new(["g"]).unwrap();
        let r = RabinCondition::new(
            colours.clone(),
            vec![RabinPair { green: colours.full_set(), red: colours.empty_set() }],
        )
        .unwrap();
        let a = Automaton::new(
            Automaton::numbered_states(1),
            input,
            vec![0],
            vec![Transition { src: 0, letter: 0, colour: 0, dst: 0 }],
            Acceptance::Rabin(r),
        )
        .unwrap();
        assert!(a.accepts_lasso(&LassoWord::new(vec![], vec![0]).unwrap()).unwrap());
        assert!(!a.accepts_lasso(&LassoWord::new(vec![], vec![1]).unwrap()).unwrap());
        assert!(!a.accepts_lasso(&LassoWord::new(vec![1], vec![0]).unwrap()).unwrap());
        assert!(!a.is_deterministic());
        assert_eq!(
            a.run_deterministic(&LassoWord::new(vec![], vec![0]).unwrap()),
            Err(Error::NotDeterministic)
        );
    }

    #[test]
    fn exact_duplicates_collapse() {
        let a = one_state_parity(2);
        let t = a.transitions()[0];
        let b = Automaton::new(
            a.state_names().to_vec(),
            a.input().clone(),
            vec![0],
            vec![t, t],
            a.acceptance().clone(),
        )
        .unwrap();
        assert_eq!(b.transitions().len(), 1);
        assert!(!b.has_duplicated_edges());
    }
}
