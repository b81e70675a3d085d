//! Merging parallel transitions: every bundle of transitions sharing source,
//! letter and target becomes a single transition with a fresh colour.

use std::collections::{BTreeSet, HashMap};

use super::{Automaton, Transition};
use crate::conditions::{Acceptance, Alphabet, LetterSet, MullerCondition, RabinCondition, RabinPair};
use crate::error::{Error, Result};

/// Colours of each (src, letter, dst) bundle, bundles in order of first
/// appearance and colours sorted.
fn bundles(a: &Automaton) -> Vec<((usize, usize, usize), Vec<usize>)> {
    let mut order: Vec<((usize, usize, usize), Vec<usize>)> = Vec::new();
    let mut pos: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for t in a.transitions() {
        let key = (t.src, t.letter, t.dst);
        let i = *pos.entry(key).or_insert_with(|| {
            order.push((key, Vec::new()));
            order.len() - 1
        });
        order[i].1.push(t.colour);
    }
    for (_, cs) in &mut order {
        cs.sort_unstable();
        cs.dedup();
    }
    order
}

/// The merged colour alphabet: every original colour, followed by one
/// colour per distinct multi-colour bundle named `(` + member names + `)`.
fn merged_colours(a: &Automaton) -> (Alphabet, Vec<Vec<usize>>, Vec<Transition>) {
    let original = a.colours();
    let mut members: Vec<Vec<usize>> = (0..original.len()).map(|c| vec![c]).collect();
    let mut names: Vec<String> = original.symbols().to_vec();
    let mut by_bundle: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut transitions = Vec::new();
    for ((src, letter, dst), cs) in bundles(a) {
        let colour = if cs.len() == 1 {
            cs[0]
        } else {
            *by_bundle.entry(cs.clone()).or_insert_with(|| {
                let name: String = cs.iter().map(|&c| original.symbol(c)).collect();
                let mut name = format!("({name})");
                while names.contains(&name) {
                    name.push('\'');
                }
                names.push(name);
                members.push(cs.clone());
                members.len() - 1
            })
        };
        transitions.push(Transition { src, letter, colour, dst });
    }
    let alphabet = Alphabet::new(names).expect("merged names are distinct");
    (alphabet, members, transitions)
}

impl Automaton {
    /// One transition per (src, letter, dst). A merged colour is green for
    /// a pair when some member is green, red when every member is red.
    pub fn simplify_rabin(&self) -> Result<Automaton> {
        let Acceptance::Rabin(rabin) = self.acceptance() else {
            return Err(Error::UnsupportedAcceptance(self.acceptance().kind()));
        };
        let (alphabet, members, transitions) = merged_colours(self);
        let n = alphabet.len();
        let pairs = rabin
            .pairs()
            .iter()
            .map(|p| RabinPair {
                green: LetterSet::from_letters(
                    n,
                    (0..n).filter(|&x| members[x].iter().any(|&c| p.green.contains(c))),
                ),
                red: LetterSet::from_letters(
                    n,
                    (0..n).filter(|&x| members[x].iter().all(|&c| p.red.contains(c))),
                ),
            })
            .collect();
        let acceptance = RabinCondition::with_names(alphabet, pairs, rabin.pair_names().to_vec())?;
        Automaton::new(
            self.state_names().to_vec(),
            self.input().clone(),
            self.initial().to_vec(),
            transitions,
            Acceptance::Rabin(acceptance),
        )
    }

    /// One transition per (src, letter, dst). A set of merged colours is
    /// accepting when one can pick a nonempty subset of every member bundle
    /// whose union is accepting. The family is materialised by enumeration;
    /// `budget` bounds the number of partial unions explored.
    pub fn simplify_muller(&self, budget: u64) -> Result<Automaton> {
        let Acceptance::Muller(muller) = self.acceptance() else {
            return Err(Error::UnsupportedAcceptance(self.acceptance().kind()));
        };
        let original = self.colours().len();
        if original > 64 {
            return Err(Error::AlphabetTooLarge(original, 64));
        }
        let (alphabet, members, transitions) = merged_colours(self);
        let n = alphabet.len();
        if n >= 32 {
            return Err(Error::AlphabetTooLarge(n, 31));
        }
        let family = muller.mask_set()?;
        let bundle_masks: Vec<u64> = members
            .iter()
            .map(|cs| cs.iter().fold(0u64, |m, &c| m | 1 << c))
            .collect();
        let mut work = 0u64;
        let mut accepting = Vec::new();
        for set in 1u64..(1u64 << n) {
            let mut unions: BTreeSet<u64> = BTreeSet::from([0]);
            for x in (0..n).filter(|&x| set >> x & 1 == 1) {
                let b = bundle_masks[x];
                let mut next = BTreeSet::new();
                for &u in &unions {
                    let mut sub = b;
                    while sub != 0 {
                        work += 1;
                        if work > budget {
                            return Err(Error::BudgetExceeded(budget));
                        }
                        next.insert(u | sub);
                        sub = (sub - 1) & b;
                    }
                }
                unions = next;
            }
            if unions.iter().any(|u| family.contains(u)) {
                accepting.push(set);
            }
        }
        let acceptance = MullerCondition::from_masks(alphabet, accepting)?;
        Automaton::new(
            self.state_names().to_vec(),
            self.input().clone(),
            self.initial().to_vec(),
            transitions,
            Acceptance::Muller(acceptance),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_a_loops(accepting: &[&[&str]]) -> Automaton {
        let colours = Alphabet::new(["t1", "t2"]).unwrap();
        let sets: Vec<LetterSet> = accepting.iter().map(|s| colours.set(s.iter()).unwrap()).collect();
        Automaton::new(
            Automaton::numbered_states(1),
            Alphabet::new(["a"]).unwrap(),
            vec![0],
            vec![
                Transition { src: 0, letter: 0, colour: 0, dst: 0 },
                Transition { src: 0, letter: 0, colour: 1, dst: 0 },
            ],
            Acceptance::Muller(MullerCondition::new(colours, sets).unwrap()),
        )
        .unwrap()
    }

    #[test]
    fn muller_merge_picks_a_subset() {
        for family in [&[&["t1"][..]][..], &[&["t1", "t2"][..]][..]] {
            let a = two_a_loops(family);
            assert!(a.has_duplicated_edges());
            let s = a.simplify_muller(1000).unwrap();
            assert!(!s.has_duplicated_edges());
            assert_eq!(s.transitions().len(), 1);
            let merged = s.transitions()[0].colour;
            assert_eq!(s.colours().symbol(merged), "(t1t2)");
            assert!(s.acceptance().accepts(&LetterSet::singleton(s.colours().len(), merged)));
        }
        let s = two_a_loops(&[&["t2"]]).simplify_muller(1000).unwrap();
        // original singleton colours keep their own membership
        let acc = s.acceptance();
        assert!(!acc.accepts(&LetterSet::singleton(3, 0)));
        assert!(acc.accepts(&LetterSet::singleton(3, 1)));
    }

    #[test]
    fn muller_merge_budget() {
        assert_eq!(
            two_a_loops(&[&["t1"]]).simplify_muller(2),
            Err(Error::BudgetExceeded(2))
        );
    }

    #[test]
    fn rabin_only() {
        assert!(matches!(
            two_a_loops(&[&["t1"]]).simplify_rabin(),
            Err(Error::UnsupportedAcceptance(_))
        ));
    }
}
