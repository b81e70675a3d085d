//! Automata read off a Zielonka tree: the good-for-games Rabin automaton
//! with `memtree` states, the deterministic parity automaton on the leaves,
//! and the Rabin condition over tree nodes they share.

mod check;
mod gfg;
mod parity;

pub use check::{certify_gfg, check_language, Counterexample, Disagreement, SweepReport};
pub use gfg::{build_gfg_rabin, GfgRabinAutomaton, Provenance, Resolver};
pub use parity::{build_parity_automaton, check_quotient, parity_automaton_of_tree};

use crate::conditions::{Alphabet, LassoWord, LetterSet, PairColour, RabinCondition, RabinPair};
use crate::error::{Error, Result};
use crate::zielonka::ZielonkaTree;

/// Colour alphabet whose letters are the tree's nodes, by id.
pub fn node_alphabet(tree: &ZielonkaTree) -> Alphabet {
    Alphabet::new(tree.node_names()).expect("node names are distinct")
}

/// One pair per round node `n`, in id order: green on `n`, red on every
/// other node that is not below `n`.
pub fn node_rabin_pairs(tree: &ZielonkaTree) -> RabinCondition {
    let alphabet = node_alphabet(tree);
    let size = tree.len();
    let mut pairs = Vec::new();
    let mut names = Vec::new();
    for n in (0..size).filter(|&n| tree.is_round(n)) {
        pairs.push(RabinPair {
            green: LetterSet::singleton(size, n),
            red: LetterSet::from_letters(size, (0..size).filter(|&m| !tree.is_ancestor(n, m))),
        });
        names.push(tree.node_name(n));
    }
    RabinCondition::with_names(alphabet, pairs, names).expect("green and red are disjoint")
}

/// How the pair of round node `pair` sees node `node`, from the tree alone.
pub fn node_pair_colour(tree: &ZielonkaTree, pair: usize, node: usize) -> PairColour {
    if pair == node {
        PairColour::Green
    } else if tree.is_ancestor(pair, node) {
        PairColour::Orange
    } else {
        PairColour::Red
    }
}

/// The ⊴-minimal elements of a node set.
pub fn minimal_nodes(tree: &ZielonkaTree, set: &LetterSet) -> Vec<usize> {
    set.iter()
        .filter(|&n| !set.iter().any(|m| m != n && tree.is_ancestor(m, n)))
        .collect()
}

/// Evaluates the node Rabin condition on the nodes recurring in `word`, and
/// checks that it agrees with "a unique minimal recurring node, which is round".
pub fn check_node_sequence(tree: &ZielonkaTree, word: &LassoWord) -> Result<bool> {
    if let Some(&n) = word.prefix().iter().chain(word.period()).find(|&&n| n >= tree.len()) {
        return Err(Error::UnknownNode(n));
    }
    let inf = word.inf_set(tree.len());
    let rabin = node_rabin_pairs(tree).satisfies(&inf)?;
    let minimal = minimal_nodes(tree, &inf);
    let unique_round = minimal.len() == 1 && tree.is_round(minimal[0]);
    if rabin != unique_round {
        return Err(Error::Invariant(format!(
            "node Rabin condition gives {rabin} but minimal-node test gives {unique_round}"
        )));
    }
    Ok(rabin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditions::MullerCondition;
    use crate::zielonka::build_zielonka;

    fn tree() -> ZielonkaTree {
        let f = MullerCondition::from_symbols(&["a", "b", "c"], &[&["a", "b"], &["a", "c"], &["b"]])
            .unwrap();
        build_zielonka(&f).unwrap()
    }

    #[test]
    fn pairs_of_running_example() {
        let t = tree();
        let r = node_rabin_pairs(&t);
        let a = r.alphabet();
        assert_eq!(r.pair_names(), ["β", "γ"]);
        assert_eq!(r.pairs()[0].green, a.set(["β"]).unwrap());
        assert_eq!(r.pairs()[0].red, a.set(["α", "γ", "ε", "ζ"]).unwrap());
        assert_eq!(r.pairs()[1].green, a.set(["γ"]).unwrap());
        assert_eq!(r.pairs()[1].red, a.set(["α", "β", "δ"]).unwrap());
    }

    #[test]
    fn single_round_node_pair() {
        let f = MullerCondition::from_symbols(&["a"], &[&["a"]]).unwrap();
        let r = node_rabin_pairs(&build_zielonka(&f).unwrap());
        assert_eq!(r.pairs().len(), 1);
        assert!(r.pairs()[0].red.is_empty());
    }

    #[test]
    fn no_round_nodes_no_pairs() {
        let f = MullerCondition::new(Alphabet::new(["a", "b"]).unwrap(), []).unwrap();
        assert!(node_rabin_pairs(&build_zielonka(&f).unwrap()).pairs().is_empty());
    }

    #[test]
    fn node_sequences() {
        let t = tree();
        let w = |period: Vec<usize>| LassoWord::new(vec![], period).unwrap();
        assert_eq!(check_node_sequence(&t, &w(vec![2])), Ok(true));
        assert_eq!(check_node_sequence(&t, &w(vec![1, 2])), Ok(false));
        assert_eq!(check_node_sequence(&t, &w(vec![3])), Ok(false));
        assert_eq!(check_node_sequence(&t, &w(vec![2, 4, 5])), Ok(true));
        assert_eq!(check_node_sequence(&t, &w(vec![9])), Err(Error::UnknownNode(9)));
    }

    #[test]
    fn trichotomy_matches_pairs() {
        let t = tree();
        let r = node_rabin_pairs(&t);
        let round: Vec<usize> = (0..t.len()).filter(|&n| t.is_round(n)).collect();
        for (j, &p) in round.iter().enumerate() {
            for n in 0..t.len() {
                assert_eq!(r.colour_for_pair(j, n), node_pair_colour(&t, p, n));
            }
        }
    }
}
