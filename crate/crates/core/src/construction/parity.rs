use std::collections::HashSet;

use super::gfg::{leaf_step, GfgRabinAutomaton};
use super::node_alphabet;
use crate::automata::{Automaton, Transition};
use crate::conditions::{Acceptance, MullerCondition, ParityCondition};
use crate::error::{Error, Result};
use crate::zielonka::{EtaLabelling, ZielonkaTree};

/// The deterministic parity automaton on the leaves of the Zielonka tree.
/// State `i` is the `i`-th leaf from the left; colours are tree nodes with
/// the tree's max-even priorities.
pub fn build_parity_automaton(condition: &MullerCondition) -> Result<Automaton> {
    parity_automaton_of_tree(&ZielonkaTree::new(condition)?)
}

pub fn parity_automaton_of_tree(tree: &ZielonkaTree) -> Result<Automaton> {
    let input = tree.condition().alphabet().clone();
    let mut transitions = Vec::new();
    for (i, &leaf) in tree.leaves().iter().enumerate() {
        for letter in 0..input.len() {
            let (node, target) = leaf_step(tree, leaf, letter);
            transitions.push(Transition {
                src: i,
                letter,
                colour: node,
                dst: tree.leaf_index(target)?,
            });
        }
    }
    let priorities = (0..tree.len()).map(|n| tree.priority(n)).collect();
    let acceptance = ParityCondition::new(node_alphabet(tree), priorities)?;
    Automaton::new(
        tree.leaves().iter().map(|&l| tree.node_name(l)).collect(),
        input,
        vec![0],
        transitions,
        Acceptance::Parity(acceptance),
    )
}

/// Merges the parity automaton's leaf states by `eta` and compares the
/// resulting transitions with the Rabin automaton's, as sets.
pub fn check_quotient(parity: &Automaton, gfg: &GfgRabinAutomaton, eta: &EtaLabelling) -> Result<bool> {
    let tree = gfg.tree();
    let rabin = gfg.automaton();
    if parity.num_states() != tree.leaves().len()
        || parity.colours() != rabin.colours()
        || parity.input() != rabin.input()
    {
        return Err(Error::MismatchedTrees);
    }
    let state = |i: usize| eta.get(tree.leaves()[i]).map(|v| v.wrapping_sub(1));
    let mut merged = HashSet::new();
    for t in parity.transitions() {
        merged.insert(Transition {
            src: state(t.src)?,
            dst: state(t.dst)?,
            ..*t
        });
    }
    let target: HashSet<Transition> = rabin.transitions().iter().copied().collect();
    Ok(merged == target)
}
