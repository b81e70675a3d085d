use std::collections::{HashMap, HashSet};

use super::node_rabin_pairs;
use crate::automata::{Automaton, Run, Transition};
use crate::conditions::{Acceptance, LassoWord, MullerCondition, RabinCondition};
use crate::error::{Error, Result};
use crate::zielonka::{EtaLabelling, ZielonkaTree};

/// Where a transition of the Rabin automaton comes from: the source leaf,
/// the node it outputs, and the leaf it moves to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub leaf: usize,
    pub node: usize,
    pub target_leaf: usize,
}

/// The good-for-games Rabin automaton of a Muller condition. State `q`
/// stands for the leaves with `η = q + 1`; colours are tree nodes.
#[derive(Clone, Debug)]
pub struct GfgRabinAutomaton {
    tree: ZielonkaTree,
    eta: EtaLabelling,
    automaton: Automaton,
    /// Aligned with `automaton.transitions()`.
    provenance: Vec<Provenance>,
}

pub fn build_gfg_rabin(condition: &MullerCondition) -> Result<GfgRabinAutomaton> {
    GfgRabinAutomaton::from_tree(ZielonkaTree::new(condition)?)
}

/// The leaf-level move: from `leaf` on `letter`, the deepest ancestor
/// containing the letter and the leftmost leaf of its jump.
pub(crate) fn leaf_step(tree: &ZielonkaTree, leaf: usize, letter: usize) -> (usize, usize) {
    let node = tree.deepest_ancestor_containing(leaf, letter);
    let (_, target) = tree.jump(node, leaf).expect("node is an ancestor of leaf");
    (node, target)
}

impl GfgRabinAutomaton {
    pub fn from_tree(tree: ZielonkaTree) -> Result<GfgRabinAutomaton> {
        let eta = tree.eta_labelling();
        let input = tree.condition().alphabet().clone();
        let mut seen = HashSet::new();
        let mut transitions = Vec::new();
        let mut provenance = Vec::new();
        for &leaf in tree.leaves() {
            for letter in 0..input.len() {
                let (node, target) = leaf_step(&tree, leaf, letter);
                let t = Transition {
                    src: eta.get(leaf)? - 1,
                    letter,
                    colour: node,
                    dst: eta.get(target)? - 1,
                };
                if seen.insert(t) {
                    transitions.push(t);
                    provenance.push(Provenance {
                        leaf,
                        node,
                        target_leaf: target,
                    });
                }
            }
        }
        let automaton = Automaton::new(
            Automaton::numbered_states(tree.memtree()),
            input,
            vec![eta.get(tree.leftmost_leaf(0))? - 1],
            transitions,
            Acceptance::Rabin(node_rabin_pairs(&tree)),
        )?;
        Ok(GfgRabinAutomaton {
            tree,
            eta,
            automaton,
            provenance,
        })
    }

    pub fn tree(&self) -> &ZielonkaTree {
        &self.tree
    }

    pub fn eta(&self) -> &EtaLabelling {
        &self.eta
    }

    pub fn automaton(&self) -> &Automaton {
        &self.automaton
    }

    pub fn into_automaton(self) -> Automaton {
        self.automaton
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn pairs(&self) -> &RabinCondition {
        match self.automaton.acceptance() {
            Acceptance::Rabin(r) => r,
            _ => unreachable!("built with Rabin acceptance"),
        }
    }

    pub fn num_states(&self) -> usize {
        self.automaton.num_states()
    }

    pub fn resolver(&self) -> Resolver<'_> {
        Resolver {
            gfg: self,
            leaf: self.tree.leftmost_leaf(0),
        }
    }

    /// The run chosen by the leaf-memory resolver and whether it accepts.
    pub fn resolve_run(&self, word: &LassoWord) -> Result<(Run, bool)> {
        word.check_alphabet(self.automaton.input().len())?;
        let mut r = self.resolver();
        let mut prefix = Vec::new();
        for &a in word.prefix() {
            prefix.push(r.step(a)?);
        }
        let period = word.period();
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        let mut steps = Vec::new();
        let mut phase = 0;
        let start = loop {
            if let Some(&k) = seen.get(&(r.leaf(), phase)) {
                break k;
            }
            seen.insert((r.leaf(), phase), steps.len());
            steps.push(r.step(period[phase])?);
            phase = (phase + 1) % period.len();
        };
        let cycle = steps.split_off(start);
        prefix.extend(steps);
        let run = Run { prefix, cycle };
        let accepted = self.pairs().accepts(&run.cycle_colours(self.tree.len()));
        Ok((run, accepted))
    }
}

/// Resolves the automaton's nondeterminism letter by letter, remembering a
/// leaf of the tree whose `η` value is the current state.
#[derive(Clone, Debug)]
pub struct Resolver<'a> {
    gfg: &'a GfgRabinAutomaton,
    leaf: usize,
}

impl Resolver<'_> {
    pub fn leaf(&self) -> usize {
        self.leaf
    }

    pub fn state(&self) -> usize {
        self.gfg.eta.get(self.leaf).expect("memory is a leaf") - 1
    }

    /// Takes the transition for `letter` and moves the memory.
    pub fn step(&mut self, letter: usize) -> Result<Transition> {
        let size = self.gfg.automaton.input().len();
        if letter >= size {
            return Err(Error::LetterOutOfRange { index: letter, size });
        }
        let (node, target) = leaf_step(&self.gfg.tree, self.leaf, letter);
        let t = Transition {
            src: self.state(),
            letter,
            colour: node,
            dst: self.gfg.eta.get(target)? - 1,
        };
        if !self.gfg.automaton.successors(t.src, letter).any(|x| *x == t) {
            return Err(Error::Invariant(format!("resolver chose a missing transition {t:?}")));
        }
        self.leaf = target;
        Ok(t)
    }
}
