//! The test oracles are only useful if they can fail; these tests feed
//! them wrong answers and small cases with known outcomes.

mod common;

use common::{LanguageError, Machines};
use gfg_muller::conditions::{all_words, LetterSet};
use gfg_muller::construction::{build_gfg_rabin, parity_automaton_of_tree};
use gfg_muller::games::{solve_muller_game, GameEdge, GameGraph, Player};
use gfg_muller::{MullerCondition, ZielonkaTree};
use rand::Rng;

fn flip(f: &MullerCondition, mask: u64) -> MullerCondition {
    let n = f.alphabet().len();
    let masks = (1u64..1 << n).filter(|&m| f.accepts(&LetterSet::from_mask(n, m)) != (m == mask));
    MullerCondition::from_masks(f.alphabet().clone(), masks).unwrap()
}

#[test]
fn walk_oracle_finds_exactly_the_flipped_set() {
    for n in 1..=3 {
        for f in common::all_conditions(n) {
            let tree = ZielonkaTree::new(&f).unwrap();
            let gfg = build_gfg_rabin(&f).unwrap();
            let parity = parity_automaton_of_tree(&tree).unwrap();
            assert!(Machines { condition: &f, gfg: &gfg, parity: &parity }.language_errors().is_empty());
            for mask in 1u64..1 << n {
                let wrong = flip(&f, mask);
                let m = Machines { condition: &wrong, gfg: &gfg, parity: &parity };
                let mut expected = vec![LanguageError::Parity(mask), LanguageError::Resolver(mask)];
                // only spurious acceptance is checked on the Rabin automaton
                if !wrong.accepts(&LetterSet::from_mask(n, mask)) {
                    expected.push(LanguageError::Rabin(mask));
                }
                assert_eq!(m.language_errors(), expected, "{} flipped at {mask}", f.to_json());
                let prefixes = all_words(n, 0, 1);
                let periods = all_words(n, 1, n);
                assert!(m.disagreement(&prefixes, &periods).is_some());
            }
        }
    }
}

#[test]
fn walk_oracle_matches_literal_sweep_on_random_four_letter_conditions() {
    let mut rng = common::rng(41);
    let prefixes = all_words(4, 0, 1);
    let periods = all_words(4, 1, 4);
    for _ in 0..10 {
        let f = common::random_condition(&mut rng, 4);
        let tree = ZielonkaTree::new(&f).unwrap();
        let gfg = build_gfg_rabin(&f).unwrap();
        let parity = parity_automaton_of_tree(&tree).unwrap();
        let m = Machines { condition: &f, gfg: &gfg, parity: &parity };
        assert!(m.language_errors().is_empty());
        assert_eq!(m.disagreement(&prefixes, &periods), None);
        let mask = rng.gen_range(1u64..16);
        let wrong = flip(&f, mask);
        let m = Machines { condition: &wrong, gfg: &gfg, parity: &parity };
        assert!(m.language_errors().contains(&LanguageError::Parity(mask)));
        assert!(m.disagreement(&prefixes, &periods).is_some());
    }
}

#[test]
fn resolver_oracle_matches_library_resolver() {
    let f = common::running_example();
    let gfg = build_gfg_rabin(&f).unwrap();
    let tree = ZielonkaTree::new(&f).unwrap();
    let parity = parity_automaton_of_tree(&tree).unwrap();
    let m = Machines { condition: &f, gfg: &gfg, parity: &parity };
    for &leaf in tree.leaves() {
        for a in 0..3 {
            let node = tree.deepest_ancestor_containing(leaf, a);
            let (_, target) = tree.jump(node, leaf).unwrap();
            assert_eq!(m.leaf_move(leaf, a), (node, target));
        }
    }
}

#[test]
fn bad_cycle_oracle_on_small_graphs() {
    // 0 -a-> 1 -b-> 0 and a c-loop on 1
    let edges = [(0, Some(0), 1), (1, Some(1), 0), (1, Some(2), 1)];
    let found = |set: u64| common::has_bad_cycle(2, &edges, 3, |c| c == set);
    assert!(found(0b011));
    assert!(found(0b100));
    assert!(found(0b111));
    assert!(!found(0b001));
    assert!(!found(0b101));
    // an ε-edge does not add a colour
    let edges = [(0, None, 1), (1, Some(0), 0)];
    assert!(common::has_bad_cycle(2, &edges, 1, |c| c == 1));
}

fn game(owners: &[Player], edges: &[(usize, Option<usize>, usize)], colours: usize) -> GameGraph {
    GameGraph::new(
        common::letters(colours),
        (0..owners.len()).map(|i| format!("v{i}")).collect(),
        owners.to_vec(),
        edges.iter().map(|&(src, colour, dst)| GameEdge { src, colour, dst }).collect(),
        0,
    )
    .unwrap()
}

#[test]
fn brute_force_needs_memory_for_alternation() {
    // Exist picks a or b at one vertex, needs both infinitely often
    let f = MullerCondition::from_masks(common::letters(2), [0b11]).unwrap();
    let g = game(&[Player::Exist], &[(0, Some(0), 0), (0, Some(1), 0)], 2);
    assert_eq!(common::brute_force_winner(&g, &f, 3), (Player::Exist, 2));
    // the same choice given to Univ
    let g = game(&[Player::Univ], &[(0, Some(0), 0), (0, Some(1), 0)], 2);
    assert_eq!(common::brute_force_winner(&g, &f, 3).0, Player::Univ);
}

#[test]
fn solver_agrees_with_brute_force() {
    let mut rng = common::rng(7);
    let mut wins = [0; 2];
    for i in 0..300 {
        let n = 1 + i % 3;
        let f = common::random_condition(&mut rng, n);
        let g = common::random_game(&mut rng, f.alphabet(), 4, 8);
        let solved = solve_muller_game(&g, &f).unwrap();
        let (oracle, _) = common::brute_force_winner(&g, &f, 4);
        assert_eq!(solved.winner, oracle, "{} on {:?}", f.to_json(), g);
        wins[usize::from(oracle == Player::Univ)] += 1;
    }
    assert!(wins[0] > 50 && wins[1] > 50, "{wins:?}");
}
