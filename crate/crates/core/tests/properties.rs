mod common;

use gfg_muller::construction::{build_gfg_rabin, check_quotient, parity_automaton_of_tree};
use gfg_muller::games::GameFile;
use gfg_muller::{parse_hoa, LassoWord, MullerCondition, ZielonkaTree};
use proptest::prelude::*;
use rand::SeedableRng;

fn condition() -> impl Strategy<Value = MullerCondition> {
    (1usize..=5, prop::collection::vec(any::<bool>(), 31)).prop_map(|(n, bits)| {
        let masks = (1u64..1 << n).filter(|&m| bits[m as usize - 1]);
        MullerCondition::from_masks(common::letters(n), masks).unwrap()
    })
}

fn lasso(letters: usize) -> impl Strategy<Value = LassoWord> {
    (
        prop::collection::vec(0..letters, 0..3),
        prop::collection::vec(0..letters, 1..=2 * letters),
    )
        .prop_map(|(u, v)| LassoWord::new(u, v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eta_separates_and_sizes_agree(f in condition()) {
        let tree = ZielonkaTree::new(&f).unwrap();
        let eta = tree.eta_labelling();
        prop_assert!(eta.satisfies_separation(&tree));
        prop_assert_eq!(eta.size(), tree.memtree());
        prop_assert_eq!(eta.distinct(), tree.memtree());
        let gfg = build_gfg_rabin(&f).unwrap();
        prop_assert_eq!(gfg.num_states(), tree.memtree());
        let parity = parity_automaton_of_tree(&tree).unwrap();
        prop_assert_eq!(parity.num_states(), tree.leaves().len());
        prop_assert_eq!(check_quotient(&parity, &gfg, gfg.eta()), Ok(true));
    }

    #[test]
    fn priority_parity_matches_node_kind(f in condition()) {
        let tree = ZielonkaTree::new(&f).unwrap();
        for n in 0..tree.len() {
            prop_assert_eq!(tree.priority(n).is_multiple_of(2), tree.is_round(n));
            if let Some(p) = tree.parent(n) {
                prop_assert!(tree.priority(n) < tree.priority(p));
            }
        }
    }

    #[test]
    fn hoa_round_trip_is_the_mark_quotient(f in condition()) {
        let a = build_gfg_rabin(&f).unwrap().into_automaton();
        prop_assert_eq!(parse_hoa(&a.to_hoa().unwrap()).unwrap(), a.mark_quotient().unwrap());
        let p = parity_automaton_of_tree(&ZielonkaTree::new(&f).unwrap()).unwrap();
        prop_assert_eq!(parse_hoa(&p.to_hoa().unwrap()).unwrap(), p.mark_quotient().unwrap());
    }

    #[test]
    fn condition_json_round_trip(f in condition()) {
        prop_assert_eq!(MullerCondition::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn simplified_automaton_has_no_duplicates_and_same_language(
        f in condition(),
        words in prop::collection::vec(lasso(5), 20),
    ) {
        let a = build_gfg_rabin(&f).unwrap().into_automaton();
        let s = a.simplify_rabin().unwrap();
        prop_assert!(!s.has_duplicated_edges());
        prop_assert_eq!(s.num_states(), a.num_states());
        let n = f.alphabet().len();
        for w in words {
            let w = LassoWord::new(
                w.prefix().iter().map(|a| a % n).collect(),
                w.period().iter().map(|a| a % n).collect(),
            ).unwrap();
            prop_assert_eq!(s.accepts_lasso(&w).unwrap(), f.accepts(&w.inf_set(n)));
        }
    }

    #[test]
    fn machines_agree_on_lassos(f in condition(), words in prop::collection::vec(lasso(5), 30)) {
        let tree = ZielonkaTree::new(&f).unwrap();
        let gfg = build_gfg_rabin(&f).unwrap();
        let parity = parity_automaton_of_tree(&tree).unwrap();
        let machines = common::Machines { condition: &f, gfg: &gfg, parity: &parity };
        let n = f.alphabet().len();
        for w in words {
            let w = LassoWord::new(
                w.prefix().iter().map(|a| a % n).collect(),
                w.period().iter().map(|a| a % n).collect(),
            ).unwrap();
            prop_assert!(machines.agrees(&w), "{}", w.display(f.alphabet()));
        }
    }

    #[test]
    fn game_file_round_trip(seed in any::<u64>()) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let colours = common::letters(3);
        let game = common::random_game(&mut rng, &colours, 4, 8);
        let file = GameFile::from_game(&game);
        prop_assert_eq!(GameFile::parse(&file.to_json()).unwrap(), file.clone());
        prop_assert_eq!(file.to_game(&colours).unwrap(), game);
    }
}
