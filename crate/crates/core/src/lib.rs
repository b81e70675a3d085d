//! Muller conditions, their Zielonka trees, the minimal good-for-games
//! Rabin automaton and the Zielonka-tree parity automaton, memory
//! structures for Muller games, and the succinctness gap between
//! good-for-games and deterministic Rabin automata.

pub mod automata;
pub mod conditions;
pub mod construction;
pub mod error;
pub mod games;
pub mod succinctness;
pub(crate) mod graph;
pub mod zielonka;

pub use conditions::{
    Acceptance, Alphabet, LassoWord, LetterSet, MullerCondition, ParityCondition, RabinCondition,
    RabinPair,
};
pub use automata::{parse_hoa, Automaton, Run, Transition};
pub use error::{Error, Result};
pub use zielonka::{build_zielonka, EtaLabelling, NodeKind, ZielonkaTree};
