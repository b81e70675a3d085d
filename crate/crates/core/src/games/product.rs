//! Products of a game with an automaton reading its colours, and the
//! memory structures they induce.
//!
//! A position `(x, q)` pairs a game vertex with an automaton state. Taking
//! a game edge `x -c-> x'` leads, by an ε-edge, to the choice vertex
//! `(x', q, c)`, where Exist picks a `c`-transition `q -c:y-> q'` of the
//! automaton and the play continues at `(x', q')` with colour `y`.

use std::collections::{HashMap, VecDeque};

use super::{solve_game, GameEdge, GameGraph, MemoryStructure, Player, Solution};
use crate::automata::Automaton;
use crate::conditions::{Acceptance, MullerCondition};
use crate::construction::{build_gfg_rabin, parity_automaton_of_tree, GfgRabinAutomaton};
use crate::error::{Error, Result};
use crate::zielonka::ZielonkaTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductVertex {
    Position { x: usize, q: usize },
    Choice { x: usize, q: usize, c: usize },
}

/// Where a product edge comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Origin {
    GameEdge(usize),
    Transition(usize),
}

#[derive(Clone, Debug)]
pub struct ProductGame {
    pub game: GameGraph,
    pub condition: Acceptance,
    pub vertices: Vec<ProductVertex>,
    origin: Vec<Origin>,
    index: HashMap<ProductVertex, usize>,
}

impl ProductGame {
    pub fn vertex(&self, v: ProductVertex) -> Option<usize> {
        self.index.get(&v).copied()
    }

    /// The game edge a product edge simulates, if it leaves a position.
    pub fn game_edge(&self, e: usize) -> Option<usize> {
        match self.origin[e] {
            Origin::GameEdge(g) => Some(g),
            Origin::Transition(_) => None,
        }
    }

    /// The automaton transition a product edge takes, if it leaves a choice vertex.
    pub fn transition(&self, e: usize) -> Option<usize> {
        match self.origin[e] {
            Origin::Transition(t) => Some(t),
            Origin::GameEdge(_) => None,
        }
    }
}

/// The part of the product reachable from `(initial vertex, first initial state)`.
pub fn product_with_automaton(game: &GameGraph, automaton: &Automaton) -> Result<ProductGame> {
    if automaton.input() != game.colours() {
        return Err(Error::AlphabetMismatch {
            expected: game.colours().len(),
            found: automaton.input().len(),
        });
    }
    let start = ProductVertex::Position {
        x: game.initial(),
        q: automaton.initial()[0],
    };
    let mut vertices = vec![start];
    let mut index = HashMap::from([(start, 0usize)]);
    let mut edges = Vec::new();
    let mut origin = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let mut targets: Vec<(Option<usize>, ProductVertex, Origin)> = Vec::new();
        match vertices[i] {
            ProductVertex::Position { x, q } => {
                for &e in game.out(x) {
                    let edge = game.edge(e);
                    let next = match edge.colour {
                        None => ProductVertex::Position { x: edge.dst, q },
                        Some(c) => ProductVertex::Choice { x: edge.dst, q, c },
                    };
                    targets.push((None, next, Origin::GameEdge(e)));
                }
            }
            ProductVertex::Choice { x, q, c } => {
                for (ti, t) in automaton.transitions().iter().enumerate() {
                    if t.src == q && t.letter == c {
                        targets.push((Some(t.colour), ProductVertex::Position { x, q: t.dst }, Origin::Transition(ti)));
                    }
                }
            }
        }
        for (colour, next, o) in targets {
            let j = *index.entry(next).or_insert_with(|| {
                vertices.push(next);
                queue.push_back(vertices.len() - 1);
                vertices.len() - 1
            });
            edges.push(GameEdge { src: i, colour, dst: j });
            origin.push(o);
        }
    }
    let owners = vertices
        .iter()
        .map(|v| match *v {
            ProductVertex::Position { x, .. } => game.owner(x),
            ProductVertex::Choice { .. } => Player::Exist,
        })
        .collect();
    let names = vertices
        .iter()
        .map(|v| match *v {
            ProductVertex::Position { x, q } => {
                format!("({},{})", game.name(x), automaton.state_name(q))
            }
            ProductVertex::Choice { x, q, c } => format!(
                "({},{},{})",
                game.name(x),
                automaton.state_name(q),
                game.colours().symbol(c)
            ),
        })
        .collect();
    let product = GameGraph::new(automaton.colours().clone(), names, owners, edges, 0)?;
    Ok(ProductGame {
        game: product,
        condition: automaton.acceptance().clone(),
        vertices,
        origin,
        index,
    })
}

/// Exist's memory structure read off a positional winning strategy in the
/// product of the game with the good-for-games Rabin automaton. Memory
/// states are the automaton's states; memory is kept on ε-edges and follows
/// the automaton transition chosen at the choice vertex on coloured edges.
pub fn memory_from_gfg(game: &GameGraph, gfg: &GfgRabinAutomaton) -> Result<MemoryStructure> {
    let automaton = gfg.automaton();
    let product = product_with_automaton(game, automaton)?;
    let solution = solve_game(&product.game, &product.condition)?;
    if solution.winner_at(0) != Player::Exist {
        return Err(Error::NotWonByExist);
    }
    let strategy = solution
        .exist_strategy
        .ok_or_else(|| Error::Invariant("Rabin product lost positionality".into()))?;
    let size = automaton.num_states();
    let mut choice = vec![vec![None; game.num_vertices()]; size];
    for (q, row) in choice.iter_mut().enumerate() {
        for (x, slot) in row.iter_mut().enumerate() {
            if game.owner(x) != Player::Exist {
                continue;
            }
            let chosen = product
                .vertex(ProductVertex::Position { x, q })
                .and_then(|v| strategy[v])
                .and_then(|e| product.game_edge(e));
            *slot = Some(chosen.unwrap_or(game.out(x)[0]));
        }
    }
    let mut update = vec![vec![0; game.edges().len()]; size];
    for (q, row) in update.iter_mut().enumerate() {
        for (e, slot) in row.iter_mut().enumerate() {
            let edge = game.edge(e);
            let Some(c) = edge.colour else {
                *slot = q;
                continue;
            };
            let chosen = product
                .vertex(ProductVertex::Choice { x: edge.dst, q, c })
                .and_then(|v| strategy[v])
                .and_then(|pe| product.transition(pe));
            *slot = match chosen {
                Some(t) => automaton.transitions()[t].dst,
                None => automaton
                    .successors(q, c)
                    .next()
                    .map_or(q, |t| t.dst),
            };
        }
    }
    Ok(MemoryStructure {
        size,
        initial: automaton.initial()[0],
        update,
        choice,
    })
}

#[derive(Clone, Debug)]
pub struct MullerSolution {
    pub winner: Player,
    /// Exist's strategy, with one memory state per state of the
    /// good-for-games Rabin automaton, when she wins.
    pub memory: Option<MemoryStructure>,
    pub memtree: usize,
}

/// Decides the winner from the initial vertex through the product with the
/// deterministic parity automaton, and when Exist wins builds her memory
/// structure from the good-for-games Rabin automaton.
pub fn solve_muller_game(game: &GameGraph, condition: &MullerCondition) -> Result<MullerSolution> {
    if condition.alphabet() != game.colours() {
        return Err(Error::AlphabetMismatch {
            expected: game.colours().len(),
            found: condition.alphabet().len(),
        });
    }
    let tree = ZielonkaTree::new(condition)?;
    let parity = parity_automaton_of_tree(&tree)?;
    let product = product_with_automaton(game, &parity)?;
    let solution: Solution = solve_game(&product.game, &product.condition)?;
    let memtree = tree.memtree();
    if solution.winner_at(0) == Player::Univ {
        return Ok(MullerSolution {
            winner: Player::Univ,
            memory: None,
            memtree,
        });
    }
    let gfg = build_gfg_rabin(condition)?;
    let memory = memory_from_gfg(game, &gfg)?;
    Ok(MullerSolution {
        winner: Player::Exist,
        memory: Some(memory),
        memtree,
    })
}
