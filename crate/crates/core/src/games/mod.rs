//! Two-player games on coloured graphs with ε-edges, memory structures and
//! their verification, a recursive solver for Muller, Rabin and parity
//! games, and memory extraction from products with good-for-games automata.

mod file;
mod product;
mod solver;

use std::collections::{HashMap, VecDeque};
use std::fmt;

pub use file::{GameFile, MemoryFile};
pub use product::{
    memory_from_gfg, product_with_automaton, solve_muller_game, MullerSolution, ProductGame,
    ProductVertex,
};
pub use solver::{positional_rabin_strategy, solve_game, solve_parity_game, Solution};

use crate::conditions::{Acceptance, Alphabet, DEFAULT_CYCLE_BUDGET};
use crate::error::{Error, Result};
use crate::graph::ColouredGraph;

/// Reachable (vertex, memory) nodes of a strategy product, and its edges
/// as (source node, game edge, target node).
type StrategyProduct = (Vec<(usize, usize)>, Vec<(usize, usize, usize)>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Player {
    Exist,
    Univ,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Exist => Player::Univ,
            Player::Univ => Player::Exist,
        }
    }

    pub(crate) fn index(self) -> usize {
        match self {
            Player::Exist => 0,
            Player::Univ => 1,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Exist => "Exist",
            Player::Univ => "Univ",
        })
    }
}

/// `src --colour--> dst`; `None` is ε.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GameEdge {
    pub src: usize,
    pub colour: Option<usize>,
    pub dst: usize,
}

/// A game arena coloured by an alphabet. Every vertex has a move and no
/// cycle is made of ε-edges only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameGraph {
    colours: Alphabet,
    names: Vec<String>,
    owners: Vec<Player>,
    edges: Vec<GameEdge>,
    initial: usize,
    out: Vec<Vec<usize>>,
}

impl GameGraph {
    pub fn new(
        colours: Alphabet,
        names: Vec<String>,
        owners: Vec<Player>,
        edges: Vec<GameEdge>,
        initial: usize,
    ) -> Result<GameGraph> {
        let n = owners.len();
        if names.len() != n {
            return Err(Error::InvalidGame("one name per vertex is required".into()));
        }
        if initial >= n {
            return Err(Error::InvalidGame(format!("initial vertex {initial} out of range")));
        }
        let mut out = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            if e.src >= n || e.dst >= n {
                return Err(Error::InvalidGame(format!("edge {i} leaves the vertex set")));
            }
            if let Some(c) = e.colour {
                if c >= colours.len() {
                    return Err(Error::LetterOutOfRange { index: c, size: colours.len() });
                }
            }
            out[e.src].push(i);
        }
        if let Some(x) = (0..n).find(|&x| out[x].is_empty()) {
            return Err(Error::InvalidGame(format!(
                "at least one move from every position: vertex `{}` has none",
                names[x]
            )));
        }
        let eps = crate::graph::tarjan(
            n,
            edges.iter().filter(|e| e.colour.is_none()).map(|e| (e.src, e.dst)),
        );
        if let Some(e) = edges
            .iter()
            .find(|e| e.colour.is_none() && eps[e.src] == eps[e.dst])
        {
            return Err(Error::InvalidGame(format!(
                "no cycle is labelled exclusively by ε: vertex `{}` lies on one",
                names[e.src]
            )));
        }
        Ok(GameGraph {
            colours,
            names,
            owners,
            edges,
            initial,
            out,
        })
    }

    pub fn colours(&self) -> &Alphabet {
        &self.colours
    }

    pub fn num_vertices(&self) -> usize {
        self.owners.len()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn owner(&self, x: usize) -> Player {
        self.owners[x]
    }

    pub fn edges(&self) -> &[GameEdge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> GameEdge {
        self.edges[e]
    }

    /// Edge ids leaving `x`.
    pub fn out(&self, x: usize) -> &[usize] {
        &self.out[x]
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn with_initial(&self, initial: usize) -> Result<GameGraph> {
        GameGraph::new(
            self.colours.clone(),
            self.names.clone(),
            self.owners.clone(),
            self.edges.clone(),
            initial,
        )
    }

    fn check_condition(&self, condition: &Acceptance) -> Result<()> {
        if condition.alphabet() != &self.colours {
            return Err(Error::AlphabetMismatch {
                expected: self.colours.len(),
                found: condition.alphabet().len(),
            });
        }
        Ok(())
    }

    pub fn render_edge(&self, e: usize) -> String {
        let edge = self.edges[e];
        let colour = edge.colour.map_or("ε", |c| self.colours.symbol(c));
        format!("{} -{}-> {}", self.names[edge.src], colour, self.names[edge.dst])
    }
}

/// A finite-memory strategy for Exist: memory states `0..size`, initial
/// state, update `μ(m, e)` and choice `σ(m, x)` on Exist vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemoryStructure {
    pub size: usize,
    pub initial: usize,
    /// `update[m][e]`.
    pub update: Vec<Vec<usize>>,
    /// `choice[m][x]`, an edge leaving `x`; `None` on Univ vertices.
    pub choice: Vec<Vec<Option<usize>>>,
}

impl MemoryStructure {
    /// One memory state; `choice[x]` as the positional strategy.
    pub fn positional(game: &GameGraph, choice: Vec<Option<usize>>) -> MemoryStructure {
        MemoryStructure {
            size: 1,
            initial: 0,
            update: vec![vec![0; game.edges().len()]],
            choice: vec![choice],
        }
    }

    fn check_shape(&self, game: &GameGraph) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidGame(m));
        if self.initial >= self.size || self.update.len() != self.size || self.choice.len() != self.size {
            return bad("memory tables do not match the memory size".into());
        }
        for m in 0..self.size {
            if self.update[m].len() != game.edges().len() || self.choice[m].len() != game.num_vertices() {
                return bad(format!("memory state {m} has tables of the wrong length"));
            }
            if let Some(&next) = self.update[m].iter().find(|&&n| n >= self.size) {
                return bad(format!("update leads to unknown memory state {next}"));
            }
            for (x, c) in self.choice[m].iter().enumerate() {
                if let Some(e) = *c {
                    if e >= game.edges().len() || game.edge(e).src != x {
                        return bad(format!(
                            "choice at `{}` is not a move from that vertex",
                            game.name(x)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Vertex-memory pairs reachable by plays following the strategy,
    /// with the edges such plays use.
    fn reachable(&self, game: &GameGraph) -> Result<StrategyProduct> {
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut nodes = vec![(game.initial(), self.initial)];
        index.insert(nodes[0], 0);
        let mut edges = Vec::new();
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            let (x, m) = nodes[i];
            let moves: Vec<usize> = match game.owner(x) {
                Player::Exist => match self.choice[m][x] {
                    Some(e) => vec![e],
                    None => {
                        return Err(Error::InvalidGame(format!(
                            "no choice at reachable Exist vertex `{}` in memory {m}",
                            game.name(x)
                        )))
                    }
                },
                Player::Univ => game.out(x).to_vec(),
            };
            for e in moves {
                let next = (game.edge(e).dst, self.update[m][e]);
                let j = *index.entry(next).or_insert_with(|| {
                    nodes.push(next);
                    queue.push_back(nodes.len() - 1);
                    nodes.len() - 1
                });
                edges.push((i, e, j));
            }
        }
        Ok((nodes, edges))
    }
}

/// Whether every play from the initial vertex consistent with the memory
/// strategy satisfies the condition: the strategy-restricted product of
/// the game with the memory has no reachable rejecting cycle.
pub fn verify_strategy(game: &GameGraph, condition: &Acceptance, memory: &MemoryStructure) -> Result<bool> {
    game.check_condition(condition)?;
    memory.check_shape(game)?;
    let (nodes, edges) = memory.reachable(game)?;
    let mut g = ColouredGraph::new(nodes.len(), game.colours().len());
    for (i, e, j) in edges {
        g.add_edge(i, game.edge(e).colour, j);
    }
    Ok(condition.find_rejecting_cycle(&g, DEFAULT_CYCLE_BUDGET)?.is_none())
}

/// Whether the memory update only depends on edge colours: on reachable
/// pairs, ε-edges keep the memory and edges of one colour agree.
pub fn is_chromatic(memory: &MemoryStructure, game: &GameGraph) -> Result<bool> {
    memory.check_shape(game)?;
    let (nodes, edges) = memory.reachable(game)?;
    let mut by_colour: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, e, _) in edges {
        let m = nodes[i].1;
        let next = memory.update[m][e];
        match game.edge(e).colour {
            None if next != m => return Ok(false),
            None => {}
            Some(c) if *by_colour.entry((m, c)).or_insert(next) != next => return Ok(false),
            Some(_) => {}
        }
    }
    Ok(true)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::conditions::MullerCondition;

    pub(crate) fn one_vertex(owner: Player, colours: &[&str], loops: &[Option<usize>]) -> GameGraph {
        GameGraph::new(
            Alphabet::new(colours.iter().copied()).unwrap(),
            vec!["x".into()],
            vec![owner],
            loops.iter().map(|&c| GameEdge { src: 0, colour: c, dst: 0 }).collect(),
            0,
        )
        .unwrap()
    }

    #[test]
    fn invariants_are_enforced() {
        let a = Alphabet::new(["a"]).unwrap();
        let eps_loop = GameGraph::new(
            a.clone(),
            vec!["x".into()],
            vec![Player::Exist],
            vec![GameEdge { src: 0, colour: None, dst: 0 }],
            0,
        );
        assert!(matches!(eps_loop, Err(Error::InvalidGame(m)) if m.contains("exclusively by ε")));
        let dead_end = GameGraph::new(
            a,
            vec!["x".into(), "y".into()],
            vec![Player::Exist, Player::Univ],
            vec![GameEdge { src: 0, colour: Some(0), dst: 1 }],
            0,
        );
        assert!(matches!(dead_end, Err(Error::InvalidGame(m)) if m.contains("at least one move")));
    }

    #[test]
    fn verification_of_simple_strategies() {
        let f = MullerCondition::from_symbols(&["a", "b", "c"], &[&["a", "b"], &["a", "c"], &["b"]])
            .unwrap();
        let acc = Acceptance::Muller(f);
        let g = one_vertex(Player::Exist, &["a", "b", "c"], &[Some(0), Some(1), Some(2)]);
        let on_c = MemoryStructure::positional(&g, vec![Some(2)]);
        assert_eq!(verify_strategy(&g, &acc, &on_c), Ok(false));
        let on_b = MemoryStructure::positional(&g, vec![Some(1)]);
        assert_eq!(verify_strategy(&g, &acc, &on_b), Ok(true));
        // alternate a and b with two memory states
        let alternate = MemoryStructure {
            size: 2,
            initial: 0,
            update: vec![vec![1, 1, 1], vec![0, 0, 0]],
            choice: vec![vec![Some(0)], vec![Some(1)]],
        };
        assert_eq!(verify_strategy(&g, &acc, &alternate), Ok(true));
        assert_eq!(is_chromatic(&alternate, &g), Ok(true));
    }

    #[test]
    fn chromatic_detection() {
        // two a-edges to distinct vertices, memory flips on only one
        let a = Alphabet::new(["a"]).unwrap();
        let g = GameGraph::new(
            a,
            vec!["x".into(), "y".into()],
            vec![Player::Univ, Player::Univ],
            vec![
                GameEdge { src: 0, colour: Some(0), dst: 0 },
                GameEdge { src: 0, colour: Some(0), dst: 1 },
                GameEdge { src: 1, colour: Some(0), dst: 0 },
            ],
            0,
        )
        .unwrap();
        let m = MemoryStructure {
            size: 2,
            initial: 0,
            update: vec![vec![0, 1, 0], vec![1, 1, 1]],
            choice: vec![vec![None, None], vec![None, None]],
        };
        assert_eq!(is_chromatic(&m, &g), Ok(false));
    }

    #[test]
    fn forced_winning_play() {
        let f = MullerCondition::from_symbols(&["a"], &[&["a"]]).unwrap();
        let g = one_vertex(Player::Univ, &["a"], &[Some(0)]);
        let m = MemoryStructure::positional(&g, vec![None]);
        assert_eq!(verify_strategy(&g, &Acceptance::Muller(f), &m), Ok(true));
    }
}
